use super::RingError;
use std::collections::BTreeMap;
use std::fmt;

/// Generalized binomial coefficient: 0 for b < 0, otherwise
/// a(a-1)...(a-b+1)/b!.  Satisfies binom(-1,b) = (-1)^b for b >= 0.
pub fn gen_binomial(a: i128, b: i128) -> i128 {
    if b < 0 {
        return 0;
    }
    let mut c: i128 = 1;
    for i in 0..b {
        c = c * (a - i) / (i + 1);
    }
    c
}

/// Univariate Laurent polynomial in s with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::term(1, 0)
    }

    pub fn term(c: i128, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        LaurentPoly { coeffs: m }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, i128)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in pairs {
            out.add_term(c, e);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i128 {
        *self.coeffs.get(&e).unwrap_or(&0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i128> {
        &self.coeffs
    }

    pub fn add_term(&mut self, c: i128, e: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.coeffs {
            out.add_term(c, e);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.coeffs {
            out.add_term(-c, e);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &other.coeffs {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Evaluate at an integer point (s = 1 gives multiplicities).
    pub fn eval(&self, s: i128) -> i128 {
        let mut acc = 0i128;
        for (&e, &c) in &self.coeffs {
            assert!(e >= 0 || s == 1 || s == -1, "negative exponent at non-unit point");
            let mut t = c;
            let b = if e >= 0 { s } else if s == 1 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                t *= b;
            }
            acc += t;
        }
        acc
    }

    /// Dense coefficient vector [c_lo, ..., c_hi] together with lo.
    pub fn dense(&self) -> (i64, Vec<i128>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![0i128; (hi - lo + 1) as usize];
                for (&e, &c) in &self.coeffs {
                    v[(e - lo) as usize] = c;
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }
}

/// (1-s) as a Laurent polynomial.
pub fn one_minus_s() -> LaurentPoly {
    LaurentPoly::from_coeffs([(0, 1), (1, -1)])
}

/// Exact quotient h/(1-s)^k; errors when any division stage leaves a
/// remainder.
pub fn laurent_div_power(h: &LaurentPoly, k: usize) -> Result<LaurentPoly, RingError> {
    let mut cur = h.clone();
    for step in 0..k {
        if cur.is_zero() {
            continue;
        }
        // divide by (1 - s): synthetic division from the lowest exponent up
        let (lo, dense) = cur.dense();
        let mut quo = Vec::with_capacity(dense.len());
        let mut carry = 0i128;
        for &c in &dense {
            let q = c + carry;
            quo.push(q);
            carry = q;
        }
        // exact iff the last quotient coefficient is zero
        match quo.pop() {
            Some(0) => {}
            _ => return Err(RingError::NotDivisible { k: step + 1 }),
        }
        cur = LaurentPoly::from_coeffs(quo.into_iter().enumerate().map(|(i, c)| (lo + i as i64, c)));
    }
    Ok(cur)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.coeffs {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            match (mag, e) {
                (_, 0) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "s")?,
                (1, _) => write!(f, "s^{e}")?,
                (_, 1) => write!(f, "{mag}*s")?,
                (_, _) => write!(f, "{mag}*s^{e}")?,
            }
        }
        Ok(())
    }
}
