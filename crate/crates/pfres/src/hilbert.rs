//! Hilbert numerators from complexes and in closed form, h-vectors,
//! multiplicities with their monomial-count interpretation, and the
//! supporting binomial identities as exhaustive numeric sweeps.

use crate::complexes::{eps_class, EpsClass, FreeComplex};
use crate::ring::{gen_binomial, laurent_div_power, one_minus_s, LaurentPoly, RingError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HilbertError {
    #[error("the case g = 1 with f even is excluded: the quotient is 1 - s and is not a Hilbert numerator")]
    ExcludedCase,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// h-vector h_0..h_q; entries may be negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HVector(pub Vec<i128>);

/// q(g, f): the top h-vector index.
pub fn q_of(g: usize, f: usize, epsilon: i64) -> i64 {
    let delta = f - g;
    match eps_class(delta, epsilon) {
        EpsClass::Low => 2 * g as i64 - 3,
        EpsClass::Mid => 2 * g as i64 - 2,
        EpsClass::High => 2 * g as i64 - 1,
    }
}

pub fn excluded_case(g: usize, f: usize) -> bool {
    g == 1 && f % 2 == 0
}

/// The alternating-sum Hilbert numerator of a single-graded complex,
/// normalized so the corner contributes s^0: HN(s) = Σ_N (-1)^N Σ s^(-t1).
pub fn hn_raw_from_complex(cx: &FreeComplex) -> LaurentPoly {
    let mut hn = LaurentPoly::zero();
    for (&n, m) in &cx.modules {
        let sign: i128 = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        for s in &m.summands {
            hn.add_term(sign * s.rank as i128, -s.twist.0);
        }
    }
    hn
}

/// hn from a built complex: HN divided by (1-s)^(f-g).  Fails if the
/// numerator is not divisible (which signals a wrong complex).
pub fn hn_from_complex(cx: &FreeComplex) -> Result<LaurentPoly, HilbertError> {
    let raw = hn_raw_from_complex(cx);
    Ok(laurent_div_power(&raw, cx.f - cx.g)?)
}

/// First closed form (three summands); excluded for g = 1 with f even.
pub fn hn_closed_1(g: usize, f: usize, epsilon: i64) -> Result<LaurentPoly, HilbertError> {
    if excluded_case(g, f) {
        return Err(HilbertError::ExcludedCase);
    }
    Ok(hn_closed_1_formula(g, f, epsilon))
}

/// The three-summand formula itself, without the exclusion guard (used to
/// confirm the g = 1, f even quotient equals 1 - s).
pub fn hn_closed_1_formula(g: usize, f: usize, epsilon: i64) -> LaurentPoly {
    let (gi, fi) = (g as i64, f as i64);
    let delta = fi - gi;
    let sign_d1: i128 = if (delta + 1) % 2 == 0 { 1 } else { -1 };
    let mut first = LaurentPoly::zero();
    for j in 0..epsilon.max(0) {
        first.add_term(
            sign_d1 * gen_binomial((gi + j - 1) as i128, j as i128),
            2 * j + 2 * gi - fi,
        );
    }
    let first = first.mul(&pow_one_minus_s(g));
    let mut second = LaurentPoly::zero();
    for l in 0..=gi - 2 {
        second.add_term(gen_binomial((l + fi - gi - 1) as i128, l as i128), l);
    }
    let mut third = LaurentPoly::zero();
    for l in 0..=fi - gi - 2 {
        let sign: i128 = if (l + delta) % 2 == 0 { 1 } else { -1 };
        third.add_term(sign * gen_binomial((gi + l - 1) as i128, l as i128), l + 2 * gi - fi);
    }
    first.add(&second).add(&third)
}

fn pow_one_minus_s(k: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for _ in 0..k {
        acc = acc.mul(&one_minus_s());
    }
    acc
}

/// Second closed form, organized by h-vector coefficients.
pub fn hn_closed_2(g: usize, f: usize, epsilon: i64) -> Result<(LaurentPoly, HVector), HilbertError> {
    if excluded_case(g, f) {
        return Err(HilbertError::ExcludedCase);
    }
    let q = q_of(g, f, epsilon);
    let hv: Vec<i128> = (0..=q.max(0)).map(|l| h_coeff(g, f, epsilon, l)).collect();
    let hn = LaurentPoly::from_coeffs(hv.iter().enumerate().map(|(i, &c)| (i as i64, c)));
    Ok((hn, HVector(hv)))
}

fn h_coeff(g: usize, f: usize, epsilon: i64, l: i64) -> i128 {
    let (gi, fi) = (g as i64, f as i64);
    let chi_low = matches!(eps_class(f - g, epsilon), EpsClass::Low);
    if l <= gi - 2 {
        gen_binomial((l + fi - gi - 1) as i128, l as i128)
    } else if l == gi - 1 {
        gen_binomial((l + fi - gi - 1) as i128, l as i128)
            - if chi_low { gen_binomial((gi + epsilon - 1) as i128, epsilon as i128) } else { 0 }
    } else {
        let mut acc = 0i128;
        for j in 0..=(epsilon - 1) {
            let sign: i128 = if (l + gi + 1) % 2 == 0 { 1 } else { -1 };
            acc += sign
                * gen_binomial(gi as i128, (l - 2 * gi + fi - 2 * j) as i128)
                * gen_binomial((gi + j - 1) as i128, j as i128);
        }
        acc
    }
}

/// Multiplicity e = hn(1) = Σ_{i=0}^{⌊δ/2⌋} binom(f-2-2i, δ-2i).
pub fn multiplicity(g: usize, f: usize) -> Result<i128, HilbertError> {
    if excluded_case(g, f) {
        return Err(HilbertError::ExcludedCase);
    }
    Ok(multiplicity_formula(g, f))
}

pub fn multiplicity_formula(g: usize, f: usize) -> i128 {
    let delta = (f - g) as i128;
    let mut acc = 0i128;
    let mut i = 0i128;
    while 2 * i <= delta {
        acc += gen_binomial(f as i128 - 2 - 2 * i, delta - 2 * i);
        i += 1;
    }
    acc
}

/// Number of monomials in g-1 variables of degree at most δ and of the same
/// parity as δ (the combinatorial reading of the multiplicity).
pub fn monomial_count(g: usize, f: usize) -> i128 {
    let delta = f - g;
    let vars = g as i128 - 1;
    let mut acc = 0i128;
    let mut d = delta as i128 % 2;
    while d <= delta as i128 {
        acc += gen_binomial(vars - 1 + d, d);
        d += 2;
    }
    acc
}

// ---------------------------------------------------------------------------
// identity sweeps
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdentityName {
    /// coefficient form of the contraction identity:
    /// Σ_{a1+..+ag=A} Π binom(b_i, a_i) = binom(B, A)
    DividedContraction,
    /// 0 ≤ a ⟹ Σ_k (-1)^k binom(b+k, c+k) binom(a, k) = (-1)^a binom(b, a+c)
    K9512g,
    /// (-1)^J binom(F-J,G-1) binom(F,J-1)
    ///   = Σ_{m=J}^{F-G+1} (-1)^m binom(F-J+m, G-J+m) binom(F-G+1, m)
    L2381,
    /// (-1)^(J-1) binom(F-J,G-1) binom(F,J-1)
    ///   = Σ_{m=0}^{J-1} (-1)^m binom(F-J+m, G-J+m) binom(F-G+1, m)
    L239,
    /// (-1)^g χ(L=0) χ(2≤f) = binom(f-2,L) binom(L-1,g-2)
    ///   + Σ_{ℓ≤f-g-2} binom(f-g, g-L+ℓ) binom(g+ℓ-1, ℓ)
    ///   - Σ_{L-g+1≤ℓ} binom(f, 2ℓ+2g-L) binom(g+ℓ-1, ℓ)
    L251,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub name: IdentityName,
    pub pass: bool,
    pub cases: u64,
    pub first_violation: Option<String>,
}

pub fn identity_sweep(name: IdentityName, bound: i64) -> SweepReport {
    let mut cases = 0u64;
    let mut first_violation = None;
    match name {
        IdentityName::DividedContraction => {
            'outer: for g in 1..=4i64 {
                for bsum in 0..=bound.min(8) {
                    for b in compositions(g, bsum) {
                        for a_deg in 0..=bsum {
                            let mut total = 0i128;
                            for a in compositions(g, a_deg) {
                                let mut prod = 1i128;
                                for i in 0..g as usize {
                                    prod *= gen_binomial(b[i] as i128, a[i] as i128);
                                }
                                total += prod;
                            }
                            cases += 1;
                            if total != gen_binomial(bsum as i128, a_deg as i128) {
                                first_violation = Some(format!("g={g} b={b:?} A={a_deg}"));
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        IdentityName::K9512g => {
            'outer2: for a in 0..=bound.min(15) {
                for b in -bound.min(15)..=bound.min(15) {
                    for c in -bound.min(15)..=bound.min(15) {
                        let mut lhs = 0i128;
                        for k in 0..=a {
                            let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
                            lhs += sign
                                * gen_binomial((b + k) as i128, (c + k) as i128)
                                * gen_binomial(a as i128, k as i128);
                        }
                        let rhs = (if a % 2 == 0 { 1 } else { -1 })
                            * gen_binomial(b as i128, (a + c) as i128);
                        cases += 1;
                        if lhs != rhs {
                            first_violation = Some(format!("a={a} b={b} c={c}"));
                            break 'outer2;
                        }
                    }
                }
            }
        }
        IdentityName::L2381 | IdentityName::L239 => {
            'outer3: for fcap in 0..=bound {
                for g in 0..=fcap {
                    for j in 0..=fcap {
                        let lhs_sign: i128 = if name == IdentityName::L2381 {
                            if j % 2 == 0 {
                                1
                            } else {
                                -1
                            }
                        } else if (j - 1).rem_euclid(2) == 0 {
                            1
                        } else {
                            -1
                        };
                        let lhs = lhs_sign
                            * gen_binomial((fcap - j) as i128, (g - 1) as i128)
                            * gen_binomial(fcap as i128, (j - 1) as i128);
                        let (m_lo, m_hi) = if name == IdentityName::L2381 {
                            (j, fcap - g + 1)
                        } else {
                            (0, j - 1)
                        };
                        let mut rhs = 0i128;
                        let mut m = m_lo;
                        while m <= m_hi {
                            let sign: i128 = if m % 2 == 0 { 1 } else { -1 };
                            rhs += sign
                                * gen_binomial((fcap - j + m) as i128, (g - j + m) as i128)
                                * gen_binomial((fcap - g + 1) as i128, m as i128);
                            m += 1;
                        }
                        cases += 1;
                        if lhs != rhs {
                            first_violation = Some(format!("F={fcap} G={g} J={j}"));
                            break 'outer3;
                        }
                    }
                }
            }
        }
        IdentityName::L251 => {
            'outer4: for f in 1..=bound {
                for g in 1..=f {
                    for l in -10..=(f + 5) {
                        let lhs = (if g % 2 == 0 { 1i128 } else { -1 })
                            * if l == 0 { 1 } else { 0 }
                            * if f >= 2 { 1 } else { 0 };
                        let a = gen_binomial((f - 2) as i128, l as i128)
                            * gen_binomial((l - 1) as i128, (g - 2) as i128);
                        let mut b = 0i128;
                        for el in 0..=(f - g - 2) {
                            b += gen_binomial((f - g) as i128, (g - l + el) as i128)
                                * gen_binomial((g + el - 1) as i128, el as i128);
                        }
                        let mut c = 0i128;
                        // the binomials vanish for ℓ below max(L-g+1, 0) and
                        // once 2ℓ + 2g - L exceeds f, so the window is exact
                        for el in (l - g + 1).max(0).. {
                            if 2 * el + 2 * g - l > f {
                                break;
                            }
                            c += gen_binomial(f as i128, (2 * el + 2 * g - l) as i128)
                                * gen_binomial((g + el - 1) as i128, el as i128);
                        }
                        let rhs = a + b - c;
                        cases += 1;
                        if lhs != rhs {
                            first_violation = Some(format!("f={f} g={g} L={l}"));
                            break 'outer4;
                        }
                    }
                }
            }
        }
    }
    SweepReport { name, pass: first_violation.is_none(), cases, first_violation }
}

fn compositions(parts: i64, total: i64) -> Vec<Vec<i64>> {
    fn rec(parts: i64, total: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=total).rev() {
            cur.push(x);
            rec(parts - 1, total - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, total, &mut Vec::new(), &mut out);
    out
}
