use super::RingError;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default prime for generic computations.  Chosen large enough that random
/// specializations stay generic for every parameter range used here.
pub const DEFAULT_PRIME: u64 = 32003;

/// The coefficient field: 𝔽_p for an odd prime p, or ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Fp(u64),
    Rational,
}

impl FieldKind {
    /// Prime field constructor.  Rejects p = 2 and composites.
    pub fn fp(p: u64) -> Result<Self, RingError> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(RingError::BadCharacteristic(p));
        }
        Ok(FieldKind::Fp(p))
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            FieldKind::Fp(p) => FieldElem::Fp { v: 0, p: *p },
            FieldKind::Rational => FieldElem::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            FieldKind::Fp(p) => FieldElem::Fp { v: 1, p: *p },
            FieldKind::Rational => FieldElem::Rat(BigRational::one()),
        }
    }

    pub fn from_i128(&self, n: i128) -> FieldElem {
        match self {
            FieldKind::Fp(p) => {
                let p128 = *p as i128;
                let mut r = n % p128;
                if r < 0 {
                    r += p128;
                }
                FieldElem::Fp { v: r as u64, p: *p }
            }
            FieldKind::Rational => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_ratio(&self, num: i128, den: i128) -> FieldElem {
        assert!(den != 0, "zero denominator");
        match self {
            FieldKind::Fp(_) => {
                let d = self.from_i128(den);
                self.from_i128(num).mul(&d.inv())
            }
            FieldKind::Rational => FieldElem::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            )),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar.  𝔽_p values are canonical representatives in [0, p);
/// rationals are kept in lowest terms with positive denominator (enforced by
/// `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Fp { v: u64, p: u64 },
    Rat(BigRational),
}

impl FieldElem {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElem::Fp { p, .. } => FieldKind::Fp(*p),
            FieldElem::Rat(_) => FieldKind::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Fp { v, .. } => *v == 1,
            FieldElem::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "mixed characteristics");
                FieldElem::Fp { v: (a + b) % p, p: *p }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Fp { v, p } => FieldElem::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
            FieldElem::Rat(r) => FieldElem::Rat(-r),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        match (self, other) {
            (FieldElem::Fp { v: a, p }, FieldElem::Fp { v: b, p: q }) => {
                assert_eq!(p, q, "mixed characteristics");
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                FieldElem::Fp { v: prod as u64, p: *p }
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn inv(&self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElem::Fp { v, p } => FieldElem::Fp { v: pow_mod(*v, p - 2, *p), p: *p },
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
        }
    }

    pub fn div(&self, other: &FieldElem) -> FieldElem {
        self.mul(&other.inv())
    }

    /// Lift to a signed representative, for display and for integer checks.
    pub fn lift_signed(&self) -> Option<i128> {
        match self {
            FieldElem::Fp { v, p } => {
                let half = p / 2;
                Some(if *v > half { *v as i128 - *p as i128 } else { *v as i128 })
            }
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().try_into().ok()
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Fp { v, .. } => write!(f, "{v}"),
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().abs(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    b = acc as u64;
    b
}
