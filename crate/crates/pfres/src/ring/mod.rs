//! Exact sparse multivariate polynomial arithmetic over a prime field or ℚ,
//! with single and double gradings and a fixed global monomial order.

mod field;
mod laurent;
mod monomial;
mod poly;

pub use field::{FieldElem, FieldKind, DEFAULT_PRIME};
pub use laurent::{gen_binomial, laurent_div_power, one_minus_s, LaurentPoly};
pub use monomial::{MonOrder, Monomial, VarKind, VarSet};
pub use poly::PolyElem;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("characteristic must be an odd prime, got {0}")]
    BadCharacteristic(u64),
    #[error("mismatched variable sets")]
    VarSetMismatch,
    #[error("mismatched coefficient fields")]
    FieldMismatch,
    #[error("evaluation point has length {got}, expected {want}")]
    PointLength { got: usize, want: usize },
    #[error("not divisible by (1-s)^{0}", k)]
    NotDivisible { k: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
