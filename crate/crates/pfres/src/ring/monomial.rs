use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Role of a variable in the bigraded bookkeeping.  `T` variables carry
/// bidegree (1,0); everything else (coefficient variables A, the x's of the
/// matrix-of-linear-forms bridge, Z placeholders, auxiliary elimination
/// variables) carries (0,1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    T,
    Coeff,
}

/// An ordered variable set.  The global order is degrevlex with
/// T1 > … > Tf, then the coefficient variables in declaration order.
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    kinds: Vec<VarKind>,
}

impl VarSet {
    pub fn new(names: Vec<String>, kinds: Vec<VarKind>) -> Arc<Self> {
        assert_eq!(names.len(), kinds.len());
        Arc::new(VarSet { names, kinds })
    }

    /// T1..Tf only.
    pub fn t_only(f: usize) -> Arc<Self> {
        let names = (1..=f).map(|i| format!("T{i}")).collect();
        let kinds = vec![VarKind::T; f];
        VarSet::new(names, kinds)
    }

    /// T1..Tf followed by named coefficient variables.
    pub fn with_extra(f: usize, extra: &[String]) -> Arc<Self> {
        let mut names: Vec<String> = (1..=f).map(|i| format!("T{i}")).collect();
        let mut kinds = vec![VarKind::T; f];
        for e in extra {
            names.push(e.clone());
            kinds.push(VarKind::Coeff);
        }
        VarSet::new(names, kinds)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

pub type Exps = SmallVec<[u16; 12]>;

/// Exponent vector over a `VarSet`; total degree is the sum of exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Exps);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(smallvec::smallvec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e: Exps = smallvec::smallvec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn bidegree(&self, vars: &VarSet) -> (i64, i64) {
        let mut t = 0i64;
        let mut c = 0i64;
        for (i, &e) in self.0.iter().enumerate() {
            match vars.kind(i) {
                VarKind::T => t += e as i64,
                VarKind::Coeff => c += e as i64,
            }
        }
        (t, c)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn display(&self, vars: &VarSet) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                parts.push(vars.name(i).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", vars.name(i), e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Monomial orders.  `DegRevLex` is the fixed global order; `Elim(k)` is the
/// block order that eliminates the first `k` variables (degrevlex inside each
/// block), used only inside colon/saturation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonOrder {
    DegRevLex,
    Elim(usize),
}

impl MonOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonOrder::Elim(k) => {
                let da: u32 = a.0[..*k].iter().map(|&e| e as u32).sum();
                let db: u32 = b.0[..*k].iter().map(|&e| e as u32).sum();
                match da.cmp(&db) {
                    Ordering::Equal => match degrevlex(&a.0[..*k], &b.0[..*k]) {
                        Ordering::Equal => degrevlex(&a.0[*k..], &b.0[*k..]),
                        o => o,
                    },
                    o => o,
                }
            }
        }
    }
}

fn degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    // reverse on the last differing exponent
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_orders_variables_correctly() {
        // T1 > T2 > T3 under degrevlex
        let o = MonOrder::DegRevLex;
        let t1 = Monomial::var(3, 0);
        let t2 = Monomial::var(3, 1);
        let t3 = Monomial::var(3, 2);
        assert_eq!(o.cmp(&t1, &t2), Ordering::Greater);
        assert_eq!(o.cmp(&t2, &t3), Ordering::Greater);
        // x^2 y vs x y^2 z would differ in degree; classic tie-break check:
        // T1*T3 vs T2^2: same degree, last differing exponent is T3 -> T2^2 bigger
        let a = Monomial(smallvec::smallvec![1, 0, 1]);
        let b = Monomial(smallvec::smallvec![0, 2, 0]);
        assert_eq!(o.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn elim_block_order_dominates() {
        // Elim(1): any power of the first variable beats everything without it.
        let o = MonOrder::Elim(1);
        let t = Monomial(smallvec::smallvec![1, 0]);
        let u = Monomial(smallvec::smallvec![0, 5]);
        assert_eq!(o.cmp(&t, &u), Ordering::Greater);
    }
}
