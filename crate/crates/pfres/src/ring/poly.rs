use super::{FieldElem, FieldKind, MonOrder, Monomial, RingError, VarSet};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Sparse exact multivariate polynomial.  Terms are kept sorted in descending
/// degrevlex order with no zero coefficients; the zero polynomial has an
/// empty term list.
#[derive(Clone, Debug)]
pub struct PolyElem {
    pub vars: Arc<VarSet>,
    pub field: FieldKind,
    terms: Vec<(Monomial, FieldElem)>,
}

impl PartialEq for PolyElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}
impl Eq for PolyElem {}

impl PolyElem {
    pub fn zero(vars: &Arc<VarSet>, field: FieldKind) -> Self {
        PolyElem { vars: vars.clone(), field, terms: Vec::new() }
    }

    pub fn constant(vars: &Arc<VarSet>, c: FieldElem) -> Self {
        let field = c.kind();
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Monomial::one(vars.len()), c));
        }
        PolyElem { vars: vars.clone(), field, terms }
    }

    pub fn one(vars: &Arc<VarSet>, field: FieldKind) -> Self {
        Self::constant(vars, field.one())
    }

    pub fn from_i128(vars: &Arc<VarSet>, field: FieldKind, n: i128) -> Self {
        Self::constant(vars, field.from_i128(n))
    }

    pub fn var(vars: &Arc<VarSet>, field: FieldKind, i: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), i), field.one())
    }

    pub fn monomial(vars: &Arc<VarSet>, m: Monomial, c: FieldElem) -> Self {
        let field = c.kind();
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((m, c));
        }
        PolyElem { vars: vars.clone(), field, terms }
    }

    /// Build from unsorted (monomial, coefficient) pairs, combining duplicates.
    pub fn from_terms(
        vars: &Arc<VarSet>,
        field: FieldKind,
        pairs: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Self {
        let mut map: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, c) in pairs {
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().collect();
        terms.sort_by(|a, b| MonOrder::DegRevLex.cmp(&b.0, &a.0));
        PolyElem { vars: vars.clone(), field, terms }
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<&(Monomial, FieldElem)> {
        self.terms.first()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn assert_compat(&self, other: &PolyElem) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "mismatched variable sets"
        );
        assert_eq!(self.field, other.field, "mismatched coefficient fields");
    }

    /// Checked compatibility, for API boundaries where inputs are untrusted.
    pub fn check_compat(&self, other: &PolyElem) -> Result<(), RingError> {
        if self.vars != other.vars {
            return Err(RingError::VarSetMismatch);
        }
        if self.field != other.field {
            return Err(RingError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyElem) -> PolyElem {
        self.assert_compat(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let ord = MonOrder::DegRevLex;
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp(&self.terms[i].0, &other.terms[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.add(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        PolyElem { vars: self.vars.clone(), field: self.field, terms: out }
    }

    pub fn sub(&self, other: &PolyElem) -> PolyElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyElem {
        PolyElem {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &PolyElem) -> PolyElem {
        self.assert_compat(other);
        if self.is_zero() || other.is_zero() {
            return PolyElem::zero(&self.vars, self.field);
        }
        // single-term factors multiply term-by-term without rehashing
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m, c);
        }
        let mut map: HashMap<Monomial, FieldElem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&c);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = map.into_iter().collect();
        terms.sort_by(|a, b| MonOrder::DegRevLex.cmp(&b.0, &a.0));
        PolyElem { vars: self.vars.clone(), field: self.field, terms }
    }

    pub fn scale(&self, c: &FieldElem) -> PolyElem {
        if c.is_zero() {
            return PolyElem::zero(&self.vars, self.field);
        }
        PolyElem {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldElem) -> PolyElem {
        if c.is_zero() {
            return PolyElem::zero(&self.vars, self.field);
        }
        PolyElem {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(mm, k)| (mm.mul(m), k.mul(c))).collect(),
        }
    }

    pub fn evaluate(&self, point: &[FieldElem]) -> Result<FieldElem, RingError> {
        if point.len() != self.vars.len() {
            return Err(RingError::PointLength { got: point.len(), want: self.vars.len() });
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Exact division by `d`; returns None if not divisible.
    pub fn div_exact(&self, d: &PolyElem) -> Option<PolyElem> {
        self.assert_compat(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let ord = MonOrder::DegRevLex;
        let (dm, dc) = d.leading().unwrap();
        let dcinv = dc.inv();
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, FieldElem)> = Vec::new();
        while let Some((lm, lc)) = rem.leading().cloned() {
            if !dm.divides(&lm) {
                return None;
            }
            let qm = lm.div_exact(dm);
            let qc = lc.mul(&dcinv);
            quo.push((qm.clone(), qc.clone()));
            rem = rem.sub(&d.mul_monomial(&qm, &qc));
        }
        let _ = ord;
        quo.sort_by(|a, b| MonOrder::DegRevLex.cmp(&b.0, &a.0));
        Some(PolyElem { vars: self.vars.clone(), field: self.field, terms: quo })
    }

    /// (T-degree, coefficient-degree) if bihomogeneous, None otherwise.
    pub fn bidegree(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.iter();
        let first = it.next()?;
        let d = first.0.bidegree(&self.vars);
        for (m, _) in it {
            if m.bidegree(&self.vars) != d {
                return None;
            }
        }
        Some(d)
    }

    /// T-degree if homogeneous in the T-grading, None otherwise.  The zero
    /// polynomial is homogeneous of every degree and reports None here.
    pub fn t_degree(&self) -> Option<i64> {
        self.bidegree().map(|(t, _)| t)
    }

    /// Parse a polynomial in the named variables: sums of `c*V^k*...` terms,
    /// integer or `a/b` coefficients, unary minus.
    pub fn parse(input: &str, vars: &Arc<VarSet>, field: FieldKind) -> Result<Self, RingError> {
        let mut p = Parser { s: input.as_bytes(), pos: 0 };
        let poly = p.expr(vars, field)?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(RingError::Parse(format!(
                "unexpected trailing input at byte {} in {input:?}",
                p.pos
            )));
        }
        Ok(poly)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&m.display(&self.vars));
            } else {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&m.display(&self.vars));
            }
        }
        out
    }
}

impl fmt::Display for PolyElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).map(|&b| b as char)
    }

    fn expr(&mut self, vars: &Arc<VarSet>, field: FieldKind) -> Result<PolyElem, RingError> {
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                neg = true;
            }
            Some('+') => {
                self.pos += 1;
            }
            _ => {}
        }
        let mut acc = self.term(vars, field)?;
        if neg {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term(vars, field)?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term(vars, field)?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self, vars: &Arc<VarSet>, field: FieldKind) -> Result<PolyElem, RingError> {
        let mut acc = self.factor(vars, field)?;
        while let Some('*') = self.peek() {
            self.pos += 1;
            let f = self.factor(vars, field)?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self, vars: &Arc<VarSet>, field: FieldKind) -> Result<PolyElem, RingError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if let Some('/') = self.peek() {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == 0 {
                        return Err(RingError::Parse("zero denominator".into()));
                    }
                    Ok(PolyElem::constant(vars, field.from_ratio(n, d)))
                } else {
                    Ok(PolyElem::from_i128(vars, field, n))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                let idx = vars
                    .index_of(&name)
                    .ok_or_else(|| RingError::Parse(format!("unknown variable {name:?}")))?;
                let mut e = 1u16;
                if let Some('^') = self.peek() {
                    self.pos += 1;
                    let n = self.integer()?;
                    if n < 0 || n > u16::MAX as i128 {
                        return Err(RingError::Parse(format!("bad exponent {n}")));
                    }
                    e = n as u16;
                }
                let mut m = Monomial::one(vars.len());
                m.0[idx] = e;
                Ok(PolyElem::monomial(vars, m, field.one()))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr(vars, field)?;
                match self.peek() {
                    Some(')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(RingError::Parse("expected ')'".into())),
                }
            }
            other => Err(RingError::Parse(format!("unexpected {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<i128, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(RingError::Parse("expected integer".into()));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse::<i128>()
            .map_err(|e| RingError::Parse(e.to_string()))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && ((self.s[self.pos] as char).is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string()
    }
}
