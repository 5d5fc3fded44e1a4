//! Exterior algebra Λ•F and divided power algebra D•(G*) with polynomial
//! coefficients: wedge products, divided powers of 2-forms via Pfaffian
//! minors, the contraction action of Sym(G) on D(G*), the derivation action
//! of F* on Λ•F, and divided-power integration.

use crate::ring::{gen_binomial, FieldElem, FieldKind, PolyElem, VarSet};
use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Strictly increasing index tuple (1-based) labelling a basis element of Λ^k F.
pub type Tuple = SmallVec<[u8; 12]>;

/// Exponent vector (a_1..a_g) labelling X_1^(a_1)...X_g^(a_g) in D(G*).
pub type DivMono = SmallVec<[u16; 8]>;

/// Element of Λ^k F with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElem {
    pub f: usize,
    pub degree: usize,
    pub terms: BTreeMap<Tuple, PolyElem>,
}

impl ExtElem {
    pub fn zero(f: usize, degree: usize) -> Self {
        ExtElem { f, degree, terms: BTreeMap::new() }
    }

    /// The empty wedge with a scalar coefficient.
    pub fn scalar(f: usize, c: PolyElem) -> Self {
        let mut e = ExtElem::zero(f, 0);
        e.add_term(Tuple::new(), c);
        e
    }

    pub fn basis(f: usize, tuple: &[u8], vars: &Arc<VarSet>, field: FieldKind) -> Self {
        let mut e = ExtElem::zero(f, tuple.len());
        e.add_term(Tuple::from_slice(tuple), PolyElem::one(vars, field));
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: Tuple, c: PolyElem) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(t.len(), self.degree);
        debug_assert!(t.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(t.iter().all(|&i| 1 <= i && i as usize <= self.f));
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &ExtElem) -> ExtElem {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> ExtElem {
        let mut out = ExtElem::zero(self.f, self.degree);
        for (t, p) in &self.terms {
            out.add_term(t.clone(), p.scale(c));
        }
        out
    }

    pub fn scale_poly(&self, c: &PolyElem) -> ExtElem {
        let mut out = ExtElem::zero(self.f, self.degree);
        for (t, p) in &self.terms {
            out.add_term(t.clone(), p.mul(c));
        }
        out
    }

    pub fn neg(&self) -> ExtElem {
        let mut out = ExtElem::zero(self.f, self.degree);
        for (t, p) in &self.terms {
            out.add_term(t.clone(), p.neg());
        }
        out
    }

    /// Coefficient of the full wedge e_1∧…∧e_f (zero polynomial if absent).
    pub fn top_coefficient(&self, vars: &Arc<VarSet>, field: FieldKind) -> PolyElem {
        let full: Tuple = (1..=self.f as u8).collect();
        self.terms.get(&full).cloned().unwrap_or_else(|| PolyElem::zero(vars, field))
    }
}

/// Sign of merging two strictly increasing tuples; None if they overlap.
pub fn merge_sign(a: &[u8], b: &[u8]) -> Option<(Tuple, i32)> {
    let mut out = Tuple::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a-entries
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}

/// Exterior product a ∧ b.
pub fn wedge(a: &ExtElem, b: &ExtElem) -> ExtElem {
    assert_eq!(a.f, b.f, "mixed ambient ranks");
    let mut out = ExtElem::zero(a.f, a.degree + b.degree);
    if a.degree + b.degree > a.f {
        return out;
    }
    for (ta, ca) in &a.terms {
        for (tb, cb) in &b.terms {
            if let Some((t, s)) = merge_sign(ta, tb) {
                let c = ca.mul(cb);
                out.add_term(t, if s < 0 { c.neg() } else { c });
            }
        }
    }
    out
}

/// Alternating matrix over polynomial entries: M^t = -M with zero diagonal.
#[derive(Clone, Debug)]
pub struct AltMatrix {
    pub n: usize,
    pub entries: Vec<PolyElem>,
}

impl AltMatrix {
    pub fn new(n: usize, entries: Vec<PolyElem>) -> Result<Self, String> {
        if entries.len() != n * n {
            return Err(format!("expected {} entries, got {}", n * n, entries.len()));
        }
        let m = AltMatrix { n, entries };
        for i in 0..n {
            if !m.at(i, i).is_zero() {
                return Err(format!("nonzero diagonal entry at ({i},{i})"));
            }
            for j in 0..i {
                if m.at(i, j).add(m.at(j, i)) != PolyElem::zero(&m.at(0, 0).vars, m.at(0, 0).field)
                {
                    return Err(format!("entry ({i},{j}) is not skew to ({j},{i})"));
                }
            }
        }
        Ok(m)
    }

    /// Build from strictly-upper entries in row-major order.
    pub fn from_upper(n: usize, vars: &Arc<VarSet>, field: FieldKind, upper: &[PolyElem]) -> Self {
        assert_eq!(upper.len(), n * (n - 1) / 2);
        let zero = PolyElem::zero(vars, field);
        let mut entries = vec![zero; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                entries[i * n + j] = upper[k].clone();
                entries[j * n + i] = upper[k].neg();
                k += 1;
            }
        }
        AltMatrix { n, entries }
    }

    pub fn zero(n: usize, vars: &Arc<VarSet>, field: FieldKind) -> Self {
        AltMatrix { n, entries: vec![PolyElem::zero(vars, field); n * n] }
    }

    pub fn at(&self, i: usize, j: usize) -> &PolyElem {
        &self.entries[i * self.n + j]
    }

    /// The associated 2-form Σ_{i<j} M_ij e_i∧e_j.
    pub fn to_two_form(&self) -> ExtElem {
        let mut out = ExtElem::zero(self.n, 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let t: Tuple = smallvec::smallvec![(i + 1) as u8, (j + 1) as u8];
                out.add_term(t, self.at(i, j).clone());
            }
        }
        out
    }

    /// Inverse of `to_two_form`, over the ambient rank `f`.
    pub fn from_two_form(v: &ExtElem, vars: &Arc<VarSet>, field: FieldKind) -> Self {
        assert_eq!(v.degree, 2, "expected a 2-form");
        let n = v.f;
        let mut m = AltMatrix::zero(n, vars, field);
        for (t, c) in &v.terms {
            let (i, j) = (t[0] as usize - 1, t[1] as usize - 1);
            m.entries[i * n + j] = c.clone();
            m.entries[j * n + i] = c.neg();
        }
        m
    }
}

/// Pfaffian computed by expansion along the first remaining row, with
/// memoization over index subsets.  Odd-size input gives 0.
pub struct PfaffianCache<'a> {
    mat: &'a AltMatrix,
    vars: Arc<VarSet>,
    field: FieldKind,
    memo: HashMap<u64, PolyElem>,
}

impl<'a> PfaffianCache<'a> {
    pub fn new(mat: &'a AltMatrix) -> Self {
        assert!(mat.n <= 64);
        let proto = &mat.entries[0];
        PfaffianCache { mat, vars: proto.vars.clone(), field: proto.field, memo: HashMap::new() }
    }

    /// Pfaffian of the principal submatrix on the (0-based) indices in `rows`.
    pub fn pf_subset(&mut self, rows: &[usize]) -> PolyElem {
        if rows.len() % 2 != 0 {
            return PolyElem::zero(&self.vars, self.field);
        }
        let mask: u64 = rows.iter().fold(0u64, |m, &i| m | (1u64 << i));
        self.pf_mask(mask)
    }

    fn pf_mask(&mut self, mask: u64) -> PolyElem {
        if mask == 0 {
            return PolyElem::one(&self.vars, self.field);
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << first);
        let mut acc = PolyElem::zero(&self.vars, self.field);
        let mut sign_pos = true;
        let mut j = rest;
        while j != 0 {
            let idx = j.trailing_zeros() as usize;
            j &= j - 1;
            let entry = self.mat.at(first, idx);
            if !entry.is_zero() {
                let sub = self.pf_mask(rest & !(1u64 << idx));
                let contrib = entry.mul(&sub);
                acc = if sign_pos { acc.add(&contrib) } else { acc.sub(&contrib) };
            }
            sign_pos = !sign_pos;
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

/// Pfaffian of the whole matrix.
pub fn pfaffian(m: &AltMatrix) -> PolyElem {
    let rows: Vec<usize> = (0..m.n).collect();
    PfaffianCache::new(m).pf_subset(&rows)
}

/// ℓ-th divided power of a 2-form: the coefficient of e_I is the Pfaffian of
/// the associated alternating matrix restricted to I.  Char-free.
pub fn divided_power_2form(v: &ExtElem, ell: usize, vars: &Arc<VarSet>, field: FieldKind) -> ExtElem {
    assert_eq!(v.degree, 2, "divided powers only for 2-forms");
    let f = v.f;
    if ell == 0 {
        return ExtElem::scalar(f, PolyElem::one(vars, field));
    }
    let mut out = ExtElem::zero(f, 2 * ell);
    if 2 * ell > f {
        return out;
    }
    let m = AltMatrix::from_two_form(v, vars, field);
    let mut cache = PfaffianCache::new(&m);
    for combo in combinations(f, 2 * ell) {
        let rows: Vec<usize> = combo.iter().map(|&i| i as usize - 1).collect();
        let pf = cache.pf_subset(&rows);
        out.add_term(combo, pf);
    }
    out
}

/// All strictly increasing k-tuples in [1, f], lexicographic order.
pub fn combinations(f: usize, k: usize) -> Vec<Tuple> {
    let mut out = Vec::new();
    if k > f {
        return out;
    }
    let mut cur: Tuple = (1..=k as u8).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < f - (k - 1 - i) {
                cur[i] += 1;
                for j in (i + 1)..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lexicographic rank of a strictly increasing tuple among `combinations(f, k)`.
pub fn tuple_rank(f: usize, t: &[u8]) -> usize {
    let k = t.len();
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (i, &ti) in t.iter().enumerate() {
        for v in (prev + 1)..(ti as usize) {
            rank += binom_usize(f - v, k - 1 - i);
        }
        prev = ti as usize;
    }
    rank
}

pub fn binom_usize(n: usize, k: usize) -> usize {
    gen_binomial(n as i128, k as i128) as usize
}

/// Monomials of degree `deg` in g variables, descending lexicographic order
/// (Y1-exponent first).  This matches the fixed DivMono basis order.
pub fn monomials_y(g: usize, deg: usize) -> Vec<DivMono> {
    let mut out = Vec::new();
    let mut cur: DivMono = smallvec::smallvec![0; g];
    fn rec(g: usize, pos: usize, rem: usize, cur: &mut DivMono, out: &mut Vec<DivMono>) {
        if pos == g - 1 {
            cur[pos] = rem as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rem).rev() {
            cur[pos] = e as u16;
            rec(g, pos + 1, rem - e, cur, out);
        }
    }
    if g == 0 {
        if deg == 0 {
            out.push(DivMono::new());
        }
        return out;
    }
    rec(g, 0, deg, &mut cur, &mut out);
    out
}

/// Rank of a DivMono within `monomials_y(g, deg)`.
pub fn divmono_rank(m: &DivMono) -> usize {
    let g = m.len();
    if g == 0 {
        return 0;
    }
    let deg: usize = m.iter().map(|&e| e as usize).sum();
    let mut rank = 0usize;
    let mut rem = deg;
    for pos in 0..g - 1 {
        let e = m[pos] as usize;
        // entries with first exponent > e come earlier
        for bigger in (e + 1)..=rem {
            rank += binom_usize(g - 1 - pos - 1 + (rem - bigger), rem - bigger);
        }
        rem -= e;
    }
    rank
}

/// Element of D_j(G*) with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DivElem {
    pub g: usize,
    pub degree: usize,
    pub terms: BTreeMap<DivMono, PolyElem>,
}

impl DivElem {
    pub fn zero(g: usize, degree: usize) -> Self {
        DivElem { g, degree, terms: BTreeMap::new() }
    }

    pub fn basis(g: usize, m: &DivMono, vars: &Arc<VarSet>, field: FieldKind) -> Self {
        let degree = m.iter().map(|&e| e as usize).sum();
        let mut d = DivElem::zero(g, degree);
        d.add_term(m.clone(), PolyElem::one(vars, field));
        d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: DivMono, c: PolyElem) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.iter().map(|&e| e as usize).sum::<usize>(), self.degree);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &DivElem) -> DivElem {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Divided-power product: X^(a) · X^(b) = Π binom(a_i+b_i, a_i) X^(a+b).
    pub fn mul(&self, other: &DivElem, field: FieldKind) -> DivElem {
        let mut out = DivElem::zero(self.g, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut coef: i128 = 1;
                let mut m: DivMono = smallvec::smallvec![0; self.g];
                for i in 0..self.g {
                    coef *= gen_binomial((ma[i] + mb[i]) as i128, ma[i] as i128);
                    m[i] = ma[i] + mb[i];
                }
                let c = ca.mul(cb).scale(&field.from_i128(coef));
                out.add_term(m, c);
            }
        }
        out
    }
}

/// Contraction of γ by the monomial m in the Y's: Y^a (X^(b)) = X^(b-a),
/// coefficient 1, zero if any exponent would go negative.
pub fn act_y(m: &DivMono, gamma: &DivElem) -> DivElem {
    let a_deg: usize = m.iter().map(|&e| e as usize).sum();
    if a_deg > gamma.degree {
        return DivElem::zero(gamma.g, 0);
    }
    let mut out = DivElem::zero(gamma.g, gamma.degree - a_deg);
    for (b, c) in &gamma.terms {
        if m.iter().zip(b.iter()).all(|(x, y)| x <= y) {
            let diff: DivMono = b.iter().zip(m.iter()).map(|(y, x)| y - x).collect();
            out.add_term(diff, c.clone());
        }
    }
    out
}

/// Divided-power integration: raise the distinguished exponent by one on
/// every term.  `distinguished` is 1-based.  Satisfies Y_dist ∘ ∫ = id.
pub fn integrate_x(gamma: &DivElem, distinguished: usize) -> DivElem {
    let mut out = DivElem::zero(gamma.g, gamma.degree + 1);
    for (m, c) in &gamma.terms {
        let mut m2 = m.clone();
        m2[distinguished - 1] += 1;
        out.add_term(m2, c.clone());
    }
    out
}

/// The action of τ ∈ F* (τ(e_i) = T_i) as an odd derivation on Λ•F.
/// The T variables are assumed to be the first `f` variables of `vars`.
pub fn contract_tau(a: &ExtElem, vars: &Arc<VarSet>, field: FieldKind) -> ExtElem {
    assert!(a.degree >= 1, "contraction needs degree >= 1");
    let mut out = ExtElem::zero(a.f, a.degree - 1);
    for (t, c) in &a.terms {
        for (j, &idx) in t.iter().enumerate() {
            let mut rest = t.clone();
            rest.remove(j);
            let ti = PolyElem::var(vars, field, idx as usize - 1);
            let coef = c.mul(&ti);
            out.add_term(rest, if j % 2 == 0 { coef } else { coef.neg() });
        }
    }
    out
}
