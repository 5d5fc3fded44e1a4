//! Construction of the totalized double complexes, the finite complexes
//! carved out of them, the connecting chain map, the distinguished cycles,
//! and the classification of the final nonzero map.

use crate::multilinear::{
    binom_usize, combinations, divmono_rank, monomials_y, tuple_rank, DivElem, DivMono, Tuple,
};
use crate::ring::{gen_binomial, FieldKind, PolyElem, VarSet};
use crate::seed::{c_map, SeedCtx, SeedError};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SummandKind {
    T,
    B,
    Corner,
}

/// Label of a direct summand.  For `Corner`, `i` records the wedge degree of
/// the F-factor and `j` is unused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummandLabel {
    pub kind: SummandKind,
    pub i: i64,
    pub j: i64,
}

impl SummandLabel {
    pub fn t(i: i64, j: i64) -> Self {
        SummandLabel { kind: SummandKind::T, i, j }
    }
    pub fn b(i: i64, j: i64) -> Self {
        SummandLabel { kind: SummandKind::B, i, j }
    }
    pub fn corner(wedge_deg: i64) -> Self {
        SummandLabel { kind: SummandKind::Corner, i: wedge_deg, j: 0 }
    }

    pub fn display(&self) -> String {
        match self.kind {
            SummandKind::T => format!("T({},{})", self.i, self.j),
            SummandKind::B => format!("B({},{})", self.i, self.j),
            SummandKind::Corner => format!("corner(^{}F)", self.i),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub label: SummandLabel,
    pub twist: (i64, i64),
    pub offset: usize,
    pub n_ext: usize,
    pub n_div: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ModuleAtN {
    pub summands: Vec<Summand>,
    pub rank: usize,
}

impl ModuleAtN {
    pub fn summand(&self, label: &SummandLabel) -> Option<&Summand> {
        self.summands.iter().find(|s| &s.label == label)
    }
}

/// Sparse polynomial matrix keyed by (row, col).
#[derive(Clone, Debug, Default)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: BTreeMap<(usize, usize), PolyElem>,
}

impl SparseMat {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, r: usize, c: usize, p: PolyElem) {
        if p.is_zero() {
            return;
        }
        debug_assert!(r < self.rows && c < self.cols);
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&p);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// self ∘ other (matrix product; other feeds into self).
    pub fn compose(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows);
        let mut by_col: Vec<Vec<(usize, &PolyElem)>> = vec![Vec::new(); self.cols];
        for (&(i, k), p) in &self.entries {
            by_col[k].push((i, p));
        }
        let mut out = SparseMat::new(self.rows, other.cols);
        for (&(k, j), q) in &other.entries {
            for &(i, p) in &by_col[k] {
                out.add(i, j, p.mul(q));
            }
        }
        out
    }

    pub fn apply(&self, v: &[(usize, PolyElem)]) -> Vec<(usize, PolyElem)> {
        let mut by_col: BTreeMap<usize, Vec<(usize, &PolyElem)>> = BTreeMap::new();
        for (&(i, k), p) in &self.entries {
            by_col.entry(k).or_default().push((i, p));
        }
        let mut acc: BTreeMap<usize, PolyElem> = BTreeMap::new();
        for (k, q) in v {
            if let Some(col) = by_col.get(k) {
                for &(i, p) in col {
                    let t = p.mul(q);
                    match acc.entry(i) {
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let s = e.get().add(&t);
                            if s.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = s;
                            }
                        }
                        std::collections::btree_map::Entry::Vacant(e) => {
                            if !t.is_zero() {
                                e.insert(t);
                            }
                        }
                    }
                }
            }
        }
        acc.into_iter().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplexKind {
    TotV,
    TotU,
    TotT,
    TotB,
    M,
    L,
}

/// A graded free complex: modules keyed by homological position and sparse
/// polynomial differentials d_N : modules[N] -> modules[N-1].  Consecutive
/// compositions are verified by the `verify` module, never assumed.
pub struct FreeComplex {
    pub kind: ComplexKind,
    pub f: usize,
    pub g: usize,
    pub delta: usize,
    pub epsilon: i64,
    pub field: FieldKind,
    pub vars: Arc<VarSet>,
    pub lo: i64,
    pub hi: i64,
    pub modules: BTreeMap<i64, ModuleAtN>,
    pub diffs: BTreeMap<i64, SparseMat>,
}

impl FreeComplex {
    pub fn module(&self, n: i64) -> Option<&ModuleAtN> {
        self.modules.get(&n)
    }

    pub fn rank(&self, n: i64) -> usize {
        self.modules.get(&n).map(|m| m.rank).unwrap_or(0)
    }

    /// Global basis index of (label, ext tuple, div mono) at position n.
    pub fn index_of(&self, n: i64, label: &SummandLabel, ext: &Tuple, div: &DivMono) -> Option<usize> {
        let m = self.modules.get(&n)?;
        let s = m.summand(label)?;
        let er = tuple_rank(self.f, ext);
        let dr = if div.is_empty() { 0 } else { divmono_rank(div) };
        Some(s.offset + er * s.n_div + dr)
    }

    /// (label, ext, div) of a global basis index at position n.
    pub fn basis_of(&self, n: i64, idx: usize) -> Option<(SummandLabel, Tuple, DivMono)> {
        let m = self.modules.get(&n)?;
        for s in &m.summands {
            if idx >= s.offset && idx < s.offset + s.rank {
                let local = idx - s.offset;
                let er = local / s.n_div;
                let dr = local % s.n_div;
                let ext = combinations(self.f, s.label.i as usize)
                    .into_iter()
                    .nth(er)
                    .expect("ext rank in range");
                let div = if s.label.kind == SummandKind::Corner {
                    DivMono::new()
                } else {
                    monomials_y(self.g, s.label.j as usize)
                        .into_iter()
                        .nth(dr)
                        .expect("div rank in range")
                };
                return Some((s.label, ext, div));
            }
        }
        None
    }
}

/// Twist (T-degree, coefficient-degree) of V_{i,j}.
pub fn v_twist(f: usize, g: usize, i: i64, j: i64) -> (i64, i64) {
    (f as i64 - 2 * g as i64 - i - 2 * j, -(g as i64) - j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsClass {
    /// ε = (δ-1)/2 (δ odd)
    Low,
    /// ε = δ/2 (δ even)
    Mid,
    /// ε = (δ+1)/2 (δ odd)
    High,
}

pub fn eps_class(delta: usize, epsilon: i64) -> EpsClass {
    if delta % 2 == 0 {
        assert_eq!(epsilon, (delta / 2) as i64, "inadmissible epsilon");
        EpsClass::Mid
    } else if epsilon == ((delta - 1) / 2) as i64 {
        EpsClass::Low
    } else {
        assert_eq!(epsilon, ((delta + 1) / 2) as i64, "inadmissible epsilon");
        EpsClass::High
    }
}

/// Largest N with a nonzero module.
pub fn n_max(f: usize, g: usize, delta: usize, epsilon: i64) -> i64 {
    match eps_class(delta, epsilon) {
        EpsClass::Low => {
            if delta == 1 {
                1
            } else if g == 1 {
                f as i64 - 1
            } else {
                f as i64 - 2
            }
        }
        EpsClass::Mid => f as i64 - 1,
        EpsClass::High => f as i64,
    }
}

fn push_summand(module: &mut ModuleAtN, f: usize, g: usize, label: SummandLabel) {
    let (n_ext, n_div, twist) = match label.kind {
        SummandKind::Corner => (binom_usize(f, label.i as usize), 1usize, (f as i64 - label.i, 0)),
        _ => (
            binom_usize(f, label.i as usize),
            binom_usize(g + label.j as usize - 1, label.j as usize),
            v_twist(f, g, label.i, label.j),
        ),
    };
    let rank = n_ext * n_div;
    if rank == 0 {
        return;
    }
    let offset = module.rank;
    module.summands.push(Summand { label, twist, offset, n_ext, n_div, rank });
    module.rank += rank;
}

/// Summand labels present at position `n`, in the fixed order
/// (kind T < B < corner, then i ascending, then j ascending).
fn labels_at(kind: ComplexKind, f: usize, _g: usize, delta: i64, eps: i64, n: i64) -> Vec<SummandLabel> {
    let mut t_labels = Vec::new();
    let mut b_labels = Vec::new();
    let mut corner = Vec::new();
    let fi = f as i64;
    match kind {
        ComplexKind::M | ComplexKind::L => {
            // T-part at I + 2J - delta + 2 = n
            let s = n + delta - 2;
            if s >= 0 {
                for j in 0..=s / 2 {
                    let i = s - 2 * j;
                    let in_t = j >= eps
                        && i >= 0
                        && i <= fi
                        && (kind == ComplexKind::L || i + j <= delta - 1);
                    if in_t {
                        t_labels.push(SummandLabel::t(i, j));
                    }
                }
            }
            // B-part at i + 2j - delta + 1 = n
            let s = n + delta - 1;
            if n >= 1 && s >= 0 {
                for j in 0..=s / 2 {
                    let i = s - 2 * j;
                    let in_b = i >= 0
                        && i <= fi
                        && i + j >= delta
                        && (kind == ComplexKind::L || j <= eps - 1);
                    if in_b {
                        b_labels.push(SummandLabel::b(i, j));
                    }
                }
            }
            if n == 0 {
                corner.push(SummandLabel::corner(fi));
            }
        }
        ComplexKind::TotT => {
            let s = n + delta - 1;
            if s >= 0 {
                for j in 0..=s / 2 {
                    let i = s - 2 * j;
                    if i >= 0 && i <= fi && j >= eps {
                        t_labels.push(SummandLabel::t(i, j));
                    }
                }
            }
        }
        ComplexKind::TotB => {
            if n == 0 {
                corner.push(SummandLabel::corner(fi));
            }
            let s = n + delta - 1;
            if n >= 1 && s >= 0 {
                for j in 0..=s / 2 {
                    let i = s - 2 * j;
                    if i >= 0 && i <= fi && i + j >= delta {
                        b_labels.push(SummandLabel::b(i, j));
                    }
                }
            }
        }
        ComplexKind::TotV | ComplexKind::TotU => {
            let s = n + delta - 1;
            if s >= 0 {
                for j in 0..=s / 2 {
                    let i = s - 2 * j;
                    let extra = kind == ComplexKind::TotV || i + j <= delta - 1;
                    if i >= 0 && i <= fi && extra {
                        b_labels.push(SummandLabel::b(i, j));
                    }
                }
            }
            let corner_hi = if kind == ComplexKind::TotV { 0 } else { -1 };
            if n >= -delta && n <= corner_hi {
                corner.push(SummandLabel::corner(fi + n));
            }
        }
    }
    t_labels.sort_by_key(|l| (l.i, l.j));
    b_labels.sort_by_key(|l| (l.i, l.j));
    let mut out = t_labels;
    out.extend(b_labels);
    out.extend(corner);
    out
}

/// Build a complex.  For the infinite totalizations and for 𝕃 the modules
/// are materialized in the window [lo, hi]; 𝕄 is finite and built whole.
/// With `with_diffs` false only the module layout is produced (enough for
/// Betti tables and Hilbert numerators).
pub fn build_complex(
    ctx: &SeedCtx,
    kind: ComplexKind,
    hi_override: Option<i64>,
    with_diffs: bool,
) -> FreeComplex {
    let f = ctx.f();
    let g = ctx.g();
    let delta = ctx.delta() as i64;
    let eps = ctx.epsilon();
    let nmax = n_max(f, g, ctx.delta(), eps);
    let hi = hi_override.unwrap_or(match kind {
        ComplexKind::M => nmax,
        _ => nmax + 2,
    });
    let lo = match kind {
        ComplexKind::TotV | ComplexKind::TotU => -delta,
        _ => 0,
    };
    let mut modules: BTreeMap<i64, ModuleAtN> = BTreeMap::new();
    for n in lo..=hi {
        let mut m = ModuleAtN::default();
        for label in labels_at(kind, f, g, delta, eps, n) {
            push_summand(&mut m, f, g, label);
        }
        // rank-0 positions stay materialized so every differential and every
        // chain-map square in the window is represented
        modules.insert(n, m);
    }
    let mut cx = FreeComplex {
        kind,
        f,
        g,
        delta: ctx.delta(),
        epsilon: eps,
        field: ctx.field,
        vars: ctx.vars.clone(),
        lo,
        hi,
        modules,
        diffs: BTreeMap::new(),
    };
    if with_diffs {
        build_diffs(ctx, &mut cx);
    }
    cx
}

fn build_diffs(ctx: &SeedCtx, cx: &mut FreeComplex) {
    let positions: Vec<i64> = cx.modules.keys().copied().collect();
    for &n in &positions {
        if !cx.modules.contains_key(&(n - 1)) {
            continue;
        }
        let mat = build_diff_at(ctx, cx, n);
        cx.diffs.insert(n, mat);
    }
}

fn build_diff_at(ctx: &SeedCtx, cx: &FreeComplex, n: i64) -> SparseMat {
    let src = &cx.modules[&n];
    let tgt = &cx.modules[&(n - 1)];
    let mut mat = SparseMat::new(tgt.rank, src.rank);
    for s in &src.summands {
        let exts = combinations(cx.f, s.label.i as usize);
        let divs: Vec<DivMono> = if s.label.kind == SummandKind::Corner {
            vec![DivMono::new()]
        } else {
            monomials_y(cx.g, s.label.j as usize)
        };
        for (er, ext) in exts.iter().enumerate() {
            for (dr, div) in divs.iter().enumerate() {
                let col = s.offset + er * s.n_div + dr;
                let mut sink = |label: SummandLabel, e: &Tuple, d: &DivMono, p: PolyElem| {
                    if let Some(row) = cx.index_of(n - 1, &label, e, d) {
                        mat.add(row, col, p);
                    }
                };
                emit_differential(ctx, cx, n, s.label, ext, div, &mut sink);
            }
        }
    }
    mat
}

/// Emit the image of one basis element under the differential, as a stream
/// of (target label, ext tuple, div mono, coefficient).
fn emit_differential(
    ctx: &SeedCtx,
    cx: &FreeComplex,
    n: i64,
    label: SummandLabel,
    ext: &Tuple,
    div: &DivMono,
    sink: &mut dyn FnMut(SummandLabel, &Tuple, &DivMono, PolyElem),
) {
    let f = cx.f;
    let is_tot = matches!(
        cx.kind,
        ComplexKind::TotV | ComplexKind::TotU | ComplexKind::TotT | ComplexKind::TotB
    );
    match label.kind {
        SummandKind::Corner => {
            // corner column of TotV / TotU: sign-adjusted vertical map -τ
            if label.i >= 1 {
                let tgt = SummandLabel::corner(label.i - 1);
                emit_tau(ctx, ext, |e, p| sink(tgt, &e, div, p.neg()));
            }
        }
        SummandKind::T if !is_tot => {
            // sources inside M or L (cone positions)
            if n == 1 {
                // degree-1 component: the map c into the corner
                let gamma = DivElem::basis(cx.g, div, &ctx.vars, ctx.field);
                let c = c_map(ctx, &gamma).expect("blop needs delta odd");
                let full: Tuple = (1..=f as u8).collect();
                sink(SummandLabel::corner(f as i64), &full, &DivMono::new(), c);
                return;
            }
            let (i0, j0) = (label.i, label.j);
            // horizontal Ψ within the T-part
            let tgt = SummandLabel::t(i0 + 1, j0 - 1);
            emit_psi(ctx, cx, ext, div, |e, d, p| sink(tgt, &e, &d, p));
            // vertical τ within the T-part
            if i0 >= 1 {
                let tgt = SummandLabel::t(i0 - 1, j0);
                emit_tau(ctx, ext, |e, p| sink(tgt, &e, div, p));
            }
            // block into the B-part
            emit_t_to_b(ctx, cx, i0, j0, ext, div, 1, sink);
        }
        SummandKind::B if !is_tot => {
            if n == 1 {
                emit_blip(ctx, cx, ext, sink);
                return;
            }
            let (i0, j0) = (label.i, label.j);
            let tgt = SummandLabel::b(i0 + 1, j0 - 1);
            emit_psi(ctx, cx, ext, div, |e, d, p| sink(tgt, &e, &d, p));
            if i0 >= 1 {
                let tgt = SummandLabel::b(i0 - 1, j0);
                emit_tau(ctx, ext, |e, p| sink(tgt, &e, div, p));
            }
        }
        SummandKind::T => {
            // Tot(T^ε) positions
            let (i0, j0) = (label.i, label.j);
            let tgt = SummandLabel::t(i0 + 1, j0 - 1);
            emit_psi(ctx, cx, ext, div, |e, d, p| sink(tgt, &e, &d, p));
            if i0 >= 1 {
                let tgt = SummandLabel::t(i0 - 1, j0);
                emit_tau(ctx, ext, |e, p| sink(tgt, &e, div, p));
            }
        }
        SummandKind::B => {
            // V-type summands of TotV / TotU / TotB
            let (i0, j0) = (label.i, label.j);
            let tgt = SummandLabel::b(i0 + 1, j0 - 1);
            emit_psi(ctx, cx, ext, div, |e, d, p| sink(tgt, &e, &d, p));
            if i0 >= 1 {
                let tgt = SummandLabel::b(i0 - 1, j0);
                emit_tau(ctx, ext, |e, p| sink(tgt, &e, div, p));
            }
            if j0 == 0 && i0 + (cx.g as i64) <= f as i64 {
                // corner map f_i ∧ (Λ^g Ψ)(ω_{G*}) ⊗ ω_G
                let tgt = SummandLabel::corner(i0 + cx.g as i64);
                let w = crate::multilinear::wedge(&basis_ext(cx, ext), &ctx.psi_full_wedge());
                for (t, c) in &w.terms {
                    sink(tgt, t, &DivMono::new(), c.clone());
                }
            }
        }
    }
}

fn basis_ext(cx: &FreeComplex, ext: &Tuple) -> crate::multilinear::ExtElem {
    crate::multilinear::ExtElem::basis(cx.f, ext, &cx.vars, cx.field)
}

/// τ(e_A) = Σ_j (-1)^(j+1) T_{a_j} e_{A minus a_j}.
fn emit_tau(ctx: &SeedCtx, ext: &Tuple, mut sink: impl FnMut(Tuple, PolyElem)) {
    for (pos, &idx) in ext.iter().enumerate() {
        let mut rest = ext.clone();
        rest.remove(pos);
        let t = PolyElem::var(&ctx.vars, ctx.field, idx as usize - 1);
        sink(rest, if pos % 2 == 0 { t } else { t.neg() });
    }
}

/// Σ_ℓ Ψ(X_ℓ) ∧ e_A ⊗ Y_ℓ(X^(a)).
fn emit_psi(
    ctx: &SeedCtx,
    _cx: &FreeComplex,
    ext: &Tuple,
    div: &DivMono,
    mut sink: impl FnMut(Tuple, DivMono, PolyElem),
) {
    for l in 0..ctx.g() {
        if div[l] == 0 {
            continue;
        }
        let mut d2 = div.clone();
        d2[l] -= 1;
        for (t1, c) in &ctx.psi_cols[l].terms {
            if let Some((merged, sign)) = crate::multilinear::merge_sign(t1, ext) {
                sink(merged, d2.clone(), if sign < 0 { c.neg() } else { c.clone() });
            }
        }
    }
}

/// The block from V^T_{I,J} into the B-part:
/// Σ_{i+2j = I+2J, δ ≤ i+j} (-1)^(I+j) binom(J-1-j, J-ε)
///     Σ_{m ∈ binom(Y, J-j)} D(μ)(m*) ∧ f_I ⊗ m(γ_J).
/// `outer_sign` scales everything (used by ξ which carries (-1)^N).
fn emit_t_to_b(
    ctx: &SeedCtx,
    cx: &FreeComplex,
    i0: i64,
    j0: i64,
    ext: &Tuple,
    div: &DivMono,
    outer_sign: i64,
    sink: &mut dyn FnMut(SummandLabel, &Tuple, &DivMono, PolyElem),
) {
    let f = cx.f as i64;
    let delta = cx.delta as i64;
    let eps = cx.epsilon;
    for j in 0..=j0 {
        let i = i0 + 2 * (j0 - j);
        if i > f || i + j < delta {
            continue;
        }
        let b = gen_binomial((j0 - 1 - j) as i128, (j0 - eps) as i128);
        if b == 0 {
            continue;
        }
        let sign = if (i0 + j) % 2 == 0 { 1 } else { -1 } * outer_sign;
        let coef = ctx.field.from_i128(b as i128 * sign as i128);
        let tgt = SummandLabel::b(i, j);
        for m in monomials_y(ctx.g(), (j0 - j) as usize) {
            if !m.iter().zip(div.iter()).all(|(a, b)| a <= b) {
                continue;
            }
            let d2: DivMono = div.iter().zip(m.iter()).map(|(a, b)| a - b).collect();
            let dmu = ctx.d_mu(&m);
            for (t1, c) in &dmu.terms {
                if let Some((merged, s)) = crate::multilinear::merge_sign(t1, ext) {
                    let mut p = c.scale(&coef);
                    if s < 0 {
                        p = p.neg();
                    }
                    sink(tgt, &merged, &d2, p);
                }
            }
        }
    }
}

/// f_δ ∧ (Λ^g Ψ)(ω_{G*}) ⊗ ω_G into the corner.
fn emit_blip(
    ctx: &SeedCtx,
    cx: &FreeComplex,
    ext: &Tuple,
    sink: &mut dyn FnMut(SummandLabel, &Tuple, &DivMono, PolyElem),
) {
    let f = cx.f;
    let w = crate::multilinear::wedge(&basis_ext(cx, ext), &ctx.psi_full_wedge());
    let top = w.top_coefficient(&ctx.vars, ctx.field);
    let full: Tuple = (1..=f as u8).collect();
    sink(SummandLabel::corner(f as i64), &full, &DivMono::new(), top);
}

// ---------------------------------------------------------------------------
// the chain map ξ^ε
// ---------------------------------------------------------------------------

/// Per-degree matrices of the chain map Tot(T^ε) -> Tot(B).
pub struct XiData {
    pub maps: BTreeMap<i64, SparseMat>,
}

pub fn build_xi(ctx: &SeedCtx, tot_t: &FreeComplex, tot_b: &FreeComplex) -> Result<XiData, SeedError> {
    let mut maps = BTreeMap::new();
    for (&n, src) in &tot_t.modules {
        let Some(tgt) = tot_b.modules.get(&n) else { continue };
        let mut mat = SparseMat::new(tgt.rank, src.rank);
        for s in &src.summands {
            let exts = combinations(tot_t.f, s.label.i as usize);
            let divs = monomials_y(tot_t.g, s.label.j as usize);
            for (er, ext) in exts.iter().enumerate() {
                for (dr, div) in divs.iter().enumerate() {
                    let col = s.offset + er * s.n_div + dr;
                    if n == 0 {
                        // ξ_0 = c on V_{0,ε} when ε = (δ-1)/2
                        let gamma = DivElem::basis(tot_t.g, div, &ctx.vars, ctx.field);
                        let c = c_map(ctx, &gamma)?;
                        let full: Tuple = (1..=tot_t.f as u8).collect();
                        if let Some(row) =
                            tot_b.index_of(0, &SummandLabel::corner(tot_t.f as i64), &full, &DivMono::new())
                        {
                            mat.add(row, col, c);
                        }
                        continue;
                    }
                    let outer = if n % 2 == 0 { 1 } else { -1 };
                    let mut sink = |label: SummandLabel, e: &Tuple, d: &DivMono, p: PolyElem| {
                        if let Some(row) = tot_b.index_of(n, &label, e, d) {
                            mat.add(row, col, p);
                        }
                    };
                    emit_t_to_b(ctx, tot_t, s.label.i, s.label.j, ext, div, outer, &mut sink);
                }
            }
        }
        maps.insert(n, mat);
    }
    Ok(XiData { maps })
}

// ---------------------------------------------------------------------------
// cycles
// ---------------------------------------------------------------------------

/// The three cycles attached to γ ∈ D_{(δ+N-1)/2}(G*): in Tot(V)_N, in
/// Tot(T^ε)_N, and in Tot(B)_N.
pub struct CycleTriple {
    pub n: i64,
    pub big: Vec<(usize, PolyElem)>,
    pub top: Vec<(usize, PolyElem)>,
    pub bot: Vec<(usize, PolyElem)>,
}

pub fn cycles(
    ctx: &SeedCtx,
    tot_v: &FreeComplex,
    tot_t: &FreeComplex,
    tot_b: &FreeComplex,
    n: i64,
    gamma: &DivElem,
) -> Result<CycleTriple, SeedError> {
    let delta = ctx.delta() as i64;
    if n < 1 || (delta + n - 1) % 2 != 0 {
        return Err(SeedError::Parse(format!(
            "cycles need N >= 1 with delta+N-1 even, got N={n}, delta={delta}"
        )));
    }
    let half = (delta + n - 1) / 2;
    assert_eq!(gamma.degree as i64, half, "gamma degree mismatch");
    let mut big = Vec::new();
    let mut top = Vec::new();
    let mut bot = Vec::new();
    for j in 0..=half {
        let i = delta + n - 1 - 2 * j;
        if i < 0 || i > ctx.f() as i64 {
            continue;
        }
        let sign_neg = j % 2 != 0;
        for m in monomials_y(ctx.g(), j as usize) {
            let contracted = crate::seed::contract_by(&m, gamma);
            if contracted.is_zero() {
                continue;
            }
            let w = ctx.d_mu_elem(&contracted);
            for (t, c) in &w.terms {
                let p = if sign_neg { c.neg() } else { c.clone() };
                let label = SummandLabel::b(i, j);
                if let Some(idx) = tot_v.index_of(n, &label, t, &m) {
                    big.push((idx, p.clone()));
                }
                if j >= ctx.epsilon() {
                    let tl = SummandLabel::t(i, j);
                    if let Some(idx) = tot_t.index_of(n, &tl, t, &m) {
                        top.push((idx, p.clone()));
                    }
                }
                if j <= n - 1 {
                    if let Some(idx) = tot_b.index_of(n, &label, t, &m) {
                        bot.push((idx, p));
                    }
                }
            }
        }
    }
    let collapse = |v: Vec<(usize, PolyElem)>| -> Vec<(usize, PolyElem)> {
        let mut acc: BTreeMap<usize, PolyElem> = BTreeMap::new();
        for (i, p) in v {
            match acc.entry(i) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(&p);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(p);
                }
            }
        }
        acc.into_iter().collect()
    };
    Ok(CycleTriple { n, big: collapse(big), top: collapse(top), bot: collapse(bot) })
}

// ---------------------------------------------------------------------------
// classification of the final map
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LastMapCase {
    /// δ=1, ε=(δ-1)/2: [c] into the corner
    C1,
    /// δ=1, ε=(δ+1)/2: [τ]
    C2,
    /// 2≤δ, (ε,g) = ((δ-1)/2, 1): [Ψ; ξ]
    C3,
    /// 2≤δ, (ε,g) = ((δ-1)/2, 2) or (δ/2, 1): [[Ψ,0],[ξ,τ]]
    C4,
    /// 2≤δ, (ε,g) = ((δ-1)/2, 3), (δ/2, 2) or ((δ+1)/2, 1): [0; τ]
    C5,
    /// 2≤δ, larger g: [τ]
    C6,
}

impl LastMapCase {
    pub fn tag(&self) -> &'static str {
        match self {
            LastMapCase::C1 => "4.6.1'",
            LastMapCase::C2 => "4.6.2'",
            LastMapCase::C3 => "4.6.3'",
            LastMapCase::C4 => "4.6.4'",
            LastMapCase::C5 => "4.6.5'",
            LastMapCase::C6 => "4.6.6'",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Tau,
    Psi,
    Xi,
    CMap,
}

#[derive(Clone, Debug)]
pub struct LastMapInfo {
    pub case: LastMapCase,
    pub n_max: i64,
    pub sources: Vec<SummandLabel>,
    pub targets: Vec<SummandLabel>,
    /// predicted nonzero blocks of d_{N_max}
    pub blocks: Vec<(SummandLabel, SummandLabel, BlockKind)>,
}

/// Predict the case tag and block structure of the final nonzero map.
pub fn classify_last_map(f: usize, g: usize, epsilon: i64) -> LastMapInfo {
    let delta = f - g;
    let fi = f as i64;
    let eps = epsilon;
    let cls = eps_class(delta, epsilon);
    let nmax = n_max(f, g, delta, epsilon);
    let d = delta as i64;
    let (case, sources, targets, blocks) = if delta == 1 && cls == EpsClass::Low {
        let s = SummandLabel::t(0, 0);
        let t = SummandLabel::corner(fi);
        (LastMapCase::C1, vec![s], vec![t], vec![(s, t, BlockKind::CMap)])
    } else if delta == 1 {
        let s = SummandLabel::b(fi, eps - 1);
        let t = SummandLabel::b(fi - 1, eps - 1);
        (LastMapCase::C2, vec![s], vec![t], vec![(s, t, BlockKind::Tau)])
    } else if cls == EpsClass::Low && g == 1 {
        let s = SummandLabel::t(0, d - 1);
        let t1 = SummandLabel::t(1, d - 2);
        let t2 = SummandLabel::b(fi, eps - 1);
        (
            LastMapCase::C3,
            vec![s],
            vec![t1, t2],
            vec![(s, t1, BlockKind::Psi), (s, t2, BlockKind::Xi)],
        )
    } else if (cls == EpsClass::Low && g == 2) || (cls == EpsClass::Mid && g == 1) {
        let s1 = SummandLabel::t(0, d - 1);
        let s2 = SummandLabel::b(fi, eps - 1);
        let t2 = SummandLabel::b(fi - 1, eps - 1);
        let mut targets = Vec::new();
        let mut blocks = vec![(s1, t2, BlockKind::Xi), (s2, t2, BlockKind::Tau)];
        if d >= 3 {
            let t1 = SummandLabel::t(1, d - 2);
            targets.push(t1);
            blocks.insert(0, (s1, t1, BlockKind::Psi));
        }
        targets.push(t2);
        (LastMapCase::C4, vec![s1, s2], targets, blocks)
    } else if (cls == EpsClass::Low && g == 3)
        || (cls == EpsClass::Mid && g == 2)
        || (cls == EpsClass::High && g == 1)
    {
        let s = SummandLabel::b(fi, eps - 1);
        let t1 = SummandLabel::t(0, d - 1);
        let t2 = SummandLabel::b(fi - 1, eps - 1);
        (LastMapCase::C5, vec![s], vec![t1, t2], vec![(s, t2, BlockKind::Tau)])
    } else {
        let s = SummandLabel::b(fi, eps - 1);
        let t = SummandLabel::b(fi - 1, eps - 1);
        (LastMapCase::C6, vec![s], vec![t], vec![(s, t, BlockKind::Tau)])
    };
    LastMapInfo { case, n_max: nmax, sources, targets, blocks }
}

// ---------------------------------------------------------------------------
// export / import
// ---------------------------------------------------------------------------

pub fn export_json(cx: &FreeComplex) -> Value {
    let mut modules = serde_json::Map::new();
    for (&n, m) in &cx.modules {
        let arr: Vec<Value> = m
            .summands
            .iter()
            .map(|s| {
                json!({
                    "kind": match s.label.kind {
                        SummandKind::T => "T",
                        SummandKind::B => "B",
                        SummandKind::Corner => "corner",
                    },
                    "i": s.label.i,
                    "j": s.label.j,
                    "rank": s.rank,
                    "twist": [s.twist.0, s.twist.1],
                })
            })
            .collect();
        modules.insert(n.to_string(), Value::Array(arr));
    }
    let mut diffs = serde_json::Map::new();
    for (&n, mat) in &cx.diffs {
        let arr: Vec<Value> = mat
            .entries
            .iter()
            .map(|(&(r, c), p)| json!([r, c, p.display()]))
            .collect();
        diffs.insert(n.to_string(), Value::Array(arr));
    }
    json!({
        "kind": match cx.kind {
            ComplexKind::TotV => "TotV",
            ComplexKind::TotU => "TotU",
            ComplexKind::TotT => "TotT",
            ComplexKind::TotB => "TotB",
            ComplexKind::M => "M",
            ComplexKind::L => "L",
        },
        "f": cx.f,
        "g": cx.g,
        "epsilon": cx.epsilon,
        "field": match cx.field {
            FieldKind::Fp(p) => json!({"fp": p}),
            FieldKind::Rational => json!("rational"),
        },
        "modules": Value::Object(modules),
        "differentials": Value::Object(diffs),
    })
}

/// Rebuild a complex from its export; differentials are re-parsed, module
/// layout is recomputed from (f, g, ε) and checked against the document.
pub fn import_json(v: &Value) -> Result<FreeComplex, String> {
    let f = v["f"].as_u64().ok_or("missing f")? as usize;
    let g = v["g"].as_u64().ok_or("missing g")? as usize;
    let epsilon = v["epsilon"].as_i64().ok_or("missing epsilon")?;
    let field = if let Some(p) = v["field"]["fp"].as_u64() {
        FieldKind::fp(p).map_err(|e| e.to_string())?
    } else {
        FieldKind::Rational
    };
    let kind = match v["kind"].as_str().ok_or("missing kind")? {
        "TotV" => ComplexKind::TotV,
        "TotU" => ComplexKind::TotU,
        "TotT" => ComplexKind::TotT,
        "TotB" => ComplexKind::TotB,
        "M" => ComplexKind::M,
        "L" => ComplexKind::L,
        other => return Err(format!("unknown complex kind {other:?}")),
    };
    let vars = VarSet::t_only(f);
    let delta = (f - g) as i64;
    let mods = v["modules"].as_object().ok_or("missing modules")?;
    let mut modules = BTreeMap::new();
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (k, arr) in mods {
        let n: i64 = k.parse().map_err(|_| "bad module key")?;
        lo = lo.min(n);
        hi = hi.max(n);
        let mut m = ModuleAtN::default();
        for s in arr.as_array().ok_or("modules must be arrays")? {
            let kind_s = s["kind"].as_str().ok_or("summand kind")?;
            let i = s["i"].as_i64().ok_or("summand i")?;
            let j = s["j"].as_i64().ok_or("summand j")?;
            let label = match kind_s {
                "T" => SummandLabel::t(i, j),
                "B" => SummandLabel::b(i, j),
                "corner" => SummandLabel::corner(i),
                other => return Err(format!("unknown summand kind {other:?}")),
            };
            push_summand(&mut m, f, g, label);
            let declared = s["rank"].as_u64().ok_or("summand rank")? as usize;
            let got = m.summands.last().map(|s| s.rank).unwrap_or(0);
            if declared != got {
                return Err(format!("rank mismatch for {} at N={n}: {declared} vs {got}", label.display()));
            }
        }
        modules.insert(n, m);
    }
    let mut cx = FreeComplex {
        kind,
        f,
        g,
        delta: delta as usize,
        epsilon,
        field,
        vars: vars.clone(),
        lo,
        hi,
        modules,
        diffs: BTreeMap::new(),
    };
    let diffs = v["differentials"].as_object().ok_or("missing differentials")?;
    for (k, arr) in diffs {
        let n: i64 = k.parse().map_err(|_| "bad diff key")?;
        let rows = cx.rank(n - 1);
        let cols = cx.rank(n);
        let mut mat = SparseMat::new(rows, cols);
        for e in arr.as_array().ok_or("differentials must be arrays")? {
            let t = e.as_array().ok_or("entry must be [r,c,poly]")?;
            let r = t[0].as_u64().ok_or("row")? as usize;
            let c = t[1].as_u64().ok_or("col")? as usize;
            let p = PolyElem::parse(t[2].as_str().ok_or("poly string")?, &vars, field)
                .map_err(|e| e.to_string())?;
            mat.add(r, c, p);
        }
        cx.diffs.insert(n, mat);
    }
    Ok(cx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DEFAULT_PRIME;
    use crate::seed::{epsilon_window, SeedData};
    use crate::verify::{check_bihomogeneous, check_complex};

    fn ctx(f: usize, g: usize, eps: i64, seed: u64) -> SeedCtx {
        SeedCtx::new(SeedData::generic(f, g, eps, DEFAULT_PRIME, seed).unwrap()).unwrap()
    }

    #[test]
    fn m_complex_squares_to_zero_small() {
        // covers all three ε classes, including the c-map component
        for (f, g, eps, s) in [
            (3usize, 1usize, 1i64, 1u64), // δ=2
            (4, 2, 1, 2),                 // δ=2
            (5, 2, 1, 3),                 // δ=3 low: c-map at N=1
            (5, 2, 2, 3),                 // δ=3 high
            (4, 1, 1, 4),                 // δ=3 low, g=1
            (4, 1, 2, 4),                 // δ=3 high, g=1
            (6, 3, 1, 5),                 // δ=3 low
            (6, 3, 2, 5),                 // δ=3 high
            (3, 2, 0, 6),                 // δ=1 low
            (3, 2, 1, 6),                 // δ=1 high
        ] {
            let c = ctx(f, g, eps, s);
            let m = build_complex(&c, ComplexKind::M, None, true);
            let r = check_complex(&m);
            assert!(r.pass, "d∘d != 0 for M({f},{g},{eps}): {:?}", r.failure);
            let h = check_bihomogeneous(&m);
            assert!(h.pass, "inhomogeneous entry in M({f},{g},{eps}): {:?}", h.failure);
        }
    }

    #[test]
    fn tot_complexes_square_to_zero() {
        for (f, g, eps, s) in [(5usize, 2usize, 1i64, 7u64), (5, 2, 2, 7), (6, 3, 2, 8), (4, 2, 1, 9)] {
            let c = ctx(f, g, eps, s);
            for kind in [ComplexKind::TotV, ComplexKind::TotU, ComplexKind::TotT, ComplexKind::TotB] {
                let cx = build_complex(&c, kind, None, true);
                let r = check_complex(&cx);
                assert!(r.pass, "d∘d != 0 for {kind:?}({f},{g},{eps}): {:?}", r.failure);
            }
        }
    }

    #[test]
    fn l_complex_squares_and_contains_m() {
        for (f, g, eps, s) in [(5usize, 2usize, 1i64, 11u64), (5, 2, 2, 11), (4, 2, 1, 12), (6, 3, 1, 13)] {
            let c = ctx(f, g, eps, s);
            let m = build_complex(&c, ComplexKind::M, None, true);
            let l = build_complex(&c, ComplexKind::L, None, true);
            let r = check_complex(&l);
            assert!(r.pass, "d∘d != 0 for L({f},{g},{eps}): {:?}", r.failure);
            // restriction of L's differential to M's summands equals M's
            for (&n, dm) in &m.diffs {
                let Some(dl) = l.diffs.get(&n) else { panic!("missing d_{n} in L") };
                let msrc = &m.modules[&n];
                let mtgt = &m.modules[&(n - 1)];
                for (&(r0, c0), p) in &dm.entries {
                    let (sl, se, sd) = m.basis_of(n, c0).unwrap();
                    let (tl, te, td) = m.basis_of(n - 1, r0).unwrap();
                    let lc = l.index_of(n, &sl, &se, &sd).expect("source in L");
                    let lr = l.index_of(n - 1, &tl, &te, &td).expect("target in L");
                    assert_eq!(
                        dl.entries.get(&(lr, lc)),
                        Some(p),
                        "entry mismatch at N={n} {}->{}",
                        sl.display(),
                        tl.display()
                    );
                }
                // and no L-entry within M's span is missing from M
                for (&(lr, lc), p) in &dl.entries {
                    let Some((sl, se, sd)) = l.basis_of(n, lc) else { continue };
                    let Some((tl, te, td)) = l.basis_of(n - 1, lr) else { continue };
                    if msrc.summand(&sl).is_some() && mtgt.summand(&tl).is_some() {
                        let mc = m.index_of(n, &sl, &se, &sd).unwrap();
                        let mr = m.index_of(n - 1, &tl, &te, &td).unwrap();
                        assert_eq!(dm.entries.get(&(mr, mc)), Some(p));
                    }
                }
            }
            // rank bookkeeping: rank L_N = rank M_N + rank (L/M)_N
            for (&n, lm) in &l.modules {
                let m_rank = m.rank(n);
                let quotient: usize = lm
                    .summands
                    .iter()
                    .filter(|s| m.modules.get(&n).map_or(true, |mm| mm.summand(&s.label).is_none()))
                    .map(|s| s.rank)
                    .sum();
                assert_eq!(lm.rank, m_rank + quotient, "rank split at N={n}");
            }
        }
    }

    #[test]
    fn table_for_3_9_3() {
        let c = ctx(9, 3, 3, 0);
        let m = build_complex(&c, ComplexKind::M, None, false);
        assert_eq!(n_max(9, 3, 6, 3), 8);
        let top = &m.modules[&8];
        assert_eq!(top.summands.len(), 1);
        assert_eq!(top.summands[0].label, SummandLabel::b(9, 2));
        assert_eq!(top.summands[0].rank, 6);
        assert_eq!(top.summands[0].twist, (-10, -5));
    }

    #[test]
    fn table_for_2_6_2_top() {
        let c = ctx(6, 2, 2, 0);
        let m = build_complex(&c, ComplexKind::M, None, false);
        let top = &m.modules[&5];
        assert_eq!(top.summands.len(), 1);
        assert_eq!(top.summands[0].label, SummandLabel::b(6, 1));
        assert_eq!(top.summands[0].rank, 2);
        assert_eq!(top.summands[0].twist, (-6, -3));
    }

    #[test]
    fn koszul_truncation_shape_for_delta_one() {
        // δ=1, ε=1: corner <- V_{1,0} <- ... <- V_{f,0}
        let c = ctx(4, 3, 1, 2);
        let m = build_complex(&c, ComplexKind::M, None, false);
        for n in 1..=4i64 {
            let md = &m.modules[&n];
            assert_eq!(md.summands.len(), 1, "N={n}");
            assert_eq!(md.summands[0].label, SummandLabel::b(n, 0));
        }
        assert_eq!(m.modules[&0].summands[0].label.kind, SummandKind::Corner);
        // δ=1, ε=0: corner <- V^T_{0,0}
        let c2 = ctx(4, 3, 0, 2);
        let m2 = build_complex(&c2, ComplexKind::M, None, false);
        assert_eq!(m2.modules[&1].summands.len(), 1);
        assert_eq!(m2.modules[&1].summands[0].label, SummandLabel::t(0, 0));
        assert_eq!(n_max(4, 3, 1, 0), 1);
    }

    #[test]
    fn tot_b_membership_examples() {
        let c = ctx(9, 3, 3, 1);
        let tb = build_complex(&c, ComplexKind::TotB, None, false);
        assert_eq!(tb.rank(0), 1);
        // N=1: only V_{6,0} survives the membership predicate
        let m1 = &tb.modules[&1];
        let labels: Vec<_> = m1.summands.iter().map(|s| s.label).collect();
        assert_eq!(labels, vec![SummandLabel::b(6, 0)]);
        // Tot(T) vanishes in non-positive degrees for ε = δ/2
        let tt = build_complex(&c, ComplexKind::TotT, None, false);
        assert_eq!(tt.rank(0), 0);
        assert_eq!(tt.rank(-1), 0);
    }

    #[test]
    fn xi_is_chain_map_and_identity_blocks() {
        for (f, g, eps, s) in [
            (5usize, 2usize, 1i64, 21u64),
            (5, 2, 2, 21),
            (6, 3, 1, 22),
            (6, 3, 2, 22),
            (4, 2, 1, 23),
            (6, 2, 2, 24),
        ] {
            let c = ctx(f, g, eps, s);
            let tt = build_complex(&c, ComplexKind::TotT, None, true);
            let tb = build_complex(&c, ComplexKind::TotB, None, true);
            let xi = build_xi(&c, &tt, &tb).unwrap();
            let r = crate::verify::check_chain_map(&tt, &tb, &xi);
            assert!(r.pass, "chain map fails for ({f},{g},{eps}): {:?}", r.failure);
            // same-(I,J) blocks are (-1)^(N+I+ε)·Id; blocks with J < j vanish
            for (&n, mat) in &xi.maps {
                if n < 1 {
                    continue;
                }
                let src = &tt.modules[&n];
                let tgt = &tb.modules[&n];
                for s_sum in &src.summands {
                    for t_sum in &tgt.summands {
                        let block: Vec<_> = mat
                            .entries
                            .iter()
                            .filter(|(&(r0, c0), _)| {
                                c0 >= s_sum.offset
                                    && c0 < s_sum.offset + s_sum.rank
                                    && r0 >= t_sum.offset
                                    && r0 < t_sum.offset + t_sum.rank
                            })
                            .collect();
                        if t_sum.label.j > s_sum.label.j {
                            assert!(block.is_empty(), "nonzero block above diagonal");
                        }
                        if t_sum.label == SummandLabel::b(s_sum.label.i, s_sum.label.j)
                            && s_sum.label.kind == SummandKind::T
                        {
                            let sign = (n + s_sum.label.i + eps) % 2 == 0;
                            assert_eq!(block.len(), s_sum.rank, "diagonal block incomplete");
                            for (&(r0, c0), p) in block {
                                assert_eq!(r0 - t_sum.offset, c0 - s_sum.offset);
                                let want = if sign {
                                    PolyElem::one(&c.vars, c.field)
                                } else {
                                    PolyElem::one(&c.vars, c.field).neg()
                                };
                                assert_eq!(p, &want);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cycles_are_cycles_and_transfer() {
        for g in 1..=3usize {
            for f in (g + 1)..=6usize {
                let delta = f - g;
                let (lo, hi) = epsilon_window(delta);
                for eps in lo..=hi {
                    let c = ctx(f, g, eps, (f * 10 + g) as u64);
                    let tv = build_complex(&c, ComplexKind::TotV, None, true);
                    let tt = build_complex(&c, ComplexKind::TotT, None, true);
                    let tb = build_complex(&c, ComplexKind::TotB, None, true);
                    let xi = build_xi(&c, &tt, &tb).unwrap();
                    let hi_n = tb.hi;
                    for n in 1..=hi_n {
                        if (delta as i64 + n - 1) % 2 != 0 {
                            continue;
                        }
                        let half = ((delta as i64 + n - 1) / 2) as usize;
                        for (_, gamma) in crate::seed::div_basis(&c, half) {
                            let tr = cycles(&c, &tv, &tt, &tb, n, &gamma).unwrap();
                            // all three are cycles
                            for (cxr, v, name) in [
                                (&tv, &tr.big, "Z"),
                                (&tt, &tr.top, "z"),
                                (&tb, &tr.bot, "zeta"),
                            ] {
                                if let Some(d) = cxr.diffs.get(&n) {
                                    let img = d.apply(v);
                                    assert!(
                                        img.is_empty(),
                                        "{name} not a cycle at ({f},{g},{eps}) N={n}"
                                    );
                                }
                            }
                            // transfer: ξ(z) = (-1)^(ε+N) ζ
                            if let Some(xm) = xi.maps.get(&n) {
                                let mut img = xm.apply(&tr.top);
                                let flip = (eps + n) % 2 != 0;
                                if flip {
                                    for (_, p) in img.iter_mut() {
                                        *p = p.neg();
                                    }
                                }
                                assert_eq!(
                                    img, tr.bot,
                                    "transfer fails at ({f},{g},{eps}) N={n}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn last_map_classification_examples() {
        // δ=1, ε=1 -> 4.6.2'
        let info = classify_last_map(4, 3, 1);
        assert_eq!(info.case, LastMapCase::C2);
        // (3,9,3): ε=δ/2 and g=3 -> 4.6.6'
        let info = classify_last_map(9, 3, 3);
        assert_eq!(info.case, LastMapCase::C6);
    }

    #[test]
    fn last_map_matches_build_for_small_sweep() {
        for g in 1..=6usize {
            for f in (g + 1)..=7usize {
                let delta = f - g;
                let (lo, hi) = epsilon_window(delta);
                for eps in lo..=hi {
                    let c = ctx(f, g, eps, (f * 100 + g * 10) as u64 + eps as u64);
                    let m = build_complex(&c, ComplexKind::M, None, true);
                    let info = classify_last_map(f, g, eps);
                    assert_eq!(info.n_max, *m.modules.keys().next_back().unwrap(), "({f},{g},{eps})");
                    let src = &m.modules[&info.n_max];
                    let tgt = &m.modules[&(info.n_max - 1)];
                    let src_labels: Vec<_> = src.summands.iter().map(|s| s.label).collect();
                    let tgt_labels: Vec<_> = tgt.summands.iter().map(|s| s.label).collect();
                    let mut want_src = info.sources.clone();
                    want_src.sort();
                    let mut got_src = src_labels.clone();
                    got_src.sort();
                    assert_eq!(want_src, got_src, "sources at ({f},{g},{eps})");
                    let mut want_tgt = info.targets.clone();
                    want_tgt.sort();
                    let mut got_tgt = tgt_labels.clone();
                    got_tgt.sort();
                    assert_eq!(want_tgt, got_tgt, "targets at ({f},{g},{eps})");
                    // block support and bidegree kinds
                    let d = &m.diffs[&info.n_max];
                    for s_sum in &src.summands {
                        for t_sum in &tgt.summands {
                            let entries: Vec<&PolyElem> = d
                                .entries
                                .iter()
                                .filter(|(&(r0, c0), _)| {
                                    c0 >= s_sum.offset
                                        && c0 < s_sum.offset + s_sum.rank
                                        && r0 >= t_sum.offset
                                        && r0 < t_sum.offset + t_sum.rank
                                })
                                .map(|(_, p)| p)
                                .collect();
                            let predicted =
                                info.blocks.iter().find(|(a, b, _)| a == &s_sum.label && b == &t_sum.label);
                            match predicted {
                                Some((_, _, kind)) => {
                                    assert!(
                                        !entries.is_empty(),
                                        "predicted block {:?} empty at ({f},{g},{eps})",
                                        kind
                                    );
                                    let want_t_deg = match kind {
                                        BlockKind::Tau => 1,
                                        BlockKind::Psi => 1,
                                        BlockKind::Xi => 0,
                                        BlockKind::CMap => g as i64 - 1,
                                    };
                                    for p in entries {
                                        assert_eq!(
                                            p.t_degree(),
                                            Some(want_t_deg),
                                            "block {:?} degree at ({f},{g},{eps})",
                                            kind
                                        );
                                    }
                                }
                                None => {
                                    assert!(
                                        entries.is_empty(),
                                        "unpredicted nonzero block {} -> {} at ({f},{g},{eps})",
                                        s_sum.label.display(),
                                        t_sum.label.display()
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn export_import_roundtrip() {
        let c = ctx(5, 2, 1, 33);
        let m = build_complex(&c, ComplexKind::M, None, true);
        let doc = export_json(&m);
        let back = import_json(&doc).unwrap();
        assert_eq!(back.rank(1), m.rank(1));
        for (&n, d) in &m.diffs {
            let bd = &back.diffs[&n];
            assert_eq!(bd.entries.len(), d.entries.len());
            for (k, p) in &d.entries {
                assert_eq!(bd.entries.get(k).map(|q| q.display()), Some(p.display()));
            }
        }
    }
}
