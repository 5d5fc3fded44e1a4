//! Input model and first-layer constructions: the seed (f, g, ε, alternating
//! matrices), the map Ψ with [T1..Tf]·Ψ = 0, its maximal minors, the map c
//! and the ideal it generates, the matrix-of-linear-forms bridge (B, 𝔅′,
//! C(φ)), and seed-file serialization.

use crate::multilinear::{
    act_y, combinations, contract_tau, divided_power_2form, integrate_x, monomials_y, pfaffian,
    wedge, AltMatrix, DivElem, DivMono, ExtElem, PfaffianCache, Tuple,
};
use crate::ring::{FieldElem, FieldKind, PolyElem, RingError, VarSet, DEFAULT_PRIME};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeedError {
    #[error("need 1 <= g < f, got g={g}, f={f}")]
    BadRanks { f: usize, g: usize },
    #[error("epsilon {eps} outside the admissible window [{lo}, {hi}]")]
    EpsilonWindow { eps: i64, lo: i64, hi: i64 },
    #[error("prime {0} too small: need p odd and p > f+g")]
    PrimeTooSmall(u64),
    #[error("distinguished index {0} out of range")]
    BadDistinguished(usize),
    #[error("alternating matrix {idx}: {msg}")]
    BadMatrix { idx: usize, msg: String },
    #[error("expected {want} alternating matrices, got {got}")]
    MatrixCount { want: usize, got: usize },
    #[error("this operation needs delta odd (delta = {0})")]
    DeltaEven(usize),
    #[error("this operation needs delta = 1 (delta = {0})")]
    DeltaNotOne(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("seed parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Admissible ε window ⌈(δ-1)/2⌉ ..= ⌈δ/2⌉ for a given δ = f - g ≥ 1.
pub fn epsilon_window(delta: usize) -> (i64, i64) {
    (ceil_div2(delta as i64 - 1), ceil_div2(delta as i64))
}

fn ceil_div2(n: i64) -> i64 {
    debug_assert!(n >= 0);
    (n + 1) / 2
}

/// The input data from which every complex is built: ranks f > g, the
/// parameter ε, and g alternating f×f matrices (the coordinates of μ).
/// τ is fixed to τ(e_i) = T_i.
#[derive(Clone, Debug)]
pub struct SeedData {
    pub f: usize,
    pub g: usize,
    pub epsilon: i64,
    pub field: FieldKind,
    pub alt: Vec<AltMatrix>,
    pub distinguished: usize,
    pub rng_seed: u64,
    pub extra_vars: Vec<String>,
}

impl SeedData {
    pub fn delta(&self) -> usize {
        self.f - self.g
    }

    pub fn validate(&self) -> Result<(), SeedError> {
        if self.g < 1 || self.g >= self.f {
            return Err(SeedError::BadRanks { f: self.f, g: self.g });
        }
        let delta = self.delta() as i64;
        let lo = ceil_div2(delta - 1);
        let hi = ceil_div2(delta);
        if self.epsilon < lo || self.epsilon > hi {
            return Err(SeedError::EpsilonWindow { eps: self.epsilon, lo, hi });
        }
        if let FieldKind::Fp(p) = self.field {
            if p <= (self.f + self.g) as u64 {
                return Err(SeedError::PrimeTooSmall(p));
            }
        }
        if self.distinguished < 1 || self.distinguished > self.g {
            return Err(SeedError::BadDistinguished(self.distinguished));
        }
        if self.alt.len() != self.g {
            return Err(SeedError::MatrixCount { want: self.g, got: self.alt.len() });
        }
        for (k, m) in self.alt.iter().enumerate() {
            if m.n != self.f {
                return Err(SeedError::BadMatrix {
                    idx: k,
                    msg: format!("size {} != f = {}", m.n, self.f),
                });
            }
        }
        Ok(())
    }

    /// Deterministic generic seed: entries drawn uniformly from 𝔽_p by a
    /// ChaCha stream seeded with `rng_seed`.
    pub fn generic(f: usize, g: usize, epsilon: i64, p: u64, rng_seed: u64) -> Result<SeedData, SeedError> {
        let field = FieldKind::fp(p)?;
        let vars = VarSet::t_only(f);
        let mut rng = ChaCha12Rng::seed_from_u64(rng_seed);
        let mut alt = Vec::with_capacity(g);
        for _ in 0..g {
            let upper: Vec<PolyElem> = (0..f * (f - 1) / 2)
                .map(|_| PolyElem::from_i128(&vars, field, rng.gen_range(0..p) as i128))
                .collect();
            alt.push(AltMatrix::from_upper(f, &vars, field, &upper));
        }
        let seed = SeedData {
            f,
            g,
            epsilon,
            field,
            alt,
            distinguished: 1,
            rng_seed,
            extra_vars: Vec::new(),
        };
        seed.validate()?;
        Ok(seed)
    }

    /// Generic seed at the default ε = ⌈δ/2⌉.
    pub fn generic_default_eps(f: usize, g: usize, p: u64, rng_seed: u64) -> Result<SeedData, SeedError> {
        let eps = ceil_div2((f - g) as i64);
        SeedData::generic(f, g, eps, p, rng_seed)
    }

    pub fn varset(&self) -> Arc<VarSet> {
        VarSet::with_extra(self.f, &self.extra_vars)
    }
}

// ---------------------------------------------------------------------------
// seed file format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SeedDoc {
    f: usize,
    g: usize,
    epsilon: i64,
    field: String,
    #[serde(default)]
    prime: Option<u64>,
    #[serde(default = "default_rng_seed")]
    rng_seed: u64,
    #[serde(default = "default_distinguished")]
    distinguished_index: usize,
    #[serde(default)]
    extra_vars: Vec<String>,
    alt: Vec<AltDoc>,
}

#[derive(Serialize, Deserialize)]
struct AltDoc {
    upper: Vec<String>,
}

fn default_rng_seed() -> u64 {
    0
}
fn default_distinguished() -> usize {
    1
}

/// Render a seed as a TOML document.  The format is stable: keys in a fixed
/// order, matrices given by their strictly-upper entries row-major.
pub fn serialize_seed(seed: &SeedData) -> String {
    let doc = SeedDoc {
        f: seed.f,
        g: seed.g,
        epsilon: seed.epsilon,
        field: match seed.field {
            FieldKind::Fp(_) => "fp".into(),
            FieldKind::Rational => "rational".into(),
        },
        prime: match seed.field {
            FieldKind::Fp(p) => Some(p),
            FieldKind::Rational => None,
        },
        rng_seed: seed.rng_seed,
        distinguished_index: seed.distinguished,
        extra_vars: seed.extra_vars.clone(),
        alt: seed
            .alt
            .iter()
            .map(|m| AltDoc {
                upper: {
                    let mut v = Vec::new();
                    for i in 0..m.n {
                        for j in (i + 1)..m.n {
                            v.push(m.at(i, j).display());
                        }
                    }
                    v
                },
            })
            .collect(),
    };
    toml::to_string(&doc).expect("seed serialization")
}

pub fn parse_seed(text: &str) -> Result<SeedData, SeedError> {
    let doc: SeedDoc = toml::from_str(text).map_err(|e| SeedError::Parse(e.to_string()))?;
    let field = match doc.field.as_str() {
        "fp" => {
            let p = doc.prime.unwrap_or(DEFAULT_PRIME);
            FieldKind::fp(p)?
        }
        "rational" => FieldKind::Rational,
        other => return Err(SeedError::Parse(format!("unknown field kind {other:?}"))),
    };
    let vars = VarSet::with_extra(doc.f, &doc.extra_vars);
    let mut alt = Vec::new();
    for (k, m) in doc.alt.iter().enumerate() {
        let want = doc.f * (doc.f - 1) / 2;
        if m.upper.len() != want {
            return Err(SeedError::BadMatrix {
                idx: k,
                msg: format!("expected {} upper entries, got {}", want, m.upper.len()),
            });
        }
        let mut upper = Vec::with_capacity(want);
        for (pos, s) in m.upper.iter().enumerate() {
            let p = PolyElem::parse(s, &vars, field).map_err(|e| SeedError::BadMatrix {
                idx: k,
                msg: format!("entry {pos}: {e}"),
            })?;
            upper.push(p);
        }
        alt.push(AltMatrix::from_upper(doc.f, &vars, field, &upper));
    }
    let seed = SeedData {
        f: doc.f,
        g: doc.g,
        epsilon: doc.epsilon,
        field,
        alt,
        distinguished: doc.distinguished_index,
        rng_seed: doc.rng_seed,
        extra_vars: doc.extra_vars,
    };
    seed.validate()?;
    Ok(seed)
}

// ---------------------------------------------------------------------------
// derived context with caches
// ---------------------------------------------------------------------------

/// Seed plus everything derived from it that the complex builders reuse:
/// the two-forms μ(X_k), the columns Ψ(X_k), cached divided powers, and the
/// cached values of D(μ) on divided-power monomials.
pub struct SeedCtx {
    pub seed: SeedData,
    pub vars: Arc<VarSet>,
    pub field: FieldKind,
    pub mu: Vec<ExtElem>,
    pub psi_cols: Vec<ExtElem>,
    psi_full: RefCell<Option<ExtElem>>,
    dp_cache: RefCell<HashMap<(usize, usize), ExtElem>>,
    dmu_cache: RefCell<HashMap<DivMono, ExtElem>>,
}

impl SeedCtx {
    pub fn new(seed: SeedData) -> Result<Self, SeedError> {
        seed.validate()?;
        let vars = seed.varset();
        let field = seed.field;
        let mu: Vec<ExtElem> = seed.alt.iter().map(|m| m.to_two_form()).collect();
        let psi_cols: Vec<ExtElem> =
            mu.iter().map(|v| contract_tau(v, &vars, field)).collect();
        Ok(SeedCtx {
            seed,
            vars,
            field,
            mu,
            psi_cols,
            psi_full: RefCell::new(None),
            dp_cache: RefCell::new(HashMap::new()),
            dmu_cache: RefCell::new(HashMap::new()),
        })
    }

    /// (Λ^g Ψ)(ω_{G*}) = Ψ(X_1) ∧ … ∧ Ψ(X_g), computed on first use.
    pub fn psi_full_wedge(&self) -> ExtElem {
        if let Some(w) = self.psi_full.borrow().as_ref() {
            return w.clone();
        }
        let mut full = ExtElem::scalar(self.f(), PolyElem::one(&self.vars, self.field));
        for col in &self.psi_cols {
            full = wedge(&full, col);
        }
        *self.psi_full.borrow_mut() = Some(full.clone());
        full
    }

    pub fn f(&self) -> usize {
        self.seed.f
    }
    pub fn g(&self) -> usize {
        self.seed.g
    }
    pub fn delta(&self) -> usize {
        self.seed.delta()
    }
    pub fn epsilon(&self) -> i64 {
        self.seed.epsilon
    }

    /// μ(X_k)^(a), cached.  k is 0-based.
    pub fn divided_power(&self, k: usize, a: usize) -> ExtElem {
        if let Some(v) = self.dp_cache.borrow().get(&(k, a)) {
            return v.clone();
        }
        let v = divided_power_2form(&self.mu[k], a, &self.vars, self.field);
        self.dp_cache.borrow_mut().insert((k, a), v.clone());
        v
    }

    /// D(μ)(m*) = μ(X_1)^(a1) ∧ … ∧ μ(X_g)^(ag) for m = (a1..ag), cached.
    pub fn d_mu(&self, m: &DivMono) -> ExtElem {
        if let Some(v) = self.dmu_cache.borrow().get(m) {
            return v.clone();
        }
        let target_deg = 2 * m.iter().map(|&a| a as usize).sum::<usize>();
        let mut acc = ExtElem::scalar(self.f(), PolyElem::one(&self.vars, self.field));
        for (k, &a) in m.iter().enumerate() {
            if a > 0 {
                acc = wedge(&acc, &self.divided_power(k, a as usize));
                if acc.is_zero() {
                    break;
                }
            }
        }
        if acc.is_zero() {
            acc = ExtElem::zero(self.f(), target_deg);
        }
        self.dmu_cache.borrow_mut().insert(m.clone(), acc.clone());
        acc
    }

    /// D(μ) applied to a DivElem.
    pub fn d_mu_elem(&self, gamma: &DivElem) -> ExtElem {
        let mut acc = ExtElem::zero(self.f(), 2 * gamma.degree);
        for (m, c) in &gamma.terms {
            acc = acc.add(&self.d_mu(m).scale_poly(c));
        }
        acc
    }
}

/// A homomorphism of free modules given by a dense polynomial matrix.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<PolyElem>,
}

impl LinearMap {
    pub fn at(&self, i: usize, j: usize) -> &PolyElem {
        &self.entries[i * self.cols + j]
    }
}

/// Ideal generators over an ambient variable set.
#[derive(Clone, Debug)]
pub struct IdealGens {
    pub vars: Arc<VarSet>,
    pub field: FieldKind,
    pub gens: Vec<PolyElem>,
}

impl IdealGens {
    pub fn new(vars: &Arc<VarSet>, field: FieldKind, gens: Vec<PolyElem>) -> Self {
        IdealGens {
            vars: vars.clone(),
            field,
            gens: gens.into_iter().filter(|p| !p.is_zero()).collect(),
        }
    }
}

/// The f×g matrix whose k-th column is τ(μ(X_k)).  Every entry is T-linear
/// and [T1..Tf]·Ψ = 0.
pub fn build_psi(ctx: &SeedCtx) -> LinearMap {
    let f = ctx.f();
    let g = ctx.g();
    let zero = PolyElem::zero(&ctx.vars, ctx.field);
    let mut entries = vec![zero; f * g];
    for (k, col) in ctx.psi_cols.iter().enumerate() {
        for (t, c) in &col.terms {
            let i = t[0] as usize - 1;
            entries[i * g + k] = c.clone();
        }
    }
    LinearMap { rows: f, cols: g, entries }
}

/// Determinant of a dense polynomial matrix (fraction-free Gaussian
/// elimination, falling back to cofactor expansion for very small sizes).
pub fn det_poly_dense(m: &[Vec<PolyElem>]) -> PolyElem {
    let n = m.len();
    let proto = &m[0][0];
    if n == 0 {
        return PolyElem::one(&proto.vars, proto.field);
    }
    if n <= 3 {
        return det_cofactor(m);
    }
    // Bareiss
    let mut a: Vec<Vec<PolyElem>> = m.to_vec();
    let mut sign_pos = true;
    let mut prev = PolyElem::one(&proto.vars, proto.field);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign_pos = !sign_pos;
                }
                None => return PolyElem::zero(&proto.vars, proto.field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact over an integral domain");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign_pos {
        det
    } else {
        det.neg()
    }
}

fn det_cofactor(m: &[Vec<PolyElem>]) -> PolyElem {
    let n = m.len();
    let proto = &m[0][0];
    match n {
        0 => PolyElem::one(&proto.vars, proto.field),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let mut acc = PolyElem::zero(&proto.vars, proto.field);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<PolyElem>> = (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                    .collect();
                let t = m[0][j].mul(&det_cofactor(&sub));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

/// All binom(f, g) maximal minors of Ψ, row subsets in lexicographic order.
/// Zero minors are dropped.
pub fn maximal_minors(psi: &LinearMap, vars: &Arc<VarSet>, field: FieldKind) -> IdealGens {
    let mut gens = Vec::new();
    for rows in combinations(psi.rows, psi.cols) {
        let sub: Vec<Vec<PolyElem>> = rows
            .iter()
            .map(|&r| (0..psi.cols).map(|c| psi.at(r as usize - 1, c).clone()).collect())
            .collect();
        gens.push(det_poly_dense(&sub));
    }
    IdealGens::new(vars, field, gens)
}

/// Sign normalization of the c map with respect to the fixed basis
/// (e_1∧…∧e_f) ⊗ (Y_1∧…∧Y_g) of its rank-one target.  The sign is forced by
/// the degree-1 square of the complex: moving Ψ(X_dist) into its slot of
/// (Λ^g Ψ)(ω_{G*}) costs (-1)^(dist-1), so the same factor must sit in c.
/// Equivalently, ω_{G+} ∧ Y_dist is identified with ±ω_G on the nose rather
/// than through the graded permutation sign.
fn omega_sign(_g: usize, dist: usize) -> i64 {
    if (dist - 1) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The map c on D_{(δ-1)/2}(G*), returned as the coefficient with respect to
/// the basis (e_1∧…∧e_f) ⊗ (Y_1∧…∧Y_g) of Λ^f F ⊗ Λ^g G.  Needs δ odd.
pub fn c_map(ctx: &SeedCtx, gamma: &DivElem) -> Result<PolyElem, SeedError> {
    let delta = ctx.delta();
    if delta % 2 == 0 {
        return Err(SeedError::DeltaEven(delta));
    }
    let dist = ctx.seed.distinguished;
    let integrated = integrate_x(gamma, dist);
    let w = ctx.d_mu_elem(&integrated);
    let mut rest = ExtElem::scalar(ctx.f(), PolyElem::one(&ctx.vars, ctx.field));
    for k in 0..ctx.g() {
        if k + 1 != dist {
            rest = wedge(&rest, &ctx.psi_cols[k]);
        }
    }
    let top = wedge(&w, &rest).top_coefficient(&ctx.vars, ctx.field);
    Ok(if omega_sign(ctx.g(), dist) < 0 { top.neg() } else { top })
}

/// Generators of the ideal 𝔠: the values of c on the dual basis of
/// D_{(δ-1)/2}(G*) when δ is odd, the empty set when δ is even.
pub fn unmixed_gens(ctx: &SeedCtx) -> Result<IdealGens, SeedError> {
    let delta = ctx.delta();
    if delta % 2 == 0 {
        return Ok(IdealGens::new(&ctx.vars, ctx.field, Vec::new()));
    }
    let half = (delta - 1) / 2;
    let mut gens = Vec::new();
    for m in monomials_y(ctx.g(), half) {
        let gamma = DivElem::basis(ctx.g(), &m, &ctx.vars, ctx.field);
        gens.push(c_map(ctx, &gamma)?);
    }
    Ok(IdealGens::new(&ctx.vars, ctx.field, gens))
}

// ---------------------------------------------------------------------------
// the matrix-of-linear-forms bridge
// ---------------------------------------------------------------------------

/// Data for the coordinate version: d constant alternating n×n matrices
/// defining φ = Σ x_ℓ φ_ℓ.
pub struct BridgeData {
    pub d: usize,
    pub n: usize,
    /// constant alternating matrices over the T-only ring k[T1..Tn]
    pub phis: Vec<AltMatrix>,
    pub vars_t: Arc<VarSet>,
    pub field: FieldKind,
}

impl BridgeData {
    pub fn generic(d: usize, n: usize, p: u64, rng_seed: u64) -> Result<Self, SeedError> {
        let field = FieldKind::fp(p)?;
        let vars_t = VarSet::t_only(n);
        let mut rng = ChaCha12Rng::seed_from_u64(rng_seed);
        let phis = (0..d)
            .map(|_| {
                let upper: Vec<PolyElem> = (0..n * (n - 1) / 2)
                    .map(|_| PolyElem::from_i128(&vars_t, field, rng.gen_range(0..p) as i128))
                    .collect();
                AltMatrix::from_upper(n, &vars_t, field, &upper)
            })
            .collect();
        Ok(BridgeData { d, n, phis, vars_t, field })
    }

    /// Variable set of the combined ring k[T1..Tn, x1..xd].
    pub fn vars_s(&self) -> Arc<VarSet> {
        let extra: Vec<String> = (1..=self.d).map(|i| format!("x{i}")).collect();
        VarSet::with_extra(self.n, &extra)
    }
}

/// The d×n matrix B with rows [T1..Tn]·φ_ℓ, over k[T1..Tn].
pub fn section8_b(data: &BridgeData) -> LinearMap {
    let (d, n) = (data.d, data.n);
    let mut entries = Vec::with_capacity(d * n);
    for a in 0..d {
        for b in 0..n {
            // B_{a,b} = Σ_i T_i (φ_a)_{i,b}
            let mut acc = PolyElem::zero(&data.vars_t, data.field);
            for i in 0..n {
                let e = data.phis[a].at(i, b);
                if !e.is_zero() {
                    acc = acc.add(&e.mul(&PolyElem::var(&data.vars_t, data.field, i)));
                }
            }
            entries.push(acc);
        }
    }
    LinearMap { rows: d, cols: n, entries }
}

/// Pf(𝔅′) for 𝔅 = [[φ, -B^t], [B, 0]] with the last row and column removed,
/// as a polynomial in k[T1..Tn, x1..xd].
pub fn bridge_pfaffian(data: &BridgeData) -> PolyElem {
    let (d, n) = (data.d, data.n);
    let vars_s = data.vars_s();
    let field = data.field;
    let reindex = |p: &PolyElem| -> PolyElem {
        // T-only polynomials reinterpret verbatim: T's occupy the same
        // leading indices in the combined ring.
        let pairs = p.terms().iter().map(|(m, c)| {
            let mut e = crate::ring::Monomial::one(vars_s.len());
            for (i, &x) in m.0.iter().enumerate() {
                e.0[i] = x;
            }
            (e, c.clone())
        });
        PolyElem::from_terms(&vars_s, field, pairs)
    };
    let size = n + d;
    let zero = PolyElem::zero(&vars_s, field);
    let mut entries = vec![zero; size * size];
    // φ block: Σ_ℓ x_ℓ φ_ℓ
    for i in 0..n {
        for j in 0..n {
            let mut acc = PolyElem::zero(&vars_s, field);
            for l in 0..d {
                let e = data.phis[l].at(i, j);
                if !e.is_zero() {
                    acc = acc.add(&reindex(e).mul(&PolyElem::var(&vars_s, field, n + l)));
                }
            }
            entries[i * size + j] = acc;
        }
    }
    let b = section8_b(data);
    for a in 0..d {
        for j in 0..n {
            let v = reindex(b.at(a, j));
            entries[(n + a) * size + j] = v.clone();
            entries[j * size + (n + a)] = v.neg();
        }
    }
    let bmat = AltMatrix { n: size, entries };
    let keep: Vec<usize> = (0..size - 1).collect();
    PfaffianCache::new(&bmat).pf_subset(&keep)
}

/// The content ideal C(φ): the T-coefficients of Pf(𝔅′) viewed as a
/// polynomial in the x's.  Empty when n+d is even.
pub fn section8_c(data: &BridgeData) -> IdealGens {
    let pf = bridge_pfaffian(data);
    let n = data.n;
    let mut by_x: HashMap<Vec<u16>, Vec<(crate::ring::Monomial, FieldElem)>> = HashMap::new();
    for (m, c) in pf.terms() {
        let xpart: Vec<u16> = m.0[n..].to_vec();
        let mut tmono = crate::ring::Monomial::one(n);
        tmono.0[..n].copy_from_slice(&m.0[..n]);
        by_x.entry(xpart).or_default().push((tmono, c.clone()));
    }
    let mut keys: Vec<Vec<u16>> = by_x.keys().cloned().collect();
    keys.sort();
    let gens: Vec<PolyElem> = keys
        .into_iter()
        .map(|k| PolyElem::from_terms(&data.vars_t, data.field, by_x.remove(&k).unwrap()))
        .collect();
    IdealGens::new(&data.vars_t, data.field, gens)
}

/// Check [T1..Tn]·φ = [x1..xd]·B in the combined ring.
pub fn bridge_identity_holds(data: &BridgeData) -> bool {
    let vars_s = data.vars_s();
    let field = data.field;
    let n = data.n;
    let d = data.d;
    let reindex = |p: &PolyElem| -> PolyElem {
        let pairs = p.terms().iter().map(|(m, c)| {
            let mut e = crate::ring::Monomial::one(vars_s.len());
            for (i, &x) in m.0.iter().enumerate() {
                e.0[i] = x;
            }
            (e, c.clone())
        });
        PolyElem::from_terms(&vars_s, field, pairs)
    };
    let b = section8_b(data);
    for col in 0..n {
        // lhs: Σ_i T_i φ_{i,col} with φ = Σ_ℓ x_ℓ φ_ℓ
        let mut lhs = PolyElem::zero(&vars_s, field);
        for i in 0..n {
            for l in 0..d {
                let e = data.phis[l].at(i, col);
                if !e.is_zero() {
                    lhs = lhs.add(
                        &reindex(e)
                            .mul(&PolyElem::var(&vars_s, field, i))
                            .mul(&PolyElem::var(&vars_s, field, n + l)),
                    );
                }
            }
        }
        let mut rhs = PolyElem::zero(&vars_s, field);
        for l in 0..d {
            rhs = rhs.add(&reindex(b.at(l, col)).mul(&PolyElem::var(&vars_s, field, n + l)));
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// For δ = 1: the Pfaffian of the bordered matrix
/// [[A_dist, A_{k}T ...], [T^t A_{k} ..., 0]] over the non-distinguished
/// indices k in increasing order.  Equal to a unit times c(1).
pub fn pfaffian_deltaone(ctx: &SeedCtx) -> Result<PolyElem, SeedError> {
    let delta = ctx.delta();
    if delta != 1 {
        return Err(SeedError::DeltaNotOne(delta));
    }
    let f = ctx.f();
    let g = ctx.g();
    let dist = ctx.seed.distinguished - 1;
    let others: Vec<usize> = (0..g).filter(|&k| k != dist).collect();
    let size = f + g - 1;
    let zero = PolyElem::zero(&ctx.vars, ctx.field);
    let mut entries = vec![zero; size * size];
    for i in 0..f {
        for j in 0..f {
            entries[i * size + j] = ctx.seed.alt[dist].at(i, j).clone();
        }
    }
    for (t, &k) in others.iter().enumerate() {
        for i in 0..f {
            // (A_k T)_i
            let mut acc = PolyElem::zero(&ctx.vars, ctx.field);
            for j in 0..f {
                let e = ctx.seed.alt[k].at(i, j);
                if !e.is_zero() {
                    acc = acc.add(&e.mul(&PolyElem::var(&ctx.vars, ctx.field, j)));
                }
            }
            entries[i * size + (f + t)] = acc.clone();
            entries[(f + t) * size + i] = acc.neg();
        }
    }
    let m = AltMatrix { n: size, entries };
    Ok(pfaffian(&m))
}

/// Evaluate the columns Ψ(X_k) against the row vector [T1..Tf]; used by the
/// defining-annihilation test.
pub fn tau_applied_to_psi(ctx: &SeedCtx) -> Vec<PolyElem> {
    ctx.psi_cols
        .iter()
        .map(|col| {
            let mut acc = PolyElem::zero(&ctx.vars, ctx.field);
            for (t, c) in &col.terms {
                let i = t[0] as usize - 1;
                acc = acc.add(&c.mul(&PolyElem::var(&ctx.vars, ctx.field, i)));
            }
            acc
        })
        .collect()
}

/// Corner-basis tuple 1..f.
pub fn full_tuple(f: usize) -> Tuple {
    (1..=f as u8).collect()
}

/// Helper used by tests: γ ranges over the dual basis of D_h(G*).
pub fn div_basis(ctx: &SeedCtx, h: usize) -> Vec<(DivMono, DivElem)> {
    monomials_y(ctx.g(), h)
        .into_iter()
        .map(|m| {
            let e = DivElem::basis(ctx.g(), &m, &ctx.vars, ctx.field);
            (m, e)
        })
        .collect()
}

/// Contraction of a DivElem by every Y in sequence is used by the cycle
/// construction; re-exported here to keep call sites short.
pub fn contract_by(m: &DivMono, gamma: &DivElem) -> DivElem {
    act_y(m, gamma)
}
