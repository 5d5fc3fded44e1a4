//! Structural cross-checks that tie several modules together: contraction
//! identities on divided powers, the subquotient structure of the totalized
//! double complexes, the automatic block-support bound, explicit cycle
//! formulas, and a fully symbolic bigraded build.

use pfres::complexes::{build_complex, cycles, ComplexKind, SummandKind, SummandLabel};
use pfres::multilinear::{act_y, contract_tau, monomials_y, wedge, AltMatrix, DivElem, DivMono};
use pfres::ring::{FieldKind, PolyElem, VarKind, VarSet, DEFAULT_PRIME};
use pfres::seed::{build_psi, epsilon_window, SeedCtx, SeedData};
use pfres::verify::{check_bihomogeneous, check_complex};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn ctx(f: usize, g: usize, eps: i64, seed: u64) -> SeedCtx {
    SeedCtx::new(SeedData::generic(f, g, eps, DEFAULT_PRIME, seed).unwrap()).unwrap()
}

#[test]
fn tau_of_dmu_expands_by_contraction() {
    // τ(D(μ)(γ')) = Σ_ℓ τ(μ(X_ℓ)) ∧ D(μ)(Y_ℓ(γ')) on random γ' of degree ≤ 3
    let mut rng = StdRng::seed_from_u64(3);
    for (f, g) in [(5usize, 2usize), (6, 3), (4, 2)] {
        let c = ctx(f, g, epsilon_window(f - g).1, 77);
        for deg in 1..=3usize {
            for _ in 0..5 {
                let mut gamma = DivElem::zero(g, deg);
                for m in monomials_y(g, deg) {
                    gamma.add_term(m, PolyElem::from_i128(&c.vars, c.field, rng.gen_range(-9..=9)));
                }
                if gamma.is_zero() {
                    continue;
                }
                let lhs = contract_tau(&c.d_mu_elem(&gamma), &c.vars, c.field);
                let mut rhs = pfres::multilinear::ExtElem::zero(f, 2 * deg - 1);
                for l in 0..g {
                    let mut y = DivMono::new();
                    for k in 0..g {
                        y.push(if k == l { 1 } else { 0 });
                    }
                    let contracted = act_y(&y, &gamma);
                    if contracted.is_zero() {
                        continue;
                    }
                    rhs = rhs.add(&wedge(&c.psi_cols[l], &c.d_mu_elem(&contracted)));
                }
                assert_eq!(lhs, rhs, "({f},{g}) deg {deg}");
            }
        }
    }
}

#[test]
fn psi_columns_are_tau_of_dmu() {
    let c = ctx(6, 3, 2, 5);
    let psi = build_psi(&c);
    for k in 0..3 {
        let mut m = DivMono::new();
        for i in 0..3 {
            m.push(if i == k { 1 } else { 0 });
        }
        let col = contract_tau(&c.d_mu(&m), &c.vars, c.field);
        for (t, coeff) in &col.terms {
            assert_eq!(psi.at(t[0] as usize - 1, k), coeff);
        }
    }
}

#[test]
fn tot_v_splits_as_u_and_b() {
    // ranks partition position by position, U's differential is the
    // restriction, and B's is the projection of V's
    for (f, g, eps) in [(5usize, 2usize, 1i64), (5, 2, 2), (4, 2, 1), (6, 3, 2)] {
        let c = ctx(f, g, eps, 31);
        let tv = build_complex(&c, ComplexKind::TotV, None, true);
        let tu = build_complex(&c, ComplexKind::TotU, None, true);
        let tb = build_complex(&c, ComplexKind::TotB, None, true);
        for (&n, vm) in &tv.modules {
            let u_rank = tu.rank(n);
            let b_rank = tb.rank(n);
            assert_eq!(vm.rank, u_rank + b_rank, "rank split at N={n} ({f},{g},{eps})");
        }
        for (&n, dv) in &tv.diffs {
            // restriction to U equals U's differential
            if let Some(du) = tu.diffs.get(&n) {
                for (&(ur, uc), p) in &du.entries {
                    let (sl, se, sd) = tu.basis_of(n, uc).unwrap();
                    let (tl, te, td) = tu.basis_of(n - 1, ur).unwrap();
                    let vc = tv.index_of(n, &sl, &se, &sd).unwrap();
                    let vr = tv.index_of(n - 1, &tl, &te, &td).unwrap();
                    assert_eq!(dv.entries.get(&(vr, vc)), Some(p), "U restriction at N={n}");
                }
            }
            // projection to B equals B's differential
            if let Some(db) = tb.diffs.get(&n) {
                let mut count = 0usize;
                for (&(vr, vc), p) in &dv.entries {
                    let Some((sl, se, sd)) = tv.basis_of(n, vc) else { continue };
                    let Some((tl, te, td)) = tv.basis_of(n - 1, vr) else { continue };
                    if let (Some(bc), Some(br)) =
                        (tb.index_of(n, &sl, &se, &sd), tb.index_of(n - 1, &tl, &te, &td))
                    {
                        assert_eq!(db.entries.get(&(br, bc)), Some(p), "B projection at N={n}");
                        count += 1;
                    }
                }
                assert_eq!(count, db.entries.len(), "B has no extra entries at N={n}");
            }
        }
    }
}

#[test]
fn t_to_b_block_respects_epsilon_bound_inside_m() {
    // in L, sources that belong to M never map into B-summands with j ≥ ε:
    // the binomial coefficient kills those blocks automatically
    for (f, g, eps) in [(5usize, 2usize, 1i64), (6, 3, 1), (6, 3, 2), (7, 3, 2)] {
        let c = ctx(f, g, eps, 13);
        let l = build_complex(&c, ComplexKind::L, None, true);
        let delta = (f - g) as i64;
        for (&n, d) in &l.diffs {
            let src = &l.modules[&n];
            let tgt = match l.modules.get(&(n - 1)) {
                Some(t) => t,
                None => continue,
            };
            for (&(r, c0), p) in &d.entries {
                let ssum =
                    src.summands.iter().find(|s| c0 >= s.offset && c0 < s.offset + s.rank).unwrap();
                let tsum =
                    tgt.summands.iter().find(|s| r >= s.offset && r < s.offset + s.rank).unwrap();
                if ssum.label.kind == SummandKind::T
                    && ssum.label.i + ssum.label.j <= delta - 1
                    && tsum.label.kind == SummandKind::B
                {
                    assert!(
                        tsum.label.j <= eps - 1,
                        "({f},{g},{eps}): M-source block lands at {} with entry {}",
                        tsum.label.display(),
                        p.display()
                    );
                }
            }
        }
    }
}

#[test]
fn cycle_formulas_match_definitions() {
    // z^ε_γ has components (-1)^J D(μ)(m1*) ⊗ m1(γ) over J ≥ ε, and ζ_γ the
    // same over j ≤ N-1
    let (f, g, eps) = (5usize, 2usize, 1i64);
    let c = ctx(f, g, eps, 55);
    let tv = build_complex(&c, ComplexKind::TotV, None, true);
    let tt = build_complex(&c, ComplexKind::TotT, None, true);
    let tb = build_complex(&c, ComplexKind::TotB, None, true);
    let delta = (f - g) as i64;
    for n in 1..=tb.hi {
        if (delta + n - 1) % 2 != 0 {
            continue;
        }
        let half = ((delta + n - 1) / 2) as usize;
        for (_, gamma) in pfres::seed::div_basis(&c, half) {
            let tr = cycles(&c, &tv, &tt, &tb, n, &gamma).unwrap();
            // rebuild z from the (c)-form of the statement
            let mut expect: Vec<(usize, PolyElem)> = Vec::new();
            for j_cap in eps..=(half as i64) {
                let i = delta + n - 1 - 2 * j_cap;
                if i < 0 || i > f as i64 {
                    continue;
                }
                for m1 in monomials_y(g, half - j_cap as usize) {
                    let w = c.d_mu(&m1);
                    let rest = act_y(&m1, &gamma);
                    for (t, coeff) in &w.terms {
                        for (dm, dc) in &rest.terms {
                            if let Some(idx) =
                                tt.index_of(n, &SummandLabel::t(i, j_cap), t, dm)
                            {
                                let v = coeff.mul(dc);
                                let v = if j_cap % 2 == 0 { v } else { v.neg() };
                                expect.push((idx, v));
                            }
                        }
                    }
                }
            }
            let mut acc: std::collections::BTreeMap<usize, PolyElem> = Default::default();
            for (i, p) in expect {
                let e = acc.entry(i).or_insert_with(|| PolyElem::zero(&c.vars, c.field));
                *e = e.add(&p);
            }
            acc.retain(|_, p| !p.is_zero());
            let expect: Vec<(usize, PolyElem)> = acc.into_iter().collect();
            assert_eq!(tr.top, expect, "z-form mismatch at N={n}");
            // ζ components stay within j ≤ N-1
            for (idx, _) in &tr.bot {
                let (label, _, _) = tb.basis_of(n, *idx).unwrap();
                assert!(label.j <= n - 1);
            }
        }
    }
}

#[test]
fn symbolic_coefficients_build_bigraded_complex() {
    // entries as fresh degree-(0,1) variables: d∘d = 0 identically and every
    // entry is bihomogeneous in both gradings
    let (f, g) = (4usize, 2usize);
    let mut extra = Vec::new();
    for k in 1..=g {
        for i in 1..=f {
            for j in (i + 1)..=f {
                extra.push(format!("a{i}{j}{k}"));
            }
        }
    }
    let vars = VarSet::with_extra(f, &extra);
    let field = FieldKind::fp(DEFAULT_PRIME).unwrap();
    let mut alt = Vec::new();
    let mut idx = f;
    for _ in 0..g {
        let mut upper = Vec::new();
        for _ in 0..(f * (f - 1) / 2) {
            upper.push(PolyElem::var(&vars, field, idx));
            idx += 1;
        }
        alt.push(AltMatrix::from_upper(f, &vars, field, &upper));
    }
    let seed = SeedData {
        f,
        g,
        epsilon: 1,
        field,
        alt,
        distinguished: 1,
        rng_seed: 0,
        extra_vars: extra.clone(),
    };
    let c = SeedCtx::new(seed).unwrap();
    assert_eq!(c.vars.kind(f), VarKind::Coeff);
    let m = build_complex(&c, ComplexKind::M, None, true);
    let r = check_complex(&m);
    assert!(r.pass, "symbolic d∘d failed: {:?}", r.failure);
    let h = check_bihomogeneous(&m);
    assert!(h.pass, "symbolic bigrading failed: {:?}", h.failure);
}
