//! Hand-entered generator fixtures for the kernel bundle computations:
//! the displayed degree-2 generator of the middle truncated subquotient at
//! p = 3, and the two-type degree-2 generator families of the top-layer
//! subquotient for general p, built from their coefficient rules.

use std::sync::Arc;

use crate::bundle::{GradedVector, ThetaContext};
use crate::field::FqField;
use crate::plucker::{PluckerIndex, PluckerMonomial, PluckerPoly};
use crate::zoo;

fn pair(a: u8, b: u8) -> PluckerIndex {
    PluckerIndex::new(if a < b { vec![a, b] } else { vec![b, a] })
}

fn pair_mono(a1: u8, b1: u8, a2: u8, b2: u8) -> PluckerMonomial {
    PluckerMonomial::from_rows(vec![pair(a1, b1), pair(a2, b2)])
}

/// Coset index of an exponent tuple among the degree-d monomials of the
/// truncated subquotient basis (descending lex, matching the constructor).
fn coset_index(ctx: &ThetaContext, exps: &[usize]) -> usize {
    let p = ctx.module.field.p() as usize;
    let degree: usize = exps.iter().sum();
    let mut idx = 0usize;
    let mut found = None;
    let mut cur = vec![0usize; exps.len()];
    fn rec(
        pos: usize,
        left: usize,
        cap: usize,
        cur: &mut Vec<usize>,
        target: &[usize],
        idx: &mut usize,
        found: &mut Option<usize>,
    ) {
        if found.is_some() {
            return;
        }
        if pos == cur.len() {
            if left == 0 {
                if cur == target {
                    *found = Some(*idx);
                }
                *idx += 1;
            }
            return;
        }
        let hi = cap.min(left);
        for e in (0..=hi).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cap, cur, target, idx, found);
        }
        cur[pos] = 0;
    }
    rec(0, degree, p - 1, &mut cur, exps, &mut idx, &mut found);
    found.expect("exponent tuple in range")
}

/// The displayed degree-2 generator for p = 3, n = 4, r = 2 and
/// M = Rad^4(kE)/Rad^6(kE): 20 terms, one product of Plücker pairs per
/// degree-4 exponent tuple (the repeated tuple collects two products).
pub fn middle_layer_generator(ctx: &ThetaContext) -> GradedVector {
    let f = &ctx.module.field;
    let neg = f.neg(1);
    // (exponents, pair, pair, sign)
    let data: &[([usize; 4], (u8, u8), (u8, u8), bool)] = &[
        ([2, 2, 0, 0], (1, 2), (1, 2), false),
        ([2, 1, 1, 0], (1, 2), (1, 3), true),
        ([2, 1, 0, 1], (1, 2), (1, 4), true),
        ([1, 2, 1, 0], (1, 2), (2, 3), false),
        ([1, 2, 0, 1], (1, 2), (2, 4), false),
        ([2, 0, 2, 0], (1, 3), (1, 3), false),
        ([2, 0, 1, 1], (1, 3), (1, 4), true),
        ([1, 1, 2, 0], (1, 3), (2, 3), true),
        ([1, 1, 1, 1], (1, 3), (2, 4), true),
        ([1, 0, 2, 1], (1, 3), (3, 4), false),
        ([2, 0, 0, 2], (1, 4), (1, 4), false),
        ([1, 1, 1, 1], (1, 4), (2, 3), true),
        ([1, 1, 0, 2], (1, 4), (2, 4), true),
        ([1, 0, 1, 2], (1, 4), (3, 4), true),
        ([0, 2, 2, 0], (2, 3), (2, 3), false),
        ([0, 2, 1, 1], (2, 3), (2, 4), true),
        ([0, 1, 2, 1], (2, 3), (3, 4), false),
        ([0, 2, 0, 2], (2, 4), (2, 4), false),
        ([0, 1, 1, 2], (2, 4), (3, 4), true),
        ([0, 0, 2, 2], (3, 4), (3, 4), false),
    ];
    let mut coeffs: Vec<PluckerPoly> =
        (0..ctx.cosets()).map(|_| PluckerPoly::zero(f, 4, 2)).collect();
    for (exps, p1, p2, negative) in data {
        let t = coset_index(ctx, exps);
        let mono = pair_mono(p1.0, p1.1, p2.0, p2.1);
        coeffs[t].add_term(mono, if *negative { neg } else { 1 });
    }
    for c in coeffs.iter_mut() {
        *c = c.straighten();
    }
    GradedVector { n: 4, r: 2, degree: 2, coeffs }
}

/// The module of the two-type family: Rad^{n(p-1)-2}(kE)/Rad^{n(p-1)}(kE)
/// for n = 4.
pub fn top_layer_module(field: &Arc<FqField>) -> crate::modrep::KEModule {
    let p = field.p() as usize;
    zoo::truncated_subquotient(field, 4, 4 * (p - 1) - 2, 4 * (p - 1)).expect("valid range")
}

/// Type 1 generators, indexed by l in {1,2,3,4}: the coefficient on the
/// tuple dropping 2 from one of the other indices v is the squared
/// coordinate of the remaining pair; dropping 1 from v and w contributes
/// the product through the third index t, signed by whether t separates
/// v and w.
pub fn type1_generators(ctx: &ThetaContext) -> Vec<GradedVector> {
    let f = &ctx.module.field;
    let p = f.p() as usize;
    let mut out = Vec::new();
    for l in 1usize..=4 {
        let others: Vec<usize> = (1..=4).filter(|&v| v != l).collect();
        let mut coeffs: Vec<PluckerPoly> =
            (0..ctx.cosets()).map(|_| PluckerPoly::zero(f, 4, 2)).collect();
        let mut exps_for = |drops: &[(usize, usize)]| -> usize {
            let mut e = [p - 1; 4];
            for &(var, d) in drops {
                e[var - 1] -= d;
            }
            coset_index(ctx, &e)
        };
        for &v in &others {
            let rest: Vec<usize> = others.iter().copied().filter(|&x| x != v).collect();
            let t = exps_for(&[(v, 2)]);
            coeffs[t].add_term(pair_mono(rest[0] as u8, rest[1] as u8, rest[0] as u8, rest[1] as u8), 1);
        }
        for a in 0..3 {
            for b in a + 1..3 {
                let (v, w) = (others[a], others[b]);
                let t3 = others.iter().copied().find(|&x| x != v && x != w).unwrap();
                let between = v.min(w) < t3 && t3 < v.max(w);
                let sign = if between { 1 } else { f.neg(1) };
                let t = exps_for(&[(v, 1), (w, 1)]);
                coeffs[t].add_term(pair_mono(v as u8, t3 as u8, w as u8, t3 as u8), sign);
            }
        }
        for c in coeffs.iter_mut() {
            *c = c.straighten();
        }
        out.push(GradedVector { n: 4, r: 2, degree: 2, coeffs });
    }
    out
}

/// Type 2 generators, indexed by 2-subsets S = {i, j} with complement
/// {k, l}. In terms of the signed bracket <a,b> = sgn(b-a) p_{sort(a,b)}:
///
/// * the (k,l)-drop carries p_S²,
/// * a single drop at u ∈ S and w ∈ {k,l} carries
///   ±p_S <u',w'> (plus for u = i, minus for u = j), with u', w' the
///   complementary choices,
/// * the (i,j)-drop carries -<i,k><j,l> - <i,l><j,k>,
/// * a double drop at u ∈ S carries 2 <u',k><u',l>.
pub fn type2_generators(ctx: &ThetaContext) -> Vec<GradedVector> {
    let f = &ctx.module.field;
    let p = f.p() as usize;
    let two = f.add(1, 1);
    // signed bracket: (sorted pair index, sign)
    let bracket = |a: usize, b: usize| -> (u8, u8, u16) {
        if a < b {
            (a as u8, b as u8, 1)
        } else {
            (b as u8, a as u8, f.neg(1))
        }
    };
    let mut out = Vec::new();
    for s0 in crate::grass::subsets(4, 2) {
        let i = s0[0] + 1;
        let j = s0[1] + 1;
        let comp: Vec<usize> = (1..=4).filter(|&v| v != i && v != j).collect();
        let (k, l) = (comp[0], comp[1]);
        let mut coeffs: Vec<PluckerPoly> =
            (0..ctx.cosets()).map(|_| PluckerPoly::zero(f, 4, 2)).collect();
        let mut exps_for = |drops: &[(usize, usize)]| -> usize {
            let mut e = [p - 1; 4];
            for &(var, d) in drops {
                e[var - 1] -= d;
            }
            coset_index(ctx, &e)
        };
        // complement drop: p_S^2
        let t = exps_for(&[(k, 1), (l, 1)]);
        coeffs[t].add_term(pair_mono(i as u8, j as u8, i as u8, j as u8), 1);
        // one drop in S, one in the complement
        for &u in &[i, j] {
            let uprime = if u == i { j } else { i };
            let base = if u == i { 1 } else { f.neg(1) };
            for &w in &[k, l] {
                let wprime = if w == k { l } else { k };
                let (a, b, s) = bracket(uprime, wprime);
                let t = exps_for(&[(u, 1), (w, 1)]);
                coeffs[t].add_term(
                    pair_mono(i as u8, j as u8, a, b),
                    f.mul(base, s),
                );
            }
        }
        // both S variables drop one: -<i,k><j,l> - <i,l><j,k>
        {
            let t = exps_for(&[(i, 1), (j, 1)]);
            for (w1, w2) in [(k, l), (l, k)] {
                let (a1, b1, s1) = bracket(i, w1);
                let (a2, b2, s2) = bracket(j, w2);
                let c = f.neg(f.mul(s1, s2));
                coeffs[t].add_term(
                    PluckerMonomial::from_rows(vec![pair(a1, b1), pair(a2, b2)]),
                    c,
                );
            }
        }
        // double drop at u: 2 <u',k><u',l>
        for &u in &[i, j] {
            let uprime = if u == i { j } else { i };
            let (a1, b1, s1) = bracket(uprime, k);
            let (a2, b2, s2) = bracket(uprime, l);
            let t = exps_for(&[(u, 2)]);
            coeffs[t].add_term(
                PluckerMonomial::from_rows(vec![pair(a1, b1), pair(a2, b2)]),
                f.mul(two, f.mul(s1, s2)),
            );
        }
        for c in coeffs.iter_mut() {
            *c = c.straighten();
        }
        out.push(GradedVector { n: 4, r: 2, degree: 2, coeffs });
    }
    out
}

/// The verbal coefficient rules as literally stated for the second type,
/// kept for the discrepancy report: exact kernel membership shows these are
/// not the kernel elements (two coefficient families are swapped relative
/// to the validated ones and one is missigned).
pub fn type2_generators_stated_rules(ctx: &ThetaContext) -> Vec<GradedVector> {
    let f = &ctx.module.field;
    let p = f.p() as usize;
    let two = f.add(1, 1);
    let mut out = Vec::new();
    for s0 in crate::grass::subsets(4, 2) {
        let i = s0[0] + 1;
        let j = s0[1] + 1;
        let comp: Vec<usize> = (1..=4).filter(|&v| v != i && v != j).collect();
        let (k, l) = (comp[0], comp[1]);
        let mut coeffs: Vec<PluckerPoly> =
            (0..ctx.cosets()).map(|_| PluckerPoly::zero(f, 4, 2)).collect();
        let mut exps_for = |drops: &[(usize, usize)]| -> usize {
            let mut e = [p - 1; 4];
            for &(var, d) in drops {
                e[var - 1] -= d;
            }
            coset_index(ctx, &e)
        };
        let t = exps_for(&[(k, 1), (l, 1)]);
        coeffs[t].add_term(pair_mono(i as u8, j as u8, i as u8, j as u8), 1);
        for &u in &[i, j] {
            let uprime = if u == i { j } else { i };
            for &w in &[k, l] {
                let between = u.min(w) < uprime && uprime < u.max(w);
                let sign = if between { 1 } else { f.neg(1) };
                let t = exps_for(&[(u, 1), (w, 1)]);
                coeffs[t].add_term(pair_mono(i as u8, j as u8, uprime as u8, w as u8), sign);
            }
        }
        {
            let t = exps_for(&[(i, 1), (j, 1)]);
            let beta = |kk: usize, ll: usize| -> u16 {
                let g1 = if j < ll { 1 } else { f.neg(1) };
                let d1 = if i < kk { 1 } else { f.neg(1) };
                f.mul(g1, d1)
            };
            coeffs[t].add_term(pair_mono(i as u8, k as u8, j as u8, l as u8), beta(k, l));
            coeffs[t].add_term(pair_mono(i as u8, l as u8, j as u8, k as u8), beta(l, k));
        }
        for &u in &[i, j] {
            let between = k < u && u < l;
            let sign = if between { two } else { f.neg(two) };
            let t = exps_for(&[(u, 2)]);
            coeffs[t].add_term(pair_mono(u as u8, k as u8, u as u8, l as u8), sign);
        }
        for c in coeffs.iter_mut() {
            *c = c.straighten();
        }
        out.push(GradedVector { n: 4, r: 2, degree: 2, coeffs });
    }
    out
}
