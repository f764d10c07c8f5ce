//! Minimal free resolutions of the trivial module, syzygies Ω^m(k), the
//! cohomology algebra in its coordinate presentation, plane restriction of
//! cohomology classes, and the Carlson modules L_ζ.
//!
//! The resolution of k is the tensor product of the n period-two
//! single-variable resolutions; its degree-t generators are labeled by
//! exponent tuples summing to t. By minimality Hom(F_m, k) is the m-th
//! cohomology group, so a class is a coefficient per label: for p = 2 the
//! label is the multidegree of a ζ-monomial, for p > 2 the parity part is
//! the η-exponent and half the even part the ζ-exponent.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::field::FqField;
use crate::grass::Plane;
use crate::mat::Mat;
use crate::modrep::{KEModule, Subspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohError {
    #[error("class must be nonzero")]
    ZeroClass,
    #[error("class is not homogeneous")]
    NotHomogeneous,
    #[error("field or rank mismatch")]
    FieldMismatch,
    #[error("η exponents must be square-free")]
    BadEta,
}

/// A term key: sorted set of η indices (empty for p = 2) and ζ exponents.
pub type TermKey = (Vec<u8>, Vec<u32>);

/// A homogeneous cohomology class of `E` in coordinates: for p = 2 a
/// polynomial in ζ_1..ζ_n (deg ζ_i = 1); for p > 2 a sum of terms
/// η^ε ζ^b with ε square-free, deg = |ε| + 2|b|.
#[derive(Clone, Debug)]
pub struct CohClass {
    pub field: Arc<FqField>,
    pub n: usize,
    pub terms: BTreeMap<TermKey, u16>,
}

impl CohClass {
    pub fn zero(field: &Arc<FqField>, n: usize) -> CohClass {
        CohClass { field: Arc::clone(field), n, terms: BTreeMap::new() }
    }

    /// ζ^b, e.g. `zeta_monomial(f, 3, &[1,1,0])` = ζ1 ζ2.
    pub fn zeta_monomial(field: &Arc<FqField>, n: usize, exps: &[u32]) -> CohClass {
        assert_eq!(exps.len(), n);
        let mut c = CohClass::zero(field, n);
        c.add_term(&(Vec::new(), exps.to_vec()), 1);
        c
    }

    /// η_{i1}...η_{is} for p > 2, indices 1-based sorted.
    pub fn eta_monomial(field: &Arc<FqField>, n: usize, set: &[u8]) -> Result<CohClass, CohError> {
        if field.p() == 2 {
            return Err(CohError::BadEta);
        }
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CohError::BadEta);
        }
        let mut c = CohClass::zero(field, n);
        c.add_term(&(set.to_vec(), vec![0; n]), 1);
        Ok(c)
    }

    pub fn add_term(&mut self, key: &TermKey, coeff: u16) {
        if coeff == 0 {
            return;
        }
        let f = Arc::clone(&self.field);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = f.add(*e, coeff);
        if *e == 0 {
            self.terms.remove(key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the image in the reduced cohomology ring vanishes (the η's
    /// are nilpotent for p > 2).
    pub fn reduced_is_zero(&self) -> bool {
        if self.field.p() == 2 {
            return self.is_zero();
        }
        self.terms.keys().all(|(eta, _)| !eta.is_empty())
    }

    fn term_degree(&self, key: &TermKey) -> u32 {
        let (eta, z) = key;
        let zdeg: u32 = z.iter().sum();
        if self.field.p() == 2 {
            zdeg
        } else {
            eta.len() as u32 + 2 * zdeg
        }
    }

    /// Degree of a homogeneous class.
    pub fn degree(&self) -> Result<u32, CohError> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Err(CohError::ZeroClass) };
        let d = self.term_degree(first);
        let d0 = d;
        for k in it {
            if self.term_degree(k) != d0 {
                return Err(CohError::NotHomogeneous);
            }
        }
        Ok(d)
    }

    /// Whether this class is a single η-monomial (a product of degree-one
    /// classes), up to scalar.
    pub fn is_eta_monomial(&self) -> bool {
        self.field.p() > 2
            && self.terms.len() == 1
            && self.terms.keys().all(|(eta, z)| !eta.is_empty() && z.iter().all(|&e| e == 0))
    }

    fn mul(&self, other: &CohClass) -> CohClass {
        let f = &self.field;
        let mut out = CohClass::zero(f, self.n);
        for ((ea, za), &ca) in &self.terms {
            for ((eb, zb), &cb) in &other.terms {
                let Some((eta, sign)) = merge_eta(ea, eb) else { continue };
                let z: Vec<u32> = za.iter().zip(zb).map(|(x, y)| x + y).collect();
                let mut c = f.mul(ca, cb);
                if sign {
                    c = f.neg(c);
                }
                out.add_term(&(eta, z), c);
            }
        }
        out
    }

    /// Restriction along the plane U: ζ_i are substituted through the
    /// Frobenius-twisted basis matrix for p > 2 (plain for p = 2), η_i
    /// linearly. The result lives in r variables.
    pub fn restrict(&self, u: &Plane) -> Result<CohClass, CohError> {
        if u.n != self.n || **u.field() != *self.field {
            return Err(CohError::FieldMismatch);
        }
        let f = &self.field;
        let r = u.r;
        let p2 = f.p() == 2;
        let zeta_sub: Vec<CohClass> = (0..self.n)
            .map(|i| {
                let mut c = CohClass::zero(f, r);
                for j in 0..r {
                    let a = u.basis.get(j, i);
                    let coeff = if p2 { a } else { f.frob(a) };
                    let mut z = vec![0u32; r];
                    z[j] = 1;
                    c.add_term(&(Vec::new(), z), coeff);
                }
                c
            })
            .collect();
        let eta_sub: Vec<CohClass> = (0..self.n)
            .map(|i| {
                let mut c = CohClass::zero(f, r);
                for j in 0..r {
                    let a = u.basis.get(j, i);
                    c.add_term(&(vec![(j + 1) as u8], vec![0; r]), a);
                }
                c
            })
            .collect();
        let mut out = CohClass::zero(f, r);
        for ((eta, z), &coeff) in &self.terms {
            let mut acc = CohClass::zero(f, r);
            acc.add_term(&(Vec::new(), vec![0; r]), coeff);
            for &e in eta {
                acc = acc.mul(&eta_sub[(e - 1) as usize]);
            }
            for (i, &b) in z.iter().enumerate() {
                for _ in 0..b {
                    acc = acc.mul(&zeta_sub[i]);
                }
            }
            for (k, &c) in &acc.terms {
                out.add_term(k, c);
            }
        }
        Ok(out)
    }

    /// Coefficient on the resolution generator with the given exponent label.
    fn generator_coefficient(&self, label: &[usize]) -> u16 {
        let key: TermKey = if self.field.p() == 2 {
            (Vec::new(), label.iter().map(|&t| t as u32).collect())
        } else {
            let eta: Vec<u8> = label
                .iter()
                .enumerate()
                .filter(|(_, &t)| t % 2 == 1)
                .map(|(i, _)| (i + 1) as u8)
                .collect();
            let z: Vec<u32> = label.iter().map(|&t| (t / 2) as u32).collect();
            (eta, z)
        };
        *self.terms.get(&key).unwrap_or(&0)
    }
}

fn merge_eta(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, bool)> {
    let mut v: Vec<u8> = a.iter().chain(b).copied().collect();
    let mut swaps = 0usize;
    for i in 0..v.len() {
        for j in (i + 1..v.len()).rev() {
            if v[j - 1] > v[j] {
                v.swap(j - 1, j);
                swaps += 1;
            } else if v[j - 1] == v[j] {
                return None;
            }
        }
    }
    Some((v, swaps % 2 == 1))
}

/// Minimal free resolution of k over kE, built as the tensor product of the
/// period-two resolutions ... -> A -x^{p-1}-> A -x-> A -> k of each variable.
pub struct Resolution {
    pub field: Arc<FqField>,
    pub n: usize,
    /// labels[t] = exponent tuples of the degree-t generators.
    pub labels: Vec<Vec<Vec<usize>>>,
    /// diffs[t]: the matrix of d_t : F_t -> F_{t-1} on underlying spaces,
    /// (ranks[t-1] * p^n) x (ranks[t] * p^n). diffs[0] is empty.
    pub diffs: Vec<Mat>,
    regular: KEModule,
}

impl Resolution {
    pub fn build(field: &Arc<FqField>, n: usize, max_deg: usize) -> Resolution {
        let regular = KEModule::regular(field, n);
        let mut res = Resolution {
            field: Arc::clone(field),
            n,
            labels: vec![vec![vec![0; n]]],
            diffs: vec![Mat::zeros(field, 0, 0)],
            regular,
        };
        res.extend_to(max_deg);
        res
    }

    pub fn rank(&self, t: usize) -> usize {
        self.labels[t].len()
    }

    pub fn extend_to(&mut self, max_deg: usize) {
        let p = self.field.p() as usize;
        let pn = p.pow(self.n as u32);
        while self.labels.len() <= max_deg {
            let t = self.labels.len();
            let labels: Vec<Vec<usize>> = compositions(self.n, t);
            let prev = &self.labels[t - 1];
            let mut d = Mat::zeros(&self.field, prev.len() * pn, labels.len() * pn);
            for (c, lab) in labels.iter().enumerate() {
                for i in 0..self.n {
                    if lab[i] == 0 {
                        continue;
                    }
                    let mut target = lab.clone();
                    target[i] -= 1;
                    let rdix = prev.iter().position(|l| *l == target).expect("label below");
                    // multiplication by x_i (odd) or x_i^{p-1} (even), with
                    // the Koszul sign of the earlier factors
                    let power = if lab[i] % 2 == 1 { 1 } else { p - 1 };
                    let mut block = self.regular.actions[i].clone();
                    for _ in 1..power {
                        block = block.mul(&self.regular.actions[i]);
                    }
                    let parity: usize = lab[..i].iter().sum();
                    if parity % 2 == 1 {
                        block = block.neg();
                    }
                    for rr in 0..pn {
                        for cc in 0..pn {
                            let v = block.get(rr, cc);
                            if v != 0 {
                                d.set(rdix * pn + rr, c * pn + cc, v);
                            }
                        }
                    }
                }
            }
            self.labels.push(labels);
            self.diffs.push(d);
        }
    }

    /// The free module F_t as a KEModule (block-diagonal regular actions).
    pub fn free_module(&self, t: usize) -> KEModule {
        let p = self.field.p() as usize;
        let pn = p.pow(self.n as u32);
        let rank = self.rank(t);
        let actions = (0..self.n)
            .map(|i| {
                let mut m = Mat::zeros(&self.field, rank * pn, rank * pn);
                for b in 0..rank {
                    for rr in 0..pn {
                        for cc in 0..pn {
                            let v = self.regular.actions[i].get(rr, cc);
                            if v != 0 {
                                m.set(b * pn + rr, b * pn + cc, v);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        KEModule { field: Arc::clone(&self.field), n: self.n, dim: rank * pn, actions }
    }

    /// Ω^m(k) as the image of d_m inside F_{m-1}, with its induced action.
    /// Also returns the subspace and, per basis vector, a preimage in F_m.
    pub fn omega_with_preimages(&self, m: usize) -> (KEModule, Subspace, Vec<Vec<u16>>) {
        assert!(m >= 1 && m < self.labels.len());
        let d = &self.diffs[m];
        // column-reduce d while tracking combinations: rref of [d^T | I]
        let dt = d.transpose();
        let aug = Mat::hstack(&[&dt, &Mat::identity(&self.field, dt.rows())]);
        let red = aug.rref();
        let mut basis_rows = Vec::new();
        let mut preimages = Vec::new();
        for i in 0..red.rows() {
            let img: Vec<u16> = (0..d.rows()).map(|j| red.get(i, j)).collect();
            if img.iter().all(|&v| v == 0) {
                continue;
            }
            let pre: Vec<u16> = (0..d.cols()).map(|j| red.get(i, d.rows() + j)).collect();
            basis_rows.push(img);
            preimages.push(pre);
        }
        let basis = Mat::from_rows(&self.field, &basis_rows);
        let sub = Subspace { ambient_dim: d.rows(), basis };
        let ambient = self.free_module(m - 1);
        let module = ambient.on_invariant_subspace(&sub).expect("image of d is a submodule");
        (module, sub, preimages)
    }
}

/// Exponent tuples of length n summing to t (unbounded), descending lex.
fn compositions(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, t, &mut cur, &mut out);
    out
}

/// Ω^m(k): for m = 0 the trivial module, otherwise the image of d_m.
pub fn omega_k(field: &Arc<FqField>, n: usize, m: usize) -> KEModule {
    if m == 0 {
        return KEModule::trivial(field, n);
    }
    let res = Resolution::build(field, n, m);
    res.omega_with_preimages(m).0
}

/// L_ζ = Ker(ζ: Ω^m(k) -> k) for a nonzero homogeneous class of degree
/// m >= 1, with its induced module structure.
pub fn l_zeta(res: &Resolution, zeta: &CohClass) -> Result<KEModule, CohError> {
    let m = zeta.degree()? as usize;
    if m < 1 {
        return Err(CohError::ZeroClass);
    }
    let f = &res.field;
    let (_omega, sub, preimages) = res.omega_with_preimages(m);
    let p = f.p() as usize;
    let pn = p.pow(res.n as u32);
    // ζ̂ on F_m kills Rad(F_m): its value is the label coefficient times the
    // coordinate of the identity monomial in each free summand.
    let zeta_hat = |v: &[u16]| -> u16 {
        let mut acc = 0u16;
        for (g, lab) in res.labels[m].iter().enumerate() {
            let c = zeta.generator_coefficient(lab);
            if c != 0 {
                acc = f.add(acc, f.mul(c, v[g * pn]));
            }
        }
        acc
    };
    let functional: Vec<u16> = preimages.iter().map(|v| zeta_hat(v)).collect();
    if functional.iter().all(|&c| c == 0) {
        return Err(CohError::ZeroClass);
    }
    // kernel of the functional inside Ω^m(k), pushed to F_{m-1} coordinates
    let row = Mat::from_rows(f, &[functional]);
    let ker = row.nullspace().row_basis();
    let in_ambient = ker.mul(&sub.basis);
    let ker_sub = Subspace { ambient_dim: sub.ambient_dim, basis: in_ambient.row_basis() };
    let ambient = res.free_module(m - 1);
    ambient.on_invariant_subspace(&ker_sub).map_err(|_| CohError::ZeroClass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grass::enumerate_planes;
    use crate::modrep::{rad_dim, soc_dim};

    #[test]
    fn resolution_ranks_and_exactness() {
        // ranks match C(t+n-1, n-1); d∘d = 0; the dim Ω recursion holds
        let f2 = FqField::prime(2).unwrap();
        let res = Resolution::build(&f2, 2, 4);
        assert_eq!((0..=4).map(|t| res.rank(t)).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
        for t in 2..=4 {
            let dd = res.diffs[t - 1].mul(&res.diffs[t]);
            assert!(dd.is_zero());
        }
        let mut omega_dim = 1usize;
        for mdeg in 1..=4 {
            let (om, _, _) = res.omega_with_preimages(mdeg);
            om.validate().unwrap();
            let expect = res.rank(mdeg - 1) * 4 - omega_dim;
            assert_eq!(om.dim, expect);
            omega_dim = om.dim;
        }
    }

    #[test]
    fn resolution_exactness_p3() {
        let f3 = FqField::prime(3).unwrap();
        let res = Resolution::build(&f3, 2, 3);
        for t in 2..=3 {
            assert!(res.diffs[t - 1].mul(&res.diffs[t]).is_zero());
        }
        // minimality: no unit entries connecting generators directly
        let (om, _, _) = res.omega_with_preimages(2);
        om.validate().unwrap();
        assert_eq!(om.dim, res.rank(1) * 9 - (9 - 1));
    }

    #[test]
    fn omega_dims_p2_n2_are_2t_plus_1() {
        let f2 = FqField::prime(2).unwrap();
        for t in 1..=4 {
            assert_eq!(omega_k(&f2, 2, t).dim, 2 * t + 1);
        }
        assert_eq!(omega_k(&f2, 2, 0).dim, 1);
    }

    #[test]
    fn omega_one_p3_n1() {
        let f3 = FqField::prime(3).unwrap();
        let om = omega_k(&f3, 1, 1);
        assert_eq!(om.dim, 2);
        om.validate().unwrap();
    }

    #[test]
    fn omega_matches_heller_dims() {
        let f2 = FqField::prime(2).unwrap();
        let k = KEModule::trivial(&f2, 3);
        for t in 1..=2 {
            let via_res = omega_k(&f2, 3, t);
            let via_heller = k.heller(t as i64);
            assert_eq!(via_res.dim, via_heller.dim);
            assert_eq!(
                via_res.rad_power(None, 1).unwrap().dim(),
                via_heller.rad_power(None, 1).unwrap().dim()
            );
        }
    }

    #[test]
    fn l_zeta_dimension() {
        // p=2, n=2, ζ = ζ1: dim L_ζ = dim Ω^1(k) - 1 = 2
        let f2 = FqField::prime(2).unwrap();
        let res = Resolution::build(&f2, 2, 1);
        let zeta = CohClass::zeta_monomial(&f2, 2, &[1, 0]);
        let l = l_zeta(&res, &zeta).unwrap();
        assert_eq!(l.dim, 2);
        l.validate().unwrap();
    }

    #[test]
    fn l_zeta_rejects_zero() {
        let f2 = FqField::prime(2).unwrap();
        let res = Resolution::build(&f2, 2, 1);
        let zero = CohClass::zero(&f2, 2);
        assert!(l_zeta(&res, &zero).is_err());
    }

    #[test]
    fn restriction_dichotomy_p2_n3_m1() {
        // ζ = ζ1 over F2, n=3, r=2: dim Rad_U(L_ζ) ∈ {3s+m, 3s+m-2} with the
        // low value exactly on planes inside Z(ζ); Soc_U constant = s+m.
        let f2 = FqField::prime(2).unwrap();
        let res = Resolution::build(&f2, 3, 1);
        let zeta = CohClass::zeta_monomial(&f2, 3, &[1, 0, 0]);
        let l = l_zeta(&res, &zeta).unwrap();
        let m = 1usize;
        let omega_dim = omega_k(&f2, 3, m).dim;
        let s = (omega_dim - (2 * m + 1)) / 4;
        assert_eq!(l.dim, omega_dim - 1);
        for u in enumerate_planes(&f2, 3, 2).unwrap() {
            let ops = l.restricted_ops(&u).unwrap();
            let rad = rad_dim(&ops, 1, 2);
            let soc = soc_dim(&ops, 1, 2);
            let vanishes = zeta.restrict(&u).unwrap().is_zero();
            if vanishes {
                assert_eq!(rad, 3 * s + m - 2);
            } else {
                assert_eq!(rad, 3 * s + m);
            }
            assert_eq!(soc, s + m);
        }
    }

    #[test]
    fn restrict_class_examples() {
        let f2 = FqField::prime(2).unwrap();
        // ζ3 restricted to <x1,x2> is 0
        let z3 = CohClass::zeta_monomial(&f2, 3, &[0, 0, 1]);
        let u =
            Plane::from_span(&Mat::from_ints(&f2, &[vec![1, 0, 0], vec![0, 1, 0]]), 2).unwrap();
        assert!(z3.restrict(&u).unwrap().is_zero());

        // ζ1ζ2 + ζ3ζ4 at <x1,x3> -> 0; at <x1,x2> -> τ1 τ2 ≠ 0
        let mut z = CohClass::zeta_monomial(&f2, 4, &[1, 1, 0, 0]);
        z.add_term(&(Vec::new(), vec![0, 0, 1, 1]), 1);
        let u13 = Plane::from_span(&Mat::from_ints(&f2, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]), 2)
            .unwrap();
        assert!(z.restrict(&u13).unwrap().is_zero());
        let u12 = Plane::from_span(&Mat::from_ints(&f2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]), 2)
            .unwrap();
        let restricted = z.restrict(&u12).unwrap();
        assert!(!restricted.is_zero());
        assert_eq!(restricted.terms.len(), 1);
    }

    #[test]
    fn eta_product_restriction_vanishes_below_rank() {
        // p > 2: a product of s degree-one classes dies on planes of
        // dimension r < s
        let f3 = FqField::prime(3).unwrap();
        let z = CohClass::eta_monomial(&f3, 4, &[1, 2, 3]).unwrap();
        for u in enumerate_planes(&f3, 4, 2).unwrap().take(25) {
            assert!(z.restrict(&u).unwrap().is_zero());
        }
    }

    #[test]
    fn eta_restriction_detects_column_rank() {
        // ζ = η1η2 restricted to U vanishes iff columns 1,2 of the basis
        // matrix have rank <= 1
        let f3 = FqField::prime(3).unwrap();
        let z = CohClass::eta_monomial(&f3, 4, &[1, 2]).unwrap();
        for u in enumerate_planes(&f3, 4, 3).unwrap() {
            let mut cols = Mat::zeros(&f3, 3, 2);
            for i in 0..3 {
                cols.set(i, 0, u.basis.get(i, 0));
                cols.set(i, 1, u.basis.get(i, 1));
            }
            let vanish = z.restrict(&u).unwrap().is_zero();
            assert_eq!(vanish, cols.rank() <= 1);
        }
    }

    #[test]
    fn frobenius_twist_applies_for_odd_p() {
        // over F9 the ζ substitution raises coefficients to the p-th power;
        // the canonical basis row is (1, a), so ζ2 picks up a^p
        let f9 = FqField::new(3, 2, None).unwrap();
        let z = CohClass::zeta_monomial(&f9, 2, &[0, 1]);
        let a = 3u16; // an element outside the prime subfield
        let rows = Mat::from_rows(&f9, &[vec![1, a]]);
        let u = Plane::from_span(&rows, 1).unwrap();
        let restricted = z.restrict(&u).unwrap();
        let coeff = restricted.terms.values().next().copied().unwrap();
        assert_eq!(coeff, f9.frob(a));
        assert_ne!(coeff, a);
    }
}
