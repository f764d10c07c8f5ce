//! Modules over the truncated polynomial algebra `kE = k[x_1,...,x_n]/(x_i^p)`:
//! validation, restriction along r-planes, radical and socle filtrations,
//! Jordan types, duals, sums, tensor products, Heller shifts, and
//! projectivity tests.
//!
//! A module is its dimension plus `n` commuting p-nilpotent action matrices.
//! All vectors are columns in `k^dim`; subspaces store rref row bases so
//! subspace equality is matrix equality.

use std::sync::Arc;

use thiserror::Error;

use crate::field::FqField;
use crate::grass::Plane;
use crate::mat::Mat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModError {
    #[error("action matrices {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("action matrix {0} is not p-nilpotent")]
    NotNilpotent(usize),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("generator rank mismatch")]
    RankMismatch,
    #[error("zero coefficient vector")]
    ZeroVector,
    #[error("subspace is not invariant under the action")]
    NotInvariant,
}

/// A finite dimensional kE-module.
#[derive(Clone, Debug)]
pub struct KEModule {
    pub field: Arc<FqField>,
    pub n: usize,
    pub dim: usize,
    /// Action matrices of the fixed generators x_1,...,x_n.
    pub actions: Vec<Mat>,
}

/// A subspace of the underlying space of a module, stored as an rref row
/// basis so equality of subspaces is equality of matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Mat,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of a vector with respect to the rref basis; None when the
    /// vector lies outside the subspace.
    pub fn coordinates_of(&self, v: &[u16]) -> Option<Vec<u16>> {
        let f = &self.basis.field;
        let mut residual = v.to_vec();
        let mut coords = vec![0u16; self.dim()];
        for i in 0..self.dim() {
            let pv = (0..self.ambient_dim).find(|&j| self.basis.get(i, j) != 0)?;
            let c = residual[pv];
            if c != 0 {
                coords[i] = c;
                for j in 0..self.ambient_dim {
                    let b = self.basis.get(i, j);
                    if b != 0 {
                        residual[j] = f.sub(residual[j], f.mul(c, b));
                    }
                }
            }
        }
        if residual.iter().any(|&x| x != 0) {
            None
        } else {
            Some(coords)
        }
    }
}

/// Jordan type of a p-nilpotent operator: multiset of block sizes, stored as
/// counts per size 1..=p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanType {
    pub block_counts: Vec<usize>,
}

impl JordanType {
    pub fn total_dim(&self) -> usize {
        self.block_counts.iter().enumerate().map(|(i, &c)| (i + 1) * c).sum()
    }
    /// Blocks as a sorted (descending) list, e.g. [2,2,1].
    pub fn blocks(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (i, &c) in self.block_counts.iter().enumerate().rev() {
            for _ in 0..c {
                v.push(i + 1);
            }
        }
        v
    }
    /// True when every block has the maximal size p.
    pub fn is_free_type(&self, p: usize) -> bool {
        self.block_counts.iter().take(p - 1).all(|&c| c == 0)
    }
}

impl KEModule {
    pub fn new(field: &Arc<FqField>, n: usize, actions: Vec<Mat>) -> KEModule {
        let dim = actions.first().map_or(0, |m| m.rows());
        KEModule { field: Arc::clone(field), n, dim, actions }
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// The regular module: kE acting on itself. Basis: monomials with
    /// exponent vectors in {0..p-1}^n, ordered lexicographically with the
    /// first variable's exponent varying slowest.
    pub fn regular(field: &Arc<FqField>, n: usize) -> KEModule {
        let p = field.p() as usize;
        let dim = p.pow(n as u32);
        let mut actions = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = Mat::zeros(field, dim, dim);
            for a in 0..dim {
                let expts = unrank_exponents(a, n, p);
                if expts[i] + 1 < p {
                    let mut e2 = expts.clone();
                    e2[i] += 1;
                    m.set(rank_exponents(&e2, p), a, 1);
                }
            }
            actions.push(m);
        }
        KEModule { field: Arc::clone(field), n, dim, actions }
    }

    /// The quotient algebra kE/(x_i : i in kill) as a kE-module.
    pub fn quotient_by_generators(field: &Arc<FqField>, n: usize, kill: &[usize]) -> KEModule {
        let p = field.p() as usize;
        let alive: Vec<usize> = (0..n).filter(|i| !kill.contains(i)).collect();
        // basis: exponent vectors supported on `alive`
        let dim = p.pow(alive.len() as u32);
        let mut actions = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = Mat::zeros(field, dim, dim);
            if let Some(pos) = alive.iter().position(|&j| j == i) {
                for a in 0..dim {
                    let expts = unrank_exponents(a, alive.len(), p);
                    if expts[pos] + 1 < p {
                        let mut e2 = expts.clone();
                        e2[pos] += 1;
                        m.set(rank_exponents(&e2, p), a, 1);
                    }
                }
            }
            actions.push(m);
        }
        KEModule { field: Arc::clone(field), n, dim, actions }
    }

    /// The trivial module k.
    pub fn trivial(field: &Arc<FqField>, n: usize) -> KEModule {
        let actions = (0..n).map(|_| Mat::zeros(field, 1, 1)).collect();
        KEModule { field: Arc::clone(field), n, dim: 1, actions }
    }

    pub fn validate(&self) -> Result<(), ModError> {
        let p = self.p();
        for (i, x) in self.actions.iter().enumerate() {
            let mut pw = x.clone();
            for _ in 1..p {
                pw = pw.mul(x);
            }
            if !pw.is_zero() {
                return Err(ModError::NotNilpotent(i));
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                let ab = self.actions[i].mul(&self.actions[j]);
                let ba = self.actions[j].mul(&self.actions[i]);
                if ab != ba {
                    return Err(ModError::NonCommuting(i, j));
                }
            }
        }
        Ok(())
    }

    /// The restricted generators along U: T_i = sum_j a_{i,j} X_j for the
    /// canonical rref basis rows (a_{i,j}) of U.
    pub fn restricted_ops(&self, u: &Plane) -> Result<Vec<Mat>, ModError> {
        if *u.field().as_ref() != *self.field.as_ref() || u.n != self.n {
            return Err(ModError::FieldMismatch);
        }
        Ok(self.ops_for_rows(&u.basis))
    }

    fn ops_for_rows(&self, rows: &Mat) -> Vec<Mat> {
        let f = &self.field;
        (0..rows.rows())
            .map(|i| {
                let mut t = Mat::zeros(f, self.dim, self.dim);
                for j in 0..self.n {
                    let c = rows.get(i, j);
                    if c != 0 {
                        t = t.add(&self.actions[j].scale(c));
                    }
                }
                t
            })
            .collect()
    }

    /// The C(U)-module α_U^*(M): an r-generator module with the restricted
    /// operators as actions.
    pub fn restrict(&self, u: &Plane) -> Result<KEModule, ModError> {
        let ops = self.restricted_ops(u)?;
        Ok(KEModule { field: Arc::clone(&self.field), n: u.r, dim: self.dim, actions: ops })
    }

    /// Radical power Rad_U^j(M): the sum of images of all degree-j monomials
    /// in the restricted generators; `plane = None` means the full generator
    /// set.
    pub fn rad_power(&self, plane: Option<&Plane>, j: usize) -> Result<Subspace, ModError> {
        let ops = self.plane_ops(plane)?;
        Ok(rad_subspace(&ops, j, self.p() as usize, self.dim))
    }

    /// Socle power Soc_U^j(M): joint kernel of all degree-j monomials.
    pub fn soc_power(&self, plane: Option<&Plane>, j: usize) -> Result<Subspace, ModError> {
        let ops = self.plane_ops(plane)?;
        Ok(soc_subspace(&ops, j, self.p() as usize, self.dim))
    }

    fn plane_ops(&self, plane: Option<&Plane>) -> Result<Vec<Mat>, ModError> {
        match plane {
            Some(u) => self.restricted_ops(u),
            None => Ok(self.actions.clone()),
        }
    }

    /// dim Rad_U(M) = (p^r - 1)/p^r * dim M characterizes freeness of the
    /// restriction.
    pub fn is_free_over(&self, u: &Plane) -> Result<bool, ModError> {
        let pr = (self.p() as usize).pow(u.r as u32);
        if self.dim % pr != 0 {
            return Ok(false);
        }
        let ops = self.restricted_ops(u)?;
        let rad = rad_dim(&ops, 1, self.p() as usize);
        Ok(rad == (pr - 1) * (self.dim / pr))
    }

    /// Jordan type of u = sum a_i x_i acting on M.
    pub fn jordan_type(&self, coeffs: &[u16]) -> Result<JordanType, ModError> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(ModError::ZeroVector);
        }
        assert_eq!(coeffs.len(), self.n);
        let f = &self.field;
        let mut xu = Mat::zeros(f, self.dim, self.dim);
        for (j, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                xu = xu.add(&self.actions[j].scale(c));
            }
        }
        let p = self.p() as usize;
        // ranks of powers 0..=p+1
        let mut ranks = Vec::with_capacity(p + 2);
        ranks.push(self.dim);
        let mut pw = Mat::identity(f, self.dim);
        for _ in 1..=p + 1 {
            pw = pw.mul(&xu);
            ranks.push(pw.rank());
        }
        let mut counts = vec![0usize; p];
        for j in 1..=p {
            counts[j - 1] = ranks[j - 1] + ranks[j + 1] - 2 * ranks[j];
        }
        let jt = JordanType { block_counts: counts };
        debug_assert_eq!(jt.total_dim(), self.dim);
        Ok(jt)
    }

    /// Dual module with the antipode baked in: actions -(X_i)^T.
    pub fn dual(&self) -> KEModule {
        let actions = self.actions.iter().map(|x| x.transpose().neg()).collect();
        KEModule { field: Arc::clone(&self.field), n: self.n, dim: self.dim, actions }
    }

    pub fn direct_sum(&self, other: &KEModule) -> Result<KEModule, ModError> {
        if *self.field != *other.field {
            return Err(ModError::FieldMismatch);
        }
        if self.n != other.n {
            return Err(ModError::RankMismatch);
        }
        let f = &self.field;
        let dim = self.dim + other.dim;
        let actions = (0..self.n)
            .map(|i| {
                let mut m = Mat::zeros(f, dim, dim);
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        m.set(a, b, self.actions[i].get(a, b));
                    }
                }
                for a in 0..other.dim {
                    for b in 0..other.dim {
                        m.set(self.dim + a, self.dim + b, other.actions[i].get(a, b));
                    }
                }
                m
            })
            .collect();
        Ok(KEModule { field: Arc::clone(f), n: self.n, dim, actions })
    }

    /// Tensor product over the primitively generated coproduct:
    /// x_i acts as X_i (x) I + I (x) X_i.
    pub fn tensor(&self, other: &KEModule) -> Result<KEModule, ModError> {
        if *self.field != *other.field {
            return Err(ModError::FieldMismatch);
        }
        if self.n != other.n {
            return Err(ModError::RankMismatch);
        }
        let f = &self.field;
        let ida = Mat::identity(f, self.dim);
        let idb = Mat::identity(f, other.dim);
        let actions = (0..self.n)
            .map(|i| self.actions[i].kron(&idb).add(&ida.kron(&other.actions[i])))
            .collect();
        Ok(KEModule { field: Arc::clone(f), n: self.n, dim: self.dim * other.dim, actions })
    }

    /// The socle element ω = x_1^{p-1} ... x_n^{p-1} as an operator.
    fn omega_op(&self) -> Mat {
        let p = self.p() as usize;
        let mut m = Mat::identity(&self.field, self.dim);
        for x in &self.actions {
            for _ in 0..p - 1 {
                m = m.mul(x);
            }
        }
        m
    }

    /// Projectivity via the socle element: M is projective iff
    /// rank(ω) = dim M / p^n.
    pub fn is_projective(&self) -> bool {
        let pn = (self.p() as usize).pow(self.n as u32);
        if self.dim % pn != 0 {
            return false;
        }
        self.omega_op().rank() == self.dim / pn
    }

    /// Split off all free direct summands; returns the stable part.
    pub fn split_free(&self) -> KEModule {
        let mut cur = self.clone();
        loop {
            let omega = cur.omega_op();
            // find m with ω·m != 0: a column of omega that is nonzero
            let col = (0..cur.dim).find(|&c| (0..cur.dim).any(|r| omega.get(r, c) != 0));
            let Some(col) = col else { return cur };
            let m: Vec<u16> = unit_vector(cur.dim, col);
            cur = cur.split_one_free(&m);
        }
    }

    /// Split kE·m off as a free rank-1 summand, where ω·m != 0. The
    /// complement is the kernel of v -> (λ(g·v))_g for a functional λ dual
    /// to ω·m on the free submodule.
    fn split_one_free(&self, m: &[u16]) -> KEModule {
        let f = &self.field;
        let p = self.p() as usize;
        let pn = p.pow(self.n as u32);
        // basis of kE·m: monomial operators applied to m
        let monos = all_monomial_ops(&self.actions, p, f, self.dim);
        assert_eq!(monos.len(), pn);
        let omega_m = monos.last().unwrap().apply(m);
        debug_assert!(omega_m.iter().any(|&c| c != 0));
        // λ: extract a coordinate where ω·m is nonzero, normalized
        let pos = omega_m.iter().position(|&c| c != 0).unwrap();
        let scale = f.inv(omega_m[pos]);
        // complement = { v : λ(g·v) = 0 for all monomials g }
        let mut constraint = Mat::zeros(f, pn, self.dim);
        for (k, g) in monos.iter().enumerate() {
            for cdx in 0..self.dim {
                // λ(g·e_c) = scale * (g)_{pos,c}
                constraint.set(k, cdx, f.mul(scale, g.get(pos, cdx)));
            }
        }
        let ker = constraint.nullspace().row_basis();
        debug_assert_eq!(ker.rows(), self.dim - pn);
        let sub = Subspace { ambient_dim: self.dim, basis: ker };
        self.on_invariant_subspace(&sub).expect("complement of a free summand is a submodule")
    }

    /// Heller shift Ω^t; t = 0 splits off free summands.
    pub fn heller(&self, t: i64) -> KEModule {
        if t == 0 {
            return self.split_free();
        }
        if t > 0 {
            let mut cur = self.split_free();
            for _ in 0..t {
                cur = cur.omega_once();
            }
            cur
        } else {
            self.dual().heller(-t).dual()
        }
    }

    /// Kernel of a projective cover kE^t -> M, t = dim M/Rad(M).
    fn omega_once(&self) -> KEModule {
        let f = &self.field;
        let p = self.p() as usize;
        let pn = p.pow(self.n as u32);
        let rad = self.rad_power(None, 1).unwrap();
        let top_dim = self.dim - rad.dim();
        if top_dim == 0 {
            // zero module
            return KEModule {
                field: Arc::clone(f),
                n: self.n,
                dim: 0,
                actions: (0..self.n).map(|_| Mat::zeros(f, 0, 0)).collect(),
            };
        }
        // lift a basis of M/Rad M: unit vectors at non-pivot columns of rad
        let pivots: Vec<usize> = (0..rad.dim())
            .map(|i| (0..self.dim).find(|&j| rad.basis.get(i, j) != 0).unwrap())
            .collect();
        let lifts: Vec<Vec<u16>> = (0..self.dim)
            .filter(|c| !pivots.contains(c))
            .map(|c| unit_vector(self.dim, c))
            .collect();
        debug_assert_eq!(lifts.len(), top_dim);
        // cover map kE^top -> M: (i, monomial a) -> X^a lift_i
        let monos = all_monomial_ops(&self.actions, p, f, self.dim);
        let mut cover = Mat::zeros(f, self.dim, top_dim * pn);
        for (i, lift) in lifts.iter().enumerate() {
            for (a, g) in monos.iter().enumerate() {
                let v = g.apply(lift);
                for rdx in 0..self.dim {
                    cover.set(rdx, i * pn + a, v[rdx]);
                }
            }
        }
        let ker = cover.nullspace().row_basis();
        // ambient actions on kE^top: block diagonal regular actions
        let reg = KEModule::regular(f, self.n);
        let ambient: Vec<Mat> = (0..self.n)
            .map(|idx| {
                let mut m = Mat::zeros(f, top_dim * pn, top_dim * pn);
                for b in 0..top_dim {
                    for rr in 0..pn {
                        for cc in 0..pn {
                            let v = reg.actions[idx].get(rr, cc);
                            if v != 0 {
                                m.set(b * pn + rr, b * pn + cc, v);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        let ambient_mod =
            KEModule { field: Arc::clone(f), n: self.n, dim: top_dim * pn, actions: ambient };
        let sub = Subspace { ambient_dim: top_dim * pn, basis: ker };
        ambient_mod.on_invariant_subspace(&sub).expect("kernel of a module map is a submodule")
    }

    /// The submodule generated by the given vectors (columns), with its
    /// induced module structure.
    pub fn submodule_generated(&self, vectors: &[Vec<u16>]) -> (Subspace, KEModule) {
        let f = &self.field;
        let mut span = Mat::from_rows(f, &vectors.to_vec()).row_basis();
        loop {
            let mut grew = false;
            let mut rows: Vec<Vec<u16>> = (0..span.rows()).map(|i| span.row(i).to_vec()).collect();
            for x in &self.actions {
                for i in 0..span.rows() {
                    let img = x.apply(span.row(i));
                    if !span.row_space_contains(&img) {
                        rows.push(img);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
            span = Mat::from_rows(f, &rows).row_basis();
        }
        let sub = Subspace { ambient_dim: self.dim, basis: span };
        let induced = self.on_invariant_subspace(&sub).expect("closure is invariant");
        (sub, induced)
    }

    /// Induced module on an invariant subspace (rref row basis).
    pub fn on_invariant_subspace(&self, sub: &Subspace) -> Result<KEModule, ModError> {
        let f = &self.field;
        let s = sub.dim();
        let pivots: Vec<usize> = (0..s)
            .map(|i| (0..sub.ambient_dim).find(|&j| sub.basis.get(i, j) != 0).unwrap())
            .collect();
        let mut actions = Vec::with_capacity(self.n);
        for x in &self.actions {
            let mut m = Mat::zeros(f, s, s);
            for c in 0..s {
                let img = x.apply(sub.basis.row(c));
                // coordinates w.r.t. the rref basis: read pivot entries
                let mut residual = img.clone();
                for (i, &pv) in pivots.iter().enumerate() {
                    let coeff = residual[pv];
                    if coeff != 0 {
                        m.set(i, c, coeff);
                        for j in 0..sub.ambient_dim {
                            let b = sub.basis.get(i, j);
                            if b != 0 {
                                residual[j] = f.sub(residual[j], f.mul(coeff, b));
                            }
                        }
                    }
                }
                if residual.iter().any(|&v| v != 0) {
                    return Err(ModError::NotInvariant);
                }
            }
            actions.push(m);
        }
        Ok(KEModule { field: Arc::clone(f), n: self.n, dim: s, actions })
    }

    /// Quotient module M/S for an invariant subspace S.
    pub fn quotient(&self, sub: &Subspace) -> Result<KEModule, ModError> {
        let f = &self.field;
        let pivots: Vec<usize> = (0..sub.dim())
            .map(|i| (0..sub.ambient_dim).find(|&j| sub.basis.get(i, j) != 0).unwrap())
            .collect();
        let free_cols: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let qdim = free_cols.len();
        let reduce = |v: &[u16]| -> Vec<u16> {
            let mut w = v.to_vec();
            for (i, &pv) in pivots.iter().enumerate() {
                let coeff = w[pv];
                if coeff != 0 {
                    for j in 0..self.dim {
                        let b = sub.basis.get(i, j);
                        if b != 0 {
                            w[j] = f.sub(w[j], f.mul(coeff, b));
                        }
                    }
                }
            }
            free_cols.iter().map(|&c| w[c]).collect()
        };
        // invariance check
        for x in &self.actions {
            for i in 0..sub.dim() {
                let img = x.apply(sub.basis.row(i));
                if reduce(&img).iter().any(|&v| v != 0) {
                    return Err(ModError::NotInvariant);
                }
            }
        }
        let mut actions = Vec::with_capacity(self.n);
        for x in &self.actions {
            let mut m = Mat::zeros(f, qdim, qdim);
            for (c, &fc) in free_cols.iter().enumerate() {
                let img = x.apply(&unit_vector(self.dim, fc));
                let coords = reduce(&img);
                for rdx in 0..qdim {
                    m.set(rdx, c, coords[rdx]);
                }
            }
            actions.push(m);
        }
        Ok(KEModule { field: Arc::clone(f), n: self.n, dim: qdim, actions })
    }

    /// Entrywise scalar extension from the prime field.
    pub fn extend_scalars(&self, bigger: &Arc<FqField>) -> Result<KEModule, ModError> {
        if *self.field == **bigger {
            return Ok(self.clone());
        }
        if !bigger.extends_prime_of(&self.field) {
            return Err(ModError::FieldMismatch);
        }
        let actions = self
            .actions
            .iter()
            .map(|x| {
                let mut m = Mat::zeros(bigger, self.dim, self.dim);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, x.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(KEModule { field: Arc::clone(bigger), n: self.n, dim: self.dim, actions })
    }
}

pub(crate) fn unit_vector(dim: usize, pos: usize) -> Vec<u16> {
    let mut v = vec![0u16; dim];
    v[pos] = 1;
    v
}

pub(crate) fn unrank_exponents(mut a: usize, n: usize, p: usize) -> Vec<usize> {
    let mut e = vec![0usize; n];
    for i in (0..n).rev() {
        e[i] = a % p;
        a /= p;
    }
    e
}

pub(crate) fn rank_exponents(e: &[usize], p: usize) -> usize {
    e.iter().fold(0, |acc, &x| acc * p + x)
}

/// All exponent tuples of length r with entries < p summing to j.
pub fn degree_j_exponents(r: usize, j: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; r];
    fn rec(pos: usize, left: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..p.min(left + 1) {
            cur[pos] = e;
            rec(pos + 1, left - e, p, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, j, p, &mut cur, &mut out);
    out
}

/// The operators of all degree-j monomials in the given commuting generators.
pub fn monomial_ops(ops: &[Mat], j: usize, p: usize) -> Vec<Mat> {
    let r = ops.len();
    let field = &ops[0].field;
    let dim = ops[0].rows();
    // cache powers of each generator
    let powers: Vec<Vec<Mat>> = ops
        .iter()
        .map(|x| {
            let mut pw = vec![Mat::identity(field, dim)];
            for e in 1..p {
                pw.push(pw[e - 1].mul(x));
            }
            pw
        })
        .collect();
    degree_j_exponents(r, j, p)
        .into_iter()
        .map(|expts| {
            let mut m: Option<Mat> = None;
            for (i, &e) in expts.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                m = Some(match m {
                    None => powers[i][e].clone(),
                    Some(acc) => acc.mul(&powers[i][e]),
                });
            }
            m.unwrap_or_else(|| Mat::identity(field, dim))
        })
        .collect()
}

/// All p^r monomial operators (every exponent tuple), ordered like the
/// regular module basis.
fn all_monomial_ops(ops: &[Mat], p: usize, field: &Arc<FqField>, dim: usize) -> Vec<Mat> {
    let r = ops.len();
    let total = p.pow(r as u32);
    let powers: Vec<Vec<Mat>> = ops
        .iter()
        .map(|x| {
            let mut pw = vec![Mat::identity(field, dim)];
            for e in 1..p {
                pw.push(pw[e - 1].mul(x));
            }
            pw
        })
        .collect();
    (0..total)
        .map(|a| {
            let expts = unrank_exponents(a, r, p);
            let mut m = Mat::identity(field, dim);
            for (i, &e) in expts.iter().enumerate() {
                if e > 0 {
                    m = m.mul(&powers[i][e]);
                }
            }
            m
        })
        .collect()
}

/// dim of the sum of images of all degree-j monomials. Zero when j exceeds
/// r(p-1) and no monomials remain.
pub fn rad_dim(ops: &[Mat], j: usize, p: usize) -> usize {
    let monos = monomial_ops(ops, j, p);
    if monos.is_empty() {
        return 0;
    }
    let cols: Vec<Mat> = monos.iter().map(|m| m.transpose()).collect();
    let refs: Vec<&Mat> = cols.iter().collect();
    Mat::vstack(&refs).rank()
}

/// dim of the joint kernel of all degree-j monomials; all of M when no
/// monomials remain.
pub fn soc_dim(ops: &[Mat], j: usize, p: usize) -> usize {
    let dim = ops[0].rows();
    let monos = monomial_ops(ops, j, p);
    if monos.is_empty() {
        return dim;
    }
    let refs: Vec<&Mat> = monos.iter().collect();
    dim - Mat::vstack(&refs).rank()
}

pub(crate) fn rad_subspace(ops: &[Mat], j: usize, p: usize, dim: usize) -> Subspace {
    let monos = monomial_ops(ops, j, p);
    if monos.is_empty() {
        return Subspace {
            ambient_dim: dim,
            basis: Mat::zeros(&ops[0].field, 0, dim),
        };
    }
    let cols: Vec<Mat> = monos.iter().map(|m| m.transpose()).collect();
    let refs: Vec<&Mat> = cols.iter().collect();
    Subspace { ambient_dim: dim, basis: Mat::vstack(&refs).row_basis() }
}

pub(crate) fn soc_subspace(ops: &[Mat], j: usize, p: usize, dim: usize) -> Subspace {
    let monos = monomial_ops(ops, j, p);
    if monos.is_empty() {
        return Subspace {
            ambient_dim: dim,
            basis: Mat::identity(&ops[0].field, dim),
        };
    }
    let refs: Vec<&Mat> = monos.iter().collect();
    Subspace { ambient_dim: dim, basis: Mat::vstack(&refs).nullspace().row_basis() }
}
