//! The global degree-one operator over the Plücker coordinate ring, its
//! degree-by-degree kernel generator search, generator verification
//! (exact kernel membership, specialization ranks), and the chart
//! transition identity.
//!
//! The graded operator is only formed for modules with Rad^2(M) = 0 (where
//! it maps cosets into the radical); the unrestricted operator is available
//! plane-wise through specialization.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::FqField;
use crate::grass::{determinant, enumerate_planes, subsets, Plane};
use crate::mat::Mat;
use crate::modrep::{KEModule, Subspace};
use crate::plucker::{standard_monomials, PluckerIndex, PluckerMonomial, PluckerPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BundleError {
    #[error("the graded kernel search requires Rad^2(M) = 0")]
    Rad2Required,
    #[error("need 1 <= r < n")]
    BadRank,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("transition identity failed at a sampled chart point (component {w:?})")]
    Mismatch { w: Vec<u8> },
}

/// An element of (M/Rad M) ⊗ A of a single degree: one homogeneous
/// normalized polynomial per coset basis vector.
#[derive(Clone, Debug)]
pub struct GradedVector {
    pub n: usize,
    pub r: usize,
    pub degree: usize,
    pub coeffs: Vec<PluckerPoly>,
}

impl GradedVector {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Equality up to a nonzero scalar found by matching leading standard
    /// monomials, with both sides in normal form.
    pub fn eq_up_to_scalar(&self, other: &GradedVector) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        let a: Vec<PluckerPoly> = self.coeffs.iter().map(|c| c.straighten()).collect();
        let b: Vec<PluckerPoly> = other.coeffs.iter().map(|c| c.straighten()).collect();
        // find the first common coordinate carrying a term
        let mut scalar = None;
        for (pa, pb) in a.iter().zip(&b) {
            match (pa.terms.iter().next(), pb.terms.iter().next()) {
                (None, None) => continue,
                (Some((ma, &ca)), Some((mb, &cb))) if ma == mb => {
                    let f = &pa.field;
                    scalar = Some(f.mul(cb, f.inv(ca)));
                    break;
                }
                _ => return false,
            }
        }
        let Some(c) = scalar else { return true }; // both zero
        a.iter().zip(&b).all(|(pa, pb)| pa.scale(c).terms == pb.terms)
    }
}

/// Context for the graded operator of a fixed module with Rad^2 = 0.
pub struct ThetaContext {
    pub module: KEModule,
    pub r: usize,
    pub rad: Subspace,
    /// ambient column indices serving as coset representatives of M/Rad M
    pub coset_cols: Vec<usize>,
    /// the (r-1)-subsets indexing the operator components, 1-based, lex order
    pub w_sets: Vec<Vec<u8>>,
}

impl ThetaContext {
    pub fn new(m: &KEModule, r: usize) -> Result<ThetaContext, BundleError> {
        if r < 1 || r >= m.n {
            return Err(BundleError::BadRank);
        }
        let rad2 = m.rad_power(None, 2).expect("full radical");
        if rad2.dim() != 0 {
            return Err(BundleError::Rad2Required);
        }
        let rad = m.rad_power(None, 1).expect("full radical");
        let pivots: Vec<usize> = (0..rad.dim())
            .map(|i| (0..m.dim).find(|&j| rad.basis.get(i, j) != 0).unwrap())
            .collect();
        let coset_cols: Vec<usize> = (0..m.dim).filter(|c| !pivots.contains(c)).collect();
        let w_sets: Vec<Vec<u8>> = subsets(m.n, r - 1)
            .into_iter()
            .map(|s| s.into_iter().map(|c| (c + 1) as u8).collect())
            .collect();
        Ok(ThetaContext { module: m.clone(), r, rad, coset_cols, w_sets })
    }

    pub fn cosets(&self) -> usize {
        self.coset_cols.len()
    }

    /// Apply the graded operator to a vector: one normalized polynomial of
    /// degree deg+1 per (component W, radical basis index).
    pub fn apply(&self, v: &GradedVector) -> Vec<Vec<PluckerPoly>> {
        let f = &self.module.field;
        let n = self.module.n;
        let mut out: Vec<Vec<PluckerPoly>> = self
            .w_sets
            .iter()
            .map(|_| (0..self.rad.dim()).map(|_| PluckerPoly::zero(f, n, self.r)).collect())
            .collect();
        for (t, &col) in self.coset_cols.iter().enumerate() {
            if v.coeffs[t].is_zero() {
                continue;
            }
            for (wi, w) in self.w_sets.iter().enumerate() {
                for i in 0..n {
                    let iu8 = (i + 1) as u8;
                    if w.contains(&iu8) {
                        continue;
                    }
                    // X_i applied to the coset representative
                    let img = self.module.actions[i].apply(&unit(self.module.dim, col));
                    let coords = self.rad.coordinates_of(&img).expect("Rad^2 = 0");
                    if coords.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let u_count = w.iter().filter(|&&j| j < iu8).count();
                    let mut union: Vec<u8> = w.clone();
                    union.push(iu8);
                    union.sort();
                    let mono = self.coordinate_poly(&union).mul(&v.coeffs[t]);
                    let signed = if u_count % 2 == 1 { mono.scale(f.neg(1)) } else { mono };
                    for (rho, &c) in coords.iter().enumerate() {
                        if c != 0 {
                            out[wi][rho] = out[wi][rho].add(&signed.scale(c));
                        }
                    }
                }
            }
        }
        for row in &mut out {
            for p in row.iter_mut() {
                *p = p.straighten();
            }
        }
        out
    }

    fn coordinate_poly(&self, idx: &[u8]) -> PluckerPoly {
        PluckerPoly::coordinate(&self.module.field, self.module.n, self.r, PluckerIndex::new(idx.to_vec()))
    }

    /// Whether the operator kills the vector, exactly.
    pub fn kills(&self, v: &GradedVector) -> bool {
        self.apply(v).iter().all(|row| row.iter().all(|p| p.is_zero()))
    }

    /// The matrix of the degree-d piece: columns (coset, standard monomial
    /// of degree d), rows (component W, radical index, standard monomial of
    /// degree d+1).
    pub fn matrix_at_degree(&self, d: usize) -> ThetaMatrix {
        let f = &self.module.field;
        let n = self.module.n;
        let col_monos = standard_monomials(n, self.r, d);
        let row_monos = standard_monomials(n, self.r, d + 1);
        let row_index: BTreeMap<&PluckerMonomial, usize> =
            row_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rad_dim = self.rad.dim();
        let rows = self.w_sets.len() * rad_dim * row_monos.len();
        let cols = self.cosets() * col_monos.len();
        let mut mat = Mat::zeros(f, rows, cols);
        for (t, &col) in self.coset_cols.iter().enumerate() {
            // images of the coset representative under every generator
            let images: Vec<Vec<u16>> = (0..n)
                .map(|i| {
                    let img = self.module.actions[i].apply(&unit(self.module.dim, col));
                    self.rad.coordinates_of(&img).expect("Rad^2 = 0")
                })
                .collect();
            for (mi, mu) in col_monos.iter().enumerate() {
                let cidx = t * col_monos.len() + mi;
                for (wi, w) in self.w_sets.iter().enumerate() {
                    for i in 0..n {
                        let iu8 = (i + 1) as u8;
                        if w.contains(&iu8) {
                            continue;
                        }
                        let coords = &images[i];
                        if coords.iter().all(|&c| c == 0) {
                            continue;
                        }
                        let u_count = w.iter().filter(|&&j| j < iu8).count();
                        let mut union: Vec<u8> = w.clone();
                        union.push(iu8);
                        union.sort();
                        let prod = self
                            .coordinate_poly(&union)
                            .mul(&monomial_poly(f, n, self.r, mu))
                            .straighten();
                        for (nu, &cpoly) in &prod.terms {
                            let ni = row_index[nu];
                            for (rho, &c) in coords.iter().enumerate() {
                                if c == 0 {
                                    continue;
                                }
                                let mut val = f.mul(c, cpoly);
                                if u_count % 2 == 1 {
                                    val = f.neg(val);
                                }
                                let ridx = (wi * rad_dim + rho) * row_monos.len() + ni;
                                let old = mat.get(ridx, cidx);
                                mat.set(ridx, cidx, f.add(old, val));
                            }
                        }
                    }
                }
            }
        }
        ThetaMatrix { degree: d, mat, col_monos, row_monos }
    }
}

fn unit(dim: usize, pos: usize) -> Vec<u16> {
    let mut v = vec![0u16; dim];
    v[pos] = 1;
    v
}

fn monomial_poly(f: &Arc<FqField>, n: usize, r: usize, m: &PluckerMonomial) -> PluckerPoly {
    let mut p = PluckerPoly::zero(f, n, r);
    p.add_term(m.clone(), 1);
    p
}

/// The degree-d matrix of the graded operator with its index bookkeeping.
pub struct ThetaMatrix {
    pub degree: usize,
    pub mat: Mat,
    pub col_monos: Vec<PluckerMonomial>,
    pub row_monos: Vec<PluckerMonomial>,
}

/// Degree-by-degree kernel generator search: at each degree the nullspace
/// modulo (degree-one coordinates) x (previous kernel); only new generators
/// are emitted, in a deterministic order.
pub fn kernel_generators(
    m: &KEModule,
    r: usize,
    d_max: usize,
) -> Result<Vec<GradedVector>, BundleError> {
    let ctx = ThetaContext::new(m, r)?;
    let f = &ctx.module.field;
    let n = ctx.module.n;
    let mut out = Vec::new();
    let mut prev_kernel: Vec<GradedVector> = kernel_at_degree(&ctx, 0);
    for d in 1..=d_max {
        let kernel = kernel_at_degree(&ctx, d);
        if kernel.is_empty() {
            prev_kernel = kernel;
            continue;
        }
        let monos = standard_monomials(n, r, d);
        let width = ctx.cosets() * monos.len();
        // span of A_1 * (kernel at degree d-1)
        let mut old_rows: Vec<Vec<u16>> = Vec::new();
        let indices: Vec<PluckerIndex> = subsets(n, r)
            .into_iter()
            .map(|s| PluckerIndex::new(s.into_iter().map(|c| (c + 1) as u8).collect()))
            .collect();
        for g in &prev_kernel {
            for idx in &indices {
                let shifted: Vec<PluckerPoly> =
                    g.coeffs.iter().map(|c| c.mul_coordinate(idx).straighten()).collect();
                old_rows.push(vector_of(&shifted, &monos, width, ctx.cosets()));
            }
        }
        let mut span = if old_rows.is_empty() {
            Mat::zeros(f, 0, width)
        } else {
            Mat::from_rows(f, &old_rows).row_basis()
        };
        for g in &kernel {
            let vec = vector_of(&g.coeffs, &monos, width, ctx.cosets());
            if !span.row_space_contains(&vec) {
                out.push(g.clone());
                let with = Mat::vstack(&[&span, &Mat::from_rows(f, &[vec])]);
                span = with.row_basis();
            }
        }
        prev_kernel = kernel;
    }
    Ok(out)
}

fn kernel_at_degree(ctx: &ThetaContext, d: usize) -> Vec<GradedVector> {
    let theta = ctx.matrix_at_degree(d);
    let ns = theta.mat.nullspace().row_basis();
    let monos = &theta.col_monos;
    let f = &ctx.module.field;
    let n = ctx.module.n;
    (0..ns.rows())
        .map(|i| {
            let mut coeffs: Vec<PluckerPoly> =
                (0..ctx.cosets()).map(|_| PluckerPoly::zero(f, n, ctx.r)).collect();
            for (c, &v) in ns.row(i).iter().enumerate() {
                if v != 0 {
                    let t = c / monos.len();
                    let mi = c % monos.len();
                    coeffs[t].add_term(monos[mi].clone(), v);
                }
            }
            for p in coeffs.iter_mut() {
                *p = p.straighten();
            }
            GradedVector { n, r: ctx.r, degree: d, coeffs }
        })
        .collect()
}

fn vector_of(
    coeffs: &[PluckerPoly],
    monos: &[PluckerMonomial],
    width: usize,
    cosets: usize,
) -> Vec<u16> {
    let mut v = vec![0u16; width];
    let index: BTreeMap<&PluckerMonomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    for t in 0..cosets {
        for (m, &c) in &coeffs[t].terms {
            v[t * monos.len() + index[m]] = c;
        }
    }
    v
}

/// Evaluate every coefficient polynomial at the plane's Plücker vector; the
/// plane may live over an extension of the vector's prime field.
pub fn specialize(v: &GradedVector, u: &Plane) -> Result<Vec<u16>, BundleError> {
    if u.n != v.n || u.r != v.r {
        return Err(BundleError::FieldMismatch);
    }
    let field = u.field();
    if !(**field == *v.coeffs[0].field || field.extends_prime_of(&v.coeffs[0].field)) {
        return Err(BundleError::FieldMismatch);
    }
    let coords: BTreeMap<PluckerIndex, u16> = u.plucker().into_iter().collect();
    Ok(v.coeffs
        .iter()
        .map(|p| {
            let mut acc = 0u16;
            for (m, &c) in &p.terms {
                let mut prod = c;
                for idx in &m.0 {
                    prod = field.mul(prod, *coords.get(idx).unwrap_or(&0));
                    if prod == 0 {
                        break;
                    }
                }
                acc = field.add(acc, prod);
            }
            acc
        })
        .collect())
}

/// Min and max over all planes of the dimension spanned by the specialized
/// generators, plus the constancy verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSweep {
    pub min: usize,
    pub max: usize,
}

impl RankSweep {
    pub fn constant(&self) -> bool {
        self.min == self.max
    }
}

pub fn bundle_rank_sweep(
    gens: &[GradedVector],
    field: &Arc<FqField>,
) -> Result<RankSweep, BundleError> {
    assert!(!gens.is_empty());
    let (n, r) = (gens[0].n, gens[0].r);
    let mut min = usize::MAX;
    let mut max = 0usize;
    for u in enumerate_planes(field, n, r).expect("valid range") {
        let rows: Vec<Vec<u16>> =
            gens.iter().map(|g| specialize(g, &u)).collect::<Result<_, _>>()?;
        let rank = Mat::from_rows(field, &rows).rank();
        min = min.min(rank);
        max = max.max(rank);
    }
    Ok(RankSweep { min, max })
}

/// Verify the chart transition identity at random points of the Σ-chart:
/// with B_{j,W} = (-1)^{j+1} det(rows W of the chart matrix, column j
/// deleted), the row of restricted operators satisfies [θ_j]·B = [ϑ_W]
/// entrywise, and the columns of B at W = Σ \ {σ_j} form a signed identity
/// diag((-1)^{j+1}).
pub fn transition_check(
    m: &KEModule,
    sigma: &[usize],
    trials: usize,
    seed: u64,
) -> Result<(), BundleError> {
    let f = &m.field;
    let n = m.n;
    let r = sigma.len();
    let q = f.order() as u16;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w_sets: Vec<Vec<usize>> = subsets(n, r - 1);
    for _ in 0..trials {
        // random chart matrix: n x r with identity in the Σ rows
        let mut y = Mat::zeros(f, n, r);
        for (j, &s) in sigma.iter().enumerate() {
            y.set(s, j, 1);
        }
        for i in 0..n {
            if sigma.contains(&i) {
                continue;
            }
            for j in 0..r {
                y.set(i, j, rng.gen_range(0..q));
            }
        }
        // restricted operators θ_j = Σ_i Y_{i,j} X_i
        let thetas: Vec<Mat> = (0..r)
            .map(|j| {
                let mut t = Mat::zeros(f, m.dim, m.dim);
                for i in 0..n {
                    let c = y.get(i, j);
                    if c != 0 {
                        t = t.add(&m.actions[i].scale(c));
                    }
                }
                t
            })
            .collect();
        let minor_of = |rows: &[usize]| -> Mat {
            let mut sub = Mat::zeros(f, rows.len(), r);
            for (a, &i) in rows.iter().enumerate() {
                for j in 0..r {
                    sub.set(a, j, y.get(i, j));
                }
            }
            sub
        };
        for w in &w_sets {
            // column of B at W
            let b_col: Vec<u16> = (0..r)
                .map(|j| {
                    let sub = minor_of(w);
                    let mut reduced = Mat::zeros(f, w.len(), r - 1);
                    for a in 0..w.len() {
                        let mut cc = 0;
                        for jj in 0..r {
                            if jj == j {
                                continue;
                            }
                            reduced.set(a, cc, sub.get(a, jj));
                            cc += 1;
                        }
                    }
                    let det = determinant(&reduced);
                    if j % 2 == 1 {
                        f.neg(det)
                    } else {
                        det
                    }
                })
                .collect();
            // [θ_j]·B at W
            let mut lhs = Mat::zeros(f, m.dim, m.dim);
            for j in 0..r {
                if b_col[j] != 0 {
                    lhs = lhs.add(&thetas[j].scale(b_col[j]));
                }
            }
            // ϑ_W = Σ_{i∉W} (-1)^{u(W,i)} p_{W∪{i}}(Y) X_i
            let mut rhs = Mat::zeros(f, m.dim, m.dim);
            for i in 0..n {
                if w.contains(&i) {
                    continue;
                }
                let mut union = w.clone();
                union.push(i);
                union.sort();
                let p = determinant(&minor_of(&union));
                if p == 0 {
                    continue;
                }
                let u_count = w.iter().filter(|&&j| j < i).count();
                let c = if u_count % 2 == 1 { f.neg(p) } else { p };
                rhs = rhs.add(&m.actions[i].scale(c));
            }
            if lhs != rhs {
                return Err(BundleError::Mismatch {
                    w: w.iter().map(|&i| (i + 1) as u8).collect(),
                });
            }
            // the designated columns form the signed identity
            if w.iter().all(|i| sigma.contains(i)) {
                let j_star = (0..r).position(|j| !w.contains(&sigma[j])).unwrap();
                for j in 0..r {
                    let expect = if j == j_star {
                        if j_star % 2 == 1 {
                            f.neg(1)
                        } else {
                            1
                        }
                    } else {
                        0
                    };
                    if b_col[j] != expect {
                        return Err(BundleError::Mismatch {
                            w: w.iter().map(|&i| (i + 1) as u8).collect(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Compare the nullity of the specialized global operator at U with
/// dim Soc_U(M); these agree for every module and plane.
pub fn kernel_dimension_check(m: &KEModule, r: usize, u: &Plane) -> Result<bool, BundleError> {
    if u.n != m.n {
        return Err(BundleError::FieldMismatch);
    }
    let f = &m.field;
    let coords: BTreeMap<PluckerIndex, u16> = u.plucker().into_iter().collect();
    let w_sets: Vec<Vec<u8>> = subsets(m.n, r - 1)
        .into_iter()
        .map(|s| s.into_iter().map(|c| (c + 1) as u8).collect())
        .collect();
    let mut blocks = Vec::new();
    for w in &w_sets {
        let mut block = Mat::zeros(f, m.dim, m.dim);
        for i in 0..m.n {
            let iu8 = (i + 1) as u8;
            if w.contains(&iu8) {
                continue;
            }
            let mut union = w.clone();
            union.push(iu8);
            union.sort();
            let p = *coords.get(&PluckerIndex::new(union)).unwrap_or(&0);
            if p == 0 {
                continue;
            }
            let u_count = w.iter().filter(|&&j| j < iu8).count();
            let c = if u_count % 2 == 1 { f.neg(p) } else { p };
            block = block.add(&m.actions[i].scale(c));
        }
        blocks.push(block);
    }
    let refs: Vec<&Mat> = blocks.iter().collect();
    let stacked = Mat::vstack(&refs);
    let nullity = m.dim - stacked.rank();
    let soc = m.soc_power(Some(u), 1).map_err(|_| BundleError::FieldMismatch)?.dim();
    Ok(nullity == soc)
}

/// The generating family of the rank n-r kernel bundle of the top exterior
/// subquotient: w_S = Σ_{j∈S} (-1)^{u(S,j)} f_j ⊗ p_{S∖{j}} over the
/// (r+1)-subsets S, with u(S,j) = #{i ∈ S : i <= j}. The wedge action on
/// f_j carries the sign (-1)^{j-1}, which the extra alternating factor
/// converts into the plain one-arrow basis the coefficients presume.
pub fn delta_generators(ctx: &ThetaContext) -> Vec<GradedVector> {
    let f = &ctx.module.field;
    let n = ctx.module.n;
    let r = ctx.r;
    // coset index of f_j: the basis of the exterior subquotient lists the
    // (n-1)-subsets in lex order; f_j omits j.
    let coset_of_fj = |j: usize| -> usize {
        let all: Vec<Vec<usize>> = subsets(n, n - 1);
        let want: Vec<usize> = (0..n).filter(|&i| i != j - 1).collect();
        all.iter().position(|s| *s == want).expect("subset present")
    };
    subsets(n, r + 1)
        .into_iter()
        .map(|s0| {
            let s: Vec<u8> = s0.iter().map(|&c| (c + 1) as u8).collect();
            let mut coeffs: Vec<PluckerPoly> =
                (0..ctx.cosets()).map(|_| PluckerPoly::zero(f, n, r)).collect();
            for &j in &s {
                let u_count = s.iter().filter(|&&i| i <= j).count();
                let rest: Vec<u8> = s.iter().copied().filter(|&i| i != j).collect();
                let parity = (u_count + j as usize + 1) % 2;
                let sign = if parity == 1 { f.neg(1) } else { 1 };
                coeffs[coset_of_fj(j as usize)]
                    .add_term(PluckerMonomial::single(PluckerIndex::new(rest)), sign);
            }
            GradedVector { n, r, degree: 1, coeffs }
        })
        .collect()
}

