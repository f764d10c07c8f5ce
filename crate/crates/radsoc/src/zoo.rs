//! Constructors for the module families under study: truncated-algebra
//! subquotients, exterior and symmetric subquotients, and the quantum
//! complete intersection modules `W_a(s, q)`.

use std::sync::Arc;

use thiserror::Error;

use crate::field::FqField;
use crate::mat::Mat;
use crate::modrep::KEModule;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZooError {
    #[error("degree range out of bounds")]
    BadRange,
    #[error("quantum parameter must be nonzero")]
    ZeroParameter,
    #[error("quantum parameter grid is not inverse-antisymmetric")]
    BadGrid,
}

/// The matrix of quantum parameters: q_{ii} = 1 and q_{ji} = q_{ij}^{-1};
/// entry (i, j) is the factor picked up when z_i moves right past z_j.
#[derive(Clone, Debug)]
pub struct QMatrix {
    pub field: Arc<FqField>,
    pub n: usize,
    grid: Vec<u16>,
}

impl QMatrix {
    pub fn new(field: &Arc<FqField>, n: usize, grid: Vec<u16>) -> Result<QMatrix, ZooError> {
        assert_eq!(grid.len(), n * n);
        if grid.iter().any(|&c| c == 0) {
            return Err(ZooError::ZeroParameter);
        }
        for i in 0..n {
            if grid[i * n + i] != 1 {
                return Err(ZooError::BadGrid);
            }
            for j in 0..n {
                if field.mul(grid[i * n + j], grid[j * n + i]) != 1 {
                    return Err(ZooError::BadGrid);
                }
            }
        }
        Ok(QMatrix { field: Arc::clone(field), n, grid })
    }

    /// All parameters equal: q below the diagonal, q^{-1} above. This is the
    /// orientation that reproduces the displayed action matrices of the
    /// uniform-parameter examples entrywise.
    pub fn uniform(field: &Arc<FqField>, n: usize, q: u16) -> Result<QMatrix, ZooError> {
        if q == 0 {
            return Err(ZooError::ZeroParameter);
        }
        let qinv = field.inv(q);
        let mut grid = vec![1u16; n * n];
        for i in 0..n {
            for j in 0..n {
                if i > j {
                    grid[i * n + j] = q;
                } else if i < j {
                    grid[i * n + j] = qinv;
                }
            }
        }
        QMatrix::new(field, n, grid)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.grid[i * self.n + j]
    }
}

/// Monomials of the given total degree with each exponent <= cap, in
/// descending lexicographic order of exponent tuples.
fn bounded_monomials(n: usize, degree: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(pos: usize, left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = cap.min(left);
        for e in (0..=hi).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cap, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, degree, cap, &mut cur, &mut out);
    out
}

/// Degree distribution of k[x_1..x_n]/(x_i^p): coefficient of t^d in
/// (1 + t + ... + t^{p-1})^n.
pub fn truncated_dims(p: usize, n: usize) -> Vec<usize> {
    let mut coeffs = vec![1usize];
    for _ in 0..n {
        let mut next = vec![0usize; coeffs.len() + p - 1];
        for (d, &c) in coeffs.iter().enumerate() {
            for e in 0..p {
                next[d + e] += c;
            }
        }
        coeffs = next;
    }
    coeffs
}

/// Rad^i(kE)/Rad^j(kE): basis the monomials of degree in [i, j).
pub fn truncated_subquotient(
    field: &Arc<FqField>,
    n: usize,
    i: usize,
    j: usize,
) -> Result<KEModule, ZooError> {
    let p = field.p() as usize;
    let top = n * (p - 1) + 1;
    if i >= j || j > top {
        return Err(ZooError::BadRange);
    }
    let cap = p - 1;
    let mut basis: Vec<Vec<usize>> = Vec::new();
    for d in i..j {
        basis.extend(bounded_monomials(n, d, cap));
    }
    let dim = basis.len();
    let mut actions = Vec::with_capacity(n);
    for gen in 0..n {
        let mut mat = Mat::zeros(field, dim, dim);
        for (c, mono) in basis.iter().enumerate() {
            if mono[gen] + 1 < p {
                let mut m2 = mono.clone();
                m2[gen] += 1;
                if let Some(rdix) = basis.iter().position(|b| *b == m2) {
                    mat.set(rdix, c, 1);
                }
            }
        }
        actions.push(mat);
    }
    Ok(KEModule { field: Arc::clone(field), n, dim, actions })
}

/// Rad^i(Λ*(V))/Rad^{i+2}(Λ*(V)): wedge monomials of degrees i, i+1 with the
/// generators acting by left wedge (signs land in the killed degree, so the
/// action is well defined and commutative).
pub fn exterior_subquotient(
    field: &Arc<FqField>,
    n: usize,
    i: usize,
) -> Result<KEModule, ZooError> {
    if i > n {
        return Err(ZooError::BadRange);
    }
    let mut basis: Vec<Vec<usize>> = crate::grass::subsets(n, i);
    let top_start = basis.len();
    if i + 1 <= n {
        basis.extend(crate::grass::subsets(n, i + 1));
    }
    let dim = basis.len();
    let mut actions = Vec::with_capacity(n);
    for gen in 0..n {
        let mut mat = Mat::zeros(field, dim, dim);
        for (c, set) in basis.iter().enumerate().take(top_start) {
            if set.contains(&gen) {
                continue;
            }
            let smaller = set.iter().filter(|&&s| s < gen).count();
            let mut s2 = set.clone();
            s2.push(gen);
            s2.sort();
            let rdix = top_start
                + basis[top_start..].iter().position(|b| *b == s2).expect("wedge target exists");
            let sign = if smaller % 2 == 0 { 1 } else { field.neg(1) };
            mat.set(rdix, c, sign);
        }
        actions.push(mat);
    }
    Ok(KEModule { field: Arc::clone(field), n, dim, actions })
}

/// S^{*>=i}(V)/S^{*>=j}(V) with 1 <= j-i <= p: monomials of degrees i..j-1
/// with unbounded exponents; multiplication truncates above.
pub fn symmetric_truncation(
    field: &Arc<FqField>,
    n: usize,
    i: usize,
    j: usize,
) -> Result<KEModule, ZooError> {
    let p = field.p() as usize;
    if i >= j || j - i > p {
        return Err(ZooError::BadRange);
    }
    graded_multiplication_module(field, n, i, j, usize::MAX)
}

/// Rad^i(kG)/Rad^j(kG) for kG = k[y_1..y_n]/(y^{p^mexp}), with 1 <= j-i <= p.
pub fn kg_subquotient(
    field: &Arc<FqField>,
    mexp: u32,
    n: usize,
    i: usize,
    j: usize,
) -> Result<KEModule, ZooError> {
    let p = field.p() as usize;
    if i >= j || j - i > p {
        return Err(ZooError::BadRange);
    }
    let cap = p.pow(mexp) - 1;
    if j > n * cap + 1 {
        return Err(ZooError::BadRange);
    }
    graded_multiplication_module(field, n, i, j, cap)
}

fn graded_multiplication_module(
    field: &Arc<FqField>,
    n: usize,
    i: usize,
    j: usize,
    cap: usize,
) -> Result<KEModule, ZooError> {
    let mut basis: Vec<Vec<usize>> = Vec::new();
    for d in i..j {
        basis.extend(bounded_monomials(n, d, cap.min(d)));
    }
    let dim = basis.len();
    let mut actions = Vec::with_capacity(n);
    for gen in 0..n {
        let mut mat = Mat::zeros(field, dim, dim);
        for (c, mono) in basis.iter().enumerate() {
            if mono[gen] + 1 > cap {
                continue;
            }
            let mut m2 = mono.clone();
            m2[gen] += 1;
            if let Some(rdix) = basis.iter().position(|b| *b == m2) {
                mat.set(rdix, c, 1);
            }
        }
        actions.push(mat);
    }
    Ok(KEModule { field: Arc::clone(field), n, dim, actions })
}

/// The subquotient W_a(s, q) = I^a/I^{a+2} of the truncated quantum complete
/// intersection, as a kE-module via multiplication by the classes of z_i.
///
/// Basis: normal-ordered monomials z^α with |α| ∈ {a, a+1} and α_i <= s-1,
/// degree a first, each degree in descending lex order. Moving z_i past
/// z_j^{α_j} (j < i) contributes q.get(i,j)^{α_j}.
pub fn w_module(
    field: &Arc<FqField>,
    n: usize,
    s: usize,
    a: usize,
    q: &QMatrix,
) -> Result<KEModule, ZooError> {
    if s <= 1 || a > n * (s - 1) - 1 {
        return Err(ZooError::BadRange);
    }
    assert_eq!(q.n, n);
    let cap = s - 1;
    let mut basis = bounded_monomials(n, a, cap);
    let top_start = basis.len();
    basis.extend(bounded_monomials(n, a + 1, cap));
    let dim = basis.len();
    let mut actions = Vec::with_capacity(n);
    for gen in 0..n {
        let mut mat = Mat::zeros(field, dim, dim);
        for (c, mono) in basis.iter().enumerate().take(top_start) {
            if mono[gen] + 1 > cap {
                continue;
            }
            let mut coeff = 1u16;
            for j in 0..gen {
                if mono[j] > 0 {
                    coeff = field.mul(coeff, field.pow(q.get(gen, j), mono[j] as u64));
                }
            }
            let mut m2 = mono.clone();
            m2[gen] += 1;
            let rdix = top_start
                + basis[top_start..].iter().position(|b| *b == m2).expect("target monomial");
            mat.set(rdix, c, coeff);
        }
        actions.push(mat);
    }
    Ok(KEModule { field: Arc::clone(field), n, dim, actions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grass::enumerate_planes;
    use crate::modrep::{rad_dim, soc_dim};

    #[test]
    fn truncated_two_step() {
        let f2 = FqField::prime(2).unwrap();
        let m = truncated_subquotient(&f2, 4, 0, 2).unwrap();
        assert_eq!(m.dim, 5);
        m.validate().unwrap();
    }

    #[test]
    fn truncated_dims_p3_n4() {
        // (1+t+t^2)^4 = 1,4,10,16,19,16,10,4,1
        assert_eq!(truncated_dims(3, 4), vec![1, 4, 10, 16, 19, 16, 10, 4, 1]);
        let f3 = FqField::prime(3).unwrap();
        let m = truncated_subquotient(&f3, 4, 4, 6).unwrap();
        assert_eq!(m.dim, 19 + 16);
        let m2 = truncated_subquotient(&f3, 4, 6, 8).unwrap();
        assert_eq!(m2.dim, 10 + 4);
        m.validate().unwrap();
        m2.validate().unwrap();
    }

    #[test]
    fn truncated_bad_range() {
        let f2 = FqField::prime(2).unwrap();
        assert_eq!(truncated_subquotient(&f2, 4, 3, 3).unwrap_err(), ZooError::BadRange);
        assert_eq!(truncated_subquotient(&f2, 4, 0, 6).unwrap_err(), ZooError::BadRange);
    }

    #[test]
    fn exterior_top_and_socle_ranks() {
        // Rad^{n-1}(Λ*), n=4: dim 5; soc over any 2-plane has dim n-r+1 = 3
        let f2 = FqField::prime(2).unwrap();
        let m = exterior_subquotient(&f2, 4, 3).unwrap();
        assert_eq!(m.dim, 5);
        m.validate().unwrap();
        for u in enumerate_planes(&f2, 4, 2).unwrap() {
            let ops = m.restricted_ops(&u).unwrap();
            assert_eq!(soc_dim(&ops, 1, 2), 3);
        }
    }

    #[test]
    fn exterior_twist_socle_rank() {
        // Rad^r(Λ*)/Rad^{r+2}, n=4, r=2 over F5: Soc_U has dim 1 + C(4,3) = 5
        let f5 = FqField::prime(5).unwrap();
        let m = exterior_subquotient(&f5, 4, 2).unwrap();
        m.validate().unwrap();
        for u in enumerate_planes(&f5, 4, 2).unwrap() {
            let ops = m.restricted_ops(&u).unwrap();
            assert_eq!(soc_dim(&ops, 1, 5), 5);
        }
    }

    #[test]
    fn exterior_top_is_trivial() {
        let f3 = FqField::prime(3).unwrap();
        let m = exterior_subquotient(&f3, 4, 4).unwrap();
        assert_eq!(m.dim, 1);
        assert!(m.actions.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn symmetric_truncation_low_degrees_match_truncated() {
        // degrees < p: same matrices as kE/Rad^2
        let f5 = FqField::prime(5).unwrap();
        let s = symmetric_truncation(&f5, 3, 0, 2).unwrap();
        let t = truncated_subquotient(&f5, 3, 0, 2).unwrap();
        assert_eq!(s.dim, t.dim);
        for (a, b) in s.actions.iter().zip(&t.actions) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn symmetric_truncation_constant_ranks() {
        // S^{*>=1}/S^{*>=3} over F5, n=3: dim 3 + 6 = 9; constant radical and
        // socle values over full line and plane sweeps
        let f5 = FqField::prime(5).unwrap();
        let m = symmetric_truncation(&f5, 3, 1, 3).unwrap();
        assert_eq!(m.dim, 9);
        m.validate().unwrap();
        for r in [1usize, 2] {
            let mut rad_vals = std::collections::HashSet::new();
            let mut soc_vals = std::collections::HashSet::new();
            for u in enumerate_planes(&f5, 3, r).unwrap() {
                let ops = m.restricted_ops(&u).unwrap();
                rad_vals.insert(rad_dim(&ops, 1, 5));
                soc_vals.insert(soc_dim(&ops, 1, 5));
            }
            assert_eq!(rad_vals.len(), 1);
            assert_eq!(soc_vals.len(), 1);
        }
    }

    #[test]
    fn symmetric_truncation_range_check() {
        let f2 = FqField::prime(2).unwrap();
        assert_eq!(symmetric_truncation(&f2, 3, 0, 3).unwrap_err(), ZooError::BadRange);
    }

    #[test]
    fn kg_subquotient_dimension() {
        // p=2, mexp=2, n=2, degrees 2..3 with exponents < 4
        let f2 = FqField::prime(2).unwrap();
        let m = kg_subquotient(&f2, 2, 2, 2, 4).unwrap();
        // deg 2: (2,0),(1,1),(0,2); deg 3: (3,0),(2,1),(1,2),(0,3)
        assert_eq!(m.dim, 7);
        m.validate().unwrap();
    }

    #[test]
    fn w_module_n2_zigzag() {
        // n=2, a < s-1: y·(z^i t^j) picks up q.get(1,0)^i
        let f7 = FqField::prime(7).unwrap();
        let qm = QMatrix::uniform(&f7, 2, 3).unwrap();
        let m = w_module(&f7, 2, 4, 2, &qm).unwrap();
        m.validate().unwrap();
        // basis deg 2 (desc lex): (2,0),(1,1),(0,2); deg 3: (3,0),(2,1),(1,2),(0,3)
        let y = &m.actions[1];
        // z^2 = (2,0) at index 0 maps to (2,1) at index 3+1 = 4
        assert_eq!(y.get(4, 0), f7.pow(3, 2));
    }

    #[test]
    fn w_module_nonconst_matrices() {
        // n=3, s=2, a=1, uniform q: the action matrices of the rank-one
        // layer match the displayed A_x, A_y, A_z
        let f5 = FqField::prime(5).unwrap();
        let q = 2u16;
        let qm = QMatrix::uniform(&f5, 3, q).unwrap();
        let m = w_module(&f5, 3, 2, 1, &qm).unwrap();
        assert_eq!(m.dim, 6);
        m.validate().unwrap();
        // basis: degree 1 desc lex: x=(1,0,0), y=(0,1,0), z=(0,0,1);
        // degree 2: xy=(1,1,0), xz=(1,0,1), yz=(0,1,1).
        // Expected bottom-left blocks:
        // A_x = [[0,1,0],[0,0,1],[0,0,0]]
        // A_y = [[q,0,0],[0,0,0],[0,0,1]]
        // A_z = [[0,0,0],[q,0,0],[0,q,0]]
        let block = |x: &Mat| {
            let mut rows = Vec::new();
            for i in 3..6 {
                rows.push((0..3).map(|j| x.get(i, j)).collect::<Vec<u16>>());
            }
            rows
        };
        assert_eq!(block(&m.actions[0]), vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(block(&m.actions[1]), vec![vec![q, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]);
        assert_eq!(block(&m.actions[2]), vec![vec![0, 0, 0], vec![q, 0, 0], vec![0, q, 0]]);
    }

    #[test]
    fn w6_dimension_14() {
        let f7 = FqField::prime(7).unwrap();
        let zeta = f7.root_of_unity(3).unwrap().code;
        let qm = QMatrix::uniform(&f7, 4, zeta).unwrap();
        let m = w_module(&f7, 4, 3, 6, &qm).unwrap();
        assert_eq!(m.dim, 14);
        m.validate().unwrap();
        // Rad(M) is the degree-7 layer, dim 4
        assert_eq!(m.rad_power(None, 1).unwrap().dim(), 4);
    }

    #[test]
    fn w_module_range_checks() {
        let f7 = FqField::prime(7).unwrap();
        let qm = QMatrix::uniform(&f7, 3, 2).unwrap();
        assert_eq!(w_module(&f7, 3, 1, 0, &qm).unwrap_err(), ZooError::BadRange);
        assert_eq!(w_module(&f7, 3, 2, 3, &qm).unwrap_err(), ZooError::BadRange);
        assert_eq!(QMatrix::uniform(&f7, 3, 0).unwrap_err(), ZooError::ZeroParameter);
    }

    #[test]
    fn w_equal_images_property() {
        // a >= (n-r)(s-1) forces Rad_U(W_a) = Rad(W_a) for every U
        let f2 = FqField::prime(2).unwrap();
        let qm = QMatrix::uniform(&f2, 4, 1).unwrap();
        for a in 2..=3 {
            let m = w_module(&f2, 4, 2, a, &qm).unwrap();
            let full = m.rad_power(None, 1).unwrap();
            for u in enumerate_planes(&f2, 4, 2).unwrap() {
                let rad = m.rad_power(Some(&u), 1).unwrap();
                assert_eq!(rad, full);
            }
        }
    }
}
