//! Grassmannian combinatorics over finite fields: canonical plane forms,
//! exhaustive enumeration by Schubert cell, Plücker coordinate vectors, and
//! chart representatives.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::field::FqField;
use crate::mat::Mat;
use crate::plucker::PluckerIndex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrassError {
    #[error("need 1 <= r <= n, got r={r}, n={n}")]
    BadRange { r: usize, n: usize },
    #[error("plane has zero Plücker coordinate at the requested chart")]
    NotInChart,
}

/// An r-plane U in the fixed n-dimensional space, held in reduced row
/// echelon form so plane equality is matrix equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Plane {
    pub n: usize,
    pub r: usize,
    /// r x n matrix in rref, rows spanning U.
    pub basis: Mat,
    /// Pivot columns of the rref basis.
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Plane{:?}", (0..self.r).map(|i| self.basis.row(i).to_vec()).collect::<Vec<_>>())
    }
}

impl Plane {
    /// Canonicalize a spanning set (rows) into a Plane. Rows must span an
    /// r-dimensional space.
    pub fn from_span(rows: &Mat, r: usize) -> Result<Plane, GrassError> {
        let n = rows.cols();
        if r < 1 || r > n {
            return Err(GrassError::BadRange { r, n });
        }
        let mut m = rows.clone();
        let pivots = m.rref_in_place();
        if pivots.len() != r {
            return Err(GrassError::BadRange { r: pivots.len(), n });
        }
        let mut basis = Mat::zeros(&rows.field, r, n);
        for i in 0..r {
            for j in 0..n {
                basis.set(i, j, m.get(i, j));
            }
        }
        Ok(Plane { n, r, basis, pivots })
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.basis.field
    }

    /// Span of the coordinate vectors indexed by `cols` intersected with U;
    /// returns the dimension.
    pub fn intersection_dim_with_coordinate_subspace(&self, cols: &[usize]) -> usize {
        let f = self.field();
        let mut sub = Mat::zeros(f, cols.len(), self.n);
        for (i, &c) in cols.iter().enumerate() {
            sub.set(i, c, 1);
        }
        self.basis.intersect_rows(&sub).rows()
    }

    /// Whether U contains the standard coordinate vector e_i.
    pub fn contains_coordinate_vector(&self, i: usize) -> bool {
        let mut e = vec![0u16; self.n];
        e[i] = 1;
        self.basis.row_space_contains(&e)
    }

    /// Determinant of the Sigma-submatrix (columns `sigma`) of the basis.
    pub fn minor(&self, sigma: &[usize]) -> u16 {
        let f = self.field();
        let r = self.r;
        assert_eq!(sigma.len(), r);
        let mut sub = Mat::zeros(f, r, r);
        for i in 0..r {
            for (j, &c) in sigma.iter().enumerate() {
                sub.set(i, j, self.basis.get(i, c));
            }
        }
        determinant(&sub)
    }

    /// Full Plücker coordinate vector, indexed by sorted r-subsets in
    /// lexicographic order.
    pub fn plucker(&self) -> Vec<(PluckerIndex, u16)> {
        subsets(self.n, self.r)
            .into_iter()
            .map(|s| {
                let val = self.minor(&s);
                (PluckerIndex::new(s.iter().map(|&c| (c + 1) as u8).collect()), val)
            })
            .collect()
    }

    /// The representative with identity Sigma-submatrix (row operations only).
    pub fn chart_rep(&self, sigma: &[usize]) -> Result<Mat, GrassError> {
        let f = self.field();
        let r = self.r;
        let mut sub = Mat::zeros(f, r, r);
        for i in 0..r {
            for (j, &c) in sigma.iter().enumerate() {
                sub.set(i, j, self.basis.get(i, c));
            }
        }
        if determinant(&sub) == 0 {
            return Err(GrassError::NotInChart);
        }
        let inv = invert(&sub);
        Ok(inv.mul(&self.basis))
    }
}

/// Determinant by elimination; the matrix is small.
pub fn determinant(m: &Mat) -> u16 {
    assert_eq!(m.rows(), m.cols());
    let f = &m.field;
    let n = m.rows();
    let mut a = m.clone();
    let mut det: u16 = 1;
    for c in 0..n {
        let mut piv = None;
        for i in c..n {
            if a.get(i, c) != 0 {
                piv = Some(i);
                break;
            }
        }
        let Some(piv) = piv else { return 0 };
        if piv != c {
            for j in 0..n {
                let (x, y) = (a.get(piv, j), a.get(c, j));
                a.set(piv, j, y);
                a.set(c, j, x);
            }
            det = f.neg(det);
        }
        let d = a.get(c, c);
        det = f.mul(det, d);
        let dinv = f.inv(d);
        for i in c + 1..n {
            let factor = f.mul(a.get(i, c), dinv);
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

fn invert(m: &Mat) -> Mat {
    let n = m.rows();
    let f = &m.field;
    let aug = Mat::hstack(&[m, &Mat::identity(f, n)]);
    let red = aug.rref();
    let mut out = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, red.get(i, n + j));
        }
    }
    out
}

/// Sorted r-subsets of {0,...,n-1} in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, r, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

/// Number of points of Grass(r, F_q^n): the Gaussian binomial coefficient.
pub fn grassmannian_count(q: u64, n: usize, r: usize) -> u128 {
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..r {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((r - i) as u32) - 1;
    }
    num / den
}

/// Exhaustive enumeration of Grass(r, F_q^n), one canonical plane per point,
/// ordered by (pivot set, free entries lexicographic).
pub struct PlaneIter {
    field: Arc<FqField>,
    n: usize,
    r: usize,
    pivot_sets: Vec<Vec<usize>>,
    set_idx: usize,
    free_pos: Vec<(usize, usize)>,
    counter: Vec<u16>,
    exhausted_cell: bool,
}

pub fn enumerate_planes(
    field: &Arc<FqField>,
    n: usize,
    r: usize,
) -> Result<PlaneIter, GrassError> {
    if r < 1 || r > n {
        return Err(GrassError::BadRange { r, n });
    }
    let mut it = PlaneIter {
        field: Arc::clone(field),
        n,
        r,
        pivot_sets: subsets(n, r),
        set_idx: 0,
        free_pos: Vec::new(),
        counter: Vec::new(),
        exhausted_cell: true,
    };
    it.enter_cell();
    Ok(it)
}

impl PlaneIter {
    fn enter_cell(&mut self) {
        if self.set_idx >= self.pivot_sets.len() {
            return;
        }
        let pivots = &self.pivot_sets[self.set_idx];
        self.free_pos.clear();
        for i in 0..self.r {
            for j in pivots[i] + 1..self.n {
                if !pivots.contains(&j) {
                    self.free_pos.push((i, j));
                }
            }
        }
        self.counter = vec![0; self.free_pos.len()];
        self.exhausted_cell = false;
    }

    fn current(&self) -> Plane {
        let pivots = &self.pivot_sets[self.set_idx];
        let mut basis = Mat::zeros(&self.field, self.r, self.n);
        for i in 0..self.r {
            basis.set(i, pivots[i], 1);
        }
        for (k, &(i, j)) in self.free_pos.iter().enumerate() {
            basis.set(i, j, self.counter[k]);
        }
        Plane { n: self.n, r: self.r, basis, pivots: pivots.clone() }
    }

    fn advance(&mut self) {
        let q = self.field.order() as u16;
        // lexicographic: last free position varies fastest
        for k in (0..self.counter.len()).rev() {
            self.counter[k] += 1;
            if self.counter[k] < q {
                return;
            }
            self.counter[k] = 0;
        }
        self.set_idx += 1;
        self.exhausted_cell = true;
        self.enter_cell();
    }
}

impl Iterator for PlaneIter {
    type Item = Plane;
    fn next(&mut self) -> Option<Plane> {
        if self.set_idx >= self.pivot_sets.len() {
            return None;
        }
        let plane = self.current();
        self.advance();
        Some(plane)
    }
}

/// A uniformly random plane via a random full-rank matrix.
pub fn random_plane<R: Rng>(field: &Arc<FqField>, n: usize, r: usize, rng: &mut R) -> Plane {
    let q = field.order() as u16;
    loop {
        let mut m = Mat::zeros(field, r, n);
        for i in 0..r {
            for j in 0..n {
                m.set(i, j, rng.gen_range(0..q));
            }
        }
        if m.rank() == r {
            return Plane::from_span(&m, r).expect("full rank by construction");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_gaussian_binomial() {
        let f2 = FqField::prime(2).unwrap();
        let planes: Vec<_> = enumerate_planes(&f2, 4, 2).unwrap().collect();
        assert_eq!(planes.len(), 35);
        assert_eq!(grassmannian_count(2, 4, 2), 35);

        let f7 = FqField::prime(7).unwrap();
        assert_eq!(grassmannian_count(7, 4, 2), 2850);
        assert_eq!(enumerate_planes(&f7, 4, 2).unwrap().count(), 2850);

        let f3 = FqField::prime(3).unwrap();
        assert_eq!(enumerate_planes(&f3, 3, 3).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let f3 = FqField::prime(3).unwrap();
        let mut seen = HashSet::new();
        for p in enumerate_planes(&f3, 4, 2).unwrap() {
            let key: Vec<u16> = (0..p.r).flat_map(|i| p.basis.row(i).to_vec()).collect();
            assert!(seen.insert(key));
        }
        assert_eq!(seen.len() as u128, grassmannian_count(3, 4, 2));
    }

    #[test]
    fn plucker_of_axis_plane() {
        let f5 = FqField::prime(5).unwrap();
        let basis = Mat::from_ints(&f5, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let u = Plane::from_span(&basis, 2).unwrap();
        let pl = u.plucker();
        for (idx, v) in pl {
            if idx.0 == vec![1, 2] {
                assert_eq!(v, 1);
            } else {
                assert_eq!(v, 0);
            }
        }
    }

    #[test]
    fn plucker_of_shifted_plane() {
        // span(x1+x3, x2+x4): p12=1, p34=1, p14=1, p23=-1, p13=0, p24=0
        let f7 = FqField::prime(7).unwrap();
        let basis = Mat::from_ints(&f7, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        let u = Plane::from_span(&basis, 2).unwrap();
        let get = |a: u8, b: u8| {
            u.plucker().into_iter().find(|(i, _)| i.0 == vec![a, b]).unwrap().1
        };
        assert_eq!(get(1, 2), 1);
        assert_eq!(get(3, 4), 1);
        assert_eq!(get(1, 4), 1);
        assert_eq!(get(2, 3), f7.neg(1));
        assert_eq!(get(1, 3), 0);
        assert_eq!(get(2, 4), 0);
    }

    #[test]
    fn plucker_injective_on_small_grassmannian() {
        let f2 = FqField::prime(2).unwrap();
        let mut seen = HashSet::new();
        for p in enumerate_planes(&f2, 4, 2).unwrap() {
            let vec: Vec<u16> = p.plucker().into_iter().map(|(_, v)| v).collect();
            assert!(seen.insert(vec));
        }
    }

    #[test]
    fn chart_rep_identity_in_own_chart() {
        let f3 = FqField::prime(3).unwrap();
        for u in enumerate_planes(&f3, 4, 2).unwrap().take(20) {
            let rep = u.chart_rep(&u.pivots.clone()).unwrap();
            assert_eq!(rep, u.basis);
        }
    }

    #[test]
    fn chart_rep_shifted() {
        let f5 = FqField::prime(5).unwrap();
        let basis = Mat::from_ints(&f5, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        let u = Plane::from_span(&basis, 2).unwrap();
        let rep = u.chart_rep(&[2, 3]).unwrap();
        // Sigma-submatrix is the identity
        assert_eq!(rep.get(0, 2), 1);
        assert_eq!(rep.get(0, 3), 0);
        assert_eq!(rep.get(1, 2), 0);
        assert_eq!(rep.get(1, 3), 1);
        // still the same plane
        assert_eq!(Plane::from_span(&rep, 2).unwrap(), u);
    }

    #[test]
    fn chart_rep_requires_nonzero_minor() {
        let f2 = FqField::prime(2).unwrap();
        let basis = Mat::from_ints(&f2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let u = Plane::from_span(&basis, 2).unwrap();
        assert_eq!(u.chart_rep(&[2, 3]).unwrap_err(), GrassError::NotInChart);
    }

    #[test]
    fn every_plane_lies_in_its_pivot_chart() {
        let f2 = FqField::prime(2).unwrap();
        for u in enumerate_planes(&f2, 4, 2).unwrap() {
            assert!(u.chart_rep(&u.pivots.clone()).is_ok());
        }
    }

    #[test]
    fn zero_locus_of_p34_is_planes_meeting_x1x2() {
        // membership in Z(p_34) iff U meets <x1,x2> nontrivially, over F3
        let f3 = FqField::prime(3).unwrap();
        for u in enumerate_planes(&f3, 4, 2).unwrap() {
            let p34 = u.minor(&[2, 3]);
            let meets = u.intersection_dim_with_coordinate_subspace(&[0, 1]) > 0;
            assert_eq!(p34 == 0, meets);
        }
    }
}
