//! Dense matrices over `F_{p^m}` with exact Gaussian elimination.
//!
//! Entries are element codes; all arithmetic goes through the owning field's
//! lookup tables. Row-major storage, desk-scale dimensions.

use std::fmt;
use std::sync::Arc;

use crate::field::FqField;

#[derive(Clone)]
pub struct Mat {
    pub field: Arc<FqField>,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over F_{}", self.rows, self.cols, self.field.order())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && *self.field == *other.field
    }
}
impl Eq for Mat {}

impl Mat {
    pub fn zeros(field: &Arc<FqField>, rows: usize, cols: usize) -> Mat {
        Mat { field: Arc::clone(field), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Arc<FqField>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Arc<FqField>, rows: &[Vec<u16>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { field: Arc::clone(field), rows: r, cols: c, data }
    }

    /// Build from signed integers (residues in the prime subfield).
    pub fn from_ints(field: &Arc<FqField>, rows: &[Vec<i64>]) -> Mat {
        let coded: Vec<Vec<u16>> =
            rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect();
        Mat::from_rows(field, &coded)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }
    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { field: Arc::clone(f), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { field: Arc::clone(f), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Mat { field: Arc::clone(f), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u16) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { field: Arc::clone(f), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = k * other.cols;
                let srow = i * other.cols;
                for j in 0..other.cols {
                    let prod = f.mul(a, other.data[orow + j]);
                    out.data[srow + j] = f.add(out.data[srow + j], prod);
                }
            }
        }
        out
    }

    /// Apply to a column vector given as a slice of codes.
    pub fn apply(&self, v: &[u16]) -> Vec<u16> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut out = vec![0u16; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u16;
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (a, &x) in row.iter().zip(v) {
                if *a != 0 && x != 0 {
                    acc = f.add(acc, f.mul(*a, x));
                }
            }
            out[i] = acc;
        }
        out
    }

    /// Stack vertically.
    pub fn vstack(mats: &[&Mat]) -> Mat {
        assert!(!mats.is_empty());
        let field = Arc::clone(&mats[0].field);
        let cols = mats[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for m in mats {
            assert_eq!(m.cols, cols, "shape mismatch in vstack");
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Mat { field, rows, cols, data }
    }

    /// Concatenate horizontally.
    pub fn hstack(mats: &[&Mat]) -> Mat {
        assert!(!mats.is_empty());
        let field = Arc::clone(&mats[0].field);
        let rows = mats[0].rows;
        let cols: usize = mats.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(&field, rows, cols);
        let mut off = 0;
        for m in mats {
            assert_eq!(m.rows, rows, "shape mismatch in hstack");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j));
                }
            }
            off += m.cols;
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = f.mul(a, other.get(k, l));
                        out.set(i * other.rows + k, j * other.cols + l, v);
                    }
                }
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = Arc::clone(&self.field);
        let mut pivots = Vec::new();
        let mut pr = 0; // pivot row
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            // find pivot
            let mut sel = None;
            for i in pr..self.rows {
                if self.get(i, pc) != 0 {
                    sel = Some(i);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pr {
                for j in 0..self.cols {
                    self.data.swap(sel * self.cols + j, pr * self.cols + j);
                }
            }
            // normalize pivot row
            let pinv = f.inv(self.get(pr, pc));
            if pinv != 1 {
                for j in pc..self.cols {
                    let v = self.get(pr, j);
                    self.set(pr, j, f.mul(v, pinv));
                }
            }
            // eliminate everywhere else
            for i in 0..self.rows {
                if i == pr {
                    continue;
                }
                let factor = self.get(i, pc);
                if factor == 0 {
                    continue;
                }
                self.set(i, pc, 0);
                for j in pc + 1..self.cols {
                    let s = self.get(pr, j);
                    if s != 0 {
                        let v = self.get(i, j);
                        self.set(i, j, f.sub(v, f.mul(factor, s)));
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Mat {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the row space, as a matrix of rref rows (zero rows dropped).
    pub fn row_basis(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let r = pivots.len();
        let mut out = Mat::zeros(&self.field, r, self.cols);
        for i in 0..r {
            for j in 0..self.cols {
                out.set(i, j, m.get(i, j));
            }
        }
        out
    }

    /// Basis of the column space (image), returned as rows of the transpose
    /// row basis; each row is an image vector.
    pub fn image(&self) -> Mat {
        self.transpose().row_basis()
    }

    /// Basis of the right nullspace {x : A x = 0}, rows are basis vectors.
    pub fn nullspace(&self) -> Mat {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                let v = m.get(pi, fc);
                if v != 0 {
                    out.set(k, pc, f.neg(v));
                }
            }
        }
        out
    }

    /// Basis of the intersection of the row spaces of `self` and `other`.
    pub fn intersect_rows(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "shape mismatch in intersect");
        // Zassenhaus: row-reduce [A A; B 0]; rows with zero left half carry
        // the intersection in the right half.
        let f = &self.field;
        let n = self.cols;
        let mut big = Mat::zeros(f, self.rows + other.rows, 2 * n);
        for i in 0..self.rows {
            for j in 0..n {
                let v = self.get(i, j);
                big.set(i, j, v);
                big.set(i, n + j, v);
            }
        }
        for i in 0..other.rows {
            for j in 0..n {
                big.set(self.rows + i, j, other.get(i, j));
            }
        }
        big.rref_in_place();
        let mut rows = Vec::new();
        for i in 0..big.rows {
            let left_zero = (0..n).all(|j| big.get(i, j) == 0);
            let right = (0..n).map(|j| big.get(i, n + j)).collect::<Vec<_>>();
            if left_zero && right.iter().any(|&v| v != 0) {
                rows.push(right);
            }
        }
        if rows.is_empty() {
            Mat::zeros(f, 0, n)
        } else {
            Mat::from_rows(f, &rows).row_basis()
        }
    }

    /// Solve A x = b; returns None when inconsistent.
    pub fn solve(&self, b: &[u16]) -> Option<Vec<u16>> {
        assert_eq!(self.rows, b.len());
        let f = &self.field;
        let mut aug = Mat::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![0u16; self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(pi, self.cols);
        }
        Some(x)
    }

    /// Membership of a row vector in the row space of an rref basis.
    pub fn row_space_contains(&self, v: &[u16]) -> bool {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        let mut v = v.to_vec();
        for i in 0..self.rows {
            // pivot column of row i
            let Some(pc) = (0..self.cols).find(|&j| self.get(i, j) != 0) else { continue };
            if v[pc] != 0 {
                let factor = f.mul(v[pc], f.inv(self.get(i, pc)));
                for j in 0..self.cols {
                    let s = self.get(i, j);
                    if s != 0 {
                        v[j] = f.sub(v[j], f.mul(factor, s));
                    }
                }
            }
        }
        v.iter().all(|&c| c == 0)
    }
}
