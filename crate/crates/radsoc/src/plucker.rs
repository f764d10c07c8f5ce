//! The homogeneous coordinate ring of the Grassmannian: polynomials in the
//! Plücker variables `p_Σ` with a normal form modulo the straightening
//! relations. Two polynomials are equal in the ring iff their normal forms
//! coincide; a randomized evaluation check is available as independent
//! cross-validation but is never the primary equality.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::field::FqField;

/// A sorted r-subset of {1,...,n}, the index of one Plücker coordinate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PluckerIndex(pub Vec<u8>);

impl PluckerIndex {
    pub fn new(v: Vec<u8>) -> PluckerIndex {
        assert!(v.windows(2).all(|w| w[0] < w[1]), "index must be strictly increasing");
        PluckerIndex(v)
    }

    /// Sort an arbitrary tuple, returning the sign of the permutation, or
    /// None if an entry repeats.
    pub fn sort_signed(v: &[u8]) -> Option<(PluckerIndex, bool)> {
        let mut v = v.to_vec();
        let mut swaps = 0usize;
        for i in 0..v.len() {
            for j in (i + 1..v.len()).rev() {
                if v[j - 1] > v[j] {
                    v.swap(j - 1, j);
                    swaps += 1;
                }
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((PluckerIndex(v), swaps % 2 == 1))
    }
}

impl fmt::Debug for PluckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0.iter().map(|i| i.to_string()).collect::<String>())
    }
}

/// A monomial: a sorted multiset of Plücker indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PluckerMonomial(pub Vec<PluckerIndex>);

impl PluckerMonomial {
    pub fn one() -> PluckerMonomial {
        PluckerMonomial(Vec::new())
    }
    pub fn single(idx: PluckerIndex) -> PluckerMonomial {
        PluckerMonomial(vec![idx])
    }
    pub fn from_rows(mut rows: Vec<PluckerIndex>) -> PluckerMonomial {
        rows.sort();
        PluckerMonomial(rows)
    }
    pub fn degree(&self) -> usize {
        self.0.len()
    }
    pub fn mul(&self, other: &PluckerMonomial) -> PluckerMonomial {
        let mut rows = self.0.clone();
        rows.extend(other.0.iter().cloned());
        PluckerMonomial::from_rows(rows)
    }

    /// A monomial is standard when its lex-sorted rows form a tableau with
    /// weakly increasing columns, i.e. every consecutive pair is
    /// componentwise <=.
    pub fn is_standard(&self) -> bool {
        self.first_violation().is_none()
    }

    fn first_violation(&self) -> Option<(usize, usize)> {
        for k in 0..self.0.len().saturating_sub(1) {
            let a = &self.0[k].0;
            let b = &self.0[k + 1].0;
            if let Some(c) = (0..a.len()).find(|&c| a[c] > b[c]) {
                return Some((k, c));
            }
        }
        None
    }
}

impl fmt::Debug for PluckerMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for idx in &self.0 {
            write!(f, "{:?}", idx)?;
        }
        Ok(())
    }
}

/// A polynomial in the Plücker coordinates of Grass(r, n).
#[derive(Clone)]
pub struct PluckerPoly {
    pub field: Arc<FqField>,
    pub n: usize,
    pub r: usize,
    pub terms: BTreeMap<PluckerMonomial, u16>,
    pub normalized: bool,
}

impl fmt::Debug for PluckerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("{}*{:?}", c, m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl PartialEq for PluckerPoly {
    fn eq(&self, other: &Self) -> bool {
        self.straighten().terms == other.straighten().terms
    }
}
impl Eq for PluckerPoly {}

impl PluckerPoly {
    pub fn zero(field: &Arc<FqField>, n: usize, r: usize) -> PluckerPoly {
        PluckerPoly { field: Arc::clone(field), n, r, terms: BTreeMap::new(), normalized: true }
    }

    pub fn coordinate(field: &Arc<FqField>, n: usize, r: usize, idx: PluckerIndex) -> PluckerPoly {
        let mut p = PluckerPoly::zero(field, n, r);
        p.add_term(PluckerMonomial::single(idx), 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn add_term(&mut self, m: PluckerMonomial, c: u16) {
        if c == 0 {
            return;
        }
        let f = Arc::clone(&self.field);
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = f.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&m);
        }
        self.normalized = false;
    }

    pub fn add(&self, other: &PluckerPoly) -> PluckerPoly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u16) -> PluckerPoly {
        let mut out = PluckerPoly::zero(&self.field, self.n, self.r);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out.normalized = self.normalized;
        out
    }

    pub fn sub(&self, other: &PluckerPoly) -> PluckerPoly {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn mul(&self, other: &PluckerPoly) -> PluckerPoly {
        let mut out = PluckerPoly::zero(&self.field, self.n, self.r);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_coordinate(&self, idx: &PluckerIndex) -> PluckerPoly {
        let mut out = PluckerPoly::zero(&self.field, self.n, self.r);
        for (m, &c) in &self.terms {
            out.add_term(m.mul(&PluckerMonomial::single(idx.clone())), c);
        }
        out
    }

    /// Rewrite to the unique standard-monomial normal form by repeated
    /// application of the exchange relations.
    pub fn straighten(&self) -> PluckerPoly {
        if self.normalized {
            return self.clone();
        }
        let f = &self.field;
        let mut work: Vec<(PluckerMonomial, u16)> =
            self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        let mut out: BTreeMap<PluckerMonomial, u16> = BTreeMap::new();
        let mut steps = 0usize;
        while let Some((mono, coeff)) = work.pop() {
            if coeff == 0 {
                continue;
            }
            steps += 1;
            assert!(steps < 2_000_000, "straightening did not terminate");
            match mono.first_violation() {
                None => {
                    let e = out.entry(mono.clone()).or_insert(0);
                    *e = f.add(*e, coeff);
                    if *e == 0 {
                        out.remove(&mono);
                    }
                }
                Some((k, c)) => {
                    let rest: Vec<PluckerIndex> = mono
                        .0
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != k && i != k + 1)
                        .map(|(_, x)| x.clone())
                        .collect();
                    let alpha = &mono.0[k].0;
                    let beta = &mono.0[k + 1].0;
                    for (sign, na, nb) in exchange_terms(alpha, beta, c) {
                        let mut rows = rest.clone();
                        rows.push(na);
                        rows.push(nb);
                        let new_mono = PluckerMonomial::from_rows(rows);
                        // original = -sum of the other splittings
                        let mut nc = f.mul(coeff, f.neg(1));
                        if sign {
                            nc = f.neg(nc);
                        }
                        work.push((new_mono, nc));
                    }
                }
            }
        }
        PluckerPoly { field: Arc::clone(f), n: self.n, r: self.r, terms: out, normalized: true }
    }

    /// Evaluate at a Plücker coordinate vector (index -> code).
    pub fn eval(&self, coords: &BTreeMap<PluckerIndex, u16>) -> u16 {
        let f = &self.field;
        let mut acc = 0u16;
        for (m, &c) in &self.terms {
            let mut prod = c;
            for idx in &m.0 {
                prod = f.mul(prod, *coords.get(idx).unwrap_or(&0));
                if prod == 0 {
                    break;
                }
            }
            acc = f.add(acc, prod);
        }
        acc
    }
}

/// The non-identity splittings of the exchange relation for a violating pair
/// (alpha, beta) at column `col`: the head beta[..=col] and tail alpha[col..]
/// are redistributed in all other ways. Returns (shuffle sign, new alpha row,
/// new beta row); rows with repeated entries are dropped.
fn exchange_terms(alpha: &[u8], beta: &[u8], col: usize) -> Vec<(bool, PluckerIndex, PluckerIndex)> {
    // exchanged pool, strictly increasing: beta[0..=col] then alpha[col..]
    let pool: Vec<u8> = beta[..=col].iter().chain(alpha[col..].iter()).copied().collect();
    let head = col + 1; // elements going back to beta positions 0..=col
    let mut out = Vec::new();
    for mask in choose_masks(pool.len(), head) {
        // identity splitting: first `head` elements to beta
        if mask.iter().take(head).all(|&b| b) {
            continue;
        }
        let to_beta: Vec<u8> =
            pool.iter().zip(&mask).filter(|&(_, &b)| b).map(|(&v, _)| v).collect();
        let to_alpha: Vec<u8> =
            pool.iter().zip(&mask).filter(|&(_, &b)| !b).map(|(&v, _)| v).collect();
        // shuffle sign: inversions between the beta part and the alpha part
        let mut inv = 0usize;
        for &b in &to_beta {
            for &a in &to_alpha {
                if a < b {
                    inv += 1;
                }
            }
        }
        let mut new_alpha: Vec<u8> = alpha[..col].to_vec();
        new_alpha.extend_from_slice(&to_alpha);
        let mut new_beta: Vec<u8> = to_beta.clone();
        new_beta.extend_from_slice(&beta[col + 1..]);
        let Some((na, sa)) = PluckerIndex::sort_signed(&new_alpha) else { continue };
        let Some((nb, sb)) = PluckerIndex::sort_signed(&new_beta) else { continue };
        let sign = (inv % 2 == 1) ^ sa ^ sb;
        out.push((sign, na, nb));
    }
    out
}

/// All boolean masks of length n with exactly k ones.
fn choose_masks(n: usize, k: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut cur = vec![false; n];
    fn rec(pos: usize, left: usize, n: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if n - pos < left {
            return;
        }
        cur[pos] = true;
        rec(pos + 1, left - 1, n, cur, out);
        cur[pos] = false;
        rec(pos + 1, left, n, cur, out);
    }
    rec(0, k, n, &mut cur, &mut out);
    out
}

/// All standard monomials of degree d for Grass(r, n), in lexicographic
/// order of their row lists.
pub fn standard_monomials(n: usize, r: usize, d: usize) -> Vec<PluckerMonomial> {
    let indices: Vec<PluckerIndex> = crate::grass::subsets(n, r)
        .into_iter()
        .map(|s| PluckerIndex::new(s.iter().map(|&c| (c + 1) as u8).collect()))
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<PluckerIndex> = Vec::new();
    fn le_componentwise(a: &PluckerIndex, b: &PluckerIndex) -> bool {
        a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
    }
    fn rec(
        indices: &[PluckerIndex],
        from: usize,
        d: usize,
        cur: &mut Vec<PluckerIndex>,
        out: &mut Vec<PluckerMonomial>,
    ) {
        if cur.len() == d {
            out.push(PluckerMonomial(cur.clone()));
            return;
        }
        for (i, idx) in indices.iter().enumerate().skip(from) {
            if cur.last().map_or(true, |prev| le_componentwise(prev, idx)) {
                cur.push(idx.clone());
                rec(indices, i, d, cur, out);
                cur.pop();
            }
        }
    }
    rec(&indices, 0, d, &mut cur, &mut out);
    out
}

/// Dimension of the degree-d graded piece of the coordinate ring.
pub fn dim_graded_piece(n: usize, r: usize, d: usize) -> usize {
    standard_monomials(n, r, d).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grass::enumerate_planes;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap as Map;

    fn idx(v: &[u8]) -> PluckerIndex {
        PluckerIndex::new(v.to_vec())
    }

    #[test]
    fn classical_three_term_relation_straightens_to_zero() {
        let f7 = FqField::prime(7).unwrap();
        // p12 p34 - p13 p24 + p14 p23 = 0 in Gr(2,4)
        let mut p = PluckerPoly::zero(&f7, 4, 2);
        p.add_term(PluckerMonomial::from_rows(vec![idx(&[1, 2]), idx(&[3, 4])]), 1);
        p.add_term(PluckerMonomial::from_rows(vec![idx(&[1, 3]), idx(&[2, 4])]), f7.neg(1));
        p.add_term(PluckerMonomial::from_rows(vec![idx(&[1, 4]), idx(&[2, 3])]), 1);
        assert!(p.straighten().is_zero());
    }

    #[test]
    fn standard_monomial_fixed() {
        let f5 = FqField::prime(5).unwrap();
        let mut p = PluckerPoly::zero(&f5, 4, 2);
        let m = PluckerMonomial::from_rows(vec![idx(&[1, 2]), idx(&[1, 3])]);
        assert!(m.is_standard());
        p.add_term(m.clone(), 3);
        let s = p.straighten();
        assert_eq!(s.terms.len(), 1);
        assert_eq!(s.terms[&m], 3);
    }

    #[test]
    fn graded_dimensions_gr24() {
        assert_eq!(dim_graded_piece(4, 2, 0), 1);
        assert_eq!(dim_graded_piece(4, 2, 1), 6);
        assert_eq!(dim_graded_piece(4, 2, 2), 20);
        assert_eq!(dim_graded_piece(4, 2, 3), 50);
    }

    /// Independent oracle: the ring embeds in polynomials on generic matrix
    /// entries by expanding each p_Σ as the Σ-minor. Keys are exponent
    /// vectors over the r*n entry variables.
    fn expand_generic(poly: &PluckerPoly) -> Map<Vec<u8>, u16> {
        let f = &poly.field;
        let (n, r) = (poly.n, poly.r);
        // minor of columns sigma as polynomial: sum over permutations
        let perms = perms_of(r);
        let minor = |sigma: &[u8]| -> Map<Vec<u8>, u16> {
            let mut acc: Map<Vec<u8>, u16> = Map::new();
            for (perm, odd) in &perms {
                let mut expt = vec![0u8; r * n];
                for (i, &pi) in perm.iter().enumerate() {
                    // entry (row i, column sigma[pi])
                    expt[i * n + (sigma[pi] as usize - 1)] += 1;
                }
                let c = if *odd { f.neg(1) } else { 1 };
                let e = acc.entry(expt.clone()).or_insert(0);
                *e = f.add(*e, c);
                if *e == 0 {
                    acc.remove(&expt);
                }
            }
            acc
        };
        let mul = |a: &Map<Vec<u8>, u16>, b: &Map<Vec<u8>, u16>| -> Map<Vec<u8>, u16> {
            let mut out: Map<Vec<u8>, u16> = Map::new();
            for (ea, &ca) in a {
                for (eb, &cb) in b {
                    let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    let v = out.entry(e.clone()).or_insert(0);
                    *v = f.add(*v, f.mul(ca, cb));
                    if *v == 0 {
                        out.remove(&e);
                    }
                }
            }
            out
        };
        let mut total: Map<Vec<u8>, u16> = Map::new();
        for (mono, &coeff) in &poly.terms {
            let mut term: Map<Vec<u8>, u16> = Map::new();
            term.insert(vec![0u8; r * n], coeff);
            for pidx in &mono.0 {
                term = mul(&term, &minor(&pidx.0));
            }
            for (e, c) in term {
                let v = total.entry(e.clone()).or_insert(0);
                *v = f.add(*v, c);
                if *v == 0 {
                    total.remove(&e);
                }
            }
        }
        total
    }

    fn perms_of(r: usize) -> Vec<(Vec<usize>, bool)> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        let mut used = vec![false; r];
        fn rec(r: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, bool)>) {
            if cur.len() == r {
                let mut inv = 0;
                for i in 0..r {
                    for j in i + 1..r {
                        if cur[i] > cur[j] {
                            inv += 1;
                        }
                    }
                }
                out.push((cur.clone(), inv % 2 == 1));
                return;
            }
            for v in 0..r {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(r, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(r, &mut cur, &mut used, &mut out);
        out
    }

    #[test]
    fn straighten_preserves_ring_element_gr24() {
        let f7 = FqField::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let indices = crate::grass::subsets(4, 2);
        for _ in 0..30 {
            let mut p = PluckerPoly::zero(&f7, 4, 2);
            for _ in 0..3 {
                let i1 = &indices[rng.gen_range(0..indices.len())];
                let i2 = &indices[rng.gen_range(0..indices.len())];
                let m = PluckerMonomial::from_rows(vec![
                    idx(&i1.iter().map(|&c| (c + 1) as u8).collect::<Vec<_>>()),
                    idx(&i2.iter().map(|&c| (c + 1) as u8).collect::<Vec<_>>()),
                ]);
                p.add_term(m, rng.gen_range(1..7));
            }
            let s = p.straighten();
            assert!(s.terms.keys().all(|m| m.is_standard()));
            assert_eq!(expand_generic(&p), expand_generic(&s));
            // idempotent
            assert_eq!(s.straighten().terms, s.terms);
        }
    }

    #[test]
    fn straighten_preserves_ring_element_gr36() {
        let f5 = FqField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let indices = crate::grass::subsets(6, 3);
        for _ in 0..10 {
            let mut p = PluckerPoly::zero(&f5, 6, 3);
            for _ in 0..2 {
                let i1 = &indices[rng.gen_range(0..indices.len())];
                let i2 = &indices[rng.gen_range(0..indices.len())];
                let m = PluckerMonomial::from_rows(vec![
                    idx(&i1.iter().map(|&c| (c + 1) as u8).collect::<Vec<_>>()),
                    idx(&i2.iter().map(|&c| (c + 1) as u8).collect::<Vec<_>>()),
                ]);
                p.add_term(m, rng.gen_range(1..5));
            }
            let s = p.straighten();
            assert!(s.terms.keys().all(|m| m.is_standard()));
            assert_eq!(expand_generic(&p), expand_generic(&s));
        }
    }

    #[test]
    fn evaluation_consistency_at_planes() {
        // eval(f) = eval(straighten(f)) at many plane points
        let f5 = FqField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let indices = crate::grass::subsets(4, 2);
        let planes: Vec<_> = enumerate_planes(&f5, 4, 2).unwrap().collect();
        for _ in 0..100 {
            let mut p = PluckerPoly::zero(&f5, 4, 2);
            for _ in 0..3 {
                let i1 = &indices[rng.gen_range(0..indices.len())];
                let i2 = &indices[rng.gen_range(0..indices.len())];
                let m = PluckerMonomial::from_rows(vec![
                    idx(&i1.iter().map(|&c| (c + 1) as u8).collect::<Vec<_>>()),
                    idx(&i2.iter().map(|&c| (c + 1) as u8).collect::<Vec<_>>()),
                ]);
                p.add_term(m, rng.gen_range(0..5));
            }
            let s = p.straighten();
            let u = &planes[rng.gen_range(0..planes.len())];
            let coords: Map<PluckerIndex, u16> = u.plucker().into_iter().collect();
            assert_eq!(p.eval(&coords), s.eval(&coords));
        }
    }

    #[test]
    fn graded_dimension_matches_evaluation_rank() {
        // cross-check dim by the rank of the evaluation matrix at >= dim
        // points over a larger field
        let f = FqField::new(2, 3, None).unwrap(); // F8
        let monos = standard_monomials(4, 2, 2);
        let dim = monos.len();
        let planes: Vec<_> = enumerate_planes(&f, 4, 2).unwrap().collect();
        let mut rows = Vec::new();
        for u in planes.iter() {
            let coords: Map<PluckerIndex, u16> = u.plucker().into_iter().collect();
            let row: Vec<u16> = monos
                .iter()
                .map(|m| {
                    let mut prod = 1u16;
                    for i in &m.0 {
                        prod = f.mul(prod, *coords.get(i).unwrap_or(&0));
                    }
                    prod
                })
                .collect();
            rows.push(row);
        }
        let m = crate::mat::Mat::from_rows(&f, &rows);
        assert_eq!(m.rank(), dim);
    }
}
