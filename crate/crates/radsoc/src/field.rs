//! Exact arithmetic in finite fields `F_{p^m}` at desk scale.
//!
//! Elements are stored as codes `0..q` packing the residue polynomial
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` in base `p` (code = Σ c_i p^i).
//! Fields precompute full multiplication and inversion tables, so all
//! higher-level linear algebra runs on table lookups. No floating point
//! anywhere; equality is exact.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("supplied modulus is reducible over F_{0}")]
    Reducible(u64),
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    BadModulus { expected: usize, got: usize },
    #[error("no element of multiplicative order {0} in this field")]
    NotPresent(u64),
}

/// The field `F_{p^m}`, with tabulated arithmetic.
pub struct FqField {
    p: u64,
    m: usize,
    q: u64,
    /// Coefficients `c_0..c_m` of the monic irreducible modulus (length m+1).
    modulus: Vec<u64>,
    add_table: Vec<u16>,
    mul_table: Vec<u16>,
    inv_table: Vec<u16>,
    neg_table: Vec<u16>,
    frob_table: Vec<u16>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqField(p={}, m={}, modulus={:?})", self.p, self.m, self.modulus)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for FqField {}

const MAX_ORDER: u64 = 2048;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over F_p as coefficient vectors, little-endian, for modulus
/// setup only. Leading zeros trimmed.
fn poly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = (r[dr] * lead_inv) % p;
        for i in 0..=db {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - factor * b[i] % p) % p;
        }
        r = poly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is a small prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Irreducibility by trial division over all monic polynomials of degree
/// <= deg/2. Desk scale (m <= 4, small p) makes this exhaustive check cheap.
fn poly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // all monic polynomials of degree d: p^d of them
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First irreducible monic polynomial of degree m in lexicographic order of
/// the coefficient tuple (c_0, ..., c_{m-1}).
fn default_modulus(p: u64, m: usize) -> Vec<u64> {
    let count = p.pow(m as u32);
    for code in 0..count {
        let mut f = Vec::with_capacity(m + 1);
        let mut c = code;
        for _ in 0..m {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if poly_is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

impl FqField {
    pub fn new(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<Arc<FqField>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        assert!(m >= 1, "extension degree must be >= 1");
        let q = p.checked_pow(m as u32).expect("field order overflow");
        assert!(q <= MAX_ORDER, "field order {} too large for table-based arithmetic", q);
        let modulus = match modulus {
            Some(raw) => {
                let f = poly_trim(raw);
                if f.len() != m + 1 || f[m] != 1 {
                    return Err(FieldError::BadModulus { expected: m, got: f.len().saturating_sub(1) });
                }
                let f: Vec<u64> = f.into_iter().map(|c| c % p).collect();
                if f[m] != 1 {
                    return Err(FieldError::BadModulus { expected: m, got: m });
                }
                if !poly_is_irreducible(p, &f) {
                    return Err(FieldError::Reducible(p));
                }
                f
            }
            None => default_modulus(p, m),
        };

        let mut field = FqField {
            p,
            m,
            q,
            modulus,
            add_table: Vec::new(),
            mul_table: Vec::new(),
            inv_table: Vec::new(),
            neg_table: Vec::new(),
            frob_table: Vec::new(),
        };
        field.build_tables();
        Ok(Arc::new(field))
    }

    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Arc<FqField>, FieldError> {
        FqField::new(p, 1, None)
    }

    fn decode(&self, code: u64) -> Vec<u64> {
        let mut c = code;
        let mut v = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            v.push(c % self.p);
            c /= self.p;
        }
        v
    }

    fn encode(&self, v: &[u64]) -> u64 {
        let mut code = 0;
        for &c in v.iter().rev() {
            code = code * self.p + c % self.p;
        }
        code
    }

    fn raw_add(&self, a: u64, b: u64) -> u64 {
        let (va, vb) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    fn raw_mul(&self, a: u64, b: u64) -> u64 {
        let (va, vb) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u64; 2 * self.m];
        for (i, &x) in va.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in vb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the modulus: x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        for d in (self.m..2 * self.m).rev() {
            let coeff = prod[d];
            if coeff == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..self.m {
                let sub = coeff * self.modulus[i] % self.p;
                prod[d - self.m + i] = (prod[d - self.m + i] + self.p - sub) % self.p;
            }
        }
        prod.truncate(self.m);
        self.encode(&prod)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        self.add_table = vec![0; q * q];
        self.mul_table = vec![0; q * q];
        self.inv_table = vec![0; q];
        self.neg_table = vec![0; q];
        self.frob_table = vec![0; q];
        for a in 0..q as u64 {
            for b in 0..q as u64 {
                self.add_table[a as usize * q + b as usize] = self.raw_add(a, b) as u16;
                self.mul_table[a as usize * q + b as usize] = self.raw_mul(a, b) as u16;
            }
        }
        for a in 0..q as u64 {
            // a^(q-2) is the inverse for a != 0
            if a != 0 {
                let mut inv = 1u64;
                let mut base = a;
                let mut e = self.q - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        inv = self.raw_mul(inv, base);
                    }
                    base = self.raw_mul(base, base);
                    e >>= 1;
                }
                self.inv_table[a as usize] = inv as u16;
            }
            // -a = (p-1)*a
            let mut neg = 0u64;
            for _ in 0..self.p - 1 {
                neg = self.raw_add(neg, a);
            }
            self.neg_table[a as usize] = neg as u16;
            let mut fr = 1u64;
            for _ in 0..self.p {
                fr = self.raw_mul(fr, a);
            }
            self.frob_table[a as usize] = fr as u16;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> usize {
        self.m
    }
    pub fn order(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    // Code-level arithmetic: the workhorse API used by `Mat`.
    #[inline(always)]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add_table[a as usize * self.q as usize + b as usize]
    }
    #[inline(always)]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul_table[a as usize * self.q as usize + b as usize]
    }
    #[inline(always)]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg_table[a as usize]
    }
    #[inline(always)]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }
    #[inline(always)]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv_table[a as usize]
    }
    /// Frobenius a -> a^p.
    #[inline(always)]
    pub fn frob(&self, a: u16) -> u16 {
        self.frob_table[a as usize]
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        let mut result = 1u16;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Embed an integer residue (element of the prime field).
    pub fn from_int(&self, v: i64) -> u16 {
        let r = v.rem_euclid(self.p as i64) as u64;
        r as u16
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u16) -> u64 {
        assert!(a != 0);
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// The element of exact multiplicative order `s` with smallest code.
    pub fn root_of_unity(self: &Arc<Self>, s: u64) -> Result<FqElem, FieldError> {
        assert!(s >= 1);
        if (self.q - 1) % s != 0 {
            return Err(FieldError::NotPresent(s));
        }
        for code in 1..self.q as u16 {
            if self.element_order(code) == s {
                return Ok(FqElem { field: Arc::clone(self), code });
            }
        }
        Err(FieldError::NotPresent(s))
    }

    pub fn elem(self: &Arc<Self>, code: u16) -> FqElem {
        debug_assert!((code as u64) < self.q);
        FqElem { field: Arc::clone(self), code }
    }

    pub fn elem_from_int(self: &Arc<Self>, v: i64) -> FqElem {
        let code = self.from_int(v);
        FqElem { field: Arc::clone(self), code }
    }

    /// All element codes, in code order.
    pub fn all_codes(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }

    /// Whether `other` is the prime subfield of `self` (entrywise inclusion of
    /// codes is then a field embedding).
    pub fn extends_prime_of(&self, other: &FqField) -> bool {
        self.p == other.p && other.m == 1
    }
}

/// An element of `F_{p^m}`, owning a reference to its field.
#[derive(Clone)]
pub struct FqElem {
    pub field: Arc<FqField>,
    pub code: u16,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            write!(f, "{}", self.code)
        } else {
            write!(f, "[{}:{:?}]", self.code, self.field.decode(self.code as u64))
        }
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && *self.field == *other.field
    }
}
impl Eq for FqElem {}

impl FqElem {
    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
    pub fn add(&self, other: &FqElem) -> FqElem {
        FqElem { field: Arc::clone(&self.field), code: self.field.add(self.code, other.code) }
    }
    pub fn sub(&self, other: &FqElem) -> FqElem {
        FqElem { field: Arc::clone(&self.field), code: self.field.sub(self.code, other.code) }
    }
    pub fn mul(&self, other: &FqElem) -> FqElem {
        FqElem { field: Arc::clone(&self.field), code: self.field.mul(self.code, other.code) }
    }
    pub fn neg(&self) -> FqElem {
        FqElem { field: Arc::clone(&self.field), code: self.field.neg(self.code) }
    }
    pub fn inv(&self) -> FqElem {
        FqElem { field: Arc::clone(&self.field), code: self.field.inv(self.code) }
    }
    pub fn pow(&self, e: u64) -> FqElem {
        FqElem { field: Arc::clone(&self.field), code: self.field.pow(self.code, e) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_and_f7_basics() {
        let f2 = FqField::prime(2).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.add(1, 1), 0);

        let f7 = FqField::prime(7).unwrap();
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.inv(3), 5);
        assert_eq!(f7.neg(2), 5);
    }

    #[test]
    fn not_prime_rejected() {
        assert_eq!(FqField::prime(6).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(FqField::prime(1).unwrap_err(), FieldError::NotPrime(1));
    }

    #[test]
    fn f9_has_element_of_order_4() {
        // |F9^x| = 8, so an element of order 4 exists; check by exhaustive
        // order computation.
        let f9 = FqField::new(3, 2, None).unwrap();
        assert_eq!(f9.order(), 9);
        let found = (1..9u16).any(|c| f9.element_order(c) == 4);
        assert!(found);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 1 = (x-1)(x+1) over F7
        let err = FqField::new(7, 2, Some(vec![6, 0, 1])).unwrap_err();
        assert_eq!(err, FieldError::Reducible(7));
    }

    #[test]
    fn roots_of_unity() {
        let f7 = FqField::prime(7).unwrap();
        assert_eq!(f7.root_of_unity(3).unwrap().code, 2); // 2^3 = 8 = 1, 2 != 1
        assert_eq!(f7.root_of_unity(2).unwrap().code, 6); // -1
        let f5 = FqField::prime(5).unwrap();
        assert_eq!(f5.root_of_unity(3).unwrap_err(), FieldError::NotPresent(3)); // 3 does not divide 4
    }

    #[test]
    fn frobenius_is_pth_power() {
        let f9 = FqField::new(3, 2, None).unwrap();
        for a in f9.all_codes() {
            assert_eq!(f9.frob(a), f9.pow(a, 3));
        }
    }

    #[test]
    fn field_axioms_f8() {
        let f8 = FqField::new(2, 3, None).unwrap();
        for a in f8.all_codes() {
            for b in f8.all_codes() {
                assert_eq!(f8.add(a, b), f8.add(b, a));
                assert_eq!(f8.mul(a, b), f8.mul(b, a));
                for c in f8.all_codes() {
                    assert_eq!(f8.mul(a, f8.add(b, c)), f8.add(f8.mul(a, b), f8.mul(a, c)));
                    assert_eq!(f8.mul(f8.mul(a, b), c), f8.mul(a, f8.mul(b, c)));
                }
            }
            if a != 0 {
                assert_eq!(f8.mul(a, f8.inv(a)), 1);
            }
            assert_eq!(f8.add(a, f8.neg(a)), 0);
        }
    }

    #[test]
    fn frobenius_additive() {
        let f27 = FqField::new(3, 3, None).unwrap();
        for a in f27.all_codes() {
            for b in f27.all_codes() {
                assert_eq!(f27.frob(f27.add(a, b)), f27.add(f27.frob(a), f27.frob(b)));
            }
        }
    }
}
