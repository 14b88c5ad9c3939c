//! Small finite fields F_{p^k} with p <= 13 and k <= 4, represented as
//! F_p[x] modulo the lexicographically smallest monic irreducible polynomial
//! of degree k. Elements are fixed-size coefficient arrays and are `Copy`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_PRIME: u64 = 13;
pub const MAX_EXT_DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime <= {MAX_PRIME}")]
    BadPrime(u64),
    #[error("extension degree {0} outside 1..={MAX_EXT_DEGREE}")]
    BadDegree(usize),
    #[error("element of wrong field")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
}

/// Element of F_{p^k}: polynomial coefficients, constant term first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    c: [u8; MAX_EXT_DEGREE],
}

impl FqElem {
    pub const ZERO: FqElem = FqElem {
        c: [0; MAX_EXT_DEGREE],
    };

    pub fn coeffs(&self) -> &[u8; MAX_EXT_DEGREE] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; MAX_EXT_DEGREE]
    }

    /// Integer encoding sum c_i p^i; doubles as the base ordering of elements.
    pub fn index(&self, p: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0u64, |acc, &ci| acc * p + ci as u64)
    }
}

/// The field F_{p^k}. Cheap to clone; all element operations live here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldSpec", into = "FieldSpec")]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// monic modulus of degree k, coefficients low first, length k+1
    modulus: Vec<u8>,
}

/// Wire form {"p": 2, "k": 2}.
#[derive(Serialize, Deserialize, Clone)]
struct FieldSpec {
    p: u64,
    #[serde(default = "one")]
    k: usize,
}

fn one() -> usize {
    1
}

impl TryFrom<FieldSpec> for FiniteField {
    type Error = FieldError;
    fn try_from(s: FieldSpec) -> Result<Self, FieldError> {
        FiniteField::new(s.p, s.k)
    }
}

impl From<FiniteField> for FieldSpec {
    fn from(f: FiniteField) -> FieldSpec {
        FieldSpec { p: f.p, k: f.k }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).all(|d| d * d > p || p % d != 0)
}

impl FiniteField {
    pub fn new(p: u64, k: usize) -> Result<Self, FieldError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(FieldError::BadPrime(p));
        }
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(FieldError::BadDegree(k));
        }
        let modulus = smallest_irreducible(p, k);
        Ok(FiniteField { p, k, modulus })
    }

    pub fn prime_field(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    /// Embed an integer via the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        let mut e = FqElem::ZERO;
        e.c[0] = n.rem_euclid(self.p as i64) as u8;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u8]) -> FqElem {
        let mut e = FqElem::ZERO;
        for (i, &c) in coeffs.iter().take(self.k).enumerate() {
            e.c[i] = c % self.p as u8;
        }
        e
    }

    /// The class of x, a generator of the ring extension (not necessarily of
    /// the multiplicative group).
    pub fn gen_x(&self) -> FqElem {
        if self.k == 1 {
            return self.zero();
        }
        let mut e = FqElem::ZERO;
        e.c[1] = 1;
        e
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let mut out = FqElem::ZERO;
        for i in 0..self.k {
            out.c[i] = ((a.c[i] as u16 + b.c[i] as u16) % self.p as u16) as u8;
        }
        out
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let mut out = FqElem::ZERO;
        for i in 0..self.k {
            out.c[i] = ((self.p as u16 - a.c[i] as u16) % self.p as u16) as u8;
        }
        out
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p as u32;
        let k = self.k;
        // convolution
        let mut conv = [0u32; 2 * MAX_EXT_DEGREE - 1];
        for i in 0..k {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..k {
                conv[i + j] = (conv[i + j] + a.c[i] as u32 * b.c[j] as u32) % p;
            }
        }
        // reduce by the monic modulus
        for d in (k..2 * k - 1).rev() {
            let lead = conv[d];
            if lead == 0 {
                continue;
            }
            conv[d] = 0;
            for i in 0..k {
                let m = self.modulus[i] as u32;
                if m != 0 {
                    conv[d - k + i] = (conv[d - k + i] + p * p - (lead * m) % p) % p;
                }
            }
        }
        let mut out = FqElem::ZERO;
        for i in 0..k {
            out.c[i] = conv[i] as u8;
        }
        out
    }

    pub fn scale(&self, a: FqElem, n: i64) -> FqElem {
        self.mul(a, self.from_int(n))
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square root in characteristic 2: c -> c^{2^{k-1}}, exact since the
    /// field is perfect and squaring is bijective.
    pub fn sqrt_char2(&self, a: FqElem) -> FqElem {
        assert_eq!(self.p, 2);
        self.pow(a, self.order() / 2)
    }

    /// All field elements, in index order (0, 1, 2, ..., x, x+1, ...).
    pub fn elements(&self) -> Vec<FqElem> {
        let q = self.order();
        (0..q).map(|i| self.element_from_index(i)).collect()
    }

    pub fn element_from_index(&self, mut i: u64) -> FqElem {
        let mut e = FqElem::ZERO;
        for d in 0..self.k {
            e.c[d] = (i % self.p) as u8;
            i /= self.p;
        }
        e
    }

    /// Canonical display ordering: 0, 1, then ascending powers of the least
    /// multiplicative generator. Used to pick deterministic coset
    /// representatives.
    pub fn canonical_ordering(&self) -> Vec<FqElem> {
        let q = self.order();
        if q == 2 {
            return vec![self.zero(), self.one()];
        }
        let g = self.multiplicative_generator();
        let mut out = vec![self.zero()];
        let mut acc = self.one();
        for _ in 0..q - 1 {
            out.push(acc);
            acc = self.mul(acc, g);
        }
        out
    }

    /// Position of each element in `canonical_ordering`, as a rank function.
    pub fn canonical_rank(&self, e: FqElem) -> u64 {
        self.canonical_ordering()
            .iter()
            .position(|&x| x == e)
            .expect("element of this field") as u64
    }

    pub fn multiplicative_generator(&self) -> FqElem {
        let q = self.order();
        for i in 1..q {
            let e = self.element_from_index(i);
            if self.multiplicative_order(e) == q - 1 {
                return e;
            }
        }
        unreachable!("finite fields have primitive elements")
    }

    pub fn multiplicative_order(&self, e: FqElem) -> u64 {
        if e.is_zero() {
            return 0;
        }
        let mut acc = e;
        let mut k = 1;
        while acc != self.one() {
            acc = self.mul(acc, e);
            k += 1;
        }
        k
    }

    /// Image of the additive map c -> c - c^p, sorted by element index.
    pub fn artin_schreier_image(&self) -> Vec<FqElem> {
        let mut img: Vec<FqElem> = self
            .elements()
            .into_iter()
            .map(|c| self.sub(c, self.pow(c, self.p)))
            .collect();
        img.sort_by_key(|e| e.index(self.p));
        img.dedup();
        img
    }

    pub fn in_artin_schreier_image(&self, a: FqElem) -> bool {
        self.elements()
            .iter()
            .any(|&c| self.sub(c, self.pow(c, self.p)) == a)
    }

    /// Render an element as a polynomial in `w`.
    pub fn format_elem(&self, e: FqElem) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for i in (0..self.k).rev() {
            let c = e.c[i];
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}*w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}*w^{i}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }

    /// Parse "w^2+3*w+1"-style element expressions; also plain integers.
    pub fn parse_elem(&self, s: &str) -> Result<FqElem, FieldError> {
        let s = s.trim().replace(' ', "");
        if s.is_empty() {
            return Err(FieldError::FieldMismatch);
        }
        let mut acc = self.zero();
        for term in s.split('+') {
            let (coeff_str, pow) = if let Some(rest) = term.strip_suffix("w") {
                (rest.trim_end_matches('*'), 1usize)
            } else if let Some(idx) = term.find("w^") {
                let pow: usize = term[idx + 2..].parse().map_err(|_| FieldError::FieldMismatch)?;
                (term[..idx].trim_end_matches('*'), pow)
            } else {
                (term, 0usize)
            };
            let coeff: i64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str.parse().map_err(|_| FieldError::FieldMismatch)?
            };
            if pow >= self.k && !(pow == 0) {
                return Err(FieldError::BadDegree(pow));
            }
            let mut t = FqElem::ZERO;
            t.c[pow] = coeff.rem_euclid(self.p as i64) as u8;
            acc = self.add(acc, t);
        }
        Ok(acc)
    }
}

/// Lexicographically smallest monic irreducible of degree k over F_p,
/// by exhaustive search over the lower coefficients.
fn smallest_irreducible(p: u64, k: usize) -> Vec<u8> {
    if k == 1 {
        return vec![0, 1]; // x itself; the modulus is unused for k = 1
    }
    let pk = p.pow(k as u32);
    for idx in 0..pk {
        let mut coeffs = vec![0u8; k + 1];
        let mut i = idx;
        for c in coeffs.iter_mut().take(k) {
            *c = (i % p) as u8;
            i /= p;
        }
        coeffs[k] = 1;
        if poly_is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Irreducibility over F_p by trial division against all monic polynomials
/// of degree <= k/2.
fn poly_is_irreducible(p: u64, poly: &[u8]) -> bool {
    let k = poly.len() - 1;
    if poly[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=k / 2 {
        let pd = p.pow(d as u32);
        for idx in 0..pd {
            let mut div = vec![0u8; d + 1];
            let mut i = idx;
            for c in div.iter_mut().take(d) {
                *c = (i % p) as u8;
                i /= p;
            }
            div[d] = 1;
            if poly_divides(p, &div, poly) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(p: u64, div: &[u8], poly: &[u8]) -> bool {
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    let dd = div.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for i in 0..=dd {
                let t = (lead * div[i] as u64) % p;
                rem[shift + i] = (rem[shift + i] + p - t) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_structure() {
        let f4 = FiniteField::new(2, 2).unwrap();
        // x^2 + x + 1 is the smallest irreducible quadratic over F_2
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let w = f4.gen_x();
        let w2 = f4.mul(w, w);
        // w^2 = w + 1
        assert_eq!(w2, f4.add(w, f4.one()));
        // multiplicative order of w is 3
        assert_eq!(f4.multiplicative_order(w), 3);
    }

    #[test]
    fn inverses_all_fields() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (13, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            for e in f.elements() {
                if e.is_zero() {
                    assert!(f.inv(e).is_err());
                } else {
                    assert_eq!(f.mul(e, f.inv(e).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn artin_schreier_image_sizes() {
        // theta is F_p-linear with kernel F_p, so |im| = q/p
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            assert_eq!(f.artin_schreier_image().len() as u64, f.order() / p);
        }
    }

    #[test]
    fn sqrt_char2() {
        for k in 1..=4 {
            let f = FiniteField::new(2, k).unwrap();
            for e in f.elements() {
                let s = f.sqrt_char2(e);
                assert_eq!(f.mul(s, s), e);
            }
        }
    }

    #[test]
    fn parse_format_roundtrip() {
        let f8 = FiniteField::new(2, 3).unwrap();
        for e in f8.elements() {
            let s = f8.format_elem(e);
            assert_eq!(f8.parse_elem(&s).unwrap(), e);
        }
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.parse_elem("w+1").unwrap(), f4.add(f4.gen_x(), f4.one()));
    }
}
