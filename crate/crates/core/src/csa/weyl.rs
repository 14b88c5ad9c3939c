//! The p^2-dimensional algebra over F_p(x, y) with generators u, v and
//! relations v^p = x, u^p = y, vu - uv = 1. Elements are kept in normal
//! form: u-powers left of v-powers, exponents below p, coefficients
//! bivariate polynomials over the prime field in the central variables.

use std::collections::BTreeMap;

use crate::exactalg::FiniteField;
use crate::quadform::solve_linear;

/// Bivariate polynomial over F_p in the central variables x and y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyXY {
    p: u64,
    /// (deg_x, deg_y) -> coefficient in [1, p)
    terms: BTreeMap<(u32, u32), u64>,
}

impl PolyXY {
    pub fn zero(p: u64) -> Self {
        PolyXY {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u64, c: i64) -> Self {
        let mut out = Self::zero(p);
        out.add_term(0, 0, c.rem_euclid(p as i64) as u64);
        out
    }

    pub fn x(p: u64) -> Self {
        let mut out = Self::zero(p);
        out.add_term(1, 0, 1);
        out
    }

    pub fn y(p: u64) -> Self {
        let mut out = Self::zero(p);
        out.add_term(0, 1, 1);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the polynomial is the constant c (possibly 0).
    pub fn as_constant(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&(0, 0)).copied(),
            _ => None,
        }
    }

    fn add_term(&mut self, dx: u32, dy: u32, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((dx, dy)).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let mut out = self.clone();
        for (&(dx, dy), &c) in &other.terms {
            out.add_term(dx, dy, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.p);
        for (&(dx, dy), &c) in &self.terms {
            out.add_term(dx, dy, self.p - c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.p);
        for (&(ax, ay), &ac) in &self.terms {
            for (&(bx, by), &bc) in &other.terms {
                out.add_term(ax + bx, ay + by, ac * bc);
            }
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.p);
        for (&(dx, dy), &t) in &self.terms {
            out.add_term(dx, dy, t * (c % self.p));
        }
        out
    }

    /// Multiply by x^dx y^dy.
    fn shift(&self, dx: u32, dy: u32) -> Self {
        let mut out = Self::zero(self.p);
        for (&(ax, ay), &c) in &self.terms {
            out.add_term(ax + dx, ay + dy, c);
        }
        out
    }
}

impl std::fmt::Display for PolyXY {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&(dx, dy), &c) in &self.terms {
            let mut s = String::new();
            if c != 1 || (dx == 0 && dy == 0) {
                s.push_str(&c.to_string());
            }
            for (sym, d) in [("x", dx), ("y", dy)] {
                if d == 1 {
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(sym);
                } else if d > 1 {
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(&format!("{sym}^{d}"));
                }
            }
            parts.push(s);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Generators of the algebra, for building words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    U,
    V,
}

/// Element in normal form: coefficient of u^i v^j at index i*p + j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    p: u64,
    coeffs: Vec<PolyXY>,
}

fn binom(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

impl WeylElement {
    pub fn zero(p: u64) -> Self {
        let sz = (p * p) as usize;
        WeylElement {
            p,
            coeffs: vec![PolyXY::zero(p); sz],
        }
    }

    pub fn one(p: u64) -> Self {
        Self::monomial(p, 0, 0, PolyXY::constant(p, 1))
    }

    pub fn u(p: u64) -> Self {
        Self::monomial(p, 1, 0, PolyXY::constant(p, 1))
    }

    pub fn v(p: u64) -> Self {
        Self::monomial(p, 0, 1, PolyXY::constant(p, 1))
    }

    pub fn monomial(p: u64, i: u32, j: u32, coeff: PolyXY) -> Self {
        assert!(i < p as u32 && j < p as u32);
        let mut out = Self::zero(p);
        out.coeffs[(i as u64 * p + j as u64) as usize] = coeff;
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeff(&self, i: u32, j: u32) -> &PolyXY {
        &self.coeffs[(i as u64 * self.p + j as u64) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PolyXY::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        WeylElement { p: self.p, coeffs }
    }

    pub fn neg(&self) -> Self {
        WeylElement {
            p: self.p,
            coeffs: self.coeffs.iter().map(PolyXY::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product of two basis monomials: commute v^j past u^k with the
    /// derivation identity, then fold exponent overflow into the central
    /// variables via u^p = y and v^p = x.
    fn monomial_product(p: u64, i: u32, j: u32, k: u32, l: u32) -> Self {
        let mut out = Self::zero(p);
        for m in 0..=j.min(k) {
            let c = binom(j, m) * binom(k, m) % p * (factorial(m) % p) % p;
            if c == 0 {
                continue;
            }
            let ue = i + k - m;
            let ve = j + l - m;
            let (ur, ys) = (ue % p as u32, ue / p as u32);
            let (vr, xs) = (ve % p as u32, ve / p as u32);
            let poly = PolyXY::constant(p, c as i64).shift(xs, ys);
            let idx = (ur as u64 * p + vr as u64) as usize;
            out.coeffs[idx] = out.coeffs[idx].add(&poly);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.p;
        let mut out = Self::zero(p);
        for i in 0..p as u32 {
            for j in 0..p as u32 {
                let a = self.coeff(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..p as u32 {
                    for l in 0..p as u32 {
                        let b = other.coeff(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        let mono = Self::monomial_product(p, i, j, k, l);
                        let scalar = a.mul(b);
                        for (idx, m) in mono.coeffs.iter().enumerate() {
                            if !m.is_zero() {
                                out.coeffs[idx] = out.coeffs[idx].add(&m.mul(&scalar));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Normal form of a product word in the generators.
    pub fn from_word(p: u64, word: &[Gen]) -> Self {
        let mut acc = Self::one(p);
        for g in word {
            let factor = match g {
                Gen::U => Self::u(p),
                Gen::V => Self::v(p),
            };
            acc = acc.mul(&factor);
        }
        acc
    }

    /// Commutator [a, b] = ab - ba.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }
}

impl std::fmt::Display for WeylElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for i in 0..self.p as u32 {
            for j in 0..self.p as u32 {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let mut s = format!("({c})");
                for (sym, d) in [("u", i), ("v", j)] {
                    if d == 1 {
                        s.push_str(&format!("*{sym}"));
                    } else if d > 1 {
                        s.push_str(&format!("*{sym}^{d}"));
                    }
                }
                parts.push(s);
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Primes for which the algebra operations are exercised.
pub const WEYL_PRIMES: [u64; 3] = [2, 3, 5];

#[derive(Debug, Clone)]
pub struct WeylIdentityReport {
    pub p: u64,
    /// (uv)^p - uv - u^p v^p in normal form; must be zero
    pub residual_is_zero: bool,
    /// u^p reduced to the central variable y, v^p to x
    pub powers_central: bool,
}

/// Check (uv)^p - uv = u^p v^p and that p-th powers of the generators land
/// on the central variables.
pub fn weyl_identity_check(p: u64) -> WeylIdentityReport {
    let u = WeylElement::u(p);
    let v = WeylElement::v(p);
    let uv = u.mul(&v);
    let lhs = uv.pow(p as u32).sub(&uv);
    let rhs = u.pow(p as u32).mul(&v.pow(p as u32));
    let residual = lhs.sub(&rhs);

    let y_elem = WeylElement::monomial(p, 0, 0, PolyXY::y(p));
    let x_elem = WeylElement::monomial(p, 0, 0, PolyXY::x(p));
    let powers_central = u.pow(p as u32) == y_elem && v.pow(p as u32) == x_elem;

    WeylIdentityReport {
        p,
        residual_is_zero: residual.is_zero(),
        powers_central,
    }
}

#[derive(Debug, Clone)]
pub struct AdSolveReport {
    pub p: u64,
    /// element with [v, preimage] = 1
    pub preimage: WeylElement,
    /// (ad v)^p annihilates every basis monomial
    pub nilpotent: bool,
    /// the operator matrix had constant entries, as the commutation rules force
    pub matrix_constant: bool,
}

/// Build the operator ad v = [v, .] on the p^2 monomial basis, certify
/// (ad v)^p = 0, and solve for a preimage of 1.
///
/// The operator is F_p[x, y]-linear; expanding [v, u^i v^j] in normal form
/// shows its matrix entries are constants, so the linear solve runs over
/// F_p while the certification is done symbolically on the algebra side.
pub fn ad_solve(p: u64) -> AdSolveReport {
    let v = WeylElement::v(p);
    let dim = (p * p) as usize;

    // matrix columns: ad v applied to each basis monomial
    let mut matrix_constant = true;
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(dim);
    for i in 0..p as u32 {
        for j in 0..p as u32 {
            let m = WeylElement::monomial(p, i, j, PolyXY::constant(p, 1));
            let image = v.commutator(&m);
            let mut col = vec![0u64; dim];
            for (idx, c) in image.coeffs.iter().enumerate() {
                match c.as_constant() {
                    Some(val) => col[idx] = val,
                    None => {
                        matrix_constant = false;
                        col[idx] = 0;
                    }
                }
            }
            cols.push(col);
        }
    }

    // nilpotency: apply the operator p times to every basis monomial
    let mut nilpotent = true;
    for i in 0..p as u32 {
        for j in 0..p as u32 {
            let mut acc = WeylElement::monomial(p, i, j, PolyXY::constant(p, 1));
            for _ in 0..p {
                acc = v.commutator(&acc);
            }
            if !acc.is_zero() {
                nilpotent = false;
            }
        }
    }

    // solve (ad v) w = 1 over F_p
    let fp = FiniteField::prime_field(p).expect("small prime");
    let rows: Vec<Vec<crate::exactalg::FqElem>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| fp.from_int(cols[c][r] as i64))
                .collect()
        })
        .collect();
    let mut rhs = vec![fp.zero(); dim];
    rhs[0] = fp.one(); // the basis monomial u^0 v^0
    let x = solve_linear(&fp, &rows, &rhs).expect("1 lies in the image of ad v");
    let mut preimage = WeylElement::zero(p);
    for (idx, val) in x.iter().enumerate() {
        let i = idx as u64 / p;
        let j = idx as u64 % p;
        if !val.is_zero() {
            let c = PolyXY::constant(p, val.index(p) as i64);
            preimage = preimage.add(&WeylElement::monomial(p, i as u32, j as u32, c));
        }
    }
    debug_assert!(v.commutator(&preimage).sub(&WeylElement::one(p)).is_zero());

    AdSolveReport {
        p,
        preimage,
        nilpotent,
        matrix_constant,
    }
}

/// Centralizer-of-generators check: a basis monomial commutes with both
/// u and v only at (0, 0); central polynomials commute with both.
pub fn center_check(p: u64) -> bool {
    let u = WeylElement::u(p);
    let v = WeylElement::v(p);
    for i in 0..p as u32 {
        for j in 0..p as u32 {
            let m = WeylElement::monomial(p, i, j, PolyXY::constant(p, 1));
            let commutes = u.commutator(&m).is_zero() && v.commutator(&m).is_zero();
            if (i, j) == (0, 0) {
                if !commutes {
                    return false;
                }
            } else if commutes {
                return false;
            }
        }
    }
    // x and y times 1 are central
    for poly in [PolyXY::x(p), PolyXY::y(p)] {
        let m = WeylElement::monomial(p, 0, 0, poly);
        if !u.commutator(&m).is_zero() || !v.commutator(&m).is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vu_is_uv_plus_one() {
        for p in WEYL_PRIMES {
            let got = WeylElement::from_word(p, &[Gen::V, Gen::U]);
            let expect = WeylElement::from_word(p, &[Gen::U, Gen::V])
                .add(&WeylElement::one(p));
            assert_eq!(got, expect, "p = {p}");
        }
    }

    #[test]
    fn v_squared_is_x_for_p2() {
        let got = WeylElement::from_word(2, &[Gen::V, Gen::V]);
        let expect = WeylElement::monomial(2, 0, 0, PolyXY::x(2));
        assert_eq!(got, expect);
    }

    #[test]
    fn v_uv_normal_form() {
        // v(uv) = (uv)v + v = u x + v for p = 2
        let got = WeylElement::from_word(2, &[Gen::V, Gen::U, Gen::V]);
        let expect = WeylElement::monomial(2, 1, 0, PolyXY::x(2))
            .add(&WeylElement::v(2));
        assert_eq!(got, expect);
    }

    #[test]
    fn associativity_on_words() {
        for p in [2u64, 3] {
            let u = WeylElement::u(p);
            let v = WeylElement::v(p);
            let samples = [
                u.clone(),
                v.clone(),
                u.mul(&v),
                v.mul(&u),
                u.mul(&u),
                v.mul(&v).mul(&u),
            ];
            for a in &samples {
                for b in &samples {
                    for c in &samples {
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)), "p = {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_check_all_primes() {
        for p in WEYL_PRIMES {
            let r = weyl_identity_check(p);
            assert!(r.residual_is_zero, "p = {p}");
            assert!(r.powers_central, "p = {p}");
        }
    }

    #[test]
    fn ad_solve_all_primes() {
        for p in WEYL_PRIMES {
            let r = ad_solve(p);
            assert!(r.nilpotent, "p = {p}");
            assert!(r.matrix_constant, "p = {p}");
            let v = WeylElement::v(p);
            assert!(v
                .commutator(&r.preimage)
                .sub(&WeylElement::one(p))
                .is_zero());
        }
    }

    #[test]
    fn center_check_all_primes() {
        for p in WEYL_PRIMES {
            assert!(center_check(p), "p = {p}");
        }
    }
}
