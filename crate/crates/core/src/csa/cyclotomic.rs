//! Exact arithmetic in cyclotomic fields of conductor N <= 24 and the
//! structure report for minimal polynomials of matrices with a scalar
//! power: every irreducible factor must be a shifted r-th power y^r - b
//! with one common r.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactalg::{cyclotomic_poly, IntMatrix};

pub const MAX_CONDUCTOR: u64 = 24;
pub const MAX_SCALAR_POWER: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CycloError {
    #[error("conductor {0} outside 1..={MAX_CONDUCTOR}")]
    BadConductor(u64),
    #[error("no power M^m with m <= {MAX_SCALAR_POWER} is a nonzero scalar")]
    NotScalarPower,
    #[error(
        "could not certify the factor structure: a root outside the searched \
         class (rational times root of unity) would be required"
    )]
    UnresolvedFactorization,
    #[error("division by zero in the field")]
    DivisionByZero,
}

type Rat = BigRational;

fn rat_i(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Element of Q(zeta_N): coefficients of 1, z, ..., z^{phi(N)-1}.
pub type CycloElem = Vec<Rat>;

/// The field Q(zeta_N) as dense polynomials modulo the N-th cyclotomic
/// polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CycloField {
    conductor: u64,
    /// minimal polynomial of zeta, low degree first, monic, integer coeffs
    modulus: Vec<Rat>,
    degree: usize,
}

impl CycloField {
    pub fn new(conductor: u64) -> Result<Self, CycloError> {
        if conductor == 0 || conductor > MAX_CONDUCTOR {
            return Err(CycloError::BadConductor(conductor));
        }
        let phi = cyclotomic_poly(conductor);
        let modulus: Vec<Rat> = phi.iter().map(|&c| rat_i(c as i64)).collect();
        let degree = modulus.len() - 1;
        Ok(CycloField {
            conductor,
            modulus,
            degree,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&self) -> CycloElem {
        vec![Rat::zero(); self.degree]
    }

    pub fn one(&self) -> CycloElem {
        self.from_rational(Rat::one())
    }

    pub fn from_rational(&self, r: Rat) -> CycloElem {
        let mut e = self.zero();
        e[0] = r;
        e
    }

    pub fn from_int(&self, n: i64) -> CycloElem {
        self.from_rational(rat_i(n))
    }

    /// The class of z (a primitive N-th root of 1) when the degree allows.
    pub fn zeta(&self) -> CycloElem {
        if self.degree == 1 {
            // Q(zeta_1) = Q(zeta_2) = Q; zeta is 1 or -1
            return self.from_int(if self.conductor == 2 { -1 } else { 1 });
        }
        let mut e = self.zero();
        e[1] = Rat::one();
        e
    }

    pub fn is_zero(&self, a: &CycloElem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &CycloElem) -> CycloElem {
        a.iter().map(|x| -x).collect()
    }

    pub fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        let d = self.degree;
        let mut conv = vec![Rat::zero(); 2 * d - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    conv[i + j] += ai * bj;
                }
            }
        }
        // reduce modulo the monic modulus
        for k in (d..conv.len()).rev() {
            if conv[k].is_zero() {
                continue;
            }
            let lead = conv[k].clone();
            conv[k] = Rat::zero();
            for i in 0..d {
                if !self.modulus[i].is_zero() {
                    let t = &lead * &self.modulus[i];
                    conv[k - d + i] -= t;
                }
            }
        }
        conv.truncate(d);
        conv
    }

    pub fn inv(&self, a: &CycloElem) -> Result<CycloElem, CycloError> {
        if self.is_zero(a) {
            return Err(CycloError::DivisionByZero);
        }
        // extended Euclid in Q[z] against the irreducible modulus
        let mut r0: Vec<Rat> = self.modulus.clone();
        let mut r1: Vec<Rat> = trim(a.clone());
        let mut s0 = vec![Rat::zero()];
        let mut s1 = vec![Rat::one()];
        while degree(&r1) > 0 || !r1[0].is_zero() {
            if degree(&r1) == 0 {
                break;
            }
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r1 is a nonzero constant; the inverse is s1 / r1 reduced mod modulus
        let c = r1[0].clone();
        debug_assert!(!c.is_zero());
        let mut out = self.zero();
        let inv_c = Rat::one() / c;
        for (i, coeff) in s1.iter().enumerate() {
            let v = coeff * &inv_c;
            if i < self.degree {
                out[i] += v;
            } else {
                // fold high powers through the modulus
                let mut t = self.zero();
                let mut zp = self.one();
                for _ in 0..i {
                    zp = self.mul(&zp, &self.zeta_raw());
                }
                for (k, z) in zp.iter().enumerate() {
                    t[k] = z * &v;
                }
                out = self.add(&out, &t);
            }
        }
        Ok(out)
    }

    fn zeta_raw(&self) -> CycloElem {
        if self.degree == 1 {
            // z reduces to the root of the linear modulus: z = -c0
            return self.from_rational(-self.modulus[0].clone());
        }
        let mut e = self.zero();
        e[1] = Rat::one();
        e
    }

    /// All roots of unity contained in the field: powers of zeta and their
    /// negatives (deduplicated).
    pub fn roots_of_unity(&self) -> Vec<CycloElem> {
        let mut out: Vec<CycloElem> = Vec::new();
        let mut acc = self.one();
        for _ in 0..self.conductor {
            if !out.contains(&acc) {
                out.push(acc.clone());
            }
            let neg = self.neg(&acc);
            if !out.contains(&neg) {
                out.push(neg);
            }
            acc = self.mul(&acc, &self.zeta_raw());
        }
        out
    }

    pub fn format_elem(&self, a: &CycloElem) -> String {
        if self.is_zero(a) {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = format_rat(c);
            let part = match i {
                0 => cs,
                1 => {
                    if c.is_one() {
                        "z".into()
                    } else {
                        format!("{cs}*z")
                    }
                }
                _ => {
                    if c.is_one() {
                        format!("z^{i}")
                    } else {
                        format!("{cs}*z^{i}")
                    }
                }
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// dense polynomial helpers over Q, low degree first

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn degree(p: &[Rat]) -> usize {
    p.len() - 1
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let db = degree(&b);
    let lead_inv = Rat::one() / b[db].clone();
    let mut rem = a.to_vec();
    if degree(&rem) < db {
        return (vec![Rat::zero()], trim(rem));
    }
    let dq = degree(&rem) - db;
    let mut quo = vec![Rat::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = &rem[k + db] * &lead_inv;
        quo[k] = c.clone();
        if !c.is_zero() {
            for i in 0..=db {
                let t = &c * &b[i];
                rem[k + i] -= t;
            }
        }
    }
    (trim(quo), trim(rem))
}

/// Square matrix over Q(zeta_N).
#[derive(Debug, Clone, PartialEq)]
pub struct CycloMatrix {
    field: CycloField,
    n: usize,
    entries: Vec<CycloElem>,
}

impl CycloMatrix {
    pub fn new(field: CycloField, n: usize, entries: Vec<CycloElem>) -> Self {
        assert_eq!(entries.len(), n * n);
        CycloMatrix { field, n, entries }
    }

    pub fn from_int_matrix(field: CycloField, m: &IntMatrix) -> Self {
        let n = m.dim();
        let entries = (0..n * n)
            .map(|idx| field.from_int(m.get(idx / n, idx % n) as i64))
            .collect();
        CycloMatrix { field, n, entries }
    }

    pub fn field(&self) -> &CycloField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloElem {
        &self.entries[i * self.n + j]
    }

    pub fn identity(field: CycloField, n: usize) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        CycloMatrix { field, n, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.n;
        let mut entries = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if f.is_zero(aik) {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(aik, other.get(k, j));
                    entries[i * n + j] = f.add(&entries[i * n + j], &t);
                }
            }
        }
        CycloMatrix {
            field: f.clone(),
            n,
            entries,
        }
    }

    /// Some(scalar) when the matrix is scalar.
    pub fn as_scalar(&self) -> Option<CycloElem> {
        let f = &self.field;
        let n = self.n;
        let a = self.get(0, 0).clone();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    if self.get(i, j) != &a {
                        return None;
                    }
                } else if !f.is_zero(self.get(i, j)) {
                    return None;
                }
            }
        }
        Some(a)
    }

    /// Characteristic polynomial over the field, low degree first, monic.
    pub fn char_poly(&self) -> Vec<CycloElem> {
        let f = &self.field;
        let n = self.n;
        let mut coeffs = vec![f.zero(); n + 1];
        coeffs[n] = f.one();
        let mut m = self.clone();
        for k in 1..=n {
            if k > 1 {
                let c = coeffs[n - k + 1].clone();
                let mut shifted = m.clone();
                for i in 0..n {
                    shifted.entries[i * n + i] = f.add(&shifted.entries[i * n + i], &c);
                }
                m = self.mul(&shifted);
            }
            let mut tr = f.zero();
            for i in 0..n {
                tr = f.add(&tr, m.get(i, i));
            }
            // divide by k, exact over characteristic zero
            let kinv = f.from_rational(Rat::one() / rat_i(k as i64));
            let c = f.mul(&tr, &kinv);
            coeffs[n - k] = f.neg(&c);
        }
        coeffs
    }
}

// polynomial helpers with coefficients in the cyclotomic field

fn kpoly_trim(f: &CycloField, mut p: Vec<CycloElem>) -> Vec<CycloElem> {
    while p.len() > 1 && f.is_zero(p.last().unwrap()) {
        p.pop();
    }
    p
}

fn kpoly_divmod(
    f: &CycloField,
    a: &[CycloElem],
    b: &[CycloElem],
) -> Result<(Vec<CycloElem>, Vec<CycloElem>), CycloError> {
    let b = kpoly_trim(f, b.to_vec());
    let db = b.len() - 1;
    let lead_inv = f.inv(&b[db])?;
    let mut rem = a.to_vec();
    if rem.len() - 1 < db {
        return Ok((vec![f.zero()], kpoly_trim(f, rem)));
    }
    let dq = rem.len() - 1 - db;
    let mut quo = vec![f.zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = f.mul(&rem[k + db], &lead_inv);
        quo[k] = c.clone();
        if !f.is_zero(&c) {
            for i in 0..=db {
                let t = f.mul(&c, &b[i]);
                rem[k + i] = f.sub(&rem[k + i], &t);
            }
        }
    }
    Ok((kpoly_trim(f, quo), kpoly_trim(f, rem)))
}

fn kpoly_gcd(
    f: &CycloField,
    a: &[CycloElem],
    b: &[CycloElem],
) -> Result<Vec<CycloElem>, CycloError> {
    let mut r0 = kpoly_trim(f, a.to_vec());
    let mut r1 = kpoly_trim(f, b.to_vec());
    while !(r1.len() == 1 && f.is_zero(&r1[0])) {
        let (_, rem) = kpoly_divmod(f, &r0, &r1)?;
        r0 = r1;
        r1 = rem;
    }
    // normalize monic
    let d = r0.len() - 1;
    let inv = f.inv(&r0[d])?;
    Ok(r0.iter().map(|c| f.mul(c, &inv)).collect())
}

fn kpoly_derivative(f: &CycloField, a: &[CycloElem]) -> Vec<CycloElem> {
    if a.len() == 1 {
        return vec![f.zero()];
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        let k = f.from_int(i as i64);
        out.push(f.mul(c, &k));
    }
    kpoly_trim(f, out)
}

fn kpoly_eval(f: &CycloField, a: &[CycloElem], x: &CycloElem) -> CycloElem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

fn kpoly_mul(f: &CycloField, a: &[CycloElem], b: &[CycloElem]) -> Vec<CycloElem> {
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    kpoly_trim(f, out)
}

/// Rational roots of a polynomial with rational coefficients, by the
/// rational root theorem after clearing denominators. Complete.
fn rational_roots(poly: &[Rat]) -> Vec<Rat> {
    let poly = trim(poly.to_vec());
    if poly.len() == 1 {
        return Vec::new(); // constant
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in &poly {
        let d = c.denom();
        let g = num_integer::Integer::gcd(&lcm, d);
        lcm = &lcm / g * d;
    }
    let ints: Vec<BigInt> = poly.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    // strip trailing zero coefficients at the bottom: t = 0 roots
    let mut roots = Vec::new();
    let mut low = 0;
    while low < ints.len() - 1 && ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rat::zero());
    }
    let ints = &ints[low..];
    let c0 = &ints[0];
    let cd = ints.last().unwrap();
    let (Some(c0a), Some(cda)) = (c0.abs().to_u128(), cd.abs().to_u128()) else {
        return roots; // coefficients beyond the desk scale; give up on extras
    };
    let divs = |n: u128| -> Vec<u128> {
        let mut out = Vec::new();
        let mut i = 1;
        while i * i <= n {
            if n % i == 0 {
                out.push(i);
                out.push(n / i);
            }
            i += 1;
        }
        out
    };
    for p in divs(c0a) {
        for q in divs(cda) {
            for sign in [1i64, -1] {
                let cand = Rat::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                let mut acc = Rat::zero();
                for c in ints.iter().rev() {
                    acc = acc * &cand + Rat::from_integer(c.clone());
                }
                if acc.is_zero() && !roots.contains(&cand) {
                    roots.push(cand.clone());
                }
            }
        }
    }
    roots
}

/// Roots of a monic polynomial over Q(zeta_N) of the special form
/// rational * (root of unity in the field). Exact and complete within that
/// class of roots.
fn roots_in_field(f: &CycloField, poly: &[CycloElem]) -> Vec<CycloElem> {
    let mut found: Vec<CycloElem> = Vec::new();
    for omega in f.roots_of_unity() {
        // substitute y = t * omega, take coordinate polynomials in t
        let deg = poly.len() - 1;
        let mut omega_pow = f.one();
        let mut coeffs_t: Vec<CycloElem> = Vec::with_capacity(deg + 1);
        for c in poly.iter() {
            coeffs_t.push(f.mul(c, &omega_pow));
            omega_pow = f.mul(&omega_pow, &omega);
        }
        // first nonzero coordinate polynomial
        for coord in 0..f.degree() {
            let qpoly: Vec<Rat> = coeffs_t.iter().map(|c| c[coord].clone()).collect();
            if trim(qpoly.clone()).len() == 1 && qpoly[0].is_zero() {
                continue;
            }
            for t in rational_roots(&qpoly) {
                let cand: CycloElem = omega.iter().map(|x| x * &t).collect();
                if f.is_zero(&kpoly_eval(f, poly, &cand)) && !found.contains(&cand) {
                    found.push(cand);
                }
            }
            break;
        }
    }
    found
}

/// Is b an e-th power in the field, within the searched root class?
fn has_eth_root(f: &CycloField, b: &CycloElem, e: u32) -> bool {
    // roots of y^e - b
    let mut poly = vec![f.zero(); e as usize + 1];
    poly[0] = f.neg(b);
    poly[e as usize] = f.one();
    !roots_in_field(f, &poly).is_empty()
}

/// One reported factor y^r - b.
#[derive(Debug, Clone)]
pub struct ShiftedPowerFactor {
    pub r: u32,
    pub constant: CycloElem,
}

#[derive(Debug, Clone)]
pub struct MinPolyReport {
    pub conductor: u64,
    /// smallest m with M^m a nonzero scalar
    pub m: u32,
    pub scalar: CycloElem,
    /// common r across the irreducible factors
    pub r: u32,
    pub factors: Vec<ShiftedPowerFactor>,
    /// minimal polynomial, low degree first, monic
    pub min_poly: Vec<CycloElem>,
    /// the product of the reported factors reproduces min_poly exactly
    pub product_checked: bool,
    /// irreducibility is decided relative to the chosen conductor; a larger
    /// one could split a factor further
    pub conductor_caveat: &'static str,
}

pub const CONDUCTOR_CAVEAT: &str =
    "irreducibility is certified relative to the chosen conductor; enlarging it may split factors";

/// Verify the shifted-power shape of the minimal polynomial of a matrix
/// whose m-th power is a nonzero scalar, and report r with the constants.
pub fn minpoly_structure(m: &CycloMatrix) -> Result<MinPolyReport, CycloError> {
    let f = m.field().clone();
    // smallest scalar power
    let mut power = m.clone();
    let mut scalar = None;
    let mut m_exp = 0u32;
    for e in 1..=MAX_SCALAR_POWER {
        if e > 1 {
            power = power.mul(m);
        }
        if let Some(a) = power.as_scalar() {
            if !f.is_zero(&a) {
                scalar = Some(a);
                m_exp = e;
                break;
            }
        }
    }
    let Some(scalar) = scalar else {
        return Err(CycloError::NotScalarPower);
    };

    // minimal polynomial: the annihilator y^m - a is separable (char 0,
    // a != 0), so the minimal polynomial is the squarefree part of the
    // characteristic polynomial
    let char_poly = m.char_poly();
    let deriv = kpoly_derivative(&f, &char_poly);
    let g = kpoly_gcd(&f, &char_poly, &deriv)?;
    let (min_poly, rem) = kpoly_divmod(&f, &char_poly, &g)?;
    debug_assert!(rem.len() == 1 && f.is_zero(&rem[0]));

    // candidate r: divisors of m with the polynomial supported on y^r
    let deg = min_poly.len() - 1;
    let mut divisors: Vec<u32> = (1..=m_exp).filter(|d| m_exp % d == 0).collect();
    divisors.reverse();
    'rloop: for &r in &divisors {
        if deg % r as usize != 0 {
            continue;
        }
        let supported = min_poly
            .iter()
            .enumerate()
            .all(|(i, c)| i % r as usize == 0 || f.is_zero(c));
        if !supported {
            continue;
        }
        // g(z) = f(y^r -> z) must split into distinct linear factors
        let gpoly: Vec<CycloElem> = min_poly.iter().step_by(r as usize).cloned().collect();
        let roots = roots_in_field(&f, &gpoly);
        if roots.len() != gpoly.len() - 1 {
            continue;
        }
        // each y^r - b must be irreducible: no prime divisor e of r may
        // admit an e-th root of b, and for 4 | r, -4b must not be a 4th power
        for b in &roots {
            for e in [2u32, 3] {
                if r % e == 0 && has_eth_root(&f, b, e) {
                    continue 'rloop;
                }
            }
            if r % 4 == 0 {
                let minus4b = f.mul(&f.from_int(-4), b);
                if has_eth_root(&f, &minus4b, 4) {
                    continue 'rloop;
                }
            }
        }
        // reconstruct and compare
        let mut product = vec![f.one()];
        let mut factors = Vec::new();
        for b in &roots {
            let mut factor = vec![f.zero(); r as usize + 1];
            factor[0] = f.neg(b);
            factor[r as usize] = f.one();
            product = kpoly_mul(&f, &product, &factor);
            factors.push(ShiftedPowerFactor {
                r,
                constant: b.clone(),
            });
        }
        let product_checked = product == min_poly;
        if !product_checked {
            continue;
        }
        return Ok(MinPolyReport {
            conductor: f.conductor(),
            m: m_exp,
            scalar,
            r,
            factors,
            min_poly,
            product_checked,
            conductor_caveat: CONDUCTOR_CAVEAT,
        });
    }
    Err(CycloError::UnresolvedFactorization)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[Vec<i128>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn field_arithmetic_q_i() {
        let f = CycloField::new(4).unwrap();
        assert_eq!(f.degree(), 2);
        let i = f.zeta();
        let m1 = f.mul(&i, &i);
        assert_eq!(m1, f.from_int(-1));
        let inv = f.inv(&i).unwrap();
        assert_eq!(f.mul(&i, &inv), f.one());
    }

    #[test]
    fn field_inverse_sweep() {
        for n in [1u64, 3, 4, 5, 8, 12, 24] {
            let f = CycloField::new(n).unwrap();
            // a few nonzero elements
            let mut samples = vec![f.one(), f.from_int(2), f.zeta()];
            samples.push(f.add(&f.zeta(), &f.from_int(1)));
            for s in samples {
                if f.is_zero(&s) {
                    continue;
                }
                let inv = f.inv(&s).unwrap();
                assert_eq!(f.mul(&s, &inv), f.one(), "N = {n}");
            }
        }
    }

    #[test]
    fn scalar_matrix_report() {
        let f = CycloField::new(1).unwrap();
        let m = CycloMatrix::from_int_matrix(f, &int_matrix(&[vec![5, 0], vec![0, 5]]));
        let r = minpoly_structure(&m).unwrap();
        assert_eq!(r.r, 1);
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.min_poly.len(), 2);
    }

    #[test]
    fn rotation_over_q_i_splits() {
        let f = CycloField::new(4).unwrap();
        let m = CycloMatrix::from_int_matrix(f.clone(), &int_matrix(&[vec![0, -1], vec![1, 0]]));
        let r = minpoly_structure(&m).unwrap();
        assert_eq!(r.r, 1);
        assert_eq!(r.factors.len(), 2);
        // constants are the two square roots of -1
        let i = f.zeta();
        let consts: Vec<&CycloElem> = r.factors.iter().map(|x| &x.constant).collect();
        assert!(consts.contains(&&i));
        assert!(consts.contains(&&f.neg(&i)));
        assert!(r.product_checked);
    }

    #[test]
    fn rotation_over_q_stays_quadratic() {
        let f = CycloField::new(1).unwrap();
        let m = CycloMatrix::from_int_matrix(f.clone(), &int_matrix(&[vec![0, -1], vec![1, 0]]));
        let r = minpoly_structure(&m).unwrap();
        assert_eq!(r.r, 2);
        assert_eq!(r.factors.len(), 1);
        assert_eq!(r.factors[0].constant, f.from_int(-1));
        assert!(r.product_checked);
    }

    #[test]
    fn non_scalar_power_is_an_error() {
        let f = CycloField::new(1).unwrap();
        let m = CycloMatrix::from_int_matrix(f, &int_matrix(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(minpoly_structure(&m).unwrap_err(), CycloError::NotScalarPower);
    }

    #[test]
    fn rational_roots_complete() {
        // (t - 2)(t + 1/3) = t^2 - 5/3 t - 2/3
        let poly = vec![
            Rat::new(BigInt::from(-2), BigInt::from(3)),
            Rat::new(BigInt::from(-5), BigInt::from(3)),
            Rat::one(),
        ];
        let mut roots = rational_roots(&poly);
        roots.sort();
        assert_eq!(
            roots,
            vec![Rat::new(BigInt::from(-1), BigInt::from(3)), rat_i(2)]
        );
    }
}
