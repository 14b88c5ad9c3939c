//! Residue calculus for degree-p classes on the projective line over a
//! perfect field of characteristic p: the cokernel of c -> c - c^p,
//! residues of t df/f read off the divisor of f, construction of
//! admissible data on a point set, and the characteristic-2 local conic
//! criterion.

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{FieldError, FiniteField, FqElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrauerError {
    #[error("divisor is not principal: multiplicities sum to {0}, not 0")]
    DivisorNotPrincipal(i64),
    #[error("{0}")]
    Obstruction(String),
    #[error("point set must contain at least 2 distinct points")]
    TooFewPoints,
    #[error("duplicate point in the set")]
    DuplicatePoint,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Point of the projective line over F_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P1Point {
    Finite(FqElem),
    Infinity,
}

impl P1Point {
    pub fn parse(f: &FiniteField, s: &str) -> Result<Self, BrauerError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infty") || t == "oo" {
            return Ok(P1Point::Infinity);
        }
        Ok(P1Point::Finite(f.parse_elem(t)?))
    }

    pub fn render(&self, f: &FiniteField) -> String {
        match self {
            P1Point::Infinity => "inf".to_string(),
            P1Point::Finite(e) => f.format_elem(*e),
        }
    }
}

/// The additive map theta(c) = c - c^p with its image and canonical coset
/// representatives.
#[derive(Debug, Clone)]
pub struct ASCokernel {
    pub field: FiniteField,
    /// image of theta, sorted by element index
    pub image: Vec<FqElem>,
    /// one canonical representative per coset, in canonical field order
    pub reps: Vec<FqElem>,
}

impl ASCokernel {
    pub fn order(&self) -> u64 {
        self.reps.len() as u64
    }

    pub fn contains_in_image(&self, a: FqElem) -> bool {
        self.image
            .binary_search_by_key(&a.index(self.field.p()), |e| e.index(self.field.p()))
            .is_ok()
    }

    /// Canonical representative of the coset of a.
    pub fn rep_of(&self, a: FqElem) -> FqElem {
        let f = &self.field;
        *self
            .reps
            .iter()
            .find(|&&r| self.contains_in_image(f.sub(a, r)))
            .expect("coset representatives cover the field")
    }
}

/// Exhaustive computation of im(theta) and its cosets. The map is
/// F_p-linear with kernel the prime field, so the cokernel has order p.
pub fn as_cokernel(field: &FiniteField) -> ASCokernel {
    let image = field.artin_schreier_image();
    let contains = |image: &[FqElem], a: FqElem| {
        image
            .binary_search_by_key(&a.index(field.p()), |e| e.index(field.p()))
            .is_ok()
    };
    let mut reps: Vec<FqElem> = Vec::new();
    for cand in field.canonical_ordering() {
        let covered = reps.iter().any(|&r| contains(&image, field.sub(cand, r)));
        if !covered {
            reps.push(cand);
        }
    }
    debug_assert_eq!(reps.len() as u64 * image.len() as u64, field.order());
    ASCokernel {
        field: field.clone(),
        image,
        reps,
    }
}

/// An invertible function on the complement of a point set, recorded by its
/// divisor: points with integer multiplicities summing to zero.
#[derive(Debug, Clone)]
pub struct FactoredFunction {
    pub field: FiniteField,
    pub points: Vec<(P1Point, i64)>,
}

impl FactoredFunction {
    pub fn new(field: FiniteField, points: Vec<(P1Point, i64)>) -> Result<Self, BrauerError> {
        let sum: i64 = points.iter().map(|&(_, m)| m).sum();
        if sum != 0 {
            return Err(BrauerError::DivisorNotPrincipal(sum));
        }
        Ok(FactoredFunction { field, points })
    }
}

/// Residues of the form t df/f at the points of the divisor, reduced into
/// canonical cokernel representatives.
#[derive(Debug, Clone)]
pub struct ResidueData {
    pub t: FqElem,
    /// (point, raw residue t * ord, canonical cokernel representative)
    pub residues: Vec<(P1Point, FqElem, FqElem)>,
    /// sum of the raw residues; the residue theorem forces 0
    pub raw_sum: FqElem,
}

/// The residue of t df/f at P is t multiplied by the order of f at P,
/// carried into the field through the prime subfield.
pub fn residues(f: &FactoredFunction, t: FqElem) -> ResidueData {
    let field = &f.field;
    let coker = as_cokernel(field);
    let mut raw_sum = field.zero();
    let mut out = Vec::new();
    for &(p, m) in &f.points {
        let raw = field.mul(t, field.from_int(m));
        raw_sum = field.add(raw_sum, raw);
        out.push((p, raw, coker.rep_of(raw)));
    }
    ResidueData {
        t,
        residues: out,
        raw_sum,
    }
}

/// Admissible data on a point set: multiplicities nonzero mod p summing to
/// zero, and a scalar outside the image of theta.
#[derive(Debug, Clone)]
pub struct AdmissibleForm {
    pub function: FactoredFunction,
    pub t: FqElem,
    /// per-point cokernel class of t * m_P, all nonzero
    pub classes: Vec<(P1Point, FqElem)>,
}

/// Construct multiplicities m_P with m_P != 0 mod p and sum 0, plus the
/// smallest scalar outside im(theta). For p = 2 an odd point count is a
/// genuine parity obstruction: an odd count of odd numbers cannot sum to 0.
pub fn admissible_form(
    field: &FiniteField,
    delta: &[P1Point],
) -> Result<AdmissibleForm, BrauerError> {
    let p = field.characteristic() as i64;
    if delta.len() < 2 {
        return Err(BrauerError::TooFewPoints);
    }
    let mut dedup = delta.to_vec();
    dedup.sort();
    dedup.dedup();
    if dedup.len() != delta.len() {
        return Err(BrauerError::DuplicatePoint);
    }
    let k = delta.len() as i64;
    if p == 2 && k % 2 != 0 {
        return Err(BrauerError::Obstruction(format!(
            "{k} odd multiplicities cannot sum to 0 when p = 2"
        )));
    }
    // ones everywhere, balanced at the last point; bump the first
    // multiplicity when the balance lands on a multiple of p
    let mut mults = vec![1i64; delta.len()];
    mults[delta.len() - 1] = -(k - 1);
    if (k - 1) % p == 0 {
        // p is odd here: k - 1 even with p = 2 means k odd, already rejected
        mults[0] = 2;
        mults[delta.len() - 1] = -k;
    }
    debug_assert_eq!(mults.iter().sum::<i64>(), 0);
    debug_assert!(mults.iter().all(|&m| m.rem_euclid(p) != 0));

    let coker = as_cokernel(field);
    let t = *coker
        .reps
        .iter()
        .find(|&&r| !coker.contains_in_image(r))
        .expect("the cokernel has order p >= 2");

    let function = FactoredFunction::new(
        field.clone(),
        delta.iter().copied().zip(mults.iter().copied()).collect(),
    )?;
    let classes: Vec<(P1Point, FqElem)> = function
        .points
        .iter()
        .map(|&(pt, m)| (pt, coker.rep_of(field.mul(t, field.from_int(m)))))
        .collect();
    // t outside im(theta) and m nonzero mod p force every class nonzero
    debug_assert!(classes.iter().all(|(_, c)| !c.is_zero()));
    Ok(AdmissibleForm {
        function,
        t,
        classes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConicClass {
    /// h^2 - h - a is irreducible: the local conic has no rational point
    NoPoint,
    /// h^2 - h - a splits
    Splits,
}

/// Characteristic-2 local conic criterion: the conic attached to `a` has no
/// rational point iff h^2 - h - a has no root, iff a lies outside im(theta).
pub fn conic_char2_class(field: &FiniteField, a: FqElem) -> ConicClass {
    assert_eq!(field.characteristic(), 2);
    let has_root = field
        .elements()
        .into_iter()
        .any(|h| field.sub(field.sub(field.mul(h, h), h), a).is_zero());
    if has_root {
        ConicClass::Splits
    } else {
        ConicClass::NoPoint
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let c = as_cokernel(&f2);
        assert_eq!(c.image, vec![f2.zero()]);
        assert_eq!(c.order(), 2);

        let f4 = FiniteField::new(2, 2).unwrap();
        let c = as_cokernel(&f4);
        assert_eq!(c.image.len(), 2);
        assert!(c.contains_in_image(f4.one()));
        assert_eq!(c.order(), 2);

        let f3 = FiniteField::new(3, 1).unwrap();
        let c = as_cokernel(&f3);
        assert_eq!(c.image, vec![f3.zero()]);
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn cokernel_index_relation() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            let c = as_cokernel(&f);
            assert_eq!(c.image.len() as u64 * c.order(), f.order());
            assert_eq!(c.order(), p);
        }
    }

    #[test]
    fn residue_examples() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let func = FactoredFunction::new(
            f2.clone(),
            vec![
                (P1Point::Finite(f2.zero()), 1),
                (P1Point::Finite(f2.one()), -1),
            ],
        )
        .unwrap();
        let r = residues(&func, f2.one());
        assert!(r.raw_sum.is_zero());
        assert!(r.residues.iter().all(|(_, raw, _)| *raw == f2.one()));

        // t = 0 kills everything
        let r = residues(&func, f2.zero());
        assert!(r.residues.iter().all(|(_, raw, _)| raw.is_zero()));

        // even multiplicities vanish mod 2
        let func = FactoredFunction::new(
            f2.clone(),
            vec![(P1Point::Finite(f2.zero()), 2), (P1Point::Infinity, -2)],
        )
        .unwrap();
        let r = residues(&func, f2.one());
        assert!(r.residues.iter().all(|(_, raw, _)| raw.is_zero()));
    }

    #[test]
    fn divisor_must_be_principal() {
        let f2 = FiniteField::new(2, 1).unwrap();
        assert!(matches!(
            FactoredFunction::new(f2.clone(), vec![(P1Point::Infinity, 1)]),
            Err(BrauerError::DivisorNotPrincipal(1))
        ));
    }

    #[test]
    fn admissible_form_f4() {
        let f4 = FiniteField::new(2, 2).unwrap();
        let w = f4.gen_x();
        let delta = vec![
            P1Point::Finite(f4.zero()),
            P1Point::Finite(f4.one()),
            P1Point::Finite(w),
            P1Point::Infinity,
        ];
        let a = admissible_form(&f4, &delta).unwrap();
        let mults: Vec<i64> = a.function.points.iter().map(|&(_, m)| m).collect();
        assert_eq!(mults, vec![1, 1, 1, -3]);
        assert_eq!(a.t, w);
        assert!(a.classes.iter().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn admissible_form_parity_obstruction() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let delta = vec![
            P1Point::Finite(f2.zero()),
            P1Point::Finite(f2.one()),
            P1Point::Infinity,
        ];
        assert!(matches!(
            admissible_form(&f2, &delta),
            Err(BrauerError::Obstruction(_))
        ));
    }

    #[test]
    fn admissible_form_f3() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let delta = vec![P1Point::Finite(f3.zero()), P1Point::Infinity];
        let a = admissible_form(&f3, &delta).unwrap();
        let mults: Vec<i64> = a.function.points.iter().map(|&(_, m)| m).collect();
        assert_eq!(mults, vec![1, -1]);
        assert_eq!(a.t, f3.one());
    }

    #[test]
    fn conic_class_examples() {
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(conic_char2_class(&f2, f2.zero()), ConicClass::Splits);
        assert_eq!(conic_char2_class(&f2, f2.one()), ConicClass::NoPoint);

        let f4 = FiniteField::new(2, 2).unwrap();
        let w = f4.gen_x();
        assert_eq!(conic_char2_class(&f4, w), ConicClass::NoPoint);
    }

    #[test]
    fn conic_class_matches_cokernel() {
        for k in 1..=3 {
            let f = FiniteField::new(2, k).unwrap();
            let coker = as_cokernel(&f);
            for a in f.elements() {
                let in_img = coker.contains_in_image(a);
                let class = conic_char2_class(&f, a);
                assert_eq!(class == ConicClass::Splits, in_img, "k = {k}");
            }
        }
    }

    #[test]
    fn point_parse_roundtrip() {
        let f4 = FiniteField::new(2, 2).unwrap();
        for s in ["0", "1", "w", "w+1", "inf"] {
            let p = P1Point::parse(&f4, s).unwrap();
            let rendered = p.render(&f4);
            let p2 = P1Point::parse(&f4, &rendered).unwrap();
            assert_eq!(p, p2);
        }
    }
}
