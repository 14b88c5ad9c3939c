//! Exponent-versus-order audits for finite matrix groups over small finite
//! fields, in both the linear and the projective setting.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{FiniteField, FqElem};

pub const GROUP_SIZE_LIMIT: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("group size exceeds the audit limit {GROUP_SIZE_LIMIT}")]
    GroupTooLarge,
}

/// Dense square matrix over a small finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    n: usize,
    entries: Vec<FqElem>,
}

impl FqMatrix {
    pub fn new(n: usize, entries: Vec<FqElem>) -> Self {
        assert_eq!(entries.len(), n * n);
        FqMatrix { n, entries }
    }

    pub fn identity(f: &FiniteField, n: usize) -> Self {
        let mut entries = vec![f.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = f.one();
        }
        FqMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, f: &FiniteField, other: &Self) -> Self {
        let n = self.n;
        let mut entries = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(aik, other.get(k, j));
                    entries[i * n + j] = f.add(entries[i * n + j], t);
                }
            }
        }
        FqMatrix { n, entries }
    }

    pub fn det(&self, f: &FiniteField) -> FqElem {
        // cofactor expansion; n <= 3 in practice
        fn det_rec(f: &FiniteField, n: usize, a: &[FqElem]) -> FqElem {
            if n == 1 {
                return a[0];
            }
            let mut acc = f.zero();
            let mut minor = vec![f.zero(); (n - 1) * (n - 1)];
            for col in 0..n {
                let top = a[col];
                if top.is_zero() {
                    continue;
                }
                let mut idx = 0;
                for i in 1..n {
                    for j in 0..n {
                        if j != col {
                            minor[idx] = a[i * n + j];
                            idx += 1;
                        }
                    }
                }
                let sub = det_rec(f, n - 1, &minor);
                let term = f.mul(top, sub);
                acc = if col % 2 == 0 {
                    f.add(acc, term)
                } else {
                    f.sub(acc, term)
                };
            }
            acc
        }
        det_rec(f, self.n, &self.entries)
    }

    /// Scale so the first nonzero entry in row-major order is 1: the
    /// canonical representative of the projective class.
    pub fn projective_normalize(&self, f: &FiniteField) -> Self {
        let lead = self
            .entries
            .iter()
            .find(|e| !e.is_zero())
            .expect("nonzero matrix");
        let inv = f.inv(*lead).expect("nonzero entry");
        FqMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&e| f.mul(e, inv)).collect(),
        }
    }
}

/// Full element list of a subgroup of GL_n(F_q) or PGL_n(F_q).
#[derive(Debug, Clone)]
pub struct FqMatrixGroup {
    pub field: FiniteField,
    pub n: usize,
    pub projective: bool,
    pub elements: Vec<FqMatrix>,
}

impl FqMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// All of GL_n(F_q) by enumeration; n is expected to be 2.
pub fn full_gl(f: &FiniteField, n: usize) -> Result<FqMatrixGroup, AuditError> {
    let q = f.order();
    let cells = (n * n) as u32;
    let total = (q as u128).pow(cells);
    if total > 10_000_000 {
        return Err(AuditError::GroupTooLarge);
    }
    let elements_of_f = f.elements();
    let mut elements = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let entries: Vec<FqElem> = (0..cells)
            .map(|_| {
                let e = elements_of_f[(rest % q as u128) as usize];
                rest /= q as u128;
                e
            })
            .collect();
        let m = FqMatrix::new(n, entries);
        if !m.det(f).is_zero() {
            elements.push(m);
        }
        if elements.len() > GROUP_SIZE_LIMIT {
            return Err(AuditError::GroupTooLarge);
        }
    }
    Ok(FqMatrixGroup {
        field: f.clone(),
        n,
        projective: false,
        elements,
    })
}

/// All of PGL_n(F_q): the projectively normalized classes of GL_n(F_q).
pub fn full_pgl(f: &FiniteField, n: usize) -> Result<FqMatrixGroup, AuditError> {
    let gl = full_gl(f, n)?;
    let mut seen = HashSet::new();
    let mut elements = Vec::new();
    for m in gl.elements {
        let norm = m.projective_normalize(f);
        if seen.insert(norm.clone()) {
            elements.push(norm);
        }
    }
    Ok(FqMatrixGroup {
        field: f.clone(),
        n,
        projective: true,
        elements,
    })
}

/// Product closure of generators inside GL or PGL.
pub fn closure_fq(
    f: &FiniteField,
    n: usize,
    projective: bool,
    gens: &[FqMatrix],
    cap: usize,
) -> Result<FqMatrixGroup, AuditError> {
    let normalize = |m: &FqMatrix| -> FqMatrix {
        if projective {
            m.projective_normalize(f)
        } else {
            m.clone()
        }
    };
    let mut seen: HashSet<FqMatrix> = HashSet::new();
    let mut elements = Vec::new();
    let mut frontier = Vec::new();
    let id = FqMatrix::identity(f, n);
    for m in std::iter::once(&id).chain(gens) {
        let m = normalize(m);
        if seen.insert(m.clone()) {
            elements.push(m.clone());
            frontier.push(m);
        }
    }
    while let Some(m) = frontier.pop() {
        for g in gens {
            let prod = normalize(&m.mul(f, g));
            if seen.insert(prod.clone()) {
                elements.push(prod.clone());
                frontier.push(prod);
                if elements.len() > cap {
                    return Err(AuditError::GroupTooLarge);
                }
            }
        }
    }
    Ok(FqMatrixGroup {
        field: f.clone(),
        n,
        projective,
        elements,
    })
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / (gcd_u128(a as u128, b as u128) as u64) * b
}

/// Order of one element inside the group (projective orders use the
/// normalized identity).
pub fn element_order(f: &FiniteField, projective: bool, m: &FqMatrix) -> u64 {
    let id = FqMatrix::identity(f, m.dim());
    let normalize = |x: &FqMatrix| -> FqMatrix {
        if projective {
            x.projective_normalize(f)
        } else {
            x.clone()
        }
    };
    let base = normalize(m);
    let mut acc = base.clone();
    let mut k = 1u64;
    while acc != id {
        acc = normalize(&acc.mul(f, &base));
        k += 1;
    }
    k
}

/// Largest factor of n coprime to p.
pub fn coprime_part(mut n: u128, p: u64) -> u128 {
    if p == 0 {
        return n;
    }
    while n % p as u128 == 0 {
        n /= p as u128;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AuditMode {
    /// |G|' <= d^n with d the exponent of the char-coprime-order elements
    General,
    /// |G| <= (n' d)^{n-1} with d the exponent of the group
    Projective,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub mode: AuditMode,
    pub group_order: u128,
    /// largest factor of |G| coprime to the characteristic
    pub coprime_order: u128,
    /// the exponent d entering the bound
    pub d: u64,
    /// largest factor of n coprime to the characteristic
    pub n_prime: u64,
    pub bound: u128,
    pub holds: bool,
    pub slack: i128,
    /// projective case only: the sharp statement assumes char does not
    /// divide d; recorded for information, the inequality is checked anyway
    pub char_divides_d: bool,
}

/// Audit the exponent bound for one explicit group.
pub fn exponent_bound_audit(group: &FqMatrixGroup, mode: AuditMode) -> Result<AuditReport, AuditError> {
    if group.order() > GROUP_SIZE_LIMIT {
        return Err(AuditError::GroupTooLarge);
    }
    let f = &group.field;
    let p = f.characteristic();
    let order = group.order() as u128;
    let coprime_order = coprime_part(order, p);
    let n_prime = coprime_part(group.n as u128, p) as u64;

    let mut d_all = 1u64;
    let mut d_coprime = 1u64;
    for m in &group.elements {
        let o = element_order(f, group.projective, m);
        d_all = lcm_u64(d_all, o);
        if o % p != 0 {
            d_coprime = lcm_u64(d_coprime, o);
        }
    }

    let (d, bound, target) = match mode {
        AuditMode::General => {
            let bound = (d_coprime as u128).pow(group.n as u32);
            (d_coprime, bound, coprime_order)
        }
        AuditMode::Projective => {
            let bound = ((n_prime * d_all) as u128).pow(group.n as u32 - 1);
            (d_all, bound, order)
        }
    };
    Ok(AuditReport {
        mode,
        group_order: order,
        coprime_order,
        d,
        n_prime,
        bound,
        holds: target <= bound,
        slack: bound as i128 - target as i128,
        char_divides_d: d_all % p == 0,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub mode: AuditMode,
    pub subgroups_audited: usize,
    pub violations: usize,
    pub min_slack: i128,
}

/// Audit every cyclic subgroup and a deterministic sample of 2-generated
/// subgroups of the ambient group. `pair_budget` caps how many generator
/// pairs are closed.
pub fn sweep_subgroup_audits(
    ambient: &FqMatrixGroup,
    mode: AuditMode,
    pair_budget: usize,
) -> Result<SweepSummary, AuditError> {
    let f = &ambient.field;
    let mut audited = 0usize;
    let mut violations = 0usize;
    let mut min_slack = i128::MAX;

    // cyclic subgroups
    for g in &ambient.elements {
        let group = closure_fq(
            f,
            ambient.n,
            ambient.projective,
            std::slice::from_ref(g),
            GROUP_SIZE_LIMIT,
        )?;
        let r = exponent_bound_audit(&group, mode)?;
        audited += 1;
        violations += usize::from(!r.holds);
        min_slack = min_slack.min(r.slack);
    }

    // 2-generated subgroups, deterministic stride over the pair grid
    let n_el = ambient.elements.len();
    let total_pairs = n_el * (n_el - 1) / 2;
    let stride = (total_pairs / pair_budget.max(1)).max(1);
    let mut pair_index = 0usize;
    'outer: for i in 0..n_el {
        for j in i + 1..n_el {
            if pair_index % stride == 0 {
                let gens = [ambient.elements[i].clone(), ambient.elements[j].clone()];
                let group = closure_fq(f, ambient.n, ambient.projective, &gens, GROUP_SIZE_LIMIT)?;
                let r = exponent_bound_audit(&group, mode)?;
                audited += 1;
                violations += usize::from(!r.holds);
                min_slack = min_slack.min(r.slack);
                if audited >= pair_budget + n_el {
                    break 'outer;
                }
            }
            pair_index += 1;
        }
    }

    Ok(SweepSummary {
        mode,
        subgroups_audited: audited,
        violations,
        min_slack,
    })
}
