//! Finite subgroups of GL_n(Z): breadth-first closure, the mod-m injection
//! test, and a bounded search reproducing the maximal finite subgroup orders
//! in ranks 1..=3.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{
    invariant_sublattice, matrix_order, ExactError, IntMatrix, MatrixOrder, ModMatrix,
};

/// Default closure cap: every finite subgroup in scope is far below this,
/// while infinite groups blow past it quickly.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Internal cap for the maximal-order search. Finite subgroups of GL_n(Z)
/// for n <= 3 are tiny, so a small cap keeps the pair scan fast; candidates
/// that exceed it are skipped, which only matters for the lower-bound search.
const SEARCH_CAP: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded cap of {0} elements (infinite or too-large group)")]
    CapExceeded(usize),
    #[error("generator has infinite order: {0:?}")]
    InfiniteOrderGenerator(IntMatrix),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A finite subgroup of GL_n(Z): deduplicated element list closed under
/// product and inverse, in breadth-first discovery order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGroup {
    n: usize,
    elements: Vec<IntMatrix>,
    generators: Vec<IntMatrix>,
}

impl MatrixGroup {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.elements.contains(m)
    }

    pub fn trivial(n: usize) -> Self {
        MatrixGroup {
            n,
            elements: vec![IntMatrix::identity(n)],
            generators: Vec::new(),
        }
    }
}

/// Breadth-first product closure of the generators, capped.
///
/// Finite order of each generator is checked first; the closure of
/// finite-order generators still need not be finite, which the cap reports.
pub fn closure(n: usize, gens: &[IntMatrix], cap: usize) -> Result<MatrixGroup, GroupError> {
    for g in gens {
        if g.dim() != n {
            return Err(ExactError::DimensionMismatch(g.dim(), n).into());
        }
        if matrix_order(g)? == MatrixOrder::Infinite {
            return Err(GroupError::InfiniteOrderGenerator(g.clone()));
        }
    }
    closure_unchecked(n, gens, cap, false)
}

/// Closure with the reduction-mod-3 guard: any collision of two distinct
/// elements mod 3 certifies an infinite group, because the kernel of the
/// reduction GL_n(Z) -> GL_n(Z/3Z) is torsion free. Used by the search loop
/// where generators are already known to have finite order.
fn closure_unchecked(
    n: usize,
    gens: &[IntMatrix],
    cap: usize,
    mod3_guard: bool,
) -> Result<MatrixGroup, GroupError> {
    let id = IntMatrix::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let mut seen_mod3: HashSet<ModMatrix> = HashSet::new();
    let mut elements: Vec<IntMatrix> = Vec::new();
    let mut frontier: Vec<IntMatrix> = Vec::new();

    let push = |m: IntMatrix,
                    seen: &mut HashSet<IntMatrix>,
                    seen_mod3: &mut HashSet<ModMatrix>,
                    elements: &mut Vec<IntMatrix>,
                    frontier: &mut Vec<IntMatrix>|
     -> Result<(), GroupError> {
        if seen.contains(&m) {
            return Ok(());
        }
        if mod3_guard && !seen_mod3.insert(m.reduce_mod(3)?) {
            // distinct integer matrices, equal mod 3: infinite group
            return Err(GroupError::CapExceeded(cap));
        }
        seen.insert(m.clone());
        elements.push(m.clone());
        frontier.push(m);
        Ok(())
    };

    push(id, &mut seen, &mut seen_mod3, &mut elements, &mut frontier)?;
    for g in gens {
        push(
            g.clone(),
            &mut seen,
            &mut seen_mod3,
            &mut elements,
            &mut frontier,
        )?;
        if elements.len() > cap {
            return Err(GroupError::CapExceeded(cap));
        }
    }

    while let Some(m) = frontier.pop() {
        for g in gens {
            let prod = m.mul(g)?;
            push(
                prod,
                &mut seen,
                &mut seen_mod3,
                &mut elements,
                &mut frontier,
            )?;
            if elements.len() > cap {
                return Err(GroupError::CapExceeded(cap));
            }
        }
    }
    Ok(MatrixGroup {
        n,
        elements,
        generators: gens.to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MinkowskiOutcome {
    Injective,
    /// A nontrivial element congruent to the identity mod m.
    KernelWitness(IntMatrix),
}

/// Reduce every element mod m and test whether the group injects.
///
/// On failure returns g * h^{-1} for a colliding pair, a nontrivial element
/// of the reduction kernel.
pub fn minkowski_injection_check(
    group: &MatrixGroup,
    m: u64,
) -> Result<MinkowskiOutcome, GroupError> {
    let mut images: HashMap<ModMatrix, &IntMatrix> = HashMap::new();
    for g in group.elements() {
        let img = g.reduce_mod(m)?;
        if let Some(h) = images.get(&img) {
            let witness = g.mul(&h.inverse_unimodular()?)?;
            return Ok(MinkowskiOutcome::KernelWitness(witness));
        }
        images.insert(img, g);
    }
    Ok(MinkowskiOutcome::Injective)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FixedVectorOutcome {
    /// A nonzero vector fixed by every element of the group.
    GroupFixedVector(Vec<i128>),
    /// An element with no nonzero fixed vector, defeating the hypothesis.
    HypothesisFails(IntMatrix),
}

/// Rank-2 check: if every element of the group fixes some nonzero vector,
/// produce a common nonzero fixed vector; otherwise exhibit an element with
/// none.
pub fn fixed_vector_group_check(group: &MatrixGroup) -> Result<FixedVectorOutcome, GroupError> {
    assert_eq!(group.dim(), 2, "rank-2 operation");
    for g in group.elements() {
        let fixed = invariant_sublattice(2, std::slice::from_ref(g))?;
        if fixed.is_empty() {
            return Ok(FixedVectorOutcome::HypothesisFails(g.clone()));
        }
    }
    let common = invariant_sublattice(2, group.elements())?;
    let v = common
        .into_iter()
        .next()
        .expect("per-element fixed vectors force a group fixed vector in rank 2");
    Ok(FixedVectorOutcome::GroupFixedVector(v))
}

/// Result of the bounded maximal-order search.
#[derive(Debug, Clone, Serialize)]
pub struct UpsilonResult {
    pub n: usize,
    pub entry_bound: i128,
    pub max_order: usize,
    /// generators of one group attaining the maximum
    pub witness: Vec<IntMatrix>,
    pub finite_order_candidates: usize,
    pub closures_run: usize,
}

/// Known maximal orders of finite subgroups of GL_n(Z) for n <= 3.
pub fn upsilon_known(n: usize) -> Option<u64> {
    match n {
        1 => Some(2),
        2 => Some(12),
        3 => Some(48),
        _ => None,
    }
}

/// |GL_n(Z/3Z)|, the general-rank upper bound for the maximal finite
/// subgroup order coming from the mod-3 injection.
pub fn gl_n_f3_order(n: usize) -> u128 {
    let q: u128 = 3;
    let qn = q.pow(n as u32);
    (0..n).map(|i| qn - q.pow(i as u32)).product()
}

/// All finite-order elements of GL_n(Z) with entries in [-bound, bound].
pub fn finite_order_candidates(n: usize, bound: i128) -> Vec<IntMatrix> {
    let width = (2 * bound + 1) as usize;
    let cells = n * n;
    let total = (width as u128).pow(cells as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut entries = vec![0i128; cells];
        let mut rest = idx;
        for e in entries.iter_mut() {
            *e = (rest % width as u128) as i128 - bound;
            rest /= width as u128;
        }
        let m = IntMatrix::new(n, entries).unwrap();
        match m.det() {
            Ok(1) | Ok(-1) => {}
            _ => continue,
        }
        if let Ok(MatrixOrder::Finite(_)) = matrix_order(&m) {
            out.push(m);
        }
    }
    out
}

/// Signed permutation matrices of dimension n (2^n n! of them); conjugation
/// by these preserves the entry bound, so candidate generators can be
/// reduced to orbit representatives.
fn signed_permutations(n: usize) -> Vec<IntMatrix> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permute_rec(&mut idx, 0, &mut perms);
    let mut out = Vec::new();
    for p in &perms {
        for signs in 0..(1u32 << n) {
            let mut entries = vec![0i128; n * n];
            for (i, &pi) in p.iter().enumerate() {
                entries[i * n + pi] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            out.push(IntMatrix::new(n, entries).unwrap());
        }
    }
    out
}

fn permute_rec(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        out.push(idx.clone());
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute_rec(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// Bounded search for the largest finite subgroup order: enumerate
/// finite-order matrices with entries in [-bound, bound], close all
/// generator pairs, and report the maximum order found.
///
/// This is a lower-bound search: pairs whose closure exceeds the internal
/// cap are skipped. The first generator ranges over orbit representatives
/// under signed-permutation conjugation, which preserves both the entry
/// bound and all group orders.
pub fn upsilon_search(n: usize, entry_bound: i128) -> Result<UpsilonResult, GroupError> {
    assert!((1..=3).contains(&n), "search supports ranks 1..=3");
    let candidates = finite_order_candidates(n, entry_bound);
    let conj: Vec<(IntMatrix, IntMatrix)> = signed_permutations(n)
        .into_iter()
        .map(|s| {
            let inv = s.inverse_unimodular().expect("signed permutations are unimodular");
            (s, inv)
        })
        .collect();

    // orbit representatives for the first generator
    let mut reps: Vec<IntMatrix> = Vec::new();
    let mut seen_canon: HashSet<IntMatrix> = HashSet::new();
    for a in &candidates {
        let canon = conj
            .iter()
            .filter_map(|(s, sinv)| s.mul(a).and_then(|sa| sa.mul(sinv)).ok())
            .min_by(|x, y| x.rows().cmp(&y.rows()))
            .unwrap_or_else(|| a.clone());
        if seen_canon.insert(canon) {
            reps.push(a.clone());
        }
    }

    let inverses: Vec<IntMatrix> = candidates
        .iter()
        .map(|c| c.inverse_unimodular().expect("candidates are unimodular"))
        .collect();

    struct Best {
        order: usize,
        witness: Vec<IntMatrix>,
        closures: usize,
    }

    let per_rep: Vec<Best> = reps
        .par_iter()
        .map(|a| {
            let mut best = Best {
                order: 0,
                witness: Vec::new(),
                closures: 0,
            };
            // element sets of the largest groups seen for this first generator
            let mut top_sets: Vec<HashSet<IntMatrix>> = Vec::new();
            for (b, b_inv) in candidates.iter().zip(&inverses) {
                let in_known = top_sets
                    .iter()
                    .any(|set| set.contains(a) && set.contains(b));
                if in_known {
                    continue; // subgroup of a recorded group of max order
                }
                // a finite group contains no infinite-order products, so an
                // infinite-order a*b or a*b^{-1} rules the pair out cheaply
                if matrix_order(&a.mul(b)?)? == MatrixOrder::Infinite
                    || matrix_order(&a.mul(b_inv)?)? == MatrixOrder::Infinite
                {
                    continue;
                }
                best.closures += 1;
                match closure_unchecked(n, &[a.clone(), b.clone()], SEARCH_CAP, true) {
                    Ok(group) => {
                        if group.order() > best.order {
                            best.order = group.order();
                            best.witness = vec![a.clone(), b.clone()];
                            top_sets.clear();
                        }
                        if group.order() == best.order {
                            top_sets.push(group.elements().iter().cloned().collect());
                        }
                    }
                    Err(GroupError::CapExceeded(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>, GroupError>>()?;

    let mut max_order = 0;
    let mut witness = Vec::new();
    let mut closures_run = 0;
    for b in per_rep {
        closures_run += b.closures;
        if b.order > max_order {
            max_order = b.order;
            witness = b.witness;
        }
    }
    Ok(UpsilonResult {
        n,
        entry_bound,
        max_order,
        witness,
        finite_order_candidates: candidates.len(),
        closures_run,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: i128, b: i128, c: i128, d: i128) -> IntMatrix {
        IntMatrix::from_rows(&[vec![a, b], vec![c, d]]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let neg = IntMatrix::identity(2).neg();
        let g = closure(2, &[neg], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 2);

        let rot = m2(0, -1, 1, 0);
        let g = closure(2, &[rot], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 4);

        let hex = vec![m2(1, -1, 1, 0), m2(0, 1, 1, 0)];
        let g = closure(2, &hex, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn closure_rejects_infinite_order_generator() {
        let unipotent = m2(1, 1, 0, 1);
        assert!(matches!(
            closure(2, &[unipotent], DEFAULT_CLOSURE_CAP),
            Err(GroupError::InfiniteOrderGenerator(_))
        ));
    }

    #[test]
    fn closure_caps_infinite_groups() {
        // two finite-order elements generating an infinite group
        let a = m2(0, -1, 1, 0); // order 4
        let b = m2(0, -1, 1, -1); // order 3
        // <a, b> contains a*b of infinite order; the cap fires
        let r = closure(2, &[a, b], 50);
        assert!(matches!(r, Err(GroupError::CapExceeded(50))));
    }

    #[test]
    fn minkowski_examples() {
        let neg = IntMatrix::identity(2).neg();
        let pm = closure(2, &[neg.clone()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(
            minkowski_injection_check(&pm, 3).unwrap(),
            MinkowskiOutcome::Injective
        );
        match minkowski_injection_check(&pm, 2).unwrap() {
            MinkowskiOutcome::KernelWitness(w) => assert_eq!(w, neg),
            other => panic!("expected kernel witness, got {other:?}"),
        }

        let hex = closure(
            2,
            &[m2(1, -1, 1, 0), m2(0, 1, 1, 0)],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(hex.order(), 12);
        assert_eq!(
            minkowski_injection_check(&hex, 3).unwrap(),
            MinkowskiOutcome::Injective
        );
    }

    #[test]
    fn fixed_vector_examples() {
        let swap_group = closure(2, &[m2(0, 1, 1, 0)], DEFAULT_CLOSURE_CAP).unwrap();
        match fixed_vector_group_check(&swap_group).unwrap() {
            FixedVectorOutcome::GroupFixedVector(v) => {
                assert_eq!(v[0], v[1]);
                assert_ne!(v[0], 0);
            }
            other => panic!("expected fixed vector, got {other:?}"),
        }

        let neg = IntMatrix::identity(2).neg();
        let pm = closure(2, &[neg.clone()], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(
            fixed_vector_group_check(&pm).unwrap(),
            FixedVectorOutcome::HypothesisFails(neg.clone())
        );

        // diagonal sign group: each diag element fixes an axis, -I fixes nothing
        let d1 = IntMatrix::diagonal(&[1, -1]);
        let d2 = IntMatrix::diagonal(&[-1, 1]);
        let g = closure(2, &[d1, d2], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 4);
        match fixed_vector_group_check(&g).unwrap() {
            FixedVectorOutcome::HypothesisFails(w) => assert_eq!(w, neg),
            other => panic!("expected failure on -I, got {other:?}"),
        }
    }

    #[test]
    fn fixed_vector_exhaustive_over_hexagonal_subgroups() {
        // every subgroup of the order-12 group is at most 2-generated, so
        // pair closures enumerate the whole subgroup lattice
        let hex = closure(
            2,
            &[m2(1, -1, 1, 0), m2(0, 1, 1, 0)],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        let els = hex.elements().to_vec();
        let mut seen = std::collections::HashSet::new();
        for a in &els {
            for b in &els {
                let sub = closure(2, &[a.clone(), b.clone()], DEFAULT_CLOSURE_CAP).unwrap();
                let mut key: Vec<_> = sub.elements().to_vec();
                key.sort_by_key(|m| m.rows());
                if !seen.insert(key) {
                    continue;
                }
                let hypothesis_holds = sub.elements().iter().all(|g| {
                    !invariant_sublattice(2, std::slice::from_ref(g))
                        .unwrap()
                        .is_empty()
                });
                match fixed_vector_group_check(&sub).unwrap() {
                    FixedVectorOutcome::GroupFixedVector(v) => {
                        assert!(hypothesis_holds);
                        assert!(v.iter().any(|&x| x != 0));
                        for g in sub.elements() {
                            assert_eq!(g.mul_vec(&v).unwrap(), v);
                        }
                    }
                    FixedVectorOutcome::HypothesisFails(w) => {
                        assert!(!hypothesis_holds);
                        assert!(invariant_sublattice(2, &[w]).unwrap().is_empty());
                    }
                }
            }
        }
        assert!(seen.len() >= 10, "subgroup lattice looks too small");
    }

    #[test]
    fn upsilon_rank_1_and_2() {
        assert_eq!(upsilon_search(1, 1).unwrap().max_order, 2);
        assert_eq!(upsilon_search(2, 1).unwrap().max_order, 12);
    }

    #[test]
    fn upsilon_never_exceeds_known_maximum() {
        // a larger entry bound widens the candidate set but cannot beat
        // the true maximal order
        assert_eq!(upsilon_search(1, 3).unwrap().max_order, 2);
        assert_eq!(upsilon_search(2, 2).unwrap().max_order, 12);
    }

    #[test]
    fn gl_f3_orders() {
        assert_eq!(gl_n_f3_order(2), 48);
        assert_eq!(gl_n_f3_order(3), 11232);
    }
}
