//! Algebraic tori modeled as Galois lattices: a rank-n integer lattice with
//! a finite matrix group acting on it. Anisotropy, torsion-order profiles,
//! the trace-vector construction, and first cohomology of cyclic actions.

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{
    self, fixed_submodule_structure, integer_kernel_basis, invariant_sublattice, snf_diagonal,
    solve_integer, ExactError, IntMatrix,
};
use crate::glnz::{self, GroupError, MatrixGroup};

pub const MAX_RANK: usize = 4;
pub const MAX_TORSION_SCAN: u64 = 60;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("rank {0} outside 1..={MAX_RANK}")]
    BadRank(usize),
    #[error("torsion scan limit {0} exceeds {MAX_TORSION_SCAN}")]
    ScanLimitTooLarge(u64),
    #[error("the acting group is not cyclic")]
    NotCyclic,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The cocharacter model of a torus: Z^rank with a finite group acting.
#[derive(Debug, Clone)]
pub struct GaloisLattice {
    rank: usize,
    gamma: MatrixGroup,
}

impl GaloisLattice {
    /// Validate the action by closing the generators.
    pub fn new(rank: usize, generators: &[IntMatrix]) -> Result<Self, TorusError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(TorusError::BadRank(rank));
        }
        let gamma = glnz::closure(rank, generators, glnz::DEFAULT_CLOSURE_CAP)?;
        Ok(GaloisLattice { rank, gamma })
    }

    pub fn from_group(gamma: MatrixGroup) -> Result<Self, TorusError> {
        let rank = gamma.dim();
        if rank == 0 || rank > MAX_RANK {
            return Err(TorusError::BadRank(rank));
        }
        Ok(GaloisLattice { rank, gamma })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gamma(&self) -> &MatrixGroup {
        &self.gamma
    }
}

/// True iff the action has no nonzero fixed vector, i.e. the torus contains
/// no split multiplicative subgroup.
pub fn is_anisotropic(lattice: &GaloisLattice) -> Result<bool, TorusError> {
    let basis = invariant_sublattice(lattice.rank, lattice.gamma.generators())?;
    Ok(basis.is_empty())
}

/// Torsion counts of the fixed submodules of Lambda/d Lambda across a scan
/// range of d.
#[derive(Debug, Clone, Serialize)]
pub struct TorsionProfile {
    pub d_max: u64,
    /// (d, number of invariant classes of exact additive order d)
    pub exact_order_counts: Vec<(u64, u128)>,
    /// (d, total number of invariant classes mod d)
    pub fixed_counts: Vec<(u64, u128)>,
    pub max_exact_order: Option<u64>,
    /// The identification of these counts with torsion points of the torus
    /// requires d coprime to the residue characteristic; the lattice-side
    /// computation itself is characteristic free.
    pub coprime_hypothesis: &'static str,
}

pub const COPRIME_NOTE: &str =
    "counts identify d-torsion of the torus only for d coprime to the residue characteristic";

/// Count invariant classes of each exact order d for 2 <= d <= d_max.
///
/// One integer Smith normal form of the stacked (g - I) describes the fixed
/// submodule for every modulus at once; exact-order counts follow by
/// Moebius inversion over the cyclic decomposition.
pub fn torsion_profile(lattice: &GaloisLattice, d_max: u64) -> Result<TorsionProfile, TorusError> {
    if d_max > MAX_TORSION_SCAN {
        return Err(TorusError::ScanLimitTooLarge(d_max));
    }
    let gens = lattice.gamma.generators();
    let mut exact = Vec::new();
    let mut fixed = Vec::new();
    let mut max_exact = None;
    for d in 2..=d_max {
        let s = fixed_submodule_structure(lattice.rank, gens, d)?;
        let count_d = s.count_exact_order(d);
        exact.push((d, count_d));
        fixed.push((d, s.count()));
        if count_d > 0 {
            max_exact = Some(d);
        }
    }
    Ok(TorsionProfile {
        d_max,
        exact_order_counts: exact,
        fixed_counts: fixed,
        max_exact_order: max_exact,
        coprime_hypothesis: COPRIME_NOTE,
    })
}

/// Sum of the whole orbit of v under the group: w = sum_g g(v).
///
/// If v reduces mod d to an invariant class of exact order d > |Gamma|, the
/// sum is nonzero, since its class mod d is |Gamma| times the class of v.
pub fn trace_vector(lattice: &GaloisLattice, v: &[i128]) -> Result<Vec<i128>, TorusError> {
    let n = lattice.rank;
    assert_eq!(v.len(), n);
    let mut acc = vec![0i128; n];
    for g in lattice.gamma.elements() {
        let gv = g.mul_vec(v)?;
        for i in 0..n {
            acc[i] = acc[i].checked_add(gv[i]).ok_or(ExactError::Overflow)?;
        }
    }
    Ok(acc)
}

/// Finite abelian group presented by its invariant factors (each > 1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn annihilated_by(&self, r: u64) -> bool {
        self.invariant_factors.iter().all(|&d| r % d == 0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct H1Report {
    pub generator: IntMatrix,
    pub order: u64,
    pub h1: AbelianGroup,
    /// |Gamma| * H^1 = 0, checked exactly.
    pub annihilated: bool,
}

/// First cohomology of a cyclic action: H^1 = ker(Norm) / im(sigma - 1)
/// where Norm = 1 + sigma + ... + sigma^{r-1}, computed through Smith
/// normal forms. Errors with `NotCyclic` when no single element generates
/// the group.
pub fn h1_cyclic(lattice: &GaloisLattice) -> Result<H1Report, TorusError> {
    let gamma = &lattice.gamma;
    let n = lattice.rank;
    let order = gamma.order() as u64;
    let sigma = gamma
        .elements()
        .iter()
        .find(|g| {
            exactalg::matrix_order(g)
                .map(|o| o == exactalg::MatrixOrder::Finite(order))
                .unwrap_or(false)
        })
        .ok_or(TorusError::NotCyclic)?
        .clone();

    // Norm = sum of powers of sigma
    let mut norm = IntMatrix::zero(n);
    let mut pow = IntMatrix::identity(n);
    for _ in 0..order {
        norm = norm.add(&pow)?;
        pow = pow.mul(&sigma)?;
    }

    let kernel = integer_kernel_basis(&norm.rows(), n)?;
    let h1 = if kernel.is_empty() {
        AbelianGroup {
            invariant_factors: Vec::new(),
        }
    } else {
        // express the columns of (sigma - 1) in the kernel basis
        let diff = sigma.sub(&IntMatrix::identity(n))?;
        let k = kernel.len();
        let basis_rows: Vec<Vec<i128>> = (0..n)
            .map(|r| kernel.iter().map(|col| col[r]).collect())
            .collect();
        let mut image_cols: Vec<Vec<i128>> = Vec::new();
        for j in 0..n {
            let col: Vec<i128> = (0..n).map(|r| diff.get(r, j)).collect();
            let x = solve_integer(&basis_rows, &col)?
                .expect("columns of (sigma - 1) lie in ker(Norm)");
            image_cols.push(x);
        }
        // quotient Z^k / <image columns> via Smith normal form
        let rows: Vec<Vec<i128>> = (0..k)
            .map(|r| image_cols.iter().map(|c| c[r]).collect())
            .collect();
        let diag = snf_diagonal(&rows)?;
        let mut factors = Vec::new();
        let mut free = 0usize;
        for i in 0..k {
            let d = diag.get(i).copied().unwrap_or(0);
            if d == 0 {
                free += 1;
            } else if d > 1 {
                factors.push(d as u64);
            }
        }
        // H^1 of a finite action on a finite-rank lattice is finite
        assert_eq!(free, 0, "first cohomology of a finite action is torsion");
        AbelianGroup {
            invariant_factors: factors,
        }
    };

    let annihilated = h1.annihilated_by(order);
    Ok(H1Report {
        generator: sigma,
        order,
        h1,
        annihilated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: i128, b: i128, c: i128, d: i128) -> IntMatrix {
        IntMatrix::from_rows(&[vec![a, b], vec![c, d]]).unwrap()
    }

    fn lattice(rank: usize, gens: &[IntMatrix]) -> GaloisLattice {
        GaloisLattice::new(rank, gens).unwrap()
    }

    #[test]
    fn anisotropy_examples() {
        let neg = IntMatrix::identity(2).neg();
        assert!(is_anisotropic(&lattice(2, &[neg])).unwrap());
        assert!(!is_anisotropic(&lattice(2, &[])).unwrap());
        assert!(is_anisotropic(&lattice(2, &[m2(0, -1, 1, 0)])).unwrap());
    }

    #[test]
    fn torsion_profile_examples() {
        let neg = IntMatrix::identity(2).neg();
        let p = torsion_profile(&lattice(2, &[neg]), 12).unwrap();
        // three classes of exact order 2, nothing above
        assert_eq!(p.exact_order_counts[0], (2, 3));
        assert!(p.exact_order_counts[1..].iter().all(|&(_, c)| c == 0));
        assert_eq!(p.max_exact_order, Some(2));

        // split rank-1 torus has torsion of every order
        let p = torsion_profile(&lattice(1, &[]), 12).unwrap();
        assert!(p.exact_order_counts.iter().all(|&(_, c)| c > 0));

        // hexagonal group: nothing above order 6, nothing of order 5
        let hex = lattice(2, &[m2(1, -1, 1, 0), m2(0, 1, 1, 0)]);
        let p = torsion_profile(&hex, 12).unwrap();
        assert!(p.max_exact_order.unwrap_or(0) <= 6);
        let order5 = p.exact_order_counts.iter().find(|&&(d, _)| d == 5).unwrap();
        assert_eq!(order5.1, 0);
    }

    #[test]
    fn torsion_profile_matches_kernel_mod() {
        let gens = vec![m2(0, 1, 1, 0)];
        let lat = lattice(2, &gens);
        let p = torsion_profile(&lat, 12).unwrap();
        for &(d, count) in &p.exact_order_counts {
            let explicit = exactalg::kernel_mod(2, &gens, d).unwrap();
            let brute = explicit.iter().filter(|v| v.order == d).count() as u128;
            assert_eq!(count, brute, "d = {d}");
            let total = explicit.len() as u128;
            let profile_total = p.fixed_counts.iter().find(|&&(e, _)| e == d).unwrap().1;
            assert_eq!(total, profile_total);
        }
    }

    #[test]
    fn anisotropy_dichotomy() {
        // isotropic lattices carry torsion of every order in range
        for gens in [vec![], vec![m2(0, 1, 1, 0)]] {
            let lat = lattice(2, &gens);
            if !is_anisotropic(&lat).unwrap() {
                let p = torsion_profile(&lat, 20).unwrap();
                assert!(p.exact_order_counts.iter().all(|&(_, c)| c > 0));
            }
        }
    }

    #[test]
    fn trace_vector_examples() {
        let neg = IntMatrix::identity(2).neg();
        let l = lattice(2, &[neg]);
        assert_eq!(trace_vector(&l, &[1, 0]).unwrap(), vec![0, 0]);

        let l = lattice(2, &[m2(0, 1, 1, 0)]);
        assert_eq!(trace_vector(&l, &[1, 0]).unwrap(), vec![1, 1]);

        let l = lattice(2, &[]);
        assert_eq!(trace_vector(&l, &[2, 3]).unwrap(), vec![2, 3]);
    }

    #[test]
    fn rank3_anisotropic_fixed_groups_bounded() {
        // -I in rank 3 is anisotropic; invariant classes mod every d stay
        // far below the cubed rank-3 ceiling 48^3
        let neg = IntMatrix::identity(3).neg();
        let lat = GaloisLattice::new(3, &[neg]).unwrap();
        assert!(is_anisotropic(&lat).unwrap());
        let p = torsion_profile(&lat, 60).unwrap();
        assert!(p.max_exact_order.unwrap_or(0) <= 48);
        for &(_, count) in &p.fixed_counts {
            assert!(count <= 48u128.pow(3));
        }
    }

    #[test]
    fn trace_vector_guarantee() {
        // invariant classes of exact order d > |Gamma| lift to nonzero
        // trace vectors congruent to |Gamma| times the class
        let gens = vec![m2(0, 1, 1, 0)];
        let lat = lattice(2, &gens);
        let order = lat.gamma().order() as i128;
        for d in 3u64..=12 {
            for v in exactalg::kernel_mod(2, &gens, d).unwrap() {
                if v.order != d || d <= order as u64 {
                    continue;
                }
                let lift: Vec<i128> = v.coords.iter().map(|&c| c as i128).collect();
                let w = trace_vector(&lat, &lift).unwrap();
                assert!(w.iter().any(|&x| x != 0), "zero trace for {v:?}");
                for (wi, &vi) in w.iter().zip(&v.coords) {
                    assert_eq!(
                        wi.rem_euclid(d as i128),
                        (order * vi as i128).rem_euclid(d as i128)
                    );
                }
            }
        }
    }

    #[test]
    fn h1_examples() {
        // sigma = -1 on Z^1: ker(Norm) = Z, im(sigma - 1) = 2Z, H^1 = Z/2
        let neg1 = IntMatrix::from_rows(&[vec![-1]]).unwrap();
        let r = h1_cyclic(&lattice(1, &[neg1])).unwrap();
        assert_eq!(r.h1.invariant_factors, vec![2]);
        assert!(r.annihilated);

        // trivial group
        let r = h1_cyclic(&lattice(2, &[])).unwrap();
        assert!(r.h1.is_trivial());

        // swap on Z^2: ker(Norm) = {(a, -a)} = im(sigma - 1), H^1 = 0
        let r = h1_cyclic(&lattice(2, &[m2(0, 1, 1, 0)])).unwrap();
        assert!(r.h1.is_trivial());
        assert!(r.annihilated);
    }

    #[test]
    fn h1_not_cyclic() {
        let d1 = IntMatrix::diagonal(&[1, -1]);
        let d2 = IntMatrix::diagonal(&[-1, 1]);
        let l = lattice(2, &[d1, d2]);
        assert!(matches!(h1_cyclic(&l), Err(TorusError::NotCyclic)));
    }
}
