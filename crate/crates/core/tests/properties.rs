//! Property tests for the exact-arithmetic invariants, with brute-force
//! oracles kept independent of the code paths they check.

use proptest::prelude::*;

use anisobounds::exactalg::{
    self, kernel_mod, matrix_order, snf, IntMatrix, MatrixOrder,
};
use anisobounds::quadform::{self, Field, QuadForm};
use anisobounds::FiniteField;

fn int_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-9i128..=9, n * n)
        .prop_map(move |entries| IntMatrix::new(n, entries).unwrap())
}

#[derive(Debug, Clone)]
enum ElementaryOp {
    AddRow { from: usize, to: usize, c: i128 },
    SwapRows(usize, usize),
    NegateRow(usize),
}

/// Unimodular matrices as products of elementary operations, so that the
/// determinant is +-1 by construction.
fn unimodular_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    let op = (0..n, 0..n, -3i128..=3, 0..3usize).prop_map(|(i, j, c, kind)| match kind {
        0 => ElementaryOp::AddRow { from: i, to: j, c },
        1 => ElementaryOp::SwapRows(i, j),
        _ => ElementaryOp::NegateRow(i),
    });
    prop::collection::vec(op, 0..6).prop_map(move |ops| {
        let mut rows = IntMatrix::identity(n).rows();
        for op in ops {
            match op {
                ElementaryOp::AddRow { from, to, c } if from != to => {
                    for k in 0..n {
                        rows[to][k] += c * rows[from][k];
                    }
                }
                ElementaryOp::AddRow { .. } => {}
                ElementaryOp::SwapRows(a, b) => rows.swap(a, b),
                ElementaryOp::NegateRow(r) => {
                    for x in rows[r].iter_mut() {
                        *x = -*x;
                    }
                }
            }
        }
        IntMatrix::from_rows(&rows).unwrap()
    })
}

proptest! {
    /// U A V = S exactly, transforms unimodular, diagonal non-negative in a
    /// divisibility chain.
    #[test]
    fn snf_decomposition_contract(a in int_matrix(3)) {
        let dec = snf(&a).unwrap();
        prop_assert_eq!(dec.u.mul(&a).unwrap().mul(&dec.v).unwrap(), dec.s.clone());
        prop_assert_eq!(dec.u.det().unwrap().abs(), 1);
        prop_assert_eq!(dec.v.det().unwrap().abs(), 1);
        let d = dec.diagonal();
        for i in 0..d.len() - 1 {
            prop_assert!(d[i] >= 0);
            if d[i] == 0 {
                prop_assert_eq!(d[i + 1], 0);
            } else {
                prop_assert_eq!(d[i + 1].rem_euclid(d[i]), 0);
            }
        }
    }

    /// The cyclotomic-factorization order test agrees with naive powering.
    #[test]
    fn matrix_order_matches_powering(a in unimodular_matrix(3)) {
        let fast = matrix_order(&a).unwrap();
        // independent oracle: iterate powers up to the largest order
        // possible in rank <= 4, with overflow treated as infinite
        let mut naive = MatrixOrder::Infinite;
        let mut acc = IntMatrix::identity(3);
        for k in 1..=60u64 {
            acc = match acc.mul(&a) {
                Ok(m) => m,
                Err(_) => break,
            };
            if acc.is_identity() {
                naive = MatrixOrder::Finite(k);
                break;
            }
        }
        match (fast, naive) {
            (MatrixOrder::Finite(x), MatrixOrder::Finite(y)) => prop_assert_eq!(x, y),
            (MatrixOrder::Finite(x), MatrixOrder::Infinite) => {
                // powering hit the cap or overflowed before reaching x
                prop_assert!(x > 60);
            }
            (MatrixOrder::Infinite, MatrixOrder::Finite(_)) => {
                prop_assert!(false, "claimed infinite but a power reached the identity");
            }
            (MatrixOrder::Infinite, MatrixOrder::Infinite) => {}
        }
    }

    /// Fixed vectors of the generated group are exactly the reported
    /// sublattice; saturation means every small fixed vector is an integer
    /// combination of the basis.
    #[test]
    fn invariant_sublattice_is_fixed_and_saturated(a in unimodular_matrix(2)) {
        let basis = exactalg::invariant_sublattice(2, std::slice::from_ref(&a)).unwrap();
        for v in &basis {
            prop_assert_eq!(&a.mul_vec(v).unwrap(), v);
        }
        let basis_rows: Vec<Vec<i128>> = (0..2)
            .map(|r| basis.iter().map(|col| col[r]).collect())
            .collect();
        for x in -4i128..=4 {
            for y in -4i128..=4 {
                if (x, y) == (0, 0) {
                    continue;
                }
                let v = vec![x, y];
                if a.mul_vec(&v).unwrap() == v {
                    prop_assert!(!basis.is_empty(), "fixed vector missed: {:?}", v);
                    // integer solvability certifies saturation
                    let sol = exactalg::solve_integer(&basis_rows, &v).unwrap();
                    prop_assert!(sol.is_some(), "{:?} outside the integer span", v);
                }
            }
        }
    }

    /// Enumerated fixed submodules match the brute-force count.
    #[test]
    fn kernel_mod_matches_brute_force(a in unimodular_matrix(2), d in 2u64..=9) {
        let fast = kernel_mod(2, std::slice::from_ref(&a), d).unwrap();
        let mut brute = 0usize;
        for x in 0..d {
            for y in 0..d {
                let gx = (a.get(0, 0) * x as i128 + a.get(0, 1) * y as i128)
                    .rem_euclid(d as i128) as u64;
                let gy = (a.get(1, 0) * x as i128 + a.get(1, 1) * y as i128)
                    .rem_euclid(d as i128) as u64;
                if gx == x && gy == y {
                    brute += 1;
                }
            }
        }
        prop_assert_eq!(fast.len(), brute);
    }
}

fn f4_form() -> impl Strategy<Value = QuadForm<FiniteField>> {
    (0u64..4, 1u64..4, 0u64..4).prop_map(|(c11, c12, c22)| {
        let f = FiniteField::new(2, 2).unwrap();
        let coeffs = vec![
            f.element_from_index(c11),
            f.element_from_index(c12),
            f.element_from_index(c22),
        ];
        QuadForm::new(f, 2, coeffs).unwrap()
    })
}

proptest! {
    /// The cokernel class is invariant under any change of basis.
    #[test]
    fn arf_class_is_a_basis_invariant(q in f4_form(), picks in prop::collection::vec(0u64..16, 4)) {
        let f = q.field().clone();
        let a = f.element_from_index(picks[0] % 4);
        let b = f.element_from_index(picks[1] % 4);
        let c = f.element_from_index(picks[2] % 4);
        let d = f.element_from_index(picks[3] % 4);
        let det = f.sub(f.mul(a, d), f.mul(b, c));
        prop_assume!(!det.is_zero());
        let cols = vec![vec![a, c], vec![b, d]];
        let q2 = q.transform(&cols);
        let r1 = quadform::arf_canonicalize(&q).unwrap();
        let r2 = quadform::arf_canonicalize(&q2).unwrap();
        prop_assert_eq!(r1.arf_class, r2.arf_class);
    }

    /// Multiplication in the normal-form algebra is associative on random
    /// basis monomials, for every supported prime.
    #[test]
    fn weyl_multiplication_is_associative(
        p_idx in 0usize..3,
        exps in prop::collection::vec(0u32..5, 6),
    ) {
        let p = anisobounds::csa::WEYL_PRIMES[p_idx];
        let cap = p as u32;
        let mono = |i: u32, j: u32| {
            anisobounds::csa::WeylElement::monomial(
                p,
                i % cap,
                j % cap,
                anisobounds::csa::PolyXY::constant(p, 1),
            )
        };
        let a = mono(exps[0], exps[1]);
        let b = mono(exps[2], exps[3]);
        let c = mono(exps[4], exps[5]);
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    /// Reflections preserve the form for random odd-characteristic data.
    #[test]
    fn reflection_is_an_isometry_mod_7(coeffs in prop::collection::vec(0i64..7, 3), vx in 0i64..7, vy in 0i64..7) {
        let f = FiniteField::new(7, 1).unwrap();
        let q = QuadForm::new(
            f.clone(),
            2,
            coeffs.iter().map(|&c| Field::from_int(&f, c)).collect(),
        )
        .unwrap();
        let v = vec![Field::from_int(&f, vx), Field::from_int(&f, vy)];
        prop_assume!(!Field::is_zero(&f, &q.evaluate(&v)));
        let m = quadform::reflection(&q, &v).unwrap();
        let cols: Vec<Vec<_>> = (0..2).map(|j| (0..2).map(|i| m[i][j]).collect()).collect();
        prop_assert_eq!(q.transform(&cols), q);
    }
}
