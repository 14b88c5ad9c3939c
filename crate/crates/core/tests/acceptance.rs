//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. The same checks back the `verify-all` subcommand.

use anisobounds::verify;

fn assert_criterion(r: verify::CriterionResult) {
    println!("{}", r.line());
    assert!(r.passed, "criterion {} failed: {}", r.id, r.details);
}

#[test]
fn criterion_01_upsilon_reproduction() {
    assert_criterion(verify::c1_upsilon());
}

#[test]
fn criterion_02_order_spectrum() {
    assert_criterion(verify::c2_order_spectrum());
}

#[test]
fn criterion_03_minkowski_injectivity() {
    assert_criterion(verify::c3_minkowski());
}

#[test]
fn criterion_04_anisotropic_torsion() {
    assert_criterion(verify::c4_anisotropic_torsion());
}

#[test]
fn criterion_05_h1_annihilation() {
    assert_criterion(verify::c5_h1_annihilation());
}

#[test]
fn criterion_06_linear_exponent_audit() {
    assert_criterion(verify::c6_general_audit());
}

#[test]
fn criterion_07_projective_exponent_audit() {
    assert_criterion(verify::c7_projective_audit());
}

#[test]
fn criterion_08_arf_suite() {
    assert_criterion(verify::c8_arf_suite());
}

#[test]
fn criterion_09_reflection_identities() {
    assert_criterion(verify::c9_reflections());
}

#[test]
fn criterion_10_order_p_exclusion() {
    assert_criterion(verify::c10_order_p_exclusion());
}

#[test]
fn criterion_11_algebra_identities() {
    assert_criterion(verify::c11_weyl_identities());
}

#[test]
fn criterion_12_residue_calculus() {
    assert_criterion(verify::c12_residues());
}

#[test]
fn criterion_13_bounds_ledger_golden() {
    assert_criterion(verify::c13_bounds_golden());
}

/// Element orders inside the maximal groups stay in {1, 2, 3, 4, 6}.
#[test]
fn produced_groups_have_small_element_orders() {
    use anisobounds::exactalg::{matrix_order, MatrixOrder};
    for n in 2..=3usize {
        let search = anisobounds::glnz::upsilon_search(n, 1).unwrap();
        let group =
            anisobounds::glnz::closure(n, &search.witness, anisobounds::glnz::DEFAULT_CLOSURE_CAP)
                .unwrap();
        for g in group.elements() {
            match matrix_order(g).unwrap() {
                MatrixOrder::Finite(k) => assert!([1, 2, 3, 4, 6].contains(&k), "order {k}"),
                MatrixOrder::Infinite => panic!("infinite-order element in a finite group"),
            }
        }
    }
}

/// The ledger's torus rule must agree with the values the search reproduces.
#[test]
fn cross_module_upsilon_consistency() {
    use anisobounds::bounds::{evaluate, BoundKind, BoundQuery};
    for n in 1..=3u32 {
        let search = anisobounds::glnz::upsilon_search(n as usize, 1).unwrap();
        let ledger = evaluate(&BoundQuery::Torus { n }).unwrap();
        match ledger.kind {
            BoundKind::Order {
                bound,
                element_exponent: Some(u),
            } => {
                assert_eq!(u, search.max_order as u128);
                assert_eq!(bound, (search.max_order as u128).pow(n));
            }
            other => panic!("unexpected ledger kind {other:?}"),
        }
    }
}
