use proptest::prelude::*;

use jalpha::lie::{AlgebraElement, ComplexAlgebraElement, LieAlgebra};

fn algebras() -> Vec<LieAlgebra> {
    vec![LieAlgebra::su2(), LieAlgebra::so3(), LieAlgebra::torus(3)]
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(-2.0..2.0f64, 3).prop_map(AlgebraElement::new)
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(x in element(), y in element(), z in element()) {
        for alg in algebras() {
            let br = |a: &AlgebraElement, b: &AlgebraElement| alg.bracket(a, b).unwrap();
            prop_assert!((&br(&x, &y) + &br(&y, &x)).coeff_norm() < 1e-14);
            let jac = &(&br(&br(&x, &y), &z) + &br(&br(&y, &z), &x)) + &br(&br(&z, &x), &y);
            prop_assert!(jac.coeff_norm() < 1e-13);
        }
    }

    #[test]
    fn inner_product_is_ad_invariant(x in element(), y in element(), z in element()) {
        for alg in algebras() {
            prop_assert!(alg.invariance_defect(&z, &x, &y) < 1e-13);
        }
    }

    #[test]
    fn adjoint_action_is_an_automorphism(g in element(), x in element(), y in element()) {
        for alg in [LieAlgebra::su2(), LieAlgebra::so3()] {
            let k = alg.exp_real(&g).unwrap();
            let ad = |v: &AlgebraElement| alg.ad_action(&k, v).unwrap();
            let lhs = ad(&alg.bracket(&x, &y).unwrap());
            let rhs = alg.bracket(&ad(&x), &ad(&y)).unwrap();
            prop_assert!((&lhs - &rhs).coeff_norm() < 1e-12);
            prop_assert!((alg.inner(&ad(&x), &ad(&y)).unwrap() - alg.inner(&x, &y).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn polar_decomposition_round_trips(x in element(), y in element()) {
        for alg in [LieAlgebra::su2(), LieAlgebra::so3()] {
            let k = alg.exp_real(&x.scale(0.5)).unwrap();
            let p = alg.exp_matrix(&ComplexAlgebraElement::imaginary(y.scale(0.5))).unwrap();
            let (k2, y2) = alg.kp_decompose(&(&k * &p)).unwrap();
            prop_assert!(k2.distance(&k) < 1e-10);
            prop_assert!((&y2 - &y.scale(0.5)).coeff_norm() < 1e-10);
        }
    }

    #[test]
    fn exponentials_of_commuting_elements_multiply(x in element(), s in -1.0..1.0f64, t in -1.0..1.0f64) {
        for alg in algebras() {
            let a = alg.exp_real(&x.scale(s)).unwrap();
            let b = alg.exp_real(&x.scale(t)).unwrap();
            prop_assert!((&a * &b).distance(&alg.exp_real(&x.scale(s + t)).unwrap()) < 1e-12);
        }
    }
}
