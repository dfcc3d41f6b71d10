mod common;

use common::strategies::{homogeneous, poly};
use fkf_core::ring::{from_balanced, to_balanced};
use fkf_core::verifier::jacobi_apply;
use fkf_core::{JacobiKind, Poly, Prolongation};
use proptest::prelude::*;

fn ring() -> Prolongation {
    Prolongation::new(12).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn addition_is_a_group(a in poly(true), b in poly(true), c in poly(true)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), Poly::zero());
    }

    #[test]
    fn multiplication_is_commutative_ring(a in poly(true), b in poly(true), c in poly(true)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a * &Poly::zero()).is_zero());
    }

    #[test]
    fn d_xi_is_a_derivation(a in poly(true), b in poly(true)) {
        let r = ring();
        let lhs = r.d_xi(&(&a * &b)).unwrap();
        let rhs = &(&r.d_xi(&a).unwrap() * &b) + &(&a * &r.d_xi(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(r.d_xi(&(&a + &b)).unwrap(), &r.d_xi(&a).unwrap() + &r.d_xi(&b).unwrap());
    }

    #[test]
    fn d_xibar_is_a_derivation(a in poly(false), b in poly(false)) {
        let r = ring();
        let lhs = r.d_xibar(&(&a * &b)).unwrap();
        let rhs = &(&r.d_xibar(&a).unwrap() * &b) + &(&a * &r.d_xibar(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn balanced_round_trip((w, k, p) in (0u32..7, -3i32..4).prop_flat_map(|(w, k)| (Just(w), Just(k), homogeneous(w, k)))) {
        let b = to_balanced(&p).unwrap();
        prop_assert_eq!(from_balanced(&b), p.clone());
        if !p.is_zero() {
            prop_assert_eq!(b.prefactor_thirds(), k);
            prop_assert_eq!(b.grading().weight, Some(w as i64));
        }
    }

    #[test]
    fn weight_is_additive(a in homogeneous(3, 1), b in homogeneous(4, -2)) {
        let prod = &a * &b;
        prop_assume!(!prod.is_zero());
        let g = to_balanced(&prod).unwrap();
        prop_assert_eq!(g.prefactor_thirds(), -1);
        prop_assert_eq!(g.grading().weight, Some(7));
    }

    #[test]
    fn jacobi_operators_preserve_weight(a in homogeneous(4, 0), pseudo in any::<bool>()) {
        let kind = if pseudo { JacobiKind::Pseudo } else { JacobiKind::Jacobi };
        let out = jacobi_apply(&ring(), &a, kind).unwrap();
        let b = to_balanced(&out).unwrap();
        if !b.is_zero() {
            prop_assert_eq!(b.prefactor_thirds(), 0);
            prop_assert_eq!(b.grading().weight, Some(4));
            // E(P) lies in P ⊕ r²·P.
            prop_assert!(b.r2_degree() <= 1);
        }
    }
}
