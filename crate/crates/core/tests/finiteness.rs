use modcat::corpus;
use modcat::finiteness::{
    assess, evaluate_at_apex, finite_type, presheaf_hom_space, restrict, PresheafModule,
};
use modcat::linalg::{Field, Subspace};
use modcat::mcalgebra::skew_category_algebra;
use proptest::prelude::*;
use std::sync::Arc;

#[test]
fn structure_presheaves_are_finite_type() {
    for field in [Field::Rationals, Field::prime(2).unwrap()] {
        for (name, r) in corpus::presheaves(field).unwrap() {
            assert!(finite_type(&PresheafModule::structure(&r)).unwrap().finite_type, "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn finite_type_is_invariant_under_conjugation(which in 0usize..5, seed in any::<u64>()) {
        let (_, r) = corpus::presheaves(Field::Rationals).unwrap().swap_remove(which);
        let mut rng = corpus::rng(seed);
        for v in corpus::finite_type_modules(&r, seed, 5) {
            let g: Vec<_> = v.category().object_ids()
                .map(|x| corpus::random_invertible(v.field(), v.component(x).dim(), &mut rng))
                .collect();
            let w = v.conjugate(&g).unwrap();
            prop_assert_eq!(finite_type(&v).unwrap(), finite_type(&w).unwrap());
        }
    }

    #[test]
    fn finite_type_modules_are_finitely_generated(which in 0usize..5, seed in any::<u64>()) {
        let (_, r) = corpus::presheaves(Field::Rationals).unwrap().swap_remove(which);
        let a = skew_category_algebra(&r).unwrap();
        for v in corpus::finite_type_modules(&r, seed, 5) {
            let verdict = assess(&a, &v).unwrap();
            if verdict.finite_type.finite_type {
                prop_assert!(verdict.finitely_generated);
                prop_assert!(verdict.generators <= v.total_dim());
            }
        }
    }

    /// Homs out of the restricted structure presheaf are determined by the value
    /// of the unit at the apex.
    #[test]
    fn structure_homs_evaluate_bijectively(which in 0usize..5, seed in any::<u64>()) {
        let (_, r) = corpus::presheaves(Field::Rationals).unwrap().swap_remove(which);
        let r = Arc::clone(&r);
        for v in corpus::finite_type_modules(&r, seed, 4) {
            for x in v.category().object_ids() {
                let res = restrict(&v, x).unwrap();
                let hom = presheaf_hom_space(&PresheafModule::structure(&res.presheaf), &res.module).unwrap();
                prop_assert_eq!(hom.dim(), v.component(x).dim());
                let images: Vec<_> = hom.basis().iter().map(|h| evaluate_at_apex(&res, &hom, h)).collect();
                prop_assert_eq!(Subspace::span(v.field(), v.component(x).dim(), &images).dim(), hom.dim());
            }
        }
    }
}
