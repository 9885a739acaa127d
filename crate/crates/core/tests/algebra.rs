use std::sync::Arc;

use modcat::corpus;
use modcat::linalg::{Field, Scalar};
use modcat::mcalgebra::ModCatAlgebra;
use modcat::modulation::{presheaf_to_comodulation, presheaf_to_modulation, Modulation};
use proptest::prelude::*;

fn corpus_algebras(field: Field) -> Vec<(String, ModCatAlgebra)> {
    corpus::modulations(field).unwrap().into_iter().map(|(n, m)| (n, ModCatAlgebra::new(m).unwrap())).collect()
}

#[test]
fn presheaf_structures_validate() {
    for field in [Field::Rationals, Field::prime(3).unwrap()] {
        for (name, r) in corpus::presheaves(field).unwrap() {
            let m = presheaf_to_modulation(&r).unwrap();
            let w = presheaf_to_comodulation(&r).unwrap();
            assert!(Modulation::validate(&m.to_raw()).is_ok(), "{name}");
            assert!(Modulation::validate(&w.to_raw()).is_ok(), "{name}");
        }
    }
}

#[test]
fn idempotents_are_orthogonal() {
    for (name, a) in corpus_algebras(Field::Rationals) {
        let c = a.carrier();
        let zero = a.field().zeros(a.dim());
        for (x, ex) in a.idempotents().iter().enumerate() {
            for (y, ey) in a.idempotents().iter().enumerate() {
                let p = c.mul(ex, ey);
                if x == y {
                    assert_eq!(&p, ex, "{name}");
                } else {
                    assert_eq!(p, zero, "{name}");
                }
            }
        }
    }
}

#[test]
fn products_respect_the_grading() {
    for (name, a) in corpus_algebras(Field::Rationals) {
        let cat = a.category().clone();
        let m = a.source().clone();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (u, v) = (a.grade(i), a.grade(j));
                let p = a.carrier().product(i, j);
                let support: Vec<_> = (0..a.dim()).filter(|&b| !p[b].is_zero()).map(|b| a.grade(b)).collect();
                match m.multiply(u, v) {
                    Some(uv) => assert!(support.iter().all(|&g| g == uv), "{name}"),
                    None => assert!(support.is_empty(), "{name}: {} * {}", cat.label(u), cat.label(v)),
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Random elements multiply associatively and the unit is two-sided.
    #[test]
    fn random_elements(which in 0usize..19, seed in any::<u64>()) {
        let all = corpus_algebras(Field::prime(5).unwrap());
        let (_, a) = &all[which % all.len()];
        let mut rng = corpus::rng(seed);
        let f = a.field();
        let c = a.carrier();
        let x: Vec<Scalar> = corpus::random_vector(f, a.dim(), &mut rng);
        let y: Vec<Scalar> = corpus::random_vector(f, a.dim(), &mut rng);
        let z: Vec<Scalar> = corpus::random_vector(f, a.dim(), &mut rng);
        prop_assert_eq!(c.mul(&c.mul(&x, &y), &z), c.mul(&x, &c.mul(&y, &z)));
        prop_assert_eq!(c.mul(c.unit(), &x), x.clone());
        prop_assert_eq!(c.mul(&x, c.unit()), x);
        let total: usize = a.category().morphism_ids().map(|m| a.source().block(m).dim()).sum();
        prop_assert_eq!(a.dim(), total);
    }
}

#[test]
fn comodulated_algebras_need_contravariance() {
    let f = Field::Rationals;
    let m = Arc::new(corpus::a2_species(f).unwrap());
    assert!(matches!(
        modcat::mcalgebra::build_comod_cat_algebra(&m),
        Err(modcat::Error::VarianceMismatch { .. })
    ));
}
