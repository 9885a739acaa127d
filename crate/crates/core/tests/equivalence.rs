use modcat::algebra::{module_hom_space, unvectorize};
use modcat::corpus;
use modcat::equivalence::{
    iota_star, pi_star, pi_star_map, rep_cokernel, rep_kernel, roundtrip_module, roundtrip_representation,
};
use modcat::linalg::Field;
use modcat::mcalgebra::{skew_category_algebra, ModCatAlgebra};
use proptest::prelude::*;

fn algebras() -> Vec<ModCatAlgebra> {
    let f = Field::Rationals;
    let mut out: Vec<ModCatAlgebra> = corpus::modulations(f)
        .unwrap()
        .into_iter()
        .filter(|(n, _)| ["constant-k/C3", "species/A2", "constant-dual/parallel", "co-constant-dual/A3"].contains(&n.as_str()))
        .map(|(_, m)| ModCatAlgebra::new(m).unwrap())
        .collect();
    // the comodulation mirror, over skew algebras
    for (_, r) in corpus::presheaves(f).unwrap() {
        out.push(skew_category_algebra(&r).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn roundtrips_and_bookkeeping(which in 0usize..9, seed in any::<u64>()) {
        let all = algebras();
        let a = &all[which % all.len()];
        for m in corpus::random_modules(a, seed, 4, 6) {
            prop_assert!(roundtrip_module(a, &m).is_ok());
            let v = pi_star(a, &m).unwrap().transformation;
            for x in a.category().object_ids() {
                prop_assert_eq!(v.component(x).dim(), m.right_matrix(a.idempotent(x)).rank());
            }
            prop_assert_eq!(iota_star(a, &v).unwrap().dim(), v.dims().iter().sum::<usize>());
            prop_assert!(roundtrip_representation(a, &v).is_ok());
        }
    }

    #[test]
    fn kernels_and_cokernels(which in 0usize..9, seed in any::<u64>()) {
        let all = algebras();
        let a = &all[which % all.len()];
        let ms = corpus::random_modules(a, seed, 3, 5);
        let mut rng = corpus::rng(seed);
        for m in &ms {
            for n in &ms {
                let hom = module_hom_space(m, n).unwrap();
                if hom.is_zero() {
                    continue;
                }
                let coeffs = corpus::random_vector(a.field(), hom.dim(), &mut rng);
                let phi = unvectorize(a.field(), n.dim(), m.dim(), &hom.combine(&coeffs));
                let (pm, pn) = (pi_star(a, m).unwrap(), pi_star(a, n).unwrap());
                let t = pi_star_map(&pm, &pn, &phi).unwrap();
                let (ker, inc) = rep_kernel(&t).unwrap();
                let (coker, proj) = rep_cokernel(&t).unwrap();
                for x in a.category().object_ids() {
                    let rank = t.component(x).rank();
                    prop_assert_eq!(pm.transformation.component(x).dim(), ker.component(x).dim() + rank);
                    prop_assert_eq!(pn.transformation.component(x).dim(), coker.component(x).dim() + rank);
                    prop_assert!(t.component(x).mul(inc.component(x)).is_zero());
                    prop_assert!(proj.component(x).mul(t.component(x)).is_zero());
                }
            }
        }
    }
}
