use modcat::linalg::{kernel, quotient, rref, Field, Matrix, Scalar, Subspace};
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn matrix(field: Field) -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |xs| {
            Matrix::from_rows(field, c, xs.chunks(c).map(|row| row.iter().map(|&x| field.from_i64(x)).collect()).collect())
        })
    })
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::prime(5).unwrap()), Just(Field::prime(2).unwrap())]
}

fn reduced(x: &Scalar) -> bool {
    let (n, d) = x.numerator_denominator();
    d.is_positive() && n.gcd(&d).is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in fields().prop_flat_map(matrix)) {
        let (r, _) = rref(&m);
        prop_assert_eq!(rref(&r).0, r);
    }

    #[test]
    fn rref_depends_only_on_row_space(m in matrix(Field::Rationals), seed in any::<u64>()) {
        let mut rng = modcat::corpus::rng(seed);
        let g = modcat::corpus::random_invertible(Field::Rationals, m.rows(), &mut rng);
        prop_assert_eq!(rref(&g.mul(&m)).0, rref(&m).0);
    }

    #[test]
    fn rank_nullity(m in fields().prop_flat_map(matrix)) {
        prop_assert_eq!(m.rank() + kernel(&m).dim(), m.cols());
        for v in kernel(&m).basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn quotient_projection_and_section(m in fields().prop_flat_map(matrix)) {
        let relations = Subspace::row_space(&m);
        let q = quotient(relations.clone());
        prop_assert!(q.projection().mul(q.section()).is_identity());
        for r in relations.basis_vectors() {
            prop_assert!(q.project(&r).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(q.dim() + relations.dim(), m.cols());
    }

    #[test]
    fn rationals_stay_reduced(xs in prop::collection::vec((-50i64..50, 1i64..50), 2..8)) {
        let f = Field::Rationals;
        let vals: Vec<Scalar> = xs.iter().map(|&(n, d)| f.from_ratio(n, d).unwrap()).collect();
        let mut acc = f.one();
        for v in &vals {
            acc = &(&acc * v) + &f.from_ratio(1, 3).unwrap();
            prop_assert!(reduced(&acc));
            if let Some(inv) = v.inv() {
                prop_assert!(reduced(&inv));
                prop_assert!((&inv * v).is_one());
            }
            acc -= v;
            prop_assert!(reduced(&acc));
        }
    }

    #[test]
    fn inverse_roundtrip(seed in any::<u64>(), n in 1usize..6, p in prop_oneof![Just(0u64), Just(7u64)]) {
        let f = if p == 0 { Field::Rationals } else { Field::prime(p).unwrap() };
        let mut rng = modcat::corpus::rng(seed);
        let g = modcat::corpus::random_invertible(f, n, &mut rng);
        let inv = g.inverse().expect("invertible");
        prop_assert!(g.mul(&inv).is_identity());
        prop_assert!(inv.mul(&g).is_identity());
    }
}

#[test]
fn large_values_do_not_overflow() {
    let f = Field::Rationals;
    let mut x = f.from_i64(i64::MAX);
    for _ in 0..4 {
        x = &x * &x;
    }
    assert!(x.to_string().len() > 300);
}
