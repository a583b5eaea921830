mod common;

use common::{random_monic, random_structured, rng};
use normform::affine::{generalized_companion, jump_data, to_affine, AffineRepresentative};
use normform::poly::poly_product;
use normform::rnf::invariant_factors;
use normform::{Field, Partition, Polynomial};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generalized_companion_is_cyclic(seed in any::<u64>(), rational in any::<bool>()) {
        let f = if rational { Field::rationals() } else { Field::prime(3).unwrap() };
        let mut r = rng(seed);
        let s = r.gen_range(1..4);
        let qs: Vec<Polynomial> = (0..s).map(|_| {
            let d = r.gen_range(1..3);
            random_monic(&mut r, f, d)
        }).collect();
        let form = invariant_factors(&generalized_companion(&qs).unwrap()).unwrap();
        prop_assert_eq!(form.factors(), &[poly_product(&qs).unwrap()][..]);
    }

    #[test]
    fn affine_representative_is_in_the_class(seed in any::<u64>(), n in 1usize..6) {
        let f = Field::prime(5).unwrap();
        let a = random_structured(&mut rng(seed), f, n);
        let form = invariant_factors(&a).unwrap();
        let rep = to_affine(&form).unwrap();
        prop_assert_eq!(rep.partition(), &form.partition());
        prop_assert_eq!(invariant_factors(&rep.matrix()).unwrap(), form.clone());
        prop_assert_eq!(rep.to_rnf(), form);
    }
}

#[test]
fn bijection_on_small_partitions() {
    let f = Field::rationals();
    let mut r = rng(5);
    for n in 1..=6 {
        for p in Partition::all(n) {
            let qs: Vec<Polynomial> = jump_data(&p).qs.iter().map(|&d| random_monic(&mut r, f, d)).collect();
            let rep = AffineRepresentative::new(p.clone(), qs).unwrap();
            assert_eq!(to_affine(&rep.to_rnf()).unwrap(), rep, "partition {p}");
            assert_eq!(rep.dimension(), p.largest());
            let degrees: usize = rep.qs().iter().map(|q| q.degree().unwrap()).sum();
            assert_eq!(degrees, p.largest());
        }
    }
}

#[test]
fn wrong_degrees_are_rejected() {
    let f = Field::rationals();
    let p = Partition::new(vec![3, 1]).unwrap();
    let qs = vec![Polynomial::from_i64s(f, &[1, 1]), Polynomial::from_i64s(f, &[1, 1])];
    assert!(AffineRepresentative::new(p, qs).is_err());
}
