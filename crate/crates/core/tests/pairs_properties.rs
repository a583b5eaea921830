mod common;

use common::{random_invertible, random_scalar, rng};
use normform::pairs::{
    common_eigenvector, g_value, hom_dimension, invariants, q_points, reduce_to_q, simple_pair,
    split_off_simple, PairPoint, QForm, Sl2Pair,
};
use normform::{Error, Field, Matrix};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

fn random_qform(r: &mut ChaCha8Rng, f: Field) -> QForm {
    loop {
        let (a, b, c) = (random_scalar(r, f), random_scalar(r, f), random_scalar(r, f));
        if let Ok(q) = QForm::new(a, b, c) {
            return q;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_are_conjugation_invariant(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 3, 7, 13])) {
        let f = if p == 0 { Field::rationals() } else { Field::prime(p).unwrap() };
        let mut r = rng(seed);
        let q = random_qform(&mut r, f);
        let g = random_invertible(&mut r, f, 2);
        let moved = q.pair().conjugate_by(&g).unwrap();
        prop_assert_eq!(invariants(&moved), invariants(&q.pair()));
        let (h, back) = reduce_to_q(&moved).unwrap();
        prop_assert_eq!(moved.conjugate_by(&h).unwrap(), back.pair());
        prop_assert!(q_points(&invariants(&moved)).unwrap().contains(&back));
    }

    #[test]
    fn fibers_in_odd_characteristic_are_four_distinct_points(seed in any::<u64>()) {
        let f = Field::prime(13).unwrap();
        let q = random_qform(&mut rng(seed), f);
        let pts = q_points(&invariants(&q.pair())).unwrap();
        prop_assert_eq!(pts.len(), 4);
        let mut dedup = pts.clone();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), 4);
    }

    #[test]
    fn hom_is_additive(seed in any::<u64>()) {
        let f = Field::prime(11).unwrap();
        let mut r = rng(seed);
        let s = simple_pair(f, 4).unwrap();
        let t = random_qform(&mut r, f).pair().to_point();
        let m = s.direct_sum(&t).unwrap();
        let lhs = hom_dimension(&m, &s).unwrap();
        prop_assert_eq!(lhs, hom_dimension(&s, &s).unwrap() + hom_dimension(&t, &s).unwrap());
        let rhs = hom_dimension(&s, &m).unwrap();
        prop_assert_eq!(rhs, hom_dimension(&s, &s).unwrap() + hom_dimension(&s, &t).unwrap());
    }

    #[test]
    fn split_recovers_the_complement(seed in any::<u64>()) {
        let f = Field::prime(11).unwrap();
        let mut r = rng(seed);
        let s = simple_pair(f, 4).unwrap();
        let t = random_qform(&mut r, f).pair();
        let g0 = random_invertible(&mut r, f, 4);
        let m = s.direct_sum(&t.to_point()).unwrap().conjugate_by(&g0).unwrap();
        let split = split_off_simple(&m).unwrap();
        prop_assert_eq!(m.conjugate_by(&split.h).unwrap(), s.direct_sum(&split.t).unwrap());
        prop_assert_eq!(invariants(&split.t.to_sl2().unwrap()), invariants(&t));
    }
}

#[test]
fn y_points_have_no_common_eigenvector_gf5() {
    let f = Field::prime(5).unwrap();
    let mut r = rng(3);
    for _ in 0..200 {
        let q = random_qform(&mut r, f);
        let pair = q.pair().conjugate_by(&random_invertible(&mut r, f, 2)).unwrap();
        assert!(!g_value(&invariants(&pair)).is_zero());
        assert_eq!(common_eigenvector(&pair).unwrap(), None);
    }
}

#[test]
fn triangular_pair_has_common_eigenvector() {
    let f = Field::prime(7).unwrap();
    let a = Matrix::from_i64s(f, 2, 2, &[2, 1, 0, 5]).unwrap();
    let b = Matrix::from_i64s(f, 2, 2, &[3, 6, 0, 4]).unwrap();
    let pair = Sl2Pair::new(a, b).unwrap();
    assert!(g_value(&invariants(&pair)).is_zero());
    assert_eq!(common_eigenvector(&pair).unwrap(), Some(vec![f.one(), f.zero()]));
}

#[test]
fn nonsplit_self_extension_has_degenerate_composite() {
    let f = Field::prime(11).unwrap();
    let s = simple_pair(f, 4).unwrap();
    // [[s1, E11], [0, s1]], [[s2, 0], [0, s2]] does not split: the diagonal
    // of s1 Y - Y s1 vanishes for every Y
    let mut x1 = Matrix::zeros(f, 2, 2);
    x1.set(0, 0, f.one());
    let top1 = s.m1.hstack(&x1).unwrap();
    let top2 = s.m2.hstack(&Matrix::zeros(f, 2, 2)).unwrap();
    let bottom1 = Matrix::zeros(f, 2, 2).hstack(&s.m1).unwrap();
    let bottom2 = Matrix::zeros(f, 2, 2).hstack(&s.m2).unwrap();
    let m = PairPoint::new(top1.vstack(&bottom1).unwrap(), top2.vstack(&bottom2).unwrap()).unwrap();
    assert_eq!(hom_dimension(&s, &m).unwrap(), 1);
    assert_eq!(hom_dimension(&m, &s).unwrap(), 1);
    assert_eq!(split_off_simple(&m), Err(Error::DegenerateComposite));
}

#[test]
fn simple_pair_needs_enough_distinct_diagonal_entries() {
    assert!(simple_pair(Field::prime(2).unwrap(), 4).is_ok());
    assert_eq!(simple_pair(Field::prime(2).unwrap(), 5), Err(Error::DegenerateDiagonal(3, 2)));
}
