mod common;

use std::f64::consts::PI;

use guframe::abelian::{GroupElement, GroupSpec};
use guframe::matops::{self, CVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn specs(max_order: usize) -> impl Strategy<Value = GroupSpec> {
    prop::collection::vec(1usize..=12, 1..=3)
        .prop_filter("order bound", move |f| f.iter().product::<usize>() <= max_order)
        .prop_map(|f| GroupSpec::new(f).unwrap())
}

fn kernel_oracle(spec: &GroupSpec, h: &GroupElement, q: &GroupElement) -> Complex64 {
    let turns: f64 = spec
        .factors()
        .iter()
        .zip(h.0.iter().zip(&q.0))
        .map(|(&n, (&a, &b))| (a * b) as f64 / n as f64)
        .sum();
    Complex64::from_polar(1.0, -2.0 * PI * turns)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fourier_matrix_is_unitary(spec in specs(256)) {
        let f = spec.ft_matrix();
        prop_assert!(matops::unitary_deviation(&f) < 1e-12);
        prop_assert!(matops::max_abs_diff(&f, &f.transpose()) < 1e-12);
    }

    #[test]
    fn kernel_matches_direct_formula(spec in specs(64), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = spec.order();
        for _ in 0..32 {
            let (h, q) = (rng.random_range(0..n), rng.random_range(0..n));
            let expect = kernel_oracle(&spec, &spec.element(h), &spec.element(q));
            prop_assert!((spec.ft_kernel_index(h, q) - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn characters_are_multiplicative(spec in specs(64), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = spec.order();
        for _ in 0..32 {
            let (h, q, p) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            let lhs = spec.ft_kernel_index(h, spec.add_index(q, p));
            let rhs = spec.ft_kernel_index(h, q) * spec.ft_kernel_index(h, p);
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn group_axioms(spec in specs(64)) {
        let n = spec.order();
        for a in 0..n {
            prop_assert_eq!(spec.add_index(a, 0), a);
            prop_assert_eq!(spec.add_index(a, spec.neg_index(a)), 0);
            prop_assert_eq!(spec.index_of(&spec.element(a)).unwrap(), a);
            for b in 0..n {
                prop_assert_eq!(spec.add_index(a, b), spec.add_index(b, a));
                prop_assert_eq!(spec.sub_index(spec.add_index(a, b), b), a);
            }
        }
        let c = n / 2;
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(
                    spec.add_index(spec.add_index(a, b), c),
                    spec.add_index(a, spec.add_index(b, c))
                );
            }
        }
    }

    #[test]
    fn transform_roundtrip(spec in specs(128), seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let v = guframe::random::gaussian_vector(spec.order(), &mut rng);
        let fv = spec.ft_apply(&v).unwrap();
        prop_assert!(((spec.ft_matrix() * &v) - &fv).norm() < 1e-10);
        let back: CVector = spec.ift_apply(&fv).unwrap();
        prop_assert!((back - v).norm() < 1e-10);
    }
}

#[test]
fn enumeration_is_mixed_radix() {
    let spec = GroupSpec::new(vec![2, 3]).unwrap();
    let elems: Vec<Vec<usize>> = spec.enumerate().into_iter().map(|g| g.0).collect();
    assert_eq!(elems, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
}
