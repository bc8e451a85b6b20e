#![allow(dead_code)]

use guframe::abelian::GroupSpec;
use guframe::gu::{GUFrame, UnitaryRep};
use guframe::matops::{c64, CMatrix, CVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Group with one to three cyclic factors and order at most `max_order`.
pub fn random_spec(rng: &mut ChaCha8Rng, max_order: usize) -> GroupSpec {
    let mut factors = Vec::new();
    let mut order = 1;
    for _ in 0..rng.random_range(1..=3) {
        let limit = (max_order / order).min(16);
        if limit < 2 {
            break;
        }
        let f = rng.random_range(2..=limit);
        factors.push(f);
        order *= f;
    }
    if factors.is_empty() {
        factors.push(2);
    }
    GroupSpec::new(factors).unwrap()
}

pub fn real_diag(values: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(values.len(), values.iter().map(|&v| c64(v))))
}

/// The Z2 x Z2 example: `phi = (sqrt3/2, -1/2)` under sign-flip diagonals.
pub fn example_gu() -> GUFrame {
    let rep = UnitaryRep::new(
        GroupSpec::new(vec![2, 2]).unwrap(),
        vec![
            real_diag(&[1.0, 1.0]),
            real_diag(&[1.0, -1.0]),
            real_diag(&[-1.0, -1.0]),
            real_diag(&[-1.0, 1.0]),
        ],
    )
    .unwrap();
    GUFrame::new(rep, CVector::from_vec(vec![c64(3f64.sqrt() / 2.0), c64(-0.5)])).unwrap()
}

pub fn max_vec_diff(a: &CVector, b: &CVector) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
