//! Seeded fixtures shared by the benchmarks.

use guframe::abelian::GroupSpec;
use guframe::gu::GUFrame;
use guframe::random::random_gu_frame;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random GU frame over `Z_n` in `C^m`, reproducible from `seed`.
pub fn cyclic_gu(n: usize, m: usize, seed: u64) -> GUFrame {
    let spec = GroupSpec::cyclic(n).expect("positive order");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_gu_frame(&spec, m, &mut rng).expect("distinct characters give a frame")
}
