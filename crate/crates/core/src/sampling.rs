//! Deterministic random sampling of cone functions.
//!
//! Every trial derives its own sub-seed from `(seed, stream index)`
//! through a SplitMix64 mix, so results are independent of execution
//! order and reproducible bit-for-bit from the reported seed. The
//! generator behind each sub-seed is ChaCha8.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::space::{Domain, SampledFunction};

/// SplitMix64 finalizer; decorrelates consecutive stream indices.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sub-seed for stream `index` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// RNG for stream `index` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index))
}

/// Cone function with coordinates i.i.d. uniform on `[0, scale)`.
pub fn cone_function(domain: &Domain, rng: &mut ChaCha8Rng, scale: f64) -> SampledFunction {
    let values = (0..domain.size()).map(|_| scale * rng.gen::<f64>()).collect();
    SampledFunction::new(domain.clone(), values).expect("finite by construction")
}

/// Cone function with sup norm exactly 1: coordinates i.i.d. uniform
/// on `[0, 1)`, then one uniformly chosen coordinate forced to 1.
/// Forcing avoids a normalization division that could round the norm
/// away from 1.
pub fn unit_cone_function(domain: &Domain, rng: &mut ChaCha8Rng) -> SampledFunction {
    let m = domain.size();
    let mut values: Vec<f64> = (0..m).map(|_| rng.gen::<f64>()).collect();
    let pin = rng.gen_range(0..m);
    values[pin] = 1.0;
    SampledFunction::new(domain.clone(), values).expect("finite by construction")
}
