use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::AntisymTensor;
use crate::linalg::Rational;

/// How random tensors are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    /// Entries are uniform integers in `[-entry_range, entry_range]`.
    pub entry_range: u32,
    /// Full redraws allowed after a singular `Z` matrix.
    pub max_resamples: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            entry_range: 9,
            max_resamples: 16,
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// Draw number `k` for this configuration. The same `(seed, k)` always
/// gives the same tensor; different `k` use independent ChaCha streams.
pub fn random_antisym(d: usize, cfg: &SamplerConfig, k: u64) -> AntisymTensor {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k);
    let range = i64::from(cfg.entry_range.max(1));
    let mut t = AntisymTensor::zero(d);
    for a in 0..d {
        for b in a + 1..d {
            t.set(a, b, Rational::from(rng.random_range(-range..=range)));
        }
    }
    t
}
