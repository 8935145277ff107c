//! Stable, platform-independent hashing for seed derivation.
//!
//! Episode seeds and per-object detection draws are keyed by hashes of
//! their coordinates instead of by position in an RNG stream, so any subset
//! of a run can be reproduced on its own and draw order never matters.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Order-sensitive hash over a list of byte strings.
pub fn stable_hash(parts: &[&[u8]]) -> u64 {
    let mut h = FNV_OFFSET;
    for p in parts {
        for b in p.iter().chain((p.len() as u64).to_le_bytes().iter()) {
            h ^= *b as u64;
            h = h.wrapping_mul(FNV_PRIME);
        }
    }
    splitmix64(h)
}

/// Maps a hash to `[0, 1)` using its top 53 bits.
pub fn unit_interval(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Per-step source of detection draws for one episode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DetectionDraws {
    pub seed: u64,
    pub step: u64,
}

impl DetectionDraws {
    pub fn new(seed: u64, step: u64) -> Self {
        DetectionDraws { seed, step }
    }

    /// Uniform sample in `[0, 1)` for `object_id` at this step.
    pub fn uniform(&self, object_id: &str) -> f64 {
        unit_interval(stable_hash(&[&self.seed.to_le_bytes(), &self.step.to_le_bytes(), object_id.as_bytes()]))
    }
}
