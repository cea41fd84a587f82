//! Small deterministic generator for test fixtures and sampling.
//!
//! SplitMix64: counter-based, fully determined by its seed, trivially
//! splittable. No global state, so seeded runs reproduce across platforms.

/// SplitMix64 pseudo-random generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in the half-open unit interval `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal sample via Box-Muller.
    pub fn next_gaussian(&mut self) -> f64 {
        // keep u1 strictly positive for the logarithm
        let u1 = ((self.next_u64() >> 11) + 1) as f64 * (1.0 / ((1u64 << 53) + 1) as f64);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Derive an independent generator; both streams stay deterministic.
    pub fn split(&mut self) -> Self {
        Self::new(self.next_u64() ^ GAMMA.rotate_left(17))
    }
}
