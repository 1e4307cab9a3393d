//! Seeded sampling of nonzero field elements.
//!
//! The stream is SplitMix64: the state advances by `0x9E3779B97F4A7C15` and
//! each output is the state passed through
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z =  z ^ (z >> 31)
//! ```
//!
//! (wrapping arithmetic). A field element of F_{p^m} is drawn as `m` digits,
//! constant term first, each digit by rejection: outputs at or above the
//! largest multiple of `p` below 2^64 are discarded, the rest reduced mod `p`.
//! The zero element is rejected as a whole.

use crate::ff::{FieldCtx, FieldElement};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `[0, bound)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }
}

/// Infinite stream of uniform nonzero elements of `field`.
pub struct NonzeroSampler {
    rng: SplitMix64,
    field: FieldCtx,
}

impl NonzeroSampler {
    pub fn new(field: &FieldCtx, seed: u64) -> Self {
        Self {
            rng: SplitMix64::new(seed),
            field: field.clone(),
        }
    }
}

impl Iterator for NonzeroSampler {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        let p = self.field.characteristic() as u64;
        let m = self.field.degree() as usize;
        loop {
            let digits: Vec<u32> = (0..m).map(|_| self.rng.below(p) as u32).collect();
            if digits.iter().any(|&d| d != 0) {
                return Some(FieldElement::new_unchecked(self.field.clone(), digits));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_outputs() {
        // Outputs for seed 1234567 from the reference C implementation.
        let mut r = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..3).map(|_| r.next_u64()).collect();
        assert_eq!(
            got,
            vec![6457827717110365317, 3203168211198807973, 9817491932198370423]
        );
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = SplitMix64::new(7);
        let mut seen = [0u32; 3];
        for _ in 0..3000 {
            seen[r.below(3) as usize] += 1;
        }
        assert!(seen.iter().all(|&c| c > 900));
    }

    #[test]
    fn sampler_is_deterministic_and_nonzero() {
        let f = FieldCtx::prime_field(2).unwrap().extend(3, None).unwrap();
        let a: Vec<_> = NonzeroSampler::new(&f, 42).take(200).collect();
        let b: Vec<_> = NonzeroSampler::new(&f, 42).take(200).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| !x.is_zero()));
        let distinct: std::collections::HashSet<_> = a.iter().cloned().collect();
        assert_eq!(distinct.len(), 7);
    }
}
