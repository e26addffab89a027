//! The pseudo-random generator and exact categorical selection.
//!
//! The generator is PCG-RXS-M-XS-64/64: a 64-bit linear congruential state
//! transition followed by a fixed output permutation. Seeding follows the
//! reference PCG procedure. See `docs/rng.md` for the bit-exact contract.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::dist::Prob;

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x00a1_ea5e_ed00_2025;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngState(pub u64);

impl RngState {
    pub fn seeded(seed: u64) -> RngState {
        let mut s = RngState(0);
        s.step();
        s.0 = s.0.wrapping_add(seed);
        s.step();
        s
    }

    fn step(&mut self) {
        self.0 = self.0.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
    }

    /// Output word for the current state, then advance.
    pub fn next_u64(&mut self) -> u64 {
        let old = self.0;
        self.step();
        let word = ((old >> ((old >> 59) + 5)) ^ old).wrapping_mul(12605985483714917081);
        (word >> 43) ^ word
    }

    /// Uniform integer in `[0, bound)`, by rejection: a 64-bit word is
    /// accepted when below the largest multiple of `bound` not exceeding
    /// 2^64.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = (1u128 << 64) / bound as u128 * bound as u128;
        loop {
            let x = self.next_u64() as u128;
            if x < zone {
                return (x % bound as u128) as u64;
            }
        }
    }

    /// Uniform integer in `[0, bound)` for arbitrarily large bounds: as
    /// many 64-bit words as needed are concatenated, most significant
    /// first, and rejected above the largest multiple of `bound`.
    pub fn below_big(&mut self, bound: &BigUint) -> BigUint {
        if let Some(b) = bound.to_u64() {
            return BigUint::from(self.below(b));
        }
        let words = bound.bits().div_ceil(64) as usize;
        let span = BigUint::one() << (64 * words);
        let zone = &span / bound * bound;
        loop {
            let mut x = BigUint::zero();
            for _ in 0..words {
                x = (x << 64u32) + BigUint::from(self.next_u64());
            }
            if x < zone {
                return x % bound;
            }
        }
    }
}

/// Selects an index `k` (0-based) with probability `probs[k]`. The
/// probabilities must be positive and sum to exactly 1. A single
/// probability consumes no randomness.
pub fn random(s: RngState, probs: &[Prob]) -> (RngState, usize) {
    let mut s = s;
    let k = s.choose(probs);
    (s, k)
}

impl RngState {
    pub fn choose(&mut self, probs: &[Prob]) -> usize {
        assert!(!probs.is_empty(), "no outcomes to choose from");
        if probs.len() == 1 {
            return 0;
        }
        if let Some(k) = self.choose_small(probs) {
            return k;
        }
        let lcm = probs
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, p| acc.lcm(p.denom()));
        let lcm = lcm.to_biguint().expect("positive denominators");
        let u = self.below_big(&lcm);
        let mut cumulative = BigUint::zero();
        for (k, p) in probs.iter().enumerate() {
            let numer = p.numer().to_biguint().expect("positive probability");
            cumulative += numer * (&lcm / p.denom().to_biguint().expect("positive denominator"));
            if u < cumulative {
                return k;
            }
        }
        panic!("probabilities do not sum to 1");
    }
}

impl RngState {
    /// The same selection in machine integers, when the common
    /// denominator fits in 64 bits.
    fn choose_small(&mut self, probs: &[Prob]) -> Option<usize> {
        let mut lcm: u64 = 1;
        let mut parts = Vec::with_capacity(probs.len());
        for p in probs {
            let n = p.numer().to_u64()?;
            let d = p.denom().to_u64()?;
            lcm = lcm.checked_mul(d / lcm.gcd(&d))?;
            parts.push((n, d));
        }
        let u = self.below(lcm) as u128;
        let mut cumulative: u128 = 0;
        for (k, (n, d)) in parts.into_iter().enumerate() {
            cumulative += n as u128 * (lcm / d) as u128;
            if u < cumulative {
                return Some(k);
            }
        }
        panic!("probabilities do not sum to 1");
    }
}
