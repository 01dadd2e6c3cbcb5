//! Seeded sample generators for randomized identity checks.
//!
//! Everything draws from a [`ChaCha8Rng`] so a (seed, parameters) pair
//! reproduces the identical sample sequence on every run and platform.
//! Coefficients are small rationals, which keeps exact-backend defect
//! checks fast and float-backend checks well conditioned.

use rand::Rng;
use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::fock::{FockVector, Word};
use crate::scalar::Scalar;

/// The stream all checks share; seed 0 is the conventional default.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform degree in `0..=max_degree`, then uniform letters.
pub fn random_word<R: Rng>(rng: &mut R, dim: usize, max_degree: usize) -> Word {
    let degree = rng.gen_range(0..=max_degree);
    Word::new((0..degree).map(|_| rng.gen_range(0..dim)).collect())
}

/// A short combination of random words with small nonzero fractional
/// coefficients (numerators in ±1..=4, denominators in 1..=4).
pub fn random_vector<S: Scalar, R: Rng>(
    rng: &mut R,
    dim: usize,
    max_degree: usize,
    max_terms: usize,
) -> FockVector<S> {
    let terms = rng.gen_range(1..=max_terms.max(1));
    let mut v = FockVector::zero();
    for _ in 0..terms {
        let word = random_word(rng, dim, max_degree);
        let numerator = loop {
            let x: i64 = rng.gen_range(-4..=4);
            if x != 0 {
                break x;
            }
        };
        let denominator: i64 = rng.gen_range(1..=4);
        let coeff = S::from_int(numerator)
            .checked_div(&S::from_int(denominator))
            .expect("nonzero denominator");
        v.add_term(word, coeff);
    }
    v
}

/// A power of the generator letter with uniform exponent.
pub fn random_pure_word<R: Rng>(rng: &mut R, max_degree: usize) -> Word {
    Word::power(0, rng.gen_range(0..=max_degree))
}
