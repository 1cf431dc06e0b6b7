//! Seeded random generators used by the fuzz-style checks: small rational
//! coefficients (numerators in [-5, 5], denominators in [1, 3]) and
//! polynomials of bounded degree, rich enough to exercise cancellation while
//! keeping exact arithmetic fast.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polyring::{rat, Poly, Rat};
use crate::rules::SeqTable;

/// A deterministic RNG from a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One fuzz-distribution coefficient.
pub fn random_coefficient(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=3))
}

/// A polynomial with random degree at most `max_degree` under the fuzz
/// distribution; trailing zero draws may lower the degree, and the zero
/// polynomial can occur.
pub fn random_poly(rng: &mut impl Rng, max_degree: usize) -> Poly {
    let len = rng.gen_range(0..=max_degree + 1);
    Poly::from_coeffs((0..len).map(|_| random_coefficient(rng)).collect())
}

/// A sequence table of random polynomials.
pub fn random_seq_table(rng: &mut impl Rng, horizon: usize, max_degree: usize) -> SeqTable {
    SeqTable::from_fn(horizon, |_| random_poly(rng, max_degree))
}
