//! Counter-based deterministic randomness: every draw is a function of
//! `(seed, stream)`, so parallel work reproduces bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::point::Point;
use crate::scalar::{Rational, Scalar};

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// splitmix64 finalizer over `seed ^ index`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Integer vector with coordinates uniform in `[-bound, bound]`.
pub fn int_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Point<Rational> {
    Point(
        (0..n)
            .map(|_| Rational::from_int(rng.random_range(-bound..=bound)))
            .collect(),
    )
}

/// Integer vector not parallel to `avoid` (and nonzero).
pub fn int_vector_avoiding<R: Rng>(rng: &mut R, avoid: &Point<Rational>, bound: i64) -> Point<Rational> {
    loop {
        let v = int_vector(rng, avoid.dim(), bound);
        if !v.is_parallel(avoid) {
            return v;
        }
    }
}
