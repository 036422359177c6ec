//! Seeded sampling for randomized checks.
//!
//! Group elements are drawn as uniform random words over `{S, S⁻¹, T, T⁻¹}`
//! rather than as matrices with bounded entries, so the sampled word doubles as
//! an independent factorization.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{evaluate_word, GammaElement, Generator, GeneratorWord, LatticeVector};
use crate::qtorus::AlgebraElement;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A word of `1..=max_len` tokens, each uniform over `S^{±1}, T^{±1}`.
pub fn random_word(rng: &mut impl Rng, max_len: usize) -> GeneratorWord {
    let len = rng.random_range(1..=max_len.max(1));
    let mut w = GeneratorWord::new();
    for _ in 0..len {
        let generator = if rng.random_bool(0.5) {
            Generator::S
        } else {
            Generator::T
        };
        let exponent = if rng.random_bool(0.5) { 1 } else { -1 };
        w.push(generator, exponent);
    }
    w
}

/// A random group element together with the word that produced it.
pub fn random_gamma(rng: &mut impl Rng, max_len: usize) -> (GammaElement, GeneratorWord) {
    let w = random_word(rng, max_len);
    // at most 20-ish tokens of entry growth ≤ 2 each; cannot overflow i64 for sane lengths
    let b = evaluate_word(&w).expect("short words do not overflow");
    (b, w)
}

pub fn random_vector(rng: &mut impl Rng, radius: i64) -> LatticeVector {
    LatticeVector::new(
        rng.random_range(-radius..=radius),
        rng.random_range(-radius..=radius),
    )
}

/// `terms` draws of `(ξ, a)` with `ξ ∈ [−radius, radius]²` and `Re a, Im a ∈ [−1, 1)`;
/// repeated `ξ` are summed, so the support can be smaller.
pub fn random_element(rng: &mut impl Rng, terms: usize, radius: i64) -> AlgebraElement {
    let mut f = AlgebraElement::zero();
    for _ in 0..terms {
        let xi = random_vector(rng, radius);
        let a = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        f.add_term(xi, a);
    }
    f
}
