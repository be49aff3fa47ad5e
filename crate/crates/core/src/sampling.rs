//! Seeded exact samplers for rational elements of `O(p,q)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{invert, ExactScalar, Mat};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational with numerator in `[-bound, bound]` and denominator in `1..=3`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> ExactScalar {
    ExactScalar::new(rng.random_range(-bound..=bound), rng.random_range(1..=3))
}

/// `(I − S)(I + S)⁻¹` for `S = I_{p,q} K` with `K` antisymmetric; `None` when `I + S` is singular.
pub fn cayley(p: usize, q: usize, k: &Mat) -> Option<Mat> {
    let n = p + q;
    assert!(k.is_square() && k.rows() == n, "generator must be {n}x{n}");
    let s = &Mat::standard_form(p, q) * k;
    let id = Mat::identity(n);
    let inv = invert(&(&id + &s)).ok()?;
    Some(&(&id - &s) * &inv)
}

/// Permutes the first `p` and last `q` coordinates separately, with random signs.
pub fn signed_permutation<R: Rng + ?Sized>(rng: &mut R, p: usize, q: usize) -> Mat {
    let n = p + q;
    let mut first: Vec<usize> = (0..p).collect();
    let mut last: Vec<usize> = (p..n).collect();
    first.shuffle(rng);
    last.shuffle(rng);
    let mut m = Mat::zeros(n, n);
    for (col, row) in first.into_iter().chain(last).enumerate() {
        m[(row, col)] = ExactScalar::from_i64(if rng.random_bool(0.5) { 1 } else { -1 });
    }
    m
}

/// A random exact element of `O(p,q)`: a Cayley transform composed with a signed permutation.
pub fn random_isometry<R: Rng + ?Sized>(rng: &mut R, p: usize, q: usize) -> Mat {
    let n = p + q;
    loop {
        let mut k = Mat::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = small_rational(rng, 2);
                k[(j, i)] = -&x;
                k[(i, j)] = x;
            }
        }
        if let Some(c) = cayley(p, q, &k) {
            return &c * &signed_permutation(rng, p, q);
        }
    }
}
