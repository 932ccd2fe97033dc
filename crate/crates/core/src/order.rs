//! Permutations, stable orderings, and comonotonicity.

use crate::error::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly random permutation of `0..n` (Fisher-Yates shuffle).
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = rng_from_seed(seed);
    random_permutation_with(n, &mut rng)
}

pub(crate) fn random_permutation_with<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..n).collect();
    for j in (1..n).rev() {
        let i = rng.gen_range(0..=j);
        sigma.swap(i, j);
    }
    sigma
}

/// Stable ordering permutation of `x`: the unique `sigma` with
/// `x[sigma[0]] <= x[sigma[1]] <= ...` preserving input order on ties.
pub fn ordering_permutation(x: &[f64]) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..x.len()).collect();
    sigma.sort_by(|&i, &j| x[i].partial_cmp(&x[j]).unwrap());
    sigma
}

/// Checks whether `x` and `y` admit a permutation sorting both simultaneously.
///
/// On success returns the common ordering permutation; it is stable on `x`
/// and reorders tied blocks of `x` by `y`.
pub fn is_comonotonic(x: &[f64], y: &[f64]) -> Result<Option<Vec<usize>>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    let mut s = ordering_permutation(x);
    // within blocks of equal x, sort by y
    let mut i1 = 0;
    while i1 < n {
        let mut i2 = i1 + 1;
        while i2 < n && x[s[i1]] == x[s[i2]] {
            i2 += 1;
        }
        if i2 - i1 > 1 {
            s[i1..i2].sort_by(|&i, &j| y[i].partial_cmp(&y[j]).unwrap());
        }
        if i1 > 0 && y[s[i1 - 1]] > y[s[i1]] {
            return Ok(None);
        }
        i1 = i2;
    }
    // verify the interior of sorted-by-y blocks too
    for w in s.windows(2) {
        if y[w[0]] > y[w[1]] {
            return Ok(None);
        }
    }
    Ok(Some(s))
}

/// Generates a comonotonic pair by sorting two samples and applying a common
/// random permutation.
pub fn random_comonotonic_pair<R: Rng>(
    n: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
    let mut y: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
    x.sort_by(|a, b| a.partial_cmp(b).unwrap());
    y.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let sigma = random_permutation_with(n, rng);
    let xp: Vec<f64> = sigma.iter().map(|&i| x[i]).collect();
    let yp: Vec<f64> = sigma.iter().map(|&i| y[i]).collect();
    (xp, yp)
}
