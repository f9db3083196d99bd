//! Shared helpers for the unit and integration test suites.

use crate::metric::HermitianMetric;
use crate::scalar::Q;
use rand::Rng;

/// A random invariant Hermitian positive-definite matrix over Q(i), built as
/// T†T for a random T (redrawn until invertible).
pub fn random_metric(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> HermitianMetric {
    loop {
        let t: Vec<Vec<Q>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Q::from_parts(rng.gen_range(-2..=2), 1, rng.gen_range(-2..=2), 1))
                    .collect()
            })
            .collect();
        let mut h = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::zero();
                for row in &t {
                    let add = &row[i].conj() * &row[j];
                    s += &add;
                }
                h[i][j] = s;
            }
        }
        if let Ok(m) = HermitianMetric::new(h) {
            return m;
        }
    }
}

/// A random positive-rational diagonal metric.
pub fn random_diagonal_metric(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> HermitianMetric {
    let diag: Vec<Q> = (0..n)
        .map(|_| Q::from_ratio(rng.gen_range(1..=9), rng.gen_range(1..=9)))
        .collect();
    HermitianMetric::diagonal(diag).expect("positive diagonal")
}

/// A random Q(i) scalar with numerators and denominators up to `bound`.
pub fn random_scalar(rng: &mut rand_chacha::ChaCha8Rng, bound: i64) -> Q {
    Q::from_parts(
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=bound),
    )
}
