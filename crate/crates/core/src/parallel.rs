//! Per-sample seeding and a deterministic reduction, with a rayon path and a
//! sequential fallback that produce bit-identical results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for sample `idx`: the base seed selects the key, the sample
/// index selects the stream.
pub fn sample_rng(base_seed: u64, idx: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(idx);
    rng
}

/// Evaluate `f(idx, rng)` for every sample, returning results in index order.
pub fn run_samples<T, F>(n: usize, base_seed: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if workers != 1 {
            return run_parallel(n, base_seed, workers, f);
        }
    }
    let _ = workers;
    run_sequential(n, base_seed, f)
}

pub fn run_sequential<T, F>(n: usize, base_seed: u64, f: F) -> Vec<T>
where
    F: Fn(usize, &mut ChaCha8Rng) -> T,
{
    (0..n)
        .map(|i| f(i, &mut sample_rng(base_seed, i as u64)))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn run_parallel<T, F>(n: usize, base_seed: u64, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> T + Sync + Send,
{
    use rayon::prelude::*;
    let job = || {
        (0..n)
            .into_par_iter()
            .map(|i| f(i, &mut sample_rng(base_seed, i as u64)))
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

/// Pairwise summation in a fixed order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_differ_and_repeat() {
        let a: u64 = sample_rng(7, 0).random();
        let b: u64 = sample_rng(7, 1).random();
        assert_ne!(a, b);
        assert_eq!(a, sample_rng(7, 0).random::<u64>());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let f = |i: usize, r: &mut ChaCha8Rng| r.random::<f64>() + i as f64;
        let one = run_samples(100, 3, 1, f);
        let four = run_samples(100, 3, 4, f);
        assert_eq!(one, four);
        assert_eq!(pairwise_sum(&one).to_bits(), pairwise_sum(&four).to_bits());
    }

    #[test]
    fn pairwise() {
        let xs: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&xs), 500500.0);
    }
}
