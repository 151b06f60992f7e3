use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CorpusError;

/// Seeded train/test partition; `round(n * train_fraction)` items go to train.
/// Both halves keep the input order.
pub fn split<T>(items: Vec<T>, train_fraction: f64, seed: u64) -> Result<(Vec<T>, Vec<T>), CorpusError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(CorpusError::InvalidConfig(format!("train fraction must lie in (0, 1), got {train_fraction}")));
    }
    let n = items.len();
    let n_train = (n as f64 * train_fraction).round() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut in_train = vec![false; n];
    for &i in &order[..n_train] {
        in_train[i] = true;
    }
    let (mut train, mut test) = (Vec::with_capacity(n_train), Vec::with_capacity(n - n_train));
    for (item, keep) in items.into_iter().zip(in_train) {
        if keep {
            train.push(item);
        } else {
            test.push(item);
        }
    }
    Ok((train, test))
}
