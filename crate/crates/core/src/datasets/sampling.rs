use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::labels::ActivityLabel;
use super::windows::Labeled;
use crate::error::{Error, Result};

/// Train/validation/test fractions plus the shuffle seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_frac: f64,
    pub val_frac: f64,
    pub test_frac: f64,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train_frac: f64, val_frac: f64, test_frac: f64, seed: u64) -> Result<Self> {
        let spec = SplitSpec {
            train_frac,
            val_frac,
            test_frac,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Scarce labeled target data: 10% train, 10% validation, 80% test.
    pub fn earable(seed: u64) -> Self {
        SplitSpec {
            train_frac: 0.10,
            val_frac: 0.10,
            test_frac: 0.80,
            seed,
        }
    }

    /// Plentiful source data: 80% train, 10% validation, 10% test.
    pub fn public(seed: u64) -> Self {
        SplitSpec {
            train_frac: 0.80,
            val_frac: 0.10,
            test_frac: 0.10,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fracs = [self.train_frac, self.val_frac, self.test_frac];
        if fracs.iter().any(|f| !(*f >= 0.0) || !f.is_finite()) {
            return Err(Error::Config(format!(
                "split fractions must be non-negative: {fracs:?}"
            )));
        }
        let sum: f64 = fracs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("split fractions sum to {sum}, not 1")));
        }
        Ok(())
    }
}

/// The three partitions of a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Splits<T> {
    pub train: Vec<T>,
    pub val: Vec<T>,
    pub test: Vec<T>,
}

impl<T> Splits<T> {
    pub fn map<U, E>(&self, mut f: impl FnMut(&T) -> std::result::Result<U, E>) -> std::result::Result<Splits<U>, E> {
        Ok(Splits {
            train: self.train.iter().map(&mut f).collect::<std::result::Result<_, _>>()?,
            val: self.val.iter().map(&mut f).collect::<std::result::Result<_, _>>()?,
            test: self.test.iter().map(&mut f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn sizes(&self) -> (usize, usize, usize) {
        (self.train.len(), self.val.len(), self.test.len())
    }
}

/// Seeded shuffle, then a contiguous partition with
/// `round(n·train_frac)` and `round(n·val_frac)` items; test takes the rest.
pub fn split<T: Clone>(items: &[T], spec: &SplitSpec) -> Result<Splits<T>> {
    spec.validate()?;
    let n = items.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(spec.seed));
    let n_train = ((n as f64 * spec.train_frac).round() as usize).min(n);
    let n_val = ((n as f64 * spec.val_frac).round() as usize).min(n - n_train);
    let take = |idx: &[usize]| idx.iter().map(|&i| items[i].clone()).collect::<Vec<_>>();
    Ok(Splits {
        train: take(&order[..n_train]),
        val: take(&order[n_train..n_train + n_val]),
        test: take(&order[n_train + n_val..]),
    })
}

/// Exactly `per_class` items of every activity, drawn uniformly without
/// replacement and returned in a seeded random order.
pub fn balanced_sample<T: Labeled + Clone>(items: &[T], per_class: usize, seed: u64) -> Result<Vec<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = Vec::with_capacity(per_class * ActivityLabel::COUNT);
    for class in ActivityLabel::ALL {
        let pool: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|(_, w)| w.label() == class)
            .map(|(i, _)| i)
            .collect();
        if pool.len() < per_class {
            return Err(Error::Shortage {
                class: class.to_string(),
                needed: per_class,
                available: pool.len(),
            });
        }
        picked.extend(pool.choose_multiple(&mut rng, per_class).copied());
    }
    picked.shuffle(&mut rng);
    Ok(picked.into_iter().map(|i| items[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[derive(Debug, Clone, PartialEq)]
    struct Item(usize, ActivityLabel);

    impl Labeled for Item {
        fn label(&self) -> ActivityLabel {
            self.1
        }
    }

    fn items(n: usize) -> Vec<Item> {
        (0..n).map(|i| Item(i, ActivityLabel::ALL[i % 4])).collect()
    }

    #[test]
    fn earable_and_public_split_sizes() {
        let s = split(&items(840), &SplitSpec::earable(3)).unwrap();
        assert_eq!(s.sizes(), (84, 84, 672));
        let s = split(&items(10_000), &SplitSpec::public(3)).unwrap();
        assert_eq!(s.sizes(), (8000, 1000, 1000));
        let s = split(&items(0), &SplitSpec::public(3)).unwrap();
        assert_eq!(s.sizes(), (0, 0, 0));
    }

    #[test]
    fn rejects_bad_fractions() {
        assert!(SplitSpec::new(0.5, 0.5, 0.1, 0).is_err());
        assert!(SplitSpec::new(1.2, -0.2, 0.0, 0).is_err());
        assert!(SplitSpec::new(0.7, 0.2, 0.1, 0).is_ok());
    }

    #[test]
    fn balanced_counts() {
        let pool = items(40);
        let out = balanced_sample(&pool, 1, 9).unwrap();
        assert_eq!(out.len(), 4);
        let mut labels: Vec<_> = out.iter().map(|i| i.1).collect();
        labels.sort();
        assert_eq!(labels, ActivityLabel::ALL.to_vec());
        assert_eq!(balanced_sample(&pool, 10, 9).unwrap().len(), 40);
    }

    #[test]
    fn shortage_names_the_class() {
        let pool: Vec<Item> = items(40)
            .into_iter()
            .filter(|i| i.1 != ActivityLabel::Jogging)
            .collect();
        match balanced_sample(&pool, 1, 0) {
            Err(Error::Shortage { class, available, .. }) => {
                assert_eq!(class, "jogging");
                assert_eq!(available, 0);
            }
            other => panic!("expected shortage, got {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn split_is_a_reproducible_partition(n in 0usize..300, seed in any::<u64>(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (train, val) = (a * 0.5, b * 0.5);
            let spec = SplitSpec::new(train, val, 1.0 - train - val, seed).unwrap();
            let pool = items(n);
            let s = split(&pool, &spec).unwrap();
            let mut ids: Vec<usize> = s.train.iter().chain(&s.val).chain(&s.test).map(|i| i.0).collect();
            ids.sort_unstable();
            prop_assert_eq!(ids, (0..n).collect::<Vec<_>>());
            prop_assert_eq!(s.clone(), split(&pool, &spec).unwrap());
        }

        #[test]
        fn balanced_histogram_is_uniform(per_class in 0usize..8, extra in 0usize..30, seed in any::<u64>()) {
            let pool = items(4 * per_class + extra);
            let out = balanced_sample(&pool, per_class, seed).unwrap();
            for class in ActivityLabel::ALL {
                prop_assert_eq!(out.iter().filter(|i| i.1 == class).count(), per_class);
            }
        }
    }
}
