use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::ParallelRecord;

/// Absolute dev/test sizes and the shuffle seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitSpec {
    pub dev_count: usize,
    pub test_count: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<ParallelRecord>,
    pub dev: Vec<ParallelRecord>,
    pub test: Vec<ParallelRecord>,
}

/// Shuffles records into train/dev/test.
///
/// Adjacent mirrored G records (the two directions of one sentence) move as
/// a unit, so a sentence never lands in one split while its re-gendered
/// variant lands in another. Dev and test sizes are met exactly; when the
/// pairs make that impossible the split fails instead of leaking.
pub fn split_corpus(records: Vec<ParallelRecord>, spec: SplitSpec) -> Result<Split> {
    let requested = spec.dev_count + spec.test_count;
    if requested > records.len() {
        return Err(Error::SplitTooLarge {
            requested,
            available: records.len(),
        });
    }

    let mut units: Vec<Vec<ParallelRecord>> = Vec::new();
    let mut iter = records.into_iter().peekable();
    while let Some(record) = iter.next() {
        if iter.peek().is_some_and(|next| record.mirrors(next)) {
            let next = iter.next().expect("peeked");
            units.push(vec![record, next]);
        } else {
            units.push(vec![record]);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    units.shuffle(&mut rng);
    let pairs = units.iter().filter(|u| u.len() == 2).count();
    let singles = units.len() - pairs;

    // Walk the shuffled units, filling dev then test, so both are a uniform
    // sample of the corpus. A pair that would overshoot goes to train.
    const TRAIN: usize = 0;
    let mut parts: [Vec<Vec<ParallelRecord>>; 3] = Default::default();
    let mut remaining = [0, spec.dev_count, spec.test_count];
    for unit in units {
        let part = [1, 2]
            .into_iter()
            .find(|&p| remaining[p] >= unit.len())
            .unwrap_or(TRAIN);
        remaining[part] = remaining[part].saturating_sub(unit.len());
        parts[part].push(unit);
    }

    // Each eval split is now at most one record short, and only when every
    // unit that would have fitted was a pair.
    for short in [1, 2] {
        if remaining[short] == 0 {
            continue;
        }
        if let Some(i) = parts[TRAIN].iter().position(|u| u.len() == 1) {
            let unit = parts[TRAIN].remove(i);
            parts[short].push(unit);
        } else {
            // Trade two singles of an eval split for a train pair, then
            // hand one of the singles to the short split.
            let donor = [1, 2]
                .into_iter()
                .find(|&p| parts[p].iter().filter(|u| u.len() == 1).count() >= 2);
            let pair = parts[TRAIN].iter().position(|u| u.len() == 2);
            let (Some(donor), Some(pair)) = (donor, pair) else {
                return Err(Error::SplitInfeasible {
                    dev: spec.dev_count,
                    test: spec.test_count,
                    pairs,
                    singles,
                });
            };
            let mut taken = Vec::new();
            parts[donor].retain(|u| {
                if u.len() == 1 && taken.len() < 2 {
                    taken.push(u.clone());
                    false
                } else {
                    true
                }
            });
            let pair = parts[TRAIN].remove(pair);
            parts[donor].push(pair);
            parts[TRAIN].push(taken.pop().expect("two singles taken"));
            parts[short].push(taken.pop().expect("two singles taken"));
        }
        remaining[short] = 0;
    }

    let [train, dev, test] = parts.map(|units| units.into_iter().flatten().collect());
    Ok(Split { train, dev, test })
}
