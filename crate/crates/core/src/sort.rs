//! Stable counting sorts keyed on small integer ranges.

/// Key ranges up to this size are sorted in one counting pass; larger ones
/// in two passes over the low and high halves of the key bits, which keeps
/// the number of scatter targets small enough to stay in cache.
const SINGLE_PASS_KEYS: usize = 1 << 12;

/// Returns `items` reordered by `key` (which must lie in `0..=max_key`),
/// preserving the input order among equal keys. `O(items + max_key)`.
pub fn stable_bucket_order<T: Copy>(items: &[T], max_key: usize, key: impl Fn(&T) -> usize) -> Vec<T> {
    if max_key < SINGLE_PASS_KEYS {
        return counting_pass(items, max_key, key);
    }
    let bits = usize::BITS - max_key.leading_zeros();
    let low_bits = bits / 2;
    let mask = (1usize << low_bits) - 1;
    let by_low = counting_pass(items, mask, |x| key(x) & mask);
    counting_pass(&by_low, max_key >> low_bits, |x| key(x) >> low_bits)
}

fn counting_pass<T: Copy>(items: &[T], max_key: usize, key: impl Fn(&T) -> usize) -> Vec<T> {
    let Some(&first) = items.first() else {
        return Vec::new();
    };
    let mut starts = vec![0usize; max_key + 2];
    for item in items {
        starts[key(item) + 1] += 1;
    }
    for k in 1..starts.len() {
        starts[k] += starts[k - 1];
    }
    let mut out = vec![first; items.len()];
    for item in items {
        let slot = &mut starts[key(item)];
        out[*slot] = *item;
        *slot += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(keys: &[usize], max_key: usize) -> Result<(), TestCaseError> {
        let items: Vec<(usize, usize)> = keys.iter().copied().enumerate().map(|(i, k)| (k, i)).collect();
        let ours = stable_bucket_order(&items, max_key, |&(k, _)| k);
        let mut reference = items.clone();
        reference.sort_by_key(|&(k, _)| k);
        prop_assert_eq!(ours, reference);
        Ok(())
    }

    proptest! {
        #[test]
        fn agrees_with_stable_comparison_sort(keys in prop::collection::vec(0usize..20, 0..60)) {
            check(&keys, 19)?;
        }

        #[test]
        fn two_pass_agrees_with_stable_comparison_sort(
            max_key in SINGLE_PASS_KEYS..200_000,
            raw in prop::collection::vec(any::<usize>(), 0..300),
        ) {
            // Mix in small keys so ties are frequent.
            let keys: Vec<usize> = raw.iter().map(|r| if r % 3 == 0 { r % 7 } else { r % (max_key + 1) }).collect();
            check(&keys, max_key)?;
        }
    }

    #[test]
    fn extreme_keys() {
        check(&[SINGLE_PASS_KEYS, 0, SINGLE_PASS_KEYS, 1], SINGLE_PASS_KEYS).unwrap();
        let max_key = 1_000_001;
        check(&[max_key, 0, max_key, 1000, 1001, 999], max_key).unwrap();
    }
}
