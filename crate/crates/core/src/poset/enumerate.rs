use super::{find_isomorphism, Poset};
use crate::error::{Error, Result};
use std::collections::HashMap;

pub const MAX_ENUMERATION_SIZE: usize = 6;

/// One representative per isomorphism class of posets on `m` elements.
///
/// Posets on `m` elements are obtained from the representatives on `m - 1`
/// elements by adding a new maximal element whose strict down-set is an
/// order ideal; duplicates are removed by isomorphism search within buckets
/// of equal invariants. Every representative is naturally labeled
/// (`x < y` implies `x < y` as indices).
pub fn enumerate_posets(m: usize) -> Result<Vec<Poset>> {
    if !(1..=MAX_ENUMERATION_SIZE).contains(&m) {
        return Err(Error::OutOfRange(format!(
            "poset enumeration supports sizes 1..={MAX_ENUMERATION_SIZE}, got {m}"
        )));
    }
    let mut level = vec![Poset::antichain(1)];
    for size in 2..=m {
        level = extend_level(&level, size);
    }
    Ok(level)
}

fn extend_level(smaller: &[Poset], size: usize) -> Vec<Poset> {
    let mut reps: Vec<Poset> = Vec::new();
    let mut buckets: HashMap<Vec<(usize, usize, usize)>, Vec<usize>> = HashMap::new();
    for p in smaller {
        for ideal in order_ideals(p) {
            let candidate = add_top(p, ideal, size);
            let key = bucket_key(&candidate);
            let bucket = buckets.entry(key).or_default();
            let duplicate =
                bucket.iter().any(|&i| find_isomorphism(&reps[i], &candidate).is_some());
            if !duplicate {
                bucket.push(reps.len());
                reps.push(candidate);
            }
        }
    }
    reps
}

/// Down-closed subsets of `p` as bitmasks, in increasing mask order.
fn order_ideals(p: &Poset) -> Vec<u32> {
    let m = p.size();
    (0u32..(1 << m))
        .filter(|&mask| {
            (0..m).all(|y| {
                mask & (1 << y) == 0 || (0..m).all(|x| !p.leq(x, y) || mask & (1 << x) != 0)
            })
        })
        .collect()
}

fn add_top(p: &Poset, ideal: u32, size: usize) -> Poset {
    let new = size - 1;
    let mut covers: Vec<(usize, usize)> = p.covers().to_vec();
    covers.extend((0..p.size()).filter(|&x| ideal & (1 << x) != 0).map(|x| (x, new)));
    Poset::from_covers(Poset::default_names(size), &covers).expect("extension stays acyclic")
}

fn bucket_key(p: &Poset) -> Vec<(usize, usize, usize)> {
    let mut key: Vec<_> =
        (0..p.size()).map(|x| (p.up_degree(x), p.down_degree(x), p.height(x))).collect();
    key.sort_unstable();
    key
}
