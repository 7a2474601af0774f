//! Exhaustive generators: partitions by RGF in lexicographic order (with
//! prefix sharding for parallel scans), matchings with fixed points, and weak
//! compositions.

use std::thread;

use crate::partition::{RgfWord, SetPartition};

/// Walks every restricted growth word of length `n` that starts with a fixed
/// prefix, in lexicographic order. Letters are stored 0-based.
#[derive(Debug, Clone)]
pub struct RgfCursor {
    word: Vec<u8>,
    // prefix_max[i] = max(word[0..=i])
    prefix_max: Vec<u8>,
    fixed: usize,
    done: bool,
}

impl RgfCursor {
    pub fn new(n: usize) -> Self {
        Self::with_prefix(n, &[])
    }

    /// `prefix` must itself be a 0-based RGF prefix no longer than `n`.
    pub fn with_prefix(n: usize, prefix: &[u8]) -> Self {
        assert!(prefix.len() <= n, "prefix longer than word");
        assert!(n < 256, "letters are stored as u8");
        let mut word = vec![0u8; n];
        word[..prefix.len()].copy_from_slice(prefix);
        let mut prefix_max = vec![0u8; n];
        let mut m = 0u8;
        for i in 0..n {
            if i > 0 {
                assert!(word[i] <= m + 1, "prefix is not a restricted growth word");
            } else {
                assert!(word[0] == 0, "prefix must start with the first letter");
            }
            m = m.max(word[i]);
            prefix_max[i] = m;
        }
        RgfCursor {
            word,
            prefix_max,
            fixed: prefix.len().max(1),
            done: false,
        }
    }

    /// The current word, or `None` once exhausted.
    pub fn current(&self) -> Option<&[u8]> {
        (!self.done).then_some(self.word.as_slice())
    }

    /// Steps to the lexicographic successor within the shard.
    pub fn advance(&mut self) {
        let n = self.word.len();
        let mut i = n;
        while i > self.fixed {
            i -= 1;
            if self.word[i] <= self.prefix_max[i - 1] {
                self.word[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.word[i]);
                let m = self.prefix_max[i];
                for j in i + 1..n {
                    self.word[j] = 0;
                    self.prefix_max[j] = m;
                }
                return;
            }
        }
        self.done = true;
    }
}

/// Every partition of `[n]` exactly once, in lexicographic RGF order.
pub fn iter_partitions(n: usize) -> PartitionIter {
    PartitionIter {
        cursor: RgfCursor::new(n),
    }
}

pub struct PartitionIter {
    cursor: RgfCursor,
}

impl Iterator for PartitionIter {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        let w = self.cursor.current()?;
        let p = partition_from_rgf0(w);
        self.cursor.advance();
        Some(p)
    }
}

/// Converts a 0-based RGF slice into a partition.
pub fn partition_from_rgf0(word: &[u8]) -> SetPartition {
    let letters = word.iter().map(|&l| l as u32 + 1).collect();
    SetPartition::from_rgf(&RgfWord::from_letters_unchecked(letters))
}

/// All 0-based RGF prefixes of length `min(depth, n)`, in lexicographic order.
pub fn rgf_prefixes(n: usize, depth: usize) -> Vec<Vec<u8>> {
    let len = depth.min(n);
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut c = RgfCursor::new(len);
    while let Some(w) = c.current() {
        out.push(w.to_vec());
        c.advance();
    }
    out
}

/// Shard prefixes for `workers` threads: two leading letters by default,
/// deepened until there are at least four prefixes per worker.
pub fn shard_prefixes(n: usize, workers: usize) -> Vec<Vec<u8>> {
    let mut depth = 2;
    let mut prefixes = rgf_prefixes(n, depth);
    while prefixes.len() < 4 * workers.max(1) && depth < n {
        depth += 1;
        prefixes = rgf_prefixes(n, depth);
    }
    prefixes
}

/// Folds every RGF word of length `n` across `shards` worker threads.
///
/// Each prefix shard is folded independently; shard results are merged in
/// prefix order so the outcome does not depend on scheduling.
pub fn sharded_fold<T, I, V, M>(n: usize, shards: usize, init: I, visit: V, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &[u8]) + Sync,
    M: Fn(T, T) -> T,
{
    let workers = shards.max(1);
    let prefixes = shard_prefixes(n, workers);
    let fold_prefix = |prefix: &[u8]| {
        let mut acc = init();
        let mut c = RgfCursor::with_prefix(n, prefix);
        while let Some(w) = c.current() {
            visit(&mut acc, w);
            c.advance();
        }
        acc
    };
    let mut per_prefix: Vec<Option<T>> = (0..prefixes.len()).map(|_| None).collect();
    if workers == 1 || prefixes.len() == 1 {
        for (slot, p) in per_prefix.iter_mut().zip(&prefixes) {
            *slot = Some(fold_prefix(p));
        }
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let prefixes = &prefixes;
                    let fold_prefix = &fold_prefix;
                    scope.spawn(move || {
                        prefixes
                            .iter()
                            .enumerate()
                            .skip(w)
                            .step_by(workers)
                            .map(|(i, p)| (i, fold_prefix(p)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, v) in h.join().expect("shard worker panicked") {
                    per_prefix[i] = Some(v);
                }
            }
        });
    }
    per_prefix
        .into_iter()
        .map(|v| v.expect("every shard folded"))
        .reduce(merge)
        .unwrap_or_else(init)
}

/// A partition whose blocks all have size one or two.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partition: SetPartition,
    doubletons: usize,
    singletons: usize,
}

impl Matching {
    pub fn new(partition: SetPartition) -> Option<Self> {
        if partition.blocks().iter().any(|b| b.len() > 2) {
            return None;
        }
        let doubletons = partition.blocks().iter().filter(|b| b.len() == 2).count();
        let singletons = partition.block_count() - doubletons;
        Some(Matching {
            partition,
            doubletons,
            singletons,
        })
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn doubletons(&self) -> usize {
        self.doubletons
    }

    pub fn singletons(&self) -> usize {
        self.singletons
    }
}

/// All of `M_{k,f}`: partitions of `[2k+f]` into `k` doubletons and `f` singletons.
pub fn iter_matchings(k: usize, f: usize) -> impl Iterator<Item = Matching> {
    let n = 2 * k + f;
    let mut out = Vec::new();
    let mut used = vec![false; n + 1];
    let mut blocks = Vec::new();
    matchings_rec(n, k, f, &mut used, &mut blocks, &mut out);
    out.into_iter()
}

fn matchings_rec(
    n: usize,
    k: usize,
    f: usize,
    used: &mut [bool],
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<Matching>,
) {
    let Some(x) = (1..=n).find(|&x| !used[x]) else {
        let p = SetPartition::from_blocks(blocks.clone(), n).expect("matching covers [n]");
        out.push(Matching::new(p).expect("blocks of size <= 2"));
        return;
    };
    used[x] = true;
    if f > 0 {
        blocks.push(vec![x]);
        matchings_rec(n, k, f - 1, used, blocks, out);
        blocks.pop();
    }
    if k > 0 {
        for y in x + 1..=n {
            if !used[y] {
                used[y] = true;
                blocks.push(vec![x, y]);
                matchings_rec(n, k - 1, f, used, blocks, out);
                blocks.pop();
                used[y] = false;
            }
        }
    }
    used[x] = false;
}

/// A weak composition: `parts.len()` nonnegative parts summing to `total`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// Weak compositions of `total` into `k >= 1` parts, lexicographically.
pub fn iter_compositions(total: usize, k: usize) -> CompositionIter {
    assert!(k >= 1, "a composition needs at least one part");
    let mut first = vec![0; k];
    first[k - 1] = total;
    CompositionIter { next: Some(first) }
}

pub struct CompositionIter {
    next: Option<Vec<usize>>,
}

impl Iterator for CompositionIter {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.next.take()?;
        let k = cur.len();
        // rightmost i whose tail (parts after i) is nonzero: bump it, dump the rest of the tail last
        let mut tail = 0;
        for i in (0..k.saturating_sub(1)).rev() {
            tail += cur[i + 1];
            if tail > 0 {
                let mut succ = cur.clone();
                succ[i] += 1;
                for p in &mut succ[i + 1..] {
                    *p = 0;
                }
                succ[k - 1] = tail - 1;
                self.next = Some(succ);
                break;
            }
        }
        Some(Composition { parts: cur })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{bell, big, binomial, matchings_with_fixed_points};
    use std::collections::BTreeSet;

    #[test]
    fn partition_stream_lengths() {
        assert_eq!(iter_partitions(1).count(), 1);
        assert_eq!(iter_partitions(4).count(), 15);
        assert_eq!(iter_partitions(5).count(), 52);
        for n in 1..=8 {
            assert_eq!(big(iter_partitions(n).count() as u64), bell(n));
        }
    }

    #[test]
    fn partition_stream_is_lexicographic_and_distinct() {
        let words: Vec<RgfWord> = iter_partitions(6).map(|p| p.to_rgf()).collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn shards_cover_disjointly() {
        for n in 1..=7 {
            for workers in [1, 2, 3, 8] {
                let mut seen = BTreeSet::new();
                for p in shard_prefixes(n, workers) {
                    let mut c = RgfCursor::with_prefix(n, &p);
                    while let Some(w) = c.current() {
                        assert!(seen.insert(w.to_vec()), "duplicate across shards");
                        c.advance();
                    }
                }
                assert_eq!(big(seen.len() as u64), bell(n));
            }
        }
    }

    #[test]
    fn sharded_fold_is_shard_independent() {
        for shards in [1, 2, 8] {
            let total = sharded_fold(7, shards, || 0u64, |a, _| *a += 1, |a, b| a + b);
            assert_eq!(big(total), bell(7));
        }
    }

    #[test]
    fn matchings_counts() {
        let m: Vec<Matching> = iter_matchings(1, 1).collect();
        assert_eq!(m.len(), 3);
        for (k, f) in [(0, 0), (0, 3), (1, 1), (2, 0), (2, 2), (3, 2)] {
            let all: Vec<Matching> = iter_matchings(k, f).collect();
            assert_eq!(big(all.len() as u64), matchings_with_fixed_points(k, f));
            assert!(all
                .iter()
                .all(|m| m.doubletons() == k && m.singletons() == f));
        }
        assert_eq!(iter_matchings(3, 2).count(), 420);
    }

    #[test]
    fn compositions() {
        let z: Vec<Vec<usize>> = iter_compositions(0, 3)
            .map(|c| c.parts().to_vec())
            .collect();
        assert_eq!(z, vec![vec![0, 0, 0]]);
        let one: Vec<Vec<usize>> = iter_compositions(2, 1)
            .map(|c| c.parts().to_vec())
            .collect();
        assert_eq!(one, vec![vec![2]]);
        assert_eq!(iter_compositions(4, 3).count(), 15);
        for total in 0..=6 {
            for k in 1..=4 {
                let all: Vec<Composition> = iter_compositions(total, k).collect();
                assert_eq!(big(all.len() as u64), binomial(total + k - 1, k - 1));
                assert!(all
                    .iter()
                    .all(|c| c.total() == total && c.parts().len() == k));
                let distinct: BTreeSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
            }
        }
    }
}
