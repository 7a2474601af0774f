//! Pattern containment in the subset sense: `sigma` contains `tau` when some
//! subset of `[n]` restricts and standardizes to `tau`.
//!
//! On restricted growth words this is a subsequence whose *equality pattern*
//! matches the pattern's word, which is what [`Matcher`] searches for.

use num_bigint::BigUint;

use crate::generate::{partition_from_rgf0, sharded_fold};
use crate::numbers::BigCount;
use crate::partition::{RgfWord, SetPartition};

const UNMAPPED: u8 = u8::MAX;

/// Reusable containment search for one fixed pattern.
///
/// The search picks pattern positions left to right. A pattern block already
/// bound to a block of the text only ever needs the earliest remaining element
/// of that block; an unbound pattern block branches over the earliest
/// remaining element of each unused text block.
#[derive(Debug, Clone)]
pub struct Matcher {
    pattern: Vec<u8>,
    pattern_blocks: usize,
    map: Vec<u8>,
    used: Vec<bool>,
    picks: Vec<usize>,
}

impl Matcher {
    pub fn new(pattern: &SetPartition) -> Self {
        let pattern: Vec<u8> = pattern
            .to_rgf()
            .letters()
            .iter()
            .map(|&l| (l - 1) as u8)
            .collect();
        let pattern_blocks = pattern.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        Matcher {
            pattern,
            pattern_blocks,
            map: vec![UNMAPPED; pattern_blocks],
            used: Vec::new(),
            picks: Vec::new(),
        }
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern.len()
    }

    /// True iff the 0-based RGF `word` contains the pattern.
    pub fn matches(&mut self, word: &[u8]) -> bool {
        self.find(word).is_some()
    }

    /// Positions (0-based) of one occurrence in `word`, if any.
    pub fn find(&mut self, word: &[u8]) -> Option<&[usize]> {
        let k = self.pattern.len();
        if k > word.len() {
            return None;
        }
        if k == 0 {
            self.picks.clear();
            return Some(&self.picks);
        }
        let blocks = word.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        if blocks < self.pattern_blocks {
            return None;
        }
        self.map.iter_mut().for_each(|m| *m = UNMAPPED);
        self.used.clear();
        self.used.resize(blocks, false);
        self.picks.clear();
        if self.search(word, 0, 0) {
            Some(&self.picks)
        } else {
            None
        }
    }

    fn search(&mut self, word: &[u8], i: usize, start: usize) -> bool {
        let k = self.pattern.len();
        if i == k {
            return true;
        }
        let last = word.len() - (k - i);
        let pb = self.pattern[i] as usize;
        let bound = self.map[pb];
        if bound != UNMAPPED {
            let Some(p) = (start..=last).find(|&p| word[p] == bound) else {
                return false;
            };
            self.picks.push(p);
            if self.search(word, i + 1, p + 1) {
                return true;
            }
            self.picks.pop();
            return false;
        }
        let mut tried = 0u64;
        for p in start..=last {
            let wb = word[p] as usize;
            if self.used[wb] {
                continue;
            }
            if wb < 64 {
                if tried & (1 << wb) != 0 {
                    continue;
                }
                tried |= 1 << wb;
            }
            self.used[wb] = true;
            self.map[pb] = wb as u8;
            self.picks.push(p);
            if self.search(word, i + 1, p + 1) {
                return true;
            }
            self.picks.pop();
            self.map[pb] = UNMAPPED;
            self.used[wb] = false;
        }
        false
    }
}

fn rgf0(p: &SetPartition) -> Vec<u8> {
    p.to_rgf()
        .letters()
        .iter()
        .map(|&l| (l - 1) as u8)
        .collect()
}

/// Does `sigma` contain `tau` as a pattern?
pub fn contains(sigma: &SetPartition, tau: &SetPartition) -> bool {
    Matcher::new(tau).matches(&rgf0(sigma))
}

pub fn avoids(sigma: &SetPartition, tau: &SetPartition) -> bool {
    !contains(sigma, tau)
}

/// A witness subset `S` (1-based, ascending) restricting to `tau`.
pub fn find_occurrence(sigma: &SetPartition, tau: &SetPartition) -> Option<Vec<usize>> {
    Matcher::new(tau)
        .find(&rgf0(sigma))
        .map(|ps| ps.iter().map(|p| p + 1).collect())
}

/// Word containment: `a` has a subsequence order-isomorphic to `b`.
pub fn rgf_contains(a: &RgfWord, b: &RgfWord) -> bool {
    fn go(a: &[u32], b: &[u32], i: usize, start: usize, map: &mut Vec<Option<u32>>) -> bool {
        if i == b.len() {
            return true;
        }
        let v = b[i] as usize;
        for p in start..=a.len() - (b.len() - i) {
            let x = a[p];
            match map[v] {
                Some(y) => {
                    if y == x && go(a, b, i + 1, p + 1, map) {
                        return true;
                    }
                }
                None => {
                    let consistent = map.iter().enumerate().all(|(u, m)| match m {
                        None => true,
                        Some(y) => (u < v && *y < x) || (u > v && *y > x),
                    });
                    if consistent {
                        map[v] = Some(x);
                        if go(a, b, i + 1, p + 1, map) {
                            return true;
                        }
                        map[v] = None;
                    }
                }
            }
        }
        false
    }
    if b.len() > a.len() {
        return false;
    }
    let mut map = vec![None; b.max_letter() as usize + 1];
    go(a.letters(), b.letters(), 0, 0, &mut map)
}

/// Block-level test: is there some `c` outside `block` with at least `a - 1`
/// elements of the block below it and at least `k - a` above it? Candidates
/// for `c` are all positive integers.
pub fn block_contains_beta(block: &[usize], k: usize, a: usize) -> bool {
    block_contains_beta_in(block, k, a, usize::MAX)
}

/// As [`block_contains_beta`], with `c` restricted to `[1, n]`. This is the
/// criterion for a block of a partition of `[n]`.
pub fn block_contains_beta_in(block: &[usize], k: usize, a: usize, n: usize) -> bool {
    assert!(k >= 2 && (1..=k).contains(&a), "need 1 <= a <= k");
    let mut b = block.to_vec();
    b.sort_unstable();
    let s = b.len();
    // gap j: candidates for c with exactly j block elements below
    (0..=s).any(|j| {
        let lo = if j == 0 { 1 } else { b[j - 1] + 1 };
        let hi = if j == s { n } else { b[j] - 1 };
        let gap_nonempty = lo <= hi && lo <= n;
        gap_nonempty && j + 1 >= a && s - j >= k - a
    })
}

/// Does every block of `pi` avoid `beta_{k,a}`? Equivalent to `avoids(pi, beta(k, a))`.
pub fn avoids_beta(pi: &SetPartition, k: usize, a: usize) -> bool {
    pi.blocks()
        .iter()
        .all(|b| !block_contains_beta_in(b, k, a, pi.n()))
}

/// Exact `|Pi_n(tau)|` by exhaustive scan over `shards` worker threads.
pub fn count_avoiders(n: usize, tau: &SetPartition, shards: usize) -> BigCount {
    BigUint::from(count_avoiders_u64(n, tau, shards))
}

pub fn count_avoiders_u64(n: usize, tau: &SetPartition, shards: usize) -> u64 {
    count_avoiders_many(n, std::slice::from_ref(tau), shards)[0]
}

/// Avoider counts for several patterns in a single scan of `Pi_n`.
pub fn count_avoiders_many(n: usize, patterns: &[SetPartition], shards: usize) -> Vec<u64> {
    let matchers: Vec<Matcher> = patterns.iter().map(Matcher::new).collect();
    let (_, counts) = sharded_fold(
        n,
        shards,
        || (matchers.clone(), vec![0u64; matchers.len()]),
        |(ms, counts), w| {
            for (m, c) in ms.iter_mut().zip(counts.iter_mut()) {
                if !m.matches(w) {
                    *c += 1;
                }
            }
        },
        |(ms, mut a), (_, b)| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            (ms, a)
        },
    );
    counts
}

/// Every partition of `[n]` avoiding `tau`, in RGF order.
pub fn avoiders(n: usize, tau: &SetPartition) -> Vec<SetPartition> {
    let mut m = Matcher::new(tau);
    let mut out = Vec::new();
    let mut c = crate::generate::RgfCursor::new(n);
    while let Some(w) = c.current() {
        if !m.matches(w) {
            out.push(partition_from_rgf0(w));
        }
        c.advance();
    }
    out
}
