use std::collections::BTreeSet;

use super::rebuild;
use crate::partition::SetPartition;

/// A singleton-free partition together with its number of caps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CappedCore {
    partition: SetPartition,
    caps: usize,
}

impl CappedCore {
    pub fn new(partition: SetPartition) -> Option<Self> {
        if partition.blocks().iter().any(|b| b.len() == 1) {
            return None;
        }
        let caps = caps(&partition);
        Some(CappedCore { partition, caps })
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn caps(&self) -> usize {
        self.caps
    }
}

/// Number of `k` such that every `i >= k` is the largest element of its block.
pub fn caps(pi: &SetPartition) -> usize {
    let mut is_max = vec![false; pi.n() + 1];
    for b in pi.blocks() {
        if let Some(&m) = b.last() {
            is_max[m] = true;
        }
    }
    (1..=pi.n()).rev().take_while(|&i| is_max[i]).count()
}

fn insert_top(sigma: &SetPartition) -> SetPartition {
    let n = sigma.n() + 1;
    let mut blocks = sigma.blocks().to_vec();
    let j = sigma.block_of(n - 1).expect("n-1 is present");
    blocks[j].push(n);
    rebuild(n, blocks)
}

fn augment(sigma: &CappedCore) -> Vec<SetPartition> {
    let m = sigma.partition.n();
    let n = m + 2;
    let first_cap = m + 1 - sigma.caps;
    (first_cap..=n - 1)
        .map(|k| {
            let mut blocks: Vec<Vec<usize>> = sigma
                .partition
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&x| if x >= k { x + 1 } else { x }).collect())
                .collect();
            blocks.push(vec![k, n]);
            rebuild(n, blocks)
        })
        .collect()
}

/// Builds the singleton-free `14/23`-avoiders of `[n]` from `{12}` by inserting
/// the top element into the block of its predecessor, or by appending a
/// doubleton `{k, n}` at a cap `k` of a smaller core.
pub fn generate_14_23_core(n: usize) -> Vec<CappedCore> {
    if n < 2 {
        return Vec::new();
    }
    let start = CappedCore::new(SetPartition::single_block(2)).expect("no singletons");
    let mut levels: Vec<BTreeSet<CappedCore>> = vec![BTreeSet::new(), BTreeSet::new()];
    levels.push(BTreeSet::from([start]));
    for m in 3..=n {
        let mut next = BTreeSet::new();
        for s in &levels[m - 1] {
            next.extend(CappedCore::new(insert_top(&s.partition)));
        }
        for s in &levels[m - 2] {
            next.extend(augment(s).into_iter().filter_map(CappedCore::new));
        }
        levels.push(next);
    }
    levels.swap_remove(n).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avoidance::avoiders;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn cores(n: usize) -> BTreeSet<SetPartition> {
        generate_14_23_core(n)
            .into_iter()
            .map(|c| c.partition().clone())
            .collect()
    }

    #[test]
    fn small_levels() {
        assert_eq!(cores(2), BTreeSet::from([p("12")]));
        assert_eq!(cores(3), BTreeSet::from([p("123")]));
        assert_eq!(
            cores(4),
            BTreeSet::from([p("1234"), p("13/24"), p("12/34")])
        );
        assert!(cores(1).is_empty());
    }

    #[test]
    fn cap_counts() {
        assert_eq!(caps(&p("1234")), 1);
        assert_eq!(caps(&p("13/24")), 2);
        assert_eq!(caps(&p("12/34")), 1);
        assert_eq!(caps(&p("1/2/3")), 3);
    }

    #[test]
    fn matches_filtered_avoiders() {
        let tau = p("14/23");
        for n in 2..=8 {
            let want: BTreeSet<SetPartition> = avoiders(n, &tau)
                .into_iter()
                .filter(|q| q.blocks().iter().all(|b| b.len() > 1))
                .collect();
            assert_eq!(cores(n), want, "n = {n}");
        }
    }
}
