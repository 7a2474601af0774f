use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{complement_in, embed, rebuild, MapError};
use crate::avoidance::{avoiders, contains};
use crate::partition::SetPartition;

/// Maps `Pi_n(sigma_k)` (fewer than `k` blocks) injectively into
/// `Pi_n(beta_k)` (all blocks smaller than `k`).
pub fn psi_sigma_beta(pi: &SetPartition, k: usize) -> Result<SetPartition, MapError> {
    if k < 2 {
        return Err(MapError::PreconditionViolated(format!(
            "need k >= 2, got {k}"
        )));
    }
    if pi.block_count() >= k {
        return Err(MapError::PreconditionViolated(format!(
            "{pi} has {} blocks, needs fewer than {k}",
            pi.block_count()
        )));
    }
    let mut out = Vec::new();
    psi_rec(pi.blocks(), k, &mut out);
    Ok(rebuild(pi.n(), out))
}

fn psi_rec(blocks: &[Vec<usize>], k: usize, out: &mut Vec<Vec<usize>>) {
    let Some((first, rest)) = blocks.split_first() else {
        return;
    };
    if k == 2 {
        out.extend(first.iter().map(|&x| vec![x]));
        return;
    }
    let r = first.len() % (k - 1);
    if r > 0 {
        out.push(first[..r].to_vec());
    }
    out.extend(first[r..].chunks(k - 1).map(<[usize]>::to_vec));
    psi_rec(rest, k - 1, out);
}

/// A family of injections `Pi_m(alpha) -> Pi_m(sigma_{k-1})`, one per size `m`.
pub trait InjectionFamily {
    fn inject(&self, pi: &SetPartition) -> Result<SetPartition, MapError>;
}

type Tables = (HashMap<SetPartition, usize>, Vec<SetPartition>);

/// Sends the `i`-th avoider of `source` (RGF order) to the `i`-th avoider of `target`.
pub struct RankInjection {
    source: SetPartition,
    target: SetPartition,
    cache: Mutex<HashMap<usize, Arc<Tables>>>,
}

impl RankInjection {
    pub fn new(source: SetPartition, target: SetPartition) -> Self {
        RankInjection {
            source,
            target,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn tables(&self, m: usize) -> Arc<Tables> {
        let mut cache = self.cache.lock().expect("cache lock");
        cache
            .entry(m)
            .or_insert_with(|| {
                let index = avoiders(m, &self.source)
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| (p, i))
                    .collect();
                Arc::new((index, avoiders(m, &self.target)))
            })
            .clone()
    }
}

impl InjectionFamily for RankInjection {
    fn inject(&self, pi: &SetPartition) -> Result<SetPartition, MapError> {
        let t = self.tables(pi.n());
        let &i = t.0.get(pi).ok_or_else(|| {
            MapError::PreconditionViolated(format!("{pi} contains {}", self.source))
        })?;
        t.1.get(i).cloned().ok_or_else(|| {
            MapError::PreconditionViolated(format!(
                "more avoiders of {} than of {} at size {}",
                self.source,
                self.target,
                pi.n()
            ))
        })
    }
}

/// Lifts injections `Pi_m(alpha) -> Pi_m(sigma_{k-1})` to an injection
/// `Pi_n(1/alpha') -> Pi_n(sigma_k)`, where `alpha` is a pattern of `[k-1]` and
/// `1/alpha'` is `alpha` shifted up by one with a new singleton `{1}`.
pub fn lemma_induction_psi<F: InjectionFamily + ?Sized>(
    pi: &SetPartition,
    alpha: &SetPartition,
    family: &F,
) -> Result<SetPartition, MapError> {
    let k = alpha.n() + 1;
    let mut lifted = vec![vec![1]];
    lifted.extend(
        alpha
            .blocks()
            .iter()
            .map(|b| b.iter().map(|x| x + 1).collect()),
    );
    let one_alpha = SetPartition::from_blocks(lifted, k).expect("shifted pattern");
    if contains(pi, &one_alpha) {
        return Err(MapError::PreconditionViolated(format!(
            "{pi} contains {one_alpha}"
        )));
    }
    let n = pi.n();
    let Some((first, rest)) = pi.blocks().split_first() else {
        return Ok(pi.clone());
    };
    let support = complement_in(n, first);
    let tail = SetPartition::standardize(rest.iter().cloned()).expect("blocks of a partition");
    let new_tail = if support.len() > k - 1 {
        family.inject(&tail)?
    } else if support.len() == k - 1 && tail.block_count() == k - 1 {
        alpha.clone()
    } else {
        return Ok(pi.clone());
    };
    let mut blocks = vec![first.clone()];
    blocks.extend(embed(&new_tail, &support));
    Ok(rebuild(n, blocks))
}
