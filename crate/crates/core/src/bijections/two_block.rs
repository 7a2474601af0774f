use super::{rebuild, MapError};
use crate::avoidance::contains;
use crate::partition::SetPartition;

/// A two-block pattern `A/B` of `[k]` with `1` in `A`, described by its
/// alternating run lengths `a_1, b_1, ..., a_j, b_j, a_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBlockPattern {
    pattern: SetPartition,
    runs: Vec<(usize, usize)>,
    a_tail: usize,
}

impl TwoBlockPattern {
    pub fn new(pattern: &SetPartition) -> Result<Self, MapError> {
        if pattern.block_count() != 2 {
            return Err(MapError::PreconditionViolated(format!(
                "{pattern} does not have exactly two blocks"
            )));
        }
        let k = pattern.n();
        let in_a: Vec<bool> = (1..=k).map(|x| pattern.block_of(x) == Some(0)).collect();
        let mut lens: Vec<usize> = Vec::new();
        let mut prev = None;
        for &f in &in_a {
            if prev == Some(f) {
                *lens.last_mut().expect("run started") += 1;
            } else {
                lens.push(1);
                prev = Some(f);
            }
        }
        let a_tail = if lens.len() % 2 == 1 {
            lens.pop().expect("odd run count")
        } else {
            0
        };
        let runs = lens.chunks(2).map(|c| (c[0], c[1])).collect();
        Ok(TwoBlockPattern {
            pattern: pattern.clone(),
            runs,
            a_tail,
        })
    }

    pub fn pattern(&self) -> &SetPartition {
        &self.pattern
    }

    pub fn k(&self) -> usize {
        self.pattern.n()
    }

    pub fn a_len(&self) -> usize {
        self.pattern.blocks()[0].len()
    }

    pub fn b_len(&self) -> usize {
        self.pattern.blocks()[1].len()
    }

    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    pub fn a_tail(&self) -> usize {
        self.a_tail
    }

    /// Splits a sorted block of size at least `k` into `A*` followed by `B_1..B_q`.
    fn split(&self, c: &[usize]) -> Vec<Vec<usize>> {
        let m = self.b_len();
        let extra = c.len() - self.a_len();
        let (q, r) = (extra / m, extra % m);
        let mut a_star = Vec::new();
        let mut bs = vec![Vec::new(); q];
        let mut pos = 0;
        for &(ai, bi) in &self.runs {
            a_star.extend_from_slice(&c[pos..pos + ai]);
            pos += ai;
            for bu in bs.iter_mut() {
                bu.extend_from_slice(&c[pos..pos + bi]);
                pos += bi;
            }
        }
        a_star.extend_from_slice(&c[pos..pos + self.a_tail]);
        pos += self.a_tail;
        a_star.extend_from_slice(&c[pos..pos + r]);
        pos += r;
        debug_assert_eq!(pos, c.len());
        let mut out = vec![a_star];
        out.extend(bs);
        out
    }
}

/// Injects `Pi_n - Pi_n(beta_k)` into `(Pi_n - Pi_n(sigma)) ∩ Pi_n(beta_k)` for a
/// two-block pattern `sigma` of `[k]`, where `beta_k` is the one-block pattern.
pub fn two_block_varphi(
    pi: &SetPartition,
    sigma: &TwoBlockPattern,
) -> Result<SetPartition, MapError> {
    let k = sigma.k();
    if pi.blocks().iter().all(|b| b.len() < k) {
        return Err(MapError::PreconditionViolated(format!(
            "{pi} has no block of size at least {k}"
        )));
    }
    if contains(pi, sigma.pattern()) {
        return Ok(pi.clone());
    }
    let mut blocks = Vec::new();
    for b in pi.blocks() {
        if b.len() >= k {
            blocks.extend(sigma.split(b));
        } else {
            blocks.push(b.clone());
        }
    }
    Ok(rebuild(pi.n(), blocks))
}

/// Recovers the preimage by merging every pair of blocks `D, E` for which
/// `D/E` contains `sigma`.
pub fn two_block_varphi_inverse(
    pi: &SetPartition,
    sigma: &TwoBlockPattern,
) -> Result<SetPartition, MapError> {
    let k = sigma.k();
    if pi.blocks().iter().any(|b| b.len() >= k) {
        return if contains(pi, sigma.pattern()) {
            Ok(pi.clone())
        } else {
            Err(MapError::NotInImage(format!(
                "{pi} avoids the pattern but has a block of size at least {k}"
            )))
        };
    }
    let m = pi.block_count();
    let mut parent: Vec<usize> = (0..m).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for d in 0..m {
        for e in d + 1..m {
            let pair = SetPartition::standardize([pi.blocks()[d].clone(), pi.blocks()[e].clone()])
                .expect("two disjoint blocks");
            if contains(&pair, sigma.pattern()) {
                let (rd, re) = (root(&mut parent, d), root(&mut parent, e));
                parent[re.max(rd)] = rd.min(re);
            }
        }
    }
    let mut merged: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, b) in pi.blocks().iter().enumerate() {
        let r = root(&mut parent, i);
        merged[r].extend_from_slice(b);
    }
    let pre = rebuild(
        pi.n(),
        merged.into_iter().filter(|b| !b.is_empty()).collect(),
    );
    match two_block_varphi(&pre, sigma) {
        Ok(img) if &img == pi => Ok(pre),
        _ => Err(MapError::NotInImage(format!("{pi} has no preimage"))),
    }
}

/// The partition `A / B ∪ {k+1} / {k+2} / ... / {n}`. It contains `sigma` and
/// has no block of size `k`, yet is never produced by [`two_block_varphi`].
/// Requires `|B| + 1 < k`.
pub fn gamma_witness(sigma: &TwoBlockPattern, n: usize) -> Result<SetPartition, MapError> {
    let k = sigma.k();
    if n <= k || sigma.b_len() + 1 >= k {
        return Err(MapError::PreconditionViolated(format!(
            "witness needs n > k and |B| + 1 < k (n = {n}, k = {k}, |B| = {})",
            sigma.b_len()
        )));
    }
    let mut blocks = sigma.pattern().blocks().to_vec();
    blocks[1].push(k + 1);
    blocks.extend((k + 2..=n).map(|x| vec![x]));
    Ok(rebuild(n, blocks))
}
