use super::{complement_in, rebuild, transport, MapError};
use crate::avoidance::{avoids_beta, block_contains_beta_in};
use crate::partition::SetPartition;

fn check_ka(k: usize, a: usize) -> Result<(), MapError> {
    if k < 3 || a < 2 || a > k - 1 {
        return Err(MapError::PreconditionViolated(format!(
            "need 2 <= a <= k-1, got k = {k}, a = {a}"
        )));
    }
    Ok(())
}

fn block_at(pi: &SetPartition, i: usize) -> Result<&[usize], MapError> {
    if i == 0 || i > pi.block_count() {
        return Err(MapError::PreconditionViolated(format!(
            "block index {i} out of range 1..={}",
            pi.block_count()
        )));
    }
    Ok(&pi.blocks()[i - 1])
}

/// Replaces block `i` of `pi` by `new_block` and re-embeds the remaining
/// blocks on the complement of `new_block`, preserving their relative order.
fn replace_block(pi: &SetPartition, i: usize, new_block: Vec<usize>) -> SetPartition {
    let n = pi.n();
    let old = &pi.blocks()[i - 1];
    let from = complement_in(n, old);
    let to = complement_in(n, &new_block);
    let others: Vec<Vec<usize>> = pi
        .blocks()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i - 1)
        .map(|(_, b)| b.clone())
        .collect();
    let mut blocks = transport(&others, &from, &to);
    blocks.push(new_block);
    rebuild(n, blocks)
}

/// Slides the gray segment of block `i` (1-based) down against its
/// `(a-1)`-st element.
pub fn slide(pi: &SetPartition, i: usize, k: usize, a: usize) -> Result<SetPartition, MapError> {
    check_ka(k, a)?;
    let n = pi.n();
    let b = block_at(pi, i)?;
    if block_contains_beta_in(b, k, a + 1, n) || !block_contains_beta_in(b, k, a, n) {
        return Err(MapError::PreconditionViolated(format!(
            "block {i} must avoid beta({k},{}) and contain beta({k},{a})",
            a + 1
        )));
    }
    let s = b.len();
    let len = s + 2 - k;
    let anchor = b[a - 2];
    let mut nb: Vec<usize> = b[..a - 1].to_vec();
    nb.extend(anchor + 1..=anchor + len);
    nb.extend_from_slice(&b[a - 1 + len..]);
    Ok(replace_block(pi, i, nb))
}

/// Undoes [`slide`]: moves the gray segment of block `i` back up so that it
/// ends just below the next element of the block, or at `n`.
pub fn unslide(pi: &SetPartition, i: usize, k: usize, a: usize) -> Result<SetPartition, MapError> {
    check_ka(k, a)?;
    let n = pi.n();
    let b = block_at(pi, i)?;
    if !block_contains_beta_in(b, k, a + 1, n) || block_contains_beta_in(b, k, a, n) {
        return Err(MapError::PreconditionViolated(format!(
            "block {i} must contain beta({k},{}) and avoid beta({k},{a})",
            a + 1
        )));
    }
    let s = b.len();
    let len = s + 2 - k;
    let top = if a - 1 + len < s {
        b[a - 1 + len]
    } else {
        n + 1
    };
    let mut nb: Vec<usize> = b[..a - 1].to_vec();
    nb.extend(top - len..top);
    nb.extend_from_slice(&b[a - 1 + len..]);
    Ok(replace_block(pi, i, nb))
}

/// Maps `Pi_n(beta_{k,a+1})` injectively into `Pi_n(beta_{k,a})` by sliding
/// blocks in standard order.
pub fn phi_a(pi: &SetPartition, k: usize, a: usize) -> Result<SetPartition, MapError> {
    check_ka(k, a)?;
    if !avoids_beta(pi, k, a + 1) {
        return Err(MapError::PreconditionViolated(format!(
            "partition contains beta({k},{})",
            a + 1
        )));
    }
    let n = pi.n();
    let mut cur = pi.clone();
    for i in 1..=cur.block_count() {
        if block_contains_beta_in(&cur.blocks()[i - 1], k, a, n) {
            cur = slide(&cur, i, k, a)?;
        }
    }
    debug_assert!(avoids_beta(&cur, k, a));
    Ok(cur)
}

/// Inverse of [`phi_a`] on its image.
pub fn phi_a_inverse(pi: &SetPartition, k: usize, a: usize) -> Result<SetPartition, MapError> {
    check_ka(k, a)?;
    if !avoids_beta(pi, k, a) {
        return Err(MapError::NotInImage(format!(
            "partition contains beta({k},{a})"
        )));
    }
    let n = pi.n();
    let mut cur = pi.clone();
    for i in (1..=cur.block_count()).rev() {
        if block_contains_beta_in(&cur.blocks()[i - 1], k, a + 1, n) {
            cur = unslide(&cur, i, k, a)?;
        }
    }
    match phi_a(&cur, k, a) {
        Ok(back) if &back == pi => Ok(cur),
        _ => Err(MapError::NotInImage(format!(
            "{pi} has no preimage under phi_{a} for k = {k}"
        ))),
    }
}
