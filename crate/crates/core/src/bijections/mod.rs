//! Executable forms of the injections and bijections between avoidance classes.
//!
//! Each map checks its own preconditions and returns [`MapError`] rather than
//! producing a partition outside its stated codomain.

mod core_14_23;
mod phi_134_2;
mod psi;
mod rword;
mod slide;
mod two_block;
mod words;

pub use core_14_23::{caps, generate_14_23_core, CappedCore};
pub use phi_134_2::{phi_134_2, phi_134_2_inverse};
pub use psi::{lemma_induction_psi, psi_sigma_beta, InjectionFamily, RankInjection};
pub use rword::{
    delta_insertion_decode, delta_insertion_encode, delta_pattern, iter_r_words, iter_rgf_below,
    r_to_rgf, rgf_to_r, RWord,
};
pub use slide::{phi_a, phi_a_inverse, slide, unslide};
pub use two_block::{gamma_witness, two_block_varphi, two_block_varphi_inverse, TwoBlockPattern};
pub use words::{
    decode_14_2_3, decode_1_24_3, encode_14_2_3, encode_1_24_3, iter_w_words, AbcWord, Letter,
};

use thiserror::Error;

use crate::partition::SetPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("word is not in W_n: {0}")]
    NotInW(String),
    #[error("partition is not in the image of the map: {0}")]
    NotInImage(String),
    #[error("letter {letter} at position {position} exceeds the bound {bound}")]
    LetterOutOfRange {
        position: usize,
        letter: u32,
        bound: u32,
    },
    #[error("invalid R-word: {0}")]
    InvalidRWord(String),
    #[error("partition has no non-singleton block")]
    KZero,
}

/// Sorted complement of `block` in `[n]`.
pub(crate) fn complement_in(n: usize, block: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n + 1];
    for &x in block {
        inside[x] = true;
    }
    (1..=n).filter(|&x| !inside[x]).collect()
}

/// Moves blocks living on the sorted set `from` onto the sorted set `to` by rank.
pub(crate) fn transport(blocks: &[Vec<usize>], from: &[usize], to: &[usize]) -> Vec<Vec<usize>> {
    debug_assert_eq!(from.len(), to.len());
    blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|x| to[from.binary_search(x).expect("element of the source set")])
                .collect()
        })
        .collect()
}

/// Places a partition of `[m]` onto the sorted `m`-element set `onto`.
pub(crate) fn embed(p: &SetPartition, onto: &[usize]) -> Vec<Vec<usize>> {
    debug_assert_eq!(p.n(), onto.len());
    p.blocks()
        .iter()
        .map(|b| b.iter().map(|&x| onto[x - 1]).collect())
        .collect()
}

pub(crate) fn rebuild(n: usize, blocks: Vec<Vec<usize>>) -> SetPartition {
    SetPartition::from_blocks(blocks, n).expect("construction yields a partition of [n]")
}
