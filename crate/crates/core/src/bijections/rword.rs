use std::fmt;

use super::{rebuild, MapError};
use crate::partition::{write_word, RgfWord, SetPartition};

/// A word over `{1, ..., k-1}` that starts with `1` and in which each letter
/// is at most one more than the number of `1`s strictly before it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RWord {
    letters: Vec<u32>,
    k: u32,
}

impl RWord {
    pub fn new(letters: Vec<u32>, k: u32) -> Result<Self, MapError> {
        let mut ones = 0;
        for (i, &l) in letters.iter().enumerate() {
            if l == 0 || l + 1 > k {
                return Err(MapError::InvalidRWord(format!(
                    "letter {l} at position {} is outside 1..={}",
                    i + 1,
                    k.saturating_sub(1)
                )));
            }
            if l > ones + 1 {
                return Err(MapError::InvalidRWord(format!(
                    "letter {l} at position {} follows only {ones} ones",
                    i + 1
                )));
            }
            if l == 1 {
                ones += 1;
            }
        }
        Ok(RWord { letters, k })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for RWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.letters)
    }
}

fn check_rgf_bound(w: &RgfWord, k: u32) -> Result<(), MapError> {
    match w.letters().iter().position(|&l| l + 1 > k) {
        Some(i) => Err(MapError::LetterOutOfRange {
            position: i + 1,
            letter: w.letters()[i],
            bound: k.saturating_sub(1),
        }),
        None => Ok(()),
    }
}

/// Bijection from RGFs with letters below `k` to R-words, by the
/// first-occurrence decomposition `1 u_1 2 u_2 ... m u_m`.
pub fn rgf_to_r(w: &RgfWord, k: u32) -> Result<RWord, MapError> {
    check_rgf_bound(w, k)?;
    let m = w.max_letter();
    let mut seen = 0;
    let letters = w
        .letters()
        .iter()
        .map(|&l| {
            if l > seen {
                seen = l;
                1
            } else if m + 1 == k && seen == m {
                l
            } else {
                l + 1
            }
        })
        .collect();
    RWord::new(letters, k)
}

pub fn r_to_rgf(v: &RWord) -> RgfWord {
    let k = v.k();
    let total_ones = v.letters().iter().filter(|&&l| l == 1).count() as u32;
    let frozen_after = if total_ones + 1 >= k { k - 1 } else { u32::MAX };
    let mut ones = 0;
    let letters = v
        .letters()
        .iter()
        .map(|&l| {
            if ones >= frozen_after {
                l
            } else if l == 1 {
                ones += 1;
                ones
            } else {
                l - 1
            }
        })
        .collect();
    RgfWord::from_letters_unchecked(letters)
}

/// All R-words of length `n` over `{1, ..., k-1}`, lexicographically.
pub fn iter_r_words(n: usize, k: u32) -> impl Iterator<Item = RWord> {
    let mut out = Vec::new();
    if k >= 2 {
        let mut cur = Vec::with_capacity(n);
        r_rec(n, k, 0, &mut cur, &mut out);
    }
    out.into_iter()
}

fn r_rec(n: usize, k: u32, ones: u32, cur: &mut Vec<u32>, out: &mut Vec<RWord>) {
    if cur.len() == n {
        out.push(RWord {
            letters: cur.clone(),
            k,
        });
        return;
    }
    let top = if cur.is_empty() {
        1
    } else {
        (ones + 1).min(k - 1)
    };
    for l in 1..=top {
        cur.push(l);
        r_rec(n, k, ones + u32::from(l == 1), cur, out);
        cur.pop();
    }
}

/// All RGFs of length `n` with every letter below `k`, lexicographically.
pub fn iter_rgf_below(n: usize, k: u32) -> impl Iterator<Item = RgfWord> {
    crate::generate::iter_partitions(n)
        .map(|p| p.to_rgf())
        .filter(move |w| w.max_letter() < k)
}

/// `1k/2/3/.../(k-1)`.
pub fn delta_pattern(k: usize) -> SetPartition {
    assert!(k >= 2, "delta pattern needs k >= 2");
    let mut blocks = vec![vec![1, k]];
    blocks.extend((2..k).map(|x| vec![x]));
    rebuild(k, blocks)
}

/// Records how `pi` is built by inserting `1, 2, ..., n` in turn: `1` opens a
/// new block and `j >= 2` joins the block `j - 2` places left of the rightmost.
/// Every insertion must land in a new block or one of the `k-2` rightmost
/// blocks, which holds whenever `pi` avoids [`delta_pattern`]`(k)`.
pub fn delta_insertion_encode(pi: &SetPartition, k: usize) -> Result<RWord, MapError> {
    if k < 2 {
        return Err(MapError::PreconditionViolated(format!(
            "need k >= 2, got {k}"
        )));
    }
    let mut letters = Vec::with_capacity(pi.n());
    let mut opened = 0;
    for x in 1..=pi.n() {
        let j = pi.block_of(x).expect("element of [n]");
        if j == opened {
            opened += 1;
            letters.push(1);
        } else {
            let letter = (opened - 1 - j) as u32 + 2;
            if letter as usize > k - 1 {
                return Err(MapError::PreconditionViolated(format!(
                    "{x} joins block {} with {} blocks to its right",
                    j + 1,
                    opened - 1 - j
                )));
            }
            letters.push(letter);
        }
    }
    RWord::new(letters, k as u32)
}

pub fn delta_insertion_decode(v: &RWord) -> SetPartition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, &l) in v.letters().iter().enumerate() {
        if l == 1 {
            blocks.push(vec![i + 1]);
        } else {
            let t = blocks.len() - 1 - (l as usize - 2);
            blocks[t].push(i + 1);
        }
    }
    rebuild(v.len(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avoidance::avoiders;
    use std::collections::BTreeSet;

    fn r(s: &str, k: u32) -> RWord {
        let letters = s.chars().map(|c| c.to_digit(10).unwrap()).collect();
        RWord::new(letters, k).unwrap()
    }

    #[test]
    fn validation() {
        assert!(RWord::new(vec![2], 4).is_err());
        assert!(RWord::new(vec![1, 3], 4).is_err());
        assert!(RWord::new(vec![1, 4], 4).is_err());
        assert!(RWord::new(vec![1, 1, 3], 4).is_ok());
    }

    #[test]
    fn small_traces() {
        let w: RgfWord = "11".parse().unwrap();
        assert_eq!(rgf_to_r(&w, 4).unwrap(), r("12", 4));
        assert_eq!(r_to_rgf(&r("12", 4)), w);
        let one: RgfWord = "1".parse().unwrap();
        assert_eq!(rgf_to_r(&one, 4).unwrap(), r("1", 4));
        let bad: RgfWord = "1234".parse().unwrap();
        assert!(matches!(
            rgf_to_r(&bad, 4),
            Err(MapError::LetterOutOfRange { position: 4, .. })
        ));
    }

    #[test]
    fn rgf_r_bijection() {
        for k in 2..=5u32 {
            for n in 0..=7 {
                let rs: BTreeSet<RWord> = iter_r_words(n, k).collect();
                let mut image = BTreeSet::new();
                for w in iter_rgf_below(n, k) {
                    let v = rgf_to_r(&w, k).unwrap();
                    assert_eq!(r_to_rgf(&v), w);
                    image.insert(v);
                }
                assert_eq!(image, rs, "k = {k}, n = {n}");
            }
        }
        assert_eq!(iter_r_words(5, 4).count(), 41);
    }

    #[test]
    fn insertion_encoding() {
        let pi: SetPartition = "13/25/4".parse().unwrap();
        assert_eq!(delta_insertion_encode(&pi, 4).unwrap(), r("11313", 4));
        assert_eq!(delta_insertion_decode(&r("11313", 4)), pi);
        assert_eq!(
            delta_insertion_encode(&SetPartition::singletons(5), 4).unwrap(),
            r("11111", 4)
        );
        assert!(delta_insertion_encode(&"14/2/3".parse().unwrap(), 3).is_err());
    }

    #[test]
    fn insertion_not_surjective() {
        let delta = delta_pattern(4);
        let src = avoiders(6, &delta);
        let image: BTreeSet<RWord> = src
            .iter()
            .map(|p| delta_insertion_encode(p, 4).unwrap())
            .collect();
        assert_eq!(image.len(), src.len());
        assert!(image.len() < iter_r_words(6, 4).count());
    }
}
