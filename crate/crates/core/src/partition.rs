//! Set partitions of `[n]` in standard form and their restricted growth words.
//!
//! A [`SetPartition`] always stores its blocks sorted by minimum with each block
//! ascending, so structural equality is partition equality. The text form is
//! `"1 3/2 5 6/4"`; the compact form `"13/256/4"` is accepted on input when every
//! element is a single digit.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised while building or parsing partitions and RGF words.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("element {0} appears in more than one block")]
    OverlappingBlocks(usize),
    #[error("blocks do not cover [1..{n}]: missing {missing}")]
    NotACover { n: usize, missing: usize },
    #[error("element {element} lies outside [1..{n}]")]
    OutOfRange { n: usize, element: usize },
    #[error("empty block")]
    EmptyBlock,
    #[error("invalid restricted growth word at position {position}: {reason}")]
    InvalidRgf { position: usize, reason: String },
    #[error("parse error at position {position}: {reason}")]
    Parse { position: usize, reason: String },
}

/// A partition of `{1..n}` in standard form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Canonicalizes `blocks` into standard form, validating that they partition `[n]`.
    pub fn from_blocks<I, B>(blocks: I, n: usize) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for block in blocks {
            let mut b: Vec<usize> = block.into_iter().collect();
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            b.sort_unstable();
            for w in b.windows(2) {
                if w[0] == w[1] {
                    return Err(PartitionError::OverlappingBlocks(w[0]));
                }
            }
            for &x in &b {
                if x == 0 || x > n {
                    return Err(PartitionError::OutOfRange { n, element: x });
                }
                if seen[x] {
                    return Err(PartitionError::OverlappingBlocks(x));
                }
                seen[x] = true;
            }
            out.push(b);
        }
        if let Some(missing) = (1..=n).find(|&x| !seen[x]) {
            return Err(PartitionError::NotACover { n, missing });
        }
        out.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks: out })
    }

    /// Relabels disjoint blocks of arbitrary positive integers onto `[|S|]`,
    /// preserving relative order.
    pub fn standardize<I, B>(blocks: I) -> Result<Self, PartitionError>
    where
        I: IntoIterator<Item = B>,
        B: IntoIterator<Item = usize>,
    {
        let blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|b| b.into_iter().collect())
            .collect();
        let mut all: Vec<usize> = Vec::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock);
            }
            all.extend_from_slice(b);
        }
        all.sort_unstable();
        for w in all.windows(2) {
            if w[0] == w[1] {
                return Err(PartitionError::OverlappingBlocks(w[0]));
            }
        }
        let rank = |x: usize| all.binary_search(&x).expect("element present") + 1;
        let relabeled = blocks
            .iter()
            .map(|b| b.iter().map(|&x| rank(x)).collect::<Vec<_>>());
        SetPartition::from_blocks(relabeled, all.len())
    }

    /// The one-block partition of `[n]`.
    pub fn single_block(n: usize) -> Self {
        SetPartition {
            n,
            blocks: if n == 0 {
                vec![]
            } else {
                vec![(1..=n).collect()]
            },
        }
    }

    /// The all-singletons partition of `[n]`.
    pub fn singletons(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|x| vec![x]).collect(),
        }
    }

    /// `1..(a-1)(a+1)..k / a`: one block of `[k]` minus the point `a`, plus `{a}`.
    pub fn beta(k: usize, a: usize) -> Self {
        assert!(
            k >= 2 && (1..=k).contains(&a),
            "beta needs 1 <= a <= k, k >= 2"
        );
        let big: Vec<usize> = (1..=k).filter(|&x| x != a).collect();
        SetPartition::from_blocks([big, vec![a]], k).expect("valid beta pattern")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    /// Index (0-based, standard order) of the block holding `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// Replaces every element `x` by `n + 1 - x`.
    pub fn complement(&self) -> SetPartition {
        let n = self.n;
        let flipped = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| n + 1 - x).collect::<Vec<_>>());
        SetPartition::from_blocks(flipped, n).expect("complement of a partition is a partition")
    }

    /// The partition of `S` induced by this partition, standardized onto `[|S|]`.
    pub fn restrict_standardized(&self, subset: &BTreeSet<usize>) -> SetPartition {
        let parts = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .copied()
                    .filter(|x| subset.contains(x))
                    .collect::<Vec<_>>()
            })
            .filter(|b| !b.is_empty());
        SetPartition::standardize(parts).expect("restriction of a partition is a partition")
    }

    pub fn to_rgf(&self) -> RgfWord {
        let mut letters = vec![0u32; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                letters[x - 1] = (i + 1) as u32;
            }
        }
        RgfWord { letters }
    }

    pub fn from_rgf(word: &RgfWord) -> SetPartition {
        let m = word.max_letter() as usize;
        let mut blocks = vec![Vec::new(); m];
        for (i, &l) in word.letters.iter().enumerate() {
            blocks[l as usize - 1].push(i + 1);
        }
        SetPartition {
            n: word.len(),
            blocks,
        }
    }

    /// Compact text (`13/2`); only meaningful when `n <= 9`.
    pub fn to_compact_string(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join("/")
    }

    /// Parses a list of blocks without checking that they cover `[n]`.
    pub fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>, PartitionError> {
        parse_block_list(text)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = PartitionError;

    /// Parses either spaced or compact text; the ground set is `[max element]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let blocks = parse_block_list(s)?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::from_blocks(blocks, n)
    }
}

fn parse_block_list(text: &str) -> Result<Vec<Vec<usize>>, PartitionError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(PartitionError::Parse {
            position: 0,
            reason: "empty input".into(),
        });
    }
    let spaced = trimmed
        .split('/')
        .any(|t| t.trim().contains(char::is_whitespace));
    let mut blocks = Vec::new();
    let mut offset = text.len() - text.trim_start().len();
    for token in trimmed.split('/') {
        let tok = token.trim();
        let lead = offset + (token.len() - token.trim_start().len());
        if tok.is_empty() {
            return Err(PartitionError::Parse {
                position: lead,
                reason: "empty block".into(),
            });
        }
        let compact = !spaced && tok.len() > 1 && tok.bytes().all(|c| (b'1'..=b'9').contains(&c));
        let block = if compact {
            tok.bytes().map(|c| (c - b'0') as usize).collect()
        } else {
            let mut b = Vec::new();
            let mut pos = lead;
            for item in tok.split_whitespace() {
                let at = pos + tok[pos - lead..].find(item).unwrap_or(0);
                let v: usize = item.parse().map_err(|_| PartitionError::Parse {
                    position: at,
                    reason: format!("expected a positive integer, found {item:?}"),
                })?;
                if v == 0 {
                    return Err(PartitionError::Parse {
                        position: at,
                        reason: "elements start at 1".into(),
                    });
                }
                b.push(v);
                pos = at + item.len();
            }
            b
        };
        blocks.push(block);
        offset += token.len() + 1;
    }
    Ok(blocks)
}

/// A restricted growth word `a_1 a_2 ... a_n` with `a_1 = 1` and
/// `a_i <= 1 + max(a_1..a_{i-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RgfWord {
    letters: Vec<u32>,
}

impl RgfWord {
    pub fn new(letters: Vec<u32>) -> Result<Self, PartitionError> {
        let mut max = 0u32;
        for (i, &l) in letters.iter().enumerate() {
            if l == 0 || l > max + 1 {
                return Err(PartitionError::InvalidRgf {
                    position: i + 1,
                    reason: format!("letter {l} exceeds 1 + prefix maximum {max}"),
                });
            }
            max = max.max(l);
        }
        Ok(RgfWord { letters })
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u32>) -> Self {
        RgfWord { letters }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.letters.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for RgfWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.letters)
    }
}

impl FromStr for RgfWord {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RgfWord::new(parse_word(s)?)
    }
}

/// Digits when every letter is at most 9, comma-separated integers otherwise.
pub(crate) fn write_word(f: &mut fmt::Formatter<'_>, letters: &[u32]) -> fmt::Result {
    if letters.iter().all(|&l| l <= 9) {
        for l in letters {
            write!(f, "{l}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Accepts `"12211"` or `"1,2,2,1,1"`.
pub(crate) fn parse_word(s: &str) -> Result<Vec<u32>, PartitionError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(PartitionError::Parse {
            position: 0,
            reason: "empty word".into(),
        });
    }
    if s.contains(',') {
        let mut out = Vec::new();
        let mut pos = 0;
        for item in s.split(',') {
            let v = item
                .trim()
                .parse::<u32>()
                .map_err(|_| PartitionError::Parse {
                    position: pos,
                    reason: format!("expected an integer, found {:?}", item.trim()),
                })?;
            out.push(v);
            pos += item.len() + 1;
        }
        Ok(out)
    } else {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10).ok_or_else(|| PartitionError::Parse {
                    position: i,
                    reason: format!("expected a digit, found {c:?}"),
                })
            })
            .collect()
    }
}
