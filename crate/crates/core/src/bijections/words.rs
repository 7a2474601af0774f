use std::fmt;
use std::str::FromStr;

use super::{rebuild, MapError};
use crate::partition::SetPartition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }
}

/// A word over `{a, b, c}` that starts with `a` and has at least two `a`s
/// before every `c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbcWord {
    letters: Vec<Letter>,
}

impl AbcWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, MapError> {
        if letters.first().is_some_and(|&l| l != Letter::A) {
            return Err(MapError::NotInW("first letter must be a".into()));
        }
        let mut a_seen = 0;
        for (i, &l) in letters.iter().enumerate() {
            match l {
                Letter::A => a_seen += 1,
                Letter::C if a_seen < 2 => {
                    return Err(MapError::NotInW(format!(
                        "c at position {} has only {a_seen} earlier a",
                        i + 1
                    )))
                }
                _ => {}
            }
        }
        Ok(AbcWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn c_positions(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.letters[i] == Letter::C)
            .collect()
    }

    fn a_count(&self, lo: usize, hi: usize) -> usize {
        self.letters[lo..hi]
            .iter()
            .filter(|&&l| l == Letter::A)
            .count()
    }

    /// No two `c`s have exactly one `a` between them.
    pub fn is_star(&self) -> bool {
        let cs = self.c_positions();
        cs.iter()
            .enumerate()
            .all(|(u, &i)| cs[u + 1..].iter().all(|&j| self.a_count(i + 1, j) != 1))
    }

    /// No `a` lies between two `c`s, and no `c` preceded by three or more `a`s
    /// is immediately followed by `b`.
    pub fn is_double_star(&self) -> bool {
        let cs = self.c_positions();
        if let (Some(&first), Some(&last)) = (cs.first(), cs.last()) {
            if self.a_count(first, last) > 0 {
                return false;
            }
        }
        cs.iter()
            .all(|&i| self.a_count(0, i) < 3 || self.letters.get(i + 1) != Some(&Letter::B))
    }
}

impl fmt::Display for AbcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters
            .iter()
            .try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for AbcWord {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .trim()
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                'c' => Ok(Letter::C),
                _ => Err(MapError::NotInW(format!(
                    "unexpected character {ch:?} at position {}",
                    i + 1
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        AbcWord::new(letters)
    }
}

/// Every word of `W_n` in lexicographic order.
pub fn iter_w_words(n: usize) -> impl Iterator<Item = AbcWord> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    w_rec(n, 0, &mut cur, &mut out);
    out.into_iter()
}

fn w_rec(n: usize, a_seen: usize, cur: &mut Vec<Letter>, out: &mut Vec<AbcWord>) {
    if cur.len() == n {
        out.push(AbcWord {
            letters: cur.clone(),
        });
        return;
    }
    let mut options = vec![Letter::A];
    if !cur.is_empty() {
        options.push(Letter::B);
        if a_seen >= 2 {
            options.push(Letter::C);
        }
    }
    for l in options {
        cur.push(l);
        w_rec(n, a_seen + usize::from(l == Letter::A), cur, out);
        cur.pop();
    }
}

fn encode_with(w: &AbcWord, c_target: impl Fn(usize) -> usize) -> SetPartition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, &l) in w.letters().iter().enumerate() {
        let x = i + 1;
        match l {
            Letter::A => blocks.push(vec![x]),
            Letter::B => blocks.last_mut().expect("word starts with a").push(x),
            Letter::C => {
                let t = c_target(blocks.len());
                blocks[t].push(x);
            }
        }
    }
    rebuild(w.len(), blocks)
}

fn decode_with(pi: &SetPartition, c_target: impl Fn(usize) -> usize) -> Result<AbcWord, MapError> {
    let mut letters = Vec::with_capacity(pi.n());
    let mut opened = 0;
    for x in 1..=pi.n() {
        let j = pi.block_of(x).expect("element of [n]");
        let l = if j == opened {
            opened += 1;
            Letter::A
        } else if j + 1 == opened {
            Letter::B
        } else if opened >= 2 && j == c_target(opened) {
            Letter::C
        } else {
            return Err(MapError::NotInImage(format!(
                "{x} joins block {} of {opened}",
                j + 1
            )));
        };
        letters.push(l);
    }
    AbcWord::new(letters)
}

/// `a` opens a singleton, `b` joins the last block, `c` joins the second-to-last.
pub fn encode_14_2_3(w: &AbcWord) -> SetPartition {
    encode_with(w, |m| m - 2)
}

pub fn decode_14_2_3(pi: &SetPartition) -> Result<AbcWord, MapError> {
    decode_with(pi, |m| m - 2)
}

/// `a` opens a singleton, `b` joins the last block, `c` joins the first block.
pub fn encode_1_24_3(w: &AbcWord) -> SetPartition {
    encode_with(w, |_| 0)
}

pub fn decode_1_24_3(pi: &SetPartition) -> Result<AbcWord, MapError> {
    decode_with(pi, |_| 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::avoidance::avoids;

    fn w(s: &str) -> AbcWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn membership() {
        assert!("ac".parse::<AbcWord>().is_err());
        assert!("bac".parse::<AbcWord>().is_err());
        assert!("aacbx".parse::<AbcWord>().is_err());
        assert!(!w("aacacc").is_star());
        assert!(w("aaccba").is_star());
        assert!(!w("aacac").is_double_star());
        assert!(!w("aaacb").is_double_star());
        assert!(w("aacb").is_double_star());
    }

    #[test]
    fn worked_encodings() {
        assert_eq!(encode_14_2_3(&w("aaccba")), p("134/25/6"));
        assert_eq!(encode_14_2_3(&w("aacabc")), p("13/26/45"));
        assert_eq!(encode_14_2_3(&w("a")), p("1"));
        assert_eq!(encode_1_24_3(&w("abbacb")), p("1235/46"));
        assert_eq!(encode_1_24_3(&w("aacac")), p("135/2/4"));
        assert!(!avoids(&p("13/26/45"), &p("14/2/3")));
        assert!(!avoids(&p("135/2/4"), &p("1/24/3")));
    }

    #[test]
    fn decode_inverts_encode() {
        for n in 1..=8 {
            for word in iter_w_words(n) {
                assert_eq!(decode_14_2_3(&encode_14_2_3(&word)).unwrap(), word);
                assert_eq!(decode_1_24_3(&encode_1_24_3(&word)).unwrap(), word);
            }
        }
        assert!(decode_14_2_3(&p("14/2/3")).is_err());
    }

    #[test]
    fn w_word_counts() {
        // W_n by direct filter of all 3^n words
        for n in 1..=7 {
            let mut total = 0;
            for code in 0..3usize.pow(n as u32) {
                let s: String = (0..n)
                    .map(|i| ['a', 'b', 'c'][code / 3usize.pow(i as u32) % 3])
                    .collect();
                if s.parse::<AbcWord>().is_ok() {
                    total += 1;
                }
            }
            assert_eq!(iter_w_words(n).count(), total);
        }
    }
}
