//! Exhaustive property checks for each map in [`crate::bijections`] over all
//! inputs up to a given size.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::avoidance::{avoiders, avoids, avoids_beta, block_contains_beta_in, contains};
use crate::bijections::{
    decode_14_2_3, decode_1_24_3, delta_insertion_decode, delta_insertion_encode, delta_pattern,
    encode_14_2_3, encode_1_24_3, gamma_witness, generate_14_23_core, iter_r_words, iter_rgf_below,
    iter_w_words, lemma_induction_psi, phi_134_2, phi_134_2_inverse, phi_a, phi_a_inverse,
    psi_sigma_beta, r_to_rgf, rgf_to_r, slide, two_block_varphi, two_block_varphi_inverse, unslide,
    AbcWord, MapError, RankInjection, TwoBlockPattern,
};
use crate::enumeration::h_series_check;
use crate::generate::iter_partitions;
use crate::numbers::{binomial, matchings_with_fixed_points};
use crate::partition::SetPartition;
use crate::series::as_i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    Slide,
    PhiA,
    TwoBlock,
    Psi,
    LemmaPsi,
    Words14_2_3,
    Words1_24_3,
    RgfR,
    Delta,
    Core14_23,
    Phi134_2,
}

impl MapKind {
    pub const ALL: [MapKind; 11] = [
        MapKind::Slide,
        MapKind::PhiA,
        MapKind::TwoBlock,
        MapKind::Psi,
        MapKind::LemmaPsi,
        MapKind::Words14_2_3,
        MapKind::Words1_24_3,
        MapKind::RgfR,
        MapKind::Delta,
        MapKind::Core14_23,
        MapKind::Phi134_2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Slide => "slide",
            MapKind::PhiA => "phi_a",
            MapKind::TwoBlock => "two_block",
            MapKind::Psi => "psi",
            MapKind::LemmaPsi => "lemma_psi",
            MapKind::Words14_2_3 => "words_14_2_3",
            MapKind::Words1_24_3 => "words_1_24_3",
            MapKind::RgfR => "rgf_R",
            MapKind::Delta => "delta",
            MapKind::Core14_23 => "core_14_23",
            MapKind::Phi134_2 => "phi_134_2",
        }
    }

    /// The `k` used when none is given.
    pub fn default_k(self) -> usize {
        match self {
            MapKind::Slide | MapKind::PhiA | MapKind::RgfR => 5,
            MapKind::Psi | MapKind::TwoBlock | MapKind::LemmaPsi | MapKind::Delta => 4,
            _ => 4,
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MapKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown map {s:?}"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub map: String,
    pub k: usize,
    pub n: usize,
    /// Individual property checks performed.
    pub checks: u64,
    /// Up to [`MAX_FAILURES`] counterexamples.
    pub failures: Vec<String>,
    pub passed: bool,
}

pub const MAX_FAILURES: usize = 5;

struct Log {
    checks: u64,
    failures: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(what());
        }
    }
}

/// Runs every property of `map` on all inputs of size `1..=n`.
pub fn verify(map: MapKind, k: usize, n: usize) -> VerifyReport {
    let mut log = Log::new();
    match map {
        MapKind::Slide => verify_slide(k, n, &mut log),
        MapKind::PhiA => verify_phi_a(k, n, &mut log),
        MapKind::TwoBlock => verify_two_block(k, n, &mut log),
        MapKind::Psi => verify_psi(k, n, &mut log),
        MapKind::LemmaPsi => verify_lemma_psi(n, &mut log),
        MapKind::Words14_2_3 => verify_words(n, false, &mut log),
        MapKind::Words1_24_3 => verify_words(n, true, &mut log),
        MapKind::RgfR => verify_rgf_r(k, n, &mut log),
        MapKind::Delta => verify_delta(k, n, &mut log),
        MapKind::Core14_23 => verify_core(n, &mut log),
        MapKind::Phi134_2 => verify_phi_134_2(n, &mut log),
    }
    VerifyReport {
        map: map.name().to_string(),
        k,
        n,
        checks: log.checks,
        passed: log.failures.is_empty(),
        failures: log.failures,
    }
}

fn verify_slide(k: usize, n: usize, log: &mut Log) {
    for m in 1..=n {
        for pi in iter_partitions(m) {
            for i in 1..=pi.block_count() {
                let b = &pi.blocks()[i - 1];
                for a in 2..k {
                    if block_contains_beta_in(b, k, a + 1, m) || !block_contains_beta_in(b, k, a, m)
                    {
                        continue;
                    }
                    let out = match slide(&pi, i, k, a) {
                        Ok(o) => o,
                        Err(e) => {
                            log.check(false, || format!("slide({pi}, {i}, {k}, {a}): {e}"));
                            continue;
                        }
                    };
                    let nb = &out.blocks()[i - 1];
                    log.check(
                        block_contains_beta_in(nb, k, a + 1, m)
                            && !block_contains_beta_in(nb, k, a, m),
                        || format!("slide({pi}, {i}, {k}, {a}) = {out}: block {i} has wrong type"),
                    );
                    let moved = out.blocks().iter().position(|x| {
                        x.len() == b.len()
                            && block_contains_beta_in(x, k, a + 1, m)
                            && x[..a - 1] == b[..a - 1]
                    });
                    log.check(moved == Some(i - 1), || {
                        format!("slide({pi}, {i}, {k}, {a}) = {out}: slid block moved")
                    });
                    for j in (1..=pi.block_count()).filter(|&j| j != i) {
                        for c in 1..=k {
                            let before = block_contains_beta_in(&pi.blocks()[j - 1], k, c, m);
                            let after = block_contains_beta_in(&out.blocks()[j - 1], k, c, m);
                            log.check(before == after, || {
                                format!("slide({pi}, {i}, {k}, {a}) = {out}: block {j} changed type for c = {c}")
                            });
                        }
                    }
                    log.check(unslide(&out, i, k, a).as_ref() == Ok(&pi), || {
                        format!("unslide(slide({pi}, {i}, {k}, {a})) differs")
                    });
                }
            }
        }
    }
}

fn verify_phi_a(k: usize, n: usize, log: &mut Log) {
    for a in 2..k {
        for m in 1..=n {
            let src = avoiders(m, &SetPartition::beta(k, a + 1));
            let mut image = BTreeSet::new();
            for pi in &src {
                let Ok(img) = phi_a(pi, k, a) else {
                    log.check(false, || format!("phi_{a}({pi}) failed for k = {k}"));
                    continue;
                };
                log.check(avoids_beta(&img, k, a), || {
                    format!("phi_{a}({pi}) = {img} contains beta({k},{a})")
                });
                log.check(phi_a_inverse(&img, k, a).as_ref() == Ok(pi), || {
                    format!("phi_{a} inverse fails at {pi}")
                });
                log.check(image.insert(img), || {
                    format!("phi_{a} not injective at {pi}")
                });
            }
            if a < k - 1 {
                let target = avoiders(m, &SetPartition::beta(k, a)).len();
                log.check(image.len() == target, || {
                    format!("phi_{a} image has {} of {target} at n = {m}", image.len())
                });
            }
        }
    }
}

fn two_block_patterns(k: usize) -> Vec<SetPartition> {
    iter_partitions(k)
        .filter(|p| p.block_count() == 2)
        .collect()
}

fn verify_two_block(k: usize, n: usize, log: &mut Log) {
    let one_block = SetPartition::single_block(k);
    for sigma in two_block_patterns(k) {
        let tb = TwoBlockPattern::new(&sigma).expect("two blocks");
        for m in k + 1..=n {
            let mut image = BTreeSet::new();
            for pi in iter_partitions(m).filter(|p| contains(p, &one_block)) {
                let Ok(img) = two_block_varphi(&pi, &tb) else {
                    log.check(false, || format!("varphi({pi}) failed for {sigma}"));
                    continue;
                };
                log.check(contains(&img, &sigma), || {
                    format!("varphi({pi}) = {img} avoids {sigma}")
                });
                let expected_small = !contains(&pi, &sigma);
                log.check(!expected_small || avoids(&img, &one_block), || {
                    format!("varphi({pi}) = {img} keeps a block of size {k}")
                });
                log.check(
                    two_block_varphi_inverse(&img, &tb).as_ref() == Ok(&pi),
                    || format!("varphi inverse fails at {pi} for {sigma}"),
                );
                log.check(image.insert(img), || {
                    format!("varphi not injective at {pi}")
                });
            }
            let codomain = iter_partitions(m).filter(|p| contains(p, &sigma)).count();
            log.check(image.len() < codomain, || {
                format!("varphi onto for {sigma} at n = {m}")
            });
            if let Ok(g) = gamma_witness(&tb, m) {
                log.check(
                    contains(&g, &sigma) && avoids(&g, &one_block) && !image.contains(&g),
                    || format!("witness {g} is in the image for {sigma}"),
                );
            }
        }
    }
}

/// The blocks `{1, 3}` and `{2, 4, 5, ..., k+1}`.
fn forbidden_pair(k: usize) -> [Vec<usize>; 2] {
    [vec![1, 3], std::iter::once(2).chain(4..=k + 1).collect()]
}

fn has_blocks(pi: &SetPartition, blocks: &[Vec<usize>]) -> bool {
    blocks.iter().all(|b| pi.blocks().contains(b))
}

fn verify_psi(k: usize, n: usize, log: &mut Log) {
    let beta = SetPartition::single_block(k);
    let forbidden = forbidden_pair(k);
    for m in 1..=n {
        let mut image = BTreeSet::new();
        for pi in iter_partitions(m).filter(|p| p.block_count() < k) {
            let Ok(img) = psi_sigma_beta(&pi, k) else {
                log.check(false, || format!("psi_{k}({pi}) failed"));
                continue;
            };
            log.check(avoids(&img, &beta), || {
                format!("psi_{k}({pi}) = {img} contains {beta}")
            });
            log.check(!has_blocks(&img, &forbidden), || {
                format!("psi_{k}({pi}) = {img} has the blocks 1 3/2 4 .. {}", k + 1)
            });
            log.check(image.insert(img), || {
                format!("psi_{k} not injective at {pi}")
            });
        }
        if m > k && k > 2 {
            let target = avoiders(m, &beta).len();
            log.check(image.len() < target, || format!("psi_{k} onto at n = {m}"));
        }
    }
}

fn verify_lemma_psi(n: usize, log: &mut Log) {
    let alpha: SetPartition = "12/3".parse().expect("pattern");
    let source: SetPartition = "1/23/4".parse().expect("pattern");
    let sigma4 = SetPartition::singletons(4);
    let fam = RankInjection::new(alpha.clone(), SetPartition::singletons(3));
    for m in 1..=n {
        let mut image = BTreeSet::new();
        for pi in avoiders(m, &source) {
            match lemma_induction_psi(&pi, &alpha, &fam) {
                Ok(img) => {
                    log.check(avoids(&img, &sigma4), || {
                        format!("psi({pi}) = {img} contains 1/2/3/4")
                    });
                    log.check(image.insert(img), || format!("psi not injective at {pi}"));
                }
                Err(e) => log.check(false, || format!("psi({pi}): {e}")),
            }
        }
    }
}

fn verify_words(n: usize, second: bool, log: &mut Log) {
    type Encode = fn(&AbcWord) -> SetPartition;
    type Decode = fn(&SetPartition) -> Result<AbcWord, MapError>;
    let (tau, encode, decode): (SetPartition, Encode, Decode) = if second {
        (
            "1/24/3".parse().expect("pattern"),
            encode_1_24_3,
            decode_1_24_3,
        )
    } else {
        (
            "14/2/3".parse().expect("pattern"),
            encode_14_2_3,
            decode_14_2_3,
        )
    };
    for m in 1..=n {
        let mut image = BTreeSet::new();
        for w in iter_w_words(m) {
            let p = encode(&w);
            log.check(decode(&p).as_ref() == Ok(&w), || {
                format!("decode(encode({w})) differs")
            });
            let restricted = if second {
                w.is_double_star()
            } else {
                w.is_star()
            };
            if restricted {
                log.check(avoids(&p, &tau), || {
                    format!("encode({w}) = {p} contains {tau}")
                });
                log.check(image.insert(p), || format!("encode not injective at {w}"));
            }
        }
        let target = avoiders(m, &tau).len();
        log.check(image.len() == target, || {
            format!(
                "{} restricted words vs {target} avoiders of {tau} at n = {m}",
                image.len()
            )
        });
    }
}

fn verify_rgf_r(k: usize, n: usize, log: &mut Log) {
    for kk in 2..=k as u32 {
        for m in 1..=n {
            let words: BTreeSet<_> = iter_r_words(m, kk).collect();
            let mut image = BTreeSet::new();
            for w in iter_rgf_below(m, kk) {
                match rgf_to_r(&w, kk) {
                    Ok(v) => {
                        log.check(r_to_rgf(&v) == w, || format!("R round trip fails at {w}"));
                        image.insert(v);
                    }
                    Err(e) => log.check(false, || format!("rgf_to_R({w}, {kk}): {e}")),
                }
            }
            log.check(image == words, || {
                format!("image differs from R words, k = {kk}, n = {m}")
            });
        }
    }
}

fn verify_delta(k: usize, n: usize, log: &mut Log) {
    let delta = delta_pattern(k);
    for m in 1..=n {
        let mut image = BTreeSet::new();
        for pi in avoiders(m, &delta) {
            match delta_insertion_encode(&pi, k) {
                Ok(v) => {
                    log.check(delta_insertion_decode(&v) == pi, || {
                        format!("decode(encode({pi})) differs")
                    });
                    log.check(image.insert(v), || {
                        format!("encoding not injective at {pi}")
                    });
                }
                Err(e) => log.check(false, || format!("encode({pi}): {e}")),
            }
        }
        let total = iter_r_words(m, k as u32).count();
        if m > k && k >= 4 {
            log.check(image.len() < total, || format!("encoding onto at n = {m}"));
        } else {
            log.check(image.len() <= total, || {
                format!("image too large at n = {m}")
            });
        }
    }
}

fn verify_core(n: usize, log: &mut Log) {
    let tau: SetPartition = "14/23".parse().expect("pattern");
    let h = h_series_check(n.max(2)).expect("cap series");
    for m in 2..=n {
        let cores = generate_14_23_core(m);
        let got: BTreeSet<SetPartition> = cores.iter().map(|c| c.partition().clone()).collect();
        let want: BTreeSet<SetPartition> = avoiders(m, &tau)
            .into_iter()
            .filter(|p| p.blocks().iter().all(|b| b.len() > 1))
            .collect();
        log.check(got == want, || {
            format!("core set differs from filtered avoiders at n = {m}")
        });
        let mut dist = vec![0i64; m + 1];
        for c in &cores {
            dist[c.caps()] += 1;
        }
        let poly = h.coeff(m);
        let series: Vec<i64> = (0..=m)
            .map(|i| as_i64(&poly.coeff(i)).unwrap_or(-1))
            .collect();
        log.check(series == dist, || {
            format!("cap distribution differs at n = {m}")
        });
    }
}

fn verify_phi_134_2(n: usize, log: &mut Log) {
    let tau: SetPartition = "134/2".parse().expect("pattern");
    for m in 1..=n {
        let mut seen = BTreeSet::new();
        let mut per_kf = std::collections::BTreeMap::new();
        for pi in avoiders(m, &tau) {
            if pi.block_count() == m {
                continue;
            }
            match phi_134_2(&pi) {
                Ok((l, s)) => {
                    log.check(phi_134_2_inverse(&l, &s).as_ref() == Ok(&pi), || {
                        format!("phi_134_2 round trip fails at {pi}")
                    });
                    *per_kf
                        .entry((s.doubletons(), s.singletons()))
                        .or_insert(0u64) += 1;
                    log.check(seen.insert((l, s)), || {
                        format!("phi_134_2 not injective at {pi}")
                    });
                }
                Err(e) => log.check(false, || format!("phi_134_2({pi}): {e}")),
            }
        }
        for (&(k, f), &count) in &per_kf {
            let want = binomial(m - f - k - 1, k - 1) * matchings_with_fixed_points(k, f);
            log.check(want == count.into(), || {
                format!("n = {m}, k = {k}, f = {f}: {count} avoiders, product formula {want}")
            });
        }
    }
}
