//! Acceptance criteria. Each prints one PASS/FAIL line to stdout (uncaptured)
//! and the test fails if any criterion fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use partavoid::avoidance::{count_avoiders, count_avoiders_u64};
use partavoid::bijections::{
    encode_14_2_3, encode_1_24_3, phi_134_2, phi_a, slide, AbcWord, TwoBlockPattern,
};
use partavoid::enumeration::{available_methods, counts_by, gf_1_24_3, table_patterns, Method};
use partavoid::generate::iter_partitions;
use partavoid::numbers::{big, catalan, stirling2};
use partavoid::verify::{verify, MapKind};
use partavoid::wilf::{build_table, check_beta_threshold, wilf_classes};
use partavoid::{BigCount, SetPartition};

fn p(s: &str) -> SetPartition {
    s.parse().unwrap()
}

fn shards() -> usize {
    std::thread::available_parallelism().map_or(2, |n| n.get())
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

struct Suite {
    failed: Vec<usize>,
}

impl Suite {
    fn run(
        &mut self,
        id: usize,
        title: &str,
        budget: Option<Duration>,
        f: impl FnOnce() -> Outcome,
    ) {
        let start = Instant::now();
        let mut o = f();
        let took = start.elapsed();
        if let Some(b) = budget {
            if took > b {
                o.ok = false;
                o.detail = format!("{} [over budget of {:.0?}]", o.detail, b);
            }
        }
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        let mut out = std::io::stdout().lock();
        writeln!(
            out,
            "{verdict} [{id}] {title}: {} ({:.3} s)",
            o.detail,
            took.as_secs_f64()
        )
        .unwrap();
        if !o.ok {
            self.failed.push(id);
        }
    }
}

fn criterion_counts_at_five() -> Outcome {
    let a = count_avoiders(5, &p("1/24/3"), 1);
    let b = count_avoiders(5, &p("1/2/3/4"), 1);
    let gf = gf_1_24_3(5).unwrap()[5].clone();
    outcome(
        a == big(39) && b == big(41) && gf == big(39),
        format!("|Pi_5(1/24/3)| = {a} (gf {gf}), |Pi_5(1/2/3/4)| = {b}"),
    )
}

fn criterion_table_rows(shards: usize) -> Outcome {
    let mut bad = Vec::new();
    let mut compared = 0;
    for tau in table_patterns() {
        let oracle = counts_by(&tau, 10, Method::Oracle, shards).unwrap();
        let methods = available_methods(&tau);
        if methods.len() < 2 {
            bad.push(format!("{tau}: no closed form"));
        }
        for m in methods.into_iter().filter(|&m| m != Method::Oracle) {
            compared += 1;
            let got = counts_by(&tau, 10, m, shards).unwrap();
            if got != oracle {
                bad.push(format!("{tau} by {m}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{compared} closed forms vs exhaustive counts, n <= 10; mismatches {bad:?}"),
    )
}

fn criterion_catalan(shards: usize) -> Outcome {
    let want: [u64; 10] = [1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    let tau = p("13/24");
    let got: Vec<u64> = (1..=10)
        .map(|n| count_avoiders_u64(n, &tau, shards))
        .collect();
    let ok = got == want && (1..=10).all(|n| catalan(n) == big(want[n - 1]));
    outcome(ok, format!("|Pi_n(13/24)| for n = 1..10: {got:?}"))
}

fn criterion_worked_examples() -> Outcome {
    let mut bad = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            bad.push(name.to_string());
        }
    };
    check(
        "slide",
        slide(&p("1 3/2 5 6 7 8 9/4 10"), 2, 5, 2).ok() == Some(p("1 6/2 3 4 5 8 9/7 10")),
    );
    check(
        "phi cascade",
        phi_a(&p("1 10 11 12/2 4 5 8/3 6 7 9"), 5, 2).ok() == Some(p("1 2 11 12/3 4 7 9/5 6 8 10")),
    );
    let w = |s: &str| s.parse::<AbcWord>().unwrap();
    check("aaccba", encode_14_2_3(&w("aaccba")) == p("134/25/6"));
    check("abbacb", encode_1_24_3(&w("abbacb")) == p("1235/46"));
    match phi_134_2(&p("1 2 7/3/4 5 6 8/9/10 11 12")) {
        Ok((lambda, sigma)) => {
            check("134/2 composition", lambda.parts() == [1, 2, 1]);
            check("134/2 matching", sigma.partition() == &p("14/2/35/6/78"));
        }
        Err(_) => check("134/2", false),
    }
    outcome(
        bad.is_empty(),
        format!("slide, phi cascade, two word encodings, 134/2 decomposition; wrong {bad:?}"),
    )
}

fn criterion_beta_chain(shards: usize) -> Outcome {
    let r = check_beta_threshold(5, 9, shards);
    let strict_8_9 =
        r.ns.iter()
            .zip(&r.counts[4])
            .zip(&r.counts[3])
            .filter(|((n, _), _)| **n >= 8)
            .all(|((_, hi), lo)| hi < lo);
    let ok = r.chain_holds
        && r.middle_equal
        && r.last_link_equal_at == vec![6, 7]
        && r.threshold == 8
        && strict_8_9;
    let last: Vec<String> = r.counts[4]
        .iter()
        .zip(&r.counts[3])
        .map(|(a, b)| format!("{a}/{b}"))
        .collect();
    outcome(
        ok,
        format!(
            "k = 5, n = 6..9: chain {}, middle links equal {}, last link {last:?} equal at {:?}",
            r.chain_holds, r.middle_equal, r.last_link_equal_at
        ),
    )
}

fn criterion_bijections() -> Outcome {
    let runs = [
        verify(MapKind::PhiA, 5, 8),
        verify(MapKind::Core14_23, 4, 9),
        verify(MapKind::Phi134_2, 4, 8),
        verify(MapKind::RgfR, 5, 10),
    ];
    // number of RGFs with letters below k is the number of partitions with fewer than k blocks
    let r_counts_ok = (1..=5u32).all(|k| {
        (1..=10).all(|n| {
            let want: BigCount = (1..k as usize).map(|j| stirling2(n, j)).sum();
            big(partavoid::bijections::iter_r_words(n, k).count() as u64) == want
        })
    });
    let failed: Vec<String> = runs
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{}: {:?}", r.map, r.failures))
        .collect();
    let checks: u64 = runs.iter().map(|r| r.checks).sum();
    outcome(
        failed.is_empty() && r_counts_ok,
        format!("phi_a, core_14_23, phi_134_2, rgf_R: {checks} checks, R counts vs Stirling sums {r_counts_ok}; failures {failed:?}"),
    )
}

fn criterion_injections() -> Outcome {
    let mut runs: Vec<_> = (3..=5).map(|k| verify(MapKind::Psi, k, 9)).collect();
    runs.push(verify(MapKind::TwoBlock, 4, 8));
    let sigmas: Vec<SetPartition> = iter_partitions(4)
        .filter(|s| s.block_count() == 2)
        .collect();
    let witnesses = sigmas
        .iter()
        .filter(|s| {
            partavoid::bijections::gamma_witness(&TwoBlockPattern::new(s).unwrap(), 8).is_ok()
        })
        .count();
    let failed: Vec<String> = runs
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} k={}: {:?}", r.map, r.k, r.failures))
        .collect();
    let checks: u64 = runs.iter().map(|r| r.checks).sum();
    outcome(
        failed.is_empty() && sigmas.len() == 7 && witnesses > 0,
        format!(
            "psi for k = 3,4,5 up to n = 9, varphi for {} two-block patterns up to n = 8 with {witnesses} witnesses; {checks} checks; failures {failed:?}",
            sigmas.len()
        ),
    )
}

fn criterion_classes(shards: usize) -> Outcome {
    let table = build_table(4, 10, shards);
    let report = wilf_classes(&table);
    let classes: BTreeSet<BTreeSet<String>> = report
        .classes
        .iter()
        .map(|c| c.patterns.iter().cloned().collect())
        .collect();
    let orbits: BTreeSet<BTreeSet<String>> = iter_partitions(4)
        .map(|t| {
            [t.to_string(), t.complement().to_string()]
                .into_iter()
                .collect()
        })
        .collect();
    let beta = SetPartition::single_block(4);
    let top = table.row(&beta).unwrap();
    let below = table
        .rows()
        .filter(|(t, _)| **t != beta)
        .all(|(_, c)| c.iter().zip(top).all(|(x, y)| x < y));
    let flags = &report.conjecture_flags;
    let ok = classes == orbits
        && below
        && flags.only_known_equivalences
        && flags.one_block_strictly_maximal
        && flags.labels.len() == 2;
    outcome(
        ok,
        format!(
            "k = 4, n = 5..10: {} classes, {} complement orbits, equal {}; one-block pattern strictly largest {below}; labels {:?}",
            classes.len(),
            orbits.len(),
            classes == orbits,
            flags.labels
        ),
    )
}

fn criterion_determinism() -> Outcome {
    let csv: Vec<String> = [1, 2, 8]
        .iter()
        .map(|&s| build_table(4, 9, s).to_csv())
        .collect();
    let same_table = csv.windows(2).all(|w| w[0] == w[1]);
    let tau = p("1/24/3");
    let counts: Vec<Vec<BigCount>> = [1, 2, 8]
        .iter()
        .map(|&s| counts_by(&tau, 10, Method::Oracle, s).unwrap())
        .collect();
    let same_counts = counts.windows(2).all(|w| w[0] == w[1]);
    outcome(
        same_table && same_counts,
        format!("shards 1, 2, 8: k = 4 table to n = 9 identical {same_table}, 1/24/3 counts to n = 10 identical {same_counts}"),
    )
}

#[test]
fn acceptance_criteria() {
    let shards = shards();
    let mut suite = Suite { failed: Vec::new() };
    suite.run(
        1,
        "avoider counts at n = 5",
        Some(Duration::from_secs(1)),
        criterion_counts_at_five,
    );
    suite.run(
        2,
        "closed forms match exhaustive counts",
        Some(Duration::from_secs(120)),
        || criterion_table_rows(shards),
    );
    suite.run(3, "13/24 avoiders are Catalan", None, || {
        criterion_catalan(shards)
    });
    suite.run(4, "worked examples", None, criterion_worked_examples);
    suite.run(
        5,
        "one-block-minus-a-point chain at k = 5",
        Some(Duration::from_secs(60)),
        || criterion_beta_chain(shards),
    );
    suite.run(6, "bijection round trips", None, criterion_bijections);
    suite.run(
        7,
        "injections into the one-block avoiders",
        None,
        criterion_injections,
    );
    suite.run(8, "Wilf classes of [4]", None, || criterion_classes(shards));
    suite.run(
        9,
        "determinism across shard counts",
        None,
        criterion_determinism,
    );
    assert!(
        suite.failed.is_empty(),
        "failed criteria: {:?}",
        suite.failed
    );
}
