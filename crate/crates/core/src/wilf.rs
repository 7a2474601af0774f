//! Avoider-count tables over all patterns of a given size, empirical Wilf
//! classes, and the dominance checks built on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::avoidance::{count_avoiders_many, Matcher};
use crate::generate::{iter_partitions, RgfCursor};
use crate::numbers::{big, BigCount};
use crate::partition::SetPartition;

fn serialize_counts<S: Serializer>(v: &[BigCount], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        match u64::try_from(c) {
            Ok(x) => seq.serialize_element(&x)?,
            Err(_) => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

/// `|Pi_n(tau)|` for every pattern `tau` of `[k]` and `n = k+1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    k: usize,
    n_max: usize,
    patterns: Vec<SetPartition>,
    rows: Vec<Vec<BigCount>>,
}

impl CountTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn ns(&self) -> std::ops::RangeInclusive<usize> {
        self.k + 1..=self.n_max
    }

    /// Patterns sorted by their text form.
    pub fn patterns(&self) -> &[SetPartition] {
        &self.patterns
    }

    pub fn row(&self, tau: &SetPartition) -> Option<&[BigCount]> {
        self.patterns
            .iter()
            .position(|p| p == tau)
            .map(|i| self.rows[i].as_slice())
    }

    pub fn rows(&self) -> impl Iterator<Item = (&SetPartition, &[BigCount])> {
        self.patterns
            .iter()
            .zip(self.rows.iter().map(Vec::as_slice))
    }

    /// `pattern,n,count` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("pattern,n,count\n");
        for (p, row) in self.rows() {
            for (n, c) in self.ns().zip(row) {
                writeln!(out, "{p},{n},{c}").expect("writing to a string");
            }
        }
        out
    }
}

fn sort_by_text(patterns: &mut [SetPartition]) {
    patterns.sort_by_cached_key(|p| p.to_string());
}

/// Counts every pattern of `[k]` in one scan of `Pi_n` per `n`.
pub fn build_table(k: usize, n_max: usize, shards: usize) -> CountTable {
    assert!(k >= 2 && n_max > k, "need k >= 2 and n_max > k");
    build_table_for(iter_partitions(k).collect(), n_max, shards)
}

/// As [`build_table`] for an explicit list of patterns of a common size.
pub fn build_table_for(mut patterns: Vec<SetPartition>, n_max: usize, shards: usize) -> CountTable {
    let k = patterns.first().map_or(0, SetPartition::n);
    assert!(
        patterns.iter().all(|p| p.n() == k),
        "patterns must share a size"
    );
    sort_by_text(&mut patterns);
    let mut rows = vec![Vec::new(); patterns.len()];
    for n in k + 1..=n_max {
        for (row, c) in rows
            .iter_mut()
            .zip(count_avoiders_many(n, &patterns, shards))
        {
            row.push(big(c));
        }
    }
    CountTable {
        k,
        n_max,
        patterns,
        rows,
    }
}

/// Equivalences known to hold for all `n`, with the reason.
pub fn known_equivalences(k: usize) -> Vec<(SetPartition, SetPartition, &'static str)> {
    let mut out = Vec::new();
    for p in iter_partitions(k) {
        let c = p.complement();
        if p < c {
            out.push((p, c, "complement"));
        }
    }
    for a in 2..k.saturating_sub(1) {
        out.push((
            SetPartition::beta(k, a),
            SetPartition::beta(k, a + 1),
            "slide",
        ));
    }
    if k == 3 {
        out.push((
            "1/2/3".parse().expect("pattern"),
            "13/2".parse().expect("pattern"),
            "known",
        ));
    }
    out
}

fn classes_from_merges(
    patterns: &[SetPartition],
    merges: &[(SetPartition, SetPartition)],
) -> Vec<Vec<String>> {
    let idx: BTreeMap<&SetPartition, usize> =
        patterns.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..patterns.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in merges {
        if let (Some(&i), Some(&j)) = (idx.get(a), idx.get(b)) {
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, t) in patterns.iter().enumerate() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(t.to_string());
    }
    normalize(groups.into_values().collect())
}

fn normalize(mut classes: Vec<Vec<String>>) -> Vec<Vec<String>> {
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    classes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassStatus {
    /// Every member is linked by a known equivalence.
    Proved,
    /// Rows agree on the table horizon only.
    UpToHorizon,
}

impl Serialize for ClassStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            ClassStatus::Proved => "proved",
            ClassStatus::UpToHorizon => "equivalent up to n_max",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WilfClass {
    pub patterns: Vec<String>,
    #[serde(serialize_with = "serialize_counts")]
    pub counts: Vec<BigCount>,
    pub status: ClassStatus,
}

/// `lower` is at most `upper` at every tabulated `n`, strictly at `first_strict_n`.
#[derive(Debug, Clone, Serialize)]
pub struct OrderEvidence {
    pub lower: String,
    pub upper: String,
    pub first_strict_n: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureFlags {
    /// Empirical classes are exactly the classes implied by known equivalences.
    pub only_known_equivalences: bool,
    /// Every pattern other than the one-block pattern has strictly fewer
    /// avoiders than it at every tabulated `n`.
    pub one_block_strictly_maximal: bool,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WilfReport {
    pub k: usize,
    pub n_max: usize,
    pub classes: Vec<WilfClass>,
    pub predicted_classes: Vec<Vec<String>>,
    pub matches_prediction: bool,
    pub order_evidence: Vec<OrderEvidence>,
    pub conjecture_flags: ConjectureFlags,
}

impl WilfReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn class_of(&self, pattern: &str) -> Option<&WilfClass> {
        self.classes
            .iter()
            .find(|c| c.patterns.iter().any(|p| p == pattern))
    }
}

/// Groups patterns with identical rows and compares the grouping with the
/// classes implied by [`known_equivalences`].
pub fn wilf_classes(table: &CountTable) -> WilfReport {
    let mut by_row: BTreeMap<&[BigCount], Vec<String>> = BTreeMap::new();
    for (p, row) in table.rows() {
        by_row.entry(row).or_default().push(p.to_string());
    }
    let merges: Vec<(SetPartition, SetPartition)> = known_equivalences(table.k())
        .into_iter()
        .map(|(a, b, _)| (a, b))
        .collect();
    let predicted = classes_from_merges(table.patterns(), &merges);
    let predicted_set: BTreeSet<&Vec<String>> = predicted.iter().collect();

    let mut classes: Vec<WilfClass> = by_row
        .into_iter()
        .map(|(row, mut patterns)| {
            patterns.sort();
            let status = if predicted_set.contains(&patterns) {
                ClassStatus::Proved
            } else {
                ClassStatus::UpToHorizon
            };
            WilfClass {
                patterns,
                counts: row.to_vec(),
                status,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.patterns.cmp(&b.patterns));
    let empirical = normalize(classes.iter().map(|c| c.patterns.clone()).collect());
    let matches_prediction = empirical == predicted;

    let mut order_evidence = Vec::new();
    for a in &classes {
        for b in &classes {
            let le = a.counts.iter().zip(&b.counts).all(|(x, y)| x <= y);
            let strict = table
                .ns()
                .zip(a.counts.iter().zip(&b.counts))
                .find(|(_, (x, y))| x < y);
            if let (true, Some((n, _))) = (le, strict) {
                order_evidence.push(OrderEvidence {
                    lower: a.patterns[0].clone(),
                    upper: b.patterns[0].clone(),
                    first_strict_n: n,
                });
            }
        }
    }

    let one_block = SetPartition::single_block(table.k());
    let top = table
        .row(&one_block)
        .expect("one-block pattern is tabulated");
    let one_block_strictly_maximal = table
        .rows()
        .filter(|(p, _)| **p != one_block)
        .all(|(_, row)| row.iter().zip(top).all(|(x, y)| x < y));

    let mut labels = Vec::new();
    if matches_prediction {
        labels.push(format!(
            "consistent with the known equivalences being the only ones, up to n = {}",
            table.n_max()
        ));
    }
    if one_block_strictly_maximal {
        labels.push(format!(
            "consistent with the one-block pattern being the unique maximum, up to n = {}",
            table.n_max()
        ));
    }
    WilfReport {
        k: table.k(),
        n_max: table.n_max(),
        classes,
        predicted_classes: predicted,
        matches_prediction,
        order_evidence,
        conjecture_flags: ConjectureFlags {
            only_known_equivalences: matches_prediction,
            one_block_strictly_maximal,
            labels,
        },
    }
}

/// Counts for the patterns `beta(k, a)`, `a = 1..=k`, and the checks on them.
#[derive(Debug, Clone, Serialize)]
pub struct BetaChainReport {
    pub k: usize,
    pub ns: Vec<usize>,
    /// `counts[a-1][i]` is `|Pi_{ns[i]}(beta(k, a))|`.
    #[serde(serialize_with = "serialize_nested")]
    pub counts: Vec<Vec<BigCount>>,
    /// `|Pi_n(beta(k,a+1))| <= |Pi_n(beta(k,a))|` for `2 <= a <= k-1`.
    pub chain_holds: bool,
    /// Equality for `2 <= a <= k-2`.
    pub middle_equal: bool,
    pub threshold: usize,
    /// `n` at which `|Pi_n(beta(k,k))| = |Pi_n(beta(k,k-1))|`.
    pub last_link_equal_at: Vec<usize>,
    /// Strict inequality in the last link at every tabulated `n >= threshold`.
    pub strict_from_threshold: bool,
    pub passed: bool,
}

fn serialize_nested<S: Serializer>(v: &[Vec<BigCount>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Row<'a>(&'a [BigCount]);
    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            serialize_counts(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}

pub fn check_beta_threshold(k: usize, n_max: usize, shards: usize) -> BetaChainReport {
    assert!(k >= 3, "need k >= 3");
    let patterns: Vec<SetPartition> = (1..=k).map(|a| SetPartition::beta(k, a)).collect();
    let ns: Vec<usize> = (k + 1..=n_max).collect();
    let mut counts = vec![Vec::new(); k];
    for &n in &ns {
        for (row, c) in counts
            .iter_mut()
            .zip(count_avoiders_many(n, &patterns, shards))
        {
            row.push(big(c));
        }
    }
    let link = |a: usize, i: usize| (&counts[a][i], &counts[a - 1][i]);
    let chain_holds = (2..k).all(|a| {
        (0..ns.len()).all(|i| {
            let (hi, lo) = link(a, i);
            hi <= lo
        })
    });
    let middle_equal = (2..k - 1).all(|a| {
        (0..ns.len()).all(|i| {
            let (hi, lo) = link(a, i);
            hi == lo
        })
    });
    let threshold = 2 * k - 2;
    let last_link_equal_at = (0..ns.len())
        .filter(|&i| counts[k - 1][i] == counts[k - 2][i])
        .map(|i| ns[i])
        .collect();
    let strict_from_threshold = (0..ns.len())
        .filter(|&i| ns[i] >= threshold)
        .all(|i| counts[k - 1][i] < counts[k - 2][i]);
    BetaChainReport {
        k,
        passed: chain_holds && middle_equal && strict_from_threshold,
        ns,
        counts,
        chain_holds,
        middle_equal,
        threshold,
        last_link_equal_at,
        strict_from_threshold,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderViolation {
    pub pattern: String,
    pub n: usize,
    pub count: String,
    pub bound: String,
}

/// Every pattern other than the one-block pattern must stay strictly below it.
#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub k: usize,
    pub n_max: usize,
    pub violations: Vec<OrderViolation>,
    pub passed: bool,
}

pub fn check_conjecture_order(table: &CountTable) -> OrderReport {
    let one_block = SetPartition::single_block(table.k());
    let top = table
        .row(&one_block)
        .expect("one-block pattern is tabulated");
    let mut violations = Vec::new();
    for (p, row) in table.rows().filter(|(p, _)| **p != one_block) {
        for ((n, c), b) in table.ns().zip(row).zip(top) {
            if c >= b {
                violations.push(OrderViolation {
                    pattern: p.to_string(),
                    n,
                    count: c.to_string(),
                    bound: b.to_string(),
                });
            }
        }
    }
    OrderReport {
        k: table.k(),
        n_max: table.n_max(),
        passed: violations.is_empty(),
        violations,
    }
}

/// Is `|Pi_n(chain[0])| < |Pi_n(chain[1])| < ...` at every `n` in `ns`?
/// Returns the first failing `n`, if any.
pub fn check_strict_chain(
    chain: &[SetPartition],
    ns: std::ops::RangeInclusive<usize>,
    shards: usize,
) -> Option<usize> {
    ns.into_iter().find(|&n| {
        let c = count_avoiders_many(n, chain, shards);
        c.windows(2).any(|w| w[0] >= w[1])
    })
}

/// Sizes of the pieces in the split of the `1/24/3`- and `1/2/3/4`-avoiders
/// of `[n]` by number of blocks and by what remains after deleting `n`.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionRow {
    pub n: usize,
    pub avoid_1_24_3: u64,
    pub avoid_1_2_3_4: u64,
    /// Two blocks.
    pub a: u64,
    /// Three blocks with `{n}` a block.
    pub a_star: u64,
    /// `1/24/3`-avoiders leaving at least three blocks once `n` is deleted.
    pub c: u64,
    /// `1/2/3/4`-avoiders leaving exactly three blocks once `n` is deleted.
    pub d: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub rows: Vec<DecompositionRow>,
    /// `1 + a + a* + c` and `1 + a + a* + d` reproduce both totals.
    pub totals_match: bool,
    pub c_below_d: bool,
    /// `c(n+1) <= 3 c(n)`.
    pub c_growth_at_most_triple: bool,
    /// Each `n` with `c(n+1) > 3 c(n)`.
    pub c_growth_failures: Vec<usize>,
    /// `d(n+1) >= 3 d(n)`.
    pub d_growth_at_least_triple: bool,
    /// `d(n+1) = 3 d(n)`; false in general since `d(n) = 3 S(n-1, 3)`.
    pub d_growth_exactly_triple: bool,
    /// `totals_match && c_below_d`: fewer `1/24/3`-avoiders than `1/2/3/4`-avoiders.
    pub passed: bool,
}

pub fn check_three_block_decomposition(n_max: usize) -> DecompositionReport {
    assert!(n_max >= 5, "need n_max >= 5");
    let tau: SetPartition = "1/24/3".parse().expect("pattern");
    let mut rows = Vec::new();
    for n in 5..=n_max {
        let mut m = Matcher::new(&tau);
        let mut row = DecompositionRow {
            n,
            avoid_1_24_3: 0,
            avoid_1_2_3_4: 0,
            a: 0,
            a_star: 0,
            c: 0,
            d: 0,
        };
        let mut cur = RgfCursor::new(n);
        while let Some(w) = cur.current() {
            let blocks = *w.iter().max().expect("n >= 5") as usize + 1;
            let last = w[n - 1];
            let n_alone = w[..n - 1].iter().all(|&x| x != last);
            let rest = blocks - usize::from(n_alone);
            let avoids = !m.matches(w);
            if avoids {
                row.avoid_1_24_3 += 1;
            }
            if blocks <= 3 {
                row.avoid_1_2_3_4 += 1;
            }
            match (blocks, n_alone) {
                (2, _) => row.a += 1,
                (3, true) => row.a_star += 1,
                _ => {}
            }
            if avoids && rest >= 3 {
                row.c += 1;
            }
            if blocks <= 3 && rest == 3 {
                row.d += 1;
            }
            cur.advance();
        }
        rows.push(row);
    }
    let totals_match = rows.iter().all(|r| {
        1 + r.a + r.a_star + r.c == r.avoid_1_24_3 && 1 + r.a + r.a_star + r.d == r.avoid_1_2_3_4
    });
    let c_below_d = rows.iter().all(|r| r.c < r.d);
    let c_growth_failures: Vec<usize> = rows
        .windows(2)
        .filter(|w| w[1].c > 3 * w[0].c)
        .map(|w| w[0].n)
        .collect();
    let c_growth_at_most_triple = c_growth_failures.is_empty();
    let d_growth_at_least_triple = rows.windows(2).all(|w| w[1].d >= 3 * w[0].d);
    let d_growth_exactly_triple = rows.windows(2).all(|w| w[1].d == 3 * w[0].d);
    DecompositionReport {
        passed: totals_match && c_below_d,
        rows,
        totals_match,
        c_below_d,
        c_growth_at_most_triple,
        c_growth_failures,
        d_growth_at_least_triple,
        d_growth_exactly_triple,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::stirling2;

    #[test]
    fn table_shape_and_symmetry() {
        let t = build_table(4, 8, 2);
        assert_eq!(t.patterns().len(), 15);
        assert_eq!(t.ns().count(), 4);
        let b4 = SetPartition::single_block(4);
        assert_eq!(t.row(&b4).unwrap()[0], big(46));
        for (p, row) in t.rows() {
            assert_eq!(t.row(&p.complement()).unwrap(), row);
        }
        let csv = t.to_csv();
        assert!(csv.starts_with("pattern,n,count\n"));
        assert_eq!(csv.lines().count(), 1 + 15 * 4);
    }

    #[test]
    fn k3_classes() {
        let r = wilf_classes(&build_table(3, 9, 2));
        let c = r.class_of("1/2/3").unwrap();
        assert!(c.patterns.contains(&"1 3/2".to_string()));
        assert_eq!(c.status, ClassStatus::Proved);
    }

    #[test]
    fn beta_threshold_k4() {
        let r = check_beta_threshold(4, 8, 2);
        assert!(r.passed);
        assert!(!r.last_link_equal_at.contains(&6));
    }

    #[test]
    fn decomposition() {
        let r = check_three_block_decomposition(8);
        assert_eq!(r.rows[0].avoid_1_24_3, 39);
        assert_eq!(r.rows[0].avoid_1_2_3_4, 41);
        for row in &r.rows {
            assert_eq!(row.a, (1 << (row.n - 1)) - 1);
            assert_eq!(big(row.d), big(3) * stirling2(row.n - 1, 3));
        }
        assert!(r.passed);
        assert!(r.d_growth_at_least_triple);
        assert!(!r.d_growth_exactly_triple);
        assert_eq!(r.c_growth_failures, vec![5]);
    }
}
