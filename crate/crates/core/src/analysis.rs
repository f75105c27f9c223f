//! Frequency rankings and rank agreement between distributions.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::distribution::{record_order, FrequencyDistribution};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedEntry {
    pub string: String,
    pub count: u64,
    /// 1-based; tied entries share the mean of the positions they span.
    pub rank: f64,
}

/// Which strings a ranking covers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    #[default]
    All,
    /// Strings of exactly this length.
    Length(usize),
    /// Strings no longer than this.
    UpTo(usize),
}

impl Scope {
    pub fn admits(&self, s: &str) -> bool {
        match *self {
            Scope::All => true,
            Scope::Length(k) => s.len() == k,
            Scope::UpTo(k) => s.len() <= k,
        }
    }
}

impl From<Option<usize>> for Scope {
    fn from(len: Option<usize>) -> Self {
        len.map_or(Scope::All, Scope::Length)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedClassification {
    pub entries: Vec<RankedEntry>,
    pub scope: Scope,
}

impl RankedClassification {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, s: &str) -> Option<&RankedEntry> {
        self.entries.iter().find(|e| e.string == s)
    }

    /// Runs of equal counts, most frequent first.
    pub fn tie_groups(&self) -> Vec<&[RankedEntry]> {
        self.entries
            .chunk_by(|a, b| a.count == b.count)
            .collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("string\tcount\trank\n");
        for e in &self.entries {
            writeln!(out, "{}\t{}\t{}", e.string, e.count, e.rank).unwrap();
        }
        out
    }
}

/// Ranks the strings of `dist` admitted by `scope` by descending count.
/// Entries within a tie are ordered by length, then lexicographically.
pub fn rank(dist: &FrequencyDistribution, scope: impl Into<Scope>) -> Result<RankedClassification> {
    let scope = scope.into();
    let mut pairs: Vec<(&str, u64)> = dist
        .counts()
        .iter()
        .filter(|(s, _)| scope.admits(s))
        .map(|(s, &c)| (s.as_str(), c))
        .collect();
    if pairs.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    pairs.sort_by(record_order);
    let counts: Vec<u64> = pairs.iter().map(|p| p.1).collect();
    let ranks = average_ranks(&counts);
    Ok(RankedClassification {
        entries: pairs
            .into_iter()
            .zip(ranks)
            .map(|((s, count), rank)| RankedEntry {
                string: s.to_string(),
                count,
                rank,
            })
            .collect(),
        scope,
    })
}

/// Average ranks of `values`, largest value ranked 1.
pub fn average_ranks(values: &[u64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].cmp(&values[a]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i+1 ..= j share their mean
        let mean = (i + 1 + j) as f64 / 2.0;
        for &o in &order[i..j] {
            ranks[o] = mean;
        }
        i = j;
    }
    ranks
}

/// Pearson correlation of two rank vectors.
///
/// When either vector is constant the correlation is undefined; this returns
/// 1.0 if both are constant (the rankings agree) and 0.0 otherwise.
pub fn rank_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "rank vectors differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    if n < 2 {
        return Err(Error::SharedSupportTooSmall(n));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n as f64;
    let (ma, mb) = (mean(a), mean(b));
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    Ok(match (saa == 0.0, sbb == 0.0) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        _ => (sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0),
    })
}

/// Strings ranked in both classifications, in `a`'s order.
fn shared<'a>(a: &'a RankedClassification, b: &RankedClassification) -> Vec<(&'a str, u64, u64)> {
    let in_b: HashMap<&str, u64> = b.entries.iter().map(|e| (e.string.as_str(), e.count)).collect();
    a.entries
        .iter()
        .filter_map(|e| in_b.get(e.string.as_str()).map(|&cb| (e.string.as_str(), e.count, cb)))
        .collect()
}

/// Spearman's rho over the strings both classifications contain. Ranks are
/// recomputed within the shared support, ties averaged.
pub fn spearman(a: &RankedClassification, b: &RankedClassification) -> Result<f64> {
    let common = shared(a, b);
    if common.len() < 2 {
        return Err(Error::SharedSupportTooSmall(common.len()));
    }
    let ca: Vec<u64> = common.iter().map(|c| c.1).collect();
    let cb: Vec<u64> = common.iter().map(|c| c.2).collect();
    rank_correlation(&average_ranks(&ca), &average_ranks(&cb))
}

/// Length-6 tie groups reported for the exhaustive 3-state machine run, in
/// order of decreasing frequency.
pub const REFERENCE_LENGTH6_GROUPS: [&[&str]; 6] = [
    &["000000", "111111"],
    &["000001", "100000", "111110", "011111"],
    &["000100", "001000", "111011", "110111"],
    &["001001", "100100", "110110", "011011"],
    &["010110"],
    &["101001", "100101", "011010"],
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupAgreement {
    pub members: Vec<String>,
    pub counts_a: Vec<u64>,
    pub counts_b: Vec<u64>,
    pub tied_in_a: bool,
    pub tied_in_b: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TupleRow {
    pub tuple: String,
    pub count_a: u64,
    pub count_b: u64,
    pub freq_a: f64,
    pub freq_b: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub k: usize,
    pub support_a: usize,
    pub support_b: usize,
    pub shared: usize,
    pub rho: f64,
    pub top_n: usize,
    pub top_overlap: usize,
    /// Only filled for `k == 6`.
    pub groups: Vec<GroupAgreement>,
    /// Union of both supports in lexicographic order; frequencies are
    /// normalized within each distribution's length-k strings.
    pub table: Vec<TupleRow>,
}

pub const TOP_N: usize = 10;

/// Compares the length-`k` strings of two distributions.
pub fn compare(
    a: &FrequencyDistribution,
    b: &FrequencyDistribution,
    k: usize,
) -> Result<ComparisonReport> {
    let ra = rank(a, Some(k))?;
    let rb = rank(b, Some(k))?;
    let common = shared(&ra, &rb);
    if common.is_empty() {
        return Err(Error::SharedSupportTooSmall(0));
    }
    let rho = spearman(&ra, &rb)?;

    let top = |r: &RankedClassification| -> HashSet<String> {
        r.entries.iter().take(TOP_N).map(|e| e.string.clone()).collect()
    };
    let top_overlap = top(&ra).intersection(&top(&rb)).count();

    let groups = if k == 6 {
        REFERENCE_LENGTH6_GROUPS
            .iter()
            .map(|g| {
                let counts_a: Vec<u64> = g.iter().map(|s| a.count(s)).collect();
                let counts_b: Vec<u64> = g.iter().map(|s| b.count(s)).collect();
                GroupAgreement {
                    members: g.iter().map(|s| s.to_string()).collect(),
                    tied_in_a: counts_a.windows(2).all(|w| w[0] == w[1]),
                    tied_in_b: counts_b.windows(2).all(|w| w[0] == w[1]),
                    counts_a,
                    counts_b,
                }
            })
            .collect()
    } else {
        Vec::new()
    };

    let mass = |r: &RankedClassification| r.entries.iter().map(|e| e.count).sum::<u64>() as f64;
    let (ma, mb) = (mass(&ra), mass(&rb));
    let mut tuples: Vec<&str> = ra
        .entries
        .iter()
        .chain(&rb.entries)
        .map(|e| e.string.as_str())
        .collect();
    tuples.sort_unstable();
    tuples.dedup();
    let table = tuples
        .into_iter()
        .map(|t| {
            let (ca, cb) = (a.count(t), b.count(t));
            TupleRow {
                tuple: t.to_string(),
                count_a: ca,
                count_b: cb,
                freq_a: ca as f64 / ma,
                freq_b: cb as f64 / mb,
            }
        })
        .collect();

    Ok(ComparisonReport {
        k,
        support_a: ra.len(),
        support_b: rb.len(),
        shared: common.len(),
        rho,
        top_n: TOP_N,
        top_overlap,
        groups,
        table,
    })
}

impl ComparisonReport {
    /// Summary block (`# key=value`) followed by the per-tuple table.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# k={}", self.k).unwrap();
        writeln!(out, "# support_a={}", self.support_a).unwrap();
        writeln!(out, "# support_b={}", self.support_b).unwrap();
        writeln!(out, "# shared={}", self.shared).unwrap();
        writeln!(out, "# rho={}", self.rho).unwrap();
        writeln!(out, "# top{}_overlap={}", self.top_n, self.top_overlap).unwrap();
        for (i, g) in self.groups.iter().enumerate() {
            writeln!(
                out,
                "# group{}={} tied_a={} tied_b={}",
                i + 1,
                g.members.join(","),
                g.tied_in_a,
                g.tied_in_b
            )
            .unwrap();
        }
        out.push_str("tuple\tcount_a\tcount_b\tfreq_a\tfreq_b\n");
        for r in &self.table {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                r.tuple, r.count_a, r.count_b, r.freq_a, r.freq_b
            )
            .unwrap();
        }
        out
    }
}
