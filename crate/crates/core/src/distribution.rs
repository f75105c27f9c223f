//! Output frequency distributions, complexity estimates and the on-disk
//! distribution format.
//!
//! A distribution file is LF-terminated text: `# key=value` header lines
//! followed by one `<string>\t<count>` record per line, sorted by descending
//! count and then by ascending length and lexicographic order.
//!
//! ```text
//! # formalism=tm
//! # n=2
//! # bound=6
//! # enumerated=10000
//! # halting=3044
//! # shards=0..10000
//! # blanks=01
//! # encoding=v1
//! 0    2000
//! 1    2000
//! ...
//! ```

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{self, Write};
use std::ops::Range;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tm::RunOutcome;
use crate::word;

pub const ENCODING_VERSION: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formalism {
    Tm,
    Ca,
    Tag,
}

impl fmt::Display for Formalism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formalism::Tm => "tm",
            Formalism::Ca => "ca",
            Formalism::Tag => "tag",
        })
    }
}

impl FromStr for Formalism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tm" => Ok(Formalism::Tm),
            "ca" => Ok(Formalism::Ca),
            "tag" => Ok(Formalism::Tag),
            other => Err(Error::InvalidArgument(format!("unknown formalism {other:?}"))),
        }
    }
}

/// Which space the runs were drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// Turing machines with this many states.
    States(u32),
    /// A named rule space such as `r32c2`.
    RuleSpace(String),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::States(n) => write!(f, "n={n}"),
            Space::RuleSpace(id) => write!(f, "rulespace={id}"),
        }
    }
}

/// Sorted, disjoint, non-adjacent index intervals processed so far.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coverage(Vec<Range<u128>>);

impl Coverage {
    pub fn empty() -> Self {
        Coverage(Vec::new())
    }

    pub fn range(r: Range<u128>) -> Self {
        if r.is_empty() {
            Coverage::empty()
        } else {
            Coverage(vec![r])
        }
    }

    pub fn intervals(&self) -> &[Range<u128>] {
        &self.0
    }

    pub fn len(&self) -> u128 {
        self.0.iter().map(|r| r.end - r.start).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Union of two coverages; overlapping intervals are an error.
    pub fn union(&self, other: &Coverage) -> Result<Coverage> {
        let mut all: Vec<Range<u128>> = self.0.iter().chain(&other.0).cloned().collect();
        all.sort_by_key(|r| r.start);
        let mut out: Vec<Range<u128>> = Vec::with_capacity(all.len());
        for r in all {
            match out.last_mut() {
                Some(last) if r.start < last.end => {
                    return Err(Error::OverlappingShards(self.to_string(), other.to_string()));
                }
                Some(last) if r.start == last.end => last.end = r.end,
                _ => out.push(r),
            }
        }
        Ok(Coverage(out))
    }
}

impl fmt::Display for Coverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("none");
        }
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}..{}", r.start, r.end)?;
        }
        Ok(())
    }
}

impl FromStr for Coverage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "none" {
            return Ok(Coverage::empty());
        }
        let bad = || Error::InvalidArgument(format!("invalid shard coverage {s:?}"));
        let mut out = Coverage::empty();
        for part in s.split(',') {
            let (a, b) = part.split_once("..").ok_or_else(bad)?;
            let a: u128 = a.parse().map_err(|_| bad())?;
            let b: u128 = b.parse().map_err(|_| bad())?;
            if a >= b {
                return Err(bad());
            }
            out = out.union(&Coverage::range(a..b))?;
        }
        Ok(out)
    }
}

/// Where a distribution came from. Two distributions can only be merged when
/// everything except the coverage agrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub formalism: Formalism,
    pub space: Space,
    pub bound: u64,
    pub coverage: Coverage,
    /// Formalism-specific run parameters, written as extra header lines.
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(formalism: Formalism, space: Space, bound: u64) -> Self {
        Provenance {
            formalism,
            space,
            bound,
            coverage: Coverage::empty(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_coverage(mut self, coverage: Coverage) -> Self {
        self.coverage = coverage;
        self
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn check_compatible(&self, other: &Provenance) -> Result<()> {
        fn mismatch(field: &'static str, a: impl ToString, b: impl ToString) -> Error {
            Error::MetadataMismatch {
                field,
                left: a.to_string(),
                right: b.to_string(),
            }
        }
        if self.formalism != other.formalism {
            return Err(mismatch("formalism", self.formalism, other.formalism));
        }
        if self.space != other.space {
            return Err(mismatch("space", &self.space, &other.space));
        }
        if self.bound != other.bound {
            return Err(mismatch("bound", self.bound, other.bound));
        }
        if self.params != other.params {
            return Err(mismatch(
                "params",
                format!("{:?}", self.params),
                format!("{:?}", other.params),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyDistribution {
    counts: HashMap<String, u64>,
    enumerated: u64,
    halting: u64,
    undecided: Option<u64>,
    meta: Provenance,
}

impl FrequencyDistribution {
    pub fn new(meta: Provenance) -> Self {
        FrequencyDistribution {
            counts: HashMap::new(),
            enumerated: 0,
            halting: 0,
            undecided: None,
            meta,
        }
    }

    /// Like [`new`](Self::new) but tracking runs left undecided by a cutoff.
    pub fn with_undecided(meta: Provenance) -> Self {
        FrequencyDistribution {
            undecided: Some(0),
            ..Self::new(meta)
        }
    }

    pub fn meta(&self) -> &Provenance {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut Provenance {
        &mut self.meta
    }

    pub fn enumerated(&self) -> u64 {
        self.enumerated
    }

    pub fn halting(&self) -> u64 {
        self.halting
    }

    pub fn undecided(&self) -> Option<u64> {
        self.undecided
    }

    pub fn count(&self, s: &str) -> u64 {
        self.counts.get(s).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &HashMap<String, u64> {
        &self.counts
    }

    /// Number of distinct strings.
    pub fn support(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total count over all strings; the normalizer for [`sl`](Self::sl).
    pub fn mass(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Adds `count` occurrences of `s`. The string is assumed binary.
    pub fn add(&mut self, s: &str, count: u64) {
        if count == 0 {
            return;
        }
        match self.counts.get_mut(s) {
            Some(c) => *c += count,
            None => {
                self.counts.insert(s.to_string(), count);
            }
        }
    }

    pub fn record_enumerated(&mut self, n: u64) {
        self.enumerated += n;
    }

    pub fn record_halting(&mut self, n: u64) {
        self.halting += n;
    }

    pub fn record_undecided(&mut self, n: u64) {
        *self.undecided.get_or_insert(0) += n;
    }

    /// Counts the output of a halting run. Callers account for
    /// `enumerated` themselves, once per machine processed.
    pub fn accumulate(&mut self, outcome: &RunOutcome) -> Result<()> {
        match outcome {
            RunOutcome::Halted { output, .. } => {
                self.add(output, 1);
                self.halting += 1;
                Ok(())
            }
            RunOutcome::BoundExceeded { .. } => Err(Error::NonHaltingOutcome),
        }
    }

    /// Pointwise sum of two partial distributions over disjoint shards.
    pub fn merge(mut self, other: FrequencyDistribution) -> Result<Self> {
        self.meta.check_compatible(&other.meta)?;
        if self.undecided.is_some() != other.undecided.is_some() {
            return Err(Error::MetadataMismatch {
                field: "undecided",
                left: format!("{:?}", self.undecided),
                right: format!("{:?}", other.undecided),
            });
        }
        self.meta.coverage = self.meta.coverage.union(&other.meta.coverage)?;
        let (mut big, small) = if self.counts.len() >= other.counts.len() {
            (self.counts, other.counts)
        } else {
            (other.counts, self.counts)
        };
        for (s, c) in small {
            *big.entry(s).or_insert(0) += c;
        }
        self.counts = big;
        self.enumerated += other.enumerated;
        self.halting += other.halting;
        self.undecided = self.undecided.zip(other.undecided).map(|(a, b)| a + b);
        Ok(self)
    }

    /// Merges a sequence of partials in order. Returns `None` for an empty
    /// sequence.
    pub fn merge_all<I>(parts: I) -> Result<Option<Self>>
    where
        I: IntoIterator<Item = FrequencyDistribution>,
    {
        let mut acc: Option<Self> = None;
        for part in parts {
            acc = Some(match acc {
                None => part,
                Some(a) => a.merge(part)?,
            });
        }
        Ok(acc)
    }

    /// Empirical output probability of `s`; 0 when `s` never occurs.
    pub fn sl(&self, s: &str) -> Result<f64> {
        let mass = self.mass();
        if mass == 0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(self.count(s) as f64 / mass as f64)
    }

    /// Complexity estimate `-log2(sl(s))` via the coding theorem.
    pub fn k_estimate(&self, s: &str) -> Result<ComplexityEstimate> {
        let sl = self.sl(s)?;
        if sl == 0.0 {
            return Err(Error::NoEstimate(s.to_string()));
        }
        Ok(ComplexityEstimate::from_probability(s, sl))
    }

    /// Estimates for every string, in canonical record order.
    pub fn estimates(&self) -> Result<Vec<ComplexityEstimate>> {
        let mass = self.mass();
        if mass == 0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(self
            .sorted()
            .into_iter()
            .map(|(s, c)| ComplexityEstimate::from_probability(s, c as f64 / mass as f64))
            .collect())
    }

    /// Records in file order: descending count, then length, then lexicographic.
    pub fn sorted(&self) -> Vec<(&str, u64)> {
        let mut v: Vec<(&str, u64)> = self.counts.iter().map(|(s, &c)| (s.as_str(), c)).collect();
        v.sort_by(record_order);
        v
    }

    /// Restricts to strings of length `len`, keeping metadata and totals.
    pub fn of_length(&self, len: usize) -> FrequencyDistribution {
        FrequencyDistribution {
            counts: self
                .counts
                .iter()
                .filter(|(s, _)| s.len() == len)
                .map(|(s, &c)| (s.clone(), c))
                .collect(),
            ..self.clone_empty()
        }
    }

    fn clone_empty(&self) -> FrequencyDistribution {
        FrequencyDistribution {
            counts: HashMap::new(),
            enumerated: self.enumerated,
            halting: self.halting,
            undecided: self.undecided,
            meta: self.meta.clone(),
        }
    }

    /// Number of outputs each halting run contributes: 2 when every run is
    /// also counted from the complementary blank tape, otherwise 1.
    pub fn outputs_per_halt(&self) -> u64 {
        match self.meta.params.get("blanks").map(String::as_str) {
            Some("01") => 2,
            _ => 1,
        }
    }

    /// Checks internal consistency: binary keys, positive counts, and for
    /// machine-like formalisms `mass == halting * outputs_per_halt`.
    pub fn validate(&self) -> Result<()> {
        for (s, &c) in &self.counts {
            word::check(s)?;
            if c == 0 {
                return Err(Error::InvalidArgument(format!("zero count for {s:?}")));
            }
        }
        if self.meta.formalism != Formalism::Ca {
            if self.halting > self.enumerated {
                return Err(Error::InvalidArgument(format!(
                    "halting {} exceeds enumerated {}",
                    self.halting, self.enumerated
                )));
            }
            let expected = self.halting * self.outputs_per_halt();
            if self.mass() != expected {
                return Err(Error::InvalidArgument(format!(
                    "counts sum to {} but halting runs account for {expected}",
                    self.mass()
                )));
            }
        }
        Ok(())
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        let m = &self.meta;
        writeln!(w, "# formalism={}", m.formalism)?;
        writeln!(w, "# {}", m.space)?;
        writeln!(w, "# bound={}", m.bound)?;
        writeln!(w, "# enumerated={}", self.enumerated)?;
        writeln!(w, "# halting={}", self.halting)?;
        if let Some(u) = self.undecided {
            writeln!(w, "# undecided={u}")?;
        }
        writeln!(w, "# shards={}", m.coverage)?;
        for (k, v) in &m.params {
            writeln!(w, "# {k}={v}")?;
        }
        writeln!(w, "# encoding={ENCODING_VERSION}")?;
        for (s, c) in self.sorted() {
            writeln!(w, "{s}\t{c}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("distribution text is ASCII")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = io::BufWriter::new(file);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }
}

impl FromStr for FrequencyDistribution {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse { line, message };

        let mut header: BTreeMap<String, String> = BTreeMap::new();
        let mut order: Vec<String> = Vec::new();
        let mut counts = HashMap::new();
        let mut in_body = false;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            if let Some(rest) = line.strip_prefix("# ") {
                if in_body {
                    return Err(err(lineno, "header line after records".into()));
                }
                let (k, v) = rest
                    .split_once('=')
                    .ok_or_else(|| err(lineno, format!("malformed header {line:?}")))?;
                if header.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(err(lineno, format!("duplicate header {k:?}")));
                }
                order.push(k.to_string());
                continue;
            }
            in_body = true;
            let (s, c) = line
                .split_once('\t')
                .ok_or_else(|| err(lineno, format!("expected <string>\\t<count>, got {line:?}")))?;
            if !word::is_binary(s) {
                return Err(err(lineno, format!("not a binary string: {s:?}")));
            }
            let c: u64 = c
                .parse()
                .map_err(|_| err(lineno, format!("bad count {c:?}")))?;
            if c == 0 {
                return Err(err(lineno, "zero count".into()));
            }
            if counts.insert(s.to_string(), c).is_some() {
                return Err(err(lineno, format!("duplicate record {s:?}")));
            }
        }

        let mut take = |key: &str| -> Result<String> {
            header
                .remove(key)
                .ok_or_else(|| err(0, format!("missing header {key:?}")))
        };
        let num = |key: &str, v: String| -> Result<u64> {
            v.parse()
                .map_err(|_| err(0, format!("header {key:?} is not an integer: {v:?}")))
        };

        let encoding = take("encoding")?;
        if encoding != ENCODING_VERSION {
            return Err(err(0, format!("unsupported encoding {encoding:?}")));
        }
        let formalism: Formalism = take("formalism")?.parse()?;
        let space = match (take("n"), take("rulespace")) {
            (Ok(n), Err(_)) => Space::States(num("n", n)? as u32),
            (Err(_), Ok(id)) => Space::RuleSpace(id),
            _ => return Err(err(0, "exactly one of n= or rulespace= is required".into())),
        };
        let bound = num("bound", take("bound")?)?;
        let enumerated = num("enumerated", take("enumerated")?)?;
        let halting = num("halting", take("halting")?)?;
        let undecided = match take("undecided") {
            Ok(v) => Some(num("undecided", v)?),
            Err(_) => None,
        };
        let coverage: Coverage = take("shards")?.parse()?;

        let dist = FrequencyDistribution {
            counts,
            enumerated,
            halting,
            undecided,
            meta: Provenance {
                formalism,
                space,
                bound,
                coverage,
                params: header,
            },
        };
        dist.validate()?;
        Ok(dist)
    }
}

/// Descending count, then ascending length, then lexicographic.
pub fn record_order(a: &(&str, u64), b: &(&str, u64)) -> Ordering {
    b.1.cmp(&a.1).then_with(|| word::length_lex(a.0, b.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityEstimate {
    pub string: String,
    pub sl: f64,
    pub k: f64,
    pub program_length: u64,
}

impl ComplexityEstimate {
    /// `k = -log2(sl)`, `program_length = ceil(k)`. Expects `0 < sl <= 1`.
    pub fn from_probability(s: &str, sl: f64) -> Self {
        let k = if sl >= 1.0 { 0.0 } else { -sl.log2() };
        ComplexityEstimate {
            string: s.to_string(),
            sl,
            k,
            program_length: k.ceil() as u64,
        }
    }
}

/// Shannon entropy of the symbol frequencies of `s`, in bits per symbol.
pub fn shannon_entropy(s: &str) -> Result<f64> {
    word::check(s)?;
    let ones = s.bytes().filter(|&b| b == b'1').count();
    let zeros = s.len() - ones;
    let h = |c: usize| {
        let x = c as f64 / s.len() as f64;
        if c == 0 { 0.0 } else { -x * x.log2() }
    };
    // summed in a fixed order so that complements agree bit for bit
    Ok(h(ones.min(zeros)) + h(ones.max(zeros)))
}
