//! One-dimensional two-colour cellular automata with a four-cell neighbourhood
//! (two cells to the left, the cell itself, one to the right), run from a
//! single black cell, and k-tuple statistics over their evolutions.
//!
//! Cell `x` at time `t + 1` reads cells `x-2, x-1, x, x+1` at time `t`, so the
//! seed's influence spreads one cell left and two cells right per step: the
//! light cone of row `t` is `[seed - t, seed + 2t]`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;

use crate::distribution::{Coverage, Formalism, FrequencyDistribution, Provenance, Space};
use crate::error::{Error, Result};
use crate::word;

/// Number of rules with a four-cell binary neighbourhood: 2^(2^4).
pub const RULE_COUNT: u32 = 1 << 16;
pub const RULE_SPACE_ID: &str = "r32c2";
pub const DEFAULT_STEPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaRule(u16);

impl CaRule {
    pub fn new(number: u32) -> Result<Self> {
        u16::try_from(number)
            .map(CaRule)
            .map_err(|_| Error::InvalidArgument(format!("rule {number} outside 0..{RULE_COUNT}")))
    }

    /// Builds the rule from its value on each neighbourhood `[c-2, c-1, c0, c+1]`.
    pub fn from_fn(f: impl Fn([u8; 4]) -> u8) -> Self {
        let mut n = 0u16;
        for v in 0..16u16 {
            let cells = [(v >> 3) as u8 & 1, (v >> 2) as u8 & 1, (v >> 1) as u8 & 1, v as u8 & 1];
            if f(cells) & 1 == 1 {
                n |= 1 << v;
            }
        }
        CaRule(n)
    }

    pub fn number(&self) -> u32 {
        self.0 as u32
    }

    /// New value for a neighbourhood encoded as a 4-bit number, leftmost cell
    /// most significant.
    #[inline]
    pub fn apply(&self, neighbourhood: u8) -> u8 {
        ((self.0 >> neighbourhood) & 1) as u8
    }

    /// The rule that acts on complemented configurations the way `self` acts
    /// on the originals: `r'(x) = 1 - r(!x)`.
    pub fn conjugate(&self) -> CaRule {
        CaRule(!self.0.reverse_bits())
    }
}

/// A stored evolution. Rows share one coordinate system; cells outside the
/// stored window equal that row's uniform background.
#[derive(Clone, Debug)]
pub struct CaEvolution {
    rule: CaRule,
    rows: Vec<Vec<u8>>,
    background: Vec<u8>,
    seed: usize,
}

impl CaEvolution {
    pub fn rule(&self) -> CaRule {
        self.rule
    }

    pub fn steps(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn background(&self, t: usize) -> u8 {
        self.background[t]
    }

    /// Column of the initial black cell.
    pub fn seed(&self) -> usize {
        self.seed
    }

    /// Columns causally reachable from the seed at row `t`.
    pub fn light_cone(&self, t: usize) -> Range<usize> {
        self.seed - t..self.seed + 2 * t + 1
    }

    pub fn cone_row(&self, t: usize) -> &[u8] {
        &self.rows[t][self.light_cone(t)]
    }

    /// Plain-text dump, one row per line, `#` for black.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            s.extend(row.iter().map(|&c| if c == 1 { '#' } else { '.' }));
            s.push('\n');
        }
        s
    }
}

/// Evolves `rule` for `steps` steps from a single black cell.
pub fn evolve(rule: CaRule, steps: usize) -> CaEvolution {
    evolve_with_margin(rule, steps, 2 * steps + 2)
}

/// Like [`evolve`] with `margin` stored cells on each side of the seed.
/// Any margin of at least `2 * steps` covers every light cone.
pub fn evolve_with_margin(rule: CaRule, steps: usize, margin: usize) -> CaEvolution {
    run(rule, steps, margin, 0)
}

/// Evolution from the complementary initial condition: one white cell on a
/// black background.
pub fn evolve_inverted(rule: CaRule, steps: usize) -> CaEvolution {
    run(rule, steps, 2 * steps + 2, 1)
}

fn run(rule: CaRule, steps: usize, margin: usize, mut bg: u8) -> CaEvolution {
    let margin = margin.max(2 * steps);
    let width = 2 * margin + 1;
    let seed = margin;
    let mut rows = Vec::with_capacity(steps + 1);
    let mut background = Vec::with_capacity(steps + 1);
    let mut row = vec![bg; width];
    row[seed] = 1 - bg;
    rows.push(row);
    background.push(bg);
    for _ in 0..steps {
        let prev = rows.last().expect("row 0 exists");
        let at = |i: usize| -> u8 { prev.get(i).copied().unwrap_or(bg) };
        let mut next = vec![0u8; width];
        // rolling neighbourhood [x-2, x-1, x, x+1]
        let mut v = bg << 3 | bg << 2 | at(0) << 1 | at(1);
        for (x, cell) in next.iter_mut().enumerate() {
            *cell = rule.apply(v);
            v = (v << 1 & 0b1110) | at(x + 2);
        }
        bg = rule.apply(if bg == 1 { 15 } else { 0 });
        rows.push(next);
        background.push(bg);
    }
    CaEvolution {
        rule,
        rows,
        background,
        seed,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TuplePolicy {
    /// Consecutive k-blocks from the left edge of the cone; the remainder is dropped.
    #[default]
    NonOverlapping,
    /// Every contiguous window of length k.
    Sliding,
}

impl fmt::Display for TuplePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TuplePolicy::NonOverlapping => "nonoverlapping",
            TuplePolicy::Sliding => "sliding",
        })
    }
}

impl FromStr for TuplePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonoverlapping" => Ok(TuplePolicy::NonOverlapping),
            "sliding" => Ok(TuplePolicy::Sliding),
            _ => Err(Error::InvalidArgument(format!("unknown tuple policy {s:?}"))),
        }
    }
}

/// Which rows contribute tuples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RowSelection {
    /// Every row after the initial one.
    #[default]
    All,
    /// Only the final row.
    Last,
}

impl fmt::Display for RowSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowSelection::All => "all",
            RowSelection::Last => "last",
        })
    }
}

impl FromStr for RowSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(RowSelection::All),
            "last" => Ok(RowSelection::Last),
            _ => Err(Error::InvalidArgument(format!("unknown row selection {s:?}"))),
        }
    }
}

/// Initial conditions each rule is run from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Seeds {
    /// One black cell on white.
    Black,
    /// Also one white cell on black. Counted as the complement of every
    /// black-seed tuple: over the whole rule space, `conjugate(r)` run from the
    /// white seed is the cellwise complement of `r` run from the black seed.
    #[default]
    Both,
}

impl fmt::Display for Seeds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Seeds::Black => "black",
            Seeds::Both => "both",
        })
    }
}

impl FromStr for Seeds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "black" => Ok(Seeds::Black),
            "both" => Ok(Seeds::Both),
            _ => Err(Error::InvalidArgument(format!("unknown seed set {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleSpec {
    pub k: usize,
    pub policy: TuplePolicy,
    pub rows: RowSelection,
    pub seeds: Seeds,
}

impl TupleSpec {
    pub fn new(k: usize) -> Self {
        TupleSpec {
            k,
            policy: TuplePolicy::default(),
            rows: RowSelection::default(),
            seeds: Seeds::default(),
        }
    }

    pub fn with_policy(mut self, policy: TuplePolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_rows(mut self, rows: RowSelection) -> Self {
        self.rows = rows;
        self
    }

    pub fn with_seeds(mut self, seeds: Seeds) -> Self {
        self.seeds = seeds;
        self
    }

    fn provenance(&self, steps: usize, rules: Range<u32>) -> Provenance {
        Provenance::new(
            Formalism::Ca,
            Space::RuleSpace(RULE_SPACE_ID.to_string()),
            steps as u64,
        )
        .with_coverage(Coverage::range(rules.start as u128..rules.end as u128))
        .with_param("k", self.k)
        .with_param("policy", self.policy)
        .with_param("rows", self.rows)
        .with_param("seeds", self.seeds)
    }

    fn check(&self, steps: usize) -> Result<()> {
        let widest = 3 * steps + 1;
        if self.k == 0 || self.k > widest || steps == 0 {
            return Err(Error::TupleTooLong {
                k: self.k,
                widest: if steps == 0 { 0 } else { widest },
            });
        }
        Ok(())
    }
}

// Small k counts into a dense table indexed by the tuple's bits; large k
// falls back to a map keyed by the tuple text.
enum TupleCounter {
    Dense { k: usize, counts: Vec<u64> },
    Sparse(HashMap<String, u64>),
}

const DENSE_MAX_K: usize = 20;

impl TupleCounter {
    fn new(k: usize) -> Self {
        if k <= DENSE_MAX_K {
            TupleCounter::Dense {
                k,
                counts: vec![0; 1 << k],
            }
        } else {
            TupleCounter::Sparse(HashMap::new())
        }
    }

    fn add(&mut self, cells: &[u8]) {
        match self {
            TupleCounter::Dense { counts, .. } => {
                let code = cells.iter().fold(0usize, |acc, &c| acc << 1 | c as usize);
                counts[code] += 1;
            }
            TupleCounter::Sparse(map) => *map.entry(word::from_bits(cells)).or_insert(0) += 1,
        }
    }

    fn total(&self) -> u64 {
        match self {
            TupleCounter::Dense { counts, .. } => counts.iter().sum(),
            TupleCounter::Sparse(map) => map.values().sum(),
        }
    }

    fn absorb(&mut self, other: TupleCounter) {
        match (self, other) {
            (TupleCounter::Dense { counts: a, .. }, TupleCounter::Dense { counts: b, .. }) => {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y)
            }
            (TupleCounter::Sparse(a), TupleCounter::Sparse(b)) => {
                for (s, c) in b {
                    *a.entry(s).or_insert(0) += c;
                }
            }
            _ => unreachable!("counters for one run share k"),
        }
    }

    fn fill(self, dist: &mut FrequencyDistribution, seeds: Seeds) {
        match self {
            TupleCounter::Dense { k, counts } => {
                let mask = (1usize << k) - 1;
                for code in 0..counts.len() {
                    let c = match seeds {
                        Seeds::Black => counts[code],
                        Seeds::Both => counts[code] + counts[!code & mask],
                    };
                    if c > 0 {
                        dist.add(&format!("{code:0k$b}"), c);
                    }
                }
            }
            TupleCounter::Sparse(map) => {
                for (s, c) in map {
                    dist.add(&s, c);
                    if seeds == Seeds::Both {
                        dist.add(&word::complement(&s), c);
                    }
                }
            }
        }
    }
}

fn count_tuples(evo: &CaEvolution, spec: &TupleSpec, counter: &mut TupleCounter) {
    let first = match spec.rows {
        RowSelection::All => 1,
        RowSelection::Last => evo.steps(),
    };
    for t in first..=evo.steps() {
        let cone = evo.cone_row(t);
        if cone.len() < spec.k {
            continue;
        }
        match spec.policy {
            TuplePolicy::NonOverlapping => cone.chunks_exact(spec.k).for_each(|c| counter.add(c)),
            TuplePolicy::Sliding => cone.windows(spec.k).for_each(|c| counter.add(c)),
        }
    }
}

/// k-tuple frequencies of one evolution, restricted to the light cone.
pub fn extract_tuples(evo: &CaEvolution, spec: TupleSpec) -> Result<FrequencyDistribution> {
    let steps = evo.steps();
    spec.check(steps)?;
    if spec.rows == RowSelection::Last && evo.light_cone(steps).len() < spec.k {
        return Err(Error::TupleTooLong {
            k: spec.k,
            widest: evo.light_cone(steps).len(),
        });
    }
    let rule = evo.rule().number();
    let mut counter = TupleCounter::new(spec.k);
    count_tuples(evo, &spec, &mut counter);
    let mut dist = FrequencyDistribution::new(spec.provenance(steps, rule..rule + 1));
    dist.record_enumerated(1);
    if counter.total() > 0 {
        dist.record_halting(1);
    }
    counter.fill(&mut dist, spec.seeds);
    Ok(dist)
}

const CHUNK: u32 = 256;

/// Evolves every rule in `rules` and pools their k-tuples.
///
/// `enumerated` is the number of rules and `halting` the number of rules that
/// contributed at least one tuple.
pub fn rulespace_distribution(
    spec: TupleSpec,
    steps: usize,
    rules: Range<u32>,
) -> Result<FrequencyDistribution> {
    if rules.is_empty() {
        return Err(Error::EmptyRange);
    }
    if rules.end > RULE_COUNT {
        return Err(Error::InvalidArgument(format!(
            "rule range {rules:?} outside 0..{RULE_COUNT}"
        )));
    }
    spec.check(steps)?;

    let starts: Vec<u32> = rules.clone().step_by(CHUNK as usize).collect();
    let partials: Vec<(TupleCounter, u64)> = starts
        .par_iter()
        .map(|&start| {
            let mut counter = TupleCounter::new(spec.k);
            let mut contributing = 0;
            for r in start..(start + CHUNK).min(rules.end) {
                let evo = evolve(CaRule(r as u16), steps);
                let mut local = TupleCounter::new(spec.k);
                count_tuples(&evo, &spec, &mut local);
                if local.total() > 0 {
                    contributing += 1;
                }
                counter.absorb(local);
            }
            (counter, contributing)
        })
        .collect();

    let mut total = TupleCounter::new(spec.k);
    let mut contributing = 0;
    for (c, n) in partials {
        total.absorb(c);
        contributing += n;
    }
    let mut dist = FrequencyDistribution::new(spec.provenance(steps, rules.clone()));
    dist.record_enumerated((rules.end - rules.start) as u64);
    dist.record_halting(contributing);
    total.fill(&mut dist, spec.seeds);
    Ok(dist)
}
