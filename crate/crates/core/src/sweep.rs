//! Exhaustive and sampled Turing machine sweeps, split into shards and run
//! on a worker pool.
//!
//! Work is cut into fixed-size chunks of machine (or sample) indices. Each
//! worker builds a private partial distribution per chunk and the partials
//! are merged in chunk order, so the result does not depend on the number of
//! workers.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{classify, HaltingPolicy, Verdict};
use crate::distribution::{Coverage, Formalism, FrequencyDistribution, Provenance, Space};
use crate::error::{Error, Result};
use crate::tm::{machine_count, MachineIndex, RunOutcome, Simulator, TransitionTable};
use crate::word;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "CTM_THREADS";

const CHUNK: u128 = 1 << 14;
const SAMPLE_BLOCK: u64 = 1 << 16;

/// Shard `index` of `count` over a space of `size` indices covers
/// `[floor(index * size / count), floor((index + 1) * size / count))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShardSpec {
    pub index: u64,
    pub count: u64,
}

impl ShardSpec {
    pub fn new(index: u64, count: u64) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::InvalidShard(format!("{index}/{count}")));
        }
        Ok(ShardSpec { index, count })
    }

    pub fn whole() -> Self {
        ShardSpec { index: 0, count: 1 }
    }

    pub fn interval(&self, size: u128) -> Range<u128> {
        let at = |i: u64| -> u128 {
            let (i, m) = (i as u128, self.count as u128);
            i * (size / m) + i * (size % m) / m
        };
        at(self.index)..at(self.index + 1)
    }
}

impl fmt::Display for ShardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

impl FromStr for ShardSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidShard(s.to_string());
        let (i, m) = s.split_once('/').ok_or_else(bad)?;
        ShardSpec::new(i.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?)
    }
}

/// Which blank tapes every machine is run from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Blanks {
    /// All-0 tape only.
    Zero,
    /// All-0 and all-1 tapes. The all-1 run of a machine is the complemented
    /// all-0 run of its symbol-swapped twin, so it is counted as the
    /// complement of each output rather than simulated.
    #[default]
    Both,
}

impl Blanks {
    fn tag(self) -> &'static str {
        match self {
            Blanks::Zero => "0",
            Blanks::Both => "01",
        }
    }
}

impl FromStr for Blanks {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" | "zero" => Ok(Blanks::Zero),
            "01" | "both" => Ok(Blanks::Both),
            _ => Err(Error::InvalidArgument(format!("unknown blank set {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveConfig {
    pub states: u32,
    pub shard: ShardSpec,
    pub blanks: Blanks,
    /// Simulate one machine per mirror pair and count the reversed output
    /// for its twin.
    pub use_symmetry: bool,
}

impl ExhaustiveConfig {
    pub fn new(states: u32) -> Self {
        ExhaustiveConfig {
            states,
            shard: ShardSpec::whole(),
            blanks: Blanks::default(),
            use_symmetry: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub states: u32,
    /// Number of machines drawn uniformly, with replacement.
    pub sample: u64,
    pub seed: u64,
    /// Cutoff in steps. Required when S(n) is unknown; when `None` for
    /// `n <= 4` the exact bound is used.
    pub cutoff: Option<u64>,
    pub shard: ShardSpec,
    pub blanks: Blanks,
}

impl SampleConfig {
    pub fn new(states: u32, sample: u64, seed: u64) -> Self {
        SampleConfig {
            states,
            sample,
            seed,
            cutoff: None,
            shard: ShardSpec::whole(),
            blanks: Blanks::default(),
        }
    }

    fn policy(&self) -> Result<HaltingPolicy> {
        match self.cutoff {
            Some(c) => HaltingPolicy::cutoff(c),
            None => HaltingPolicy::exact(self.states),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub distribution: FrequencyDistribution,
    /// Most steps taken by any halting machine.
    pub max_steps: u64,
    /// Machines proved non-halting by an exact bound.
    pub never_halting: u64,
}

// Per-chunk partial result.
struct Partial {
    dist: FrequencyDistribution,
    max_steps: u64,
    never_halting: u64,
}

impl Partial {
    fn new(meta: Provenance, undecided: bool) -> Self {
        Partial {
            dist: if undecided {
                FrequencyDistribution::with_undecided(meta)
            } else {
                FrequencyDistribution::new(meta)
            },
            max_steps: 0,
            never_halting: 0,
        }
    }

    /// Records one simulated machine standing for `weight` machines, the
    /// extra ones being mirror twins whose output is reversed.
    fn record(
        &mut self,
        outcome: &RunOutcome,
        policy: &HaltingPolicy,
        blanks: Blanks,
        mirrored: bool,
    ) -> Result<()> {
        let weight = 1 + mirrored as u64;
        self.dist.record_enumerated(weight);
        match classify(outcome, policy)? {
            Verdict::Halts => {
                let RunOutcome::Halted { output, steps, .. } = outcome else {
                    unreachable!("classified as halting");
                };
                self.max_steps = self.max_steps.max(*steps);
                self.dist.record_halting(weight);
                self.count(output, blanks);
                if mirrored {
                    self.count(&word::reverse(output), blanks);
                }
            }
            Verdict::NeverHalts => self.never_halting += weight,
            Verdict::Undecided => self.dist.record_undecided(weight),
        }
        Ok(())
    }

    fn count(&mut self, output: &str, blanks: Blanks) {
        self.dist.add(output, 1);
        if blanks == Blanks::Both {
            self.dist.add(&word::complement(output), 1);
        }
    }

    fn absorb(mut self, other: Partial) -> Result<Self> {
        self.dist = self.dist.merge(other.dist)?;
        self.max_steps = self.max_steps.max(other.max_steps);
        self.never_halting += other.never_halting;
        Ok(self)
    }

    fn into_report(self) -> SweepReport {
        SweepReport {
            distribution: self.dist,
            max_steps: self.max_steps,
            never_halting: self.never_halting,
        }
    }
}

/// Worker count from `CTM_THREADS`, falling back to available cores.
pub fn worker_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Runs `f` on a pool of `threads` workers.
pub fn with_workers<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn chunks(range: Range<u128>) -> Vec<Range<u128>> {
    let mut out = Vec::new();
    let mut start = range.start;
    while start < range.end {
        let end = (start + CHUNK).min(range.end);
        out.push(start..end);
        start = end;
    }
    out
}

fn fold_partials(
    parts: Vec<Result<Partial>>,
    meta: Provenance,
    undecided: bool,
) -> Result<SweepReport> {
    let mut acc = Partial::new(meta, undecided);
    for p in parts {
        acc = acc.absorb(p?)?;
    }
    Ok(acc.into_report())
}

fn tm_meta(states: u32, bound: u64, blanks: Blanks) -> Provenance {
    Provenance::new(Formalism::Tm, Space::States(states), bound).with_param("blanks", blanks.tag())
}

/// Runs every machine in the configured shard of the `states`-state space
/// for S(n) steps.
pub fn exhaustive(config: &ExhaustiveConfig) -> Result<SweepReport> {
    let policy = HaltingPolicy::exact(config.states)?;
    let bound = policy.bound();
    let size = machine_count(config.states)?;
    let interval = config.shard.interval(size);
    let meta = tm_meta(config.states, bound, config.blanks);
    log::info!(
        "sweeping {} of {} machines with {} states (shard {}, bound {})",
        interval.end - interval.start,
        size,
        config.states,
        config.shard,
        bound
    );

    let parts: Vec<Result<Partial>> = chunks(interval.clone())
        .into_par_iter()
        .map(|chunk| {
            let cov = Coverage::range(chunk.clone());
            let mut part = Partial::new(meta.clone().with_coverage(cov), false);
            let mut sim = Simulator::new();
            for i in chunk {
                let table = TransitionTable::decode(MachineIndex {
                    states: config.states,
                    index: i,
                })?;
                let mut mirrored = false;
                if config.use_symmetry && !table.is_mirror_symmetric() {
                    let twin = table.mirror().encode().index;
                    if interval.contains(&twin) {
                        if twin < i {
                            continue;
                        }
                        mirrored = true;
                    }
                }
                let outcome = sim.run(&table, bound);
                part.record(&outcome, &policy, config.blanks, mirrored)?;
            }
            Ok(part)
        })
        .collect();

    let report = fold_partials(parts, meta.clone(), false)?;
    log::info!(
        "done: {} halting, {} non-halting, {} distinct outputs, max {} steps",
        report.distribution.halting(),
        report.never_halting,
        report.distribution.support(),
        report.max_steps
    );
    Ok(report)
}

/// Machine index drawn at sample position `pos`. Positions are grouped in
/// blocks, each with its own ChaCha stream, so any range of positions can be
/// generated independently.
pub fn sample_indices(seed: u64, size: u128, positions: Range<u64>) -> Vec<u128> {
    let mut out = Vec::with_capacity((positions.end - positions.start) as usize);
    let mut pos = positions.start;
    while pos < positions.end {
        let block = pos / SAMPLE_BLOCK;
        let block_start = block * SAMPLE_BLOCK;
        let block_end = (block_start + SAMPLE_BLOCK).min(positions.end);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(block);
        for p in block_start..block_end {
            let idx = rng.gen_range(0..size);
            if p >= pos {
                out.push(idx);
            }
        }
        pos = block_end;
    }
    out
}

/// Runs a seeded uniform sample of the `states`-state space.
pub fn sampled(config: &SampleConfig) -> Result<SweepReport> {
    if config.sample == 0 {
        return Err(Error::EmptyRange);
    }
    let policy = config.policy().map_err(|e| match e {
        Error::UnknownBusyBeaver(n) => Error::InvalidArgument(format!(
            "S({n}) is unknown; sampling {n}-state machines needs --cutoff"
        )),
        e => e,
    })?;
    let bound = policy.bound();
    let size = machine_count(config.states)?;
    let positions = config.shard.interval(config.sample as u128);
    let undecided = !policy.is_exact();
    let meta = tm_meta(config.states, bound, config.blanks)
        .with_param("sample", config.sample)
        .with_param("seed", config.seed);
    log::info!(
        "sampling positions {:?} of {} from {} machines with {} states (bound {})",
        positions,
        config.sample,
        size,
        config.states,
        bound
    );

    // chunks aligned to sample blocks so each chunk regenerates one stream
    let mut spans = Vec::new();
    let mut p = positions.start as u64;
    while p < positions.end as u64 {
        let end = ((p / SAMPLE_BLOCK + 1) * SAMPLE_BLOCK).min(positions.end as u64);
        spans.push(p..end);
        p = end;
    }
    let parts: Vec<Result<Partial>> = spans
        .into_par_iter()
        .map(|span| {
            let cov = Coverage::range(span.start as u128..span.end as u128);
            let mut part = Partial::new(meta.clone().with_coverage(cov), undecided);
            let mut sim = Simulator::new();
            for index in sample_indices(config.seed, size, span) {
                let table = TransitionTable::decode(MachineIndex {
                    states: config.states,
                    index,
                })?;
                let outcome = sim.run(&table, bound);
                part.record(&outcome, &policy, config.blanks, false)?;
            }
            Ok(part)
        })
        .collect();
    fold_partials(parts, meta, undecided)
}
