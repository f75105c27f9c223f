use std::io::{self, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ctm::analysis::{self, ComparisonReport, Scope};
use ctm::ca::{self, RowSelection, Seeds, TuplePolicy, TupleSpec};
use ctm::distribution::{shannon_entropy, FrequencyDistribution};
use ctm::sweep::{self, Blanks, ExhaustiveConfig, SampleConfig, ShardSpec};
use ctm::tag::{self, TagSpace};
use ctm::{Error, Result};

#[derive(Parser)]
#[command(name = "ctm", version, about = "Coding Theorem Method complexity estimates for short binary strings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run every machine (or a seeded sample) of an n-state space.
    TmRun {
        #[arg(long)]
        states: u32,
        /// Shard to run, as i/m.
        #[arg(long)]
        shard: Option<ShardSpec>,
        /// Sample this many machines uniformly instead of enumerating.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Step cutoff for sampled runs; required when S(n) is unknown.
        #[arg(long)]
        cutoff: Option<u64>,
        /// Blank tapes to run from: 0 or 01.
        #[arg(long, default_value = "01")]
        blanks: Blanks,
        /// Simulate one machine per mirror pair.
        #[arg(long)]
        use_symmetry: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Merge shard files of the same run.
    Merge {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complexity estimates -log2 SL(s).
    Estimate {
        dist: PathBuf,
        strings: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Frequency ranking with average ranks for ties.
    Rank {
        dist: PathBuf,
        /// Only strings of this length.
        #[arg(long, conflicts_with = "max_length")]
        length: Option<usize>,
        /// Only strings up to this length.
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// k-tuple distribution of a range of 4-cell-neighbourhood automata.
    CaRun {
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = ca::DEFAULT_STEPS)]
        steps: usize,
        /// Rule range a..b within 0..65536.
        #[arg(long, default_value = "0..65536", value_parser = parse_rules)]
        rules: Range<u32>,
        #[arg(long, default_value = "nonoverlapping")]
        policy: TuplePolicy,
        /// all or last
        #[arg(long, default_value = "all")]
        rows: RowSelection,
        /// black or both
        #[arg(long, default_value = "both")]
        seeds: Seeds,
        /// Shard of the rule range, as i/m.
        #[arg(long)]
        shard: Option<ShardSpec>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Output distribution of all tag systems with short appendants.
    TagRun {
        /// Longest appendant.
        #[arg(long = "L", default_value_t = tag::DEFAULT_MAX_APPENDANT)]
        max_appendant: usize,
        #[arg(long, default_value_t = tag::DEFAULT_CUTOFF)]
        cutoff: u64,
        #[arg(long, default_value_t = tag::DEFAULT_DELETION)]
        deletion: usize,
        /// Initial word; repeat for several.
        #[arg(long, default_values_t = [tag::DEFAULT_INITIAL.to_string()])]
        initial: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the length-k strings of two distributions.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Shannon entropy of each string's symbol frequencies.
    Entropy {
        #[arg(required = true)]
        strings: Vec<String>,
    },
}

fn parse_rules(s: &str) -> std::result::Result<Range<u32>, String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u32 = a.parse().map_err(|_| format!("bad start {a:?}"))?;
    let b: u32 = b.parse().map_err(|_| format!("bad end {b:?}"))?;
    Ok(a..b)
}

fn emit(out: Option<&Path>, dist: &FrequencyDistribution) -> Result<()> {
    match out {
        Some(path) => {
            dist.save(path)?;
            log::info!("wrote {}", path.display());
        }
        None => dist.write_to(io::stdout().lock())?,
    }
    Ok(())
}

fn print(text: &str) -> Result<()> {
    io::stdout().lock().write_all(text.as_bytes())?;
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::TmRun {
            states,
            shard,
            sample,
            seed,
            cutoff,
            blanks,
            use_symmetry,
            out,
        } => {
            let shard = shard.unwrap_or_else(ShardSpec::whole);
            let report = match sample {
                None => {
                    if cutoff.is_some() {
                        return Err(Error::InvalidArgument(
                            "--cutoff applies to sampled runs only".into(),
                        ));
                    }
                    let cfg = ExhaustiveConfig {
                        states,
                        shard,
                        blanks,
                        use_symmetry,
                    };
                    sweep::with_workers(sweep::worker_count(), || sweep::exhaustive(&cfg))??
                }
                Some(n) => {
                    let cfg = SampleConfig {
                        states,
                        sample: n,
                        seed,
                        cutoff,
                        shard,
                        blanks,
                    };
                    sweep::with_workers(sweep::worker_count(), || sweep::sampled(&cfg))??
                }
            };
            let d = &report.distribution;
            log::info!(
                "enumerated {} halting {} undecided {} distinct {} max steps {}",
                d.enumerated(),
                d.halting(),
                d.undecided().unwrap_or(0),
                d.support(),
                report.max_steps
            );
            emit(out.as_deref(), d)
        }
        Command::Merge { inputs, out } => {
            let parts = inputs
                .iter()
                .map(|p| {
                    FrequencyDistribution::load(p).map_err(|e| {
                        Error::InvalidArgument(format!("{}: {e}", p.display()))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let merged = FrequencyDistribution::merge_all(parts)?.ok_or(Error::EmptyRange)?;
            emit(out.as_deref(), &merged)
        }
        Command::Estimate {
            dist,
            strings,
            all,
            format,
        } => {
            let d = FrequencyDistribution::load(&dist)?;
            let (estimates, missing) = if all {
                (d.estimates()?, Vec::new())
            } else {
                if strings.is_empty() {
                    return Err(Error::InvalidArgument("give strings or --all".into()));
                }
                let mut found = Vec::new();
                let mut missing = Vec::new();
                for s in &strings {
                    ctm::word::check(s)?;
                    match d.k_estimate(s) {
                        Ok(e) => found.push(e),
                        Err(Error::NoEstimate(s)) => missing.push(s),
                        Err(e) => return Err(e),
                    }
                }
                (found, missing)
            };
            match format {
                Format::Tsv => {
                    let mut text = String::from("string\tsl\tk\tprogram_length\n");
                    for e in &estimates {
                        text.push_str(&format!(
                            "{}\t{}\t{}\t{}\n",
                            e.string, e.sl, e.k, e.program_length
                        ));
                    }
                    print(&text)?;
                }
                Format::Json => print(&json(&estimates)?)?,
            }
            match missing.first() {
                Some(s) => Err(Error::NoEstimate(s.clone())),
                None => Ok(()),
            }
        }
        Command::Rank {
            dist,
            length,
            max_length,
            format,
        } => {
            let d = FrequencyDistribution::load(&dist)?;
            let scope = match (length, max_length) {
                (_, Some(m)) => Scope::UpTo(m),
                (l, None) => Scope::from(l),
            };
            let r = analysis::rank(&d, scope)?;
            match format {
                Format::Tsv => print(&r.to_tsv()),
                Format::Json => print(&json(&r)?),
            }
        }
        Command::CaRun {
            k,
            steps,
            rules,
            policy,
            rows,
            seeds,
            shard,
            out,
        } => {
            let rules = match shard {
                Some(s) => {
                    let r = s.interval((rules.end.saturating_sub(rules.start)) as u128);
                    rules.start + r.start as u32..rules.start + r.end as u32
                }
                None => rules,
            };
            let spec = TupleSpec {
                k,
                policy,
                rows,
                seeds,
            };
            log::info!("evolving rules {rules:?} for {steps} steps, k={k}");
            let d = sweep::with_workers(sweep::worker_count(), || {
                ca::rulespace_distribution(spec, steps, rules)
            })??;
            emit(out.as_deref(), &d)
        }
        Command::TagRun {
            max_appendant,
            cutoff,
            deletion,
            initial,
            out,
        } => {
            let space = TagSpace {
                deletion,
                max_appendant,
                cutoff,
                initials: initial,
            };
            let d = tag::tagspace_distribution(&space)?;
            emit(out.as_deref(), &d)
        }
        Command::Compare { a, b, k, format } => {
            let da = FrequencyDistribution::load(&a)?;
            let db = FrequencyDistribution::load(&b)?;
            let report: ComparisonReport = analysis::compare(&da, &db, k)?;
            log::info!("rho={} over {} shared tuples", report.rho, report.shared);
            match format {
                Format::Tsv => print(&report.to_tsv()),
                Format::Json => print(&json(&report)?),
            }
        }
        Command::Entropy { strings } => {
            let mut text = String::from("string\tentropy\n");
            for s in &strings {
                text.push_str(&format!("{s}\t{}\n", shannon_entropy(s)?));
            }
            print(&text)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
