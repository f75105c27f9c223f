//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when a criterion fails unexpectedly.
//!
//! Criterion 3 is unattainable as worded: exact complement and reversal
//! symmetry force 010110 to tie with 101001 and 011010, so its separate group
//! cannot rank strictly above theirs. The suite reports that check as FAIL and
//! only tolerates it when every other part of the grouping holds.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ctm::analysis::{self, Scope, REFERENCE_LENGTH6_GROUPS};
use ctm::ca::{self, TupleSpec};
use ctm::distribution::{shannon_entropy, ComplexityEstimate, Formalism, Provenance, Space};
use ctm::sweep::{self, ExhaustiveConfig, SampleConfig, ShardSpec, SweepReport};
use ctm::tm::machine_count;
use ctm::{word, FrequencyDistribution};

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails as worded, for a documented reason; everything else checked.
    KnownFail(String),
}

use Outcome::*;

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn exhaustive(states: u32) -> (SweepReport, Duration) {
    let t = Instant::now();
    let r = sweep::exhaustive(&ExhaustiveConfig::new(states)).expect("exhaustive run");
    (r, t.elapsed())
}

fn symmetric(d: &FrequencyDistribution) -> bool {
    d.counts()
        .iter()
        .all(|(s, &c)| d.count(&word::complement(s)) == c && d.count(&word::reverse(s)) == c)
}

struct Runs {
    n1: (SweepReport, Duration),
    n2: (SweepReport, Duration),
    n3: (SweepReport, Duration),
}

fn criterion1() -> Outcome {
    let got = [2, 3, 4].map(|n| machine_count(n).unwrap());
    verdict(
        got == [10_000, 7_529_536, 11_019_960_576],
        format!("n=2 {} n=3 {} n=4 {}", got[0], got[1], got[2]),
    )
}

fn criterion2(runs: &Runs) -> Outcome {
    let (r1, t1) = &runs.n1;
    let (r2, t2) = &runs.n2;
    let (r3, t3) = &runs.n3;
    let ok = r1.max_steps == 1
        && r2.max_steps == 6
        && r3.max_steps == 21
        && r3.distribution.support() == 128
        && *t1 < Duration::from_secs(60)
        && *t2 < Duration::from_secs(60)
        && *t3 < Duration::from_secs(3600);
    verdict(
        ok,
        format!(
            "max steps {}/{}/{}, n=3 distinct {}, times {:.2?}/{:.2?}/{:.2?}",
            r1.max_steps,
            r2.max_steps,
            r3.max_steps,
            r3.distribution.support(),
            t1,
            t2,
            t3
        ),
    )
}

fn criterion3(runs: &Runs) -> Outcome {
    let d = &runs.n3.0.distribution;
    let counts: Vec<Vec<u64>> = REFERENCE_LENGTH6_GROUPS
        .iter()
        .map(|g| g.iter().map(|s| d.count(s)).collect())
        .collect();
    let tied = counts.iter().all(|c| c.iter().all(|&x| x == c[0]) && c[0] > 0);
    let heads: Vec<u64> = counts.iter().map(|c| c[0]).collect();
    let strictly = heads.windows(2).all(|w| w[0] > w[1]);
    // The first five listed groups must still descend strictly, and the
    // listed ranking must be the top of the observed length-6 ranking.
    let first_five = heads[..5].windows(2).all(|w| w[0] > w[1]);
    let last_tie = heads[4] == heads[5];
    let ranked = analysis::rank(d, Scope::Length(6)).unwrap();
    let top_ok = ranked.tie_groups()[0].len() == 2 && ranked.entries[0].count == heads[0];
    let detail = format!("group counts {heads:?}");
    if tied && strictly {
        Pass(detail)
    } else if tied && first_five && last_tie && top_ok {
        KnownFail(format!(
            "{detail}; 010110 ties with {{101001,100101,011010}} as complement/reversal symmetry requires"
        ))
    } else {
        Fail(detail)
    }
}

fn criterion4(runs: &Runs) -> Outcome {
    let all = [&runs.n1, &runs.n2, &runs.n3]
        .iter()
        .all(|(r, _)| symmetric(&r.distribution));
    verdict(all, "count(s) = count(complement) = count(reverse) for n=1,2,3".into())
}

fn criterion5(runs: &Runs) -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut failures = Vec::new();
    for states in [2u32, 3] {
        let whole = if states == 2 { &runs.n2.0 } else { &runs.n3.0 };
        let mono = dir.path().join(format!("mono{states}.tsv"));
        whole.distribution.save(&mono).unwrap();
        for m in [2u64, 8] {
            let mut parts = Vec::new();
            for i in 0..m {
                let cfg = ExhaustiveConfig {
                    shard: ShardSpec::new(i, m).unwrap(),
                    ..ExhaustiveConfig::new(states)
                };
                let path = dir.path().join(format!("n{states}_{i}of{m}.tsv"));
                sweep::exhaustive(&cfg).unwrap().distribution.save(&path).unwrap();
                parts.push(FrequencyDistribution::load(&path).unwrap());
            }
            let merged_path = dir.path().join(format!("merged{states}_{m}.tsv"));
            FrequencyDistribution::merge_all(parts)
                .unwrap()
                .unwrap()
                .save(&merged_path)
                .unwrap();
            if std::fs::read(&merged_path).unwrap() != std::fs::read(&mono).unwrap() {
                failures.push(format!("n={states} m={m}"));
            }
        }
    }
    let sym = sweep::exhaustive(&ExhaustiveConfig {
        use_symmetry: true,
        ..ExhaustiveConfig::new(2)
    })
    .unwrap();
    if sym.distribution.to_text() != runs.n2.0.distribution.to_text() {
        failures.push("symmetry n=2".into());
    }
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            "shards m=2,8 on n=2,3 and --use-symmetry on n=2 byte-identical".into()
        } else {
            format!("mismatch: {}", failures.join(", "))
        },
    )
}

fn criterion6(runs: &Runs) -> Outcome {
    let t = Instant::now();
    let sample = sweep::sampled(&SampleConfig::new(4, 10_000_000, 1)).unwrap();
    let a = analysis::rank(&sample.distribution, Scope::UpTo(6)).unwrap();
    let b = analysis::rank(&runs.n3.0.distribution, Scope::UpTo(6)).unwrap();
    let rho = analysis::spearman(&a, &b).unwrap();
    verdict(
        rho > 0.9,
        format!(
            "rho {rho:.4} (n=4 sample of 10^7, seed 1, vs n=3, length <= 6), {:.2?}",
            t.elapsed()
        ),
    )
}

fn ranked(values: &[u64]) -> analysis::RankedClassification {
    let strings: Vec<String> = word::all_of_length(8).take(values.len()).collect();
    let mut d = FrequencyDistribution::new(Provenance::new(Formalism::Tm, Space::States(1), 1));
    for (s, &v) in strings.iter().zip(values) {
        d.add(s, v);
    }
    analysis::rank(&d, Scope::All).unwrap()
}

fn criterion7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let n = 5 + trial * 2;
        let base: Vec<u64> = (1..=n as u64).collect();
        let mut perm = base.clone();
        perm.shuffle(&mut rng);
        let rho = analysis::spearman(&ranked(&base), &ranked(&perm)).unwrap();
        // rank 1 is the largest count
        let d2: f64 = base
            .iter()
            .zip(&perm)
            .map(|(&x, &y)| {
                let d = (n as u64 + 1 - x) as f64 - (n as u64 + 1 - y) as f64;
                d * d
            })
            .sum();
        let nf = n as f64;
        let closed = 1.0 - 6.0 * d2 / (nf * (nf * nf - 1.0));
        worst = worst.max((rho - closed).abs());
    }
    let up: Vec<u64> = (1..=50).collect();
    let down: Vec<u64> = up.iter().rev().copied().collect();
    let same = analysis::spearman(&ranked(&up), &ranked(&up)).unwrap();
    let rev = analysis::spearman(&ranked(&up), &ranked(&down)).unwrap();
    let mut tied_ok = true;
    for _ in 0..200 {
        let a: Vec<u64> = (0..40).map(|_| rand::Rng::gen_range(&mut rng, 1..5)).collect();
        let b: Vec<u64> = (0..40).map(|_| rand::Rng::gen_range(&mut rng, 1..5)).collect();
        let rho = analysis::spearman(&ranked(&a), &ranked(&b)).unwrap();
        tied_ok &= (-1.0..=1.0).contains(&rho);
    }
    verdict(
        worst <= 1e-12 && same == 1.0 && rev == -1.0 && tied_ok,
        format!("max |rho - closed form| {worst:.1e}, identical {same}, reversed {rev}, tied in range {tied_ok}"),
    )
}

fn criterion8(runs: &Runs) -> Outcome {
    let t = Instant::now();
    let d = ca::rulespace_distribution(TupleSpec::new(6), ca::DEFAULT_STEPS, 0..ca::RULE_COUNT).unwrap();
    let elapsed = t.elapsed();
    let sym = d.counts().iter().all(|(s, &c)| d.count(&word::complement(s)) == c);
    let report = analysis::compare(&runs.n3.0.distribution, &d, 6).unwrap();
    let lex = report.table.windows(2).all(|w| w[0].tuple < w[1].tuple);
    verdict(
        elapsed < Duration::from_secs(1800) && sym && lex && report.rho > 0.0,
        format!(
            "{elapsed:.2?}, complement symmetric {sym}, table lexicographic {lex}, rho {:.4} over {} shared tuples",
            report.rho, report.shared
        ),
    )
}

fn criterion9() -> Outcome {
    let a = shannon_entropy("01010101010101010101").unwrap();
    let b = shannon_entropy("10010111010100001011").unwrap();
    let c = shannon_entropy("0000").unwrap();
    verdict(a == 1.0 && b == 1.0 && c == 0.0, format!("{a}, {b}, {c}"))
}

fn criterion10(runs: &Runs) -> Outcome {
    let one = ComplexityEstimate::from_probability("0", 1.0);
    let quarter = ComplexityEstimate::from_probability("0", 0.25);
    let hand = one.k == 0.0 && one.program_length == 0 && quarter.k == 2.0 && quarter.program_length == 2;
    let d = &runs.n3.0.distribution;
    let mut est: Vec<(u64, f64)> = d
        .estimates()
        .unwrap()
        .into_iter()
        .map(|e| (d.count(&e.string), e.k))
        .collect();
    est.sort_by_key(|e| std::cmp::Reverse(e.0));
    let anti = est.windows(2).all(|w| {
        if w[0].0 == w[1].0 {
            w[0].1 == w[1].1
        } else {
            w[0].1 < w[1].1
        }
    });
    verdict(
        hand && anti,
        format!("sl=1 -> {}, sl=0.25 -> {}, anti-correspondence over {} strings {anti}", one.k, quarter.k, est.len()),
    )
}

fn main() -> ExitCode {
    let runs = Runs {
        n1: exhaustive(1),
        n2: exhaustive(2),
        n3: exhaustive(3),
    };
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion1()),
        (2, criterion2(&runs)),
        (3, criterion3(&runs)),
        (4, criterion4(&runs)),
        (5, criterion5(&runs)),
        (6, criterion6(&runs)),
        (7, criterion7()),
        (8, criterion8(&runs)),
        (9, criterion9()),
        (10, criterion10(&runs)),
    ];
    let mut unexpected = 0;
    for (n, outcome) in &results {
        match outcome {
            Pass(d) => println!("PASS criterion {n}: {d}"),
            Fail(d) => {
                unexpected += 1;
                println!("FAIL criterion {n}: {d}");
            }
            KnownFail(d) => println!("FAIL criterion {n} (known, as worded): {d}"),
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
