//! Seeded uniform samples of spaces too large to enumerate: 4 states under
//! the exact bound, 5 states under a cutoff that leaves some runs undecided.
use ctm::analysis::{rank, spearman, Scope};
use ctm::sweep::{exhaustive, sampled, ExhaustiveConfig, SampleConfig};

fn main() -> ctm::Result<()> {
    let four = sampled(&SampleConfig::new(4, 1_000_000, 1))?.distribution;
    let three = exhaustive(&ExhaustiveConfig::new(3))?.distribution;
    let rho = spearman(&rank(&four, Scope::UpTo(6))?, &rank(&three, Scope::UpTo(6))?)?;
    println!(
        "n=4 sample: {} halting of {}, {} distinct, rho vs n=3 on length <= 6: {rho:.3}",
        four.halting(),
        four.enumerated(),
        four.support()
    );

    let cfg = SampleConfig {
        cutoff: Some(500),
        ..SampleConfig::new(5, 200_000, 1)
    };
    let five = sampled(&cfg)?.distribution;
    println!(
        "n=5 sample: {} halting, {} undecided at 500 steps, {} distinct",
        five.halting(),
        five.undecided().unwrap_or(0),
        five.support()
    );
    Ok(())
}
