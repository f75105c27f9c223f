//! Run every 3-state machine and print the most frequent strings of each
//! length.
use ctm::analysis::{rank, Scope};
use ctm::sweep::{exhaustive, ExhaustiveConfig};

fn main() -> ctm::Result<()> {
    let report = exhaustive(&ExhaustiveConfig::new(3))?;
    let d = &report.distribution;
    println!(
        "{} machines, {} halt, {} distinct outputs, longest halting run {} steps",
        d.enumerated(),
        d.halting(),
        d.support(),
        report.max_steps
    );
    for len in 1..=6 {
        let r = rank(d, Scope::Length(len))?;
        let top: Vec<String> = r.tie_groups()[0]
            .iter()
            .map(|e| format!("{} ({})", e.string, e.count))
            .collect();
        println!("length {len}: {} strings, most frequent {}", r.len(), top.join(" "));
    }
    Ok(())
}
