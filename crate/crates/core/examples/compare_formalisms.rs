//! Compare the 3-state Turing machine distribution with the automaton
//! 6-tuple distribution and with tag system outputs.
use ctm::analysis::compare;
use ctm::ca::{rulespace_distribution, TupleSpec};
use ctm::sweep::{exhaustive, ExhaustiveConfig};
use ctm::tag::{tagspace_distribution, TagSpace};

fn main() -> ctm::Result<()> {
    let tm = exhaustive(&ExhaustiveConfig::new(3))?.distribution;
    let ca = rulespace_distribution(TupleSpec::new(6), 100, 0..8192)?;
    let report = compare(&tm, &ca, 6)?;
    println!(
        "TM vs CA, k=6: rho {:.3} over {} shared tuples, {} of the top {} in common",
        report.rho, report.shared, report.top_overlap, report.top_n
    );
    for g in &report.groups {
        println!("  {:?} tm {:?} ca {:?}", g.members, g.counts_a, g.counts_b);
    }

    let tag = tagspace_distribution(&TagSpace {
        initials: ["10", "110", "1011", "10110"].map(String::from).to_vec(),
        ..TagSpace::default()
    })?;
    for k in 1..=3 {
        match compare(&tm, &tag, k) {
            Ok(r) => println!("TM vs tag, k={k}: rho {:.3} over {} shared strings", r.rho, r.shared),
            Err(e) => println!("TM vs tag, k={k}: {e}"),
        }
    }
    Ok(())
}
