//! Evolve a few 4-cell-neighbourhood automata, then collect the 6-tuple
//! distribution over a slice of the rule space.
use ctm::analysis::{rank, Scope};
use ctm::ca::{evolve, extract_tuples, rulespace_distribution, CaRule, TupleSpec};

fn main() -> ctm::Result<()> {
    // next cell = left neighbour XOR right neighbour
    let rule = CaRule::from_fn(|[_, l, _, r]| l ^ r);
    let evo = evolve(rule, 15);
    println!("rule {} (conjugate {}):", rule.number(), rule.conjugate().number());
    for t in 0..=evo.steps() {
        let row: String = evo.cone_row(t).iter().map(|&c| if c == 1 { '#' } else { '.' }).collect();
        println!("{:>width$}{row}", "", width = 15 - t);
    }
    let tuples = extract_tuples(&evo, TupleSpec::new(4))?;
    println!("{} distinct 4-tuples in that evolution", tuples.support());

    let d = rulespace_distribution(TupleSpec::new(6), 100, 0..4096)?;
    let r = rank(&d, Scope::Length(6))?;
    println!("rules 0..4096: {} distinct 6-tuples, top ten:", r.len());
    for e in r.entries.iter().take(10) {
        println!("  {} {}", e.string, e.count);
    }
    Ok(())
}
