//! Run single tag systems and the pooled output distribution of all systems
//! with appendants up to length 3.
use ctm::tag::{run_tag, tagspace_distribution, TagSpace, TagSystem};

fn main() -> ctm::Result<()> {
    for prods in [["", "0"], ["01", "1"], ["00", "11"], ["1", "011"]] {
        let sys = TagSystem::new(2, prods, "1011", 100)?;
        println!("{prods:?} on 1011: {:?}", run_tag(&sys)?);
    }
    let space = TagSpace {
        initials: ["10", "110", "1011", "10110"].map(String::from).to_vec(),
        ..TagSpace::default()
    };
    let d = tagspace_distribution(&space)?;
    println!("{} runs, {} halt, {} distinct outputs", d.enumerated(), d.halting(), d.support());
    for (s, c) in d.sorted().into_iter().take(10) {
        println!("  {s}\t{c}");
    }
    Ok(())
}
