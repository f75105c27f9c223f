//! Turn output frequencies into complexity estimates and set them against
//! Shannon entropy, which cannot tell the two 6-bit strings below apart.
use ctm::distribution::shannon_entropy;
use ctm::sweep::{exhaustive, ExhaustiveConfig};

fn main() -> ctm::Result<()> {
    let d = exhaustive(&ExhaustiveConfig::new(3))?.distribution;
    println!("string\tcount\tsl\tk\tbits\tentropy");
    for s in ["0", "00", "000000", "000001", "001001", "101001", "010101"] {
        let Ok(e) = d.k_estimate(s) else {
            println!("{s}\t0\tno 3-state machine outputs it\t\t\t{:.3}", shannon_entropy(s)?);
            continue;
        };
        println!(
            "{s}\t{}\t{:.3e}\t{:.3}\t{}\t{:.3}",
            d.count(s),
            e.sl,
            e.k,
            e.program_length,
            shannon_entropy(s)?
        );
    }
    Ok(())
}
