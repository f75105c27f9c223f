//! Split a run into shards, write each to disk, merge them back and check the
//! result against a single run.
use ctm::sweep::{exhaustive, with_workers, ExhaustiveConfig, ShardSpec};
use ctm::FrequencyDistribution;

fn main() -> ctm::Result<()> {
    let dir = std::env::temp_dir().join("ctm-shards");
    std::fs::create_dir_all(&dir)?;
    let count = 4;
    let mut parts = Vec::new();
    for i in 0..count {
        let cfg = ExhaustiveConfig {
            shard: ShardSpec::new(i, count)?,
            ..ExhaustiveConfig::new(3)
        };
        // worker count does not affect the result
        let report = with_workers(2, || exhaustive(&cfg))??;
        let path = dir.join(format!("d3_{i}of{count}.tsv"));
        report.distribution.save(&path)?;
        println!("shard {} -> {} ({} machines)", cfg.shard, path.display(), report.distribution.enumerated());
        parts.push(FrequencyDistribution::load(&path)?);
    }
    let merged = FrequencyDistribution::merge_all(parts)?.expect("shards");
    let whole = exhaustive(&ExhaustiveConfig::new(3))?.distribution;
    println!("coverage {}", merged.meta().coverage);
    println!("merged file identical to single run: {}", merged.to_text() == whole.to_text());
    Ok(())
}
