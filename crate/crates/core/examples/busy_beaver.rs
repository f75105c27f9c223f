//! Decode machines from their indices, trace the 2-state busy beaver and
//! classify outcomes against the known step bounds.
use ctm::bounds::{busy_beaver, classify, HaltingPolicy};
use ctm::tm::{machine_count, simulate, MachineIndex, TransitionTable};

fn main() -> ctm::Result<()> {
    for n in 1..=5 {
        let bb = busy_beaver(n)?;
        let steps = bb.max_steps.map_or("unknown".to_string(), |s| s.to_string());
        println!("n={n}: {} machines, S(n) = {steps}", machine_count(n)?);
    }

    // Search the 2-state space for a machine that uses all six steps.
    let policy = HaltingPolicy::exact(2)?;
    for index in 0..machine_count(2)? {
        let table = TransitionTable::decode(MachineIndex::new(2, index)?)?;
        let outcome = simulate(&table, policy.bound())?;
        if outcome.steps() == Some(6) {
            println!(
                "machine {index} [{table}] halts after 6 steps with {:?} ({:?})",
                outcome.output().unwrap(),
                classify(&outcome, &policy)?
            );
            break;
        }
    }
    Ok(())
}
