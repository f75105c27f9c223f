//! Known busy beaver step counts and the halting policies built on them.

use crate::error::{Error, Result};
use crate::tm::RunOutcome;

/// S(n) for n = 1..=4: the most steps any halting n-state, 2-symbol machine
/// takes from a blank tape.
const KNOWN_STEPS: [u64; 4] = [1, 6, 21, 107];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BusyBeaverRecord {
    pub states: u32,
    /// `None` when S(n) is unknown (n >= 5).
    pub max_steps: Option<u64>,
}

pub fn busy_beaver(states: u32) -> Result<BusyBeaverRecord> {
    if states == 0 {
        return Err(Error::InvalidStateCount(0));
    }
    Ok(BusyBeaverRecord {
        states,
        max_steps: KNOWN_STEPS.get(states as usize - 1).copied(),
    })
}

/// S(n). Any machine still running after this many steps never halts.
pub fn step_bound(states: u32) -> Result<u64> {
    busy_beaver(states)?
        .max_steps
        .ok_or(Error::UnknownBusyBeaver(states))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaltingPolicy {
    /// Bound at S(n); only constructible for n <= 4.
    Exact { states: u32, bound: u64 },
    /// User-chosen cutoff; runs hitting it are undecided.
    Cutoff { bound: u64 },
}

impl HaltingPolicy {
    pub fn exact(states: u32) -> Result<Self> {
        Ok(HaltingPolicy::Exact {
            states,
            bound: step_bound(states)?,
        })
    }

    pub fn cutoff(bound: u64) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidBound);
        }
        Ok(HaltingPolicy::Cutoff { bound })
    }

    /// Exact when S(n) is known, otherwise a cutoff at `fallback`.
    pub fn for_states(states: u32, fallback: u64) -> Result<Self> {
        match step_bound(states) {
            Ok(bound) => Ok(HaltingPolicy::Exact { states, bound }),
            Err(Error::UnknownBusyBeaver(_)) => Self::cutoff(fallback),
            Err(e) => Err(e),
        }
    }

    pub fn bound(&self) -> u64 {
        match *self {
            HaltingPolicy::Exact { bound, .. } | HaltingPolicy::Cutoff { bound } => bound,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, HaltingPolicy::Exact { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Halts,
    NeverHalts,
    Undecided,
}

pub fn classify(outcome: &RunOutcome, policy: &HaltingPolicy) -> Result<Verdict> {
    if outcome.bound() != policy.bound() {
        return Err(Error::BoundMismatch {
            outcome: outcome.bound(),
            policy: policy.bound(),
        });
    }
    Ok(match (outcome, policy) {
        (RunOutcome::Halted { .. }, _) => Verdict::Halts,
        (RunOutcome::BoundExceeded { .. }, HaltingPolicy::Exact { .. }) => Verdict::NeverHalts,
        (RunOutcome::BoundExceeded { .. }, HaltingPolicy::Cutoff { .. }) => Verdict::Undecided,
    })
}
