//! Binary Post tag systems.
//!
//! Each step reads the first symbol of the word, appends that symbol's
//! production to the end and deletes the first `deletion` symbols. The system
//! halts once the word is shorter than `deletion`.

use std::collections::VecDeque;

use crate::distribution::{Coverage, Formalism, FrequencyDistribution, Provenance, Space};
use crate::error::{Error, Result};
use crate::tm::RunOutcome;
use crate::word;

pub const DEFAULT_DELETION: usize = 2;
pub const DEFAULT_MAX_APPENDANT: usize = 3;
pub const DEFAULT_CUTOFF: u64 = 100;
pub const DEFAULT_INITIAL: &str = "10";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagSystem {
    pub deletion: usize,
    /// Appendants for symbols 0 and 1; may be empty.
    pub productions: [String; 2],
    pub initial: String,
    pub cutoff: u64,
}

impl TagSystem {
    pub fn new(
        deletion: usize,
        productions: [&str; 2],
        initial: &str,
        cutoff: u64,
    ) -> Result<Self> {
        let sys = TagSystem {
            deletion,
            productions: productions.map(str::to_string),
            initial: initial.to_string(),
            cutoff,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if self.deletion == 0 {
            return Err(Error::InvalidArgument("deletion number must be at least 1".into()));
        }
        if self.cutoff == 0 {
            return Err(Error::InvalidBound);
        }
        word::check(&self.initial)?;
        if self.initial.len() < self.deletion {
            return Err(Error::InvalidArgument(format!(
                "initial word {:?} is shorter than the deletion number {}",
                self.initial, self.deletion
            )));
        }
        for p in &self.productions {
            if !p.is_empty() {
                word::check(p)?;
            }
        }
        Ok(())
    }
}

/// Runs the system. The output of a halting run is the final word, or the
/// word just before the last deletion when the final word is empty.
pub fn run_tag(sys: &TagSystem) -> Result<RunOutcome> {
    sys.validate()?;
    let productions: [Vec<u8>; 2] = [
        sys.productions[0].bytes().collect(),
        sys.productions[1].bytes().collect(),
    ];
    let mut word: VecDeque<u8> = sys.initial.bytes().collect();
    let mut steps = 0u64;
    loop {
        if steps == sys.cutoff {
            return Ok(RunOutcome::BoundExceeded { bound: sys.cutoff });
        }
        steps += 1;
        let head = word[0];
        word.extend(&productions[(head - b'0') as usize]);
        if word.len() - sys.deletion < sys.deletion {
            // this step halts; keep the pre-deletion word in case nothing remains
            let before: String = word.iter().map(|&b| b as char).collect();
            word.drain(..sys.deletion);
            let output = if word.is_empty() {
                before
            } else {
                word.iter().map(|&b| b as char).collect()
            };
            return Ok(RunOutcome::Halted {
                output,
                steps,
                bound: sys.cutoff,
            });
        }
        word.drain(..sys.deletion);
    }
}

/// Every binary string of length `0..=max_len`, shortest first.
pub fn appendants(max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for len in 1..=max_len {
        out.extend(word::all_of_length(len));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagSpace {
    pub deletion: usize,
    pub max_appendant: usize,
    pub cutoff: u64,
    pub initials: Vec<String>,
}

impl Default for TagSpace {
    fn default() -> Self {
        TagSpace {
            deletion: DEFAULT_DELETION,
            max_appendant: DEFAULT_MAX_APPENDANT,
            cutoff: DEFAULT_CUTOFF,
            initials: vec![DEFAULT_INITIAL.to_string()],
        }
    }
}

impl TagSpace {
    /// Number of production pairs: `(sum of 2^l for l in 0..=L)^2`.
    pub fn system_count(&self) -> u64 {
        let per_symbol = (1u64 << (self.max_appendant + 1)) - 1;
        per_symbol * per_symbol
    }

    pub fn space_id(&self) -> String {
        format!("tag{}l{}", self.deletion, self.max_appendant)
    }
}

/// Runs every production pair on every initial word and pools the outputs of
/// halting runs. System `i` uses appendants `(i / m, i % m)` from
/// [`appendants`], `m` being the number of appendants per symbol.
pub fn tagspace_distribution(space: &TagSpace) -> Result<FrequencyDistribution> {
    if space.initials.is_empty() {
        return Err(Error::EmptyRange);
    }
    let options = appendants(space.max_appendant);
    let systems = space.system_count();
    let meta = Provenance::new(Formalism::Tag, Space::RuleSpace(space.space_id()), space.cutoff)
        .with_coverage(Coverage::range(0..systems as u128))
        .with_param("deletion", space.deletion)
        .with_param("appendant", space.max_appendant)
        .with_param("initial", space.initials.join(","));
    let mut dist = FrequencyDistribution::new(meta);
    for p0 in &options {
        for p1 in &options {
            for init in &space.initials {
                let sys = TagSystem::new(space.deletion, [p0, p1], init, space.cutoff)?;
                let outcome = run_tag(&sys)?;
                dist.record_enumerated(1);
                if outcome.is_halted() {
                    dist.accumulate(&outcome)?;
                }
            }
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Direct transcription of the rewriting rule on strings.
    fn trace(deletion: usize, prods: [&str; 2], init: &str, cutoff: u64) -> Option<(String, u64)> {
        let mut w = init.to_string();
        for step in 1..=cutoff {
            let p = if w.starts_with('0') { prods[0] } else { prods[1] };
            let appended = format!("{w}{p}");
            let next: String = appended.chars().skip(deletion).collect();
            if next.len() < deletion {
                return Some((if next.is_empty() { appended } else { next }, step));
            }
            w = next;
        }
        None
    }

    #[test]
    fn empty_productions_halt_in_one_step() {
        let sys = TagSystem::new(2, ["", ""], "10", 100).unwrap();
        let out = run_tag(&sys).unwrap();
        assert_eq!(out.steps(), Some(1));
        assert_eq!(out.output(), Some("10"));
    }

    #[test]
    fn length_preserving_system_never_halts() {
        for cutoff in [1, 10, 1000] {
            let sys = TagSystem::new(2, ["00", "11"], "10", cutoff).unwrap();
            assert_eq!(run_tag(&sys).unwrap(), RunOutcome::BoundExceeded { bound: cutoff });
        }
    }

    #[test]
    fn halts_with_remaining_word() {
        let sys = TagSystem::new(2, ["", "0"], "11", 100).unwrap();
        let out = run_tag(&sys).unwrap();
        assert_eq!(out.output(), Some("0"));
        assert_eq!(out.steps(), Some(1));
    }

    #[test]
    fn invalid_systems() {
        assert!(TagSystem::new(0, ["", ""], "10", 10).is_err());
        assert!(TagSystem::new(2, ["", ""], "1", 10).is_err());
        assert!(TagSystem::new(2, ["2", ""], "10", 10).is_err());
        assert!(TagSystem::new(2, ["", ""], "10", 0).is_err());
    }

    #[test]
    fn agrees_with_string_trace() {
        let options = appendants(3);
        for init in ["10", "11", "011", "1101"] {
            for deletion in [1, 2, 3] {
                if init.len() < deletion {
                    continue;
                }
                for p0 in &options {
                    for p1 in &options {
                        let sys = TagSystem::new(deletion, [p0, p1], init, 60).unwrap();
                        let got = run_tag(&sys).unwrap();
                        let want = trace(deletion, [p0, p1], init, 60);
                        assert_eq!(
                            got.output().map(|s| (s.to_string(), got.steps().unwrap())),
                            want,
                            "{deletion} {p0:?} {p1:?} {init}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn short_productions_halt_within_length_bound() {
        // every production shorter than the deletion number shrinks the word
        let options = appendants(1);
        for init in ["10", "1111", "0101010"] {
            for p0 in &options {
                for p1 in &options {
                    let sys = TagSystem::new(2, [p0, p1], init, 1000).unwrap();
                    let out = run_tag(&sys).unwrap();
                    let shrink = 2 - p0.len().max(p1.len()) as u64;
                    let limit = (init.len() as u64).div_ceil(shrink);
                    assert!(out.steps().unwrap() <= limit);
                }
            }
        }
    }

    #[test]
    fn space_sizes() {
        let mut space = TagSpace {
            max_appendant: 0,
            ..TagSpace::default()
        };
        assert_eq!(space.system_count(), 1);
        let d = tagspace_distribution(&space).unwrap();
        assert_eq!(d.enumerated(), 1);
        assert_eq!(d.halting(), 1);

        space.max_appendant = 1;
        assert_eq!(space.system_count(), 9);
        assert_eq!(tagspace_distribution(&space).unwrap().enumerated(), 9);

        space.max_appendant = 3;
        assert_eq!(space.system_count(), 225);
        assert_eq!(appendants(3).len(), 15);

        space.initials.clear();
        assert!(tagspace_distribution(&space).is_err());
    }

    #[test]
    fn default_space_runs() {
        let d = tagspace_distribution(&TagSpace::default()).unwrap();
        assert_eq!(d.enumerated(), 225);
        assert!(d.halting() > 0 && d.halting() < 225);
        d.validate().unwrap();
    }
}
