//! Two-symbol Turing machines on a blank two-way tape.
//!
//! A machine with `n` states has `2n` table entries, one per (state, read
//! symbol). Each entry is either a halting action, which writes a symbol and
//! stops without moving, or a moving action that writes, moves one cell and
//! switches to one of the `n` states. That gives `4n + 2` choices per entry
//! and `(4n + 2)^(2n)` machines in total.
//!
//! Machines are enumerated by a mixed-radix index: the table is read as a
//! `2n`-digit number in base `4n + 2`, most significant digit first, with
//! entries ordered (state 1, read 0), (state 1, read 1), (state 2, read 0)...

use std::fmt;

use crate::error::{Error, Result};

/// Blank tape symbol.
pub const BLANK: u8 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

/// One table entry. Halting actions write but never move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    Halt { write: u8 },
    Move { write: u8, dir: Direction, next: u32 },
}

impl Action {
    pub fn write(&self) -> u8 {
        match *self {
            Action::Halt { write } | Action::Move { write, .. } => write,
        }
    }

    fn digit(&self) -> u128 {
        match *self {
            Action::Halt { write } => write as u128,
            Action::Move { write, dir, next } => {
                let e = write as u128
                    + 2 * matches!(dir, Direction::Right) as u128
                    + 4 * (next as u128 - 1);
                e + 2
            }
        }
    }

    fn from_digit(d: u128) -> Action {
        if d < 2 {
            return Action::Halt { write: d as u8 };
        }
        let e = d - 2;
        Action::Move {
            write: (e % 2) as u8,
            dir: if (e / 2).is_multiple_of(2) {
                Direction::Left
            } else {
                Direction::Right
            },
            next: 1 + (e / 4) as u32,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Action::Halt { write } => write!(f, "{write}-H"),
            Action::Move { write, dir, next } => {
                let d = match dir {
                    Direction::Left => 'L',
                    Direction::Right => 'R',
                };
                write!(f, "{write}{d}{next}")
            }
        }
    }
}

/// Number of machines with `states` states: `(4n + 2)^(2n)`.
pub fn machine_count(states: u32) -> Result<u128> {
    if states == 0 {
        return Err(Error::InvalidStateCount(states));
    }
    let base = 4 * states as u128 + 2;
    base.checked_pow(2 * states)
        .ok_or(Error::SpaceTooLarge(states))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MachineIndex {
    pub states: u32,
    pub index: u128,
}

impl MachineIndex {
    pub fn new(states: u32, index: u128) -> Result<Self> {
        let size = machine_count(states)?;
        if index >= size {
            return Err(Error::IndexOutOfRange {
                states,
                index,
                size,
            });
        }
        Ok(MachineIndex { states, index })
    }
}

/// A complete transition table. State 1 is the start state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransitionTable {
    states: u32,
    entries: Vec<Action>,
}

impl TransitionTable {
    /// Builds a table from entries ordered (1,0), (1,1), (2,0), ...
    pub fn new(states: u32, entries: Vec<Action>) -> Result<Self> {
        if states == 0 {
            return Err(Error::InvalidStateCount(states));
        }
        if entries.len() != 2 * states as usize {
            return Err(Error::MalformedTable(format!(
                "{} entries for {} states, expected {}",
                entries.len(),
                states,
                2 * states
            )));
        }
        for (i, a) in entries.iter().enumerate() {
            if a.write() > 1 {
                return Err(Error::MalformedTable(format!(
                    "entry {i} writes symbol {}",
                    a.write()
                )));
            }
            if let Action::Move { next, .. } = *a {
                if next == 0 || next > states {
                    return Err(Error::MalformedTable(format!(
                        "entry {i} jumps to state {next}"
                    )));
                }
            }
        }
        Ok(TransitionTable { states, entries })
    }

    /// Every entry set to the same action.
    pub fn uniform(states: u32, action: Action) -> Result<Self> {
        Self::new(states, vec![action; 2 * states as usize])
    }

    pub fn states(&self) -> u32 {
        self.states
    }

    pub fn entries(&self) -> &[Action] {
        &self.entries
    }

    /// Entry for a 1-based `state` reading `symbol`.
    pub fn action(&self, state: u32, symbol: u8) -> Action {
        self.entries[2 * (state as usize - 1) + symbol as usize]
    }

    pub fn decode(idx: MachineIndex) -> Result<Self> {
        let size = machine_count(idx.states)?;
        if idx.index >= size {
            return Err(Error::IndexOutOfRange {
                states: idx.states,
                index: idx.index,
                size,
            });
        }
        let base = 4 * idx.states as u128 + 2;
        let len = 2 * idx.states as usize;
        let mut entries = vec![Action::Halt { write: 0 }; len];
        let mut rest = idx.index;
        for slot in entries.iter_mut().rev() {
            *slot = Action::from_digit(rest % base);
            rest /= base;
        }
        Ok(TransitionTable {
            states: idx.states,
            entries,
        })
    }

    pub fn encode(&self) -> MachineIndex {
        let base = 4 * self.states as u128 + 2;
        let index = self
            .entries
            .iter()
            .fold(0u128, |acc, a| acc * base + a.digit());
        MachineIndex {
            states: self.states,
            index,
        }
    }

    /// Swaps the roles of 0 and 1: entry (q, s) becomes entry (q, 1 - s) of
    /// `self` with its written bit flipped.
    ///
    /// The blank symbol stays 0, so the complemented machine does not in
    /// general produce the complemented output from a blank tape.
    pub fn complement(&self) -> Self {
        let entries = self
            .entries
            .chunks_exact(2)
            .flat_map(|pair| [pair[1], pair[0]])
            .map(|a| match a {
                Action::Halt { write } => Action::Halt { write: 1 - write },
                Action::Move { write, dir, next } => Action::Move {
                    write: 1 - write,
                    dir,
                    next,
                },
            })
            .collect();
        TransitionTable {
            states: self.states,
            entries,
        }
    }

    /// Exchanges Left and Right in every entry.
    pub fn mirror(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|a| match *a {
                Action::Move { write, dir, next } => Action::Move {
                    write,
                    dir: dir.flip(),
                    next,
                },
                halt => halt,
            })
            .collect();
        TransitionTable {
            states: self.states,
            entries,
        }
    }

    /// True when no entry moves the head, i.e. the table is its own mirror.
    pub fn is_mirror_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|a| matches!(a, Action::Halt { .. }))
    }
}

impl fmt::Display for TransitionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, pair) in self.entries.chunks_exact(2).enumerate() {
            if q > 0 {
                f.write_str("_")?;
            }
            write!(f, "{},{}", pair[0], pair[1])?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RunOutcome {
    /// Stopped on a halting action. `output` is the tape between the leftmost
    /// and rightmost visited cells.
    Halted {
        output: String,
        steps: u64,
        bound: u64,
    },
    BoundExceeded {
        bound: u64,
    },
}

impl RunOutcome {
    pub fn bound(&self) -> u64 {
        match *self {
            RunOutcome::Halted { bound, .. } | RunOutcome::BoundExceeded { bound } => bound,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, RunOutcome::Halted { .. })
    }

    pub fn output(&self) -> Option<&str> {
        match self {
            RunOutcome::Halted { output, .. } => Some(output),
            RunOutcome::BoundExceeded { .. } => None,
        }
    }

    pub fn steps(&self) -> Option<u64> {
        match *self {
            RunOutcome::Halted { steps, .. } => Some(steps),
            RunOutcome::BoundExceeded { .. } => None,
        }
    }
}

/// Runs `table` from a blank tape for at most `bound` steps.
pub fn simulate(table: &TransitionTable, bound: u64) -> Result<RunOutcome> {
    if bound == 0 {
        return Err(Error::InvalidBound);
    }
    Ok(Simulator::new().run(table, bound))
}

// Flattened entry: next == 0 marks a halting action.
#[derive(Clone, Copy, Default)]
struct Step {
    write: u8,
    delta: isize,
    next: u32,
}

/// Reusable simulation scratch space. Keeps the tape allocation alive across
/// runs, which matters when sweeping millions of machines.
pub struct Simulator {
    tape: Vec<u8>,
    steps: Vec<Step>,
}

impl Default for Simulator {
    fn default() -> Self {
        Self::new()
    }
}

impl Simulator {
    pub fn new() -> Self {
        Simulator {
            tape: vec![BLANK; 64],
            steps: Vec::new(),
        }
    }

    /// Same as [`simulate`], reusing buffers. A zero bound is treated as 1.
    pub fn run(&mut self, table: &TransitionTable, bound: u64) -> RunOutcome {
        let bound = bound.max(1);
        self.steps.clear();
        self.steps.extend(table.entries.iter().map(|a| match *a {
            Action::Halt { write } => Step {
                write,
                delta: 0,
                next: 0,
            },
            Action::Move { write, dir, next } => Step {
                write,
                delta: match dir {
                    Direction::Left => -1,
                    Direction::Right => 1,
                },
                next,
            },
        }));

        let mut head = self.tape.len() / 2;
        let (mut lo, mut hi) = (head, head);
        let mut state = 1u32;
        let mut taken = 0u64;
        let result = loop {
            if taken == bound {
                break None;
            }
            taken += 1;
            let step = self.steps[2 * (state as usize - 1) + self.tape[head] as usize];
            self.tape[head] = step.write;
            if step.next == 0 {
                break Some(taken);
            }
            state = step.next;
            if step.delta < 0 {
                if head == 0 {
                    let shift = self.grow();
                    head += shift;
                    lo += shift;
                    hi += shift;
                }
                head -= 1;
                lo = lo.min(head);
            } else {
                if head + 1 == self.tape.len() {
                    let shift = self.grow();
                    head += shift;
                    lo += shift;
                    hi += shift;
                }
                head += 1;
                hi = hi.max(head);
            }
        };

        let outcome = match result {
            Some(steps) => RunOutcome::Halted {
                output: self.tape[lo..=hi]
                    .iter()
                    .map(|&c| if c == 0 { '0' } else { '1' })
                    .collect(),
                steps,
                bound,
            },
            None => RunOutcome::BoundExceeded { bound },
        };
        self.tape[lo..=hi].fill(BLANK);
        outcome
    }

    // Doubles the tape, keeping the old contents centred. Returns the offset
    // added to every existing position.
    fn grow(&mut self) -> usize {
        let old = self.tape.len();
        let shift = old / 2;
        let mut tape = vec![BLANK; old * 2];
        tape[shift..shift + old].copy_from_slice(&self.tape);
        self.tape = tape;
        shift
    }
}
