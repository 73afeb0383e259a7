//! Line-oriented text format for automata.
//!
//! The format is designed to be hand-editable and diff-friendly:
//!
//! ```text
//! # anything after `#` is a comment
//! direction msd        # optional; `msd` (default) or `lsd`
//! base 2
//! states 2
//! initial 0
//! finals 0             # zero or more state numbers
//! 0 0 -> 0
//! 0 1 -> 1
//! 1 0 -> 1
//! 1 1 -> 0
//! ```
//!
//! Tokens are whitespace-separated. The header directives may appear in any
//! order and must each appear exactly once (`direction` may be omitted).
//! Every `state digit` pair needs exactly one transition line: machines in a
//! file are complete, just like [`Dfa`] values in memory.
//!
//! Files read most significant digit first by default because that is how
//! people write numbers. The in-memory convention is least significant digit
//! first, so parsing an `msd` file reverses the language (reverse the
//! machine, determinize, minimize) and rendering in `msd` direction does the
//! same in reverse. Round-tripping therefore canonicalizes: for a minimized
//! machine `a`, `parse(render(a)) == a` exactly.

use std::fmt::Write as _;

use crate::dfa::Dfa;
use crate::error::{Error, ParseError, Result};
use crate::word::Digit;

/// Which end of a digit string the machine in a file reads first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Most significant digit first (the human-readable default).
    Msd,
    /// Least significant digit first (the in-memory convention).
    Lsd,
}

impl Direction {
    fn keyword(self) -> &'static str {
        match self {
            Direction::Msd => "msd",
            Direction::Lsd => "lsd",
        }
    }
}

/// Result of parsing a text automaton: the machine converted to the
/// in-memory least-significant-first convention, the direction the file
/// declared, and non-fatal warnings (currently: states that can never be
/// reached from the initial state).
#[derive(Clone, Debug)]
pub struct ParsedAutomaton {
    pub dfa: Dfa,
    pub direction: Direction,
    pub warnings: Vec<String>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError::new(line, message))
}

fn parse_number<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Result<T> {
    token
        .parse::<T>()
        .map_err(|_| err(line, format!("expected {what}, found `{token}`")))
}

/// Parses the text format. See the module documentation for the grammar.
pub fn parse_automaton(text: &str) -> Result<ParsedAutomaton> {
    let mut direction: Option<(usize, Direction)> = None;
    let mut base: Option<(usize, u32)> = None;
    let mut states: Option<(usize, usize)> = None;
    let mut initial: Option<(usize, usize)> = None;
    let mut finals: Option<(usize, Vec<usize>)> = None;
    // (line, from, digit, to)
    let mut transitions: Vec<(usize, usize, Digit, usize)> = Vec::new();

    fn set_once<T>(slot: &mut Option<(usize, T)>, line: usize, name: &str, value: T) -> Result<()> {
        if let Some((first, _)) = slot {
            return Err(err(
                line,
                format!("duplicate `{name}` directive (first given on line {first})"),
            ));
        }
        *slot = Some((line, value));
        Ok(())
    }

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "direction" => {
                if tokens.len() != 2 {
                    return Err(err(line, "expected `direction msd` or `direction lsd`"));
                }
                let d = match tokens[1] {
                    "msd" => Direction::Msd,
                    "lsd" => Direction::Lsd,
                    other => {
                        return Err(err(
                            line,
                            format!("unknown direction `{other}` (expected `msd` or `lsd`)"),
                        ))
                    }
                };
                set_once(&mut direction, line, "direction", d)?;
            }
            "base" => {
                if tokens.len() != 2 {
                    return Err(err(line, "expected `base <number>`"));
                }
                let k: u32 = parse_number(tokens[1], line, "a base")?;
                if k < 2 {
                    return Err(err(line, format!("base must be at least 2, found {k}")));
                }
                set_once(&mut base, line, "base", k)?;
            }
            "states" => {
                if tokens.len() != 2 {
                    return Err(err(line, "expected `states <number>`"));
                }
                let n: usize = parse_number(tokens[1], line, "a state count")?;
                if n == 0 {
                    return Err(err(line, "a machine needs at least one state"));
                }
                set_once(&mut states, line, "states", n)?;
            }
            "initial" => {
                if tokens.len() != 2 {
                    return Err(err(line, "expected `initial <state>`"));
                }
                let q: usize = parse_number(tokens[1], line, "a state number")?;
                set_once(&mut initial, line, "initial", q)?;
            }
            "finals" => {
                let mut list = Vec::with_capacity(tokens.len() - 1);
                for tok in &tokens[1..] {
                    list.push(parse_number::<usize>(tok, line, "a state number")?);
                }
                set_once(&mut finals, line, "finals", list)?;
            }
            _ => {
                // Transition line: `from digit -> to`.
                if tokens.len() != 4 || tokens[2] != "->" {
                    return Err(err(
                        line,
                        format!(
                            "expected a directive or a transition `state digit -> state`, \
                             found `{}`",
                            content.trim()
                        ),
                    ));
                }
                let from: usize = parse_number(tokens[0], line, "a state number")?;
                let digit: Digit = parse_number(tokens[1], line, "a digit")?;
                let to: usize = parse_number(tokens[3], line, "a state number")?;
                transitions.push((line, from, digit, to));
            }
        }
    }

    let (_, base) = base.ok_or_else(|| err(0, "missing `base` directive"))?;
    let (_, n) = states.ok_or_else(|| err(0, "missing `states` directive"))?;
    let (initial_line, initial) = initial.ok_or_else(|| err(0, "missing `initial` directive"))?;
    let (finals_line, final_list) = finals.ok_or_else(|| err(0, "missing `finals` directive"))?;
    let (direction_line, direction) = direction.unwrap_or((0, Direction::Msd));
    let _ = direction_line;

    if initial >= n {
        return Err(err(
            initial_line,
            format!("initial state {initial} out of range (machine has {n} states)"),
        ));
    }
    let mut final_flags = vec![false; n];
    for &q in &final_list {
        if q >= n {
            return Err(err(
                finals_line,
                format!("final state {q} out of range (machine has {n} states)"),
            ));
        }
        final_flags[q] = true;
    }

    let k = base as usize;
    let mut delta = vec![usize::MAX; n * k];
    let mut seen_line = vec![0usize; n * k];
    for (line, from, digit, to) in transitions {
        if from >= n {
            return Err(err(
                line,
                format!("state {from} out of range (machine has {n} states)"),
            ));
        }
        if digit >= base {
            return Err(err(
                line,
                format!("digit {digit} out of range for base {base}"),
            ));
        }
        if to >= n {
            return Err(err(
                line,
                format!("state {to} out of range (machine has {n} states)"),
            ));
        }
        let slot = from * k + digit as usize;
        if delta[slot] != usize::MAX {
            return Err(err(
                line,
                format!(
                    "duplicate transition for state {from} on digit {digit} \
                     (first given on line {})",
                    seen_line[slot]
                ),
            ));
        }
        delta[slot] = to;
        seen_line[slot] = line;
    }
    for q in 0..n {
        for d in 0..k {
            if delta[q * k + d] == usize::MAX {
                return Err(err(
                    0,
                    format!("state {q} has no transition on digit {d}; machines must be complete"),
                ));
            }
        }
    }

    let warnings = unreachable_warnings(n, k, initial, &delta);
    let file_machine = Dfa::from_parts(base, initial, final_flags, delta)?;
    let dfa = match direction {
        Direction::Lsd => file_machine,
        Direction::Msd => file_machine.reversed().determinize()?.minimize(),
    };
    Ok(ParsedAutomaton {
        dfa,
        direction,
        warnings,
    })
}

fn unreachable_warnings(n: usize, k: usize, initial: usize, delta: &[usize]) -> Vec<String> {
    let mut seen = vec![false; n];
    let mut stack = vec![initial];
    seen[initial] = true;
    while let Some(q) = stack.pop() {
        for d in 0..k {
            let t = delta[q * k + d];
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    (0..n)
        .filter(|&q| !seen[q])
        .map(|q| format!("state {q} is unreachable from the initial state"))
        .collect()
}

/// Renders a machine in the text format, reading in the given direction.
///
/// `Lsd` dumps the machine as is. `Msd` converts to a most-significant-first
/// reader (reverse, determinize, minimize), which is how corpus files are
/// stored; the conversion can fail if determinization exceeds the state
/// limit.
pub fn render_automaton(dfa: &Dfa, direction: Direction) -> Result<String> {
    let machine = match direction {
        Direction::Lsd => dfa.clone(),
        Direction::Msd => dfa.reversed().determinize()?.minimize(),
    };
    let n = machine.state_count();
    let k = machine.base();
    let mut out = String::new();
    let _ = writeln!(out, "direction {}", direction.keyword());
    let _ = writeln!(out, "base {k}");
    let _ = writeln!(out, "states {n}");
    let _ = writeln!(out, "initial {}", machine.initial());
    let finals: Vec<String> = (0..n)
        .filter(|&q| machine.is_final(q))
        .map(|q| q.to_string())
        .collect();
    if finals.is_empty() {
        let _ = writeln!(out, "finals");
    } else {
        let _ = writeln!(out, "finals {}", finals.join(" "));
    }
    for q in 0..n {
        for d in 0..k {
            let _ = writeln!(out, "{q} {d} -> {}", machine.next(q, d));
        }
    }
    Ok(out)
}
