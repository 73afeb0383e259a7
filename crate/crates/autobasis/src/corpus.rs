//! Built-in example machines.
//!
//! A small corpus of automatic sets that exercise every corner of the
//! decision procedure: sets that are bases, sets blocked by a common
//! divisor, sparse sets, and a parametric family with worst-case thresholds.
//! The fixed entries live as text files in the crate's `corpus/` directory
//! and are embedded at compile time; `hard(k,m)` is constructed on demand.

use crate::basis::hard_family;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::textfmt::parse_automaton;

/// A named example machine, in the in-memory least-significant-first
/// convention, together with a one-line description of its membership rule.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub base: u32,
    pub machine: Dfa,
    pub note: String,
}

const FIXED: [(&str, &str, &str); 5] = [
    (
        "cantor3",
        include_str!("../corpus/cantor3.aut"),
        "base-3 expansions using only digits 0 and 2",
    ),
    (
        "evil2",
        include_str!("../corpus/evil2.aut"),
        "an even number of ones in the binary expansion",
    ),
    (
        "rudinshapiro2",
        include_str!("../corpus/rudinshapiro2.aut"),
        "an odd number of 11-blocks in the binary expansion",
    ),
    (
        "digits01base4",
        include_str!("../corpus/digits01base4.aut"),
        "base-4 expansions using only digits 0 and 1",
    ),
    (
        "digits02base4",
        include_str!("../corpus/digits02base4.aut"),
        "base-4 expansions using only digits 0 and 2",
    ),
];

/// Names of the fixed corpus entries, in listing order. The parametric
/// family `hard(k,m)` is additionally available through [`corpus`].
pub fn corpus_names() -> Vec<&'static str> {
    FIXED.iter().map(|(name, _, _)| *name).collect()
}

/// Looks up a corpus entry by name: one of the fixed names from
/// [`corpus_names`], or `hard(k,m)` with a base `k ≥ 2` and a state count
/// `m ≥ 2`.
pub fn corpus(name: &str) -> Result<CorpusEntry> {
    for (fixed_name, text, note) in FIXED {
        if name == fixed_name {
            let machine = parse_automaton(text)?.dfa;
            let base = machine.base();
            return Ok(CorpusEntry {
                name: name.to_string(),
                base,
                machine,
                note: note.to_string(),
            });
        }
    }
    if let Some(args) = name.strip_prefix("hard(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if parts.len() == 2 {
            if let (Ok(k), Ok(m)) = (parts[0].parse::<u32>(), parts[1].parse::<usize>()) {
                let (machine, _) = hard_family(k, m, 1)?;
                return Ok(CorpusEntry {
                    name: format!("hard({k},{m})"),
                    base: k,
                    machine: machine.minimize(),
                    note: format!(
                        "expansion length ≡ {} (mod {m}); worst-case thresholds",
                        m - 1
                    ),
                });
            }
        }
        return Err(Error::Precondition(format!(
            "expected `hard(k,m)` with numeric k and m, found `{name}`"
        )));
    }
    Err(Error::UnknownCorpus(name.to_string()))
}
