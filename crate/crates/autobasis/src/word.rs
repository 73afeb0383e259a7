//! Digit strings over the alphabet `{0, …, k-1}`.
//!
//! Throughout the crate a word stores its digits least significant first:
//! `word.digits()[0]` is the units digit. The decimal 43 in base 2 is the
//! word `[1, 1, 0, 1, 0, 1]`, which prints as `110101` (most significant
//! digit first, the usual reading order).

use std::fmt;

pub type Digit = u32;

/// A word over a digit alphabet, least significant digit first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Digit>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from digits given least significant first.
    pub fn from_lsd(digits: Vec<Digit>) -> Self {
        Word(digits)
    }

    /// Builds a word from digits given most significant first.
    pub fn from_msd(mut digits: Vec<Digit>) -> Self {
        digits.reverse();
        Word(digits)
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, d: Digit) {
        self.0.push(d);
    }

    /// Concatenation in reading order: `self` is consumed first by an
    /// automaton, then `tail`.
    pub fn concat(&self, tail: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&tail.0);
        Word(v)
    }

    /// `self` followed by `n` copies of `block`.
    pub fn concat_repeated(&self, block: &Word, n: usize) -> Word {
        let mut v = self.0.clone();
        for _ in 0..n {
            v.extend_from_slice(&block.0);
        }
        Word(v)
    }
}

impl fmt::Display for Word {
    /// Most significant digit first. Digits above 9 use letters `a..z` when
    /// they fit, otherwise the digits are printed dot-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        let all_small = self.0.iter().all(|&d| d < 36);
        if all_small {
            for &d in self.0.iter().rev() {
                let c = std::char::from_digit(d, 36).unwrap();
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().rev().map(|d| d.to_string()).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}
