//! Additive bases of k-automatic sets.
//!
//! A set `S ⊆ ℕ` is *k-automatic* when a finite automaton reading base-`k`
//! digits recognizes exactly the canonical expansions of its members. This
//! crate decides whether such a set is an (asymptotic) additive basis of the
//! naturals — whether some order `j` exists with every large enough `n` a sum
//! of at most `j` members — and computes the minimal order, the threshold
//! beyond which representation never fails, and the finite exception list.
//!
//! Supporting analyses come with it: the polynomial/exponential growth
//! dichotomy for regular languages (with explicit exponential-growth
//! witnesses), gcd computation entirely on automata, carry-threading sumset
//! automata (exact-arity, bounded-arity, and all-distinct variants, plus
//! exact representation counts), syndeticity and consecutive-run checks, and
//! exact rational verification of the Cantor-set interval arguments that back
//! the decision procedure's a-priori bounds.
//!
//! Everything is exact: word counts use big integers, set arithmetic uses
//! automata, and the real-number arguments use `BigRational`. No floating
//! point is involved anywhere.

pub mod basis;
pub mod cantor;
pub mod corpus;
pub mod dfa;
pub mod error;
pub mod gcd;
pub mod growth;
pub mod nfa;
pub mod numeral;
pub mod sumset;
pub mod textfmt;
pub mod word;

pub use basis::{decide_basis, BasisOptions, BasisReason, BasisReport, RelativeExceptions};
pub use dfa::Dfa;
pub use error::{Error, ParseError, Result};
pub use gcd::GcdReport;
pub use growth::{classify, classify_nfa, Growth, GrowthReport};
pub use nfa::Nfa;
pub use sumset::{SumMode, SumSpec};
pub use word::{Digit, Word};

/// Subset-construction guard shared by every determinization in this crate.
///
/// The limit is per thread; the CLI seeds it from `AUTOBASIS_MAX_STATES`.
pub mod limits {
    use std::cell::Cell;

    pub const DEFAULT_STATE_LIMIT: usize = 2_000_000;

    thread_local! {
        static STATE_LIMIT: Cell<usize> = const { Cell::new(DEFAULT_STATE_LIMIT) };
    }

    /// Maximum number of subset states any single determinization may build.
    pub fn state_limit() -> usize {
        STATE_LIMIT.with(|c| c.get())
    }

    /// Replaces the current thread's limit (0 is treated as 1).
    pub fn set_state_limit(limit: usize) {
        STATE_LIMIT.with(|c| c.set(limit.max(1)));
    }

    /// Runs `f` under a temporary limit, restoring the old one afterwards.
    pub fn with_state_limit<T>(limit: usize, f: impl FnOnce() -> T) -> T {
        let old = state_limit();
        set_state_limit(limit);
        let out = f();
        set_state_limit(old);
        out
    }
}
