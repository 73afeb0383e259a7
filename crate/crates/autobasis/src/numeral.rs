//! Between numbers and digit words.
//!
//! The canonical base-`k` expansion of `n ≥ 1` has no leading zero; read
//! least significant digit first that means the *last* digit is nonzero.
//! Zero's canonical expansion is the empty word. A machine "contains" the
//! value `n` exactly when it accepts the canonical word `(n)_k`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::word::{Digit, Word};

/// Canonical expansion of `n`, least significant digit first; `0 ↦ ε`.
pub fn encode(n: &BigUint, base: u32) -> Word {
    let mut digits = Vec::new();
    let k = BigUint::from(base);
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&k);
        digits.push(r.to_u32().expect("digit fits in u32"));
        rest = q;
    }
    Word::from_lsd(digits)
}

/// Value of a word (any word, canonical or not).
pub fn decode(w: &Word, base: u32) -> BigUint {
    let k = BigUint::from(base);
    let mut value = BigUint::zero();
    for &d in w.digits().iter().rev() {
        value = value * &k + BigUint::from(d);
    }
    value
}

/// Convenience for small values.
pub fn encode_u64(n: u64, base: u32) -> Word {
    encode(&BigUint::from(n), base)
}

/// Does the machine contain the value `n`, i.e. accept `(n)_k`?
pub fn accepts_value(a: &Dfa, n: &BigUint) -> bool {
    a.accepts_word(&encode(n, a.base()))
}

/// The two-state machine accepting exactly the canonical expansions:
/// the empty word plus every word whose last digit is nonzero.
pub fn canonical_language(base: u32) -> Dfa {
    // State 0: empty so far, or last digit nonzero (accepting).
    // State 1: last digit zero (rejecting).
    let k = base as usize;
    let mut delta = vec![0usize; 2 * k];
    delta[0] = 1; // state 0, digit 0
    delta[k] = 1; // state 1, digit 0
    Dfa::from_parts(base, 0, vec![true, false], delta).expect("canonical machine is well formed")
}

/// Language `L · 0*`: every accepted word, padded by any number of zero
/// digits. Padding never changes the value a word denotes, so this closes a
/// canonical machine over all representations of its members.
pub fn zero_closure(a: &Dfa) -> Result<Dfa> {
    let n = a.state_count();
    let pad = n; // fresh accepting state that consumes zeros
    let mut b = Nfa::builder(a.base(), n + 1);
    b.add_initial(a.initial());
    for q in 0..n {
        for d in 0..a.base() {
            b.add_transition(q, d, a.next(q, d));
        }
        if a.is_final(q) {
            b.add_final(q);
            b.add_transition(q, 0, pad);
        }
    }
    b.add_final(pad);
    b.add_transition(pad, 0, pad);
    Ok(b.build().determinize()?.minimize())
}

/// Restriction of a machine to canonical words, minimized. This is the
/// canonical-form machine of the *set* `{n : a accepts (n)_k}`.
pub fn restrict_canonical(a: &Dfa) -> Result<Dfa> {
    Ok(a.intersect(&canonical_language(a.base()))?.minimize())
}

/// All members of the set up to `bound`, ascending.
pub fn set_members(a: &Dfa, bound: &BigUint) -> Result<Vec<BigUint>> {
    let canonical = restrict_canonical(a)?;
    let max_len = encode(bound, a.base()).len();
    let mut values: Vec<BigUint> = canonical
        .enumerate(max_len)
        .iter()
        .map(|w| decode(w, a.base()))
        .filter(|v| v <= bound)
        .collect();
    values.sort();
    Ok(values)
}

/// Smallest member of the set (including 0), or `None` for the empty set.
pub fn min_member(a: &Dfa) -> Result<Option<BigUint>> {
    let canonical = restrict_canonical(a)?;
    min_member_of_canonical(&canonical, 0)
}

/// Smallest member that is at least 1, failing when none exists.
pub fn smallest_nonzero_member(a: &Dfa) -> Result<BigUint> {
    let canonical = restrict_canonical(a)?;
    match min_member_of_canonical(&canonical, 1)? {
        Some(v) => Ok(v),
        None => Err(Error::NoNonzeroMember),
    }
}

/// Minimal decoded value over accepted canonical words of length ≥ min_len.
///
/// Canonical words order by value as (length, then most-significant-digit
/// lexicography), so the shortest accepted length decides, and within that
/// length the numerically smallest word is wanted. The caller passes a
/// machine that already accepts canonical words only.
fn min_member_of_canonical(canonical: &Dfa, min_len: usize) -> Result<Option<BigUint>> {
    let n = canonical.state_count();
    // A shortest accepted word of length ≥ min_len needs at most
    // min_len + n steps: walk min_len steps, then a shortest path to
    // acceptance (at most n more).
    let horizon = min_len + n;
    let table = canonical.exact_reach_table(horizon);
    let len = (min_len..=horizon).find(|&r| table[r][canonical.initial()]);
    let Some(len) = len else {
        return Ok(None);
    };
    let words = words_of_exact_length(canonical, len, &table);
    Ok(words
        .iter()
        .map(|w| decode(w, canonical.base()))
        .min())
}

fn words_of_exact_length(a: &Dfa, len: usize, table: &[Vec<bool>]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<Digit> = Vec::new();
    fn rec(
        a: &Dfa,
        q: usize,
        remaining: usize,
        table: &[Vec<bool>],
        stack: &mut Vec<Digit>,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            if a.is_final(q) {
                out.push(Word::from_lsd(stack.clone()));
            }
            return;
        }
        for d in 0..a.base() {
            let t = a.next(q, d);
            if table[remaining - 1][t] {
                stack.push(d);
                rec(a, t, remaining - 1, table, stack, out);
                stack.pop();
            }
        }
    }
    rec(a, a.initial(), len, table, &mut stack, &mut out);
    out
}

/// Members of exact canonical length `len`, ascending by value.
pub(crate) fn members_of_length(canonical: &Dfa, len: usize) -> Vec<BigUint> {
    let table = canonical.exact_reach_table(len);
    let mut values: Vec<BigUint> = words_of_exact_length(canonical, len, &table)
        .iter()
        .map(|w| decode(w, canonical.base()))
        .collect();
    values.sort();
    values
}
