//! Deterministic finite automata over digit alphabets.
//!
//! A [`Dfa`] reads words least significant digit first and is always
//! *complete*: every state has a transition on every digit. Operations that
//! could produce partial machines add an explicit dead state instead.
//! States are dense indices `0..state_count()`.

use std::collections::HashMap;
use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::word::{Digit, Word};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    base: u32,
    initial: usize,
    finals: Vec<bool>,
    /// Row-major transition table: `delta[q * base + d]`.
    delta: Vec<usize>,
}

impl Dfa {
    /// Builds a machine from its parts, validating completeness and ranges.
    pub fn from_parts(
        base: u32,
        initial: usize,
        finals: Vec<bool>,
        delta: Vec<usize>,
    ) -> Result<Dfa> {
        if base < 2 {
            return Err(Error::BadBase(base));
        }
        let n = finals.len();
        if n == 0 {
            return Err(Error::Precondition("a machine needs at least one state".into()));
        }
        if delta.len() != n * base as usize {
            return Err(Error::Precondition(format!(
                "transition table has {} entries, expected {} ({} states x base {})",
                delta.len(),
                n * base as usize,
                n,
                base
            )));
        }
        if initial >= n {
            return Err(Error::Precondition(format!(
                "initial state {initial} out of range (machine has {n} states)"
            )));
        }
        if let Some(&bad) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::Precondition(format!(
                "transition target {bad} out of range (machine has {n} states)"
            )));
        }
        Ok(Dfa {
            base,
            initial,
            finals,
            delta,
        })
    }

    /// The machine accepting no word at all.
    pub fn empty_language(base: u32) -> Dfa {
        Dfa {
            base,
            initial: 0,
            finals: vec![false],
            delta: vec![0; base as usize],
        }
    }

    /// The machine accepting every word, including the empty one.
    pub fn all_words(base: u32) -> Dfa {
        Dfa {
            base,
            initial: 0,
            finals: vec![true],
            delta: vec![0; base as usize],
        }
    }

    /// Accepts exactly the single word `w`.
    pub fn single_word(base: u32, w: &Word) -> Result<Dfa> {
        let n = w.len() + 2; // chain + dead state
        let dead = n - 1;
        let mut delta = vec![dead; n * base as usize];
        let mut finals = vec![false; n];
        for (i, &d) in w.digits().iter().enumerate() {
            if d >= base {
                return Err(Error::DigitOutOfRange { digit: d, base });
            }
            delta[i * base as usize + d as usize] = i + 1;
        }
        finals[w.len()] = true;
        Ok(Dfa {
            base,
            initial: 0,
            finals,
            delta,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn next(&self, q: usize, d: Digit) -> usize {
        self.delta[q * self.base as usize + d as usize]
    }

    pub fn accepts(&self, digits: &[Digit]) -> bool {
        let mut q = self.initial;
        for &d in digits {
            debug_assert!(d < self.base);
            q = self.next(q, d);
        }
        self.finals[q]
    }

    pub fn accepts_word(&self, w: &Word) -> bool {
        self.accepts(w.digits())
    }

    fn check_base(&self, other: &Dfa) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch {
                left: self.base,
                right: other.base,
            });
        }
        Ok(())
    }

    /// Language complement. Completeness makes this a plain flip of the
    /// accepting set.
    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for f in &mut out.finals {
            *f = !*f;
        }
        out
    }

    fn product(&self, other: &Dfa, keep: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.check_base(other)?;
        let k = self.base as usize;
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut delta: Vec<usize> = Vec::new();
        let start = (self.initial, other.initial);
        index.insert(start, 0);
        pairs.push(start);
        let mut head = 0;
        while head < pairs.len() {
            let (a, b) = pairs[head];
            for d in 0..k {
                let t = (self.delta[a * k + d], other.delta[b * k + d]);
                let id = *index.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    pairs.len() - 1
                });
                delta.push(id);
            }
            head += 1;
        }
        let finals = pairs
            .iter()
            .map(|&(a, b)| keep(self.finals[a], other.finals[b]))
            .collect();
        Ok(Dfa {
            base: self.base,
            initial: 0,
            finals,
            delta,
        })
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    /// Words of `self` not accepted by `other`.
    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    /// Language equality, decided on the reachable product.
    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        let sym = self.product(other, |a, b| a != b)?;
        Ok(sym.is_empty())
    }

    /// States reachable from the initial state, in BFS discovery order
    /// (digits ascending).
    fn reachable_order(&self) -> Vec<usize> {
        let k = self.base as usize;
        let mut seen = vec![false; self.state_count()];
        let mut order = Vec::new();
        seen[self.initial] = true;
        order.push(self.initial);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            for d in 0..k {
                let t = self.delta[q * k + d];
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            head += 1;
        }
        order
    }

    /// Reachable *and* co-reachable states (those on some accepting path).
    pub(crate) fn useful_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let k = self.base as usize;
        let mut reach = vec![false; n];
        let mut queue = VecDeque::new();
        reach[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            for d in 0..k {
                let t = self.delta[q * k + d];
                if !reach[t] {
                    reach[t] = true;
                    queue.push_back(t);
                }
            }
        }
        // Reverse reachability from the accepting states.
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for d in 0..k {
                rev[self.delta[q * k + d]].push(q);
            }
        }
        let mut coreach = vec![false; n];
        let mut queue = VecDeque::new();
        for q in 0..n {
            if self.finals[q] {
                coreach[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if !coreach[p] {
                    coreach[p] = true;
                    queue.push_back(p);
                }
            }
        }
        (0..n).map(|q| reach[q] && coreach[q]).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.useful_states().iter().any(|&u| u)
    }

    /// True when the language is finite: no useful state lies on a cycle.
    pub fn is_finite(&self) -> bool {
        let useful = self.useful_states();
        let n = self.state_count();
        let k = self.base as usize;
        // Kahn's algorithm restricted to useful states; leftover nodes form cycles.
        let mut indeg = vec![0usize; n];
        for q in 0..n {
            if !useful[q] {
                continue;
            }
            for d in 0..k {
                let t = self.delta[q * k + d];
                if useful[t] {
                    indeg[t] += 1;
                }
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&q| useful[q] && indeg[q] == 0).collect();
        let mut removed = 0usize;
        let total = useful.iter().filter(|&&u| u).count();
        while let Some(q) = queue.pop_front() {
            removed += 1;
            for d in 0..k {
                let t = self.delta[q * k + d];
                if useful[t] {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        queue.push_back(t);
                    }
                }
            }
        }
        removed == total
    }

    /// Canonical minimal machine: restrict to reachable states, refine the
    /// partition induced by acceptance, then renumber by BFS so that two
    /// language-equal inputs minimize to structurally identical machines.
    pub fn minimize(&self) -> Dfa {
        let k = self.base as usize;
        let order = self.reachable_order();
        let mut compact = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            compact[q] = i;
        }
        let n = order.len();
        let mut delta = vec![0usize; n * k];
        let mut finals = vec![false; n];
        for (i, &q) in order.iter().enumerate() {
            finals[i] = self.finals[q];
            for d in 0..k {
                delta[i * k + d] = compact[self.delta[q * k + d]];
            }
        }

        // Moore refinement: split classes by (acceptance, successor classes).
        let mut class: Vec<usize> = finals.iter().map(|&f| usize::from(f)).collect();
        let mut count = 2.min(n);
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0usize; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                for d in 0..k {
                    sig.push(class[delta[q * k + d]]);
                }
                let id = sig_ids.len();
                next[q] = *sig_ids.entry(sig).or_insert(id);
            }
            let new_count = sig_ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Quotient machine, renumbered by BFS from the initial class.
        let rep_delta = |c: usize, d: usize| -> usize {
            let q = (0..n).find(|&q| class[q] == c).unwrap();
            class[delta[q * k + d]]
        };
        let mut number = vec![usize::MAX; count];
        let mut bfs = vec![class[0]]; // state 0 is the (compacted) initial
        number[class[0]] = 0;
        let mut head = 0;
        while head < bfs.len() {
            let c = bfs[head];
            for d in 0..k {
                let t = rep_delta(c, d);
                if number[t] == usize::MAX {
                    number[t] = bfs.len();
                    bfs.push(t);
                }
            }
            head += 1;
        }
        let m = bfs.len();
        let mut out_delta = vec![0usize; m * k];
        let mut out_finals = vec![false; m];
        for (i, &c) in bfs.iter().enumerate() {
            let q = (0..n).find(|&q| class[q] == c).unwrap();
            out_finals[i] = finals[q];
            for d in 0..k {
                out_delta[i * k + d] = number[class[delta[q * k + d]]];
            }
        }
        Dfa {
            base: self.base,
            initial: 0,
            finals: out_finals,
            delta: out_delta,
        }
    }

    /// `table[r][q]`: some word of length exactly `r` leads from `q` to an
    /// accepting state.
    pub(crate) fn exact_reach_table(&self, max_len: usize) -> Vec<Vec<bool>> {
        let n = self.state_count();
        let k = self.base as usize;
        let mut table = Vec::with_capacity(max_len + 1);
        table.push(self.finals.clone());
        for r in 1..=max_len {
            let prev = &table[r - 1];
            let mut row = vec![false; n];
            for q in 0..n {
                row[q] = (0..k).any(|d| prev[self.delta[q * k + d]]);
            }
            table.push(row);
        }
        table
    }

    /// All accepted words of length at most `max_len`, ordered by length and
    /// then lexicographically (in machine reading order).
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let table = self.exact_reach_table(max_len);
        let mut out = Vec::new();
        let mut stack: Vec<Digit> = Vec::new();
        for len in 0..=max_len {
            self.enumerate_rec(self.initial, len, &table, &mut stack, &mut out);
            debug_assert!(stack.is_empty());
        }
        out
    }

    fn enumerate_rec(
        &self,
        q: usize,
        remaining: usize,
        table: &[Vec<bool>],
        stack: &mut Vec<Digit>,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            if self.finals[q] {
                out.push(Word::from_lsd(stack.clone()));
            }
            return;
        }
        for d in 0..self.base {
            let t = self.next(q, d);
            if table[remaining - 1][t] {
                stack.push(d);
                self.enumerate_rec(t, remaining - 1, table, stack, out);
                stack.pop();
            }
        }
    }

    /// Number of accepted words of length exactly `n` (an exact count).
    pub fn count_words_of_length(&self, n: usize) -> BigUint {
        let k = self.base as usize;
        let states = self.state_count();
        let mut cur = vec![BigUint::zero(); states];
        cur[self.initial] = BigUint::from(1u32);
        for _ in 0..n {
            let mut next = vec![BigUint::zero(); states];
            for q in 0..states {
                if cur[q].is_zero() {
                    continue;
                }
                for d in 0..k {
                    let t = self.delta[q * k + d];
                    next[t] += &cur[q];
                }
            }
            cur = next;
        }
        let mut total = BigUint::zero();
        for q in 0..states {
            if self.finals[q] {
                total += &cur[q];
            }
        }
        total
    }

    /// Number of accepted words of length at most `n`.
    pub fn count_words_up_to(&self, n: usize) -> BigUint {
        let k = self.base as usize;
        let states = self.state_count();
        let mut cur = vec![BigUint::zero(); states];
        cur[self.initial] = BigUint::from(1u32);
        let mut total = BigUint::zero();
        for step in 0..=n {
            for q in 0..states {
                if self.finals[q] && !cur[q].is_zero() {
                    total += &cur[q];
                }
            }
            if step == n {
                break;
            }
            let mut next = vec![BigUint::zero(); states];
            for q in 0..states {
                if cur[q].is_zero() {
                    continue;
                }
                for d in 0..k {
                    next[self.delta[q * k + d]] += &cur[q];
                }
            }
            cur = next;
        }
        total
    }

    /// The reversal of the language, as a nondeterministic machine.
    pub fn reversed(&self) -> Nfa {
        let n = self.state_count();
        let k = self.base as usize;
        let mut builder = Nfa::builder(self.base, n);
        for q in 0..n {
            for d in 0..k {
                builder.add_transition(self.delta[q * k + d], d as Digit, q);
            }
        }
        for q in 0..n {
            if self.finals[q] {
                builder.add_initial(q);
            }
        }
        builder.add_final(self.initial);
        builder.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Base-2 machine for words whose digit sum is even.
    fn even_ones() -> Dfa {
        Dfa::from_parts(2, 0, vec![true, false], vec![0, 1, 1, 0]).unwrap()
    }

    #[test]
    fn accepts_follows_transitions() {
        let m = even_ones();
        assert!(m.accepts(&[]));
        assert!(m.accepts(&[1, 1]));
        assert!(!m.accepts(&[1, 0]));
    }

    #[test]
    fn complement_flips_membership() {
        let m = even_ones();
        let c = m.complement();
        for w in [vec![], vec![0], vec![1], vec![1, 1], vec![1, 0, 1]] {
            assert_ne!(m.accepts(&w), c.accepts(&w));
        }
    }

    #[test]
    fn base_mismatch_is_rejected() {
        let a = even_ones();
        let b = Dfa::all_words(3);
        assert!(matches!(
            a.intersect(&b),
            Err(Error::BaseMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn empty_and_all() {
        assert!(Dfa::empty_language(2).is_empty());
        assert!(!Dfa::all_words(2).is_empty());
        assert!(Dfa::empty_language(2).is_finite());
        assert!(!Dfa::all_words(2).is_finite());
    }

    #[test]
    fn single_word_machine() {
        let w = Word::from_lsd(vec![1, 0, 1]);
        let m = Dfa::single_word(2, &w).unwrap();
        assert!(m.accepts_word(&w));
        assert!(!m.accepts(&[1, 0]));
        assert!(!m.accepts(&[1, 0, 1, 0]));
        assert!(m.is_finite());
        assert_eq!(m.enumerate(5), vec![w]);
    }

    #[test]
    fn minimize_collapses_duplicate_states() {
        // Two redundant copies of the even-ones machine glued together.
        let m = Dfa::from_parts(
            2,
            0,
            vec![true, false, true, false],
            vec![2, 3, 3, 2, 0, 1, 1, 0],
        )
        .unwrap();
        let min = m.minimize();
        assert_eq!(min.state_count(), 2);
        assert!(min.equivalent(&even_ones()).unwrap());
        // Idempotent and canonical.
        assert_eq!(min, min.minimize());
    }

    #[test]
    fn minimize_of_empty_language_is_one_state() {
        let m = Dfa::from_parts(2, 0, vec![false, false, false], vec![1, 2, 2, 1, 0, 0]).unwrap();
        let min = m.minimize();
        assert_eq!(min.state_count(), 1);
        assert!(min.is_empty());
    }

    #[test]
    fn enumerate_orders_by_length_then_lex() {
        let m = Dfa::all_words(2);
        let words = m.enumerate(2);
        let printed: Vec<String> = words.iter().map(|w| format!("{w:?}")).collect();
        assert_eq!(
            printed,
            ["Word(ε)", "Word(0)", "Word(1)", "Word(00)", "Word(10)", "Word(01)", "Word(11)"]
        );
        // Lexicographic order is over digits in reading order (least
        // significant first), so [0,1] (printed "10") precedes [1,0] ("01").
        assert_eq!(words[4].digits(), &[0, 1]);
    }

    #[test]
    fn word_counts_match_enumeration() {
        let m = even_ones();
        for n in 0..8 {
            let enumerated = m
                .enumerate(n)
                .into_iter()
                .filter(|w| w.len() == n)
                .count();
            assert_eq!(m.count_words_of_length(n), BigUint::from(enumerated));
        }
        assert_eq!(m.count_words_up_to(7), m.enumerate(7).len().into());
    }

    #[test]
    fn equivalence_sees_through_structure() {
        let m = even_ones();
        let padded = Dfa::from_parts(
            2,
            0,
            vec![true, false, true],
            vec![2, 1, 1, 0, 0, 1],
        )
        .unwrap();
        assert!(m.equivalent(&padded).unwrap());
        assert!(!m.equivalent(&m.complement()).unwrap());
    }
}
