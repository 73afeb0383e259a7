//! Nondeterministic finite automata and the subset construction.

use std::collections::{HashMap, VecDeque};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::limits;
use crate::word::Digit;

/// A nondeterministic machine: several initial states, any number of
/// transitions per `(state, digit)` pair, no epsilon moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    base: u32,
    /// `delta[q * base + d]` lists successor states, sorted.
    delta: Vec<Vec<usize>>,
    initials: Vec<usize>,
    finals: Vec<bool>,
}

pub struct NfaBuilder {
    base: u32,
    delta: Vec<Vec<usize>>,
    initials: Vec<usize>,
    finals: Vec<bool>,
}

impl NfaBuilder {
    pub fn add_transition(&mut self, from: usize, d: Digit, to: usize) {
        self.delta[from * self.base as usize + d as usize].push(to);
    }

    pub fn add_initial(&mut self, q: usize) {
        self.initials.push(q);
    }

    pub fn add_final(&mut self, q: usize) {
        self.finals[q] = true;
    }

    pub fn build(mut self) -> Nfa {
        for row in &mut self.delta {
            row.sort_unstable();
            row.dedup();
        }
        self.initials.sort_unstable();
        self.initials.dedup();
        Nfa {
            base: self.base,
            delta: self.delta,
            initials: self.initials,
            finals: self.finals,
        }
    }
}

impl Nfa {
    pub fn builder(base: u32, states: usize) -> NfaBuilder {
        NfaBuilder {
            base,
            delta: vec![Vec::new(); states * base as usize],
            initials: Vec::new(),
            finals: vec![false; states],
        }
    }

    pub fn from_dfa(d: &Dfa) -> Nfa {
        let mut b = Nfa::builder(d.base(), d.state_count());
        for q in 0..d.state_count() {
            for digit in 0..d.base() {
                b.add_transition(q, digit, d.next(q, digit));
            }
            if d.is_final(q) {
                b.add_final(q);
            }
        }
        b.add_initial(d.initial());
        b.build()
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn initials(&self) -> &[usize] {
        &self.initials
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn successors(&self, q: usize, d: Digit) -> &[usize] {
        &self.delta[q * self.base as usize + d as usize]
    }

    pub fn accepts(&self, digits: &[Digit]) -> bool {
        let mut current: Vec<usize> = self.initials.clone();
        for &d in digits {
            let mut next: Vec<usize> = Vec::new();
            for &q in &current {
                next.extend_from_slice(self.successors(q, d));
            }
            next.sort_unstable();
            next.dedup();
            current = next;
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|&q| self.finals[q])
    }

    /// Restricts to states that are both reachable and co-reachable,
    /// preserving the relative order of the surviving states.
    pub fn trim(&self) -> Nfa {
        let n = self.state_count();
        let k = self.base as usize;
        let mut reach = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &q in &self.initials {
            if !reach[q] {
                reach[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for d in 0..k {
                for &t in &self.delta[q * k + d] {
                    if !reach[t] {
                        reach[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for d in 0..k {
                for &t in &self.delta[q * k + d] {
                    rev[t].push(q);
                }
            }
        }
        let mut coreach = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
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
        let keep: Vec<usize> = (0..n).filter(|&q| reach[q] && coreach[q]).collect();
        if keep.is_empty() {
            // No useful state: the language is empty. Keep one inert state so
            // downstream code always has a machine to look at.
            let mut b = Nfa::builder(self.base, 1);
            b.add_initial(0);
            return b.build();
        }
        let mut renumber = vec![usize::MAX; n];
        for (i, &q) in keep.iter().enumerate() {
            renumber[q] = i;
        }
        let mut b = Nfa::builder(self.base, keep.len());
        for &q in &keep {
            for d in 0..k {
                for &t in &self.delta[q * k + d] {
                    if renumber[t] != usize::MAX {
                        b.add_transition(renumber[q], d as Digit, renumber[t]);
                    }
                }
            }
            if self.finals[q] {
                b.add_final(renumber[q]);
            }
        }
        for &q in &self.initials {
            if renumber[q] != usize::MAX {
                b.add_initial(renumber[q]);
            }
        }
        b.build()
    }

    /// True when every state has at most one successor per digit and there is
    /// at most one initial state.
    pub fn is_deterministic(&self) -> bool {
        self.initials.len() <= 1 && self.delta.iter().all(|row| row.len() <= 1)
    }

    /// Subset construction. Subsets are discovered breadth-first with digits
    /// ascending, so the result is canonically numbered. Fails with
    /// [`Error::StateLimit`] if the construction grows past the configured
    /// bound (see [`crate::set_state_limit`]).
    pub fn determinize(&self) -> Result<Dfa> {
        let limit = limits::state_limit();
        let k = self.base as usize;
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut delta: Vec<usize> = Vec::new();
        let start = self.initials.clone();
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut head = 0;
        while head < subsets.len() {
            for d in 0..k {
                let mut next: Vec<usize> = Vec::new();
                for &q in &subsets[head] {
                    next.extend_from_slice(&self.delta[q * k + d]);
                }
                next.sort_unstable();
                next.dedup();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= limit {
                            return Err(Error::StateLimit { limit });
                        }
                        subsets.push(next.clone());
                        index.insert(next, subsets.len() - 1);
                        subsets.len() - 1
                    }
                };
                delta.push(id);
            }
            head += 1;
        }
        let finals: Vec<bool> = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q]))
            .collect();
        Dfa::from_parts(self.base, 0, finals, delta)
    }
}
