//! Polynomial/exponential growth dichotomy for regular languages.
//!
//! Write `g(n)` for the number of accepted words of length `n` and
//! `h(n) = g(0) + … + g(n)`. Every regular language falls in exactly one of
//! two camps:
//!
//! * *polynomial*: in the trimmed machine every strongly connected component
//!   is a simple cycle; `h` grows like a polynomial whose exponent is the
//!   largest number of cycle components met along one accepting path;
//! * *exponential*: some useful state `q` carries two cycles whose labels do
//!   not commute. Concatenating them in both orders yields equal-length
//!   distinct words `t ≠ u` with `s·{t,u}*·v` accepted, so the language
//!   contains `2^ℓ` words of each length `|s| + |v| + ℓ·|t|` — a certificate
//!   anyone can re-check by simulation.
//!
//! The verdict is computed in time linear in the transition table. Witness
//! words obey `|s|, |v| < m` and `|t|, |u| < 3m` where `m` is the state count
//! of the analyzed (trimmed) machine, and `3m - 1` is achieved by an m-state
//! cycle-with-chord family, so the bound is tight.

use crate::dfa::Dfa;
use crate::error::Result;
use crate::nfa::Nfa;
use crate::numeral::restrict_canonical;
use crate::word::{Digit, Word};

/// Outcome of the dichotomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Growth {
    /// `h(n) = Θ(n^(degree+1))` for infinite languages; finite languages
    /// report degree 0. Equivalently the set counts `O((log x)^degree)`
    /// members below `x` … see [`degree`] for the exact convention.
    Polynomial { degree: usize },
    Exponential { witness: ExpWitness },
}

/// Certificate of exponential growth: `prefix · {t, u}* · suffix ⊆ L` with
/// `|t| = |u|`, `t ≠ u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpWitness {
    pub prefix: Word,
    pub t: Word,
    pub u: Word,
    pub suffix: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthReport {
    pub growth: Growth,
    /// States of the machine the analysis ran on (after trimming; after
    /// determinization too if a properly nondeterministic machine came in).
    pub state_count: usize,
}

impl GrowthReport {
    pub fn is_polynomial(&self) -> bool {
        matches!(self.growth, Growth::Polynomial { .. })
    }

    pub fn degree(&self) -> Option<usize> {
        match &self.growth {
            Growth::Polynomial { degree } => Some(*degree),
            Growth::Exponential { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&ExpWitness> {
        match &self.growth {
            Growth::Polynomial { .. } => None,
            Growth::Exponential { witness } => Some(witness),
        }
    }
}

/// Classifies the language of a deterministic machine.
pub fn classify(a: &Dfa) -> GrowthReport {
    let graph = Graph::from_dfa(a);
    graph.classify()
}

/// Classifies the language of a nondeterministic machine.
///
/// A trimmed machine that happens to be deterministic is analyzed as it
/// stands (so state-dependent witness bounds refer to *its* state count); a
/// properly nondeterministic one is determinized first, because two distinct
/// paths with equal labels would otherwise masquerade as two distinct cycle
/// words.
pub fn classify_nfa(a: &Nfa) -> Result<GrowthReport> {
    let trimmed = a.trim();
    if trimmed.is_deterministic() {
        return Ok(Graph::from_trim_nfa(&trimmed).classify());
    }
    Ok(classify(&trimmed.determinize()?))
}

/// Is the *set* recognized by `a` sparse, i.e. does it have only
/// `O((log x)^d)` members below `x`? Exactly when the canonical
/// representation language has polynomial growth.
pub fn is_sparse(a: &Dfa) -> Result<bool> {
    Ok(classify(&restrict_canonical(a)?).is_polynomial())
}

/// Trimmed deterministic machine as an adjacency structure. States keep the
/// relative order they had before trimming, which makes every search below
/// deterministic.
struct Graph {
    n: usize,
    /// Out-edges per state, digits ascending.
    edges: Vec<Vec<(Digit, usize)>>,
    initial: Option<usize>,
    finals: Vec<bool>,
}

impl Graph {
    fn from_dfa(a: &Dfa) -> Graph {
        let useful = a.useful_states();
        let mut renumber = vec![usize::MAX; a.state_count()];
        let mut count = 0usize;
        for q in 0..a.state_count() {
            if useful[q] {
                renumber[q] = count;
                count += 1;
            }
        }
        let mut edges = vec![Vec::new(); count];
        let mut finals = vec![false; count];
        for q in 0..a.state_count() {
            if !useful[q] {
                continue;
            }
            for d in 0..a.base() {
                let t = a.next(q, d);
                if useful[t] {
                    edges[renumber[q]].push((d, renumber[t]));
                }
            }
            finals[renumber[q]] = a.is_final(q);
        }
        let initial = if useful[a.initial()] {
            Some(renumber[a.initial()])
        } else {
            None
        };
        Graph {
            n: count,
            edges,
            initial,
            finals,
        }
    }

    /// The NFA must already be trimmed and deterministic.
    fn from_trim_nfa(a: &Nfa) -> Graph {
        debug_assert!(a.is_deterministic());
        let n = a.state_count();
        let mut edges = vec![Vec::new(); n];
        let mut finals = vec![false; n];
        let mut nonempty = false;
        for q in 0..n {
            for d in 0..a.base() {
                for &t in a.successors(q, d) {
                    edges[q].push((d, t));
                }
            }
            finals[q] = a.is_final(q);
            nonempty |= finals[q];
        }
        let initial = if nonempty {
            a.initials().first().copied()
        } else {
            None
        };
        Graph {
            n,
            edges,
            initial,
            finals,
        }
    }

    fn classify(&self) -> GrowthReport {
        let Some(initial) = self.initial else {
            // Empty language.
            return GrowthReport {
                growth: Growth::Polynomial { degree: 0 },
                state_count: 0,
            };
        };
        let scc = self.tarjan();
        // A component is exponential when some member state keeps two or more
        // edges inside the component: two cycles through that state that
        // start with different digits, hence do not commute.
        let mut branching = vec![false; scc.count];
        for q in 0..self.n {
            let inside = self
                .edges[q]
                .iter()
                .filter(|&&(_, t)| scc.id[t] == scc.id[q])
                .count();
            if inside >= 2 {
                branching[scc.id[q]] = true;
            }
        }
        if let Some(q) = (0..self.n).find(|&q| branching[scc.id[q]]) {
            let witness = self.extract_witness(initial, q);
            return GrowthReport {
                growth: Growth::Exponential { witness },
                state_count: self.n,
            };
        }

        // Polynomial: count cycle components along condensation paths.
        let mut has_cycle = vec![false; scc.count];
        let mut has_final = vec![false; scc.count];
        let mut members = vec![0usize; scc.count];
        for q in 0..self.n {
            members[scc.id[q]] += 1;
            if self.finals[q] {
                has_final[scc.id[q]] = true;
            }
            if self.edges[q].iter().any(|&(_, t)| t == q) {
                has_cycle[scc.id[q]] = true;
            }
        }
        for c in 0..scc.count {
            if members[c] >= 2 {
                has_cycle[c] = true;
            }
        }
        // Tarjan emits components sink-first, so a single pass in emission
        // order sees successors before predecessors.
        let mut best: Vec<Option<usize>> = vec![None; scc.count];
        for c in 0..scc.count {
            let own = usize::from(has_cycle[c]);
            let mut value = if has_final[c] { Some(own) } else { None };
            for q in 0..self.n {
                if scc.id[q] != c {
                    continue;
                }
                for &(_, t) in &self.edges[q] {
                    if scc.id[t] == c {
                        continue;
                    }
                    if let Some(v) = best[scc.id[t]] {
                        value = Some(value.unwrap_or(0).max(own + v));
                    }
                }
            }
            best[c] = value;
        }
        let total = best[scc.id[initial]].expect("trimmed graph reaches a final state");
        GrowthReport {
            growth: Growth::Polynomial {
                degree: total.saturating_sub(1),
            },
            state_count: self.n,
        }
    }

    /// Witness construction at the smallest-numbered state `q` lying in a
    /// branching component: a shortest cycle `x0` at `q`, then the shortest
    /// cycle at `q` that is not a power of `x0`'s primitive root. Their two
    /// concatenation orders differ, and the search bounds them by `m` and
    /// `2m - 1` respectively.
    fn extract_witness(&self, initial: usize, q: usize) -> ExpWitness {
        let x0 = self
            .shortest_cycle(q)
            .expect("branching component state lies on a cycle");
        let root = primitive_root(&x0);
        let x1 = self
            .shortest_cycle_avoiding_powers(q, &root)
            .expect("branching component has a second, non-commuting cycle");
        let prefix = self
            .shortest_path(initial, q)
            .expect("trimmed graph connects the initial state to every state");
        let suffix = self
            .shortest_path_to_final(q)
            .expect("trimmed graph connects every state to a final state");
        ExpWitness {
            prefix,
            t: x0.concat(&x1),
            u: x1.concat(&x0),
            suffix,
        }
    }

    /// Breadth-first search with digit-ascending expansion: first completion
    /// is the shortest target word, lexicographically least among those.
    fn bfs_word(
        &self,
        seeds: impl IntoIterator<Item = usize>,
        done: impl Fn(usize) -> bool,
        start_done: bool,
    ) -> Option<Word> {
        let mut parent: Vec<Option<(usize, Digit)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        for s in seeds {
            if start_done && done(s) {
                return Some(Word::empty());
            }
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(p) = queue.pop_front() {
            for &(d, t) in &self.edges[p] {
                if seen[t] {
                    continue;
                }
                seen[t] = true;
                parent[t] = Some((p, d));
                if done(t) {
                    return Some(self.reconstruct(&parent, t));
                }
                queue.push_back(t);
            }
        }
        None
    }

    fn reconstruct(&self, parent: &[Option<(usize, Digit)>], mut q: usize) -> Word {
        let mut digits = Vec::new();
        while let Some((p, d)) = parent[q] {
            digits.push(d);
            q = p;
        }
        digits.reverse();
        Word::from_lsd(digits)
    }

    fn shortest_path(&self, from: usize, to: usize) -> Option<Word> {
        self.bfs_word([from], |s| s == to, true)
    }

    fn shortest_path_to_final(&self, from: usize) -> Option<Word> {
        self.bfs_word([from], |s| self.finals[s], true)
    }

    /// Shortest nonempty word labeling a path `q → q`.
    fn shortest_cycle(&self, q: usize) -> Option<Word> {
        // Seed with the successors of q so the empty word does not qualify;
        // the search still needs per-edge completion checks because a seed
        // itself may be q (a self-loop).
        let mut parent: Vec<Option<(usize, Digit)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        for &(d, t) in &self.edges[q] {
            if t == q {
                return Some(Word::from_lsd(vec![d]));
            }
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, d));
                queue.push_back(t);
            }
        }
        while let Some(p) = queue.pop_front() {
            for &(d, t) in &self.edges[p] {
                if t == q {
                    let mut w = self.reconstruct(&parent, p);
                    w.push(d);
                    return Some(w);
                }
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((p, d));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Shortest nonempty cycle word at `q` that is *not* a power of `root`.
    /// Tracked as a product search over (state, alignment with root^∞), where
    /// alignment is either the offset inside the current block or "diverged".
    fn shortest_cycle_avoiding_powers(&self, q: usize, root: &Word) -> Option<Word> {
        let r = root.len();
        let diverged = r; // phase values 0..r are aligned, r means diverged
        let width = r + 1;
        let node = |state: usize, phase: usize| state * width + phase;
        let mut parent: Vec<Option<(usize, Digit)>> = vec![None; self.n * width];
        let mut seen = vec![false; self.n * width];
        let mut queue = std::collections::VecDeque::new();
        let accepting = |state: usize, phase: usize| state == q && phase != 0;

        seen[node(q, 0)] = true;
        queue.push_back(node(q, 0));
        while let Some(v) = queue.pop_front() {
            let (state, phase) = (v / width, v % width);
            for &(d, t) in &self.edges[state] {
                let next_phase = if phase == diverged {
                    diverged
                } else if root.digits()[phase] == d {
                    (phase + 1) % r
                } else {
                    diverged
                };
                let w = node(t, next_phase);
                if seen[w] {
                    continue;
                }
                seen[w] = true;
                parent[w] = Some((v, d));
                if accepting(t, next_phase) {
                    let mut digits = vec![d];
                    let mut back = v;
                    while let Some((p, pd)) = parent[back] {
                        digits.push(pd);
                        back = p;
                    }
                    digits.reverse();
                    return Some(Word::from_lsd(digits));
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// Tarjan's algorithm, iteratively, emitting components sink-first.
    fn tarjan(&self) -> SccResult {
        const UNSET: usize = usize::MAX;
        let mut index = vec![UNSET; self.n];
        let mut low = vec![0usize; self.n];
        let mut on_stack = vec![false; self.n];
        let mut stack: Vec<usize> = Vec::new();
        let mut id = vec![UNSET; self.n];
        let mut next_index = 0usize;
        let mut count = 0usize;

        // Explicit DFS frames: (state, next edge position).
        let mut frames: Vec<(usize, usize)> = Vec::new();
        for root in 0..self.n {
            if index[root] != UNSET {
                continue;
            }
            frames.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (q, ref mut pos)) = frames.last_mut() {
                if *pos < self.edges[q].len() {
                    let (_, t) = self.edges[q][*pos];
                    *pos += 1;
                    if index[t] == UNSET {
                        index[t] = next_index;
                        low[t] = next_index;
                        next_index += 1;
                        stack.push(t);
                        on_stack[t] = true;
                        frames.push((t, 0));
                    } else if on_stack[t] {
                        low[q] = low[q].min(index[t]);
                    }
                } else {
                    frames.pop();
                    if let Some(&mut (p, _)) = frames.last_mut() {
                        low[p] = low[p].min(low[q]);
                    }
                    if low[q] == index[q] {
                        loop {
                            let s = stack.pop().unwrap();
                            on_stack[s] = false;
                            id[s] = count;
                            if s == q {
                                break;
                            }
                        }
                        count += 1;
                    }
                }
            }
        }
        SccResult { id, count }
    }
}

struct SccResult {
    id: Vec<usize>,
    count: usize,
}

/// Shortest prefix `p` of `w` with `w = p^(|w|/|p|)`.
fn primitive_root(w: &Word) -> Word {
    let n = w.len();
    let digits = w.digits();
    for p in 1..=n {
        if n % p != 0 {
            continue;
        }
        if (p..n).all(|i| digits[i] == digits[i % p]) {
            return Word::from_lsd(digits[..p].to_vec());
        }
    }
    w.clone()
}
