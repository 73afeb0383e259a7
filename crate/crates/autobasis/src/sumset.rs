//! Automata for j-fold sums of automatic sets.
//!
//! The composite machine runs one copy of each (zero-closed) summand machine
//! in lockstep over LSD-first digits and threads the carry of the column
//! addition `Σᵢ dᵢ + c = a + k·c'`, where `a` is the digit of the sum being
//! read. Carries stay below the number of summands. Acceptance requires every
//! copy final and carry zero, which pins the read word to a representation of
//! `x₁ + … + x_j` exactly.
//!
//! The composite is nondeterministic in the sum digit (many digit tuples
//! produce the same column output), so the construction determinizes lazily —
//! only reachable subsets materialize — under the global state budget of
//! [`crate::limits`].

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::limits;
use crate::numeral::{encode, restrict_canonical, zero_closure};
use crate::word::Digit;

/// How many summands a sum must use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumMode {
    /// Exactly all listed summands.
    Exact,
    /// Any nonempty prefix of the listed summands (for a homogeneous list:
    /// any number of summands from 1 up to the list length).
    AtMost,
}

/// A validated sum description: which sets to add, whether summed values
/// must be pairwise distinct, and the arity mode.
#[derive(Clone, Debug)]
pub struct SumSpec {
    summands: Vec<Dfa>,
    distinct: bool,
    mode: SumMode,
}

/// Distinctness is tracked with one bit per summand pair.
const MAX_DISTINCT_ARITY: usize = 11;

impl SumSpec {
    pub fn new(summands: Vec<Dfa>, distinct: bool, mode: SumMode) -> Result<SumSpec> {
        if summands.is_empty() {
            return Err(Error::InvalidSumSpec("a sum needs at least one summand".into()));
        }
        let base = summands[0].base();
        if let Some(other) = summands.iter().find(|s| s.base() != base) {
            return Err(Error::BaseMismatch {
                left: base,
                right: other.base(),
            });
        }
        if distinct {
            if summands.len() > MAX_DISTINCT_ARITY {
                return Err(Error::InvalidSumSpec(format!(
                    "distinct sums support at most {MAX_DISTINCT_ARITY} summands"
                )));
            }
            for s in &summands[1..] {
                if !summands[0].equivalent(s)? {
                    return Err(Error::InvalidSumSpec(
                        "distinct sums require all summands to describe the same set".into(),
                    ));
                }
            }
        }
        Ok(SumSpec {
            summands,
            distinct,
            mode,
        })
    }

    /// `j` copies of one set.
    pub fn homogeneous(a: &Dfa, j: usize, mode: SumMode) -> Result<SumSpec> {
        if j == 0 {
            return Err(Error::InvalidSumSpec("sum arity must be at least 1".into()));
        }
        SumSpec::new(vec![a.clone(); j], false, mode)
    }

    pub fn distinct(mut self, distinct: bool) -> Result<SumSpec> {
        self.distinct = distinct;
        SumSpec::new(self.summands, distinct, self.mode)
    }

    pub fn summands(&self) -> &[Dfa] {
        &self.summands
    }

    pub fn base(&self) -> u32 {
        self.summands[0].base()
    }

    pub fn arity(&self) -> usize {
        self.summands.len()
    }

    pub fn is_distinct(&self) -> bool {
        self.distinct
    }

    pub fn mode(&self) -> SumMode {
        self.mode
    }
}

/// Machine accepting the canonical expansions of the sum set.
///
/// `Exact` gives `{x₁+…+x_j : xᵢ ∈ Sᵢ}`; `AtMost` the union of the exact
/// sums over every nonempty prefix of the summand list. Note `AtMost` never
/// includes the empty sum: whether 0 counts as representable "by zero
/// summands" is the caller's convention, not this machine's.
pub fn sum_automaton(spec: &SumSpec) -> Result<Dfa> {
    let closed: Vec<Dfa> = spec
        .summands
        .iter()
        .map(|s| zero_closure(&restrict_canonical(s)?))
        .collect::<Result<_>>()?;
    match spec.mode {
        SumMode::Exact => exact_sum(&closed, spec.distinct),
        SumMode::AtMost => {
            let mut union: Option<Dfa> = None;
            for i in 1..=closed.len() {
                let part = exact_sum(&closed[..i], spec.distinct)?;
                union = Some(match union {
                    None => part,
                    Some(u) => u.union(&part)?,
                });
            }
            Ok(union.expect("sum spec has at least one summand").minimize())
        }
    }
}

/// Number of ordered tuples `(x₁, …, x_j)` with `xᵢ ∈ Sᵢ` summing to `n`
/// (pairwise-distinct tuples only when the spec says so).
///
/// Exact big-integer path counting over the composite machine along the
/// canonical expansion of `n`: at full length the carry must have resolved
/// to zero, and fixed-length zero-padded digit strings are in bijection with
/// values, so path counts equal tuple counts.
pub fn count_representations(n: &BigUint, spec: &SumSpec) -> Result<BigUint> {
    if spec.mode == SumMode::AtMost {
        return Err(Error::InvalidSumSpec(
            "representation counting needs an exact-arity sum".into(),
        ));
    }
    let closed: Vec<Dfa> = spec
        .summands
        .iter()
        .map(|s| zero_closure(&restrict_canonical(s)?))
        .collect::<Result<_>>()?;
    let comp = Composite::new(&closed, spec.distinct);
    let digits = encode(n, spec.base());

    let mut counts: HashMap<CompState, BigUint> = HashMap::new();
    counts.insert(comp.initial(), BigUint::from(1u32));
    for &a in digits.digits() {
        let mut next: HashMap<CompState, BigUint> = HashMap::new();
        for (state, count) in &counts {
            for (digit, target) in comp.transitions(state) {
                if digit == a {
                    *next.entry(target).or_insert_with(BigUint::zero) += count;
                }
            }
        }
        counts = next;
        if counts.is_empty() {
            return Ok(BigUint::zero());
        }
    }
    let mut total = BigUint::zero();
    for (state, count) in counts {
        if comp.is_accepting(&state) {
            total += count;
        }
    }
    Ok(total)
}

/// `{n + c : n ∈ S}` as a canonical-form machine.
///
/// Reads the digits of `m = n + c` LSD-first and deterministically undoes the
/// addition: the per-position input digit is `m`'s digit minus the constant's
/// digit minus the running borrow. Acceptance needs the borrow clear, the
/// constant fully consumed, and the (zero-closed) summand machine final.
pub fn add_constant(a: &Dfa, c: &BigUint) -> Result<Dfa> {
    let base = a.base();
    let k = base as i64;
    let closed = zero_closure(&restrict_canonical(a)?)?;
    let cdigits = encode(c, base);
    let clen = cdigits.len();

    // State: (machine state, digits of c consumed (saturating), borrow).
    let n = closed.state_count();
    let id = |q: usize, i: usize, borrow: usize| (q * (clen + 1) + i) * 2 + borrow;
    let total = n * (clen + 1) * 2;
    let mut delta = vec![0usize; total * base as usize];
    let mut finals = vec![false; total];
    for q in 0..n {
        for i in 0..=clen {
            let cd = if i < clen { cdigits.digits()[i] as i64 } else { 0 };
            let ni = (i + 1).min(clen);
            for borrow in 0..2usize {
                let s = id(q, i, borrow);
                finals[s] = closed.is_final(q) && i == clen && borrow == 0;
                for e in 0..k {
                    let mut d = e - cd - borrow as i64;
                    let nb = usize::from(d < 0);
                    if d < 0 {
                        d += k;
                    }
                    let nq = closed.next(q, d as Digit);
                    delta[s * base as usize + e as usize] = id(nq, ni, nb);
                }
            }
        }
    }
    // A word shorter than the constant leaves `i < clen`; those states are
    // simply not final, which is the correct rejection.
    let raw = Dfa::from_parts(base, id(closed.initial(), 0, 0), finals, delta)?;
    restrict_canonical(&raw)
}

/// `{d·n : n ∈ S}` as a canonical-form machine.
///
/// Reads the digits of `m = d·n` LSD-first, guessing each digit `x` of `n`
/// subject to the column identity `d·x + carry = digit + k·carry'`; carries
/// stay below `d`. The guess is genuinely nondeterministic (several `x` can
/// produce one output digit), so the result is determinized.
pub fn scale_by_constant(a: &Dfa, d: u64) -> Result<Dfa> {
    if d == 0 {
        return Err(Error::Precondition("scale factor must be at least 1".into()));
    }
    let base = a.base();
    d.checked_mul(base as u64)
        .ok_or_else(|| Error::Precondition("scale factor too large".into()))?;
    let closed = zero_closure(&restrict_canonical(a)?)?;
    let n = closed.state_count();
    let carries = d as usize;
    let states = n
        .checked_mul(carries)
        .filter(|&s| s <= limits::state_limit())
        .ok_or(Error::StateLimit {
            limit: limits::state_limit(),
        })?;

    let mut b = crate::nfa::Nfa::builder(base, states);
    let id = |q: usize, carry: usize| q * carries + carry;
    b.add_initial(id(closed.initial(), 0));
    for q in 0..n {
        for carry in 0..carries {
            if closed.is_final(q) && carry == 0 {
                b.add_final(id(q, carry));
            }
            for x in 0..base as u64 {
                let t = d * x + carry as u64;
                let e = (t % base as u64) as Digit;
                let nc = (t / base as u64) as usize;
                debug_assert!(nc < carries);
                b.add_transition(id(q, carry), e, id(closed.next(q, x as Digit), nc));
            }
        }
    }
    restrict_canonical(&b.build().determinize()?)
}

fn exact_sum(closed: &[Dfa], distinct: bool) -> Result<Dfa> {
    let comp = Composite::new(closed, distinct);
    let base = comp.base as usize;
    let limit = limits::state_limit();

    // Lazy subset construction over composite states, both interned.
    let mut comp_states: Vec<CompState> = Vec::new();
    let mut comp_index: HashMap<CompState, usize> = HashMap::new();
    let intern = |s: CompState, store: &mut Vec<CompState>, idx: &mut HashMap<CompState, usize>| {
        if let Some(&i) = idx.get(&s) {
            return i;
        }
        let i = store.len();
        idx.insert(s.clone(), i);
        store.push(s);
        i
    };

    let init = intern(comp.initial(), &mut comp_states, &mut comp_index);
    let mut subsets: Vec<Vec<usize>> = vec![vec![init]];
    let mut subset_index: HashMap<Vec<usize>, usize> = HashMap::new();
    subset_index.insert(vec![init], 0);
    let mut delta: Vec<usize> = Vec::new();
    let mut finals: Vec<bool> = Vec::new();

    let mut at = 0usize;
    while at < subsets.len() {
        let subset = subsets[at].clone();
        finals.push(subset.iter().any(|&i| comp.is_accepting(&comp_states[i])));
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); base];
        for &i in &subset {
            let from = comp_states[i].clone();
            for (digit, target) in comp.transitions(&from) {
                if comp_states.len() >= limit {
                    return Err(Error::StateLimit { limit });
                }
                let t = intern(target, &mut comp_states, &mut comp_index);
                buckets[digit as usize].push(t);
            }
        }
        for bucket in &mut buckets {
            bucket.sort_unstable();
            bucket.dedup();
            let next = match subset_index.get(bucket.as_slice()) {
                Some(&i) => i,
                None => {
                    let i = subsets.len();
                    if i >= limit {
                        return Err(Error::StateLimit { limit });
                    }
                    subset_index.insert(bucket.clone(), i);
                    subsets.push(bucket.clone());
                    i
                }
            };
            delta.push(next);
        }
        at += 1;
    }
    let raw = Dfa::from_parts(comp.base, 0, finals, delta)?;
    restrict_canonical(&raw)
}

/// One joint state of the column-addition machine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CompState {
    qs: Box<[usize]>,
    carry: usize,
    /// Bit per summand pair, set once their digit streams have differed.
    flags: u64,
}

struct Composite<'a> {
    machines: &'a [Dfa],
    base: u32,
    distinct: bool,
    full_flags: u64,
}

impl<'a> Composite<'a> {
    fn new(machines: &'a [Dfa], distinct: bool) -> Composite<'a> {
        let j = machines.len();
        let pairs = j * (j - 1) / 2;
        debug_assert!(!distinct || pairs <= 64);
        Composite {
            machines,
            base: machines[0].base(),
            distinct,
            full_flags: if distinct && pairs > 0 {
                (1u64 << pairs) - 1
            } else {
                0
            },
        }
    }

    fn initial(&self) -> CompState {
        CompState {
            qs: self.machines.iter().map(|m| m.initial()).collect(),
            carry: 0,
            flags: 0,
        }
    }

    fn is_accepting(&self, s: &CompState) -> bool {
        s.carry == 0
            && s.flags == self.full_flags
            && s.qs
                .iter()
                .zip(self.machines)
                .all(|(&q, m)| m.is_final(q))
    }

    /// All `(sum digit, next state)` moves: one per digit tuple.
    fn transitions(&self, s: &CompState) -> Vec<(Digit, CompState)> {
        let j = self.machines.len();
        let k = self.base as usize;
        let mut tuple = vec![0 as Digit; j];
        let mut out = Vec::with_capacity(k.pow(j as u32));
        loop {
            let column: usize = tuple.iter().map(|&d| d as usize).sum::<usize>() + s.carry;
            let digit = (column % k) as Digit;
            let carry = column / k;
            let qs: Box<[usize]> = s
                .qs
                .iter()
                .zip(self.machines)
                .zip(&tuple)
                .map(|((&q, m), &d)| m.next(q, d))
                .collect();
            let mut flags = s.flags;
            if self.distinct {
                let mut bit = 0;
                for hi in 1..j {
                    for lo in 0..hi {
                        if tuple[hi] != tuple[lo] {
                            flags |= 1 << bit;
                        }
                        bit += 1;
                    }
                }
            }
            out.push((digit, CompState { qs, carry, flags }));

            // Mixed-radix increment of the digit tuple.
            let mut pos = 0;
            loop {
                if pos == j {
                    return out;
                }
                tuple[pos] += 1;
                if (tuple[pos] as usize) < k {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
        }
    }
}
