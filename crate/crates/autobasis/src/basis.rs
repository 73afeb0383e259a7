//! The top-level decision procedure: is an automatic set an (asymptotic)
//! additive basis of ℕ, of what minimal order, with which exceptions?
//!
//! Two conditions characterize asymptotic bases among automatic sets: the set
//! must not be sparse (its counting function must beat every power of log),
//! and its gcd must be 1. Both are decided exactly on the machine. Once they
//! hold, some finite order works, so the procedure builds the ≤j-fold sum
//! automaton for j = 1, 2, … and inspects the complement: the first j whose
//! uncovered set is finite (asymptotic mode) or empty (exact mode) is the
//! minimal order, and the uncovered values are read off as the exception
//! list. Termination is guaranteed a priori by order `5k^(16m+3)` with
//! threshold at most `3k^(16m+5)` for an m-state canonical machine, which is
//! what the inconclusive error reports when the configured search cap is
//! smaller.
//!
//! Representability of 0: a sum automaton never uses zero summands, so 0 is
//! representable iff 0 ∈ S. The exception list therefore contains 0 exactly
//! when 0 ∉ S, while the *decision* ignores 0 (the empty sum covers it under
//! the usual convention); `zero_in_set` records which case applies.

use num_bigint::BigUint;
use num_traits::One;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::gcd::gcd_of_set;
use crate::growth::classify;
use crate::numeral::{
    canonical_language, decode, encode, members_of_length, min_member, restrict_canonical,
    zero_closure,
};
use crate::sumset::{sum_automaton, SumMode, SumSpec};
use crate::word::{Digit, Word};

/// Search configuration for [`decide_basis`].
#[derive(Clone, Debug)]
pub struct BasisOptions {
    /// Largest order tried before giving up with an inconclusive error.
    pub max_order: usize,
    /// Asymptotic (finitely many exceptions allowed) versus exact (no
    /// exception above 0) success criterion.
    pub asymptotic: bool,
    /// Whether an order-j sum uses exactly j summands or any 1..=j of them.
    /// `AtMost` matches the usual "sum of at most j members"; `Exact` matches
    /// claims of the form "sum of exactly j members".
    pub sum_mode: SumMode,
}

impl Default for BasisOptions {
    fn default() -> Self {
        BasisOptions {
            max_order: 8,
            asymptotic: true,
            sum_mode: SumMode::AtMost,
        }
    }
}

/// Why the decision came out the way it did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisReason {
    /// All gates passed and an order was found.
    Ok,
    /// The set is sparse, so it cannot be an asymptotic basis.
    NonSparseFailed,
    /// Every member shares the recorded divisor, so sums stay inside one
    /// residue class.
    GcdFailed(BigUint),
    /// Exact-basis mode only: 1 is not in the set, so 1 is never a sum.
    OneNotInS,
}

/// Outcome of [`decide_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    /// The set is an asymptotic additive basis (of some order).
    pub asymptotic_basis: bool,
    /// The set is an additive basis with no exceptions above 0.
    pub exact_basis: bool,
    pub reason: BasisReason,
    /// Minimal order found by the search, in the requested mode.
    pub minimal_order: Option<usize>,
    /// Least M such that every n ≥ M is a sum of (at most) `minimal_order`
    /// members; equals 1 + max(exceptions), or 0 when there are none.
    pub threshold: BigUint,
    /// Every value not representable at the found order, ascending. Contains
    /// 0 exactly when 0 ∉ S (see the module notes on the empty sum).
    pub exceptions: Vec<BigUint>,
    /// Whether 0 is a member of the set itself.
    pub zero_in_set: bool,
    /// State count of the minimized canonical machine the bounds refer to.
    pub state_count: usize,
    /// A-priori order bound `5k^(16m+3)`.
    pub theoretical_n: BigUint,
    /// A-priori threshold bound `3k^(16m+5)`.
    pub theoretical_m: BigUint,
}

/// Decides the basis question for the set recognized by `a`.
pub fn decide_basis(a: &Dfa, opts: &BasisOptions) -> Result<BasisReport> {
    if opts.max_order == 0 {
        return Err(Error::Precondition("the order search needs max_order ≥ 1".into()));
    }
    let canonical = restrict_canonical(a)?;
    let k = canonical.base();
    let m = canonical.state_count();
    let (bound_n, bound_m) = theoretical_bounds(k, m);
    let zero_in_set = canonical.accepts(&[]);
    let one_in_set = canonical.accepts(&[1]);

    let gated = |reason: BasisReason, asymptotic_basis: bool| BasisReport {
        asymptotic_basis,
        exact_basis: asymptotic_basis && one_in_set,
        reason,
        minimal_order: None,
        threshold: BigUint::default(),
        exceptions: Vec::new(),
        zero_in_set,
        state_count: m,
        theoretical_n: bound_n.clone(),
        theoretical_m: bound_m.clone(),
    };

    if classify(&canonical).is_polynomial() {
        return Ok(gated(BasisReason::NonSparseFailed, false));
    }
    let gcd = gcd_of_set(&canonical)?;
    if !gcd.g.is_one() {
        return Ok(gated(BasisReason::GcdFailed(gcd.g), false));
    }
    if !opts.asymptotic && !one_in_set {
        return Ok(gated(BasisReason::OneNotInS, true));
    }

    let full = canonical_language(k);
    let empty_word = Dfa::single_word(k, &Word::empty())?;
    for j in 1..=opts.max_order {
        let sum = sum_automaton(&SumSpec::homogeneous(&canonical, j, opts.sum_mode)?)?;
        // Values ≥ 1 that are not sums of (at most) j members.
        let uncovered = full.difference(&sum)?.difference(&empty_word)?;
        let success = if opts.asymptotic {
            uncovered.is_finite()
        } else {
            uncovered.is_empty()
        };
        if !success {
            continue;
        }
        let mut exceptions: Vec<BigUint> = uncovered
            .enumerate(uncovered.state_count())
            .iter()
            .map(|w| decode(w, k))
            .collect();
        exceptions.sort();
        if !sum.accepts(&[]) {
            exceptions.insert(0, BigUint::default());
        }
        let threshold = exceptions
            .last()
            .map(|top| top + 1u32)
            .unwrap_or_default();
        return Ok(BasisReport {
            asymptotic_basis: true,
            exact_basis: one_in_set,
            reason: BasisReason::Ok,
            minimal_order: Some(j),
            threshold,
            exceptions,
            zero_in_set,
            state_count: m,
            theoretical_n: bound_n,
            theoretical_m: bound_m,
        });
    }
    Err(Error::Inconclusive {
        max_order: opts.max_order as u32,
        bound_n,
        bound_m,
    })
}

/// Proof that a regular set of values is infinite: every pump count i gives
/// a member `prefix · cycle^i · suffix` (digit words, least significant
/// first), and `sample` lists the smallest members outright.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteWitness {
    pub prefix: Word,
    pub cycle: Word,
    pub suffix: Word,
    /// The smallest members of the set, ascending (a bounded sample).
    pub sample: Vec<BigUint>,
}

impl InfiniteWitness {
    /// The value of the i-times-pumped word.
    pub fn pumped_value(&self, i: usize, base: u32) -> BigUint {
        let word = self
            .prefix
            .concat_repeated(&self.cycle, i)
            .concat(&self.suffix);
        decode(&word, base)
    }
}

/// `target ∖ sum` as explicit values when finite, or an [`InfiniteWitness`]
/// when not. With `require_finite` unset the witness sample enumeration is
/// skipped (cheap emptiness-style use).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelativeExceptions {
    Finite(Vec<BigUint>),
    Infinite(InfiniteWitness),
}

/// Which values of `target` are *not* in `sum`? Generalizes the exception
/// computation to claims like "every even number is a sum of two members".
pub fn exceptions_relative(sum: &Dfa, target: &Dfa, require_finite: bool) -> Result<RelativeExceptions> {
    let t = restrict_canonical(target)?;
    let s = restrict_canonical(sum)?;
    let diff = t.difference(&s)?;
    if diff.is_finite() {
        let mut values: Vec<BigUint> = diff
            .enumerate(diff.state_count())
            .iter()
            .map(|w| decode(w, diff.base()))
            .collect();
        values.sort();
        return Ok(RelativeExceptions::Finite(values));
    }
    let (prefix, cycle, suffix) =
        pump_decomposition(&diff).expect("an infinite regular language pumps");
    let sample = if require_finite {
        bounded_members(&diff, 12)
    } else {
        Vec::new()
    };
    Ok(RelativeExceptions::Infinite(InfiniteWitness {
        prefix,
        cycle,
        suffix,
        sample,
    }))
}

/// Per-gap report of [`check_syndetic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndeticReport {
    pub c: u64,
    /// Every member n has some n+i, 1 ≤ i ≤ c, also in the set.
    pub holds: bool,
    /// Smallest counterexample members (bounded sample; empty when `holds`).
    pub violations: Vec<BigUint>,
}

/// Does every member have a successor member at distance at most `c`?
pub fn check_syndetic(t: &Dfa, c: u64) -> Result<SyndeticReport> {
    if c == 0 {
        return Err(Error::Precondition("syndeticity needs a gap bound c ≥ 1".into()));
    }
    let canonical = restrict_canonical(t)?;
    let mut cover: Option<Dfa> = None;
    for i in 1..=c {
        let pre = shift_preimage(&canonical, &BigUint::from(i))?;
        cover = Some(match cover {
            None => pre,
            Some(u) => u.union(&pre)?.minimize(),
        });
    }
    let violations_machine = canonical.difference(&cover.expect("c ≥ 1"))?;
    let holds = violations_machine.is_empty();
    let violations = if holds {
        Vec::new()
    } else {
        bounded_members(&violations_machine, 12)
    };
    Ok(SyndeticReport {
        c,
        holds,
        violations,
    })
}

/// Outcome of the consecutive-run search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunSearch {
    /// Least N with {N, N+1, …, N+c} all in the set.
    Found(BigUint),
    /// No such N exists (the run language is empty).
    NoRun,
}

/// Least starting point of `c + 1` consecutive members, if any.
pub fn find_consecutive_run(u: &Dfa, c: u64) -> Result<RunSearch> {
    let canonical = restrict_canonical(u)?;
    let mut run = canonical.clone();
    for i in 1..=c {
        run = run
            .intersect(&shift_preimage(&canonical, &BigUint::from(i))?)?
            .minimize();
        if run.is_empty() {
            return Ok(RunSearch::NoRun);
        }
    }
    Ok(match min_member(&run)? {
        Some(n) => RunSearch::Found(n),
        None => RunSearch::NoRun,
    })
}

/// Machine for `{n : n + offset ∈ T}`.
///
/// Reads the digits of `n` least significant first, adds the offset's digits
/// with carry, and feeds the resulting digits of `n + offset` to the
/// zero-closed machine of `T`. At end of input the leftover (carry plus the
/// offset's unread tail) is flushed through the same machine to decide
/// acceptance, so words of every length are judged on the full value.
pub fn shift_preimage(t: &Dfa, offset: &BigUint) -> Result<Dfa> {
    let base = t.base();
    let k = base as u64;
    let zc = zero_closure(&restrict_canonical(t)?)?;
    let offset_digits = encode(offset, base);
    let len = offset_digits.len();
    let digit_at = |pos: usize| -> u64 {
        if pos < len {
            offset_digits.digits()[pos] as u64
        } else {
            0
        }
    };
    // Flush value per (pos, carry): carry + value of the offset's digits from
    // `pos` on.
    let mut tails = vec![BigUint::default(); len + 1];
    for pos in (0..len).rev() {
        tails[pos] = &tails[pos + 1] * k + digit_at(pos);
    }

    let n = zc.state_count();
    let id = |q: usize, pos: usize, carry: usize| (q * (len + 1) + pos) * 2 + carry;
    let total = n * (len + 1) * 2;
    let mut delta = vec![0usize; total * base as usize];
    let mut finals = vec![false; total];
    for q in 0..n {
        for pos in 0..=len {
            for carry in 0..2usize {
                let s = id(q, pos, carry);
                // Acceptance: run the flush digits through the machine.
                let flush = &tails[pos.min(len)] + carry as u32;
                let mut fq = q;
                for &d in encode(&flush, base).digits() {
                    fq = zc.next(fq, d);
                }
                finals[s] = zc.is_final(fq);
                for e in 0..k {
                    let column = e + digit_at(pos) + carry as u64;
                    let out = (column % k) as Digit;
                    let nc = (column / k) as usize;
                    let np = (pos + 1).min(len);
                    delta[s * base as usize + e as usize] = id(zc.next(q, out), np, nc);
                }
            }
        }
    }
    let raw = Dfa::from_parts(base, id(zc.initial(), 0, 0), finals, delta)?;
    restrict_canonical(&raw)
}

/// The guaranteed a-priori bounds for a base-k set with an m-state canonical
/// machine: the basis order is at most `5k^(16m+3)` and the threshold at most
/// `3k^(16m+5)`.
pub fn theoretical_bounds(base: u32, m: usize) -> (BigUint, BigUint) {
    let k = BigUint::from(base);
    (
        BigUint::from(5u32) * k.pow(16 * m as u32 + 3),
        BigUint::from(3u32) * k.pow(16 * m as u32 + 5),
    )
}

/// Stress family showing the order can be exponential in the machine size:
/// the m-state machine for `{n : digit-length ≡ −1 (mod m)}` together with
/// the hard value `k^(md−2) − 1`, which needs on the order of `k^(m−2)`
/// summands.
pub fn hard_family(base: u32, m: usize, d: usize) -> Result<(Dfa, BigUint)> {
    if base < 2 {
        return Err(Error::BadBase(base));
    }
    if m < 2 || d < 1 {
        return Err(Error::Precondition(
            "the hard family needs m ≥ 2 states and d ≥ 1".into(),
        ));
    }
    let mut delta = vec![0usize; m * base as usize];
    for q in 0..m {
        for digit in 0..base as usize {
            delta[q * base as usize + digit] = (q + 1) % m;
        }
    }
    let mut finals = vec![false; m];
    finals[m - 1] = true;
    let machine = Dfa::from_parts(base, 0, finals, delta)?;
    let value = BigUint::from(base).pow((m * d - 2) as u32) - 1u32;
    Ok((machine, value))
}

/// Smallest members of a canonical-form machine, at most `want` of them.
/// Canonical words of increasing length carry increasing values, so a
/// length-major scan emits values in ascending order.
fn bounded_members(canonical: &Dfa, want: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(want);
    let horizon = canonical.state_count() + 40;
    for len in 0..=horizon {
        if out.len() >= want {
            break;
        }
        for v in members_of_length(canonical, len) {
            out.push(v);
            if out.len() >= want {
                break;
            }
        }
    }
    out
}

/// Decomposes an infinite regular language into `prefix·cycle*·suffix`: a
/// reachable, co-reachable state with a cycle through it, plus shortest words
/// in and out. Returns None for finite languages.
fn pump_decomposition(a: &Dfa) -> Option<(Word, Word, Word)> {
    let useful = a.useful_states();

    // DFS over useful states to find a back edge, keeping the current path.
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let mut color = vec![Color::White; a.state_count()];
    let mut on_path: Vec<(usize, Digit)> = Vec::new(); // (state, digit taken)
    let start = a.initial();
    if !useful[start] {
        return None;
    }
    let mut stack: Vec<(usize, Digit)> = vec![(start, 0)];
    color[start] = Color::Gray;
    let (cycle_head, cycle_digits) = 'found: loop {
        let Some(&(q, d)) = stack.last() else {
            return None; // no cycle: finite language
        };
        if d < a.base() {
            stack.last_mut().expect("just read").1 += 1;
            let t = a.next(q, d);
            if !useful[t] {
                continue;
            }
            match color[t] {
                Color::White => {
                    color[t] = Color::Gray;
                    on_path.push((q, d));
                    stack.push((t, 0));
                }
                Color::Gray => {
                    // Back edge q --d--> t: the cycle is the path from t to
                    // q plus this edge. A self-loop (t == q, q not on
                    // `on_path`) collects nothing from the path.
                    let mut digits: Vec<Digit> = Vec::new();
                    let mut collecting = false;
                    for &(s, pd) in &on_path {
                        collecting |= s == t;
                        if collecting {
                            digits.push(pd);
                        }
                    }
                    digits.push(d);
                    break 'found (t, digits);
                }
                Color::Black => {}
            }
        } else {
            color[q] = Color::Black;
            stack.pop();
            on_path.pop();
        }
    };

    let cycle = Word::from_lsd(cycle_digits);
    let prefix = bfs_word(a, &useful, a.initial(), |s| s == cycle_head)?;
    let suffix = bfs_word(a, &useful, cycle_head, |s| a.is_final(s))?;
    Some((prefix, cycle, suffix))
}

/// Shortest word from `from` to a state satisfying `done`, over useful
/// states.
fn bfs_word(a: &Dfa, useful: &[bool], from: usize, done: impl Fn(usize) -> bool) -> Option<Word> {
    if done(from) {
        return Some(Word::empty());
    }
    let mut parent: Vec<Option<(usize, Digit)>> = vec![None; a.state_count()];
    let mut seen = vec![false; a.state_count()];
    let mut queue = std::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(p) = queue.pop_front() {
        for d in 0..a.base() {
            let t = a.next(p, d);
            if !useful[t] || seen[t] {
                continue;
            }
            seen[t] = true;
            parent[t] = Some((p, d));
            if done(t) {
                let mut digits = Vec::new();
                let mut cur = t;
                while let Some((pp, pd)) = parent[cur] {
                    digits.push(pd);
                    cur = pp;
                }
                digits.reverse();
                return Some(Word::from_lsd(digits));
            }
            queue.push_back(t);
        }
    }
    None
}
