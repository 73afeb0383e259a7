//! `gcd(S)` for an automatic set, computed on automata.
//!
//! The divisor test: `gcd(S)` divides the smallest nonzero member `s`, and
//! for each divisor `d` of `s` the containment `S ⊆ dℕ` is a regular-language
//! inclusion — empty difference against a divisibility machine. The largest
//! divisor passing the test is the gcd. When the gcd is 1 a short certificate
//! exists: distinct members with overall gcd 1, one per distinct prime of
//! `s`, each below `k^(2m+2)` for an `m`-state canonical machine.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::limits;
use crate::numeral::{restrict_canonical, smallest_nonzero_member};

/// Everything the divisor test finds out about a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdReport {
    pub g: BigUint,
    /// Smallest nonzero member of the set.
    pub smallest_element: BigUint,
    /// Distinct members with overall gcd 1; empty unless `g = 1`. The list
    /// starts at the smallest member and adds, per remaining prime factor,
    /// the smallest member not divisible by it.
    pub witnesses: Vec<BigUint>,
}

/// Minimal `n ≥ 1` whose canonical expansion the machine accepts: the
/// shortest accepted canonical word, ties broken by numeric value.
pub fn smallest_member(a: &Dfa) -> Result<BigUint> {
    smallest_nonzero_member(a)
}

/// Machine accepting exactly the canonical expansions of multiples of `d`.
///
/// Built on state pairs (value mod d, k^position mod d): reading digit `a`
/// at position `i` adds `a·k^i` to the value. The construction is linear in
/// the number of reachable pairs and guarded by [`limits::state_limit`].
pub fn divisibility_automaton(base: u32, d: &BigUint) -> Result<Dfa> {
    if base < 2 {
        return Err(Error::BadBase(base));
    }
    if d.is_zero() {
        return Err(Error::Precondition("divisor must be positive".into()));
    }
    let d = d
        .to_u64()
        .ok_or_else(|| Error::Precondition("divisor too large for a divisibility machine".into()))?;
    let limit = limits::state_limit();
    let k = base as u64;

    // Lazy forward construction from (0 mod d, 1 mod d).
    let mut index = std::collections::HashMap::new();
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let mut delta: Vec<usize> = Vec::new();
    let start = (0 % d, 1 % d);
    index.insert(start, 0usize);
    pairs.push(start);
    let mut at = 0usize;
    while at < pairs.len() {
        let (v, p) = pairs[at];
        let next_p = (p * k) % d;
        for a in 0..k {
            let next = ((v + a * p) % d, next_p);
            let t = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let t = pairs.len();
                    if t >= limit {
                        return Err(Error::StateLimit { limit });
                    }
                    index.insert(next, t);
                    pairs.push(next);
                    t
                }
            };
            delta.push(t);
        }
        at += 1;
    }
    let finals = pairs.iter().map(|&(v, _)| v == 0).collect();
    let raw = Dfa::from_parts(base, 0, finals, delta)?;
    restrict_canonical(&raw)
}

/// The divisor test. Requires a nonzero member; `S = ∅` and `S = {0}` are
/// reported as errors because the gcd question is vacuous there.
pub fn gcd_of_set(a: &Dfa) -> Result<GcdReport> {
    let canonical = restrict_canonical(a)?;
    let smallest = smallest_nonzero_member(&canonical)?;
    let mut g = BigUint::one();
    for d in divisors_descending(&smallest)? {
        if d.is_one() {
            break;
        }
        let multiples = divisibility_automaton(canonical.base(), &d)?;
        if canonical.difference(&multiples)?.is_empty() {
            g = d;
            break;
        }
    }
    let witnesses = if g.is_one() {
        witness_list(&canonical, &smallest)?
    } else {
        Vec::new()
    };
    Ok(GcdReport {
        g,
        smallest_element: smallest,
        witnesses,
    })
}

/// Certificate for `gcd(S) = 1`: distinct members whose overall gcd is 1,
/// each below `k^(2m+2)`. Errors with the actual gcd when it is not 1.
pub fn gcd_witnesses(a: &Dfa) -> Result<Vec<BigUint>> {
    let report = gcd_of_set(a)?;
    if !report.g.is_one() {
        return Err(Error::GcdNotOne { gcd: report.g });
    }
    Ok(report.witnesses)
}

/// `[s]`, then for each prime of the running gcd still alive, the smallest
/// member the prime does not divide. Each appended member strictly shrinks
/// the running gcd, so the list length is at most ω(s) + 1.
fn witness_list(canonical: &Dfa, smallest: &BigUint) -> Result<Vec<BigUint>> {
    let mut witnesses = vec![smallest.clone()];
    let mut running = smallest.clone();
    for p in distinct_primes(smallest)? {
        if (&running % &p).is_zero() {
            let coprime_part = canonical.difference(&divisibility_automaton(canonical.base(), &p)?)?;
            let v = smallest_nonzero_member(&coprime_part)?;
            running = running.gcd(&v);
            witnesses.push(v);
        }
        if running.is_one() {
            break;
        }
    }
    debug_assert!(running.is_one());
    Ok(witnesses)
}

/// All divisors of `n`, largest first, by trial division. The smallest
/// member of an `m`-state machine is at most `k^m`, so in practice `n` is
/// small; astronomically large values are refused rather than ground through.
fn divisors_descending(n: &BigUint) -> Result<Vec<BigUint>> {
    let n = n
        .to_u64()
        .ok_or_else(|| Error::Precondition("smallest member too large for divisor enumeration".into()))?;
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut i = 1u64;
    while i.saturating_mul(i) <= n {
        if n % i == 0 {
            low.push(i);
            if i != n / i {
                high.push(n / i);
            }
        }
        i += 1;
    }
    low.reverse();
    high.extend(low);
    Ok(high.into_iter().map(BigUint::from).collect())
}

fn distinct_primes(n: &BigUint) -> Result<Vec<BigUint>> {
    let mut n = n
        .to_u64()
        .ok_or_else(|| Error::Precondition("smallest member too large to factor".into()))?;
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            primes.push(BigUint::from(p));
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(BigUint::from(n));
    }
    Ok(primes)
}
