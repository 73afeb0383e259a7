//! Exact-rational verification of the Cantor-set interval machinery.
//!
//! `C(u; y, z)` is the set of reals whose base-k expansion starts with the
//! digit block `u` and continues with an arbitrary infinite sequence of the
//! equal-length blocks `y` and `z`. Writing `Y`, `Z`, `U` for the rational
//! values of those blocks, `C(u; y, z) = U + k^(-L)·C'` where `C'` is a
//! central Cantor construction on `[α, β]` with dissection ratio `k^(-s)`,
//! `α = Y/(1 - k^(-s))`, `β = Z/(1 - k^(-s))`.
//!
//! Everything here is exact `BigRational` arithmetic — level sets, the
//! self-similarity identity, gap witnesses for m-fold sums below the
//! interval threshold, the interval-overlap threshold, and a constructive
//! digit-greedy decomposition of grid points into bounded sums of elements.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::word::Digit;

/// One two-block Cantor family, fully evaluated.
///
/// Digit blocks are stored in reading order (most significant fractional
/// digit first). `y` and `z` are swap-normalized so `y_value < z_value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorParams {
    pub base: u32,
    pub u: Vec<Digit>,
    pub y: Vec<Digit>,
    pub z: Vec<Digit>,
    /// `|u|`.
    pub l: usize,
    /// `|y| = |z|`.
    pub s: usize,
    pub u_value: BigRational,
    pub y_value: BigRational,
    pub z_value: BigRational,
    pub alpha: BigRational,
    pub beta: BigRational,
}

/// A central Cantor dissection: split `[a, b]` into the two end intervals of
/// relative length `ratio`, recursively.
#[derive(Clone, Debug)]
pub struct DissectionSpec {
    pub ratio: BigRational,
    pub interval: (BigRational, BigRational),
    pub depth: u32,
}

/// Verdict on whether the m-fold sumset fills its convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MFold {
    /// `[mα, mβ]`, complete.
    Interval(BigRational, BigRational),
    /// An open gap inside the hull, visible at the stated dissection depth.
    /// Conclusive: gaps of a level cover persist in the limit set.
    NotInterval {
        gap: (BigRational, BigRational),
        depth: u32,
    },
    /// No gap found down to the stated depth; not a proof of coverage.
    Inconclusive { depth_searched: u32 },
}

fn ratio_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn k_pow(base: u32, e: usize) -> BigInt {
    BigInt::from(base).pow(e as u32)
}

/// Value of a fractional digit block: `Σ d_j k^(-j)`, `j` starting at 1.
fn block_value(digits: &[Digit], base: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for (j, &d) in digits.iter().enumerate() {
        acc += BigRational::new(BigInt::from(d), k_pow(base, j + 1));
    }
    acc
}

/// Builds and evaluates the family `C(u; y, z)` over base `k`.
pub fn cantor_params(base: u32, u: &[Digit], y: &[Digit], z: &[Digit]) -> Result<CantorParams> {
    if base < 2 {
        return Err(Error::BadBase(base));
    }
    for &d in u.iter().chain(y).chain(z) {
        if d >= base {
            return Err(Error::DigitOutOfRange { digit: d, base });
        }
    }
    if y.len() != z.len() || y.is_empty() {
        return Err(Error::Precondition(
            "the two repeating blocks must have equal positive length".into(),
        ));
    }
    if y == z {
        return Err(Error::Precondition("the two repeating blocks must differ".into()));
    }
    let (mut y, mut z) = (y.to_vec(), z.to_vec());
    let mut y_value = block_value(&y, base);
    let mut z_value = block_value(&z, base);
    if y_value > z_value {
        std::mem::swap(&mut y, &mut z);
        std::mem::swap(&mut y_value, &mut z_value);
    }
    let s = y.len();
    let u_value = block_value(u, base);
    // 1/(1 - k^(-s)) = k^s/(k^s - 1).
    let ks = k_pow(base, s);
    let geometric = BigRational::new(ks.clone(), &ks - BigInt::one());
    let alpha = &geometric * &y_value;
    let beta = &geometric * &z_value;
    debug_assert!(&beta - &alpha >= BigRational::new(BigInt::one(), ks));
    Ok(CantorParams {
        base,
        l: u.len(),
        s,
        u: u.to_vec(),
        y,
        z,
        u_value,
        y_value,
        z_value,
        alpha,
        beta,
    })
}

impl CantorParams {
    /// `k^(-s)`, the dissection ratio of the inner construction.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(BigInt::one(), k_pow(self.base, self.s))
    }

    /// Endpoints of the interval the whole family lives in:
    /// `[U + k^(-L)α, U + k^(-L)β]`.
    pub fn hull(&self) -> (BigRational, BigRational) {
        let scale = BigRational::new(BigInt::one(), k_pow(self.base, self.l));
        (
            &self.u_value + &scale * &self.alpha,
            &self.u_value + &scale * &self.beta,
        )
    }

    fn dissection(&self, depth: u32) -> DissectionSpec {
        DissectionSpec {
            ratio: self.ratio(),
            interval: (self.alpha.clone(), self.beta.clone()),
            depth,
        }
    }
}

/// The closed intervals of the `depth`-th dissection level, left to right.
/// `depth = 0` is the initial interval itself.
pub fn level_set(spec: &DissectionSpec) -> Result<Vec<(BigRational, BigRational)>> {
    if spec.ratio <= BigRational::zero() || spec.ratio > BigRational::new(BigInt::one(), BigInt::from(2)) {
        return Err(Error::Precondition("dissection ratio must lie in (0, 1/2]".into()));
    }
    if spec.interval.0 >= spec.interval.1 {
        return Err(Error::Precondition("dissection interval must be nondegenerate".into()));
    }
    if spec.depth > 20 {
        return Err(Error::Precondition(
            "dissection depth capped at 20 (interval count doubles per level)".into(),
        ));
    }
    let mut intervals = vec![spec.interval.clone()];
    for _ in 0..spec.depth {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (a, b) in &intervals {
            let span = &spec.ratio * (b - a);
            next.push((a.clone(), a + &span));
            next.push((b - &span, b.clone()));
        }
        intervals = next;
    }
    Ok(intervals)
}

/// Checks, to the given depth, the exact self-similarity
/// `C'_(n+1) = S₁(C'_n) ∪ S₂(C'_n)` with `S₁(x) = k^(-s)x + Y`,
/// `S₂(x) = k^(-s)x + Z`, as an equality of sorted interval lists.
pub fn check_selfsimilarity(p: &CantorParams, depth: u32) -> Result<bool> {
    if depth > 12 {
        return Err(Error::Precondition("self-similarity check capped at depth 12".into()));
    }
    check_similarity_maps(p, &p.y_value, &p.z_value, depth)
}

fn check_similarity_maps(
    p: &CantorParams,
    y: &BigRational,
    z: &BigRational,
    depth: u32,
) -> Result<bool> {
    let r = p.ratio();
    let mut level = level_set(&p.dissection(0))?;
    for d in 0..depth {
        let expected = level_set(&p.dissection(d + 1))?;
        // Map every current interval through both contractions. S₁ images
        // stay left of S₂ images because r ≤ 1/2, so plain sorting restores
        // the level order.
        let mut images: Vec<(BigRational, BigRational)> = Vec::with_capacity(level.len() * 2);
        for (a, b) in &level {
            images.push((&r * a + y, &r * b + y));
            images.push((&r * a + z, &r * b + z));
        }
        images.sort();
        if images != expected {
            return Ok(false);
        }
        level = expected;
    }
    Ok(true)
}

/// Sorts and merges interval lists, coalescing overlapping or touching
/// intervals.
fn merge_intervals(mut v: Vec<(BigRational, BigRational)>) -> Vec<(BigRational, BigRational)> {
    v.sort();
    let mut out: Vec<(BigRational, BigRational)> = Vec::with_capacity(v.len());
    for (a, b) in v {
        match out.last_mut() {
            Some((_, hi)) if a <= *hi => {
                if b > *hi {
                    *hi = b;
                }
            }
            _ => out.push((a, b)),
        }
    }
    out
}

/// Is the m-fold sumset `C' + … + C'` the full interval `[mα, mβ]`?
///
/// For `m ≥ k^s − 1` this is a known closed form and is returned as such.
/// Below that threshold the m-fold sums of the finite level covers are
/// searched for a gap, which is conclusive when found; absence of a gap down
/// to depth 10 stays inconclusive.
pub fn mfold_interval(p: &CantorParams, m: u64) -> Result<MFold> {
    if m == 0 {
        return Err(Error::Precondition("fold count must be at least 1".into()));
    }
    let threshold = k_pow(p.base, p.s) - BigInt::one();
    if BigInt::from(m) >= threshold {
        return Ok(MFold::Interval(
            ratio_int(m) * &p.alpha,
            ratio_int(m) * &p.beta,
        ));
    }
    const MAX_DEPTH: u32 = 10;
    for depth in 1..=MAX_DEPTH {
        let level = level_set(&p.dissection(depth))?;
        // Iterated Minkowski sum of the level cover with itself, m-fold,
        // merged at every step to keep the list short.
        let mut sum = level.clone();
        for _ in 1..m {
            let mut next = Vec::with_capacity(sum.len() * level.len());
            for (a, b) in &sum {
                for (c, d) in &level {
                    next.push((a + c, b + d));
                }
            }
            sum = merge_intervals(next);
        }
        for pair in sum.windows(2) {
            let (_, hi) = &pair[0];
            let (lo, _) = &pair[1];
            if hi < lo {
                return Ok(MFold::NotInterval {
                    gap: (hi.clone(), lo.clone()),
                    depth,
                });
            }
        }
    }
    Ok(MFold::Inconclusive {
        depth_searched: MAX_DEPTH,
    })
}

/// Least `m ≥ 1` whose scaled interval `m·[U + k^(-L)α, U + k^(-L)β]`
/// overlaps the next one: `(m+1)(U + k^(-L)α) ≤ m(U + k^(-L)β)`, i.e.
/// `m ≥ (k^L·U + α)/(β − α)`. Always at most `k^(L+s) + k^s`.
pub fn overlap_threshold(p: &CantorParams) -> BigUint {
    let num = ratio_int(k_pow(p.base, p.l)) * &p.u_value + &p.alpha;
    let den = &p.beta - &p.alpha;
    debug_assert!(den.is_positive());
    let m = (num / den).ceil().to_integer().max(BigInt::one());
    let m = m.to_biguint().expect("threshold is positive");
    debug_assert!(
        BigInt::from(m.clone()) <= k_pow(p.base, p.l + p.s) + k_pow(p.base, p.s)
    );
    m
}

/// The guaranteed sum order `k^(2L+2s+t+1)`: every integer in
/// `[k^(L+s+1), k^(L+s+1+t)]` is a sum of at most this many elements of the
/// family (and so are the k-adic grid points `verify_interval_cover` walks).
pub fn sum_order_bound(p: &CantorParams, t: u32) -> BigUint {
    BigUint::from(p.base).pow(2 * p.l as u32 + 2 * p.s as u32 + t + 1)
}

/// Constructive check of the covering claim behind [`sum_order_bound`]: every
/// grid point `i·k^(-grid_log)` in `[k^(L+s+1), k^(L+s+1+t)]` is decomposed
/// into at most `sum_order_bound(p, t)` finite-depth elements of the family,
/// by exact digit-greedy descent. Returns false (rather than erring) on the
/// first point it cannot realize.
pub fn verify_interval_cover(p: &CantorParams, t: u32, grid_log: u32) -> Result<bool> {
    if t == 0 {
        return Err(Error::Precondition("the exponent t must be at least 1".into()));
    }
    if grid_log > 12 {
        return Err(Error::Precondition("grid resolution capped at k^(-12)".into()));
    }
    let bound = sum_order_bound(p, t);
    let lo = ratio_int(k_pow(p.base, p.l + p.s + 1));
    let hi = ratio_int(k_pow(p.base, p.l + p.s + 1 + t as usize));
    let step = BigRational::new(BigInt::one(), k_pow(p.base, grid_log as usize));
    let mut x = lo.clone();
    while x <= hi {
        if !realize_as_sum(p, &x, &bound) {
            return Ok(false);
        }
        x += &step;
    }
    Ok(true)
}

/// Finds `m ≤ bound` and an exact decomposition of `x` into `m` elements,
/// following the interval chain: pick the least `m` whose hull contains `x`,
/// then recurse level by level on the inner Cantor coordinates, splitting
/// each column between the two blocks.
fn realize_as_sum(p: &CantorParams, x: &BigRational, bound: &BigUint) -> bool {
    let (hull_lo, hull_hi) = p.hull();
    // Least m with m·hull_lo ≤ x ≤ m·hull_hi.
    let mut m = if hull_hi.is_positive() {
        (x / &hull_hi).ceil().to_integer().max(BigInt::one())
    } else {
        BigInt::one()
    };
    let limit = BigInt::from(bound.clone());
    loop {
        if m > limit {
            return false;
        }
        let fits = ratio_int(m.clone()) * &hull_lo <= *x && *x <= ratio_int(m.clone()) * &hull_hi;
        if fits {
            break;
        }
        m += BigInt::one();
    }

    // Strip the common prefix value and the k^(-L) scale: the inner targets
    // live in [mα, mβ].
    let scale = ratio_int(k_pow(p.base, p.l));
    let mut target = (x - ratio_int(m.clone()) * &p.u_value) * &scale;
    let m_rat = ratio_int(m.clone());
    if target < &m_rat * &p.alpha || target > &m_rat * &p.beta {
        return false;
    }

    // Level-by-level descent. At each level every one of the m summands
    // contributes Y or Z plus k^(-s) times a deeper element; choosing how
    // many take Y fixes the next target. Terminal condition: the target is
    // exactly a·α + (m−a)·β, realizable by constant-tail elements.
    let r = p.ratio();
    const MAX_LEVELS: u32 = 512;
    for _ in 0..MAX_LEVELS {
        if terminal_split(&target, &m_rat, &p.alpha, &p.beta) {
            return true;
        }
        // Need a ∈ [0, m] with next = (target − aY − (m−a)Z)/r ∈ [mα, mβ].
        let mut found = None;
        let mut a = BigInt::zero();
        while a <= m {
            let a_rat = ratio_int(a.clone());
            let rest = ratio_int(&m - &a);
            let next = (&target - &a_rat * &p.y_value - &rest * &p.z_value) / &r;
            if next >= &m_rat * &p.alpha && next <= &m_rat * &p.beta {
                found = Some(next);
                break;
            }
            a += BigInt::one();
        }
        match found {
            Some(next) => target = next,
            None => return false,
        }
    }
    false
}

/// Is `target = a·α + (m−a)·β` for some integer `0 ≤ a ≤ m`? Those targets
/// are realizable exactly: `a` summands take the all-`y` tail (value α) and
/// the rest the all-`z` tail (value β).
fn terminal_split(
    target: &BigRational,
    m: &BigRational,
    alpha: &BigRational,
    beta: &BigRational,
) -> bool {
    let a = (m * beta - target) / (beta - alpha);
    a.is_integer() && !a.is_negative() && a <= *m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn classical() -> CantorParams {
        cantor_params(3, &[], &[0], &[2]).unwrap()
    }

    #[test]
    fn classical_middle_thirds_values() {
        let p = classical();
        assert_eq!(p.y_value, rat(0, 1));
        assert_eq!(p.z_value, rat(2, 3));
        assert_eq!(p.alpha, rat(0, 1));
        assert_eq!(p.beta, rat(1, 1));
        assert_eq!(p.u_value, rat(0, 1));
    }

    #[test]
    fn dyadic_full_interval_values() {
        let p = cantor_params(2, &[], &[0], &[1]).unwrap();
        assert_eq!(p.alpha, rat(0, 1));
        assert_eq!(p.beta, rat(1, 1));
    }

    #[test]
    fn prefixed_family_shifts_by_u() {
        let p = cantor_params(3, &[1], &[0], &[2]).unwrap();
        assert_eq!(p.u_value, rat(1, 3));
        let (lo, hi) = p.hull();
        assert_eq!(lo, rat(1, 3));
        assert_eq!(hi, rat(1, 3) + rat(1, 3));
    }

    #[test]
    fn blocks_are_swap_normalized() {
        let p = cantor_params(3, &[], &[2], &[0]).unwrap();
        assert!(p.y_value < p.z_value);
        assert_eq!(p.y, vec![0]);
    }

    #[test]
    fn degenerate_blocks_rejected() {
        assert!(cantor_params(3, &[], &[1], &[1]).is_err());
        assert!(cantor_params(3, &[], &[0], &[1, 2]).is_err());
        assert!(cantor_params(3, &[], &[], &[]).is_err());
        assert!(cantor_params(3, &[], &[0], &[3]).is_err());
    }

    #[test]
    fn level_sets_nest_and_match_middle_thirds() {
        let p = classical();
        let depth1 = level_set(&p.dissection(1)).unwrap();
        assert_eq!(depth1, vec![(rat(0, 1), rat(1, 3)), (rat(2, 3), rat(1, 1))]);
        assert_eq!(level_set(&p.dissection(0)).unwrap(), vec![(rat(0, 1), rat(1, 1))]);
        // Nesting: every depth-4 interval sits inside one depth-3 interval.
        let d3 = level_set(&p.dissection(3)).unwrap();
        let d4 = level_set(&p.dissection(4)).unwrap();
        for (a, b) in &d4 {
            assert_eq!(
                d3.iter().filter(|(c, d)| c <= a && b <= d).count(),
                1
            );
        }
    }

    #[test]
    fn ratio_one_half_tiles_exactly() {
        let spec = DissectionSpec {
            ratio: rat(1, 2),
            interval: (rat(0, 1), rat(1, 1)),
            depth: 3,
        };
        let level = level_set(&spec).unwrap();
        assert_eq!(level.len(), 8);
        for pair in level.windows(2) {
            assert_eq!(pair[0].1, pair[1].0);
        }
    }

    #[test]
    fn depth_guard() {
        let p = classical();
        assert!(level_set(&p.dissection(21)).is_err());
        assert!(check_selfsimilarity(&p, 13).is_err());
    }

    #[test]
    fn selfsimilarity_holds_and_detects_perturbation() {
        let p = classical();
        assert!(check_selfsimilarity(&p, 8).unwrap());
        // A wrong Y breaks the identity immediately.
        let z = p.z_value.clone();
        assert!(!check_similarity_maps(&p, &rat(1, 10), &z, 1).unwrap());
    }

    #[test]
    fn selfsimilarity_on_small_random_families() {
        for (k, u, y, z) in [
            (2u32, vec![], vec![0], vec![1]),
            (3, vec![2], vec![0, 1], vec![2, 0]),
            (4, vec![1, 3], vec![0, 2], vec![3, 1]),
        ] {
            let p = cantor_params(k, &u, &y, &z).unwrap();
            assert!(check_selfsimilarity(&p, 5).unwrap(), "k={k}");
        }
    }

    #[test]
    fn mfold_above_threshold_is_closed_form() {
        let p = classical();
        match mfold_interval(&p, 2).unwrap() {
            MFold::Interval(lo, hi) => {
                assert_eq!(lo, rat(0, 1));
                assert_eq!(hi, rat(2, 1));
            }
            other => panic!("expected interval, got {other:?}"),
        }
    }

    #[test]
    fn single_fold_of_cantor_has_the_middle_gap() {
        let p = classical();
        match mfold_interval(&p, 1).unwrap() {
            MFold::NotInterval { gap, depth } => {
                assert_eq!(gap, (rat(1, 3), rat(2, 3)));
                assert_eq!(depth, 1);
            }
            other => panic!("expected gap, got {other:?}"),
        }
    }

    #[test]
    fn dyadic_single_fold_is_already_interval() {
        let p = cantor_params(2, &[], &[0], &[1]).unwrap();
        // k^s − 1 = 1, so m = 1 is closed-form.
        match mfold_interval(&p, 1).unwrap() {
            MFold::Interval(lo, hi) => {
                assert_eq!(lo, rat(0, 1));
                assert_eq!(hi, rat(1, 1));
            }
            other => panic!("expected interval, got {other:?}"),
        }
    }

    #[test]
    fn overlap_threshold_extremes() {
        // α = 0, U = 0: everything overlaps from the start.
        assert_eq!(overlap_threshold(&classical()), BigUint::from(1u32));
        // Shifted family: threshold positive, bounded by k^(L+s) + k^s.
        let p = cantor_params(3, &[1], &[0], &[2]).unwrap();
        let m = overlap_threshold(&p);
        assert!(m <= BigUint::from(12u32));
        // Least-threshold property: the inequality fails at m − 1.
        let m_int = BigInt::from(m.clone());
        let (lo, hi) = p.hull();
        let at = |m: &BigInt| {
            (
                ratio_int(m + BigInt::one()) * &lo,
                ratio_int(m.clone()) * &hi,
            )
        };
        let (next_lo, cur_hi) = at(&m_int);
        assert!(next_lo <= cur_hi);
        if m_int > BigInt::one() {
            let prev = &m_int - BigInt::one();
            let (next_lo, cur_hi) = at(&prev);
            assert!(next_lo > cur_hi);
        }
    }

    #[test]
    fn sum_order_bound_formula() {
        let p2 = cantor_params(2, &[], &[0], &[1]).unwrap();
        assert_eq!(sum_order_bound(&p2, 1), BigUint::from(16u32));
        let p3 = classical();
        assert_eq!(sum_order_bound(&p3, 1), BigUint::from(81u32));
    }

    #[test]
    fn grid_cover_realized_for_small_families() {
        let p2 = cantor_params(2, &[], &[0], &[1]).unwrap();
        assert!(verify_interval_cover(&p2, 1, 3).unwrap());
        let p3 = classical();
        assert!(verify_interval_cover(&p3, 1, 2).unwrap());
    }
}
