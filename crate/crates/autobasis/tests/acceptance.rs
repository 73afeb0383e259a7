//! End-to-end verification of the crate's headline guarantees, one test per
//! guarantee, each checked against an independent oracle (digit predicates,
//! matrix path counting, bitset sumsets) and — for the worked examples —
//! against the command-line binary itself.
//!
//! Every test prints a single `PASS`/`FAIL — detail` line; run with
//! `cargo test --test acceptance -- --nocapture` to see them all.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use autobasis::basis::{
    decide_basis, exceptions_relative, theoretical_bounds, BasisOptions, BasisReason,
    RelativeExceptions,
};
use autobasis::cantor::{
    cantor_params, check_selfsimilarity, mfold_interval, overlap_threshold, sum_order_bound,
    CantorParams, MFold,
};
use autobasis::corpus::corpus;
use autobasis::gcd::divisibility_automaton;
use autobasis::growth::classify_nfa;
use autobasis::numeral::{accepts_value, canonical_language, restrict_canonical};
use autobasis::sumset::{count_representations, sum_automaton};
use autobasis::{classify, Dfa, Digit, Nfa, SumMode, SumSpec};

// ---------------------------------------------------------------------------
// Reporting: accumulate failures, print one PASS/FAIL line, then assert.

struct Check {
    label: &'static str,
    started: std::time::Instant,
    failures: Vec<String>,
}

impl Check {
    fn new(label: &'static str) -> Check {
        Check {
            label,
            started: std::time::Instant::now(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, actual: T, expected: T, what: &str) {
        if actual != expected {
            self.failures
                .push(format!("{what}: expected {expected:?}, got {actual:?}"));
        }
    }

    fn conclude(self) {
        let elapsed = self.started.elapsed().as_secs_f64();
        if self.failures.is_empty() {
            println!("{}: PASS ({elapsed:.2}s)", self.label);
        } else {
            let detail = self.failures.join("; ");
            println!("{}: FAIL ({elapsed:.2}s) — {detail}", self.label);
            panic!("{}: {detail}", self.label);
        }
    }
}

// ---------------------------------------------------------------------------
// Independent membership oracles: plain digit arithmetic, no automata.

fn base_digits(mut n: u64, base: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % base);
        n /= base;
    }
    digits
}

fn is_cantor3(n: u64) -> bool {
    base_digits(n, 3).iter().all(|&d| d != 1)
}

fn is_evil(n: u64) -> bool {
    n.count_ones() % 2 == 0
}

fn is_rudin_shapiro(n: u64) -> bool {
    (n & (n >> 1)).count_ones() % 2 == 1
}

fn is_digits01_base4(n: u64) -> bool {
    base_digits(n, 4).iter().all(|&d| d <= 1)
}

fn is_digits02_base4(n: u64) -> bool {
    base_digits(n, 4).iter().all(|&d| d == 0 || d == 2)
}

fn members_by<F: Fn(u64) -> bool>(pred: F, bound: u64) -> Vec<u64> {
    (0..=bound).filter(|&n| pred(n)).collect()
}

/// Members of the machine's value set up to `bound`, by running the
/// machine directly on least-significant-first canonical digits.
fn machine_members(a: &Dfa, bound: u64) -> Vec<u64> {
    let base = a.base() as u64;
    (0..=bound)
        .filter(|&n| {
            let mut q = a.initial();
            let mut m = n;
            while m > 0 {
                q = a.next(q, (m % base) as Digit);
                m /= base;
            }
            a.is_final(q)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Bitset sumset brute force.

#[derive(Clone)]
struct BitSet {
    blocks: Vec<u64>,
    len: usize,
}

impl BitSet {
    fn new(len: usize) -> BitSet {
        BitSet {
            blocks: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn set(&mut self, i: usize) {
        if i < self.len {
            self.blocks[i / 64] |= 1 << (i % 64);
        }
    }

    fn get(&self, i: usize) -> bool {
        i < self.len && self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    /// `self |= other << shift`, truncated to `len`.
    fn or_shifted(&mut self, other: &BitSet, shift: usize) {
        let (word, bit) = (shift / 64, shift % 64);
        for i in (0..self.blocks.len().saturating_sub(word)).rev() {
            let mut v = other.blocks[i] << bit;
            if bit > 0 && i > 0 {
                v |= other.blocks[i - 1] >> (64 - bit);
            }
            self.blocks[i + word] |= v;
        }
    }

    fn from_members(members: &[u64], len: usize) -> BitSet {
        let mut b = BitSet::new(len);
        for &v in members {
            if (v as usize) < len {
                b.set(v as usize);
            }
        }
        b
    }
}

/// Values expressible as a sum of exactly `j` members, truncated to `< len`.
fn brute_exact_sums(members: &[u64], j: usize, len: usize) -> BitSet {
    let single = BitSet::from_members(members, len);
    let mut current = single.clone();
    for _ in 1..j {
        let mut next = BitSet::new(len);
        for &v in members {
            if (v as usize) < len {
                next.or_shifted(&current, v as usize);
            }
        }
        current = next;
    }
    current
}

/// Values expressible as a sum of 1..=j members, truncated to `< len`.
fn brute_atmost_sums(members: &[u64], j: usize, len: usize) -> BitSet {
    let mut reach = BitSet::from_members(members, len);
    for _ in 1..j {
        let mut next = reach.clone();
        for &v in members {
            if (v as usize) < len {
                next.or_shifted(&reach, v as usize);
            }
        }
        reach = next;
    }
    reach
}

// ---------------------------------------------------------------------------
// Matrix path-counting oracle over a machine's digit graph (u128 exact for
// the path lengths used here).

struct PathOracle {
    n: usize,
    /// adjacency[q][p] = number of digits taking q to p, useful states only.
    adjacency: Vec<Vec<u128>>,
    initial: Option<usize>,
    finals: Vec<bool>,
}

impl PathOracle {
    /// Builds the useful-state multigraph with naive O(n³) reachability.
    fn new(a: &Dfa) -> PathOracle {
        let n = a.state_count();
        let k = a.base();
        let mut step = vec![vec![false; n]; n];
        for q in 0..n {
            for d in 0..k {
                step[q][a.next(q, d)] = true;
            }
        }
        let mut reach = step.clone();
        for q in 0..n {
            reach[q][q] = true;
        }
        loop {
            let mut changed = false;
            for q in 0..n {
                for p in 0..n {
                    if !reach[q][p] {
                        continue;
                    }
                    for r in 0..n {
                        if reach[p][r] && !reach[q][r] {
                            reach[q][r] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let useful: Vec<usize> = (0..n)
            .filter(|&q| {
                reach[a.initial()][q] && (0..n).any(|f| a.is_final(f) && reach[q][f])
            })
            .collect();
        let index: std::collections::HashMap<usize, usize> =
            useful.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let m = useful.len();
        let mut adjacency = vec![vec![0u128; m]; m];
        for (i, &q) in useful.iter().enumerate() {
            for d in 0..k {
                if let Some(&j) = index.get(&a.next(q, d)) {
                    adjacency[i][j] += 1;
                }
            }
        }
        PathOracle {
            n: m,
            adjacency,
            initial: index.get(&a.initial()).copied(),
            finals: useful.iter().map(|&q| a.is_final(q)).collect(),
        }
    }

    fn multiply(&self, a: &[Vec<u128>], b: &[Vec<u128>]) -> Vec<Vec<u128>> {
        let n = self.n;
        let mut c = vec![vec![0u128; n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l] == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i][j] += a[i][l] * b[l][j];
                }
            }
        }
        c
    }

    /// True iff some useful state carries two distinct equal-length cycles —
    /// checked for every cycle length up to n², which is exhaustive: two
    /// distinct cycles anywhere yield two distinct equal-length cycles of
    /// length at most lcm of their lengths ≤ n².
    fn has_double_cycle(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut power = self.adjacency.clone();
        for _ in 0..self.n * self.n {
            if (0..self.n).any(|q| power[q][q] >= 2) {
                return true;
            }
            power = self.multiply(&power, &self.adjacency);
        }
        (0..self.n).any(|q| power[q][q] >= 2)
    }

    /// Number of accepted words of length exactly `len`.
    fn word_count(&self, len: usize) -> u128 {
        let Some(initial) = self.initial else {
            return 0;
        };
        let mut v = vec![0u128; self.n];
        v[initial] = 1;
        for _ in 0..len {
            let mut next = vec![0u128; self.n];
            for q in 0..self.n {
                if v[q] == 0 {
                    continue;
                }
                for p in 0..self.n {
                    next[p] += v[q] * self.adjacency[q][p];
                }
            }
            v = next;
        }
        (0..self.n).filter(|&q| self.finals[q]).map(|q| v[q]).sum()
    }

    /// Polynomial degree by exhaustive condensation-path search, or None for
    /// exponential growth.
    fn poly_degree(&self) -> Option<usize> {
        if self.has_double_cycle() {
            return None;
        }
        let Some(initial) = self.initial else {
            return Some(0);
        };
        // Strongly connected components by mutual reachability.
        let n = self.n;
        let mut reach = vec![vec![false; n]; n];
        for q in 0..n {
            reach[q][q] = true;
        }
        loop {
            let mut changed = false;
            for q in 0..n {
                for p in 0..n {
                    if self.adjacency[q][p] > 0 && !reach[q][p] {
                        reach[q][p] = true;
                        changed = true;
                    }
                    if reach[q][p] {
                        for r in 0..n {
                            if reach[p][r] && !reach[q][r] {
                                reach[q][r] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut component = vec![usize::MAX; n];
        let mut cyclic: Vec<bool> = Vec::new();
        for q in 0..n {
            if component[q] != usize::MAX {
                continue;
            }
            let id = cyclic.len();
            let states: Vec<usize> = (0..n).filter(|&p| reach[q][p] && reach[p][q]).collect();
            let has_cycle = states.len() > 1
                || states.iter().any(|&p| self.adjacency[p][p] > 0);
            for &p in &states {
                component[p] = id;
            }
            cyclic.push(has_cycle);
        }
        // All paths in the condensation from the initial component; every
        // useful state reaches a final state, so every path end counts.
        let mut best = 0usize;
        let mut stack = vec![(component[initial], usize::from(cyclic[component[initial]]))];
        while let Some((c, cycles)) = stack.pop() {
            best = best.max(cycles);
            for q in 0..n {
                if component[q] != c {
                    continue;
                }
                for p in 0..n {
                    if self.adjacency[q][p] > 0 && component[p] != c {
                        let next = component[p];
                        stack.push((next, cycles + usize::from(cyclic[next])));
                    }
                }
            }
        }
        Some(best.saturating_sub(1))
    }
}

// ---------------------------------------------------------------------------
// Random machines and CLI plumbing.

fn random_dfa(rng: &mut ChaCha8Rng, base: u32, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let delta: Vec<usize> = (0..n * base as usize)
        .map(|_| rng.gen_range(0..n))
        .collect();
    let finals: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_parts(base, 0, finals, delta)
        .expect("well-formed random machine")
        .minimize()
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_autobasis"))
        .args(args)
        .output()
        .expect("the binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).into_owned(),
    )
}

fn stdout_value(stdout: &str, key: &str) -> Option<String> {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")).map(str::to_string))
}

fn biguints(values: &[u64]) -> Vec<BigUint> {
    values.iter().map(|&v| BigUint::from(v)).collect()
}

// ---------------------------------------------------------------------------
// 1. Every even number is a sum of exactly two members of the base-3 set
//    with digits {0,2} — by automaton difference-emptiness and by brute
//    force up to 10⁴.

#[test]
fn even_numbers_are_pair_sums_of_the_cantor_digit_set() {
    let mut c = Check::new("every even number is a pair sum of the {0,2}-digit base-3 set");

    let cantor = corpus("cantor3").expect("corpus entry").machine;
    let spec = SumSpec::homogeneous(&cantor, 2, SumMode::Exact).expect("pair spec");
    let sum = sum_automaton(&spec).expect("pair sum machine");
    let evens = divisibility_automaton(3, &BigUint::from(2u32)).expect("even machine");

    // Full regular-language claim: evens ∖ (S + S) is empty.
    match evens
        .difference(&restrict_canonical(&sum).expect("canonical sum"))
    {
        Ok(diff) => c.check(diff.is_empty(), || {
            "difference machine is nonempty: some even is not a pair sum".into()
        }),
        Err(e) => c.check(false, || format!("difference construction failed: {e}")),
    }
    match exceptions_relative(&sum, &evens, true) {
        Ok(RelativeExceptions::Finite(values)) => {
            c.check_eq(values, Vec::new(), "relative exceptions");
        }
        other => c.check(false, || format!("expected finite empty exceptions, got {other:?}")),
    }

    // Brute force against the digit predicate, not the machines.
    let members = members_by(is_cantor3, 10_000);
    let sums = brute_exact_sums(&members, 2, 10_001);
    let missed: Vec<u64> = (0..=10_000u64)
        .step_by(2)
        .filter(|&n| !sums.get(n as usize))
        .collect();
    c.check_eq(missed, Vec::new(), "evens ≤ 10⁴ missed by brute-force pair sums");

    // The command-line binary agrees.
    let (code, stdout) = run_cli(&[
        "exceptions",
        "corpus:cantor3",
        "--order",
        "2",
        "--mode",
        "exact-sum",
        "--target",
        "even",
    ]);
    c.check_eq(code, 0, "CLI exit code");
    c.check_eq(
        stdout_value(&stdout, "exception_count").as_deref(),
        Some("0"),
        "CLI exception count",
    );

    c.conclude();
}

// ---------------------------------------------------------------------------
// 2. The evil numbers (even count of binary ones) are an asymptotic basis of
//    order exactly 3 with exceptions {1,2,4,7}; at order 2 the failure is
//    infinite with a pumpable witness.

#[test]
fn evil_numbers_order_three_basis_and_order_two_witness() {
    let mut c = Check::new("evil numbers: order-3 basis, pumped order-2 witness");

    let evil = corpus("evil2").expect("corpus entry").machine;
    let report = decide_basis(&evil, &BasisOptions::default()).expect("decision");
    c.check(report.asymptotic_basis, || "expected an asymptotic basis".into());
    c.check_eq(report.minimal_order, Some(3), "minimal order");
    c.check_eq(report.exceptions.clone(), biguints(&[1, 2, 4, 7]), "exceptions");
    c.check_eq(report.threshold.clone(), BigUint::from(8u32), "threshold");

    let (code, stdout) = run_cli(&["basis", "corpus:evil2", "--asymptotic"]);
    c.check_eq(code, 0, "CLI exit code");
    c.check_eq(stdout_value(&stdout, "order").as_deref(), Some("3"), "CLI order");
    c.check_eq(
        stdout_value(&stdout, "exceptions").as_deref(),
        Some("1 2 4 7"),
        "CLI exceptions",
    );
    c.check_eq(stdout_value(&stdout, "threshold").as_deref(), Some("8"), "CLI threshold");

    // Order 2 leaves infinitely many values uncovered; the witness pumps.
    let spec = SumSpec::homogeneous(&evil, 2, SumMode::AtMost).expect("pair spec");
    let sum = sum_automaton(&spec).expect("pair sum machine");
    match exceptions_relative(&sum, &canonical_language(2), true) {
        Ok(RelativeExceptions::Infinite(w)) => {
            let mut pumped = BTreeSet::new();
            for i in 0.. {
                let v = w.pumped_value(i, 2);
                if v > BigUint::from(10_000u32) {
                    break;
                }
                pumped.insert(v);
            }
            // Every pumped value must genuinely not be an order-2 sum.
            let members = members_by(is_evil, 10_000);
            let sums = brute_atmost_sums(&members, 2, 10_001);
            for v in &pumped {
                let v = v.to_u64().expect("pumped value fits");
                c.check(!sums.get(v as usize), || {
                    format!("pumped value {v} is actually an order-2 sum")
                });
            }
            let expected: BTreeSet<BigUint> =
                biguints(&[2, 4, 7, 31, 127, 511, 2047, 8191]).into_iter().collect();
            c.check_eq(pumped, expected, "pumped witness values ≤ 10⁴");
        }
        other => c.check(false, || {
            format!("expected infinitely many order-2 exceptions, got {other:?}")
        }),
    }

    c.conclude();
}

// ---------------------------------------------------------------------------
// 3. The Rudin–Shapiro set (odd count of 11-blocks) at order-2 exact sums:
//    exceptions {0,1,2,3,4,5,7,8,10,11,13,20}, threshold 21.

#[test]
fn rudin_shapiro_order_two_exceptions_and_threshold() {
    let mut c = Check::new("Rudin–Shapiro set: order-2 exact-sum exceptions and threshold");

    let rs = corpus("rudinshapiro2").expect("corpus entry").machine;
    let opts = BasisOptions {
        sum_mode: SumMode::Exact,
        ..BasisOptions::default()
    };
    let report = decide_basis(&rs, &opts).expect("decision");
    let expected = [0u64, 1, 2, 3, 4, 5, 7, 8, 10, 11, 13, 20];
    c.check(report.asymptotic_basis, || "expected an asymptotic basis".into());
    c.check_eq(report.minimal_order, Some(2), "minimal order");
    c.check_eq(report.exceptions.clone(), biguints(&expected), "exceptions");
    c.check_eq(report.threshold.clone(), BigUint::from(21u32), "threshold");

    let (code, stdout) = run_cli(&[
        "basis",
        "corpus:rudinshapiro2",
        "--asymptotic",
        "--mode",
        "exact-sum",
    ]);
    c.check_eq(code, 0, "CLI exit code");
    c.check_eq(
        stdout_value(&stdout, "exceptions").as_deref(),
        Some("0 1 2 3 4 5 7 8 10 11 13 20"),
        "CLI exceptions",
    );
    c.check_eq(stdout_value(&stdout, "threshold").as_deref(), Some("21"), "CLI threshold");

    // Brute confirmation from the digit predicate.
    let members = members_by(is_rudin_shapiro, 10_000);
    let sums = brute_exact_sums(&members, 2, 10_001);
    let brute_exceptions: Vec<u64> = (0..=10_000u64)
        .filter(|&n| !sums.get(n as usize))
        .collect();
    c.check_eq(brute_exceptions, expected.to_vec(), "brute-force exceptions ≤ 10⁴");

    c.conclude();
}

// ---------------------------------------------------------------------------
// 4. The base-4 {0,1}-digit set covers every natural at order 3 with no
//    exceptions, and n = x + y with x from the {0,1}-digit set and y from
//    the {0,2}-digit set has exactly one representation for every n.

#[test]
fn base4_digit_set_order_three_cover_and_unique_pair_counts() {
    let mut c = Check::new("base-4 digit sets: exceptionless order-3 cover, unique pair counts");

    let d01 = corpus("digits01base4").expect("corpus entry").machine;
    let d02 = corpus("digits02base4").expect("corpus entry").machine;

    let spec = SumSpec::homogeneous(&d01, 3, SumMode::Exact).expect("triple spec");
    let sum = sum_automaton(&spec).expect("triple sum machine");
    match exceptions_relative(&sum, &canonical_language(4), true) {
        Ok(RelativeExceptions::Finite(values)) => {
            c.check_eq(values, Vec::new(), "order-3 exceptions");
        }
        other => c.check(false, || format!("expected no exceptions, got {other:?}")),
    }
    let report = decide_basis(
        &d01,
        &BasisOptions {
            asymptotic: false,
            sum_mode: SumMode::Exact,
            ..BasisOptions::default()
        },
    )
    .expect("decision");
    c.check(report.exact_basis, || "expected an exact basis".into());
    c.check_eq(report.minimal_order, Some(3), "minimal order");
    c.check_eq(report.exceptions.clone(), Vec::new(), "exceptions");

    // Brute cover check against digit predicates.
    let members = members_by(is_digits01_base4, 10_000);
    let sums = brute_exact_sums(&members, 3, 10_001);
    let missed: Vec<u64> = (0..=10_000u64).filter(|&n| !sums.get(n as usize)).collect();
    c.check_eq(missed, Vec::new(), "values ≤ 10⁴ missed by brute-force triple sums");

    // Unique mixed-pair representation, library vs brute tally.
    let mixed = SumSpec::new(vec![d01, d02], false, SumMode::Exact).expect("mixed spec");
    let mut bad_counts = Vec::new();
    for n in 0..=1000u64 {
        let count = count_representations(&BigUint::from(n), &mixed).expect("count");
        if !count.is_one() {
            bad_counts.push((n, count));
        }
    }
    c.check_eq(bad_counts, Vec::new(), "library pair counts ≠ 1");

    let a_members = members_by(is_digits01_base4, 1000);
    let b_members = members_by(is_digits02_base4, 1000);
    let mut tally = vec![0u32; 1001];
    for &x in &a_members {
        for &y in &b_members {
            if x + y <= 1000 {
                tally[(x + y) as usize] += 1;
            }
        }
    }
    let bad_brute: Vec<u64> = (0..=1000u64).filter(|&n| tally[n as usize] != 1).collect();
    c.check_eq(bad_brute, Vec::new(), "brute pair counts ≠ 1");

    c.conclude();
}

// ---------------------------------------------------------------------------
// 5. On 200 random machines the basis verdict coincides with the brute-force
//    characterization (non-sparse ∧ gcd 1), and reported thresholds are
//    sharp: representable on [M, M+500], not at M−1.

#[test]
fn basis_verdicts_match_brute_force_on_random_machines() {
    let mut c = Check::new("basis verdict ⟺ non-sparse ∧ gcd 1 on 200 random machines");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0001);

    let opts = BasisOptions {
        max_order: 6,
        ..BasisOptions::default()
    };
    for trial in 0..200 {
        let base = if rng.gen_bool(0.5) { 2 } else { 3 };
        let machine = random_dfa(&mut rng, base, 4);

        // Brute scan bound: at least 10⁴ and wide enough to see every gcd
        // witness (they all sit below k^(2m+2)).
        let m = machine.state_count();
        let scan = 10_000u64.max((base as u64).pow(2 * m as u32 + 2));
        let members = machine_members(&machine, scan);
        let gcd_one = members
            .iter()
            .filter(|&&v| v > 0)
            .fold(0u64, |g, &v| num_integer::gcd(g, v))
            == 1;
        let canonical = restrict_canonical(&machine).expect("canonical form");
        let non_sparse = PathOracle::new(&canonical).has_double_cycle();
        let expected = non_sparse && gcd_one;

        let report = match decide_basis(&machine, &opts) {
            Ok(report) => report,
            Err(e) => {
                c.check(false, || format!("trial {trial}: decision failed: {e}"));
                continue;
            }
        };
        c.check(report.asymptotic_basis == expected, || {
            format!(
                "trial {trial}: verdict {} but brute force says non_sparse={non_sparse}, \
                 gcd_one={gcd_one}",
                report.asymptotic_basis
            )
        });
        match (&report.reason, non_sparse, gcd_one) {
            (BasisReason::Ok, _, _) if report.asymptotic_basis => {}
            (BasisReason::NonSparseFailed, false, _) => {}
            (BasisReason::GcdFailed(_), true, false) => {}
            (reason, _, _) => c.check(false, || {
                format!(
                    "trial {trial}: reason {reason:?} inconsistent with brute force \
                     (non_sparse={non_sparse}, gcd_one={gcd_one})"
                )
            }),
        }

        if report.asymptotic_basis {
            let j = report.minimal_order.expect("order accompanies a basis");
            let threshold = report
                .threshold
                .to_u64()
                .expect("threshold fits in u64 for these machines");
            let len = (threshold + 501) as usize;
            let window_members = if threshold + 500 <= scan {
                members.clone()
            } else {
                machine_members(&machine, threshold + 500)
            };
            let sums = brute_atmost_sums(&window_members, j, len);
            for n in threshold..=threshold + 500 {
                c.check(sums.get(n as usize), || {
                    format!("trial {trial}: {n} ≥ threshold {threshold} is not an order-{j} sum")
                });
            }
            if threshold > 0 {
                c.check(!sums.get((threshold - 1) as usize), || {
                    format!(
                        "trial {trial}: threshold {threshold} is not sharp, \
                         {} is an order-{j} sum",
                        threshold - 1
                    )
                });
            }
        }
    }

    c.conclude();
}

// ---------------------------------------------------------------------------
// 6. Growth classification agrees with matrix path-counting oracles on 500
//    random machines; exponential witnesses obey their length bounds and
//    really generate the language; the cycle-with-chord family attains the
//    extremal witness length 3n−1; the a-priori bound formulas evaluate
//    exactly.

#[test]
fn growth_classification_matches_counting_oracle() {
    let mut c = Check::new("growth classification vs counting oracle on 500 random machines");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0002);

    for trial in 0..500 {
        let base = if rng.gen_bool(0.5) { 2 } else { 3 };
        let machine = random_dfa(&mut rng, base, 5);
        let oracle = PathOracle::new(&machine);
        let report = classify(&machine);

        c.check_eq(
            report.is_polynomial(),
            !oracle.has_double_cycle(),
            &format!("trial {trial}: growth dichotomy"),
        );
        c.check_eq(
            report.degree(),
            oracle.poly_degree(),
            &format!("trial {trial}: polynomial degree"),
        );
        for len in 0..=14 {
            let counted = machine.count_words_of_length(len);
            let expected = BigUint::from(oracle.word_count(len));
            c.check(counted == expected, || {
                format!("trial {trial}: {len}-digit word count {counted} ≠ oracle {expected}")
            });
        }

        if let Some(w) = report.witness() {
            let m = report.state_count;
            c.check(w.prefix.len() < m && w.suffix.len() < m, || {
                format!("trial {trial}: witness prefix/suffix too long for {m} states")
            });
            c.check(
                w.t.len() == w.u.len() && !w.t.is_empty() && w.t.len() < 3 * m,
                || format!("trial {trial}: witness cycle words break the 3m bound"),
            );
            c.check(w.t != w.u, || format!("trial {trial}: witness cycle words equal"));
            c.check(witness_generates(w, &machine), || {
                format!("trial {trial}: some pumped witness word is rejected")
            });
        }
    }

    // The cycle-with-chord family forces the extremal cycle-word length.
    for n in [3usize, 4, 5] {
        let mut b = Nfa::builder(2, n);
        b.add_initial(0);
        b.add_final(0);
        for q in 0..n {
            b.add_transition(q, 0, (q + 1) % n);
        }
        b.add_transition(n - 1, 1, 1);
        let machine = b.build();
        let report = classify_nfa(&machine).expect("classification");
        match report.witness() {
            Some(w) => {
                c.check_eq(w.t.len(), 3 * n - 1, &format!("extremal witness length, {n} states"));
            }
            None => c.check(false, || format!("{n}-state chord family not exponential")),
        }
    }

    let (n_bound, m_bound) = theoretical_bounds(2, 1);
    c.check_eq(n_bound, BigUint::from(2_621_440u64), "a-priori order bound, k=2 m=1");
    c.check_eq(m_bound, BigUint::from(6_291_456u64), "a-priori threshold bound, k=2 m=1");

    c.conclude();
}

/// `prefix · {t,u}^≤4 · suffix ⊆ L`, checked by direct simulation.
fn witness_generates(w: &autobasis::growth::ExpWitness, machine: &Dfa) -> bool {
    for len in 0..=4u32 {
        for mask in 0..1u32 << len {
            let mut word = w.prefix.clone();
            for i in 0..len {
                word = word.concat(if mask >> i & 1 == 0 { &w.t } else { &w.u });
            }
            word = word.concat(&w.suffix);
            if !machine.accepts_word(&word) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// 7. Cantor-family arithmetic is exact: endpoint identities, depth-8
//    self-similarity, the classical 2-fold sum, the overlap-threshold bound
//    on 100 random parameter sets, and the closed-form order bound.

#[test]
fn cantor_interval_arithmetic_is_exact() {
    let mut c = Check::new("Cantor family: exact identities, thresholds, and bounds");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);

    let classical = cantor_params(3, &[], &[0], &[2]).expect("classical parameters");
    c.check(endpoint_identities_hold(&classical), || {
        "classical endpoint identities fail".into()
    });
    c.check_eq(
        check_selfsimilarity(&classical, 8).expect("similarity check"),
        true,
        "classical self-similarity at depth 8",
    );
    match mfold_interval(&classical, 2) {
        Ok(MFold::Interval(lo, hi)) => {
            c.check(lo.is_zero() && hi == BigRationalExt::from_int(2), || {
                format!("classical 2-fold sum is [{lo}, {hi}], not [0, 2]")
            });
        }
        other => c.check(false, || format!("classical 2-fold sum: {other:?}")),
    }
    c.check_eq(
        sum_order_bound(&classical, 1),
        BigUint::from(81u32),
        "order bound k=3 L=0 s=1 t=1",
    );
    let dyadic = cantor_params(2, &[], &[0], &[1]).expect("dyadic parameters");
    c.check_eq(
        sum_order_bound(&dyadic, 1),
        BigUint::from(16u32),
        "order bound k=2 L=0 s=1 t=1",
    );

    let mut similarity_checked = 0;
    for trial in 0..100 {
        let base = rng.gen_range(2..=6u32);
        let s = rng.gen_range(1..=3usize);
        let l = rng.gen_range(0..=2usize);
        let u: Vec<Digit> = (0..l).map(|_| rng.gen_range(0..base)).collect();
        let y: Vec<Digit> = (0..s).map(|_| rng.gen_range(0..base)).collect();
        let mut z: Vec<Digit> = (0..s).map(|_| rng.gen_range(0..base)).collect();
        if z == y {
            z[s - 1] = (z[s - 1] + 1) % base;
        }
        let p = match cantor_params(base, &u, &y, &z) {
            Ok(p) => p,
            Err(e) => {
                c.check(false, || format!("trial {trial}: parameter build failed: {e}"));
                continue;
            }
        };
        c.check(endpoint_identities_hold(&p), || {
            format!("trial {trial}: endpoint identities fail")
        });
        let bound = BigUint::from(base).pow((p.l + p.s) as u32)
            + BigUint::from(base).pow(p.s as u32);
        let threshold = overlap_threshold(&p);
        c.check(threshold <= bound, || {
            format!("trial {trial}: overlap threshold {threshold} exceeds bound {bound}")
        });
        if similarity_checked < 10 && p.s == 1 {
            similarity_checked += 1;
            c.check_eq(
                check_selfsimilarity(&p, 8).expect("similarity check"),
                true,
                &format!("trial {trial}: self-similarity at depth 8"),
            );
        }
    }

    c.conclude();
}

/// α(1 − k^(−s)) = Y and β(1 − k^(−s)) = Z, exactly.
fn endpoint_identities_hold(p: &CantorParams) -> bool {
    let one = num_rational::BigRational::one();
    let shrink = &one
        - num_rational::BigRational::new(
            num_bigint::BigInt::one(),
            num_bigint::BigInt::from(p.base).pow(p.s as u32),
        );
    &p.alpha * &shrink == p.y_value && &p.beta * &shrink == p.z_value
}

/// Tiny helper so the classical 2-fold check can name the rational 2.
struct BigRationalExt;

impl BigRationalExt {
    fn from_int(v: i64) -> num_rational::BigRational {
        num_rational::BigRational::from_integer(num_bigint::BigInt::from(v))
    }
}

// ---------------------------------------------------------------------------
// 8. Sum automata agree with brute-force sumsets and representation counts
//    on random machines, in exact, at-most, and distinct modes.

#[test]
fn sum_automata_match_brute_force_sumsets() {
    let mut c = Check::new("sum automata vs brute-force sumsets on random machines");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);

    for trial in 0..60 {
        let base = if rng.gen_bool(0.5) { 2 } else { 3 };
        let machine = random_dfa(&mut rng, base, 4);
        let members = machine_members(&machine, 1000);

        for j in 1..=3usize {
            for mode in [SumMode::Exact, SumMode::AtMost] {
                let spec = SumSpec::homogeneous(&machine, j, mode).expect("sum spec");
                let sum = match sum_automaton(&spec) {
                    Ok(sum) => sum,
                    Err(e) => {
                        c.check(false, || format!("trial {trial}: sum machine failed: {e}"));
                        continue;
                    }
                };
                let brute = match mode {
                    SumMode::Exact => brute_exact_sums(&members, j, 1001),
                    SumMode::AtMost => brute_atmost_sums(&members, j, 1001),
                };
                for n in 0..=1000u64 {
                    let lib = accepts_value(&sum, &BigUint::from(n));
                    if lib != brute.get(n as usize) {
                        c.check(false, || {
                            format!(
                                "trial {trial}: j={j} {mode:?}: {n} membership \
                                 {lib} vs brute {}",
                                brute.get(n as usize)
                            )
                        });
                        break;
                    }
                }
            }
        }

        // Distinct-summand pair sums against an ordered double loop.
        let spec = SumSpec::homogeneous(&machine, 2, SumMode::Exact)
            .and_then(|s| s.distinct(true))
            .expect("distinct spec");
        let sum = sum_automaton(&spec).expect("distinct sum machine");
        let mut brute = BitSet::new(1001);
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if x + y > 1000 {
                    break;
                }
                brute.set((x + y) as usize);
            }
        }
        for n in 0..=1000u64 {
            let lib = accepts_value(&sum, &BigUint::from(n));
            if lib != brute.get(n as usize) {
                c.check(false, || {
                    format!(
                        "trial {trial}: distinct pairs: {n} membership {lib} vs brute {}",
                        brute.get(n as usize)
                    )
                });
                break;
            }
        }
    }

    // Representation counts against quadratic/cubic tallies.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0005);
    for trial in 0..10 {
        let base = if rng.gen_bool(0.5) { 2 } else { 3 };
        let machine = random_dfa(&mut rng, base, 4);
        let members = machine_members(&machine, 120);
        let member_set: std::collections::HashSet<u64> = members.iter().copied().collect();

        for (j, distinct) in [(2, false), (2, true), (3, false)] {
            let spec = SumSpec::homogeneous(&machine, j, SumMode::Exact)
                .and_then(|s| s.distinct(distinct))
                .expect("count spec");
            for n in 0..=120u64 {
                let lib = count_representations(&BigUint::from(n), &spec).expect("count");
                let brute = match j {
                    2 => members
                        .iter()
                        .filter(|&&x| x <= n)
                        .filter(|&&x| member_set.contains(&(n - x)))
                        .filter(|&&x| !distinct || x != n - x)
                        .count(),
                    _ => {
                        let mut total = 0usize;
                        for &x in members.iter().filter(|&&x| x <= n) {
                            for &y in members.iter().filter(|&&y| x + y <= n) {
                                let z = n - x - y;
                                if member_set.contains(&z)
                                    && (!distinct || (x != y && y != z && x != z))
                                {
                                    total += 1;
                                }
                            }
                        }
                        total
                    }
                };
                c.check(lib == BigUint::from(brute), || {
                    format!(
                        "trial {trial}: j={j} distinct={distinct}: {n} has {lib} \
                         representations, brute says {brute}"
                    )
                });
            }
        }
    }

    c.conclude();
}
