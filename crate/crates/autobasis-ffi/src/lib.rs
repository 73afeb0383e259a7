//! C ABI for the additive-basis decision library.
//!
//! Conventions:
//!
//! * Every fallible function returns an [`AbStatus`] and writes its result
//!   through out-pointers, which are only touched on `AB_STATUS_OK`.
//! * Big integers cross the boundary as decimal strings.
//! * Strings the library hands out are owned by the caller; release them
//!   with [`ab_string_free`]. Machines are opaque handles released with
//!   [`ab_machine_free`].
//! * After any non-OK status, [`ab_last_error`] returns a message describing
//!   what went wrong (thread-local; valid until the next failing call on the
//!   same thread).
//! * Panics never unwind across the boundary; they surface as
//!   `AB_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigUint;

use autobasis::basis::{decide_basis, BasisOptions};
use autobasis::corpus::corpus;
use autobasis::gcd::gcd_of_set;
use autobasis::growth::{classify, Growth};
use autobasis::numeral::accepts_value;
use autobasis::sumset::{count_representations, SumSpec};
use autobasis::textfmt::{parse_automaton, render_automaton, Direction};
use autobasis::{limits, Dfa, Error, SumMode};

/// Opaque handle to a machine recognizing base-k expansions of a set.
pub struct AbMachine {
    inner: Dfa,
}

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AbStatus {
    /// Success.
    Ok = 0,
    /// Malformed input text or an unknown corpus name.
    Parse = 1,
    /// The order search was exhausted without a decision.
    Inconclusive = 2,
    /// A precondition was violated or a resource limit was hit.
    Precondition = 3,
    /// A required pointer argument was null or not valid UTF-8.
    NullArgument = 4,
    /// An internal panic was caught at the boundary.
    Internal = 5,
}

/// Flat result of the basis decision. Strings are owned by the caller;
/// release the whole struct's contents with [`ab_basis_result_clear`].
#[repr(C)]
pub struct AbBasisResult {
    /// The set is an asymptotic additive basis.
    pub asymptotic_basis: bool,
    /// The set is a basis with no exception above 0.
    pub exact_basis: bool,
    /// Minimal order found, or -1 when no order applies.
    pub order: i64,
    /// Decimal threshold M (least value from which representation never
    /// fails).
    pub threshold: *mut c_char,
    /// Space-separated decimal exceptions; empty string when none.
    pub exceptions: *mut c_char,
    /// Number of exceptions.
    pub exception_count: usize,
    /// State count of the minimized canonical machine.
    pub states: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(clean).expect("nul bytes filtered");
    });
}

fn fail(status: AbStatus, message: &str) -> AbStatus {
    set_error(message);
    status
}

fn fail_with(e: &Error) -> AbStatus {
    let status = match e {
        Error::Parse(_) | Error::UnknownCorpus(_) => AbStatus::Parse,
        Error::Inconclusive { .. } => AbStatus::Inconclusive,
        _ => AbStatus::Precondition,
    };
    fail(status, &e.to_string())
}

/// Runs a closure, converting panics into `AB_STATUS_INTERNAL`.
fn guarded(f: impl FnOnce() -> AbStatus) -> AbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(AbStatus::Internal, "internal panic"),
    }
}

/// # Safety
/// `p` must be null or point to a nul-terminated string.
unsafe fn utf8_arg<'a>(p: *const c_char) -> Option<&'a str> {
    if p.is_null() {
        return None;
    }
    CStr::from_ptr(p).to_str().ok()
}

fn to_c_string(s: String) -> *mut c_char {
    let clean: String = s.chars().filter(|&c| c != '\0').collect();
    CString::new(clean).expect("nul bytes filtered").into_raw()
}

/// Message for the most recent failure on this thread. Never null; empty
/// before the first failure. The pointer stays valid until the next failing
/// call on the same thread.
#[no_mangle]
pub extern "C" fn ab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and not
/// yet released.
#[no_mangle]
pub unsafe extern "C" fn ab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a machine from the text format (see the library documentation for
/// the grammar) and writes a handle to `out`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_machine_parse(
    text: *const c_char,
    out: *mut *mut AbMachine,
) -> AbStatus {
    let Some(text) = utf8_arg(text) else {
        return fail(AbStatus::NullArgument, "text must be non-null UTF-8");
    };
    if out.is_null() {
        return fail(AbStatus::NullArgument, "out must be non-null");
    }
    guarded(|| match parse_automaton(text) {
        Ok(parsed) => {
            *out = Box::into_raw(Box::new(AbMachine { inner: parsed.dfa }));
            AbStatus::Ok
        }
        Err(e) => fail_with(&e),
    })
}

/// Looks up a built-in example machine by name (`evil2`, `cantor3`,
/// `rudinshapiro2`, `digits01base4`, `digits02base4`, or `hard(k,m)`).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_machine_corpus(
    name: *const c_char,
    out: *mut *mut AbMachine,
) -> AbStatus {
    let Some(name) = utf8_arg(name) else {
        return fail(AbStatus::NullArgument, "name must be non-null UTF-8");
    };
    if out.is_null() {
        return fail(AbStatus::NullArgument, "out must be non-null");
    }
    guarded(|| match corpus(name) {
        Ok(entry) => {
            *out = Box::into_raw(Box::new(AbMachine {
                inner: entry.machine,
            }));
            AbStatus::Ok
        }
        Err(e) => fail_with(&e),
    })
}

/// Releases a machine handle.
///
/// # Safety
/// `m` must be null or a handle previously returned by this library and not
/// yet released.
#[no_mangle]
pub unsafe extern "C" fn ab_machine_free(m: *mut AbMachine) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Base of the machine's digit alphabet, or 0 when `m` is null.
///
/// # Safety
/// `m` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ab_machine_base(m: *const AbMachine) -> u32 {
    m.as_ref().map_or(0, |m| m.inner.base())
}

/// Number of states, or 0 when `m` is null.
///
/// # Safety
/// `m` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn ab_machine_states(m: *const AbMachine) -> usize {
    m.as_ref().map_or(0, |m| m.inner.state_count())
}

/// Renders the machine in the text format, most significant digit first when
/// `msd` is set. The string goes to `out`; release it with
/// [`ab_string_free`].
///
/// # Safety
/// `m` must be a valid handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_machine_render(
    m: *const AbMachine,
    msd: bool,
    out: *mut *mut c_char,
) -> AbStatus {
    let Some(m) = m.as_ref() else {
        return fail(AbStatus::NullArgument, "machine must be non-null");
    };
    if out.is_null() {
        return fail(AbStatus::NullArgument, "out must be non-null");
    }
    let direction = if msd { Direction::Msd } else { Direction::Lsd };
    guarded(|| match render_automaton(&m.inner, direction) {
        Ok(text) => {
            *out = to_c_string(text);
            AbStatus::Ok
        }
        Err(e) => fail_with(&e),
    })
}

/// Tests membership of a value (decimal string) in the machine's set.
///
/// # Safety
/// `m` must be a valid handle; `value_decimal` a nul-terminated string;
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_machine_accepts(
    m: *const AbMachine,
    value_decimal: *const c_char,
    out: *mut bool,
) -> AbStatus {
    let Some(m) = m.as_ref() else {
        return fail(AbStatus::NullArgument, "machine must be non-null");
    };
    let Some(raw) = utf8_arg(value_decimal) else {
        return fail(AbStatus::NullArgument, "value must be non-null UTF-8");
    };
    if out.is_null() {
        return fail(AbStatus::NullArgument, "out must be non-null");
    }
    let Ok(value) = raw.parse::<BigUint>() else {
        return fail(
            AbStatus::Precondition,
            &format!("`{raw}` is not a decimal natural number"),
        );
    };
    guarded(|| {
        *out = accepts_value(&m.inner, &value);
        AbStatus::Ok
    })
}

/// Growth classification. Writes `true` to `is_exponential` for exponential
/// growth, else `false` with the polynomial degree in `degree`.
///
/// # Safety
/// `m` must be a valid handle; `is_exponential` and `degree` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ab_classify(
    m: *const AbMachine,
    is_exponential: *mut bool,
    degree: *mut usize,
) -> AbStatus {
    let Some(m) = m.as_ref() else {
        return fail(AbStatus::NullArgument, "machine must be non-null");
    };
    if is_exponential.is_null() || degree.is_null() {
        return fail(AbStatus::NullArgument, "out pointers must be non-null");
    }
    guarded(|| {
        match classify(&m.inner).growth {
            Growth::Polynomial { degree: d } => {
                *is_exponential = false;
                *degree = d;
            }
            Growth::Exponential { .. } => {
                *is_exponential = true;
                *degree = 0;
            }
        }
        AbStatus::Ok
    })
}

/// Gcd of the set's members as a decimal string in `out`; release it with
/// [`ab_string_free`].
///
/// # Safety
/// `m` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_gcd(m: *const AbMachine, out: *mut *mut c_char) -> AbStatus {
    let Some(m) = m.as_ref() else {
        return fail(AbStatus::NullArgument, "machine must be non-null");
    };
    if out.is_null() {
        return fail(AbStatus::NullArgument, "out must be non-null");
    }
    guarded(|| match gcd_of_set(&m.inner) {
        Ok(report) => {
            *out = to_c_string(report.g.to_string());
            AbStatus::Ok
        }
        Err(e) => fail_with(&e),
    })
}

/// Decides the basis question. `asymptotic` allows finitely many exceptions;
/// `exact_sum` makes order-j sums use exactly j summands instead of 1..=j.
/// On `AB_STATUS_OK` the caller owns the strings inside `out`; release them
/// with [`ab_basis_result_clear`].
///
/// # Safety
/// `m` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_basis(
    m: *const AbMachine,
    asymptotic: bool,
    max_order: u32,
    exact_sum: bool,
    out: *mut AbBasisResult,
) -> AbStatus {
    let Some(m) = m.as_ref() else {
        return fail(AbStatus::NullArgument, "machine must be non-null");
    };
    if out.is_null() {
        return fail(AbStatus::NullArgument, "out must be non-null");
    }
    let opts = BasisOptions {
        max_order: max_order as usize,
        asymptotic,
        sum_mode: if exact_sum {
            SumMode::Exact
        } else {
            SumMode::AtMost
        },
    };
    guarded(|| match decide_basis(&m.inner, &opts) {
        Ok(report) => {
            let exceptions = report
                .exceptions
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            *out = AbBasisResult {
                asymptotic_basis: report.asymptotic_basis,
                exact_basis: report.exact_basis,
                order: report.minimal_order.map_or(-1, |j| j as i64),
                threshold: to_c_string(report.threshold.to_string()),
                exceptions: to_c_string(exceptions),
                exception_count: report.exceptions.len(),
                states: report.state_count,
            };
            AbStatus::Ok
        }
        Err(e) => fail_with(&e),
    })
}

/// Releases the strings inside a basis result and zeroes the pointers.
///
/// # Safety
/// `r` must be null or point to a result previously filled by [`ab_basis`]
/// whose strings have not been released yet.
#[no_mangle]
pub unsafe extern "C" fn ab_basis_result_clear(r: *mut AbBasisResult) {
    let Some(r) = r.as_mut() else { return };
    ab_string_free(r.threshold);
    ab_string_free(r.exceptions);
    r.threshold = std::ptr::null_mut();
    r.exceptions = std::ptr::null_mut();
}

/// Number of ordered representations of `n_decimal` as a sum of exactly
/// `order` members (pairwise distinct when `distinct` is set), written to
/// `out` as a decimal string; release it with [`ab_string_free`].
///
/// # Safety
/// `m` must be a valid handle; `n_decimal` a nul-terminated string; `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_count(
    m: *const AbMachine,
    order: u32,
    distinct: bool,
    n_decimal: *const c_char,
    out: *mut *mut c_char,
) -> AbStatus {
    let Some(m) = m.as_ref() else {
        return fail(AbStatus::NullArgument, "machine must be non-null");
    };
    let Some(raw) = utf8_arg(n_decimal) else {
        return fail(AbStatus::NullArgument, "n must be non-null UTF-8");
    };
    if out.is_null() {
        return fail(AbStatus::NullArgument, "out must be non-null");
    }
    let Ok(n) = raw.parse::<BigUint>() else {
        return fail(
            AbStatus::Precondition,
            &format!("`{raw}` is not a decimal natural number"),
        );
    };
    guarded(|| {
        let result = SumSpec::homogeneous(&m.inner, order as usize, SumMode::Exact)
            .and_then(|spec| spec.distinct(distinct))
            .and_then(|spec| count_representations(&n, &spec));
        match result {
            Ok(count) => {
                *out = to_c_string(count.to_string());
                AbStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Sets the per-thread cap on subset-construction states (resource guard).
/// Zero is rejected.
#[no_mangle]
pub extern "C" fn ab_set_state_limit(limit: usize) -> AbStatus {
    if limit == 0 {
        return fail(AbStatus::Precondition, "the state limit must be positive");
    }
    limits::set_state_limit(limit);
    AbStatus::Ok
}
