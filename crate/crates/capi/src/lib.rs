//! C bindings for the encoder pipeline: parse a machine, build a tableau
//! formula, solve it, and read back the verdict, all behind opaque handles.
//!
//! Every fallible function returns a [`TmStatus`]; the most recent failure
//! message on the calling thread is available through [`tmsat_last_error`].
//! Handles and strings returned through out-pointers are owned by the
//! caller and must be released with the matching `tmsat_*_free` function.
//! Out-pointers are only written on `TM_STATUS_OK`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;
use std::ptr;

use tmsat::cnf::{emit_dimacs, parse_dimacs, CnfFormula};
use tmsat::machine::{accepts_nondet, parse_machine, MachineSpec, Verdict};
use tmsat::solver::{brute_force_sat, dpll, SatVerdict};
use tmsat::tableau::{encode, EncodeMode, Fidelity};

/// Result of every fallible call. Anything other than `Ok` leaves a
/// message for [`tmsat_last_error`].
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TmStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A text argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A machine description or DIMACS document failed to parse.
    ParseError = 3,
    /// An input word used symbols outside the machine's alphabet, or did
    /// not fit the step bound.
    InputError = 4,
    /// The encoder rejected the run (nondeterminism under literal
    /// fidelity, an oversized layout, a pin mismatch).
    EncodeError = 5,
    /// The solver refused the formula (too many variables for the
    /// exhaustive engine).
    SolveError = 6,
}

/// How transition rules are translated into clauses.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TmFidelity {
    /// One clause per rule; deterministic machines only.
    Literal = 0,
    /// Selector variables per step; accepts any machine.
    General = 1,
}

/// What the first tableau row pins down.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TmMode {
    /// The whole tape: input from square 1, blanks after.
    Full = 0,
    /// A pinned prefix, a blank separator, and free certificate squares.
    CertificateFree = 1,
}

/// Which solving engine to run.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TmEngine {
    Dpll = 0,
    /// Exhaustive scan; capped at 24 variables.
    BruteForce = 1,
}

/// A yes/no answer: satisfiable or not, accepting or not.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TmVerdict {
    No = 0,
    Yes = 1,
}

/// A parsed machine. Opaque; create with [`tmsat_machine_parse`], release
/// with [`tmsat_machine_free`].
pub struct TmMachine {
    spec: MachineSpec,
}

/// A CNF formula. Opaque; create with [`tmsat_encode`] or
/// [`tmsat_formula_parse_dimacs`], release with [`tmsat_formula_free`].
pub struct TmFormula {
    formula: CnfFormula,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: TmStatus, message: impl Display) -> TmStatus {
    let text = CString::new(message.to_string())
        .unwrap_or_else(|_| CString::new("error message held a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(value) => value,
            Err(status) => return status,
        }
    };
}

unsafe fn text_arg<'a>(text: *const c_char, what: &str) -> Result<&'a str, TmStatus> {
    if text.is_null() {
        return Err(fail(TmStatus::NullPointer, format_args!("{what} text is null")));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(TmStatus::InvalidUtf8, format_args!("{what} text: {e}")))
}

unsafe fn handle_arg<'a, T>(handle: *const T, what: &str) -> Result<&'a T, TmStatus> {
    handle
        .as_ref()
        .ok_or_else(|| fail(TmStatus::NullPointer, format_args!("{what} handle is null")))
}

unsafe fn out_arg<'a, T>(out: *mut T, what: &str) -> Result<&'a mut T, TmStatus> {
    out.as_mut()
        .ok_or_else(|| fail(TmStatus::NullPointer, format_args!("{what} out-pointer is null")))
}

impl From<TmFidelity> for Fidelity {
    fn from(f: TmFidelity) -> Fidelity {
        match f {
            TmFidelity::Literal => Fidelity::Literal,
            TmFidelity::General => Fidelity::General,
        }
    }
}

/// The message for the most recent failure on this thread, or null when
/// nothing has failed yet. The pointer stays valid until the next failing
/// call on the same thread. Do not free it.
#[no_mangle]
pub extern "C" fn tmsat_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a machine description document.
///
/// # Safety
/// `text` must point to a NUL-terminated string; `out` must point to
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tmsat_machine_parse(
    text: *const c_char,
    out: *mut *mut TmMachine,
) -> TmStatus {
    let out = tri!(out_arg(out, "machine"));
    let text = tri!(text_arg(text, "machine"));
    match parse_machine(text) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(TmMachine { spec }));
            TmStatus::Ok
        }
        Err(e) => fail(TmStatus::ParseError, e),
    }
}

/// Releases a machine handle. Null is tolerated.
///
/// # Safety
/// `machine` must have come from [`tmsat_machine_parse`] and not have been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn tmsat_machine_free(machine: *mut TmMachine) {
    if !machine.is_null() {
        drop(Box::from_raw(machine));
    }
}

/// Writes whether the machine has at most one rule per (state, symbol)
/// pair.
///
/// # Safety
/// `machine` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmsat_machine_is_deterministic(
    machine: *const TmMachine,
    out: *mut bool,
) -> TmStatus {
    let machine = tri!(handle_arg(machine, "machine"));
    let out = tri!(out_arg(out, "flag"));
    *out = machine.spec.is_deterministic();
    TmStatus::Ok
}

/// Runs the machine on `input` for at most `steps` steps, exploring every
/// nondeterministic branch. On success `verdict` says whether some branch
/// accepts and `accept_step` holds the earliest accepting step (0 when the
/// verdict is no).
///
/// # Safety
/// `machine` must be a live handle; `input` must be NUL-terminated;
/// `verdict` and `accept_step` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmsat_simulate(
    machine: *const TmMachine,
    input: *const c_char,
    steps: usize,
    verdict: *mut TmVerdict,
    accept_step: *mut usize,
) -> TmStatus {
    let machine = tri!(handle_arg(machine, "machine"));
    let input = tri!(text_arg(input, "input"));
    let verdict = tri!(out_arg(verdict, "verdict"));
    let accept_step = tri!(out_arg(accept_step, "accept-step"));
    let word = match machine.spec.parse_input(input) {
        Ok(word) => word,
        Err(e) => return fail(TmStatus::InputError, e),
    };
    match accepts_nondet(&machine.spec, &word, steps) {
        Ok(outcome) => {
            match outcome.verdict {
                Verdict::Accept { step } => {
                    *verdict = TmVerdict::Yes;
                    *accept_step = step;
                }
                Verdict::NoAccept => {
                    *verdict = TmVerdict::No;
                    *accept_step = 0;
                }
            }
            TmStatus::Ok
        }
        Err(e) => fail(TmStatus::InputError, e),
    }
}

/// Compiles the machine's runs on `input` within `steps` steps into a CNF
/// formula that is satisfiable iff some run accepts. `pin_len` and
/// `cert_len` are read in certificate-free mode only; full mode ignores
/// them.
///
/// # Safety
/// `machine` must be a live handle; `input` must be NUL-terminated; `out`
/// must point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tmsat_encode(
    machine: *const TmMachine,
    input: *const c_char,
    steps: usize,
    mode: TmMode,
    pin_len: usize,
    cert_len: usize,
    fidelity: TmFidelity,
    out: *mut *mut TmFormula,
) -> TmStatus {
    let machine = tri!(handle_arg(machine, "machine"));
    let input = tri!(text_arg(input, "input"));
    let out = tri!(out_arg(out, "formula"));
    let word = match machine.spec.parse_input(input) {
        Ok(word) => word,
        Err(e) => return fail(TmStatus::InputError, e),
    };
    let mode = match mode {
        TmMode::Full => EncodeMode::full(fidelity.into()),
        TmMode::CertificateFree => {
            EncodeMode::certificate_free(pin_len, cert_len, fidelity.into())
        }
    };
    match encode(&machine.spec, &word, steps, mode) {
        Ok(enc) => {
            *out = Box::into_raw(Box::new(TmFormula { formula: enc.formula }));
            TmStatus::Ok
        }
        Err(e) => fail(TmStatus::EncodeError, e),
    }
}

/// Parses a DIMACS CNF document into a formula handle.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must point to writable storage for
/// one pointer.
#[no_mangle]
pub unsafe extern "C" fn tmsat_formula_parse_dimacs(
    text: *const c_char,
    out: *mut *mut TmFormula,
) -> TmStatus {
    let out = tri!(out_arg(out, "formula"));
    let text = tri!(text_arg(text, "formula"));
    match parse_dimacs(text) {
        Ok(formula) => {
            *out = Box::into_raw(Box::new(TmFormula { formula }));
            TmStatus::Ok
        }
        Err(e) => fail(TmStatus::ParseError, e),
    }
}

/// Renders the formula as DIMACS into a newly allocated string. Release
/// the string with [`tmsat_string_free`].
///
/// # Safety
/// `formula` must be a live handle; `out` must point to writable storage
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tmsat_formula_dimacs(
    formula: *const TmFormula,
    out: *mut *mut c_char,
) -> TmStatus {
    let formula = tri!(handle_arg(formula, "formula"));
    let out = tri!(out_arg(out, "string"));
    match CString::new(emit_dimacs(&formula.formula)) {
        Ok(text) => {
            *out = text.into_raw();
            TmStatus::Ok
        }
        Err(e) => fail(TmStatus::InvalidUtf8, e),
    }
}

/// Writes the formula's variable count.
///
/// # Safety
/// `formula` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmsat_formula_vars(
    formula: *const TmFormula,
    out: *mut usize,
) -> TmStatus {
    let formula = tri!(handle_arg(formula, "formula"));
    let out = tri!(out_arg(out, "count"));
    *out = formula.formula.num_vars();
    TmStatus::Ok
}

/// Writes the formula's clause count.
///
/// # Safety
/// `formula` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmsat_formula_clauses(
    formula: *const TmFormula,
    out: *mut usize,
) -> TmStatus {
    let formula = tri!(handle_arg(formula, "formula"));
    let out = tri!(out_arg(out, "count"));
    *out = formula.formula.clauses().len();
    TmStatus::Ok
}

/// Releases a formula handle. Null is tolerated.
///
/// # Safety
/// `formula` must have come from this library and not have been freed
/// already.
#[no_mangle]
pub unsafe extern "C" fn tmsat_formula_free(formula: *mut TmFormula) {
    if !formula.is_null() {
        drop(Box::from_raw(formula));
    }
}

/// Decides satisfiability with the chosen engine. The exhaustive engine
/// refuses formulas with more than 24 variables.
///
/// # Safety
/// `formula` must be a live handle; `verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmsat_solve(
    formula: *const TmFormula,
    engine: TmEngine,
    verdict: *mut TmVerdict,
) -> TmStatus {
    let formula = tri!(handle_arg(formula, "formula"));
    let verdict = tri!(out_arg(verdict, "verdict"));
    let result = match engine {
        TmEngine::Dpll => dpll(&formula.formula),
        TmEngine::BruteForce => match brute_force_sat(&formula.formula) {
            Ok(result) => result,
            Err(e) => return fail(TmStatus::SolveError, e),
        },
    };
    *verdict = match result.verdict {
        SatVerdict::Sat => TmVerdict::Yes,
        SatVerdict::Unsat => TmVerdict::No,
    };
    TmStatus::Ok
}

/// Releases a string produced by this library. Null is tolerated.
///
/// # Safety
/// `text` must have come from [`tmsat_formula_dimacs`] and not have been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn tmsat_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
