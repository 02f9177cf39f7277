//! Drives the C surface the way a foreign caller would: through raw
//! pointers, NUL-terminated strings, and explicit frees.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tmsat_capi::*;

const FIXTURE: &str = include_str!("../../../fleet/fixture.tm");
const ND_DUP: &str = include_str!("../../../fleet/nd-dup.tm");

fn parse(text: &str) -> *mut TmMachine {
    let text = CString::new(text).unwrap();
    let mut machine = ptr::null_mut();
    let status = unsafe { tmsat_machine_parse(text.as_ptr(), &mut machine) };
    assert_eq!(status, TmStatus::Ok);
    assert!(!machine.is_null());
    machine
}

fn last_error() -> String {
    let ptr = tmsat_last_error();
    assert!(!ptr.is_null(), "a failure must leave a message");
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned()
}

#[test]
fn the_whole_pipeline_runs_through_the_c_surface() {
    let machine = parse(FIXTURE);

    let mut deterministic = false;
    let status = unsafe { tmsat_machine_is_deterministic(machine, &mut deterministic) };
    assert_eq!(status, TmStatus::Ok);
    assert!(deterministic);

    let input = CString::new("1").unwrap();
    let mut formula = ptr::null_mut();
    let status = unsafe {
        tmsat_encode(
            machine,
            input.as_ptr(),
            2,
            TmMode::Full,
            0,
            0,
            TmFidelity::Literal,
            &mut formula,
        )
    };
    assert_eq!(status, TmStatus::Ok);

    let (mut vars, mut clauses) = (0usize, 0usize);
    unsafe {
        assert_eq!(tmsat_formula_vars(formula, &mut vars), TmStatus::Ok);
        assert_eq!(tmsat_formula_clauses(formula, &mut clauses), TmStatus::Ok);
    }
    assert_eq!((vars, clauses), (16, 49));

    for engine in [TmEngine::Dpll, TmEngine::BruteForce] {
        let mut verdict = TmVerdict::No;
        let status = unsafe { tmsat_solve(formula, engine, &mut verdict) };
        assert_eq!(status, TmStatus::Ok);
        assert_eq!(verdict, TmVerdict::Yes);
    }

    // DIMACS text round-trips through the parse entry point.
    let mut text: *mut c_char = ptr::null_mut();
    let status = unsafe { tmsat_formula_dimacs(formula, &mut text) };
    assert_eq!(status, TmStatus::Ok);
    let rendered = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    assert!(rendered.starts_with("p cnf 16 49\n"));

    let mut reparsed = ptr::null_mut();
    let status = unsafe { tmsat_formula_parse_dimacs(text as *const c_char, &mut reparsed) };
    assert_eq!(status, TmStatus::Ok);
    let mut vars_again = 0usize;
    unsafe {
        assert_eq!(tmsat_formula_vars(reparsed, &mut vars_again), TmStatus::Ok);
    }
    assert_eq!(vars_again, 16);

    unsafe {
        tmsat_string_free(text);
        tmsat_formula_free(reparsed);
        tmsat_formula_free(formula);
        tmsat_machine_free(machine);
    }
}

#[test]
fn simulate_reports_the_accepting_step() {
    let machine = parse(FIXTURE);
    let mut verdict = TmVerdict::No;
    let mut step = 0usize;

    let one = CString::new("1").unwrap();
    let status =
        unsafe { tmsat_simulate(machine, one.as_ptr(), 2, &mut verdict, &mut step) };
    assert_eq!(status, TmStatus::Ok);
    assert_eq!((verdict, step), (TmVerdict::Yes, 2));

    let empty = CString::new("").unwrap();
    let status =
        unsafe { tmsat_simulate(machine, empty.as_ptr(), 3, &mut verdict, &mut step) };
    assert_eq!(status, TmStatus::Ok);
    assert_eq!((verdict, step), (TmVerdict::No, 0));

    unsafe { tmsat_machine_free(machine) };
}

#[test]
fn failures_return_codes_and_leave_messages() {
    // Null arguments never crash.
    let mut machine = ptr::null_mut();
    assert_eq!(
        unsafe { tmsat_machine_parse(ptr::null(), &mut machine) },
        TmStatus::NullPointer
    );
    let text = CString::new("x").unwrap();
    assert_eq!(
        unsafe { tmsat_machine_parse(text.as_ptr(), ptr::null_mut()) },
        TmStatus::NullPointer
    );

    // Garbage text is a parse error with a readable message.
    let garbage = CString::new("not a machine").unwrap();
    assert_eq!(
        unsafe { tmsat_machine_parse(garbage.as_ptr(), &mut machine) },
        TmStatus::ParseError
    );
    assert!(!last_error().is_empty());

    // Bytes that are not UTF-8 are refused up front.
    let bad = [0xffu8, 0x00];
    assert_eq!(
        unsafe { tmsat_machine_parse(bad.as_ptr() as *const c_char, &mut machine) },
        TmStatus::InvalidUtf8
    );

    let machine = parse(FIXTURE);

    // A symbol outside the alphabet is an input error.
    let alien = CString::new("z").unwrap();
    let mut formula = ptr::null_mut();
    let status = unsafe {
        tmsat_encode(
            machine,
            alien.as_ptr(),
            2,
            TmMode::Full,
            0,
            0,
            TmFidelity::Literal,
            &mut formula,
        )
    };
    assert_eq!(status, TmStatus::InputError);

    // An input longer than the bound is an encode error.
    let long = CString::new("111").unwrap();
    let status = unsafe {
        tmsat_encode(
            machine,
            long.as_ptr(),
            2,
            TmMode::Full,
            0,
            0,
            TmFidelity::Literal,
            &mut formula,
        )
    };
    assert_eq!(status, TmStatus::EncodeError);
    assert!(last_error().contains("LayoutOverflow"), "got: {}", last_error());
    unsafe { tmsat_machine_free(machine) };

    // Literal fidelity refuses a nondeterministic machine.
    let machine = parse(ND_DUP);
    let one = CString::new("1").unwrap();
    let status = unsafe {
        tmsat_encode(
            machine,
            one.as_ptr(),
            2,
            TmMode::Full,
            0,
            0,
            TmFidelity::Literal,
            &mut formula,
        )
    };
    assert_eq!(status, TmStatus::EncodeError);
    assert!(last_error().contains("NotDeterministic"), "got: {}", last_error());
    unsafe { tmsat_machine_free(machine) };
}

#[test]
fn brute_force_cap_is_a_solve_error() {
    let machine = parse(FIXTURE);
    let input = CString::new("1").unwrap();
    let mut formula = ptr::null_mut();
    let status = unsafe {
        tmsat_encode(
            machine,
            input.as_ptr(),
            4,
            TmMode::Full,
            0,
            0,
            TmFidelity::Literal,
            &mut formula,
        )
    };
    assert_eq!(status, TmStatus::Ok);

    let mut verdict = TmVerdict::No;
    let status = unsafe { tmsat_solve(formula, TmEngine::BruteForce, &mut verdict) };
    assert_eq!(status, TmStatus::SolveError);
    assert!(last_error().contains("TooManyVariables"), "got: {}", last_error());

    // The search engine handles the same formula fine.
    let status = unsafe { tmsat_solve(formula, TmEngine::Dpll, &mut verdict) };
    assert_eq!(status, TmStatus::Ok);
    assert_eq!(verdict, TmVerdict::Yes);

    unsafe {
        tmsat_formula_free(formula);
        tmsat_machine_free(machine);
    }
}
