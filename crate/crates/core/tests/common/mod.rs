//! Shared harness for the acceptance criteria: loads the bundled machine
//! fleet and runs the central sweep (every machine, every short input,
//! every step bound) exactly once, caching verdicts and models so each
//! criterion can interrogate the same body of evidence.

use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use tmsat::cnf::Assignment;
use tmsat::machine::{accepts_nondet, parse_machine, MachineSpec};
use tmsat::solver::{dpll, SatVerdict};
use tmsat::tableau::{encode, EncodeError, EncodeMode, Fidelity};

pub const MAX_INPUT_LEN: usize = 4;
pub const T_RANGE: std::ops::RangeInclusive<usize> = 2..=8;

pub struct FleetMachine {
    pub name: String,
    pub spec: MachineSpec,
    pub deterministic: bool,
}

/// Every `.tm` file bundled under `fleet/`, sorted by name.
pub fn fleet() -> &'static [FleetMachine] {
    static FLEET: OnceLock<Vec<FleetMachine>> = OnceLock::new();
    FLEET.get_or_init(|| {
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fleet");
        let mut names: Vec<PathBuf> = std::fs::read_dir(&dir)
            .expect("fleet directory is bundled with the repository")
            .map(|e| e.expect("readable fleet entry").path())
            .filter(|p| p.extension().is_some_and(|e| e == "tm"))
            .collect();
        names.sort();
        names
            .into_iter()
            .map(|path| {
                let text = std::fs::read_to_string(&path).expect("readable machine file");
                let spec = parse_machine(&text)
                    .unwrap_or_else(|e| panic!("{} does not parse: {e}", path.display()));
                let name = path.file_stem().unwrap().to_string_lossy().into_owned();
                let deterministic = spec.is_deterministic();
                FleetMachine { name, spec, deterministic }
            })
            .collect()
    })
}

/// All words of length `0..=max_len` over the non-blank alphabet, shortest
/// first, lexicographic within a length.
pub fn inputs_up_to(m: &MachineSpec, max_len: usize) -> Vec<Vec<usize>> {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for sym in 1..m.symbol_count() {
                let mut longer = w.clone();
                longer.push(sym);
                next.push(longer);
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    words
}

pub struct FidelityVerdict {
    pub vars: usize,
    pub sat: bool,
    pub model: Option<Assignment>,
}

pub struct Case {
    pub machine: String,
    pub input: Vec<usize>,
    pub t_bound: usize,
    pub sim_accepts: bool,
    pub general: FidelityVerdict,
    /// Present for deterministic machines only.
    pub literal: Option<FidelityVerdict>,
}

pub struct Sweep {
    pub cases: Vec<Case>,
    /// Combinations where the input is longer than the bound; both the
    /// encoder and the simulator must refuse these.
    pub skipped_overflow: usize,
    pub elapsed: Duration,
}

fn solve_one(m: &MachineSpec, w: &[usize], t: usize, fidelity: Fidelity) -> FidelityVerdict {
    let enc = encode(m, w, t, EncodeMode::full(fidelity))
        .expect("in-bounds full encoding always succeeds");
    let result = dpll(&enc.formula);
    FidelityVerdict {
        vars: enc.formula.num_vars(),
        sat: result.verdict == SatVerdict::Sat,
        model: result.model,
    }
}

/// The central sweep, computed once per test binary.
pub fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let mut cases = Vec::new();
        let mut skipped_overflow = 0;
        for fm in fleet() {
            for input in inputs_up_to(&fm.spec, MAX_INPUT_LEN) {
                for t in T_RANGE {
                    if input.len() > t {
                        let refused = encode(
                            &fm.spec,
                            &input,
                            t,
                            EncodeMode::full(Fidelity::General),
                        );
                        assert!(
                            matches!(refused, Err(EncodeError::LayoutOverflow { .. })),
                            "{}: oversized input must be refused",
                            fm.name
                        );
                        assert!(accepts_nondet(&fm.spec, &input, t).is_err());
                        skipped_overflow += 1;
                        continue;
                    }
                    let sim_accepts = accepts_nondet(&fm.spec, &input, t)
                        .expect("in-bounds run succeeds")
                        .accepted();
                    let general = solve_one(&fm.spec, &input, t, Fidelity::General);
                    let literal = fm
                        .deterministic
                        .then(|| solve_one(&fm.spec, &input, t, Fidelity::Literal));
                    cases.push(Case {
                        machine: fm.name.clone(),
                        input: input.clone(),
                        t_bound: t,
                        sim_accepts,
                        general,
                        literal,
                    });
                }
            }
        }
        Sweep { cases, skipped_overflow, elapsed: start.elapsed() }
    })
}

/// Prints the one-line verdict for a criterion, then enforces it.
pub fn criterion(n: usize, ok: bool, detail: &str) {
    let tag = if ok { "[PASS]" } else { "[FAIL]" };
    println!("{tag} criterion {n}: {detail}");
    assert!(ok, "criterion {n} failed: {detail}");
}
