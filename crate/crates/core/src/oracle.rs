//! A query-machine harness: acceptance decided through one oracle call.
//!
//! The control is deterministic and minimal. It compiles the machine, the
//! input, and the step bound into a query document, hands that document to
//! an oracle exactly once, and halts in the yes-state or the no-state
//! depending on the answer. Everything interesting happens in the
//! compilation: the oracle itself is an ordinary satisfiability check, and
//! the transcript labels it as simulated to keep that visible.
//!
//! Two oracle predicates are available and they are two faces of the same
//! question. The satisfiability oracle is asked about the tableau itself:
//! yes means accepted. The tautology oracle is asked about the negated
//! tableau as a DNF document: yes means the negation always holds, which
//! is a no for acceptance, so the control flips that answer.

use crate::cnf::{
    dnf_is_tautology, emit_dimacs, emit_dnf, negate_to_dnf, parse_dimacs, parse_dnf,
};
use crate::machine::MachineSpec;
use crate::solver::{dpll, SatVerdict};
use crate::tableau::{encode, EncodeError, EncodeMode, Fidelity};
use std::fmt;
use std::fmt::Write as _;
use thiserror::Error;

/// The membership questions an oracle can be configured to answer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OraclePredicate {
    /// "Is this DIMACS CNF document satisfiable?"
    CnfSat,
    /// "Is this DNF document a tautology?"
    DnfTautology,
}

impl OraclePredicate {
    pub fn name(self) -> &'static str {
        match self {
            OraclePredicate::CnfSat => "cnf-sat",
            OraclePredicate::DnfTautology => "dnf-tautology",
        }
    }

    pub fn parse(text: &str) -> Option<OraclePredicate> {
        match text {
            "cnf-sat" => Some(OraclePredicate::CnfSat),
            "dnf-tautology" => Some(OraclePredicate::DnfTautology),
            _ => None,
        }
    }

    /// The membership test: total over well-formed documents, an error on
    /// anything else.
    pub fn answer(self, query: &str) -> Result<bool, OracleError> {
        match self {
            OraclePredicate::CnfSat => {
                let f = parse_dimacs(query)
                    .map_err(|e| OracleError::BadQuery(e.to_string()))?;
                Ok(dpll(&f).verdict == SatVerdict::Sat)
            }
            OraclePredicate::DnfTautology => {
                let d = parse_dnf(query)
                    .map_err(|e| OracleError::BadQuery(e.to_string()))?;
                Ok(dnf_is_tautology(&d))
            }
        }
    }
}

impl fmt::Display for OraclePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("BadQuery: {0}")]
    BadQuery(String),
}

/// Where the control halts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FinalState {
    Yes,
    No,
}

impl fmt::Display for FinalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FinalState::Yes => "yes-state",
            FinalState::No => "no-state",
        })
    }
}

/// One oracle consultation, answer recorded verbatim.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Query {
    pub text: String,
    pub answer: bool,
}

/// The full record of one harness run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QueryTranscript {
    /// The input word, rendered with the machine's symbol names.
    pub input: String,
    pub input_len: usize,
    pub t_bound: usize,
    /// Deterministic control work around the query: write the query,
    /// consult, halt on the answer. Always three.
    pub control_steps: usize,
    pub oracle: OraclePredicate,
    pub queries: Vec<Query>,
    pub final_state: FinalState,
}

/// Runs the query machine: encode, ask once, halt.
///
/// The encoding always uses general fidelity so any machine is fair game.
/// The final state tracks acceptance under both predicates: a satisfiable
/// tableau is a yes, a negated tableau that fails to be a tautology is
/// also a yes.
pub fn reduce_and_query(
    machine: &MachineSpec,
    input: &[usize],
    t_bound: usize,
    oracle: OraclePredicate,
) -> Result<QueryTranscript, EncodeError> {
    let enc = encode(machine, input, t_bound, EncodeMode::full(Fidelity::General))?;
    let text = match oracle {
        OraclePredicate::CnfSat => emit_dimacs(&enc.formula),
        OraclePredicate::DnfTautology => emit_dnf(&negate_to_dnf(&enc.formula)),
    };
    let answer = oracle
        .answer(&text)
        .expect("the harness only emits well-formed queries");
    let accepted = match oracle {
        OraclePredicate::CnfSat => answer,
        OraclePredicate::DnfTautology => !answer,
    };
    Ok(QueryTranscript {
        input: enc.machine.render_tape(input),
        input_len: input.len(),
        t_bound,
        control_steps: 3,
        oracle,
        queries: vec![Query { text, answer }],
        final_state: if accepted { FinalState::Yes } else { FinalState::No },
    })
}

/// Plain-text rendering of a transcript, stable across runs.
pub fn transcript_report(t: &QueryTranscript) -> String {
    let mut out = String::new();
    writeln!(out, "input: {}", t.input).unwrap();
    writeln!(out, "input-length: {}", t.input_len).unwrap();
    writeln!(out, "step-bound: {}", t.t_bound).unwrap();
    writeln!(out, "control-steps: {}", t.control_steps).unwrap();
    writeln!(out, "oracle (simulated): {}", t.oracle).unwrap();
    for (k, q) in t.queries.iter().enumerate() {
        writeln!(
            out,
            "query {}: {} bytes (step bound {}, input length {})",
            k + 1,
            q.text.len(),
            t.t_bound,
            t.input_len
        )
        .unwrap();
        writeln!(out, "answer {}: {}", k + 1, if q.answer { "yes" } else { "no" })
            .unwrap();
    }
    writeln!(out, "final: {}", t.final_state).unwrap();
    out
}
