//! Satisfiability decision procedures.
//!
//! Two engines with the same verdict contract: an exhaustive checker for
//! small formulas (the reference point everything else is measured against)
//! and a backtracking search with unit propagation for real work. Both are
//! fully deterministic, including their search statistics, so repeated runs
//! are byte-for-byte comparable.

mod dpll;

pub use dpll::dpll;

use crate::cnf::{eval_cnf, Assignment, CnfFormula, Literal};
use thiserror::Error;

/// Hard cap for `brute_force_sat`; 2^24 evaluations is where exhaustive
/// checking stops being a reasonable oracle.
pub const BRUTE_FORCE_VAR_CAP: usize = 24;

/// Cap on projection width for model enumeration, bounding the number of
/// blocking clauses at 2^20.
pub const PROJECTION_VAR_CAP: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SatVerdict {
    Sat,
    Unsat,
}

/// Deterministic search counters. `decisions` counts assignments made by
/// branching (including the forced second value after a conflict),
/// `propagations` counts assignments forced by unit clauses, and `visited`
/// counts search leaves: for the exhaustive engine the assignments evaluated,
/// for the search engine the conflicts plus the satisfying leaf.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SearchStats {
    pub decisions: u64,
    pub propagations: u64,
    pub visited: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SatResult {
    pub verdict: SatVerdict,
    /// Present iff the verdict is `Sat`; always a total assignment.
    pub model: Option<Assignment>,
    pub stats: SearchStats,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("TooManyVariables: {got} variables exceeds the {cap}-variable exhaustive cap")]
    TooManyVariables { got: usize, cap: usize },
    #[error("ProjectionTooLarge: {got} projection variables exceeds the cap of {cap}")]
    ProjectionTooLarge { got: usize, cap: usize },
}

/// Tries every assignment in lexicographic order (variable 1 is the least
/// significant bit, false before true) and returns the first model found.
pub fn brute_force_sat(f: &CnfFormula) -> Result<SatResult, SolverError> {
    let n = f.num_vars();
    if n > BRUTE_FORCE_VAR_CAP {
        return Err(SolverError::TooManyVariables { got: n, cap: BRUTE_FORCE_VAR_CAP });
    }
    let mut stats = SearchStats::default();
    for bits in 0..1u64 << n {
        let a = Assignment::from_bits(n, bits);
        stats.visited += 1;
        if eval_cnf(f, &a).expect("assignment is total by construction") {
            return Ok(SatResult { verdict: SatVerdict::Sat, model: Some(a), stats });
        }
    }
    Ok(SatResult { verdict: SatVerdict::Unsat, model: None, stats })
}

/// One enumerated model restricted to the projection set, sorted by variable.
pub type ProjectedModel = Vec<(u32, bool)>;

/// All models of `f`, projected onto `projection` and deduplicated. Iterates
/// the search engine, blocking each projection found; the result is sorted so
/// it reads as a set. Projection variables must exist in the formula.
pub fn all_models_projected(
    f: &CnfFormula,
    projection: &[u32],
) -> Result<Vec<ProjectedModel>, SolverError> {
    let mut proj: Vec<u32> = projection.to_vec();
    proj.sort_unstable();
    proj.dedup();
    if proj.len() > PROJECTION_VAR_CAP {
        return Err(SolverError::ProjectionTooLarge { got: proj.len(), cap: PROJECTION_VAR_CAP });
    }
    let mut work = f.clone();
    let mut found: Vec<ProjectedModel> = Vec::new();
    loop {
        let result = dpll(&work);
        let model = match result.model {
            Some(m) => m,
            None => break,
        };
        let restricted: ProjectedModel = proj.iter().map(|&v| (v, model.get(v))).collect();
        // Block exactly this projection; on an empty projection the blocking
        // clause is empty and the next round terminates the loop.
        work.push_clause(
            restricted
                .iter()
                .map(|&(v, value)| if value { Literal::negative(v) } else { Literal::positive(v) })
                .collect(),
        );
        found.push(restricted);
    }
    found.sort_unstable();
    Ok(found)
}
