//! Propositional formulas in clausal form.
//!
//! CNF is the working representation everywhere in this crate; DNF exists so
//! that negations of CNF formulas can be written down exactly (De Morgan) and
//! checked for tautology. Variables are positive integer ids starting at 1,
//! literals carry the id plus a sign, and both formula kinds remember how many
//! variables they range over so serialization and evaluation agree on the
//! universe.

mod dimacs;

pub use dimacs::{emit_dimacs, emit_dnf, parse_dimacs, parse_dnf, DimacsError};

use thiserror::Error;

/// A signed variable. Stored DIMACS style: the magnitude is the variable id
/// (always >= 1), the sign says whether the variable appears negated.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(i32);

impl Literal {
    /// Builds a literal from a nonzero DIMACS code.
    pub fn new(code: i32) -> Literal {
        assert!(code != 0, "literal code 0 is reserved as the clause terminator");
        Literal(code)
    }

    pub fn positive(var: u32) -> Literal {
        Literal::new(var as i32)
    }

    pub fn negative(var: u32) -> Literal {
        Literal::new(-(var as i32))
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn code(self) -> i32 {
        self.0
    }

    /// The same variable with the opposite sign.
    pub fn negated(self) -> Literal {
        Literal(-self.0)
    }

    fn satisfied_by(self, value: bool) -> bool {
        self.is_positive() == value
    }
}

impl std::fmt::Debug for Literal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for Literal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Clause = Vec<Literal>;

/// Drops exact duplicate literals, keeping first occurrences in order.
/// A variable appearing with both signs is kept: such a clause is a
/// tautology, not an error.
fn dedup_clause(mut clause: Clause) -> Clause {
    let mut seen_at = 0;
    let mut out: Clause = Vec::with_capacity(clause.len());
    for lit in clause.drain(..) {
        if !out[..seen_at].contains(&lit) {
            out.push(lit);
            seen_at += 1;
        }
    }
    out
}

/// A conjunction of disjunctions over variables `1..=num_vars`.
#[derive(Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

/// A disjunction of conjunctions over variables `1..=num_vars`.
#[derive(Clone, PartialEq, Eq)]
pub struct DnfFormula {
    num_vars: usize,
    terms: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> CnfFormula {
        let mut f = CnfFormula { num_vars, clauses: Vec::with_capacity(clauses.len()) };
        for c in clauses {
            f.push_clause(c);
        }
        f
    }

    pub fn empty(num_vars: usize) -> CnfFormula {
        CnfFormula { num_vars, clauses: Vec::new() }
    }

    /// Test helper style constructor taking raw DIMACS codes.
    pub fn from_ints(num_vars: usize, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula::new(
            num_vars,
            clauses.iter().map(|c| c.iter().map(|&l| Literal::new(l)).collect()).collect(),
        )
    }

    pub fn push_clause(&mut self, clause: Clause) {
        let clause = dedup_clause(clause);
        for lit in &clause {
            assert!(
                lit.var() as usize <= self.num_vars,
                "literal {} out of range for {} variables",
                lit,
                self.num_vars
            );
        }
        self.clauses.push(clause);
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Total number of literal occurrences across all clauses.
    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(|c| c.len()).sum()
    }
}

impl DnfFormula {
    pub fn new(num_vars: usize, terms: Vec<Clause>) -> DnfFormula {
        let mut f = DnfFormula { num_vars, terms: Vec::with_capacity(terms.len()) };
        for t in terms {
            f.push_term(t);
        }
        f
    }

    pub fn from_ints(num_vars: usize, terms: &[&[i32]]) -> DnfFormula {
        DnfFormula::new(
            num_vars,
            terms.iter().map(|t| t.iter().map(|&l| Literal::new(l)).collect()).collect(),
        )
    }

    pub fn push_term(&mut self, term: Clause) {
        let term = dedup_clause(term);
        for lit in &term {
            assert!(
                lit.var() as usize <= self.num_vars,
                "literal {} out of range for {} variables",
                lit,
                self.num_vars
            );
        }
        self.terms.push(term);
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[Clause] {
        &self.terms
    }
}

impl std::fmt::Debug for CnfFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "cnf({} vars) {:?}", self.num_vars, self.clauses)
    }
}

impl std::fmt::Debug for DnfFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "dnf({} vars) {:?}", self.num_vars, self.terms)
    }
}

/// A total valuation of variables `1..=len`. Index 0 of the backing vector
/// holds variable 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    /// Variable `i` takes bit `i - 1` of `bits`. Useful for walking all
    /// assignments in lexicographic order with variable 1 least significant.
    pub fn from_bits(num_vars: usize, bits: u64) -> Assignment {
        Assignment { values: (0..num_vars).map(|i| bits >> i & 1 == 1).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, var: u32) -> bool {
        self.values[var as usize - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("IncompleteAssignment: formula ranges over {expected} variables, assignment covers {got}")]
    IncompleteAssignment { expected: usize, got: usize },
}

/// True iff every clause contains at least one satisfied literal. An empty
/// clause is false, a formula with no clauses is true.
pub fn eval_cnf(f: &CnfFormula, a: &Assignment) -> Result<bool, EvalError> {
    if a.len() < f.num_vars {
        return Err(EvalError::IncompleteAssignment { expected: f.num_vars, got: a.len() });
    }
    Ok(f.clauses.iter().all(|c| c.iter().any(|lit| lit.satisfied_by(a.get(lit.var())))))
}

/// True iff some term has every literal satisfied. An empty term is true, a
/// formula with no terms is false.
pub fn eval_dnf(d: &DnfFormula, a: &Assignment) -> Result<bool, EvalError> {
    if a.len() < d.num_vars {
        return Err(EvalError::IncompleteAssignment { expected: d.num_vars, got: a.len() });
    }
    Ok(d.terms.iter().any(|t| t.iter().all(|lit| lit.satisfied_by(a.get(lit.var())))))
}

/// De Morgan: the negation of a CNF, written as a DNF. Each clause flips into
/// a term with every literal negated, in place.
pub fn negate_to_dnf(f: &CnfFormula) -> DnfFormula {
    DnfFormula {
        num_vars: f.num_vars,
        terms: f.clauses.iter().map(|c| c.iter().map(|l| l.negated()).collect()).collect(),
    }
}

/// De Morgan in the other direction: the negation of a DNF, as a CNF.
pub fn negate_to_cnf(d: &DnfFormula) -> CnfFormula {
    CnfFormula {
        num_vars: d.num_vars,
        clauses: d.terms.iter().map(|t| t.iter().map(|l| l.negated()).collect()).collect(),
    }
}

/// Number of variables up to which tautology checking enumerates assignments
/// outright instead of running the search solver.
const TAUTOLOGY_BRUTE_FORCE_CAP: usize = 20;

/// True iff every assignment satisfies some term. Decided by unsatisfiability
/// of the De Morgan dual: small universes go through exhaustive enumeration,
/// larger ones through the search solver. Both routes are exact.
pub fn dnf_is_tautology(d: &DnfFormula) -> bool {
    let dual = negate_to_cnf(d);
    let result = if dual.num_vars() <= TAUTOLOGY_BRUTE_FORCE_CAP {
        crate::solver::brute_force_sat(&dual).expect("under the exhaustive cap")
    } else {
        crate::solver::dpll(&dual)
    };
    result.verdict == crate::solver::SatVerdict::Unsat
}
