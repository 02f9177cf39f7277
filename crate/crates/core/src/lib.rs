//! Compile bounded Turing-machine runs into CNF tableaux and check the
//! reduction end to end.
//!
//! The pipeline: [`machine`] models and simulates bounded machines,
//! [`tableau`] compiles a run into a CNF formula whose models are exactly
//! the accepting computations, [`solver`] decides satisfiability two
//! independent ways, and [`cnf`] carries the formula types and DIMACS
//! documents between them. [`oracle`] wraps the whole reduction in a
//! query-machine harness, and [`cli`] exposes everything as the `tmsat`
//! binary.
//!
//! The load-bearing property, exercised throughout the test suite: for any
//! machine, input, and bound, the tableau is satisfiable exactly when the
//! direct simulation accepts, and satisfying assignments decode back into
//! valid accepting runs.

pub mod cli;
pub mod cnf;
pub mod machine;
pub mod oracle;
pub mod solver;
pub mod tableau;
