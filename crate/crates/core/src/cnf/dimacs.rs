//! DIMACS serialization.
//!
//! CNF documents use the standard header `p cnf <vars> <clauses>` with
//! 0-terminated clauses. DNF documents reuse the same grammar under a
//! `p dnf` header; that header is nonstandard but keeps negated formulas
//! printable and parseable with the same machinery. Comment lines starting
//! with `c` are accepted anywhere before the final clause and are not
//! preserved by parsing.

use super::{Clause, CnfFormula, DnfFormula, Literal};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("BadHeader: line {line}: {reason}")]
    BadHeader { line: usize, reason: String },
    #[error("BadLiteral: line {line}: expected an integer, found `{token}`")]
    BadLiteral { line: usize, token: String },
    #[error("LiteralOutOfRange: line {line}: literal {literal} exceeds the declared {num_vars} variables")]
    LiteralOutOfRange { line: usize, literal: i64, num_vars: usize },
    #[error("MissingTerminator: last clause is not closed with 0")]
    MissingTerminator,
}

fn emit(kind: &str, num_vars: usize, clauses: &[Clause]) -> String {
    let mut out = format!("p {} {} {}\n", kind, num_vars, clauses.len());
    for clause in clauses {
        for lit in clause {
            out.push_str(&lit.code().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

pub fn emit_dimacs(f: &CnfFormula) -> String {
    emit("cnf", f.num_vars(), f.clauses())
}

pub fn emit_dnf(d: &DnfFormula) -> String {
    emit("dnf", d.num_vars(), d.terms())
}

struct Parsed {
    num_vars: usize,
    clauses: Vec<Clause>,
}

fn parse(kind: &str, text: &str) -> Result<Parsed, DimacsError> {
    let mut header: Option<(usize, usize, usize)> = None; // line, vars, clauses
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let mut open = false; // a literal has been read since the last terminator

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if header.is_none() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |reason: String| DimacsError::BadHeader { line: line_no, reason };
            if fields.first() != Some(&"p") {
                return Err(bad(format!("expected `p {kind} <vars> <clauses>`, found `{line}`")));
            }
            if fields.get(1) != Some(&kind) {
                return Err(bad(format!(
                    "expected formula kind `{kind}`, found `{}`",
                    fields.get(1).unwrap_or(&"")
                )));
            }
            if fields.len() != 4 {
                return Err(bad("header needs exactly four fields".to_string()));
            }
            let num_vars: usize = fields[2]
                .parse()
                .map_err(|_| bad(format!("bad variable count `{}`", fields[2])))?;
            let num_clauses: usize = fields[3]
                .parse()
                .map_err(|_| bad(format!("bad clause count `{}`", fields[3])))?;
            if num_vars > i32::MAX as usize {
                return Err(bad(format!("{num_vars} variables cannot be encoded as literals")));
            }
            header = Some((line_no, num_vars, num_clauses));
            continue;
        }
        let (_, num_vars, _) = header.unwrap();
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::BadLiteral {
                line: line_no,
                token: token.to_string(),
            })?;
            if value == 0 {
                clauses.push(std::mem::take(&mut current));
                open = false;
                continue;
            }
            if value.unsigned_abs() > num_vars as u64 {
                return Err(DimacsError::LiteralOutOfRange {
                    line: line_no,
                    literal: value,
                    num_vars,
                });
            }
            current.push(Literal::new(value as i32));
            open = true;
        }
    }

    let (header_line, num_vars, num_clauses) = header.ok_or(DimacsError::BadHeader {
        line: text.lines().count() + 1,
        reason: "no header line found".to_string(),
    })?;
    if open {
        return Err(DimacsError::MissingTerminator);
    }
    if clauses.len() != num_clauses {
        return Err(DimacsError::BadHeader {
            line: header_line,
            reason: format!("header declares {num_clauses} clauses, document has {}", clauses.len()),
        });
    }
    Ok(Parsed { num_vars, clauses })
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let p = parse("cnf", text)?;
    Ok(CnfFormula::new(p.num_vars, p.clauses))
}

pub fn parse_dnf(text: &str) -> Result<DnfFormula, DimacsError> {
    let p = parse("dnf", text)?;
    Ok(DnfFormula::new(p.num_vars, p.clauses))
}
