//! Machine file format.
//!
//! Line oriented. `#` starts a comment anywhere on a line, blank lines are
//! skipped, and the remaining lines each start with one of five directives:
//!
//! ```text
//! alphabet: _ 1        # symbol names; the first one is the blank
//! states: q0 q1        # state names; the first one is the initial state
//! initial: q0          # must repeat the first declared state
//! accept: q1           # one or more accepting states
//! delta: q0 1 -> q1 1 R
//! ```
//!
//! The four scalar sections may appear in any order and exactly once each.
//! `delta` lines may repeat; listing two rules for the same (state, symbol)
//! pair is how nondeterminism is written down.

use super::{MachineSpec, Move, TransitionRule};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineParseError {
    #[error("UnknownState: line {line}: `{token}` is not a declared state")]
    UnknownState { line: usize, token: String },
    #[error("UnknownSymbol: line {line}: `{token}` is not a declared symbol")]
    UnknownSymbol { line: usize, token: String },
    #[error("MissingSection: no `{section}` line in the document")]
    MissingSection { section: &'static str },
    #[error("DuplicateSection: line {line}: `{section}` was already declared")]
    DuplicateSection { line: usize, section: String },
    #[error("BadMoveLetter: line {line}: `{token}` is not one of L, R, S")]
    BadMoveLetter { line: usize, token: String },
    #[error("BadLine: line {line}: {reason}")]
    BadLine { line: usize, reason: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("UnknownSymbol: input column {position}: no symbol name starts `{rest}`")]
    UnknownSymbol { position: usize, rest: String },
}

fn lookup(names: &[String], token: &str) -> Option<usize> {
    names.iter().position(|n| n == token)
}

pub fn parse_machine(text: &str) -> Result<MachineSpec, MachineParseError> {
    use MachineParseError::*;

    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut initial: Option<(usize, String)> = None;
    let mut accept: Option<(usize, Vec<String>)> = None;
    let mut deltas: Vec<(usize, Vec<String>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace().map(str::to_string);
        let Some(keyword) = tokens.next() else { continue };
        let rest: Vec<String> = tokens.collect();
        let place = |slot: &mut Option<(usize, Vec<String>)>, name: &str| {
            if slot.is_some() {
                return Err(DuplicateSection { line, section: name.to_string() });
            }
            *slot = Some((line, rest.clone()));
            Ok(())
        };
        match keyword.as_str() {
            "alphabet:" => place(&mut alphabet, "alphabet")?,
            "states:" => place(&mut states, "states")?,
            "accept:" => place(&mut accept, "accept")?,
            "initial:" => {
                if initial.is_some() {
                    return Err(DuplicateSection { line, section: "initial".to_string() });
                }
                if rest.len() != 1 {
                    return Err(BadLine {
                        line,
                        reason: "initial: takes exactly one state name".to_string(),
                    });
                }
                initial = Some((line, rest[0].clone()));
            }
            "delta:" => deltas.push((line, rest)),
            other => {
                return Err(BadLine { line, reason: format!("unrecognized directive `{other}`") })
            }
        }
    }

    let (alpha_line, symbols) = alphabet.ok_or(MissingSection { section: "alphabet" })?;
    let (state_line, state_names) = states.ok_or(MissingSection { section: "states" })?;
    let (initial_line, initial_name) = initial.ok_or(MissingSection { section: "initial" })?;
    let (accept_line, accept_names) = accept.ok_or(MissingSection { section: "accept" })?;

    if symbols.is_empty() {
        return Err(BadLine { line: alpha_line, reason: "alphabet: needs at least the blank".into() });
    }
    if state_names.is_empty() {
        return Err(BadLine { line: state_line, reason: "states: needs at least one state".into() });
    }
    if accept_names.is_empty() {
        return Err(BadLine { line: accept_line, reason: "accept: needs at least one state".into() });
    }
    for (i, s) in symbols.iter().enumerate() {
        if symbols[..i].contains(s) {
            return Err(BadLine { line: alpha_line, reason: format!("symbol `{s}` declared twice") });
        }
    }
    for (i, s) in state_names.iter().enumerate() {
        if state_names[..i].contains(s) {
            return Err(BadLine { line: state_line, reason: format!("state `{s}` declared twice") });
        }
    }

    match lookup(&state_names, &initial_name) {
        None => return Err(UnknownState { line: initial_line, token: initial_name }),
        // Index 0 is reserved for the initial state everywhere downstream.
        Some(0) => {}
        Some(_) => {
            return Err(BadLine {
                line: initial_line,
                reason: format!("initial state `{initial_name}` must be declared first in states:"),
            })
        }
    }

    let mut accept_ids = Vec::with_capacity(accept_names.len());
    for name in &accept_names {
        match lookup(&state_names, name) {
            Some(i) => accept_ids.push(i),
            None => return Err(UnknownState { line: accept_line, token: name.clone() }),
        }
    }
    accept_ids.sort_unstable();
    accept_ids.dedup();

    let mut rules = Vec::with_capacity(deltas.len());
    for (line, tokens) in deltas {
        let [from, read, arrow, to, write, movement] = &tokens[..] else {
            return Err(BadLine {
                line,
                reason: "delta: takes `state symbol -> state symbol move`".to_string(),
            });
        };
        if arrow != "->" {
            return Err(BadLine { line, reason: format!("expected `->`, found `{arrow}`") });
        }
        let from_state =
            lookup(&state_names, from).ok_or_else(|| UnknownState { line, token: from.clone() })?;
        let to_state =
            lookup(&state_names, to).ok_or_else(|| UnknownState { line, token: to.clone() })?;
        let read_sym =
            lookup(&symbols, read).ok_or_else(|| UnknownSymbol { line, token: read.clone() })?;
        let write_sym =
            lookup(&symbols, write).ok_or_else(|| UnknownSymbol { line, token: write.clone() })?;
        let movement = match movement.as_str() {
            "L" => Move::Left,
            "R" => Move::Right,
            "S" => Move::Stay,
            other => return Err(BadMoveLetter { line, token: other.to_string() }),
        };
        rules.push(TransitionRule {
            from_state,
            read: read_sym,
            to_state,
            write: write_sym,
            movement,
        });
    }

    Ok(MachineSpec { symbols, states: state_names, accept: accept_ids, rules })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = concat!(
        "alphabet: _ 1        # first symbol is the blank\n",
        "states: q0 q1\n",
        "initial: q0\n",
        "accept: q1\n",
        "delta: q0 1 -> q1 1 R\n",
        "delta: q0 _ -> q0 _ S\n",
        "delta: q1 1 -> q1 1 S   # accepts iff square 1 holds \"1\"\n",
    );

    #[test]
    fn parses_the_fixture_document() {
        let m = parse_machine(FIXTURE).unwrap();
        assert_eq!(m.symbol_count(), 2);
        assert_eq!(m.state_count(), 2);
        assert_eq!(m.symbols, vec!["_", "1"]);
        assert_eq!(m.accept, vec![1]);
        assert_eq!(m.rules.len(), 3);
        assert_eq!(
            m.rules[0],
            TransitionRule { from_state: 0, read: 1, to_state: 1, write: 1, movement: Move::Right }
        );
        assert!(m.is_deterministic());
    }

    #[test]
    fn sections_may_come_in_any_order() {
        let doc = "delta: q0 _ -> q0 _ S\naccept: q0\ninitial: q0\nstates: q0\nalphabet: _\n";
        assert!(parse_machine(doc).is_ok());
    }

    #[test]
    fn rejects_rules_over_undeclared_names() {
        let doc = "alphabet: _\nstates: q0\ninitial: q0\naccept: q0\ndelta: q0 _ -> q9 _ S\n";
        assert_eq!(
            parse_machine(doc).unwrap_err(),
            MachineParseError::UnknownState { line: 5, token: "q9".to_string() }
        );
        let doc = "alphabet: _\nstates: q0\ninitial: q0\naccept: q0\ndelta: q0 8 -> q0 _ S\n";
        assert_eq!(
            parse_machine(doc).unwrap_err(),
            MachineParseError::UnknownSymbol { line: 5, token: "8".to_string() }
        );
    }

    #[test]
    fn rejects_missing_and_duplicated_sections() {
        assert_eq!(
            parse_machine("alphabet: _\nstates: q0\naccept: q0\n").unwrap_err(),
            MachineParseError::MissingSection { section: "initial" }
        );
        let doc = "alphabet: _\nalphabet: _ 1\nstates: q0\ninitial: q0\naccept: q0\n";
        assert_eq!(
            parse_machine(doc).unwrap_err(),
            MachineParseError::DuplicateSection { line: 2, section: "alphabet".to_string() }
        );
    }

    #[test]
    fn rejects_bad_move_letters() {
        let doc = "alphabet: _\nstates: q0\ninitial: q0\naccept: q0\ndelta: q0 _ -> q0 _ X\n";
        assert_eq!(
            parse_machine(doc).unwrap_err(),
            MachineParseError::BadMoveLetter { line: 5, token: "X".to_string() }
        );
    }

    #[test]
    fn rejects_malformed_delta_lines() {
        let doc = "alphabet: _\nstates: q0\ninitial: q0\naccept: q0\ndelta: q0 _ q0 _ S\n";
        assert!(matches!(
            parse_machine(doc).unwrap_err(),
            MachineParseError::BadLine { line: 5, .. }
        ));
    }

    #[test]
    fn initial_state_must_be_declared_first() {
        let doc = "alphabet: _\nstates: q0 q1\ninitial: q1\naccept: q0\n";
        assert!(matches!(
            parse_machine(doc).unwrap_err(),
            MachineParseError::BadLine { line: 3, .. }
        ));
    }

    #[test]
    fn accept_set_is_sorted_and_deduplicated() {
        let doc = "alphabet: _\nstates: q0 q1 q2\ninitial: q0\naccept: q2 q1 q2\n";
        assert_eq!(parse_machine(doc).unwrap().accept, vec![1, 2]);
    }

    #[test]
    fn duplicate_delta_pairs_read_as_nondeterminism() {
        let doc = concat!(
            "alphabet: _\nstates: q0 q1\ninitial: q0\naccept: q1\n",
            "delta: q0 _ -> q0 _ S\n",
            "delta: q0 _ -> q1 _ S\n",
        );
        let m = parse_machine(doc).unwrap();
        assert!(!m.is_deterministic());
        assert_eq!(m.first_nondeterministic_pair(), Some((0, 0, 2)));
    }

    #[test]
    fn comment_only_and_blank_lines_are_ignored() {
        let doc = "# leading note\n\nalphabet: _\n# between\nstates: q0\ninitial: q0\naccept: q0\n";
        assert!(parse_machine(doc).is_ok());
    }
}
