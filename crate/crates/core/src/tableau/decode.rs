//! Reading a run back out of a satisfying assignment.

use super::Encoding;
use crate::cnf::Assignment;
use crate::machine::{Configuration, Trace};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    /// The assignment does not describe one configuration per step. Never
    /// produced by models of an [`encode`](super::encode) output; this is
    /// the answer to hand-built or truncated assignments.
    #[error("MalformedModel: {0}")]
    MalformedModel(String),
}

fn single(
    mut found: impl Iterator<Item = usize>,
    what: &str,
    t: usize,
) -> Result<usize, DecodeError> {
    match (found.next(), found.next()) {
        (Some(only), None) => Ok(only),
        (None, _) => Err(DecodeError::MalformedModel(format!(
            "step {t}: no {what} is set"
        ))),
        (Some(_), Some(_)) => Err(DecodeError::MalformedModel(format!(
            "step {t}: more than one {what} is set"
        ))),
    }
}

/// Extracts the tableau rows of `model` as a trace of `t_bound`
/// configurations. Selector variables, when present, are ignored: the rows
/// alone carry the run.
pub fn decode_model(enc: &Encoding, model: &Assignment) -> Result<Trace, DecodeError> {
    let layout = &enc.layout;
    if model.len() < layout.num_vars() {
        return Err(DecodeError::MalformedModel(format!(
            "model assigns {} variables but the layout has {}",
            model.len(),
            layout.num_vars()
        )));
    }
    let t_bound = layout.t_bound();
    let machine = &enc.machine;
    let mut configs = Vec::with_capacity(t_bound);
    for t in 1..=t_bound {
        let head = single(
            (1..=t_bound).filter(|&s| model.get(layout.scan_var(s, t))),
            "head square",
            t,
        )?;
        let state = single(
            (0..machine.state_count()).filter(|&q| model.get(layout.state_var(q, t))),
            "state",
            t,
        )?;
        let mut tape = Vec::with_capacity(t_bound);
        for s in 1..=t_bound {
            tape.push(single(
                (0..machine.symbol_count())
                    .filter(|&j| model.get(layout.symbol_var(j, s, t))),
                &format!("symbol on square {s}"),
                t,
            )?);
        }
        configs.push(Configuration { state, head, tape, step: t });
    }
    Ok(Trace { configs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::tests::fixture;
    use crate::tableau::{encode, EncodeMode, Fidelity};

    #[test]
    fn short_assignment_is_rejected() {
        let enc =
            encode(&fixture(), &[1], 2, EncodeMode::full(Fidelity::Literal)).unwrap();
        let err = decode_model(&enc, &Assignment::new(vec![true; 3])).unwrap_err();
        let DecodeError::MalformedModel(msg) = err;
        assert!(msg.contains("3 variables"), "{msg}");
    }

    #[test]
    fn missing_state_is_reported_with_its_step() {
        let enc =
            encode(&fixture(), &[1], 2, EncodeMode::full(Fidelity::Literal)).unwrap();
        let mut values = vec![false; enc.formula.num_vars()];
        // Row 1 complete: head on 1, state q0, tape 1 then blank.
        values[0] = true;
        values[4] = true;
        values[9] = true;
        values[10] = true;
        // Row 2 has a head and a tape but no state bit at all.
        values[3] = true;
        values[13] = true;
        values[14] = true;
        let err = decode_model(&enc, &Assignment::new(values)).unwrap_err();
        let DecodeError::MalformedModel(msg) = err;
        assert_eq!(msg, "step 2: no state is set");
    }

    #[test]
    fn valid_model_round_trips_every_row() {
        let enc =
            encode(&fixture(), &[1], 2, EncodeMode::full(Fidelity::Literal)).unwrap();
        let model = crate::solver::dpll(&enc.formula).model.unwrap();
        let trace = decode_model(&enc, &model).unwrap();
        assert_eq!(trace.configs.len(), 2);
        assert_eq!(trace.configs[0].state, 0);
        assert_eq!(trace.configs[0].head, 1);
        assert_eq!(trace.configs[0].tape, vec![1, 0]);
        assert_eq!(trace.configs[1].state, 1);
        assert_eq!(trace.configs[1].head, 2);
        assert_eq!(trace.configs[1].step, 2);
    }
}
