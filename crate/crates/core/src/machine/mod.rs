//! Bounded Turing machine model and simulators.
//!
//! Machines run on a tape of exactly `t_bound` squares for exactly
//! `t_bound` steps, both numbered from 1. Symbol index 0 is always the
//! blank and state index 0 is always the initial state; the machine file
//! format in [`parse`] enforces both. A machine accepts as soon as any
//! reachable configuration is in an accepting state, including the initial
//! configuration itself at step 1.

mod parse;

pub use parse::{parse_machine, InputError, MachineParseError};

use std::collections::HashSet;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Move {
    Left,
    Right,
    Stay,
}

impl Move {
    pub fn letter(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Right => 'R',
            Move::Stay => 'S',
        }
    }
}

/// One transition: in `from_state` reading `read`, write `write`, move the
/// head, and enter `to_state`. All state and symbol fields are indices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TransitionRule {
    pub from_state: usize,
    pub read: usize,
    pub to_state: usize,
    pub write: usize,
    pub movement: Move,
}

/// A machine over named symbols and states. Rule order matters: it is the
/// tie-break order for nondeterministic search and the layout order for
/// encoding, so it is preserved exactly as declared.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MachineSpec {
    pub symbols: Vec<String>,
    pub states: Vec<String>,
    /// Accepting state indices, sorted and deduplicated, never empty.
    pub accept: Vec<usize>,
    pub rules: Vec<TransitionRule>,
}

impl MachineSpec {
    /// Alphabet size, blank included.
    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accept.binary_search(&state).is_ok()
    }

    /// A machine is deterministic when no (state, symbol) pair has two rules.
    pub fn is_deterministic(&self) -> bool {
        self.first_nondeterministic_pair().is_none()
    }

    /// The first (state, symbol) pair carrying more than one rule, with its
    /// rule count, scanning pairs in state-major order.
    pub fn first_nondeterministic_pair(&self) -> Option<(usize, usize, usize)> {
        for state in 0..self.state_count() {
            for symbol in 0..self.symbol_count() {
                let count = self
                    .rules
                    .iter()
                    .filter(|r| r.from_state == state && r.read == symbol)
                    .count();
                if count > 1 {
                    return Some((state, symbol, count));
                }
            }
        }
        None
    }

    pub fn render_tape(&self, tape: &[usize]) -> String {
        tape.iter().map(|&s| self.symbols[s].as_str()).collect()
    }

    /// Reads an input string as a sequence of symbol names, longest declared
    /// name first at every position.
    pub fn parse_input(&self, text: &str) -> Result<Vec<usize>, InputError> {
        let mut by_length: Vec<usize> = (0..self.symbols.len()).collect();
        by_length.sort_by_key(|&i| std::cmp::Reverse(self.symbols[i].len()));
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let hit = by_length.iter().find(|&&i| rest.starts_with(self.symbols[i].as_str()));
            match hit {
                Some(&i) => {
                    out.push(i);
                    rest = &rest[self.symbols[i].len()..];
                }
                None => {
                    return Err(InputError::UnknownSymbol {
                        position: text.len() - rest.len() + 1,
                        rest: rest.to_string(),
                    })
                }
            }
        }
        Ok(out)
    }
}

/// A full instantaneous description: tape contents for every square, head
/// position and step both counted from 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Configuration {
    pub state: usize,
    pub head: usize,
    pub tape: Vec<usize>,
    pub step: usize,
}

impl Configuration {
    pub fn t_bound(&self) -> usize {
        self.tape.len()
    }
}

/// A run prefix: configurations at consecutive steps starting from step 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace {
    pub configs: Vec<Configuration>,
}

impl Trace {
    /// Every consecutive pair is related by some rule of `m`.
    pub fn follows_rules(&self, m: &MachineSpec) -> bool {
        self.configs.windows(2).all(|w| successors(m, &w[0]).contains(&w[1]))
    }

    /// Starts in the initial state with the head on square 1 at step 1.
    pub fn starts_at_initial(&self) -> bool {
        self.configs
            .first()
            .is_some_and(|c| c.state == 0 && c.head == 1 && c.step == 1)
    }

    pub fn first_accepting_step(&self, m: &MachineSpec) -> Option<usize> {
        self.configs.iter().find(|c| m.is_accepting(c.state)).map(|c| c.step)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Accept { step: usize },
    NoAccept,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunOutcome {
    pub verdict: Verdict,
    /// Present iff accepting: the configurations up to and including the
    /// first accepting one.
    pub witness: Option<Trace>,
}

impl RunOutcome {
    pub fn accepted(&self) -> bool {
        matches!(self.verdict, Verdict::Accept { .. })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("NotDeterministic: state {state} reading {symbol} has {count} rules")]
    NotDeterministic { state: String, symbol: String, count: usize },
    #[error("LayoutOverflow: {needed} tape squares needed but only {available} fit in the bound")]
    LayoutOverflow { needed: usize, available: usize },
}

fn not_deterministic(m: &MachineSpec) -> Option<RunError> {
    m.first_nondeterministic_pair().map(|(state, symbol, count)| RunError::NotDeterministic {
        state: m.states[state].clone(),
        symbol: m.symbols[symbol].clone(),
        count,
    })
}

/// The input laid out from square 1, blanks after.
fn initial_tape(w: &[usize], t_bound: usize) -> Vec<usize> {
    let mut tape = vec![0; t_bound];
    tape[..w.len()].copy_from_slice(w);
    tape
}

/// All configurations one rule application away, in rule declaration order.
/// Moves off either end of the tape leave the head in place. A configuration
/// at the step bound has no successors.
pub fn successors(m: &MachineSpec, c: &Configuration) -> Vec<Configuration> {
    if c.step >= c.t_bound() {
        return Vec::new();
    }
    let scanned = c.tape[c.head - 1];
    m.rules
        .iter()
        .filter(|r| r.from_state == c.state && r.read == scanned)
        .map(|r| {
            let mut tape = c.tape.clone();
            tape[c.head - 1] = r.write;
            let head = match r.movement {
                Move::Left => (c.head - 1).max(1),
                Move::Right => (c.head + 1).min(c.t_bound()),
                Move::Stay => c.head,
            };
            Configuration { state: r.to_state, head, tape, step: c.step + 1 }
        })
        .collect()
}

fn run_from_tape(m: &MachineSpec, tape: Vec<usize>, t_bound: usize) -> RunOutcome {
    let mut trace =
        Trace { configs: vec![Configuration { state: 0, head: 1, tape, step: 1 }] };
    loop {
        let current = trace.configs.last().expect("trace never empty");
        if m.is_accepting(current.state) {
            let step = current.step;
            return RunOutcome { verdict: Verdict::Accept { step }, witness: Some(trace) };
        }
        if current.step >= t_bound {
            return RunOutcome { verdict: Verdict::NoAccept, witness: None };
        }
        match successors(m, current).into_iter().next() {
            // Dead configuration: a deterministic run cannot recover.
            None => return RunOutcome { verdict: Verdict::NoAccept, witness: None },
            Some(next) => trace.configs.push(next),
        }
    }
}

/// Runs a deterministic machine for at most `t_bound` steps.
pub fn run_deterministic(
    m: &MachineSpec,
    w: &[usize],
    t_bound: usize,
) -> Result<RunOutcome, RunError> {
    if let Some(err) = not_deterministic(m) {
        return Err(err);
    }
    if w.len() > t_bound {
        return Err(RunError::LayoutOverflow { needed: w.len(), available: t_bound });
    }
    Ok(run_from_tape(m, initial_tape(w, t_bound), t_bound))
}

/// Exhaustive breadth-first search of the configuration graph. Accepts iff
/// any branch reaches an accepting state within the bound; the witness is
/// the first accepting path in search order, rules expanding in declaration
/// order, so the result is deterministic even for nondeterministic machines.
pub fn accepts_nondet(m: &MachineSpec, w: &[usize], t_bound: usize) -> Result<RunOutcome, RunError> {
    if w.len() > t_bound {
        return Err(RunError::LayoutOverflow { needed: w.len(), available: t_bound });
    }
    let initial = Configuration { state: 0, head: 1, tape: initial_tape(w, t_bound), step: 1 };
    let mut seen: HashSet<Configuration> = HashSet::new();
    seen.insert(initial.clone());
    // Arena of (configuration, parent index) so the witness can be rebuilt.
    let mut arena: Vec<(Configuration, Option<usize>)> = vec![(initial, None)];
    let mut next = 0;
    while next < arena.len() {
        if m.is_accepting(arena[next].0.state) {
            let mut path = Vec::new();
            let mut at = Some(next);
            while let Some(i) = at {
                path.push(arena[i].0.clone());
                at = arena[i].1;
            }
            path.reverse();
            let step = arena[next].0.step;
            return Ok(RunOutcome {
                verdict: Verdict::Accept { step },
                witness: Some(Trace { configs: path }),
            });
        }
        for succ in successors(m, &arena[next].0) {
            if seen.insert(succ.clone()) {
                arena.push((succ, Some(next)));
            }
        }
        next += 1;
    }
    Ok(RunOutcome { verdict: Verdict::NoAccept, witness: None })
}

/// Runs a deterministic verifier on `w`, a blank separator, and a candidate
/// certificate, all laid out from square 1.
pub fn guess_and_check(
    m: &MachineSpec,
    w: &[usize],
    cert: &[usize],
    t_bound: usize,
) -> Result<RunOutcome, RunError> {
    if let Some(err) = not_deterministic(m) {
        return Err(err);
    }
    let needed = w.len() + 1 + cert.len();
    if needed > t_bound {
        return Err(RunError::LayoutOverflow { needed, available: t_bound });
    }
    let mut tape = vec![0; t_bound];
    tape[..w.len()].copy_from_slice(w);
    tape[w.len() + 1..w.len() + 1 + cert.len()].copy_from_slice(cert);
    Ok(run_from_tape(m, tape, t_bound))
}

/// Every certificate of the given length the verifier accepts, in
/// lexicographic symbol-index order.
pub fn enumerate_certificates(
    m: &MachineSpec,
    w: &[usize],
    cert_len: usize,
    t_bound: usize,
) -> Result<Vec<Vec<usize>>, RunError> {
    let mut accepted = Vec::new();
    let mut cert = vec![0; cert_len];
    loop {
        if guess_and_check(m, w, &cert, t_bound)?.accepted() {
            accepted.push(cert.clone());
        }
        // Odometer increment over symbol indices, most significant first.
        let mut pos = cert_len;
        loop {
            if pos == 0 {
                return Ok(accepted);
            }
            pos -= 1;
            cert[pos] += 1;
            if cert[pos] < m.symbol_count() {
                break;
            }
            cert[pos] = 0;
        }
    }
}

/// Appends a stay-put self loop for every (accepting state, symbol) pair
/// that has no rule, so accepting branches can always be extended to the
/// full step bound. Original rules are untouched; the result is idempotent
/// and never changes any verdict.
pub fn normalize_machine(m: &MachineSpec) -> MachineSpec {
    let mut out = m.clone();
    for &state in &m.accept {
        for symbol in 0..m.symbol_count() {
            let covered = m.rules.iter().any(|r| r.from_state == state && r.read == symbol);
            if !covered {
                out.rules.push(TransitionRule {
                    from_state: state,
                    read: symbol,
                    to_state: state,
                    write: symbol,
                    movement: Move::Stay,
                });
            }
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn fixture() -> MachineSpec {
        parse_machine(concat!(
            "alphabet: _ 1\n",
            "states: q0 q1\n",
            "initial: q0\n",
            "accept: q1\n",
            "delta: q0 1 -> q1 1 R\n",
            "delta: q0 _ -> q0 _ S\n",
            "delta: q1 1 -> q1 1 S\n",
        ))
        .unwrap()
    }

    /// Verifier used by the guess-and-check tests: skips the input, crosses
    /// the separator, accepts iff the first certificate square holds 1.
    pub(crate) fn verifier() -> MachineSpec {
        parse_machine(concat!(
            "alphabet: _ 1\n",
            "states: q0 q1 qy qn\n",
            "initial: q0\n",
            "accept: qy\n",
            "delta: q0 1 -> q0 1 R\n",
            "delta: q0 _ -> q1 _ R\n",
            "delta: q1 1 -> qy 1 S\n",
            "delta: q1 _ -> qn _ S\n",
            "delta: qn 1 -> qn 1 S\n",
            "delta: qn _ -> qn _ S\n",
        ))
        .unwrap()
    }

    fn two_branch() -> MachineSpec {
        // Two rules from (q0, 1); only the second one leads anywhere good.
        parse_machine(concat!(
            "alphabet: _ 1\n",
            "states: q0 qd qy\n",
            "initial: q0\n",
            "accept: qy\n",
            "delta: q0 1 -> qd 1 S\n",
            "delta: q0 1 -> qy 1 S\n",
            "delta: q0 _ -> q0 _ S\n",
            "delta: qd 1 -> qd 1 S\n",
            "delta: qd _ -> qd _ S\n",
        ))
        .unwrap()
    }

    #[test]
    fn successor_of_the_fixture_start() {
        let m = fixture();
        let c = Configuration { state: 0, head: 1, tape: vec![1, 0], step: 1 };
        let succ = successors(&m, &c);
        assert_eq!(succ, vec![Configuration { state: 1, head: 2, tape: vec![1, 0], step: 2 }]);
    }

    #[test]
    fn successors_follow_rule_declaration_order() {
        let m = two_branch();
        let c = Configuration { state: 0, head: 1, tape: vec![1, 0], step: 1 };
        let succ = successors(&m, &c);
        assert_eq!(succ.len(), 2);
        assert_eq!(succ[0].state, 1); // qd from the first rule
        assert_eq!(succ[1].state, 2); // qy from the second
    }

    #[test]
    fn dead_configurations_and_the_step_bound_have_no_successors() {
        let m = fixture();
        let dead = Configuration { state: 1, head: 1, tape: vec![0, 0], step: 1 };
        assert!(successors(&m, &dead).is_empty());
        let at_bound = Configuration { state: 0, head: 1, tape: vec![1, 0], step: 2 };
        assert!(successors(&m, &at_bound).is_empty());
    }

    #[test]
    fn head_clamps_at_both_tape_ends() {
        let m = parse_machine(concat!(
            "alphabet: _\n",
            "states: q0 qy\n",
            "initial: q0\n",
            "accept: qy\n",
            "delta: q0 _ -> q0 _ L\n",
        ))
        .unwrap();
        let c = Configuration { state: 0, head: 1, tape: vec![0, 0], step: 1 };
        assert_eq!(successors(&m, &c)[0].head, 1);
        let m_right = parse_machine(concat!(
            "alphabet: _\n",
            "states: q0 qy\n",
            "initial: q0\n",
            "accept: qy\n",
            "delta: q0 _ -> q0 _ R\n",
        ))
        .unwrap();
        let c = Configuration { state: 0, head: 2, tape: vec![0, 0], step: 1 };
        assert_eq!(successors(&m_right, &c)[0].head, 2);
    }

    #[test]
    fn fixture_accepts_a_one_at_step_two() {
        let m = fixture();
        let out = run_deterministic(&m, &[1], 2).unwrap();
        assert_eq!(out.verdict, Verdict::Accept { step: 2 });
        let trace = out.witness.unwrap();
        assert_eq!(trace.configs.len(), 2);
        assert!(trace.starts_at_initial());
        assert!(trace.follows_rules(&m));
        assert_eq!(trace.configs[1].state, 1);
        assert_eq!(trace.configs[1].head, 2);
    }

    #[test]
    fn fixture_rejects_the_blank_tape() {
        let out = run_deterministic(&fixture(), &[], 4).unwrap();
        assert_eq!(out.verdict, Verdict::NoAccept);
        assert!(out.witness.is_none());
    }

    #[test]
    fn deterministic_runner_rejects_branching_machines() {
        let err = run_deterministic(&two_branch(), &[1], 2).unwrap_err();
        assert_eq!(
            err,
            RunError::NotDeterministic { state: "q0".into(), symbol: "1".into(), count: 2 }
        );
    }

    #[test]
    fn runner_rejects_inputs_longer_than_the_tape() {
        let err = run_deterministic(&fixture(), &[1, 1, 1], 2).unwrap_err();
        assert_eq!(err, RunError::LayoutOverflow { needed: 3, available: 2 });
        assert!(accepts_nondet(&fixture(), &[1, 1, 1], 2).is_err());
    }

    #[test]
    fn search_accepts_through_the_second_branch() {
        let m = two_branch();
        let out = accepts_nondet(&m, &[1], 2).unwrap();
        assert_eq!(out.verdict, Verdict::Accept { step: 2 });
        let trace = out.witness.unwrap();
        // The witness must be the accepting branch, not the first-listed one.
        assert_eq!(trace.configs[1].state, 2);
        assert!(trace.follows_rules(&m));
    }

    #[test]
    fn search_agrees_with_the_deterministic_runner() {
        let m = fixture();
        for (w, t) in [(vec![], 4), (vec![1], 2), (vec![1, 1], 3), (vec![0, 1], 4)] {
            let det = run_deterministic(&m, &w, t).unwrap();
            let bfs = accepts_nondet(&m, &w, t).unwrap();
            assert_eq!(det.verdict, bfs.verdict, "w={w:?} t={t}");
        }
    }

    #[test]
    fn one_step_bound_accepts_only_an_accepting_start() {
        let m = fixture();
        assert_eq!(accepts_nondet(&m, &[1], 1).unwrap().verdict, Verdict::NoAccept);

        let all = parse_machine("alphabet: _ 1\nstates: q0\ninitial: q0\naccept: q0\n").unwrap();
        let out = accepts_nondet(&all, &[1], 1).unwrap();
        assert_eq!(out.verdict, Verdict::Accept { step: 1 });
        assert_eq!(out.witness.unwrap().configs.len(), 1);
    }

    #[test]
    fn verifier_checks_the_first_certificate_square() {
        let m = verifier();
        // Tape is 1 _ c blanks; square 3 is the certificate.
        let yes = guess_and_check(&m, &[1], &[1], 4).unwrap();
        assert_eq!(yes.verdict, Verdict::Accept { step: 4 });
        let no = guess_and_check(&m, &[1], &[0], 4).unwrap();
        assert_eq!(no.verdict, Verdict::NoAccept);
    }

    #[test]
    fn guess_and_check_validates_the_layout() {
        let err = guess_and_check(&verifier(), &[1], &[1, 1], 3).unwrap_err();
        assert_eq!(err, RunError::LayoutOverflow { needed: 4, available: 3 });
    }

    #[test]
    fn certificate_enumeration_is_exact_and_ordered() {
        let m = verifier();
        assert_eq!(enumerate_certificates(&m, &[1], 1, 4).unwrap(), vec![vec![1]]);
        // With two certificate squares only the first one is inspected.
        assert_eq!(
            enumerate_certificates(&m, &[1], 2, 5).unwrap(),
            vec![vec![1, 0], vec![1, 1]]
        );

        let none = parse_machine(concat!(
            "alphabet: _ 1\n",
            "states: q0 qy\n",
            "initial: q0\n",
            "accept: qy\n",
            "delta: q0 1 -> q0 1 S\n",
            "delta: q0 _ -> q0 _ S\n",
        ))
        .unwrap();
        assert_eq!(enumerate_certificates(&none, &[1], 1, 4).unwrap(), Vec::<Vec<usize>>::new());

        let all = parse_machine("alphabet: _ 1\nstates: q0\ninitial: q0\naccept: q0\n").unwrap();
        assert_eq!(enumerate_certificates(&all, &[], 1, 2).unwrap(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn zero_length_certificates_enumerate_the_empty_string() {
        let all = parse_machine("alphabet: _ 1\nstates: q0\ninitial: q0\naccept: q0\n").unwrap();
        assert_eq!(enumerate_certificates(&all, &[], 0, 1).unwrap(), vec![vec![]]);
    }

    #[test]
    fn normalization_covers_accepting_states_only() {
        let m = fixture();
        let n = normalize_machine(&m);
        // q1 already reads 1; only the blank pair is missing.
        assert_eq!(n.rules.len(), 4);
        let added = n.rules[3];
        assert_eq!(
            added,
            TransitionRule { from_state: 1, read: 0, to_state: 1, write: 0, movement: Move::Stay }
        );
        assert_eq!(&n.rules[..3], &m.rules[..]);
    }

    #[test]
    fn normalization_of_a_bare_accepting_state_adds_one_rule_per_symbol() {
        let m = parse_machine(concat!(
            "alphabet: _ 1\n",
            "states: q0 q1\n",
            "initial: q0\n",
            "accept: q1\n",
            "delta: q0 1 -> q1 1 R\n",
            "delta: q0 _ -> q0 _ S\n",
        ))
        .unwrap();
        let n = normalize_machine(&m);
        assert_eq!(n.rules.len(), 4);

        // A three-rule nondeterministic machine with a bare accepting state
        // grows to five rules the same way.
        let nd = two_branch_without_sink();
        assert_eq!(nd.rules.len(), 3);
        assert_eq!(normalize_machine(&nd).rules.len(), 5);
    }

    fn two_branch_without_sink() -> MachineSpec {
        parse_machine(concat!(
            "alphabet: _ 1\n",
            "states: q0 qy\n",
            "initial: q0\n",
            "accept: qy\n",
            "delta: q0 1 -> q0 1 R\n",
            "delta: q0 1 -> qy 1 S\n",
            "delta: q0 _ -> q0 _ S\n",
        ))
        .unwrap()
    }

    #[test]
    fn normalization_is_idempotent_and_verdict_preserving() {
        for m in [fixture(), verifier(), two_branch()] {
            let once = normalize_machine(&m);
            assert_eq!(normalize_machine(&once), once);
            for (w, t) in [(vec![], 3), (vec![1], 4)] {
                assert_eq!(
                    accepts_nondet(&m, &w, t).unwrap().verdict,
                    accepts_nondet(&once, &w, t).unwrap().verdict
                );
            }
        }
    }

    #[test]
    fn head_stays_within_reach_of_the_start() {
        let m = two_branch();
        let mut frontier = vec![Configuration { state: 0, head: 1, tape: vec![1, 0, 0], step: 1 }];
        while let Some(c) = frontier.pop() {
            assert!(c.head >= 1 && c.head <= c.step.min(c.t_bound()));
            frontier.extend(successors(&m, &c));
        }
    }

    #[test]
    fn input_strings_parse_by_symbol_name() {
        let m = fixture();
        assert_eq!(m.parse_input("1_1").unwrap(), vec![1, 0, 1]);
        assert_eq!(m.parse_input("").unwrap(), Vec::<usize>::new());
        assert!(matches!(m.parse_input("1x").unwrap_err(), InputError::UnknownSymbol { position: 2, .. }));
    }
}
