//! The eight clause groups of the tableau.
//!
//! Groups B through D pin down the shape of a configuration row (one head
//! position, one symbol per square, one state). E fixes the first row, F
//! through H relate consecutive rows to the transition rules, and I demands
//! an accepting state somewhere. Every function returns its clauses in a
//! fixed, documented order so that encoding the same machine twice yields
//! byte-identical output.
//!
//! F, G, and H come in two flavours. The literal flavour expands each rule
//! into implications over the step-`t` row and is only sound for
//! deterministic machines: a row with no applicable rule leaves the next
//! row unconstrained. The general flavour routes every step boundary
//! through an exactly-one block of rule selector variables, which both
//! handles nondeterminism and turns a dead configuration into an immediate
//! contradiction.

use super::layout::VarLayout;
use super::{Fidelity, ModeKind};
use crate::cnf::Literal;
use crate::machine::{MachineSpec, Move};

/// All-of `vars` off except exactly one: one long positive clause, then one
/// binary clause per unordered pair, pairs in index order.
fn exactly_one(vars: &[u32], out: &mut Vec<Vec<Literal>>) {
    out.push(vars.iter().map(|&v| Literal::positive(v)).collect());
    for (k, &x) in vars.iter().enumerate() {
        for &y in &vars[k + 1..] {
            out.push(vec![Literal::negative(x), Literal::negative(y)]);
        }
    }
}

/// Where the head lands when a rule moves it from `square`. Falling off
/// either end of the tape leaves it in place, mirroring the simulator.
fn moved_square(square: usize, movement: Move, t_bound: usize) -> usize {
    match movement {
        Move::Left => (square - 1).max(1),
        Move::Right => (square + 1).min(t_bound),
        Move::Stay => square,
    }
}

/// B: at each step the head is on exactly one square.
pub fn head_placement(layout: &VarLayout) -> Vec<Vec<Literal>> {
    let t_bound = layout.t_bound();
    let mut out = Vec::new();
    for t in 1..=t_bound {
        let vars: Vec<u32> = (1..=t_bound).map(|s| layout.scan_var(s, t)).collect();
        exactly_one(&vars, &mut out);
    }
    out
}

/// C: at each step every square holds exactly one symbol.
pub fn square_contents(layout: &VarLayout, m: &MachineSpec) -> Vec<Vec<Literal>> {
    let t_bound = layout.t_bound();
    let mut out = Vec::new();
    for t in 1..=t_bound {
        for s in 1..=t_bound {
            let vars: Vec<u32> =
                (0..m.symbol_count()).map(|j| layout.symbol_var(j, s, t)).collect();
            exactly_one(&vars, &mut out);
        }
    }
    out
}

/// D: at each step the machine is in exactly one state.
pub fn state_occupancy(layout: &VarLayout, m: &MachineSpec) -> Vec<Vec<Literal>> {
    let t_bound = layout.t_bound();
    let mut out = Vec::new();
    for t in 1..=t_bound {
        let vars: Vec<u32> =
            (0..m.state_count()).map(|q| layout.state_var(q, t)).collect();
        exactly_one(&vars, &mut out);
    }
    out
}

/// E: the first row. Always the initial state and the head on square 1;
/// what the tape says depends on the mode.
///
/// In full mode every square is pinned: the input from square 1, blanks
/// after. In certificate-free mode the units pin the input prefix, a blank
/// separator after it, and a blank tail, skipping the `cert_len`
/// certificate squares in between entirely: their contents are constrained
/// only by the one-symbol-per-square group, so the solver picks the
/// certificate. The whole-tape case (`pin_len` 0, `cert_len` the full
/// bound) pins nothing at all, not even the separator.
pub fn initial_row(
    layout: &VarLayout,
    input: &[usize],
    kind: ModeKind,
) -> Vec<Vec<Literal>> {
    let t_bound = layout.t_bound();
    let mut out = vec![
        vec![Literal::positive(layout.state_var(0, 1))],
        vec![Literal::positive(layout.scan_var(1, 1))],
    ];
    let pin = |symbol: usize, square: usize, out: &mut Vec<Vec<Literal>>| {
        out.push(vec![Literal::positive(layout.symbol_var(symbol, square, 1))]);
    };
    match kind {
        ModeKind::Full => {
            for s in 1..=t_bound {
                pin(input.get(s - 1).copied().unwrap_or(0), s, &mut out);
            }
        }
        ModeKind::CertificateFree { pin_len, cert_len }
            if pin_len == 0 && cert_len == t_bound => {}
        ModeKind::CertificateFree { pin_len, cert_len } => {
            for s in 1..=pin_len {
                pin(input[s - 1], s, &mut out);
            }
            pin(0, pin_len + 1, &mut out);
            for s in pin_len + cert_len + 2..=t_bound {
                pin(0, s, &mut out);
            }
        }
    }
    out
}

/// F: tape evolution. For each step boundary, first the rewrites of the
/// scanned square (per rule, then per square), then the frame clauses
/// saying unscanned squares keep their symbol (per square, then per
/// symbol).
pub fn tape_evolution(
    layout: &VarLayout,
    m: &MachineSpec,
    fidelity: Fidelity,
) -> Vec<Vec<Literal>> {
    let t_bound = layout.t_bound();
    let mut out = Vec::new();
    for t in 1..t_bound {
        for (c, rule) in m.rules.iter().enumerate() {
            for s in 1..=t_bound {
                let next = Literal::positive(layout.symbol_var(rule.write, s, t + 1));
                out.push(match fidelity {
                    Fidelity::Literal => vec![
                        Literal::negative(layout.state_var(rule.from_state, t)),
                        Literal::negative(layout.scan_var(s, t)),
                        Literal::negative(layout.symbol_var(rule.read, s, t)),
                        next,
                    ],
                    Fidelity::General => vec![
                        Literal::negative(layout.selector_var(c, t)),
                        Literal::negative(layout.scan_var(s, t)),
                        next,
                    ],
                });
            }
        }
        for s in 1..=t_bound {
            for j in 0..m.symbol_count() {
                out.push(vec![
                    Literal::positive(layout.scan_var(s, t)),
                    Literal::negative(layout.symbol_var(j, s, t)),
                    Literal::positive(layout.symbol_var(j, s, t + 1)),
                ]);
            }
        }
    }
    out
}

/// G: state evolution.
///
/// Literal flavour: one implication per rule per square, straight from the
/// step-`t` row to the next state.
///
/// General flavour, per step boundary: each selector forces its rule's next
/// state; each configuration shape (state, symbol, scanned square) forces
/// some selector whose rule matches it, an empty disjunction when no rule
/// does; and the selectors form an exactly-one block.
pub fn state_evolution(
    layout: &VarLayout,
    m: &MachineSpec,
    fidelity: Fidelity,
) -> Vec<Vec<Literal>> {
    let t_bound = layout.t_bound();
    let mut out = Vec::new();
    for t in 1..t_bound {
        match fidelity {
            Fidelity::Literal => {
                for rule in &m.rules {
                    for s in 1..=t_bound {
                        out.push(vec![
                            Literal::negative(layout.state_var(rule.from_state, t)),
                            Literal::negative(layout.scan_var(s, t)),
                            Literal::negative(layout.symbol_var(rule.read, s, t)),
                            Literal::positive(layout.state_var(rule.to_state, t + 1)),
                        ]);
                    }
                }
            }
            Fidelity::General => {
                for (c, rule) in m.rules.iter().enumerate() {
                    out.push(vec![
                        Literal::negative(layout.selector_var(c, t)),
                        Literal::positive(layout.state_var(rule.to_state, t + 1)),
                    ]);
                }
                for q in 0..m.state_count() {
                    for j in 0..m.symbol_count() {
                        for s in 1..=t_bound {
                            let mut clause = vec![
                                Literal::negative(layout.state_var(q, t)),
                                Literal::negative(layout.scan_var(s, t)),
                                Literal::negative(layout.symbol_var(j, s, t)),
                            ];
                            clause.extend(
                                m.rules
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, r)| r.from_state == q && r.read == j)
                                    .map(|(c, _)| {
                                        Literal::positive(layout.selector_var(c, t))
                                    }),
                            );
                            out.push(clause);
                        }
                    }
                }
                let selectors: Vec<u32> = (0..m.rules.len())
                    .map(|c| layout.selector_var(c, t))
                    .collect();
                exactly_one(&selectors, &mut out);
            }
        }
    }
    out
}

/// H: head movement, same shapes as G but targeting the moved-to square.
pub fn head_evolution(
    layout: &VarLayout,
    m: &MachineSpec,
    fidelity: Fidelity,
) -> Vec<Vec<Literal>> {
    let t_bound = layout.t_bound();
    let mut out = Vec::new();
    for t in 1..t_bound {
        for (c, rule) in m.rules.iter().enumerate() {
            for s in 1..=t_bound {
                let landed = moved_square(s, rule.movement, t_bound);
                let next = Literal::positive(layout.scan_var(landed, t + 1));
                out.push(match fidelity {
                    Fidelity::Literal => vec![
                        Literal::negative(layout.state_var(rule.from_state, t)),
                        Literal::negative(layout.scan_var(s, t)),
                        Literal::negative(layout.symbol_var(rule.read, s, t)),
                        next,
                    ],
                    Fidelity::General => vec![
                        Literal::negative(layout.selector_var(c, t)),
                        Literal::negative(layout.scan_var(s, t)),
                        next,
                    ],
                });
            }
        }
    }
    out
}

/// I: some accepting state holds at some step. One clause, accepting
/// states in index order, steps inside.
pub fn acceptance(layout: &VarLayout, m: &MachineSpec) -> Vec<Vec<Literal>> {
    let mut clause = Vec::new();
    for &q in &m.accept {
        for t in 1..=layout.t_bound() {
            clause.push(Literal::positive(layout.state_var(q, t)));
        }
    }
    vec![clause]
}
