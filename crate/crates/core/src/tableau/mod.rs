//! The tableau construction: a bounded machine run as one CNF formula.
//!
//! A machine, an input, and a step bound `T` turn into a formula that is
//! satisfiable exactly when the machine can reach an accepting state within
//! `T` steps on a tape of `T` squares. Models are not just witnesses of
//! satisfiability: [`decode_model`] reads the accepting run back out of
//! one.
//!
//! Two knobs control the construction. [`Fidelity`] picks between the
//! compact rule expansion that is only sound for deterministic machines
//! and the selector-based one that handles any machine. [`ModeKind`] picks
//! what the first tableau row pins down: the whole tape, or only a prefix,
//! leaving a block of certificate squares for the solver to fill in. The
//! certificate-free mode is what makes the encoder useful as a reduction:
//! "does some certificate make the verifier accept" becomes one
//! satisfiability question with no certificate enumeration anywhere.

mod decode;
mod groups;
mod layout;

pub use decode::{decode_model, DecodeError};
pub use groups::{
    acceptance, head_evolution, head_placement, initial_row, square_contents,
    state_evolution, state_occupancy, tape_evolution,
};
pub use layout::VarLayout;

use crate::cnf::{emit_dimacs, CnfFormula};
use crate::machine::{normalize_machine, MachineSpec};
use std::fmt;
use std::fmt::Write as _;
use thiserror::Error;

/// How transition rules become clauses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fidelity {
    /// Direct rule expansion. Compact, but sound only for deterministic
    /// machines, so [`encode`] rejects anything else up front.
    Literal,
    /// Rule selector variables with an exactly-one block per step
    /// boundary. Sound for every machine, deterministic or not.
    General,
}

impl fmt::Display for Fidelity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fidelity::Literal => "literal",
            Fidelity::General => "general",
        })
    }
}

/// What the first row pins down.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModeKind {
    /// The whole tape: input from square 1, blanks after.
    Full,
    /// A pinned prefix and a free certificate block: the input on squares
    /// `1..=pin_len`, one blank separator, then `cert_len` unconstrained
    /// squares, then blanks, matching the guess-and-check tape layout. A
    /// zero `pin_len` ignores the input but keeps the separator on square
    /// 1, except in the whole-tape case `cert_len = T`, where nothing is
    /// pinned and every square belongs to the certificate.
    CertificateFree { pin_len: usize, cert_len: usize },
}

/// Full configuration for one encoding run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EncodeMode {
    pub kind: ModeKind,
    pub fidelity: Fidelity,
}

impl EncodeMode {
    pub fn full(fidelity: Fidelity) -> EncodeMode {
        EncodeMode { kind: ModeKind::Full, fidelity }
    }

    pub fn certificate_free(
        pin_len: usize,
        cert_len: usize,
        fidelity: Fidelity,
    ) -> EncodeMode {
        EncodeMode { kind: ModeKind::CertificateFree { pin_len, cert_len }, fidelity }
    }
}

/// The eight clause groups, in emission order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Group {
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl Group {
    pub const ALL: [Group; 8] =
        [Group::B, Group::C, Group::D, Group::E, Group::F, Group::G, Group::H, Group::I];

    pub fn letter(self) -> char {
        match self {
            Group::B => 'B',
            Group::C => 'C',
            Group::D => 'D',
            Group::E => 'E',
            Group::F => 'F',
            Group::G => 'G',
            Group::H => 'H',
            Group::I => 'I',
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("NotDeterministic: state {state} reading {symbol} has {count} rules")]
    NotDeterministic { state: String, symbol: String, count: usize },
    #[error("LayoutOverflow: {needed} tape squares needed but only {available} fit in the bound")]
    LayoutOverflow { needed: usize, available: usize },
    #[error("PinMismatch: pinned prefix of {pin_len} squares but the input has {input_len} symbols")]
    PinMismatch { pin_len: usize, input_len: usize },
}

/// One encoded tableau. Holds everything needed to print, solve, and
/// decode: the formula, the variable layout behind it, and the machine as
/// encoded, which is the normalized machine, not the caller's original.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Encoding {
    pub formula: CnfFormula,
    pub layout: VarLayout,
    pub machine: MachineSpec,
    pub mode: EncodeMode,
    pub input: Vec<usize>,
    group_counts: [usize; 8],
}

impl Encoding {
    pub fn t_bound(&self) -> usize {
        self.layout.t_bound()
    }

    pub fn group_count(&self, group: Group) -> usize {
        self.group_counts[group as usize]
    }

    pub fn group_counts(&self) -> [(Group, usize); 8] {
        let mut out = [(Group::B, 0); 8];
        for (slot, g) in out.iter_mut().zip(Group::ALL) {
            *slot = (g, self.group_counts[g as usize]);
        }
        out
    }

    /// The squares the certificate occupies at step 1, in tape order.
    /// Empty in full mode.
    pub fn certificate_squares(&self) -> Vec<usize> {
        match self.mode.kind {
            ModeKind::Full => Vec::new(),
            ModeKind::CertificateFree { pin_len, cert_len } => {
                let first =
                    if pin_len == 0 && cert_len == self.t_bound() { 1 } else { pin_len + 2 };
                (first..first + cert_len).collect()
            }
        }
    }

    pub fn size_report(&self) -> SizeReport {
        SizeReport {
            groups: self.group_counts(),
            clauses: self.formula.clauses().len(),
            vars: self.formula.num_vars(),
            literals: self.formula.literal_count(),
        }
    }

    /// DIMACS text with a comment header recording what was encoded.
    pub fn to_dimacs(&self, machine_name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "c machine={machine_name}").unwrap();
        writeln!(out, "c input={}", self.machine.render_tape(&self.input)).unwrap();
        writeln!(out, "c steps={}", self.t_bound()).unwrap();
        match self.mode.kind {
            ModeKind::Full => writeln!(out, "c mode=full").unwrap(),
            ModeKind::CertificateFree { pin_len, cert_len } => {
                writeln!(out, "c mode=cert-free pin={pin_len} cert={cert_len}").unwrap()
            }
        }
        writeln!(out, "c fidelity={}", self.mode.fidelity).unwrap();
        for (group, count) in self.group_counts() {
            writeln!(out, "c group {group} clauses={count}").unwrap();
        }
        out.push_str(&emit_dimacs(&self.formula));
        out
    }
}

/// Per-group and total size bookkeeping for one encoding.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SizeReport {
    pub groups: [(Group, usize); 8],
    pub clauses: usize,
    pub vars: usize,
    pub literals: usize,
}

/// Counts for the encoding of `machine` on `input`, without keeping the
/// formula around.
pub fn size_report(
    machine: &MachineSpec,
    input: &[usize],
    t_bound: usize,
    mode: EncodeMode,
) -> Result<SizeReport, EncodeError> {
    Ok(encode(machine, input, t_bound, mode)?.size_report())
}

/// Builds the tableau for `machine` on `input` within `t_bound` steps.
///
/// The machine is normalized first, so accepting states hold whatever
/// configuration they are reached in. Rejects literal fidelity on
/// nondeterministic machines, inputs that do not fit the mode's pinned
/// prefix, and layouts that need more squares than the bound provides.
pub fn encode(
    machine: &MachineSpec,
    input: &[usize],
    t_bound: usize,
    mode: EncodeMode,
) -> Result<Encoding, EncodeError> {
    if t_bound == 0 {
        return Err(EncodeError::LayoutOverflow {
            needed: input.len().max(1),
            available: 0,
        });
    }
    if mode.fidelity == Fidelity::Literal {
        // Normalization never adds a second rule to a covered pair, so the
        // original machine is the right one to blame here.
        if let Some((state, symbol, count)) = machine.first_nondeterministic_pair() {
            return Err(EncodeError::NotDeterministic {
                state: machine.states[state].clone(),
                symbol: machine.symbols[symbol].clone(),
                count,
            });
        }
    }
    match mode.kind {
        ModeKind::Full => {
            if input.len() > t_bound {
                return Err(EncodeError::LayoutOverflow {
                    needed: input.len(),
                    available: t_bound,
                });
            }
        }
        ModeKind::CertificateFree { pin_len, cert_len } => {
            if pin_len != 0 && pin_len != input.len() {
                return Err(EncodeError::PinMismatch {
                    pin_len,
                    input_len: input.len(),
                });
            }
            let whole_tape = pin_len == 0 && cert_len == t_bound;
            let needed = pin_len + 1 + cert_len;
            if !whole_tape && needed > t_bound {
                return Err(EncodeError::LayoutOverflow { needed, available: t_bound });
            }
        }
    }

    let machine = normalize_machine(machine);
    let layout = match mode.fidelity {
        Fidelity::Literal => {
            VarLayout::new(t_bound, machine.symbol_count(), machine.state_count())
        }
        Fidelity::General => VarLayout::with_selectors(
            t_bound,
            machine.symbol_count(),
            machine.state_count(),
            machine.rules.len(),
        ),
    };

    let parts = [
        groups::head_placement(&layout),
        groups::square_contents(&layout, &machine),
        groups::state_occupancy(&layout, &machine),
        groups::initial_row(&layout, input, mode.kind),
        groups::tape_evolution(&layout, &machine, mode.fidelity),
        groups::state_evolution(&layout, &machine, mode.fidelity),
        groups::head_evolution(&layout, &machine, mode.fidelity),
        groups::acceptance(&layout, &machine),
    ];
    let mut group_counts = [0usize; 8];
    let mut clauses = Vec::new();
    for (slot, part) in group_counts.iter_mut().zip(parts) {
        *slot = part.len();
        clauses.extend(part);
    }

    Ok(Encoding {
        formula: CnfFormula::new(layout.num_vars(), clauses),
        layout,
        machine,
        mode,
        input: input.to_vec(),
        group_counts,
    })
}
