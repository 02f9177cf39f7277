//! Backtracking search with unit propagation.
//!
//! Chronological DPLL over a two-watched-literal scheme. Every choice point
//! is fixed: the branch variable is the lowest unassigned id, false is tried
//! before true, and propagation follows trail order, so verdict, model, and
//! statistics are identical on every run.

use super::{SatResult, SatVerdict, SearchStats};
use crate::cnf::{Assignment, CnfFormula, Literal};

pub fn dpll(f: &CnfFormula) -> SatResult {
    Search::new(f).run()
}

struct Level {
    /// Trail length before the decision was pushed.
    mark: usize,
    var: u32,
    /// Whether the second value (true) has already been tried.
    flipped: bool,
}

struct Search {
    num_vars: usize,
    /// Clause literals, reordered so positions 0 and 1 are the watched pair.
    clauses: Vec<Vec<Literal>>,
    /// Clause indices watching each literal, keyed by `slot`.
    watches: Vec<Vec<usize>>,
    assign: Vec<Option<bool>>,
    trail: Vec<u32>,
    prop_head: usize,
    levels: Vec<Level>,
    stats: SearchStats,
    failed: bool,
}

fn slot(lit: Literal) -> usize {
    (lit.var() as usize - 1) * 2 + usize::from(!lit.is_positive())
}

fn lit_value(assign: &[Option<bool>], lit: Literal) -> Option<bool> {
    assign[lit.var() as usize - 1].map(|v| v == lit.is_positive())
}

impl Search {
    fn new(f: &CnfFormula) -> Search {
        let num_vars = f.num_vars();
        let mut s = Search {
            num_vars,
            clauses: f.clauses().to_vec(),
            watches: vec![Vec::new(); num_vars * 2],
            assign: vec![None; num_vars],
            trail: Vec::with_capacity(num_vars),
            prop_head: 0,
            levels: Vec::new(),
            stats: SearchStats::default(),
            failed: false,
        };
        for idx in 0..s.clauses.len() {
            match s.clauses[idx].len() {
                0 => {
                    // Structurally false clause: one dead leaf, no search.
                    s.stats.visited += 1;
                    s.failed = true;
                    return s;
                }
                1 => {
                    let unit = s.clauses[idx][0];
                    if !s.enqueue(unit) {
                        s.stats.visited += 1;
                        s.failed = true;
                        return s;
                    }
                }
                _ => {
                    let (a, b) = (s.clauses[idx][0], s.clauses[idx][1]);
                    s.watches[slot(a)].push(idx);
                    s.watches[slot(b)].push(idx);
                }
            }
        }
        s
    }

    fn value(&self, lit: Literal) -> Option<bool> {
        lit_value(&self.assign, lit)
    }

    /// Makes `lit` true. False means the literal was already false.
    fn enqueue(&mut self, lit: Literal) -> bool {
        match self.value(lit) {
            Some(true) => true,
            Some(false) => false,
            None => {
                self.assign[lit.var() as usize - 1] = Some(lit.is_positive());
                self.trail.push(lit.var());
                self.stats.propagations += 1;
                true
            }
        }
    }

    /// Processes pending trail entries. True on success, false on conflict.
    fn propagate(&mut self) -> bool {
        while self.prop_head < self.trail.len() {
            let var = self.trail[self.prop_head];
            self.prop_head += 1;
            let assigned_true = self.assign[var as usize - 1].expect("on the trail");
            let falsified =
                if assigned_true { Literal::negative(var) } else { Literal::positive(var) };
            let pending = std::mem::take(&mut self.watches[slot(falsified)]);
            let mut kept = Vec::with_capacity(pending.len());
            for (seen, &clause_idx) in pending.iter().enumerate() {
                let assign = &self.assign;
                let lits = &mut self.clauses[clause_idx];
                if lits[0] == falsified {
                    lits.swap(0, 1);
                }
                debug_assert_eq!(lits[1], falsified);
                if lit_value(assign, lits[0]) == Some(true) {
                    kept.push(clause_idx);
                    continue;
                }
                // Look for a replacement watch that is not already false.
                if let Some(pos) = (2..lits.len()).find(|&i| lit_value(assign, lits[i]) != Some(false)) {
                    lits.swap(1, pos);
                    let moved = lits[1];
                    self.watches[slot(moved)].push(clause_idx);
                    continue;
                }
                // No replacement: the unfalsified watch must carry the clause.
                kept.push(clause_idx);
                let unit = self.clauses[clause_idx][0];
                if !self.enqueue(unit) {
                    kept.extend_from_slice(&pending[seen + 1..]);
                    self.watches[slot(falsified)] = kept;
                    return false;
                }
            }
            self.watches[slot(falsified)] = kept;
        }
        true
    }

    /// Unwinds to the most recent unflipped decision and tries its second
    /// value. False when the tree is exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some(level) = self.levels.pop() {
            for &v in &self.trail[level.mark..] {
                self.assign[v as usize - 1] = None;
            }
            self.trail.truncate(level.mark);
            self.prop_head = level.mark;
            if !level.flipped {
                self.assign[level.var as usize - 1] = Some(true);
                self.trail.push(level.var);
                self.stats.decisions += 1;
                self.levels.push(Level { mark: level.mark, var: level.var, flipped: true });
                return true;
            }
        }
        false
    }

    fn decide(&mut self) {
        let var = self
            .assign
            .iter()
            .position(|v| v.is_none())
            .map(|i| i as u32 + 1)
            .expect("an unassigned variable exists");
        self.levels.push(Level { mark: self.trail.len(), var, flipped: false });
        self.assign[var as usize - 1] = Some(false);
        self.trail.push(var);
        self.stats.decisions += 1;
    }

    fn run(mut self) -> SatResult {
        if self.failed {
            return SatResult { verdict: SatVerdict::Unsat, model: None, stats: self.stats };
        }
        loop {
            if !self.propagate() {
                self.stats.visited += 1;
                if !self.backtrack() {
                    return SatResult { verdict: SatVerdict::Unsat, model: None, stats: self.stats };
                }
            } else if self.trail.len() == self.num_vars {
                self.stats.visited += 1;
                let model = Assignment::new(
                    self.assign.iter().map(|v| v.expect("fully assigned")).collect(),
                );
                return SatResult { verdict: SatVerdict::Sat, model: Some(model), stats: self.stats };
            } else {
                self.decide();
            }
        }
    }
}
