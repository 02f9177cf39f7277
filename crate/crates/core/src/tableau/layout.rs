//! Variable numbering for the tableau.
//!
//! A run of `t_bound` steps over `t_bound` squares is described by three
//! dense blocks of propositions, with an optional fourth when rule selectors
//! are in play:
//!
//! * head block: the head sits on square `s` at step `t`,
//! * state block: the machine is in state `i` at step `t`,
//! * symbol block: square `s` holds symbol `j` at step `t`,
//! * selector block: rule `c` fires between steps `t` and `t + 1`.
//!
//! Ids are 1-based and contiguous in that order, so the total count is
//! `T^2 + rT + lT^2`, plus `b(T - 1)` when selectors exist. Squares and
//! steps are 1-based throughout; states, symbols, and rules are the 0-based
//! indices used by the machine model.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VarLayout {
    t_bound: usize,
    symbols: usize,
    states: usize,
    selectors: usize,
}

impl VarLayout {
    /// Layout without a selector block.
    pub fn new(t_bound: usize, symbols: usize, states: usize) -> VarLayout {
        VarLayout { t_bound, symbols, states, selectors: 0 }
    }

    /// Layout with one selector per rule per step boundary.
    pub fn with_selectors(
        t_bound: usize,
        symbols: usize,
        states: usize,
        rules: usize,
    ) -> VarLayout {
        VarLayout { t_bound, symbols, states, selectors: rules }
    }

    pub fn t_bound(&self) -> usize {
        self.t_bound
    }

    pub fn has_selectors(&self) -> bool {
        self.selectors > 0
    }

    pub fn selector_count(&self) -> usize {
        self.selectors
    }

    fn head_block(&self) -> usize {
        self.t_bound * self.t_bound
    }

    fn state_block(&self) -> usize {
        self.states * self.t_bound
    }

    fn symbol_block(&self) -> usize {
        self.symbols * self.t_bound * self.t_bound
    }

    pub fn num_vars(&self) -> usize {
        self.head_block()
            + self.state_block()
            + self.symbol_block()
            + self.selectors * (self.t_bound - 1)
    }

    /// Head on square `square` at step `t`.
    pub fn scan_var(&self, square: usize, t: usize) -> u32 {
        debug_assert!((1..=self.t_bound).contains(&square));
        debug_assert!((1..=self.t_bound).contains(&t));
        ((t - 1) * self.t_bound + square) as u32
    }

    /// Machine in state `state` at step `t`.
    pub fn state_var(&self, state: usize, t: usize) -> u32 {
        debug_assert!(state < self.states);
        debug_assert!((1..=self.t_bound).contains(&t));
        (self.head_block() + (t - 1) * self.states + state + 1) as u32
    }

    /// Square `square` holds symbol `symbol` at step `t`.
    pub fn symbol_var(&self, symbol: usize, square: usize, t: usize) -> u32 {
        debug_assert!(symbol < self.symbols);
        debug_assert!((1..=self.t_bound).contains(&square));
        debug_assert!((1..=self.t_bound).contains(&t));
        (self.head_block()
            + self.state_block()
            + ((t - 1) * self.t_bound + (square - 1)) * self.symbols
            + symbol
            + 1) as u32
    }

    /// Rule `rule` fires between steps `t` and `t + 1`.
    pub fn selector_var(&self, rule: usize, t: usize) -> u32 {
        debug_assert!(rule < self.selectors);
        debug_assert!((1..self.t_bound).contains(&t));
        (self.head_block()
            + self.state_block()
            + self.symbol_block()
            + (t - 1) * self.selectors
            + rule
            + 1) as u32
    }
}
