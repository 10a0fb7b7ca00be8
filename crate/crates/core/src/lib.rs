//! Temporal domination logic on lasso words, and k-counting automata.
//!
//! The logic is LTL with one extra binary operator, `a << b` ("`a` is
//! dominated by `b`"), which holds when the number of positions satisfying
//! `b` exceeds the number satisfying `a` by arbitrarily large margins.
//! `a ~ b` abbreviates `!(a << b) & !(b << a)`: both occur almost equally
//! often.
//!
//! - [`formula`]: syntax, parser, renderer.
//! - [`lasso`]: ultimately periodic words, the models every procedure runs on.
//! - [`semantics`]: the evaluator and an independent brute-force oracle.
//! - [`counting`]: k-counting automata, run analysis, Boolean closure,
//!   conversion from Muller automata.
//! - [`bridge`]: sampled equivalence and agreement checks between the two.

pub mod bridge;
pub mod counting;
pub mod formula;
pub mod lasso;
pub mod semantics;

pub use bridge::{
    check_agreement, check_equivalent, check_unsatisfiable, letter_to_symbol, separation_demo,
    CheckReport, LetterMapping, SampleSpec, Verdict, Witness,
};
pub use counting::{
    accepts, analyze_run, complement, l_omega_automaton, muller_to_counting, prefix_count_oracle,
    product, AcceptanceFormula, CountingAutomaton, CountingError, MullerAutomaton, ProductMode,
    RunAnalysis,
};
pub use formula::{parse, render, Formula, ParseError, Proposition};
pub use lasso::{parse_lasso, parse_symbol_word, render_lasso, Lasso, LassoWord, Letter, SymbolWord};
pub use semantics::{count_satisfying, holds, label, loop_drift, oracle_holds, IntervalCount, LabelTable};
