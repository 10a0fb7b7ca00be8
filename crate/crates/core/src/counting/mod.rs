//! Deterministic k-counting automata.
//!
//! A k-counting automaton is a complete deterministic automaton whose
//! transitions may increment or decrement integer counters but never test
//! them. A run is accepted when its acceptance condition, a Boolean formula
//! over "counter `c` is unbounded above" (`c+`) and "unbounded below" (`c-`),
//! holds. Since the transition function is total and deterministic every
//! word has exactly one run.

mod acceptance;
mod muller;
mod ops;
mod random;
mod run;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use acceptance::{is_counter_name, parse_phi, AcceptanceFormula, Direction, PhiParseError};
pub use muller::{muller_to_counting, MullerAutomaton, MullerTransition};
pub use ops::{complement, l_omega_automaton, prefix_count_oracle, product, ProductMode};
pub use random::{random_automaton, random_phi};
pub use run::{accepts, analyze_run, Boundedness, Configuration, CounterValuation, RunAnalysis};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountingError {
    #[error("invalid automaton:\n{}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("state `{0}` does not exist")]
    UnknownState(String),
    #[error("counter `{0}` overflowed")]
    CounterOverflow(String),
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("product state name `{0}` is ambiguous")]
    NameCollision(String),
    #[error("expected a word over {{a, b}}, found symbol `{0}`")]
    NotOverAB(String),
    #[error("automaton file: {0}")]
    Format(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n")
}

/// A single well-formedness problem found by [`CountingAutomaton::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoStates,
    EmptyAlphabet,
    Duplicate { kind: &'static str, name: String },
    BadCounterName(String),
    UnknownInitial(String),
    MissingTransition { state: String, symbol: String },
    DuplicateTransition { state: String, symbol: String },
    Overlap { state: String, symbol: String, counters: Vec<String> },
    DanglingState { context: String, name: String },
    DanglingSymbol { context: String, name: String },
    DanglingCounter { context: String, name: String },
    RepeatedCounter { context: String, name: String },
    BadFamilyMember { name: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => write!(f, "automaton has no states"),
            Violation::EmptyAlphabet => write!(f, "alphabet is empty"),
            Violation::Duplicate { kind, name } => write!(f, "duplicate {kind} `{name}`"),
            Violation::BadCounterName(n) => write!(
                f,
                "counter name `{n}` is empty or contains whitespace or one of ! & | ( )"
            ),
            Violation::UnknownInitial(q) => write!(f, "initial state `{q}` is not a state"),
            Violation::MissingTransition { state, symbol } => {
                write!(f, "delta not total: no transition for ({state}, {symbol})")
            }
            Violation::DuplicateTransition { state, symbol } => {
                write!(f, "more than one transition for ({state}, {symbol})")
            }
            Violation::Overlap { state, symbol, counters } => write!(
                f,
                "C+ and C- overlap on ({state}, {symbol}): {}",
                counters.join(", ")
            ),
            Violation::DanglingState { context, name } => {
                write!(f, "{context}: unknown state `{name}`")
            }
            Violation::DanglingSymbol { context, name } => {
                write!(f, "{context}: unknown symbol `{name}`")
            }
            Violation::DanglingCounter { context, name } => {
                write!(f, "{context}: unknown counter `{name}`")
            }
            Violation::RepeatedCounter { context, name } => {
                write!(f, "{context}: counter `{name}` listed twice")
            }
            Violation::BadFamilyMember { name } => {
                write!(f, "acceptance family mentions unknown state `{name}`")
            }
        }
    }
}

/// One entry of the transition function: `delta(from, symbol) = (to, inc, dec)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub from: String,
    pub symbol: String,
    pub to: String,
    #[serde(default)]
    pub inc: Vec<String>,
    #[serde(default)]
    pub dec: Vec<String>,
}

/// A k-counting automaton. Field layout matches the JSON file format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingAutomaton {
    pub states: Vec<String>,
    pub counters: Vec<String>,
    pub alphabet: Vec<String>,
    pub initial: String,
    pub delta: Vec<Transition>,
    #[serde(with = "phi_text")]
    pub phi: AcceptanceFormula,
}

mod phi_text {
    use super::{parse_phi, AcceptanceFormula};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(phi: &AcceptanceFormula, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&phi.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<AcceptanceFormula, D::Error> {
        let text = String::deserialize(d)?;
        parse_phi(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn duplicates<'a>(
    kind: &'static str,
    names: &'a [String],
    out: &mut Vec<Violation>,
) -> HashSet<&'a str> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            out.push(Violation::Duplicate { kind, name: n.clone() });
        }
    }
    seen
}

impl CountingAutomaton {
    /// Checks every structural invariant and reports all violations at once.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.states.is_empty() {
            out.push(Violation::NoStates);
        }
        if self.alphabet.is_empty() {
            out.push(Violation::EmptyAlphabet);
        }
        let states = duplicates("state", &self.states, &mut out);
        let symbols = duplicates("symbol", &self.alphabet, &mut out);
        let counters = duplicates("counter", &self.counters, &mut out);
        for c in &self.counters {
            if !is_counter_name(c) {
                out.push(Violation::BadCounterName(c.clone()));
            }
        }
        if !states.contains(self.initial.as_str()) {
            out.push(Violation::UnknownInitial(self.initial.clone()));
        }

        let mut defined: HashSet<(&str, &str)> = HashSet::new();
        for t in &self.delta {
            let context = format!("transition ({}, {})", t.from, t.symbol);
            if !states.contains(t.from.as_str()) {
                out.push(Violation::DanglingState { context: context.clone(), name: t.from.clone() });
            }
            if !states.contains(t.to.as_str()) {
                out.push(Violation::DanglingState { context: context.clone(), name: t.to.clone() });
            }
            if !symbols.contains(t.symbol.as_str()) {
                out.push(Violation::DanglingSymbol { context: context.clone(), name: t.symbol.clone() });
            }
            for set in [&t.inc, &t.dec] {
                let mut local = HashSet::new();
                for c in set {
                    if !counters.contains(c.as_str()) {
                        out.push(Violation::DanglingCounter { context: context.clone(), name: c.clone() });
                    }
                    if !local.insert(c.as_str()) {
                        out.push(Violation::RepeatedCounter { context: context.clone(), name: c.clone() });
                    }
                }
            }
            let dec: HashSet<&str> = t.dec.iter().map(String::as_str).collect();
            let overlap: BTreeSet<String> =
                t.inc.iter().filter(|c| dec.contains(c.as_str())).cloned().collect();
            if !overlap.is_empty() {
                out.push(Violation::Overlap {
                    state: t.from.clone(),
                    symbol: t.symbol.clone(),
                    counters: overlap.into_iter().collect(),
                });
            }
            if !defined.insert((t.from.as_str(), t.symbol.as_str())) {
                out.push(Violation::DuplicateTransition {
                    state: t.from.clone(),
                    symbol: t.symbol.clone(),
                });
            }
        }
        for q in &self.states {
            for a in &self.alphabet {
                if !defined.contains(&(q.as_str(), a.as_str())) {
                    out.push(Violation::MissingTransition { state: q.clone(), symbol: a.clone() });
                }
            }
        }
        for c in self.phi.counters() {
            if !counters.contains(c) {
                out.push(Violation::DanglingCounter {
                    context: "acceptance condition".into(),
                    name: c.to_string(),
                });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// `k`, the number of counters.
    pub fn k(&self) -> usize {
        self.counters.len()
    }

    pub fn transition(&self, state: &str, symbol: &str) -> Option<&Transition> {
        self.delta.iter().find(|t| t.from == state && t.symbol == symbol)
    }

    /// One step of the run: follow `delta(state, symbol)` and apply its
    /// increments and decrements.
    pub fn step(
        &self,
        state: &str,
        valuation: &CounterValuation,
        symbol: &str,
    ) -> Result<(String, CounterValuation), CountingError> {
        if !self.alphabet.iter().any(|a| a == symbol) {
            return Err(CountingError::UnknownSymbol(symbol.to_string()));
        }
        if !self.states.iter().any(|q| q == state) {
            return Err(CountingError::UnknownState(state.to_string()));
        }
        let t = self.transition(state, symbol).ok_or_else(|| {
            CountingError::Invalid(vec![Violation::MissingTransition {
                state: state.to_string(),
                symbol: symbol.to_string(),
            }])
        })?;
        let mut next = valuation.clone();
        for c in &t.inc {
            next.add(c, 1)?;
        }
        for c in &t.dec {
            next.add(c, -1)?;
        }
        Ok((t.to.clone(), next))
    }

    /// Pretty-printed JSON document followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("automaton serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CountingError> {
        serde_json::from_str(text).map_err(|e| CountingError::Format(e.to_string()))
    }

    pub(crate) fn compile(&self) -> Result<Compiled, CountingError> {
        self.validate().map_err(CountingError::Invalid)?;
        let state_ix: HashMap<&str, usize> =
            self.states.iter().enumerate().map(|(i, q)| (q.as_str(), i)).collect();
        let symbol_ix: HashMap<String, usize> =
            self.alphabet.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let counter_ix: HashMap<&str, usize> =
            self.counters.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
        let mut table = vec![vec![(0usize, Vec::new()); self.alphabet.len()]; self.states.len()];
        for t in &self.delta {
            let effects = t
                .inc
                .iter()
                .map(|c| (counter_ix[c.as_str()], 1i64))
                .chain(t.dec.iter().map(|c| (counter_ix[c.as_str()], -1i64)))
                .collect();
            table[state_ix[t.from.as_str()]][symbol_ix[&t.symbol]] = (state_ix[t.to.as_str()], effects);
        }
        Ok(Compiled {
            initial: state_ix[self.initial.as_str()],
            symbol_ix,
            table,
        })
    }
}

/// Successor state and the `(counter, ±1)` effects of one transition.
pub(crate) type Step = (usize, Vec<(usize, i64)>);

/// Index-based transition table of a validated automaton.
pub(crate) struct Compiled {
    pub initial: usize,
    pub symbol_ix: HashMap<String, usize>,
    /// Indexed by state, then symbol.
    pub table: Vec<Vec<Step>>,
}

impl Compiled {
    pub fn symbol(&self, s: &str) -> Result<usize, CountingError> {
        self.symbol_ix
            .get(s)
            .copied()
            .ok_or_else(|| CountingError::UnknownSymbol(s.to_string()))
    }
}

/// Per-counter data keyed by counter name, in declaration order.
pub(crate) fn by_counter<T>(aut: &CountingAutomaton, values: impl IntoIterator<Item = T>) -> BTreeMap<String, T> {
    aut.counters.iter().cloned().zip(values).collect()
}
