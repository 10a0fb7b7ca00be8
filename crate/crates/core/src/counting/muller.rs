//! Deterministic Muller automata and their translation into counting automata.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{duplicates, AcceptanceFormula, CountingAutomaton, CountingError, Transition, Violation};
use crate::lasso::SymbolWord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MullerTransition {
    pub from: String,
    pub symbol: String,
    pub to: String,
}

/// Accepts a word when the set of states its run visits infinitely often is
/// one of the sets in `family`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MullerAutomaton {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub initial: String,
    pub delta: Vec<MullerTransition>,
    pub family: Vec<BTreeSet<String>>,
}

impl MullerAutomaton {
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
        if !states.contains(self.initial.as_str()) {
            out.push(Violation::UnknownInitial(self.initial.clone()));
        }
        let mut defined = HashSet::new();
        for t in &self.delta {
            let context = format!("transition ({}, {})", t.from, t.symbol);
            for q in [&t.from, &t.to] {
                if !states.contains(q.as_str()) {
                    out.push(Violation::DanglingState { context: context.clone(), name: q.clone() });
                }
            }
            if !symbols.contains(t.symbol.as_str()) {
                out.push(Violation::DanglingSymbol { context, name: t.symbol.clone() });
            }
            if !defined.insert((t.from.as_str(), t.symbol.as_str())) {
                out.push(Violation::DuplicateTransition { state: t.from.clone(), symbol: t.symbol.clone() });
            }
        }
        for q in &self.states {
            for a in &self.alphabet {
                if !defined.contains(&(q.as_str(), a.as_str())) {
                    out.push(Violation::MissingTransition { state: q.clone(), symbol: a.clone() });
                }
            }
        }
        for member in &self.family {
            for q in member {
                if !states.contains(q.as_str()) {
                    out.push(Violation::BadFamilyMember { name: q.clone() });
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// States visited infinitely often by the run on `w`, read off the
    /// repeating segment of the (state, loop phase) sequence.
    pub fn infinity_set(&self, w: &SymbolWord) -> Result<BTreeSet<String>, CountingError> {
        self.validate().map_err(CountingError::Invalid)?;
        for s in w.stem().iter().chain(w.cycle()) {
            if !self.alphabet.contains(s) {
                return Err(CountingError::UnknownSymbol(s.clone()));
            }
        }
        let next: HashMap<(&str, &str), &str> = self
            .delta
            .iter()
            .map(|t| ((t.from.as_str(), t.symbol.as_str()), t.to.as_str()))
            .collect();
        let mut first_seen: HashMap<(&str, usize), usize> = HashMap::new();
        let mut path: Vec<&str> = Vec::new();
        let mut state = self.initial.as_str();
        let mut time = 0;
        loop {
            let phase = w.canonical_index(time);
            if let Some(&start) = first_seen.get(&(state, phase)) {
                return Ok(path[start..].iter().map(|q| q.to_string()).collect());
            }
            first_seen.insert((state, phase), time);
            path.push(state);
            state = next[&(state, w.letter_at(time).as_str())];
            time += 1;
        }
    }

    pub fn accepts(&self, w: &SymbolWord) -> Result<bool, CountingError> {
        let inf = self.infinity_set(w)?;
        Ok(self.family.contains(&inf))
    }
}

fn visit_counter(state: &str) -> String {
    format!("c_{state}")
}

/// One counter per state, incremented on every transition into that state.
///
/// Counters never decrease, so `c_q+` holds exactly when `q` is entered
/// infinitely often. The Muller condition then becomes the disjunction, over
/// each accepted set `F`, of "every state in `F` is unbounded and every other
/// state is bounded".
pub fn muller_to_counting(m: &MullerAutomaton) -> Result<CountingAutomaton, CountingError> {
    m.validate().map_err(CountingError::Invalid)?;
    let counters: Vec<String> = m.states.iter().map(|q| visit_counter(q)).collect();
    let delta = m
        .delta
        .iter()
        .map(|t| Transition {
            from: t.from.clone(),
            symbol: t.symbol.clone(),
            to: t.to.clone(),
            inc: vec![visit_counter(&t.to)],
            dec: vec![],
        })
        .collect();
    let phi = AcceptanceFormula::any(m.family.iter().map(|member| {
        AcceptanceFormula::all(m.states.iter().map(|q| {
            let atom = AcceptanceFormula::plus(visit_counter(q));
            if member.contains(q) {
                atom
            } else {
                AcceptanceFormula::not(atom)
            }
        }))
    }));
    Ok(CountingAutomaton {
        states: m.states.clone(),
        counters,
        alphabet: m.alphabet.clone(),
        initial: m.initial.clone(),
        delta,
        phi,
    })
}
