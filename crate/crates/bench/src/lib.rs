//! Seeded inputs shared by the benchmarks.

use ltldom::counting::random_automaton;
use ltldom::formula::random_formula;
use ltldom::lasso::random_lasso_with;
use ltldom::{render, CountingAutomaton, Formula, Lasso, LassoWord, Proposition, SampleSpec, SymbolWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub words: Vec<LassoWord>,
    pub formulas: Vec<Formula>,
}

/// `n` (word, formula) pairs over `{p, q}` with stems and loops up to `len`.
pub fn formulas(n: usize, depth: usize, len: usize, seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = SampleSpec::default().alphabet;
    let atoms: Vec<Proposition> = alphabet.iter().cloned().collect();
    let mut words = Vec::with_capacity(n);
    let mut formulas = Vec::with_capacity(n);
    for _ in 0..n {
        words.push(random_lasso_with(&mut rng, &alphabet, len, len));
        formulas.push(random_formula(&mut rng, &atoms, depth));
    }
    Fixture { words, formulas }
}

pub fn rendered(fixture: &Fixture) -> Vec<String> {
    fixture.formulas.iter().map(render).collect()
}

/// Random automata over `{a, b}` paired with random words.
pub fn automata(n: usize, states: usize, counters: usize, len: usize, seed: u64) -> Vec<(CountingAutomaton, SymbolWord)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ab = vec!["a".to_string(), "b".to_string()];
    (0..n)
        .map(|_| {
            let aut = random_automaton(&mut rng, states, counters, &ab, 3);
            let w = Lasso::random_with(&mut rng, len, len, |r| ab[r.random_range(0..2)].clone());
            (aut, w)
        })
        .collect()
}
