use rand::Rng;

use super::{AcceptanceFormula, CountingAutomaton, Transition};

/// Random acceptance condition of depth at most `max_depth` over `counters`
/// (which must be nonempty).
pub fn random_phi<R: Rng + ?Sized>(rng: &mut R, counters: &[String], max_depth: usize) -> AcceptanceFormula {
    if max_depth == 0 || rng.random_bool(0.3) {
        let c = counters[rng.random_range(0..counters.len())].clone();
        return if rng.random_bool(0.5) {
            AcceptanceFormula::Plus(c)
        } else {
            AcceptanceFormula::Minus(c)
        };
    }
    let d = max_depth - 1;
    match rng.random_range(0..3) {
        0 => AcceptanceFormula::not(random_phi(rng, counters, d)),
        1 => AcceptanceFormula::and(random_phi(rng, counters, d), random_phi(rng, counters, d)),
        _ => AcceptanceFormula::or(random_phi(rng, counters, d), random_phi(rng, counters, d)),
    }
}

/// Random valid automaton with `1..=max_states` states and `1..=max_counters`
/// counters. Each transition leaves every counter alone, increments it, or
/// decrements it with equal probability.
pub fn random_automaton<R: Rng + ?Sized>(
    rng: &mut R,
    max_states: usize,
    max_counters: usize,
    alphabet: &[String],
    phi_depth: usize,
) -> CountingAutomaton {
    let n = rng.random_range(1..=max_states.max(1));
    let k = rng.random_range(1..=max_counters.max(1));
    let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let counters: Vec<String> = (0..k).map(|i| format!("c{i}")).collect();
    let mut delta = Vec::with_capacity(n * alphabet.len());
    for q in &states {
        for a in alphabet {
            let mut inc = Vec::new();
            let mut dec = Vec::new();
            for c in &counters {
                match rng.random_range(0..3) {
                    0 => inc.push(c.clone()),
                    1 => dec.push(c.clone()),
                    _ => {}
                }
            }
            delta.push(Transition {
                from: q.clone(),
                symbol: a.clone(),
                to: states[rng.random_range(0..n)].clone(),
                inc,
                dec,
            });
        }
    }
    let phi = random_phi(rng, &counters, phi_depth);
    CountingAutomaton {
        initial: states[0].clone(),
        states,
        counters,
        alphabet: alphabet.to_vec(),
        delta,
        phi,
    }
}
