use std::collections::{BTreeMap, HashMap};

use super::{by_counter, CountingAutomaton, CountingError, Direction};
use crate::lasso::SymbolWord;

/// Counter values, keyed by counter name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CounterValuation(BTreeMap<String, i64>);

impl CounterValuation {
    /// The initial valuation: every counter at zero.
    pub fn zero(counters: &[String]) -> Self {
        CounterValuation(counters.iter().map(|c| (c.clone(), 0)).collect())
    }

    pub fn get(&self, counter: &str) -> Option<i64> {
        self.0.get(counter).copied()
    }

    pub fn set(&mut self, counter: &str, value: i64) {
        self.0.insert(counter.to_string(), value);
    }

    pub(crate) fn add(&mut self, counter: &str, delta: i64) -> Result<(), CountingError> {
        let slot = self.0.entry(counter.to_string()).or_insert(0);
        *slot = slot
            .checked_add(delta)
            .ok_or_else(|| CountingError::CounterOverflow(counter.to_string()))?;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// One configuration of a run: the state reached, the loop phase of the
/// next letter to be read, and the counter values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub state: String,
    pub phase: usize,
    pub valuation: CounterValuation,
}

/// Whether a counter is unbounded above (`c+`) and below (`c-`) along the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Boundedness {
    pub pos_unbounded: bool,
    pub neg_unbounded: bool,
}

/// The eventual cycle of the unique run on a lasso.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunAnalysis {
    /// Configurations at times `0..=cycle_start + cycle_length`. The last one
    /// repeats the (state, phase) pair at `cycle_start`.
    pub visited: Vec<Configuration>,
    pub cycle_start: usize,
    pub cycle_length: usize,
    /// Net change of each counter over one cycle.
    pub drift: BTreeMap<String, i64>,
    pub classification: BTreeMap<String, Boundedness>,
}

impl RunAnalysis {
    pub fn holds(&self, counter: &str, dir: Direction) -> bool {
        self.classification.get(counter).is_some_and(|b| match dir {
            Direction::Plus => b.pos_unbounded,
            Direction::Minus => b.neg_unbounded,
        })
    }
}

/// Simulates the run on `w` until a (state, loop phase) pair repeats.
///
/// From the first repetition on, the run repeats the same cycle forever and
/// each counter moves by exactly its drift per cycle, while staying within
/// `cycle_length` of the cycle-entry value in between. So a counter is
/// unbounded above iff its drift is positive, and below iff it is negative.
pub fn analyze_run(aut: &CountingAutomaton, w: &SymbolWord) -> Result<RunAnalysis, CountingError> {
    let compiled = aut.compile()?;
    let word = w.try_map(|s| compiled.symbol(s))?;

    let k = aut.counters.len();
    let mut state = compiled.initial;
    let mut values = vec![0i64; k];
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut trace: Vec<(usize, usize, Vec<i64>)> = Vec::new();

    let mut time = 0usize;
    let cycle_start = loop {
        let phase = w.canonical_index(time);
        if let Some(&t) = seen.get(&(state, phase)) {
            trace.push((state, phase, values.clone()));
            break t;
        }
        seen.insert((state, phase), time);
        trace.push((state, phase, values.clone()));

        let (next, effects) = &compiled.table[state][*word.letter_at(time)];
        for &(c, d) in effects {
            values[c] = values[c]
                .checked_add(d)
                .ok_or_else(|| CountingError::CounterOverflow(aut.counters[c].clone()))?;
        }
        state = *next;
        time += 1;
    };
    let cycle_length = time - cycle_start;

    let entry = &trace[cycle_start].2;
    let mut drift = Vec::with_capacity(k);
    for c in 0..k {
        let d = values[c]
            .checked_sub(entry[c])
            .ok_or_else(|| CountingError::CounterOverflow(aut.counters[c].clone()))?;
        drift.push(d);
    }
    let classification = drift.iter().map(|&d| Boundedness {
        pos_unbounded: d > 0,
        neg_unbounded: d < 0,
    });

    let visited = trace
        .into_iter()
        .map(|(q, phase, vals)| Configuration {
            state: aut.states[q].clone(),
            phase,
            valuation: CounterValuation(by_counter(aut, vals)),
        })
        .collect();

    Ok(RunAnalysis {
        visited,
        cycle_start,
        cycle_length,
        drift: by_counter(aut, drift.iter().copied()),
        classification: by_counter(aut, classification),
    })
}

/// Whether the unique run of `aut` on `w` satisfies the acceptance condition.
pub fn accepts(aut: &CountingAutomaton, w: &SymbolWord) -> Result<bool, CountingError> {
    let run = analyze_run(aut, w)?;
    Ok(aut.phi.eval(&|c, d| run.holds(c, d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{l_omega_automaton, random_automaton, AcceptanceFormula, Transition};
    use crate::lasso::{parse_symbol_word, Lasso};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sw(text: &str) -> SymbolWord {
        parse_symbol_word(text).unwrap()
    }

    #[test]
    fn l_omega_drift_examples() {
        let lw = l_omega_automaton();
        let r = analyze_run(&lw, &sw(";ab")).unwrap();
        assert_eq!(r.drift["c0"], 0);
        assert_eq!(r.classification["c0"], Boundedness::default());

        let r = analyze_run(&lw, &sw(";a")).unwrap();
        assert_eq!(r.drift["c0"], 1);
        assert!(r.classification["c0"].pos_unbounded && !r.classification["c0"].neg_unbounded);

        let r = analyze_run(&lw, &sw(";b")).unwrap();
        assert_eq!(r.drift["c0"], -1);
        assert!(r.classification["c0"].neg_unbounded);
    }

    #[test]
    fn l_omega_acceptance_examples() {
        let lw = l_omega_automaton();
        assert!(accepts(&lw, &sw(";ab")).unwrap());
        assert!(!accepts(&lw, &sw(";a")).unwrap());
        assert!(accepts(&lw, &sw("b;ab")).unwrap());
        assert!(!accepts(&lw, &sw(";abb")).unwrap());
    }

    #[test]
    fn unknown_symbol_is_an_error() {
        assert_eq!(
            accepts(&l_omega_automaton(), &sw(";ac")),
            Err(CountingError::UnknownSymbol("c".into()))
        );
    }

    #[test]
    fn invalid_automaton_is_rejected() {
        let mut a = l_omega_automaton();
        a.delta.pop();
        assert!(matches!(accepts(&a, &sw(";a")), Err(CountingError::Invalid(_))));
    }

    #[test]
    fn cycle_is_found_in_the_state_phase_graph() {
        // two states alternating on a period-1 loop: cycle length 2
        let a = CountingAutomaton {
            states: vec!["x".into(), "y".into()],
            counters: vec!["c".into()],
            alphabet: vec!["a".into()],
            initial: "x".into(),
            delta: vec![
                Transition { from: "x".into(), symbol: "a".into(), to: "y".into(), inc: vec!["c".into()], dec: vec![] },
                Transition { from: "y".into(), symbol: "a".into(), to: "x".into(), inc: vec![], dec: vec!["c".into()] },
            ],
            phi: AcceptanceFormula::plus("c"),
        };
        let r = analyze_run(&a, &sw("aaa;a")).unwrap();
        assert_eq!(r.cycle_length, 2);
        assert_eq!(r.drift["c"], 0);
        assert_eq!(r.visited.len(), r.cycle_start + r.cycle_length + 1);
        let last = r.visited.last().unwrap();
        let entry = &r.visited[r.cycle_start];
        assert_eq!((&last.state, last.phase), (&entry.state, entry.phase));
    }

    // Independent check of the classification: simulate far beyond the cycle
    // with `step` and compare the observed extremes against the drift claim.
    #[test]
    fn classification_matches_long_simulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alphabet = vec!["a".to_string(), "b".to_string()];
        for _ in 0..100 {
            let aut = random_automaton(&mut rng, 4, 2, &alphabet, 3);
            let w = Lasso::random_with(&mut rng, 6, 6, |r| {
                use rand::Rng;
                alphabet[r.random_range(0..2)].clone()
            });
            let run = analyze_run(&aut, &w).unwrap();
            let s = w.stem_len();
            let p = w.period();
            let q_count = aut.states.len();
            assert!(run.cycle_start <= q_count * (s + p));
            assert!(run.cycle_length <= q_count * p);
            assert_eq!(run.cycle_length % p, 0);

            let horizon = run.cycle_start + 40 * run.cycle_length;
            let mut state = aut.initial.clone();
            let mut v = CounterValuation::zero(&aut.counters);
            let mut at_cycle = Vec::new();
            for t in 0..=horizon {
                if t >= run.cycle_start && (t - run.cycle_start).is_multiple_of(run.cycle_length) {
                    at_cycle.push(v.clone());
                }
                let (q, nv) = aut.step(&state, &v, w.letter_at(t)).unwrap();
                state = q;
                v = nv;
            }
            for c in &aut.counters {
                let first = at_cycle[0].get(c).unwrap();
                let last = at_cycle.last().unwrap().get(c).unwrap();
                let laps = (at_cycle.len() - 1) as i64;
                assert_eq!(last - first, laps * run.drift[c]);
            }
        }
    }

    #[test]
    fn analysis_is_deterministic() {
        let lw = l_omega_automaton();
        let w = sw("ba;abb");
        assert_eq!(analyze_run(&lw, &w).unwrap(), analyze_run(&lw, &w).unwrap());
    }
}
