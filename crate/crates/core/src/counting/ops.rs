use std::collections::{BTreeSet, HashSet};

use super::{AcceptanceFormula, CountingAutomaton, CountingError, Transition};
use crate::lasso::SymbolWord;

/// Language complement: same machine, negated acceptance condition.
///
/// Each word has exactly one run, so the run satisfies `!phi` exactly when
/// it fails `phi`.
pub fn complement(aut: &CountingAutomaton) -> CountingAutomaton {
    CountingAutomaton {
        phi: AcceptanceFormula::not(aut.phi.clone()),
        ..aut.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    And,
    Or,
}

const LEFT_TAG: &str = "l.";
const RIGHT_TAG: &str = "r.";

fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// Synchronous product with disjoint counters. Left counters are prefixed
/// `l.`, right counters `r.`; product states are named `(left,right)`.
pub fn product(
    left: &CountingAutomaton,
    right: &CountingAutomaton,
    mode: ProductMode,
) -> Result<CountingAutomaton, CountingError> {
    let la: BTreeSet<&String> = left.alphabet.iter().collect();
    let ra: BTreeSet<&String> = right.alphabet.iter().collect();
    if la != ra {
        return Err(CountingError::AlphabetMismatch {
            left: left.alphabet.clone(),
            right: right.alphabet.clone(),
        });
    }
    left.validate().map_err(CountingError::Invalid)?;
    right.validate().map_err(CountingError::Invalid)?;

    let tag_l = |c: &str| format!("{LEFT_TAG}{c}");
    let tag_r = |c: &str| format!("{RIGHT_TAG}{c}");

    let mut states = Vec::with_capacity(left.states.len() * right.states.len());
    let mut names = HashSet::new();
    for p in &left.states {
        for q in &right.states {
            let name = pair_name(p, q);
            if !names.insert(name.clone()) {
                return Err(CountingError::NameCollision(name));
            }
            states.push(name);
        }
    }

    let mut delta = Vec::new();
    for p in &left.states {
        for q in &right.states {
            for a in &left.alphabet {
                let tl = left.transition(p, a).expect("validated");
                let tr = right.transition(q, a).expect("validated");
                delta.push(Transition {
                    from: pair_name(p, q),
                    symbol: a.clone(),
                    to: pair_name(&tl.to, &tr.to),
                    inc: tl.inc.iter().map(|c| tag_l(c)).chain(tr.inc.iter().map(|c| tag_r(c))).collect(),
                    dec: tl.dec.iter().map(|c| tag_l(c)).chain(tr.dec.iter().map(|c| tag_r(c))).collect(),
                });
            }
        }
    }

    let phi_l = left.phi.map_counters(&tag_l);
    let phi_r = right.phi.map_counters(&tag_r);
    let phi = match mode {
        ProductMode::And => AcceptanceFormula::and(phi_l, phi_r),
        ProductMode::Or => AcceptanceFormula::or(phi_l, phi_r),
    };

    Ok(CountingAutomaton {
        states,
        counters: left.counters.iter().map(|c| tag_l(c)).chain(right.counters.iter().map(|c| tag_r(c))).collect(),
        alphabet: left.alphabet.clone(),
        initial: pair_name(&left.initial, &right.initial),
        delta,
        phi,
    })
}

/// One state, one counter `c0` counting `a` up and `b` down, accepting
/// when the counter stays bounded in both directions. Its language is the
/// set of `{a, b}` words whose prefixes keep `#a - #b` bounded.
pub fn l_omega_automaton() -> CountingAutomaton {
    let t = |symbol: &str, inc: &[&str], dec: &[&str]| Transition {
        from: "q".into(),
        symbol: symbol.into(),
        to: "q".into(),
        inc: inc.iter().map(|s| s.to_string()).collect(),
        dec: dec.iter().map(|s| s.to_string()).collect(),
    };
    CountingAutomaton {
        states: vec!["q".into()],
        counters: vec!["c0".into()],
        alphabet: vec!["a".into(), "b".into()],
        initial: "q".into(),
        delta: vec![t("a", &["c0"], &[]), t("b", &[], &["c0"])],
        phi: AcceptanceFormula::and(
            AcceptanceFormula::not(AcceptanceFormula::plus("c0")),
            AcceptanceFormula::not(AcceptanceFormula::minus("c0")),
        ),
    }
}

/// Decides whether `|#a - #b|` stays bounded over all finite prefixes of `w`
/// by counting letters directly. The stem shifts the difference by a fixed
/// amount; every lap of the loop shifts it by the loop's own `#a - #b`, so
/// the difference is bounded exactly when that per-lap change is zero.
pub fn prefix_count_oracle(w: &SymbolWord) -> Result<bool, CountingError> {
    let weight = |s: &String| match s.as_str() {
        "a" => Ok(1i64),
        "b" => Ok(-1i64),
        other => Err(CountingError::NotOverAB(other.to_string())),
    };
    for s in w.stem() {
        weight(s)?;
    }
    let mut per_lap = 0i64;
    for s in w.cycle() {
        per_lap += weight(s)?;
    }
    Ok(per_lap == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{accepts, random_automaton};
    use crate::lasso::{parse_symbol_word, Lasso};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sw(text: &str) -> SymbolWord {
        parse_symbol_word(text).unwrap()
    }

    #[test]
    fn complement_examples() {
        let c = complement(&l_omega_automaton());
        assert!(accepts(&c, &sw(";a")).unwrap());
        assert!(!accepts(&c, &sw(";ab")).unwrap());
        assert_eq!(c.phi.to_string(), "!(!c0+ & !c0-)");
    }

    #[test]
    fn product_shapes() {
        let lw = l_omega_automaton();
        let p = product(&lw, &complement(&lw), ProductMode::And).unwrap();
        assert_eq!(p.states, vec!["(q,q)".to_string()]);
        assert_eq!(p.counters, vec!["l.c0".to_string(), "r.c0".to_string()]);
        assert_eq!(p.validate(), Ok(()));
        assert_eq!(p.phi.to_string(), "!l.c0+ & !l.c0- & !(!r.c0+ & !r.c0-)");
    }

    #[test]
    fn product_rejects_alphabet_mismatch() {
        let lw = l_omega_automaton();
        let mut other = lw.clone();
        other.alphabet = vec!["a".into(), "c".into()];
        assert!(matches!(
            product(&lw, &other, ProductMode::Or),
            Err(CountingError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn product_detects_state_name_collisions() {
        let mut left = l_omega_automaton();
        let mut right = l_omega_automaton();
        left.states = vec!["a,b".into(), "a".into()];
        right.states = vec!["c".into(), "b,c".into()];
        left.initial = "a".into();
        right.initial = "c".into();
        let retarget = |a: &mut CountingAutomaton| {
            let states = a.states.clone();
            a.delta = states
                .iter()
                .flat_map(|q| ["a", "b"].map(|s| Transition { from: q.clone(), symbol: s.into(), to: q.clone(), inc: vec![], dec: vec![] }))
                .collect();
        };
        retarget(&mut left);
        retarget(&mut right);
        assert!(matches!(
            product(&left, &right, ProductMode::And),
            Err(CountingError::NameCollision(_))
        ));
    }

    #[test]
    fn boolean_laws_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let alphabet = vec!["a".to_string(), "b".to_string()];
        for _ in 0..40 {
            let x = random_automaton(&mut rng, 3, 2, &alphabet, 3);
            let y = random_automaton(&mut rng, 3, 2, &alphabet, 3);
            let both = product(&x, &y, ProductMode::And).unwrap();
            let either = product(&x, &y, ProductMode::Or).unwrap();
            let empty = product(&x, &complement(&x), ProductMode::And).unwrap();
            let full = product(&x, &complement(&x), ProductMode::Or).unwrap();
            let twice = complement(&complement(&x));
            for _ in 0..10 {
                let w = Lasso::random_with(&mut rng, 5, 5, |r| alphabet[r.random_range(0..2)].clone());
                let ax = accepts(&x, &w).unwrap();
                let ay = accepts(&y, &w).unwrap();
                assert_eq!(accepts(&both, &w).unwrap(), ax && ay);
                assert_eq!(accepts(&either, &w).unwrap(), ax || ay);
                assert!(!accepts(&empty, &w).unwrap());
                assert!(accepts(&full, &w).unwrap());
                assert_eq!(accepts(&twice, &w).unwrap(), ax);
            }
        }
    }

    #[test]
    fn l_omega_idempotent_product() {
        let lw = l_omega_automaton();
        let p = product(&lw, &lw, ProductMode::And).unwrap();
        for text in [";ab", ";a", ";abb", "bbb;ab", "a;b"] {
            let w = sw(text);
            assert_eq!(accepts(&p, &w).unwrap(), accepts(&lw, &w).unwrap(), "{text}");
        }
    }

    #[test]
    fn prefix_count_oracle_examples() {
        assert_eq!(prefix_count_oracle(&sw(";ab")), Ok(true));
        assert_eq!(prefix_count_oracle(&sw(";a")), Ok(false));
        assert_eq!(prefix_count_oracle(&sw("bbb;ab")), Ok(true));
        assert_eq!(prefix_count_oracle(&sw(";abb")), Ok(false));
        assert_eq!(
            prefix_count_oracle(&sw(";ac")),
            Err(CountingError::NotOverAB("c".into()))
        );
    }

    #[test]
    fn prepending_a_stem_never_changes_l_omega_membership() {
        let lw = l_omega_automaton();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ab = ["a".to_string(), "b".to_string()];
        for _ in 0..100 {
            let w = Lasso::random_with(&mut rng, 0, 6, |r| ab[r.random_range(0..2)].clone());
            let stem: Vec<String> = (0..rng.random_range(1..8)).map(|_| ab[rng.random_range(0..2)].clone()).collect();
            let longer = Lasso::new(stem, w.cycle().to_vec()).unwrap();
            assert_eq!(accepts(&lw, &w).unwrap(), accepts(&lw, &longer).unwrap());
        }
    }
}
