//! Truth of formulas on lasso words.
//!
//! Every formula's truth at position `i` depends only on the suffix starting
//! at `i`, and suffixes at `k` and `k + p` coincide once `k` is past the stem.
//! A label table therefore stores one truth vector per subformula over the
//! `s + p` canonical positions and reads any other position through
//! [`Lasso::canonical_index`].
//!
//! `a << b` asks whether `#b - #a` over the interval `[i, j]` grows without
//! bound as `j` increases. Past the stem that difference changes by the same
//! amount on every lap of the loop, so it is unbounded exactly when the
//! per-lap drift is positive. The answer does not depend on `i`.

mod oracle;

use std::collections::HashMap;

use crate::formula::Formula;
use crate::lasso::{Lasso, LassoWord};

pub use oracle::oracle_holds;

/// Cardinality of `{k | i <= k <= j, f holds at k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalCount(pub u64);

impl IntervalCount {
    pub fn value(self) -> u64 {
        self.0
    }
}

/// Per-subformula truth vectors over canonical positions `0..s+p`.
#[derive(Debug, Clone)]
pub struct LabelTable {
    stem_len: usize,
    period: usize,
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
    rows: Vec<Vec<bool>>,
}

impl LabelTable {
    pub fn new(w: &LassoWord) -> Self {
        LabelTable {
            stem_len: w.stem_len(),
            period: w.period(),
            formulas: Vec::new(),
            index: HashMap::new(),
            rows: Vec::new(),
        }
    }

    /// Labels `f` and all of its subformulas that are not yet in the table.
    /// `w` must be the word the table was created for.
    pub fn ensure(&mut self, w: &LassoWord, f: &Formula) {
        debug_assert_eq!((w.stem_len(), w.period()), (self.stem_len, self.period));
        if self.index.contains_key(f) {
            return;
        }
        for sub in f.subformulas() {
            if self.index.contains_key(&sub) {
                continue;
            }
            let row = self.compute_row(w, &sub);
            self.index.insert(sub.clone(), self.rows.len());
            self.formulas.push(sub);
            self.rows.push(row);
        }
    }

    fn compute_row(&self, w: &LassoWord, f: &Formula) -> Vec<bool> {
        let n = self.stem_len + self.period;
        let child = |g: &Formula| -> &[bool] { &self.rows[self.index[g]] };
        match f {
            Formula::Atom(p) => (0..n).map(|k| w.letter_at(k).contains(p)).collect(),
            Formula::Not(a) => child(a).iter().map(|v| !v).collect(),
            Formula::And(a, b) => {
                let (a, b) = (child(a), child(b));
                (0..n).map(|k| a[k] && b[k]).collect()
            }
            Formula::Next(a) => {
                let a = child(a);
                (0..n).map(|k| a[w.successor(k)]).collect()
            }
            Formula::Until(a, b) => until_row(w, child(a), child(b)),
            Formula::DominatedBy(a, b) => {
                let drift = row_drift(self.stem_len, child(a), child(b));
                vec![drift > 0; n]
            }
        }
    }

    pub fn stem_len(&self) -> usize {
        self.stem_len
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Subformulas in the order they were labeled (children first).
    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn row(&self, f: &Formula) -> Option<&[bool]> {
        self.index.get(f).map(|&i| self.rows[i].as_slice())
    }

    fn canonical(&self, i: usize) -> usize {
        if i < self.stem_len {
            i
        } else {
            self.stem_len + (i - self.stem_len) % self.period
        }
    }

    /// Truth of `f` at any position `i`, if `f` has been labeled.
    pub fn value(&self, f: &Formula, i: usize) -> Option<bool> {
        self.row(f).map(|r| r[self.canonical(i)])
    }

    /// Per-lap drift `#b - #a` over the loop positions, if both are labeled.
    pub fn drift(&self, a: &Formula, b: &Formula) -> Option<i64> {
        Some(row_drift(self.stem_len, self.row(a)?, self.row(b)?))
    }
}

fn row_drift(stem_len: usize, a: &[bool], b: &[bool]) -> i64 {
    a[stem_len..]
        .iter()
        .zip(&b[stem_len..])
        .map(|(&a, &b)| i64::from(b) - i64::from(a))
        .sum()
}

// Least solution of `u[k] = b[k] || (a[k] && u[succ k])` on the stem+loop graph.
fn until_row(w: &LassoWord, a: &[bool], b: &[bool]) -> Vec<bool> {
    let s = w.stem_len();
    let n = w.span();
    let mut u = vec![false; n];
    // Two backward laps over the loop settle every loop position: after the
    // first lap the loop entry is final, and the second lap propagates it.
    for _ in 0..2 {
        for k in (s..n).rev() {
            u[k] = b[k] || (a[k] && u[w.successor(k)]);
        }
    }
    for k in (0..s).rev() {
        u[k] = b[k] || (a[k] && u[k + 1]);
    }
    u
}

/// Labels every subformula of `f` on `w`.
pub fn label(w: &LassoWord, f: &Formula) -> LabelTable {
    let mut t = LabelTable::new(w);
    t.ensure(w, f);
    t
}

/// `σ, i ⊨ f`.
pub fn holds(w: &LassoWord, i: usize, f: &Formula) -> bool {
    label(w, f).value(f, i).expect("formula was labeled")
}

/// Net per-lap change of `#b - #a` over the loop positions of `w`.
pub fn loop_drift(w: &LassoWord, a: &Formula, b: &Formula) -> i64 {
    let mut t = LabelTable::new(w);
    t.ensure(w, a);
    t.ensure(w, b);
    t.drift(a, b).expect("both formulas were labeled")
}

/// Number of positions in `[i, j]` where `f` holds; zero when `j < i`.
pub fn count_satisfying(w: &LassoWord, f: &Formula, i: usize, j: usize) -> IntervalCount {
    if j < i {
        return IntervalCount(0);
    }
    let t = label(w, f);
    let row = t.row(f).expect("formula was labeled");
    IntervalCount(prefix_count(w, row, j + 1) - prefix_count(w, row, i))
}

// Number of positions in `[0, n)` marked true, using periodicity past the stem.
fn prefix_count<T>(w: &Lasso<T>, row: &[bool], n: usize) -> u64 {
    let s = w.stem_len();
    let p = w.period();
    let ones = |r: &[bool]| r.iter().filter(|&&v| v).count() as u64;
    if n <= s {
        return ones(&row[..n]);
    }
    let m = n - s;
    ones(&row[..s]) + (m / p) as u64 * ones(&row[s..]) + ones(&row[s..s + m % p])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::lasso::parse_lasso;

    fn w(text: &str) -> LassoWord {
        parse_lasso(text).unwrap()
    }
    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    // Independent count: direct per-position scan with the oracle.
    fn scan_count(w: &LassoWord, g: &Formula, i: usize, j: usize) -> u64 {
        (i..=j).filter(|&k| oracle_holds(w, k, g, 4)).count() as u64
    }

    #[test]
    fn count_satisfying_examples() {
        assert_eq!(count_satisfying(&w(";{p}"), &f("p"), 0, 4), IntervalCount(5));
        assert_eq!(count_satisfying(&w(";{p}"), &f("!p"), 0, 4), IntervalCount(0));
        // p at odd positions 1, 3, 5
        assert_eq!(scan_count(&w(";{}{p}"), &f("p"), 0, 5), 3);
        assert_eq!(count_satisfying(&w(";{}{p}"), &f("p"), 0, 5), IntervalCount(3));
        assert_eq!(count_satisfying(&w(";{}{p}"), &f("p"), 4, 3), IntervalCount(0));
    }

    #[test]
    fn count_satisfying_matches_scan_far_out() {
        let word = w("{p}{q};{}{p,q}{q}");
        for g in ["p", "q", "X p", "p U q", "G q"] {
            let g = f(g);
            for (i, j) in [(0, 0), (0, 20), (3, 17), (7, 40), (10, 10)] {
                assert_eq!(count_satisfying(&word, &g, i, j).value(), scan_count(&word, &g, i, j));
            }
        }
    }

    #[test]
    fn label_examples() {
        let t = label(&w(";{p}"), &f("G p"));
        assert!(t.row(&f("G p")).unwrap().iter().all(|&v| v));

        let t = label(&w("{};{p}"), &f("F G p"));
        assert!(t.row(&f("F G p")).unwrap().iter().all(|&v| v));

        // per lap: #p = 2, #!p = 1, drift +1
        let word = w(";{}{p}{p}");
        let dom = f("!p << p");
        assert!(oracle_holds(&word, 0, &dom, 10));
        let t = label(&word, &dom);
        assert_eq!(t.row(&dom).unwrap(), &[true, true, true]);
    }

    #[test]
    fn loop_drift_examples() {
        assert_eq!(loop_drift(&w(";{}{p}"), &f("!p"), &f("p")), 0);
        assert_eq!(loop_drift(&w(";{p}"), &f("false"), &f("p")), 1);
        assert_eq!(loop_drift(&w(";{}{p}{p}"), &f("!p"), &f("p")), 1);
        // the stem never contributes
        assert_eq!(loop_drift(&w("{}{}{};{p}"), &f("!p"), &f("p")), 1);
    }

    #[test]
    fn holds_examples() {
        assert!(holds(&w(";{p}"), 0, &f("G p")));
        // drift 0, so `!p << p` fails and its negation holds
        assert!(holds(&w(";{}{p}"), 0, &f("!( !p << p )")));
        assert!(!holds(&w(";{p}"), 0, &f("true << p")));
        assert!(!holds(&w("{p};{}"), 1, &f("F p")));
        assert!(holds(&w("{p};{}"), 0, &f("F p")));
    }

    #[test]
    fn next_wraps_to_loop_start() {
        let word = w("{q};{p}{}");
        let t = label(&word, &f("X p"));
        assert_eq!(t.row(&f("X p")).unwrap(), &[true, false, true]);
        assert!(holds(&word, 101, &f("X X p")));
    }

    #[test]
    fn until_needs_witness_across_wraparound() {
        // q only at the last loop position; p everywhere before it
        let word = w("{p};{p}{p}{q}");
        let t = label(&word, &f("p U q"));
        assert_eq!(t.row(&f("p U q")).unwrap(), &[true, true, true, true]);
        let word = w("{p};{p}{}{q}");
        let t = label(&word, &f("p U q"));
        assert_eq!(t.row(&f("p U q")).unwrap(), &[false, false, false, true]);
    }

    #[test]
    fn table_reuses_shared_subformulas() {
        let word = w(";{p}{q}");
        let mut t = LabelTable::new(&word);
        t.ensure(&word, &f("p & q"));
        let before = t.formulas().len();
        t.ensure(&word, &f("p U q"));
        assert_eq!(t.formulas().len(), before + 1);
        assert_eq!(t.value(&f("p U q"), 7), Some(true));
        assert_eq!(t.value(&f("X p"), 0), None);
    }
}
