//! Brute-force reference evaluator.
//!
//! Works on raw positions of the infinite word and never consults label
//! tables or the canonical index. Until scans for a witness up to a horizon of
//! `laps + 1` loop lengths past `max(i, s)`; any witness that exists appears
//! within one lap of that point. Domination counts positions explicitly over
//! `laps` full loops and compares the counts at both ends.

use std::collections::HashMap;

use crate::formula::Formula;
use crate::lasso::LassoWord;

struct Oracle<'a> {
    word: &'a LassoWord,
    laps: usize,
    memo: HashMap<(*const Formula, usize), bool>,
}

impl Oracle<'_> {
    fn eval(&mut self, f: &Formula, i: usize) -> bool {
        let key = (f as *const Formula, i);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match f {
            Formula::Atom(p) => self.word.letter_at(i).contains(p),
            Formula::Not(a) => !self.eval(a, i),
            Formula::And(a, b) => self.eval(a, i) && self.eval(b, i),
            Formula::Next(a) => self.eval(a, i + 1),
            Formula::Until(a, b) => {
                let horizon = i.max(self.word.stem_len()) + (self.laps + 1) * self.word.period();
                let mut found = false;
                for j in i..=horizon {
                    if self.eval(b, j) {
                        found = true;
                        break;
                    }
                    if !self.eval(a, j) {
                        break;
                    }
                }
                found
            }
            Formula::DominatedBy(a, b) => {
                let p = self.word.period();
                let first = i.max(self.word.stem_len()) + p - 1;
                let last = first + self.laps * p;
                let d_first = self.difference(a, b, i, first);
                let d_last = self.difference(a, b, i, last);
                d_last - d_first > 0
            }
        };
        self.memo.insert(key, v);
        v
    }

    // card(B over [i, j]) - card(A over [i, j])
    fn difference(&mut self, a: &Formula, b: &Formula, i: usize, j: usize) -> i64 {
        let mut d = 0i64;
        for k in i..=j {
            d += i64::from(self.eval(b, k)) - i64::from(self.eval(a, k));
        }
        d
    }
}

/// Evaluates `f` at position `i` of `w` by direct scanning. `laps` must be at least 2.
pub fn oracle_holds(w: &LassoWord, i: usize, f: &Formula, laps: usize) -> bool {
    assert!(laps >= 2, "oracle needs at least two laps");
    let mut o = Oracle {
        word: w,
        laps,
        memo: HashMap::new(),
    };
    o.eval(f, i)
}
