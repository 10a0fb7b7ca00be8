//! Ultimately periodic ω-words `stem · cycle^ω`.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Proposition, PropositionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LassoError {
    #[error("the loop of a lasso word must contain at least one letter")]
    EmptyLoop,
    #[error("expected exactly one `;` separating stem and loop")]
    Separator,
    #[error("offset {offset}: malformed letter: {reason}")]
    MalformedLetter { offset: usize, reason: String },
    #[error("offset {offset}: {source}")]
    BadProposition {
        offset: usize,
        source: PropositionError,
    },
    #[error("offset {offset}: unexpected character `{ch}`")]
    UnexpectedChar { offset: usize, ch: char },
}

/// One position of a model: the set of propositions true there.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(BTreeSet<Proposition>);

impl Letter {
    pub fn new(props: impl IntoIterator<Item = Proposition>) -> Self {
        Letter(props.into_iter().collect())
    }

    pub fn empty() -> Self {
        Letter::default()
    }

    /// Letter from names known to be valid. Panics otherwise.
    pub fn of(names: &[&str]) -> Self {
        Letter::new(names.iter().map(|n| Proposition::new(*n).expect("invalid proposition")))
    }

    pub fn contains(&self, p: &Proposition) -> bool {
        self.0.contains(p)
    }

    pub fn props(&self) -> &BTreeSet<Proposition> {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Canonical rendering: sorted names, comma separated, in braces.
impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(p.name())?;
        }
        f.write_str("}")
    }
}

/// An ultimately periodic word over `T`. The cycle is never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso<T> {
    stem: Vec<T>,
    cycle: Vec<T>,
}

/// Lasso over proposition letters; the model class of the logic.
pub type LassoWord = Lasso<Letter>;

/// Lasso over opaque automaton symbols.
pub type SymbolWord = Lasso<String>;

impl<T> Lasso<T> {
    pub fn new(stem: Vec<T>, cycle: Vec<T>) -> Result<Self, LassoError> {
        if cycle.is_empty() {
            return Err(LassoError::EmptyLoop);
        }
        Ok(Lasso { stem, cycle })
    }

    pub fn stem(&self) -> &[T] {
        &self.stem
    }

    pub fn cycle(&self) -> &[T] {
        &self.cycle
    }

    /// `s`, the length of the stem.
    pub fn stem_len(&self) -> usize {
        self.stem.len()
    }

    /// `p`, the length of the loop.
    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// `s + p`: positions `0..span()` represent every position of the word.
    pub fn span(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// Representative of position `i` inside `0..span()`.
    pub fn canonical_index(&self, i: usize) -> usize {
        let s = self.stem.len();
        if i < s {
            i
        } else {
            s + (i - s) % self.cycle.len()
        }
    }

    /// Successor of a canonical index, wrapping from the last loop position to the loop start.
    pub fn successor(&self, k: usize) -> usize {
        if k + 1 < self.span() {
            k + 1
        } else {
            self.stem.len()
        }
    }

    pub fn letter_at(&self, i: usize) -> &T {
        let s = self.stem.len();
        if i < s {
            &self.stem[i]
        } else {
            &self.cycle[(i - s) % self.cycle.len()]
        }
    }

    /// First `n` letters of the infinite word.
    pub fn prefix(&self, n: usize) -> impl Iterator<Item = &T> + '_ {
        (0..n).map(move |i| self.letter_at(i))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Lasso<U> {
        Lasso {
            stem: self.stem.iter().map(&mut f).collect(),
            cycle: self.cycle.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<U, E>(&self, mut f: impl FnMut(&T) -> Result<U, E>) -> Result<Lasso<U>, E> {
        Ok(Lasso {
            stem: self.stem.iter().map(&mut f).collect::<Result<_, _>>()?,
            cycle: self.cycle.iter().map(&mut f).collect::<Result<_, _>>()?,
        })
    }
}

impl<T: Clone> Lasso<T> {
    /// The word read from position `i` on. Past the stem the loop is rotated
    /// and keeps its length.
    pub fn suffix(&self, i: usize) -> Self {
        let s = self.stem.len();
        if i <= s {
            return Lasso {
                stem: self.stem[i..].to_vec(),
                cycle: self.cycle.clone(),
            };
        }
        let shift = (i - s) % self.cycle.len();
        let mut cycle = self.cycle.clone();
        cycle.rotate_left(shift);
        Lasso { stem: Vec::new(), cycle }
    }

    /// Random lasso with stem length uniform in `0..=max_stem` and loop length
    /// uniform in `1..=max_period`.
    pub fn random_with<R: Rng + ?Sized>(
        rng: &mut R,
        max_stem: usize,
        max_period: usize,
        mut letter: impl FnMut(&mut R) -> T,
    ) -> Self {
        assert!(max_period >= 1, "max_period must be at least 1");
        let s = rng.random_range(0..=max_stem);
        let p = rng.random_range(1..=max_period);
        let stem = (0..s).map(|_| letter(rng)).collect();
        let cycle = (0..p).map(|_| letter(rng)).collect();
        Lasso { stem, cycle }
    }
}

impl<T: fmt::Display> fmt::Display for Lasso<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.stem {
            write!(f, "{l}")?;
        }
        f.write_str(";")?;
        for l in &self.cycle {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Uniformly random subset of `alphabet`.
pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, alphabet: &BTreeSet<Proposition>) -> Letter {
    Letter(alphabet.iter().filter(|_| rng.random_bool(0.5)).cloned().collect())
}

/// Random lasso word drawn from an existing generator.
pub fn random_lasso_with<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &BTreeSet<Proposition>,
    max_stem: usize,
    max_period: usize,
) -> LassoWord {
    Lasso::random_with(rng, max_stem, max_period, |r| random_letter(r, alphabet))
}

/// Random lasso word, deterministic in `seed`.
pub fn random_lasso(
    alphabet: &BTreeSet<Proposition>,
    max_stem: usize,
    max_period: usize,
    seed: u64,
) -> LassoWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_lasso_with(&mut rng, alphabet, max_stem, max_period)
}

struct Scanner {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Scanner {
    fn new(text: &str) -> Self {
        Scanner {
            chars: text.char_indices().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |(o, c)| o + c.len_utf8()),
            |(o, _)| *o,
        )
    }

    // assumes the opening `{` is the next non-blank character
    fn letter(&mut self) -> Result<Letter, LassoError> {
        self.peek();
        self.pos += 1;
        let mut props = BTreeSet::new();
        let mut expect_name = true;
        loop {
            let Some((offset, c)) = self.peek() else {
                return Err(LassoError::MalformedLetter {
                    offset: self.offset(),
                    reason: "missing `}`".into(),
                });
            };
            match c {
                '}' if !expect_name || props.is_empty() => {
                    self.pos += 1;
                    return Ok(Letter(props));
                }
                ',' if !expect_name => {
                    self.pos += 1;
                    expect_name = true;
                }
                c if expect_name && (c.is_ascii_alphanumeric() || c == '_') => {
                    let mut name = String::new();
                    while let Some(&(_, c)) = self.chars.get(self.pos) {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            name.push(c);
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    let p = Proposition::new(name)
                        .map_err(|source| LassoError::BadProposition { offset, source })?;
                    props.insert(p);
                    expect_name = false;
                }
                other => {
                    let reason = if expect_name {
                        format!("expected a proposition name, found `{other}`")
                    } else {
                        format!("expected `,` or `}}`, found `{other}`")
                    };
                    return Err(LassoError::MalformedLetter { offset, reason });
                }
            }
        }
    }
}

fn split_lasso(text: &str) -> Result<(&str, &str, usize), LassoError> {
    let mut parts = text.splitn(3, ';');
    let stem = parts.next().unwrap_or("");
    let cycle = parts.next().ok_or(LassoError::Separator)?;
    if parts.next().is_some() {
        return Err(LassoError::Separator);
    }
    Ok((stem, cycle, stem.len() + 1))
}

fn shift_offset(err: LassoError, by: usize) -> LassoError {
    match err {
        LassoError::MalformedLetter { offset, reason } => LassoError::MalformedLetter {
            offset: offset + by,
            reason,
        },
        LassoError::BadProposition { offset, source } => LassoError::BadProposition {
            offset: offset + by,
            source,
        },
        LassoError::UnexpectedChar { offset, ch } => LassoError::UnexpectedChar {
            offset: offset + by,
            ch,
        },
        other => other,
    }
}

fn letters(text: &str) -> Result<Vec<Letter>, LassoError> {
    let mut sc = Scanner::new(text);
    let mut out = Vec::new();
    while let Some((offset, c)) = sc.peek() {
        if c != '{' {
            return Err(LassoError::UnexpectedChar { offset, ch: c });
        }
        out.push(sc.letter()?);
    }
    Ok(out)
}

/// Parses `STEM;LOOP`, each a concatenation of letters such as `{p,q}` or `{}`.
pub fn parse_lasso(text: &str) -> Result<LassoWord, LassoError> {
    let (stem, cycle, at) = split_lasso(text)?;
    let stem = letters(stem)?;
    let cycle = letters(cycle).map_err(|e| shift_offset(e, at))?;
    Lasso::new(stem, cycle)
}

pub fn render_lasso(w: &LassoWord) -> String {
    w.to_string()
}

fn symbols(text: &str) -> Result<Vec<String>, LassoError> {
    let mut sc = Scanner::new(text);
    let mut out = Vec::new();
    while let Some((offset, c)) = sc.peek() {
        if c == '{' {
            out.push(sc.letter()?.to_string());
        } else if c.is_ascii_alphanumeric() || c == '_' {
            out.push(c.to_string());
            sc.pos += 1;
        } else {
            return Err(LassoError::UnexpectedChar { offset, ch: c });
        }
    }
    Ok(out)
}

/// Parses a lasso over automaton symbols. Each symbol is either a single
/// character from `[A-Za-z0-9_]` or a braced letter, which becomes its
/// canonical rendering: `;ab`, `b;ab`, `{p}{};{}`.
pub fn parse_symbol_word(text: &str) -> Result<SymbolWord, LassoError> {
    let (stem, cycle, at) = split_lasso(text)?;
    let stem = symbols(stem)?;
    let cycle = symbols(cycle).map_err(|e| shift_offset(e, at))?;
    Lasso::new(stem, cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> LassoWord {
        parse_lasso(text).unwrap()
    }

    #[test]
    fn letter_at_examples() {
        let a = w("{p};{}");
        assert_eq!(a.letter_at(0), &Letter::of(&["p"]));
        assert_eq!(a.letter_at(7), &Letter::empty());
        let b = w(";{p}{q}");
        assert_eq!(b.letter_at(3), &Letter::of(&["q"]));
    }

    #[test]
    fn suffix_examples() {
        let a = w("{p};{}");
        assert_eq!(a.suffix(0), a);
        assert_eq!(a.suffix(1), w(";{}"));
        let b = w(";{p}{q}");
        assert_eq!(b.suffix(1), w(";{q}{p}"));
        assert_eq!(b.suffix(2), b);
    }

    #[test]
    fn parse_examples() {
        let a = w("{p}{};{q}");
        assert_eq!(a.stem(), &[Letter::of(&["p"]), Letter::empty()]);
        assert_eq!(a.cycle(), &[Letter::of(&["q"])]);
        let b = w(";{p}");
        assert!(b.stem().is_empty());
        assert_eq!(parse_lasso("{p};"), Err(LassoError::EmptyLoop));
    }

    #[test]
    fn letters_are_sets() {
        assert_eq!(w(";{q, p ,p}").cycle()[0], Letter::of(&["p", "q"]));
        assert_eq!(render_lasso(&w(" { q,p } ; { } ")), "{p,q};{}");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_lasso("{p}"), Err(LassoError::Separator));
        assert_eq!(parse_lasso(";{p};{q}"), Err(LassoError::Separator));
        assert!(matches!(parse_lasso(";{p"), Err(LassoError::MalformedLetter { .. })));
        assert!(matches!(parse_lasso(";{p,}"), Err(LassoError::MalformedLetter { .. })));
        assert!(matches!(parse_lasso(";{,p}"), Err(LassoError::MalformedLetter { .. })));
        assert!(matches!(parse_lasso(";{p q}"), Err(LassoError::MalformedLetter { .. })));
        assert!(matches!(
            parse_lasso(";{true}"),
            Err(LassoError::BadProposition { source: PropositionError::Reserved(_), .. })
        ));
        assert!(matches!(
            parse_lasso(";{P}"),
            Err(LassoError::BadProposition { source: PropositionError::Invalid(_), .. })
        ));
        assert_eq!(
            parse_lasso("{p};x"),
            Err(LassoError::UnexpectedChar { offset: 4, ch: 'x' })
        );
    }

    #[test]
    fn symbol_words() {
        let a = parse_symbol_word("b;ab").unwrap();
        assert_eq!(a.stem(), &["b".to_string()]);
        assert_eq!(a.cycle(), &["a".to_string(), "b".to_string()]);
        assert_eq!(a.to_string(), "b;ab");
        let b = parse_symbol_word("{q,p};{}").unwrap();
        assert_eq!(b.stem(), &["{p,q}".to_string()]);
        assert_eq!(b.cycle(), &["{}".to_string()]);
        assert_eq!(parse_symbol_word("ab;"), Err(LassoError::EmptyLoop));
        assert!(matches!(parse_symbol_word(";a-b"), Err(LassoError::UnexpectedChar { ch: '-', .. })));
    }

    fn alphabet() -> BTreeSet<Proposition> {
        ["p", "q"].iter().map(|n| Proposition::new(*n).unwrap()).collect()
    }

    #[test]
    fn random_lasso_is_deterministic_and_bounded() {
        let ab = alphabet();
        assert_eq!(random_lasso(&ab, 5, 5, 42), random_lasso(&ab, 5, 5, 42));
        for seed in 0..50 {
            let a = random_lasso(&ab, 0, 4, seed);
            assert_eq!(a.stem_len(), 0);
            let b = random_lasso(&ab, 4, 1, seed);
            assert_eq!(b.period(), 1);
            let c = random_lasso(&ab, 3, 3, seed);
            assert!(c.stem_len() <= 3 && (1..=3).contains(&c.period()));
        }
    }

    proptest! {
        #[test]
        fn periodicity(seed in any::<u64>(), k in 0usize..64) {
            let a = random_lasso(&alphabet(), 6, 6, seed);
            let k = a.stem_len() + k;
            prop_assert_eq!(a.letter_at(k), a.letter_at(k + a.period()));
        }

        #[test]
        fn suffix_composes(seed in any::<u64>(), i in 0usize..16, j in 0usize..16) {
            let a = random_lasso(&alphabet(), 6, 6, seed);
            let lhs = a.suffix(i).suffix(j);
            let rhs = a.suffix(i + j);
            let n = a.stem_len() + 2 * a.period();
            prop_assert!(lhs.prefix(n).eq(rhs.prefix(n)));
            prop_assert!(a.suffix(i).prefix(n).eq((i..i + n).map(|k| a.letter_at(k))));
            prop_assert_eq!(a.suffix(i).period(), a.period());
        }

        #[test]
        fn render_parse_round_trip(seed in any::<u64>()) {
            let a = random_lasso(&alphabet(), 6, 6, seed);
            prop_assert_eq!(parse_lasso(&render_lasso(&a)).unwrap(), a);
        }
    }
}
