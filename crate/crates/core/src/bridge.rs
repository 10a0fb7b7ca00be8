//! Sampling harness tying the logic to counting automata.
//!
//! Every check here is refutation by random lasso words: a report either
//! carries a concrete counterexample or says that none was found among the
//! sampled words. Nothing here proves equivalence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::counting::{accepts, complement, l_omega_automaton, CountingAutomaton, CountingError};
use crate::formula::{parse, Formula, Proposition};
use crate::lasso::{random_lasso_with, LassoError, LassoWord, Letter};
use crate::semantics::{holds, LabelTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BridgeError {
    #[error("letter {0} has no symbol in the mapping")]
    Unmapped(Letter),
    #[error("sample spec: {0}")]
    BadSpec(&'static str),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error("mapping line {line}: {message}")]
    Mapping { line: usize, message: String },
}

/// How random lasso words are drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpec {
    pub alphabet: BTreeSet<Proposition>,
    pub max_stem: usize,
    pub max_period: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    /// Alphabet `{p, q}`, stems and loops up to 6, 1000 samples, seed 0.
    fn default() -> Self {
        SampleSpec {
            alphabet: ["p", "q"].iter().map(|n| Proposition::new(*n).unwrap()).collect(),
            max_stem: 6,
            max_period: 6,
            samples: 1000,
            seed: 0,
        }
    }
}

impl SampleSpec {
    pub fn with_alphabet(mut self, alphabet: BTreeSet<Proposition>) -> Self {
        self.alphabet = alphabet;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), BridgeError> {
        if self.samples == 0 {
            return Err(BridgeError::BadSpec("samples must be at least 1"));
        }
        if self.max_period == 0 {
            return Err(BridgeError::BadSpec("max_period must be at least 1"));
        }
        Ok(())
    }

    /// The sampled words, in trial order. Deterministic in the spec.
    pub fn words(&self) -> impl Iterator<Item = LassoWord> + '_ {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.samples).map(move |_| random_lasso_with(&mut rng, &self.alphabet, self.max_stem, self.max_period))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NoCounterexampleFound,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: LassoWord,
    pub position: usize,
    pub details: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}: {}", self.word, self.position, self.details)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Number of words examined; stops at the first counterexample.
    pub trials: usize,
}

impl CheckReport {
    fn clean(trials: usize) -> Self {
        CheckReport { verdict: Verdict::NoCounterexampleFound, witness: None, trials }
    }

    fn refuted(trials: usize, witness: Witness) -> Self {
        CheckReport { verdict: Verdict::Counterexample, witness: Some(witness), trials }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::NoCounterexampleFound
    }
}

fn run_trials(
    spec: &SampleSpec,
    mut check: impl FnMut(&LassoWord) -> Result<Option<(usize, String)>, BridgeError>,
) -> Result<CheckReport, BridgeError> {
    spec.validate()?;
    for (n, word) in spec.words().enumerate() {
        if let Some((position, details)) = check(&word)? {
            return Ok(CheckReport::refuted(n + 1, Witness { word, position, details }));
        }
    }
    Ok(CheckReport::clean(spec.samples))
}

/// Compares `f` and `g` at every position `0..s+p` of each sampled word.
pub fn check_equivalent(f: &Formula, g: &Formula, spec: &SampleSpec) -> Result<CheckReport, BridgeError> {
    run_trials(spec, |w| {
        let mut t = LabelTable::new(w);
        t.ensure(w, f);
        t.ensure(w, g);
        let (rf, rg) = (t.row(f).unwrap(), t.row(g).unwrap());
        Ok((0..w.span()).find(|&i| rf[i] != rg[i]).map(|i| {
            (i, format!("`{f}` is {} but `{g}` is {}", rf[i], rg[i]))
        }))
    })
}

/// Looks for a sampled word and position where `f` holds.
pub fn check_unsatisfiable(f: &Formula, spec: &SampleSpec) -> Result<CheckReport, BridgeError> {
    run_trials(spec, |w| {
        let t = crate::semantics::label(w, f);
        let row = t.row(f).unwrap();
        Ok(row.iter().position(|&v| v).map(|i| (i, format!("`{f}` holds"))))
    })
}

/// Explicit translation from letters to automaton symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LetterMapping(BTreeMap<Letter, String>);

impl LetterMapping {
    pub fn new(entries: impl IntoIterator<Item = (Letter, String)>) -> Self {
        LetterMapping(entries.into_iter().collect())
    }

    /// `{p} -> a`, `{} -> b`.
    pub fn standard() -> Self {
        LetterMapping::new([(Letter::of(&["p"]), "a".to_string()), (Letter::empty(), "b".to_string())])
    }

    pub fn get(&self, l: &Letter) -> Option<&str> {
        self.0.get(l).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &str)> {
        self.0.iter().map(|(l, s)| (l, s.as_str()))
    }

    /// Parses lines of the form `LETTER -> SYMBOL`, e.g. `{p} -> a`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, BridgeError> {
        let mut out = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| BridgeError::Mapping { line: n + 1, message };
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected `LETTER -> SYMBOL`".into()))?;
            let letter = parse_letter(lhs.trim()).map_err(|e| err(e.to_string()))?;
            let symbol = rhs.trim();
            if symbol.is_empty() {
                return Err(err("missing symbol".into()));
            }
            if out.insert(letter.clone(), symbol.to_string()).is_some() {
                return Err(err(format!("letter {letter} mapped twice")));
            }
        }
        Ok(LetterMapping(out))
    }
}

fn parse_letter(text: &str) -> Result<Letter, LassoError> {
    let w = crate::lasso::parse_lasso(&format!(";{text}"))?;
    match w.cycle() {
        [l] => Ok(l.clone()),
        _ => Err(LassoError::MalformedLetter { offset: 0, reason: "expected exactly one letter".into() }),
    }
}

/// Symbol for a letter: its mapped symbol when a mapping is given, otherwise
/// the canonical rendering such as `{p,q}`.
pub fn letter_to_symbol(letter: &Letter, mapping: Option<&LetterMapping>) -> Result<String, BridgeError> {
    match mapping {
        None => Ok(letter.to_string()),
        Some(m) => m
            .get(letter)
            .map(str::to_string)
            .ok_or_else(|| BridgeError::Unmapped(letter.clone())),
    }
}

/// Compares `σ, 0 ⊨ f` with acceptance of the mapped word by `aut`.
pub fn check_agreement(
    f: &Formula,
    aut: &CountingAutomaton,
    mapping: Option<&LetterMapping>,
    spec: &SampleSpec,
) -> Result<CheckReport, BridgeError> {
    aut.validate().map_err(|v| BridgeError::Counting(CountingError::Invalid(v)))?;
    run_trials(spec, |w| {
        let symbols = w.try_map(|l| letter_to_symbol(l, mapping))?;
        let by_formula = holds(w, 0, f);
        let by_automaton = accepts(aut, &symbols)?;
        Ok((by_formula != by_automaton).then(|| {
            (0, format!("formula says {by_formula}, automaton on {symbols} says {by_automaton}"))
        }))
    })
}

/// Outcome of [`separation_demo`].
#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub agreement: CheckReport,
    /// Agreement of the two-sided formula `p ~ !p` with the same automaton.
    /// `!(!p << p)` alone only bounds `#p - #!p` from above.
    pub symmetric: CheckReport,
    pub lemmas: Vec<(String, CheckReport)>,
    pub summary: String,
}

impl SeparationReport {
    pub fn verdict(&self) -> Verdict {
        if self.agreement.passed() && self.lemmas.iter().all(|(_, r)| r.passed()) {
            Verdict::NoCounterexampleFound
        } else {
            Verdict::Counterexample
        }
    }
}

/// The formula `!(!p << p)`, true exactly on words where `#p - #!p` stays
/// bounded over all prefixes.
pub fn bounded_difference_formula() -> Formula {
    Formula::not(Formula::dominated_by(Formula::not(Formula::var("p")), Formula::var("p")))
}

/// `p ~ !p`: `#p - #!p` bounded in both directions.
pub fn balanced_formula() -> Formula {
    let p = Formula::var("p");
    Formula::similar(p.clone(), Formula::not(p))
}

/// The three equivalences relating `<<` to plain LTL, as (name, f, g) where
/// `g = None` means "f is unsatisfiable".
pub fn lemma_checks() -> Vec<(&'static str, Formula, Option<Formula>)> {
    let f = |t: &str| parse(t).expect("built-in formula parses");
    vec![
        ("true ~ p  ==  F G p", f("true ~ p"), Some(f("F G p"))),
        ("p << true  ==  G F !p", f("p << true"), Some(f("G F !p"))),
        ("true << p  unsatisfiable", f("true << p"), None),
    ]
}

/// Samples agreement between `!(!p << p)` and the bounded-difference
/// automaton (letters `{p} -> a`, `{} -> b`, words over `{p}` only), plus the
/// three equivalences from [`lemma_checks`] over `spec.alphabet`.
pub fn separation_demo(spec: &SampleSpec) -> Result<SeparationReport, BridgeError> {
    separation_demo_with(spec, &l_omega_automaton())
}

/// [`separation_demo`] against an arbitrary automaton over `{a, b}`.
pub fn separation_demo_with(spec: &SampleSpec, aut: &CountingAutomaton) -> Result<SeparationReport, BridgeError> {
    let single = spec.clone().with_alphabet(bounded_difference_formula().atoms());
    let mapping = LetterMapping::standard();
    let agreement = check_agreement(&bounded_difference_formula(), aut, Some(&mapping), &single)?;
    let symmetric = check_agreement(&balanced_formula(), aut, Some(&mapping), &single)?;
    let mut lemmas = Vec::new();
    for (name, f, g) in lemma_checks() {
        let report = match g {
            Some(g) => check_equivalent(&f, &g, spec)?,
            None => check_unsatisfiable(&f, spec)?,
        };
        lemmas.push((name.to_string(), report));
    }
    let mut summary = String::new();
    if agreement.passed() {
        summary.push_str(&format!(
            "`{}` agreed with the bounded-difference counting automaton on all {} sampled words.\n",
            bounded_difference_formula(),
            agreement.trials
        ));
    } else {
        summary.push_str(&format!(
            "`{}` disagreed with the automaton: {}\n",
            bounded_difference_formula(),
            agreement.witness.as_ref().expect("counterexample has a witness")
        ));
    }
    match &symmetric.witness {
        None => summary.push_str(&format!(
            "`{}` agreed with the automaton on all {} sampled words.\n",
            balanced_formula(),
            symmetric.trials
        )),
        Some(w) => summary.push_str(&format!("`{}` disagreed with the automaton: {w}\n", balanced_formula())),
    }
    for (name, r) in &lemmas {
        match &r.witness {
            None => summary.push_str(&format!("{name}: no counterexample in {} words\n", r.trials)),
            Some(w) => summary.push_str(&format!("{name}: counterexample {w}\n")),
        }
    }
    summary.push_str(
        "That this language is not omega-regular (hence not LTL-definable) is a known \
         result and is not re-checked by sampling.\n",
    );
    Ok(SeparationReport { agreement, symmetric, lemmas, summary })
}

/// A deliberately wrong automaton for mutation checks: the bounded-difference
/// automaton with its acceptance condition negated.
pub fn mutated_l_omega_automaton() -> CountingAutomaton {
    complement(&l_omega_automaton())
}
