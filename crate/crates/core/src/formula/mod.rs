//! Formulas of linear temporal logic extended with the domination operator `<<`.
//!
//! The core syntax tree has six constructors. Every derived connective
//! (`|`, `->`, `true`, `false`, `F`, `G`, `~`) is expanded into the core
//! constructors when it is built, so evaluators only ever see six cases.

mod parser;
mod render;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::Rng;

pub use parser::{parse, ParseError};
pub use render::render;

/// Tokens that may never be used as proposition names.
pub const RESERVED_WORDS: [&str; 6] = ["X", "U", "F", "G", "true", "false"];

/// Name of the proposition used to expand `true` into `p | !p`.
pub const TOP_PROPOSITION: &str = "p";

/// Error raised when a string is not a valid proposition name.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PropositionError {
    #[error("`{0}` is a reserved word and cannot name a proposition")]
    Reserved(String),
    #[error("`{0}` is not a valid proposition name (expected [a-z][a-zA-Z0-9_]*)")]
    Invalid(String),
}

/// An atomic proposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Proposition(String);

impl Proposition {
    pub fn new(name: impl Into<String>) -> Result<Self, PropositionError> {
        let name = name.into();
        if RESERVED_WORDS.contains(&name.as_str()) {
            return Err(PropositionError::Reserved(name));
        }
        if !is_identifier(&name) {
            return Err(PropositionError::Invalid(name));
        }
        Ok(Proposition(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Core abstract syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Proposition),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    /// `a << b`: `a` is dominated by `b`.
    DominatedBy(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(p: Proposition) -> Self {
        Formula::Atom(p)
    }

    /// Atom from a name that is known to be valid. Panics otherwise.
    pub fn var(name: &str) -> Self {
        Formula::Atom(Proposition::new(name).expect("invalid proposition name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn dominated_by(a: Formula, b: Formula) -> Self {
        Formula::DominatedBy(Box::new(a), Box::new(b))
    }

    /// `a | b`, stored as `!(!a & !b)`.
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    /// `a -> b`, stored as `!a | b`.
    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::or(Formula::not(a), b)
    }

    /// `true`, stored as `p | !p`.
    pub fn top() -> Self {
        let p = Formula::var(TOP_PROPOSITION);
        Formula::or(p.clone(), Formula::not(p))
    }

    /// `false`, stored as `!true`.
    pub fn bottom() -> Self {
        Formula::not(Formula::top())
    }

    /// `F b`, stored as `true U b`.
    pub fn eventually(b: Formula) -> Self {
        Formula::until(Formula::top(), b)
    }

    /// `G b`, stored as `!F !b`.
    pub fn always(b: Formula) -> Self {
        Formula::not(Formula::eventually(Formula::not(b)))
    }

    /// `a ~ b`, stored as `!(a << b) & !(b << a)`.
    pub fn similar(a: Formula, b: Formula) -> Self {
        Formula::and(
            Formula::not(Formula::dominated_by(a.clone(), b.clone())),
            Formula::not(Formula::dominated_by(b, a)),
        )
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Not(a) | Formula::Next(a) => vec![a],
            Formula::And(a, b) | Formula::Until(a, b) | Formula::DominatedBy(a, b) => vec![a, b],
        }
    }

    /// Height of the tree; atoms have depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// All distinct subformulas, children before parents. The last element is `self`.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        collect_postorder(self, &mut seen, &mut out);
        out.into_iter().cloned().collect()
    }

    pub fn atoms(&self) -> BTreeSet<Proposition> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Atom(p) => {
                    out.insert(p.clone());
                }
                _ => stack.extend(f.children()),
            }
        }
        out
    }
}

fn collect_postorder<'a>(
    f: &'a Formula,
    seen: &mut HashSet<&'a Formula>,
    out: &mut Vec<&'a Formula>,
) {
    if seen.contains(f) {
        return;
    }
    for c in f.children() {
        collect_postorder(c, seen, out);
    }
    seen.insert(f);
    out.push(f);
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Uniformly shaped random core formula of depth at most `max_depth`.
///
/// Leaves are drawn from `atoms`, which must be nonempty.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    atoms: &[Proposition],
    max_depth: usize,
) -> Formula {
    assert!(!atoms.is_empty(), "random_formula needs at least one atom");
    if max_depth == 0 || rng.random_bool(0.25) {
        return Formula::Atom(atoms[rng.random_range(0..atoms.len())].clone());
    }
    let d = max_depth - 1;
    match rng.random_range(0..5) {
        0 => Formula::not(random_formula(rng, atoms, d)),
        1 => Formula::and(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        2 => Formula::next(random_formula(rng, atoms, d)),
        3 => Formula::until(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
        _ => Formula::dominated_by(random_formula(rng, atoms, d), random_formula(rng, atoms, d)),
    }
}
