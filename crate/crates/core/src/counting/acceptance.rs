//! Acceptance conditions: Boolean combinations of `c+` ("c is unbounded
//! above") and `c-` ("c is unbounded below").

use std::fmt;

/// Sign of an atomic acceptance proposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AcceptanceFormula {
    Const(bool),
    /// `c+`
    Plus(String),
    /// `c-`
    Minus(String),
    Not(Box<AcceptanceFormula>),
    And(Box<AcceptanceFormula>, Box<AcceptanceFormula>),
    Or(Box<AcceptanceFormula>, Box<AcceptanceFormula>),
}

impl AcceptanceFormula {
    pub fn plus(c: impl Into<String>) -> Self {
        AcceptanceFormula::Plus(c.into())
    }

    pub fn minus(c: impl Into<String>) -> Self {
        AcceptanceFormula::Minus(c.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Self) -> Self {
        AcceptanceFormula::Not(Box::new(f))
    }

    pub fn and(a: Self, b: Self) -> Self {
        AcceptanceFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        AcceptanceFormula::Or(Box::new(a), Box::new(b))
    }

    /// Conjunction of all items; `true` when empty.
    pub fn all(items: impl IntoIterator<Item = Self>) -> Self {
        items
            .into_iter()
            .reduce(Self::and)
            .unwrap_or(AcceptanceFormula::Const(true))
    }

    /// Disjunction of all items; `false` when empty.
    pub fn any(items: impl IntoIterator<Item = Self>) -> Self {
        items
            .into_iter()
            .reduce(Self::or)
            .unwrap_or(AcceptanceFormula::Const(false))
    }

    /// Evaluates under an interpretation of the atoms.
    pub fn eval(&self, atom: &impl Fn(&str, Direction) -> bool) -> bool {
        match self {
            AcceptanceFormula::Const(b) => *b,
            AcceptanceFormula::Plus(c) => atom(c, Direction::Plus),
            AcceptanceFormula::Minus(c) => atom(c, Direction::Minus),
            AcceptanceFormula::Not(a) => !a.eval(atom),
            AcceptanceFormula::And(a, b) => a.eval(atom) && b.eval(atom),
            AcceptanceFormula::Or(a, b) => a.eval(atom) || b.eval(atom),
        }
    }

    /// Counter names referenced by atoms, in order of first occurrence.
    pub fn counters(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_counters(&mut out);
        out
    }

    fn collect_counters<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            AcceptanceFormula::Const(_) => {}
            AcceptanceFormula::Plus(c) | AcceptanceFormula::Minus(c) => {
                if !out.contains(&c.as_str()) {
                    out.push(c);
                }
            }
            AcceptanceFormula::Not(a) => a.collect_counters(out),
            AcceptanceFormula::And(a, b) | AcceptanceFormula::Or(a, b) => {
                a.collect_counters(out);
                b.collect_counters(out);
            }
        }
    }

    /// Renames every counter.
    pub fn map_counters(&self, f: &impl Fn(&str) -> String) -> Self {
        match self {
            AcceptanceFormula::Const(b) => AcceptanceFormula::Const(*b),
            AcceptanceFormula::Plus(c) => AcceptanceFormula::Plus(f(c)),
            AcceptanceFormula::Minus(c) => AcceptanceFormula::Minus(f(c)),
            AcceptanceFormula::Not(a) => Self::not(a.map_counters(f)),
            AcceptanceFormula::And(a, b) => Self::and(a.map_counters(f), b.map_counters(f)),
            AcceptanceFormula::Or(a, b) => Self::or(a.map_counters(f), b.map_counters(f)),
        }
    }

    fn level(&self) -> u8 {
        match self {
            AcceptanceFormula::Or(..) => 1,
            AcceptanceFormula::And(..) => 2,
            _ => 3,
        }
    }

    fn write(&self, out: &mut String) {
        let sub = |f: &Self, min: u8, out: &mut String| {
            if f.level() < min {
                out.push('(');
                f.write(out);
                out.push(')');
            } else {
                f.write(out);
            }
        };
        match self {
            AcceptanceFormula::Const(b) => out.push_str(if *b { "true" } else { "false" }),
            AcceptanceFormula::Plus(c) => {
                out.push_str(c);
                out.push('+');
            }
            AcceptanceFormula::Minus(c) => {
                out.push_str(c);
                out.push('-');
            }
            AcceptanceFormula::Not(a) => {
                out.push('!');
                sub(a, 3, out);
            }
            AcceptanceFormula::And(a, b) => {
                sub(a, 2, out);
                out.push_str(" & ");
                sub(b, 3, out);
            }
            AcceptanceFormula::Or(a, b) => {
                sub(a, 1, out);
                out.push_str(" | ");
                sub(b, 2, out);
            }
        }
    }
}

impl fmt::Display for AcceptanceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

impl std::str::FromStr for AcceptanceFormula {
    type Err = PhiParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_phi(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("acceptance condition, offset {offset}: {message}")]
pub struct PhiParseError {
    pub offset: usize,
    pub message: String,
}

const SPECIAL: &[char] = &['!', '&', '|', '(', ')'];

/// Whether `name` can appear as a counter in acceptance text.
pub fn is_counter_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || SPECIAL.contains(&c))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Bang,
    And,
    Or,
    LParen,
    RParen,
    Const(bool),
    Atom(String, Direction),
    Eof,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, PhiParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(at, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let single = match c {
            '!' => Some(Tok::Bang),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            it.next();
            out.push((at, t));
            continue;
        }
        let mut word = String::new();
        while let Some(&(_, c)) = it.peek() {
            if c.is_whitespace() || SPECIAL.contains(&c) {
                break;
            }
            word.push(c);
            it.next();
        }
        let tok = match word.as_str() {
            "true" => Tok::Const(true),
            "false" => Tok::Const(false),
            _ => {
                let dir = match word.chars().last() {
                    Some('+') => Direction::Plus,
                    Some('-') => Direction::Minus,
                    _ => {
                        return Err(PhiParseError {
                            offset: at,
                            message: format!("`{word}` must end in `+` or `-`"),
                        })
                    }
                };
                let name = &word[..word.len() - 1];
                if name.is_empty() {
                    return Err(PhiParseError {
                        offset: at,
                        message: "missing counter name".into(),
                    });
                }
                Tok::Atom(name.to_string(), dir)
            }
        };
        out.push((at, tok));
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn error(&self, message: &str) -> PhiParseError {
        PhiParseError {
            offset: self.toks[self.pos].0,
            message: message.to_string(),
        }
    }

    fn disjunction(&mut self) -> Result<AcceptanceFormula, PhiParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.pos += 1;
            lhs = AcceptanceFormula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<AcceptanceFormula, PhiParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.pos += 1;
            lhs = AcceptanceFormula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<AcceptanceFormula, PhiParseError> {
        let tok = self.peek().clone();
        match tok {
            Tok::Bang => {
                self.pos += 1;
                Ok(AcceptanceFormula::not(self.unary()?))
            }
            Tok::Const(b) => {
                self.pos += 1;
                Ok(AcceptanceFormula::Const(b))
            }
            Tok::Atom(name, Direction::Plus) => {
                self.pos += 1;
                Ok(AcceptanceFormula::Plus(name))
            }
            Tok::Atom(name, Direction::Minus) => {
                self.pos += 1;
                Ok(AcceptanceFormula::Minus(name))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("expected `!`, `(`, `true`, `false`, or a counter atom like `c0+`")),
        }
    }
}

/// Parses an acceptance condition such as `!c0+ & !c0-`.
pub fn parse_phi(text: &str) -> Result<AcceptanceFormula, PhiParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.disjunction()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("expected `&`, `|`, or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use AcceptanceFormula as A;

    #[test]
    fn parses_the_bounded_condition() {
        let phi = parse_phi("!c0+ & !c0-").unwrap();
        assert_eq!(phi, A::and(A::not(A::plus("c0")), A::not(A::minus("c0"))));
        assert_eq!(phi.to_string(), "!c0+ & !c0-");
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_phi("a+ | b- & !c+").unwrap(),
            A::or(A::plus("a"), A::and(A::minus("b"), A::not(A::plus("c"))))
        );
        assert_eq!(
            parse_phi("!(a+ | b-)").unwrap().to_string(),
            "!(a+ | b-)"
        );
        assert!(parse_phi("l.c_(q)+").is_err());
        assert_eq!(parse_phi("l.c_q0+ | false").unwrap().counters(), vec!["l.c_q0"]);
    }

    #[test]
    fn errors() {
        assert!(parse_phi("c0").is_err());
        assert!(parse_phi("+").is_err());
        assert!(parse_phi("c0+ &").is_err());
        assert!(parse_phi("(c0+").is_err());
        assert!(parse_phi("c0+ c1+").is_err());
    }

    #[test]
    fn eval_uses_the_interpretation() {
        let phi = parse_phi("!c0+ & !c0-").unwrap();
        assert!(phi.eval(&|_, _| false));
        assert!(!phi.eval(&|_, d| d == Direction::Plus));
        assert!(!A::any([]).eval(&|_, _| true));
        assert!(A::all([]).eval(&|_, _| false));
    }

    fn arb_phi() -> impl Strategy<Value = AcceptanceFormula> {
        let leaf = prop_oneof![
            Just(A::plus("c0")),
            Just(A::minus("c0")),
            Just(A::plus("r.c1")),
            Just(A::Const(true)),
            Just(A::Const(false)),
        ];
        leaf.prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(A::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| A::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| A::or(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(phi in arb_phi()) {
            prop_assert_eq!(parse_phi(&phi.to_string()).unwrap(), phi);
        }
    }
}
