use std::fmt;

use super::{is_identifier, Formula, Proposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{column}: expected one of {}, found {found}", .expected.join(", "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{line}:{column}: `{word}` is a reserved word and cannot be used as a proposition")]
    ReservedWord {
        line: usize,
        column: usize,
        word: String,
    },
    #[error("{line}:{column}: `{word}` is not a valid proposition name (expected [a-z][a-zA-Z0-9_]*)")]
    BadIdentifier {
        line: usize,
        column: usize,
        word: String,
    },
    #[error("{line}:{column}: unexpected character `{ch}`")]
    UnexpectedChar { line: usize, column: usize, ch: char },
    #[error("{line}:{column}: `<<` and `~` do not associate; add parentheses")]
    ChainedDomination { line: usize, column: usize },
}

impl ParseError {
    /// 1-based (line, column) of the error.
    pub fn location(&self) -> (usize, usize) {
        match *self {
            ParseError::Syntax { line, column, .. }
            | ParseError::ReservedWord { line, column, .. }
            | ParseError::BadIdentifier { line, column, .. }
            | ParseError::UnexpectedChar { line, column, .. }
            | ParseError::ChainedDomination { line, column } => (line, column),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Bang,
    Next,
    Eventually,
    Always,
    Until,
    Dom,
    Sim,
    And,
    Or,
    Implies,
    True,
    False,
    Ident(String),
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Bang => "`!`",
            Tok::Next => "`X`",
            Tok::Eventually => "`F`",
            Tok::Always => "`G`",
            Tok::Until => "`U`",
            Tok::Dom => "`<<`",
            Tok::Sim => "`~`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Implies => "`->`",
            Tok::True => "`true`",
            Tok::False => "`false`",
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '!' => Some(Tok::Bang),
            '~' => Some(Tok::Sim),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l0, column: c0 });
            i += 1;
            column += 1;
            continue;
        }
        if c == '<' || c == '-' {
            let (want, tok) = if c == '<' { ('<', Tok::Dom) } else { ('>', Tok::Implies) };
            if chars.get(i + 1) == Some(&want) {
                out.push(Spanned { tok, line: l0, column: c0 });
                i += 2;
                column += 2;
                continue;
            }
            return Err(ParseError::UnexpectedChar { line: l0, column: c0, ch: c });
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            let word: String = chars[start..i].iter().collect();
            let tok = match word.as_str() {
                "X" => Tok::Next,
                "F" => Tok::Eventually,
                "G" => Tok::Always,
                "U" => Tok::Until,
                "true" => Tok::True,
                "false" => Tok::False,
                _ if is_identifier(&word) => Tok::Ident(word),
                _ => {
                    return Err(ParseError::BadIdentifier { line: l0, column: c0, word });
                }
            };
            out.push(Spanned { tok, line: l0, column: c0 });
            continue;
        }
        return Err(ParseError::UnexpectedChar { line: l0, column: c0, ch: c });
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

const OPERAND_START: [&str; 8] = ["`!`", "`X`", "`F`", "`G`", "`true`", "`false`", "identifier", "`(`"];
const BINARY_OPS: [&str; 6] = ["`U`", "`<<`", "`~`", "`&`", "`|`", "`->`"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn syntax_error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        }
    }

    // F ::= F1 [ "->" F ]
    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    // F1 ::= F2 { "|" F2 }
    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    // F2 ::= F3 { "&" F3 }
    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.domination()?;
        while self.eat(&Tok::And) {
            let rhs = self.domination()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    // F3 ::= F4 [ ("<<" | "~") F4 ]
    fn domination(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.until()?;
        let build: fn(Formula, Formula) -> Formula = match self.peek().tok {
            Tok::Dom => Formula::dominated_by,
            Tok::Sim => Formula::similar,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.until()?;
        if matches!(self.peek().tok, Tok::Dom | Tok::Sim) {
            let t = self.peek();
            return Err(ParseError::ChainedDomination { line: t.line, column: t.column });
        }
        Ok(build(lhs, rhs))
    }

    // F4 ::= F5 [ "U" F4 ]
    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            let rhs = self.until()?;
            return Ok(Formula::until(lhs, rhs));
        }
        Ok(lhs)
    }

    // F5 ::= ("!" | "X" | "F" | "G") F5 | "true" | "false" | IDENT | "(" F ")"
    fn unary(&mut self) -> Result<Formula, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Next => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::Eventually => {
                self.bump();
                Ok(Formula::eventually(self.unary()?))
            }
            Tok::Always => {
                self.bump();
                Ok(Formula::always(self.unary()?))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::False => {
                self.bump();
                Ok(Formula::bottom())
            }
            Tok::Ident(name) => {
                self.bump();
                // the lexer only emits identifiers that are valid, non-reserved names
                Ok(Formula::Atom(Proposition(name)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if !self.eat(&Tok::RParen) {
                    let mut expected = BINARY_OPS.to_vec();
                    expected.push("`)`");
                    return Err(self.syntax_error(&expected));
                }
                Ok(inner)
            }
            Tok::Until => Err(ParseError::ReservedWord {
                line: t.line,
                column: t.column,
                word: "U".into(),
            }),
            _ => Err(self.syntax_error(&OPERAND_START)),
        }
    }
}

/// Parses a formula and expands derived connectives into the core syntax.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser { toks: lex(text)?, pos: 0 };
    let f = parser.implication()?;
    if parser.peek().tok != Tok::Eof {
        let mut expected = BINARY_OPS.to_vec();
        expected.push("end of input");
        return Err(parser.syntax_error(&expected));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn until_is_a_core_node() {
        assert_eq!(parse("p U q").unwrap(), Formula::until(p(), q()));
    }

    #[test]
    fn similar_expands_to_two_negated_dominations() {
        let expected = Formula::and(
            Formula::not(Formula::dominated_by(p(), q())),
            Formula::not(Formula::dominated_by(q(), p())),
        );
        assert_eq!(parse("p ~ q").unwrap(), expected);
    }

    #[test]
    fn eventually_always_expansion() {
        let top = Formula::or(p(), Formula::not(p()));
        let expected = Formula::until(
            top.clone(),
            Formula::not(Formula::until(top, Formula::not(p()))),
        );
        assert_eq!(parse("F G p").unwrap(), expected);
    }

    #[test]
    fn derived_connectives() {
        assert_eq!(parse("true").unwrap(), Formula::top());
        assert_eq!(parse("false").unwrap(), Formula::not(Formula::top()));
        assert_eq!(
            parse("p | q").unwrap(),
            Formula::not(Formula::and(Formula::not(p()), Formula::not(q())))
        );
        assert_eq!(
            parse("p -> q").unwrap(),
            Formula::or(Formula::not(p()), q())
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // unary binds tighter than U, U tighter than <<, << tighter than &
        assert_eq!(
            parse("!p U q << X q & p").unwrap(),
            Formula::and(
                Formula::dominated_by(Formula::until(Formula::not(p()), q()), Formula::next(q())),
                p()
            )
        );
        assert_eq!(
            parse("p U q U p").unwrap(),
            Formula::until(p(), Formula::until(q(), p()))
        );
        assert_eq!(
            parse("p & q & p").unwrap(),
            Formula::and(Formula::and(p(), q()), p())
        );
        assert_eq!(
            parse("p -> q -> p").unwrap(),
            Formula::implies(p(), Formula::implies(q(), p()))
        );
        assert_eq!(
            parse("p & q | q & p").unwrap(),
            Formula::or(Formula::and(p(), q()), Formula::and(q(), p()))
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse("!(!p<<p)").unwrap(), parse(" ! ( ! p\n<<\tp ) ").unwrap());
    }

    #[test]
    fn chained_domination_is_rejected() {
        assert!(matches!(
            parse("p << q << p"),
            Err(ParseError::ChainedDomination { line: 1, column: 8 })
        ));
        assert!(matches!(parse("p ~ q << p"), Err(ParseError::ChainedDomination { .. })));
        assert!(parse("(p << q) << p").is_ok());
    }

    #[test]
    fn missing_operand_reports_expected_set() {
        let err = parse("p U").unwrap_err();
        match err {
            ParseError::Syntax { line, column, expected, found } => {
                assert_eq!((line, column), (1, 4));
                assert!(expected.contains(&"identifier".to_string()));
                assert!(expected.contains(&"`(`".to_string()));
                assert_eq!(found, "end of input");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn error_positions_track_lines() {
        let err = parse("p &\n  q )").unwrap_err();
        assert_eq!(err.location(), (2, 5));
        assert!(err.to_string().contains("end of input"));
    }

    #[test]
    fn reserved_and_bad_words() {
        assert!(matches!(parse("p & U"), Err(ParseError::ReservedWord { .. })));
        assert!(matches!(parse("Xp"), Err(ParseError::BadIdentifier { .. })));
        assert!(matches!(parse("P"), Err(ParseError::BadIdentifier { .. })));
        assert!(matches!(parse("p $ q"), Err(ParseError::UnexpectedChar { ch: '$', .. })));
        assert!(matches!(parse("p < q"), Err(ParseError::UnexpectedChar { ch: '<', .. })));
        assert!(matches!(parse("p - q"), Err(ParseError::UnexpectedChar { ch: '-', .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("(p"), Err(ParseError::Syntax { .. })));
    }
}
