use super::Formula;

// Binding strength, loosest to tightest. `->` and `|` never appear in the
// core tree, so the renderer only needs these levels.
const AND: u8 = 2;
const DOM: u8 = 3;
const UNTIL: u8 = 4;
const UNARY: u8 = 5;
const ATOM: u8 = 6;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Atom(_) => ATOM,
        Formula::Not(_) | Formula::Next(_) => UNARY,
        Formula::Until(..) => UNTIL,
        Formula::DominatedBy(..) => DOM,
        Formula::And(..) => AND,
    }
}

/// Renders a core formula with the fewest parentheses that still re-parse
/// to the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Atom(p) => out.push_str(p.name()),
        Formula::Not(a) => {
            out.push('!');
            write_at(a, UNARY, out);
        }
        Formula::Next(a) => {
            out.push_str("X ");
            write_at(a, UNARY, out);
        }
        // `U` is right-associative
        Formula::Until(a, b) => {
            write_at(a, UNARY, out);
            out.push_str(" U ");
            write_at(b, UNTIL, out);
        }
        // `<<` is non-associative: both sides must bind tighter
        Formula::DominatedBy(a, b) => {
            write_at(a, UNTIL, out);
            out.push_str(" << ");
            write_at(b, UNTIL, out);
        }
        // `&` chains to the left
        Formula::And(a, b) => {
            write_at(a, AND, out);
            out.push_str(" & ");
            write_at(b, DOM, out);
        }
    }
}

fn write_at(f: &Formula, min_level: u8, out: &mut String) {
    if level(f) < min_level {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}
