use std::fmt;

use super::Formula;

// Binding strength, larger binds tighter.
const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNTIL: u8 = 5;
const UNARY: u8 = 6;
const ATOM: u8 = 7;

#[derive(Clone, Copy, PartialEq)]
enum Assoc {
    Left,
    Right,
    None,
}

fn level(f: &Formula) -> u8 {
    use Formula::*;
    match f {
        True | False | Atom(_) => ATOM,
        Not(_) | Next(_) | TimedNext(..) | Eventually(_) | Always(_) => UNARY,
        Until(..) | WeakUntil(..) => UNTIL,
        And(..) => AND,
        Or(..) => OR,
        Implies(..) => IMPLIES,
        Iff(..) => IFF,
    }
}

fn write_operand(
    f: &mut fmt::Formatter<'_>,
    child: &Formula,
    parent: u8,
    assoc: Assoc,
    is_left: bool,
) -> fmt::Result {
    let lvl = level(child);
    let needs = lvl < parent
        || (lvl == parent
            && match assoc {
                Assoc::Left => !is_left,
                Assoc::Right => is_left,
                Assoc::None => true,
            });
    if needs {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

fn write_binary(
    f: &mut fmt::Formatter<'_>,
    a: &Formula,
    op: &str,
    b: &Formula,
    lvl: u8,
    assoc: Assoc,
) -> fmt::Result {
    write_operand(f, a, lvl, assoc, true)?;
    write!(f, " {op} ")?;
    write_operand(f, b, lvl, assoc, false)
}

fn write_unary(f: &mut fmt::Formatter<'_>, op: &str, a: &Formula) -> fmt::Result {
    f.write_str(op)?;
    if level(a) < UNARY {
        write!(f, "({a})")
    } else {
        write!(f, "{a}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Atom(a) => f.write_str(a),
            Not(a) => write_unary(f, "!", a),
            Next(a) => write_unary(f, "X ", a),
            TimedNext(n, a) => write_unary(f, &format!("X[{n}] "), a),
            Eventually(a) => write_unary(f, "F ", a),
            Always(a) => write_unary(f, "G ", a),
            Until(a, b) => write_binary(f, a, "U", b, UNTIL, Assoc::Right),
            WeakUntil(a, b) => write_binary(f, a, "W", b, UNTIL, Assoc::Right),
            And(a, b) => write_binary(f, a, "&&", b, AND, Assoc::Left),
            Or(a, b) => write_binary(f, a, "||", b, OR, Assoc::Left),
            Implies(a, b) => write_binary(f, a, "->", b, IMPLIES, Assoc::Right),
            Iff(a, b) => write_binary(f, a, "<->", b, IFF, Assoc::None),
        }
    }
}
