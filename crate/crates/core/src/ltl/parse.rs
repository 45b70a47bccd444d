//! Recursive-descent parser for the surface syntax printed by `Display`.
//!
//! A few alternate spellings are accepted on input: `&`, `|`, `~`, `=>`,
//! `<=>` and the unicode connectives `¬ ∧ ∨ → ↔`.

use thiserror::Error;

use super::Formula;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    TimedNext(u32),
    Eventually,
    Always,
    Until,
    WeakUntil,
}

fn err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        offset,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    let peek = |i: usize| chars.get(i).map(|&(_, c)| c);
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two: String = chars[i..chars.len().min(i + 2)].iter().map(|p| p.1).collect();
        let three: String = chars[i..chars.len().min(i + 3)].iter().map(|p| p.1).collect();
        let (tok, len) = if three == "<->" || three == "<=>" {
            (Tok::Iff, 3)
        } else if two == "->" || two == "=>" {
            (Tok::Implies, 2)
        } else if two == "&&" {
            (Tok::And, 2)
        } else if two == "||" {
            (Tok::Or, 2)
        } else {
            match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '!' | '~' | '¬' => (Tok::Not, 1),
                '&' | '∧' => (Tok::And, 1),
                '|' | '∨' => (Tok::Or, 1),
                '→' => (Tok::Implies, 1),
                '↔' => (Tok::Iff, 1),
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    let mut j = i;
                    let word_char = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '.';
                    // '-' joins words ("auto-control") but never starts "->"
                    while let Some(c) = peek(j) {
                        if word_char(c) || (c == '-' && peek(j + 1).is_some_and(word_char)) {
                            j += 1;
                        } else {
                            break;
                        }
                    }
                    let word: String = chars[start..j].iter().map(|p| p.1).collect();
                    let tok = match word.as_str() {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        "F" => Tok::Eventually,
                        "G" => Tok::Always,
                        "U" => Tok::Until,
                        "W" => Tok::WeakUntil,
                        "X" if peek(j) == Some('[') => {
                            let mut k = j + 1;
                            while matches!(peek(k), Some(c) if c.is_ascii_digit()) {
                                k += 1;
                            }
                            if k == j + 1 || peek(k) != Some(']') {
                                return Err(err(chars[j].0, "malformed X[n]"));
                            }
                            let digits: String = chars[j + 1..k].iter().map(|p| p.1).collect();
                            let n: u32 = digits
                                .parse()
                                .map_err(|_| err(chars[j].0, "timed next count out of range"))?;
                            if n == 0 {
                                return Err(err(chars[j].0, "X[0] is not allowed"));
                            }
                            out.push((off, Tok::TimedNext(n)));
                            i = k + 1;
                            continue;
                        }
                        "X" => Tok::Next,
                        _ => Tok::Ident(word),
                    };
                    out.push((off, tok));
                    i = j;
                    continue;
                }
                other => return Err(err(off, format!("unexpected character '{other}'"))),
            }
        };
        out.push((off, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implies()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.implies()?;
            if self.peek() == Some(&Tok::Iff) {
                return Err(err(self.offset(), "<-> is not associative, add parentheses"));
            }
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        while self.eat(&Tok::And) {
            lhs = Formula::and(lhs, self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::Until) {
            return Ok(Formula::until(lhs, self.until()?));
        }
        if self.eat(&Tok::WeakUntil) {
            return Ok(Formula::weak_until(lhs, self.until()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let off = self.offset();
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| err(off, "unexpected end of input"))?;
        self.pos += 1;
        Ok(match tok {
            Tok::Not => Formula::not(self.unary()?),
            Tok::Next => Formula::next(self.unary()?),
            Tok::TimedNext(n) => Formula::timed_next(n, self.unary()?),
            Tok::Eventually => Formula::eventually(self.unary()?),
            Tok::Always => Formula::always(self.unary()?),
            Tok::True => Formula::True,
            Tok::False => Formula::False,
            Tok::Ident(name) => Formula::Atom(name),
            Tok::LParen => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(err(self.offset(), "expected ')'"));
                }
                inner
            }
            other => return Err(err(off, format!("unexpected token {other:?}"))),
        })
    }
}

/// Parses a formula in the surface syntax.
pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return Err(err(p.offset(), "trailing input"));
    }
    Ok(f)
}
