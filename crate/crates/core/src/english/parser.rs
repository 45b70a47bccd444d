//! Recursive-descent parser for the structured-English grammar.
//!
//! ```text
//! sentence   ::= (subclause ",")* group (","? subclause)* "."
//! subclause  ::= subordinator group
//! group      ::= clause (","? conj clause)*
//! clause     ::= [marker] [modifier] subjects predicate [constraint]
//! subjects   ::= np ((","? conj | ",") np)*
//! predicate  ::= [modal] [modifier] [not] (be|copula) [not] word particle*
//!              | modal [not] verb particle*
//!              | verb particle*                     (single-subject clauses)
//! constraint ::= "in" NUMBER time_unit
//! ```
//!
//! A noun phrase containing exactly one underscore word is named by that
//! word, the other words are attributes. Otherwise its words are joined
//! with `_`.

use super::lemma::{is_participle_shape, lemmatize};
use super::lexicon::{Lexicon, WordClass};
use super::token::{Token, TokenKind};
use super::tree::*;
use super::EnglishError;

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    lex: &'a Lexicon,
    /// First subject of the most recently parsed clause, for `it`.
    last_subject: Option<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, off: usize) -> Option<&'a Token> {
        self.toks.get(self.pos + off)
    }

    fn class_at(&self, off: usize) -> Option<WordClass> {
        self.peek_at(off)
            .filter(|t| t.is_word())
            .and_then(|t| self.lex.class(&t.surface))
    }

    fn peek_class(&self) -> Option<WordClass> {
        self.class_at(0)
    }

    fn is_kind(&self, kind: TokenKind) -> bool {
        self.peek().is_some_and(|t| t.kind == kind)
    }

    fn position(&self) -> usize {
        self.peek()
            .map(|t| t.position)
            .or_else(|| self.toks.last().map(|t| t.position + t.surface.chars().count()))
            .unwrap_or(0)
    }

    fn found(&self) -> String {
        self.peek()
            .map(|t| t.surface.clone())
            .unwrap_or_else(|| "end of sentence".into())
    }

    fn violation(&self, expected: &str) -> EnglishError {
        EnglishError::GrammarViolation {
            expected: expected.to_string(),
            found: self.found(),
            position: self.position(),
        }
    }

    fn check_unsupported(&self) -> Result<(), EnglishError> {
        if self.peek_class() == Some(WordClass::Unsupported) {
            let t = self.peek().unwrap();
            return Err(EnglishError::UnknownSubordinator {
                word: t.surface.clone(),
                position: t.position,
            });
        }
        Ok(())
    }

    fn advance(&mut self) -> &'a Token {
        let t = &self.toks[self.pos];
        self.pos += 1;
        t
    }

    fn eat_class(&mut self, class: WordClass) -> Option<&'a Token> {
        if self.peek_class() == Some(class) {
            Some(self.advance())
        } else {
            None
        }
    }

    fn eat_kind(&mut self, kind: TokenKind) -> bool {
        if self.is_kind(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn conj_here(&self, off: usize) -> Option<Conjunction> {
        let t = self.peek_at(off)?;
        if self.class_at(off) != Some(WordClass::Conjunction) {
            return None;
        }
        match t.lower().as_str() {
            "and" => Some(Conjunction::And),
            "or" => Some(Conjunction::Or),
            _ => None,
        }
    }

    /// `","? conj` at the cursor, consumed when present.
    fn eat_join(&mut self) -> Option<Join> {
        let comma = self.is_kind(TokenKind::Comma);
        let off = comma as usize;
        let conj = self.conj_here(off)?;
        self.pos += off + 1;
        Some(Join {
            comma,
            conj: Some(conj),
        })
    }

    fn sentence(&mut self) -> Result<SyntaxTree, EnglishError> {
        let mut pre = Vec::new();
        loop {
            self.check_unsupported()?;
            let Some(sub) = self.eat_class(WordClass::Subordinator) else {
                break;
            };
            let group = self.group()?;
            if !self.eat_kind(TokenKind::Comma) {
                return Err(self.violation("','"));
            }
            pre.push(Subclause {
                subordinator: sub.lower(),
                surface: sub.surface.clone(),
                group,
                comma_before: false,
            });
        }
        let main = self.group()?;
        let mut post = Vec::new();
        loop {
            if self.eat_kind(TokenKind::Period) {
                break;
            }
            let comma = self.is_kind(TokenKind::Comma);
            if comma {
                self.pos += 1;
            }
            self.check_unsupported()?;
            let Some(sub) = self.eat_class(WordClass::Subordinator) else {
                return Err(self.violation("subordinator or '.'"));
            };
            let group = self.group()?;
            post.push(Subclause {
                subordinator: sub.lower(),
                surface: sub.surface.clone(),
                group,
                comma_before: comma,
            });
        }
        if self.pos != self.toks.len() {
            return Err(self.violation("end of sentence"));
        }
        Ok(SyntaxTree {
            pre_subclauses: pre,
            main,
            post_subclauses: post,
        })
    }

    fn group(&mut self) -> Result<ClauseGroup, EnglishError> {
        let mut clauses = vec![self.clause()?];
        let mut joins = Vec::new();
        while let Some(j) = self.eat_join() {
            joins.push(j);
            clauses.push(self.clause()?);
        }
        Ok(ClauseGroup { clauses, joins })
    }

    fn clause(&mut self) -> Result<Clause, EnglishError> {
        self.check_unsupported()?;
        let mut marker = None;
        let mut modifier = None;
        for _ in 0..2 {
            if marker.is_none() {
                if let Some(t) = self.eat_class(WordClass::Marker) {
                    marker = Some(t.lower());
                    continue;
                }
            }
            if modifier.is_none() {
                if let Some(t) = self.eat_class(WordClass::Modifier) {
                    modifier = Some(t.lower());
                }
            }
        }
        let (mut subjects, subject_joins) = self.subjects()?;
        let pred_start = matches!(
            self.peek_class(),
            Some(WordClass::Be | WordClass::Copula | WordClass::Modal | WordClass::Negator)
        ) || (modifier.is_none() && self.peek_class() == Some(WordClass::Modifier));
        let (predicate, negated, inline_modifier) = if pred_start {
            self.predicate()?
        } else {
            // bare verb: the last word of a single noun phrase
            let single = subjects.len() == 1;
            let last = subjects.last_mut().unwrap();
            if !single || last.words.len() < 2 || last.pronoun {
                return Err(EnglishError::MissingPredicate {
                    position: self.position(),
                });
            }
            let verb = last.words.pop().unwrap();
            let rebuilt = self.name_subject(&last.words)?;
            *last = rebuilt;
            let mut surface = vec![verb.clone()];
            let particles = self.particles();
            surface.extend(particles.iter().cloned());
            let lemma = lemmatize(&verb, self.lex);
            (
                Predicate {
                    modality: None,
                    form: PredicateForm::Verb,
                    head: verb,
                    lemma,
                    particles,
                    surface,
                },
                false,
                None,
            )
        };
        let modifier_inline = modifier.is_none() && inline_modifier.is_some();
        let modifier = modifier.or(inline_modifier);
        let constraint = self.constraint()?;
        self.last_subject = Some(subjects[0].name.clone());
        Ok(Clause {
            marker,
            modifier,
            modifier_inline,
            subjects,
            subject_joins,
            predicate,
            negated,
            constraint,
        })
    }

    fn subjects(&mut self) -> Result<(Vec<Subject>, Vec<Join>), EnglishError> {
        let mut subjects = vec![self.noun_phrase()?];
        let mut joins = Vec::new();
        loop {
            if let Some(j) = self.eat_join() {
                joins.push(j);
                subjects.push(self.noun_phrase()?);
                continue;
            }
            // "a, b or c": a bare comma followed by a plain word
            if self.is_kind(TokenKind::Comma)
                && self.peek_at(1).is_some_and(|t| t.is_word())
                && matches!(self.class_at(1), None | Some(WordClass::Filter))
                && self.list_continues()
            {
                self.pos += 1;
                joins.push(Join {
                    comma: true,
                    conj: None,
                });
                subjects.push(self.noun_phrase()?);
                continue;
            }
            break;
        }
        Ok((subjects, joins))
    }

    // After a bare comma: the list goes on only if a conjunction shows up
    // before any predicate word.
    fn list_continues(&self) -> bool {
        let mut off = 1;
        while let Some(t) = self.peek_at(off) {
            if !t.is_word() {
                return false;
            }
            match self.class_at(off) {
                None | Some(WordClass::Filter) => off += 1,
                Some(WordClass::Conjunction) => return true,
                _ => return false,
            }
        }
        false
    }

    fn noun_phrase(&mut self) -> Result<Subject, EnglishError> {
        let mut words = Vec::new();
        let mut pronoun = false;
        while let Some(t) = self.peek() {
            if !t.is_word() {
                break;
            }
            match self.lex.class(&t.surface) {
                Some(WordClass::Filter) => {
                    self.pos += 1;
                }
                Some(WordClass::Pronoun) if words.is_empty() && !pronoun => {
                    pronoun = true;
                    words.push(t.surface.clone());
                    self.pos += 1;
                }
                None if !pronoun => {
                    words.push(t.surface.clone());
                    self.pos += 1;
                }
                _ => break,
            }
        }
        if words.is_empty() {
            return Err(self.violation("subject"));
        }
        if pronoun {
            let name = self
                .last_subject
                .clone()
                .ok_or(EnglishError::UnresolvedPronoun {
                    position: self.position(),
                })?;
            return Ok(Subject {
                words,
                name,
                attributes: vec![],
                pronoun: true,
            });
        }
        self.name_subject(&words)
    }

    fn name_subject(&self, words: &[String]) -> Result<Subject, EnglishError> {
        let underscored: Vec<&String> = words.iter().filter(|w| w.contains('_')).collect();
        let (name, attributes) = if underscored.len() == 1 && words.len() > 1 {
            let head = underscored[0];
            (
                head.to_lowercase(),
                words
                    .iter()
                    .filter(|w| *w != head)
                    .map(|w| w.to_lowercase())
                    .collect(),
            )
        } else {
            (
                words
                    .iter()
                    .map(|w| w.to_lowercase())
                    .collect::<Vec<_>>()
                    .join("_"),
                vec![],
            )
        };
        Ok(Subject {
            words: words.to_vec(),
            name,
            attributes,
            pronoun: false,
        })
    }

    fn content_word(&mut self) -> Result<&'a Token, EnglishError> {
        match self.peek() {
            Some(t) if t.is_word() && self.lex.class(&t.surface).is_none() => Ok(self.advance()),
            _ => Err(EnglishError::MissingPredicate {
                position: self.position(),
            }),
        }
    }

    fn particles(&mut self) -> Vec<String> {
        let mut out = Vec::new();
        while self.peek_class() == Some(WordClass::Particle) {
            let t = self.peek().unwrap();
            let is_time = t.lower() == "in"
                && self.peek_at(1).is_some_and(|n| n.kind == TokenKind::Number);
            if is_time {
                break;
            }
            out.push(t.surface.clone());
            self.pos += 1;
        }
        out
    }

    #[allow(clippy::type_complexity)]
    fn predicate(&mut self) -> Result<(Predicate, bool, Option<String>), EnglishError> {
        let mut surface = Vec::new();
        let mut negated = false;
        let mut modifier = None;
        let modality = self.eat_class(WordClass::Modal).map(|t| {
            surface.push(t.surface.clone());
            t.lower()
        });
        if let Some(t) = self.eat_class(WordClass::Modifier) {
            surface.push(t.surface.clone());
            modifier = Some(t.lower());
        }
        if let Some(t) = self.eat_class(WordClass::Negator) {
            surface.push(t.surface.clone());
            negated = true;
        }
        let be = self
            .eat_class(WordClass::Be)
            .or_else(|| self.eat_class(WordClass::Copula));
        let form;
        let head;
        if let Some(b) = be {
            surface.push(b.surface.clone());
            if let Some(t) = self.eat_class(WordClass::Negator) {
                surface.push(t.surface.clone());
                negated = !negated;
            }
            head = self.content_word()?;
            form = if is_participle_shape(&head.surface) {
                PredicateForm::BeParticiple
            } else {
                PredicateForm::BeComplement
            };
        } else if modality.is_some() || negated {
            head = self.content_word()?;
            form = PredicateForm::Verb;
        } else {
            return Err(EnglishError::MissingPredicate {
                position: self.position(),
            });
        }
        surface.push(head.surface.clone());
        let particles = if form == PredicateForm::BeComplement {
            vec![]
        } else {
            self.particles()
        };
        surface.extend(particles.iter().cloned());
        let lemma = match form {
            PredicateForm::BeComplement => head.lower(),
            _ => lemmatize(&head.surface, self.lex),
        };
        Ok((
            Predicate {
                modality,
                form,
                head: head.surface.clone(),
                lemma,
                particles,
                surface,
            },
            negated,
            modifier,
        ))
    }

    fn constraint(&mut self) -> Result<Option<TimeConstraint>, EnglishError> {
        let is_in = self.peek().is_some_and(|t| t.lower() == "in")
            && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Number);
        if !is_in {
            return Ok(None);
        }
        self.pos += 1;
        let num = self.advance();
        let amount: u32 = num.surface.parse().map_err(|_| EnglishError::GrammarViolation {
            expected: "time amount".into(),
            found: num.surface.clone(),
            position: num.position,
        })?;
        if amount == 0 {
            return Err(EnglishError::GrammarViolation {
                expected: "positive time amount".into(),
                found: num.surface.clone(),
                position: num.position,
            });
        }
        match self.peek() {
            Some(t) if t.is_word() && self.lex.time_unit_seconds(&t.surface).is_some() => {
                self.pos += 1;
                Ok(Some(TimeConstraint {
                    amount,
                    unit: t.lower(),
                }))
            }
            _ => Err(self.violation("time unit")),
        }
    }
}

/// Parses a tokenized sentence. The token list must end with a period.
pub fn parse_sentence(tokens: &[Token], lexicon: &Lexicon) -> Result<SyntaxTree, EnglishError> {
    if tokens.is_empty() {
        return Err(EnglishError::EmptySentence);
    }
    if tokens.last().map(|t| t.kind) != Some(TokenKind::Period) {
        let t = tokens.last().unwrap();
        return Err(EnglishError::GrammarViolation {
            expected: "'.' at end of sentence".into(),
            found: t.surface.clone(),
            position: t.position,
        });
    }
    let mut p = Parser {
        toks: tokens,
        pos: 0,
        lex: lexicon,
        last_subject: None,
    };
    p.sentence()
}
