//! Structured-English front end: tokens, lexicon, lemmas and the syntax tree.

mod lemma;
mod lexicon;
mod parser;
mod token;
mod tree;

use thiserror::Error;

pub use lemma::{is_participle_shape, lemmatize};
pub use lexicon::{Lexicon, WordClass};
pub use parser::parse_sentence;
pub use token::{tokenize, Token, TokenKind};
pub use tree::{
    effective_conjunctions, unparse, unparse_tokens, Clause, ClauseGroup, Conjunction, Join,
    Predicate, PredicateForm, Subclause, Subject, SyntaxTree, TimeConstraint,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnglishError {
    #[error("empty sentence")]
    EmptySentence,
    #[error("illegal character '{found}' at column {position}")]
    IllegalCharacter { position: usize, found: char },
    #[error("expected {expected}, found '{found}' at column {position}")]
    GrammarViolation {
        expected: String,
        found: String,
        position: usize,
    },
    #[error("unsupported subordinator '{word}' at column {position}")]
    UnknownSubordinator { word: String, position: usize },
    #[error("missing predicate at column {position}")]
    MissingPredicate { position: usize },
    #[error("pronoun at column {position} has no antecedent")]
    UnresolvedPronoun { position: usize },
}

impl EnglishError {
    pub fn position(&self) -> Option<usize> {
        match self {
            EnglishError::EmptySentence => None,
            EnglishError::IllegalCharacter { position, .. }
            | EnglishError::GrammarViolation { position, .. }
            | EnglishError::UnknownSubordinator { position, .. }
            | EnglishError::MissingPredicate { position }
            | EnglishError::UnresolvedPronoun { position } => Some(*position),
        }
    }
}

/// Tokenizes and parses one sentence.
pub fn parse_text(text: &str, lexicon: &Lexicon) -> Result<SyntaxTree, EnglishError> {
    parse_sentence(&tokenize(text)?, lexicon)
}
