use serde::Serialize;

use super::EnglishError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Word,
    UnderscoreWord,
    Number,
    Comma,
    Period,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    pub kind: TokenKind,
    /// Column (0-based char index) of the first character.
    pub position: usize,
}

impl Token {
    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }

    pub fn is_word(&self) -> bool {
        matches!(self.kind, TokenKind::Word | TokenKind::UnderscoreWord)
    }
}

/// Splits a sentence into words, numbers, commas and periods. Hyphens and
/// underscores inside a word are word characters.
pub fn tokenize(text: &str) -> Result<Vec<Token>, EnglishError> {
    if text.trim().is_empty() {
        return Err(EnglishError::EmptySentence);
    }
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == ',' || c == '.' {
            out.push(Token {
                surface: c.to_string(),
                kind: if c == ',' {
                    TokenKind::Comma
                } else {
                    TokenKind::Period
                },
                position: i,
            });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(EnglishError::IllegalCharacter {
                    position: i,
                    found: chars[i],
                });
            }
            out.push(Token {
                surface: chars[start..i].iter().collect(),
                kind: TokenKind::Number,
                position: start,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() {
                let ch = chars[i];
                let inner_hyphen = ch == '-'
                    && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric() || *n == '_');
                if ch.is_alphanumeric() || ch == '_' || inner_hyphen {
                    i += 1;
                } else {
                    break;
                }
            }
            let surface: String = chars[start..i].iter().collect();
            let kind = if surface.contains('_') {
                TokenKind::UnderscoreWord
            } else {
                TokenKind::Word
            };
            out.push(Token {
                surface,
                kind,
                position: start,
            });
        } else {
            return Err(EnglishError::IllegalCharacter {
                position: i,
                found: c,
            });
        }
    }
    Ok(out)
}
