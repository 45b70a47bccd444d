//! The `.ltl` file format: one formula per line, `#` comments, optional
//! `assume:` / `guarantee:` prefixes. A comment consisting of a single word
//! directly above a formula labels it (`# Req-08`).

use std::fmt::Write as _;

use thiserror::Error;

use super::{parse_formula, Formula, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LtlRole {
    Assume,
    Guarantee,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LtlEntry {
    pub label: Option<String>,
    pub role: LtlRole,
    pub formula: Formula,
}

#[derive(Debug, Error)]
#[error("line {line}: {source}")]
pub struct LtlFileError {
    pub line: usize,
    #[source]
    pub source: ParseError,
}

pub fn parse_ltl_file(text: &str) -> Result<Vec<LtlEntry>, LtlFileError> {
    let mut out = Vec::new();
    let mut label: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            label = (!comment.is_empty() && !comment.contains(char::is_whitespace))
                .then(|| comment.to_string());
            continue;
        }
        let (role, body) = if let Some(rest) = line.strip_prefix("assume:") {
            (LtlRole::Assume, rest)
        } else if let Some(rest) = line.strip_prefix("guarantee:") {
            (LtlRole::Guarantee, rest)
        } else {
            (LtlRole::Guarantee, line)
        };
        let formula = parse_formula(body).map_err(|source| LtlFileError {
            line: idx + 1,
            source,
        })?;
        out.push(LtlEntry {
            label: label.take(),
            role,
            formula,
        });
    }
    Ok(out)
}

pub fn write_ltl_file(entries: &[LtlEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        if let Some(label) = &e.label {
            let _ = writeln!(s, "# {label}");
        }
        match e.role {
            LtlRole::Assume => {
                let _ = writeln!(s, "assume: {}", e.formula);
            }
            LtlRole::Guarantee => {
                let _ = writeln!(s, "{}", e.formula);
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roles_and_comments() {
        let text = "# produced by hand\n\n# Req-01\nG (p -> F q)\nassume: G F r\n# Req-02\nguarantee: G !q\n";
        let entries = parse_ltl_file(text).unwrap();
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[0].label.as_deref(), Some("Req-01"));
        assert_eq!(entries[1].label, None);
        assert_eq!(entries[1].role, LtlRole::Assume);
        assert_eq!(entries[2].label.as_deref(), Some("Req-02"));
        let again = parse_ltl_file(&write_ltl_file(&entries)).unwrap();
        assert_eq!(again, entries);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_ltl_file("G p\n\nG (q ->").unwrap_err();
        assert_eq!(e.line, 3);
    }
}
