use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conjunction {
    And,
    Or,
}

/// Separator between two list items: an optional comma and an optional
/// conjunction (at least one of them is present).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Join {
    pub comma: bool,
    pub conj: Option<Conjunction>,
}

/// Resolves bare-comma joins: each takes the next explicit conjunction to
/// its right, else the nearest one to its left, else `And`.
pub fn effective_conjunctions(joins: &[Join]) -> Vec<Conjunction> {
    (0..joins.len())
        .map(|i| {
            joins[i]
                .conj
                .or_else(|| joins[i + 1..].iter().find_map(|j| j.conj))
                .or_else(|| joins[..i].iter().rev().find_map(|j| j.conj))
                .unwrap_or(Conjunction::And)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subject {
    /// Non-filter surface words in order.
    pub words: Vec<String>,
    /// Proposition-ready name (lowercase, `_`-joined).
    pub name: String,
    /// Words dropped as attributes (`valid` in "a valid blood_pressure").
    pub attributes: Vec<String>,
    pub pronoun: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredicateForm {
    Verb,
    BeParticiple,
    BeComplement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicate {
    pub modality: Option<String>,
    pub form: PredicateForm,
    /// Content word as written.
    pub head: String,
    /// Lemma for verbs and participles, lowercase head for complements.
    pub lemma: String,
    pub particles: Vec<String>,
    /// Surface words of the predicate in order, negator included.
    pub surface: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TimeConstraint {
    pub amount: u32,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    /// Clause-initial `next` or `then`, lowercase.
    pub marker: Option<String>,
    pub modifier: Option<String>,
    /// Modifier written inside the predicate ("will eventually be").
    pub modifier_inline: bool,
    pub subjects: Vec<Subject>,
    pub subject_joins: Vec<Join>,
    pub predicate: Predicate,
    pub negated: bool,
    pub constraint: Option<TimeConstraint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseGroup {
    pub clauses: Vec<Clause>,
    pub joins: Vec<Join>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subclause {
    /// Lowercase subordinator.
    pub subordinator: String,
    pub surface: String,
    pub group: ClauseGroup,
    /// Comma written before a post-subclause.
    pub comma_before: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyntaxTree {
    pub pre_subclauses: Vec<Subclause>,
    pub main: ClauseGroup,
    pub post_subclauses: Vec<Subclause>,
}

impl SyntaxTree {
    pub fn clauses(&self) -> impl Iterator<Item = &Clause> {
        self.pre_subclauses
            .iter()
            .map(|s| &s.group)
            .chain(std::iter::once(&self.main))
            .chain(self.post_subclauses.iter().map(|s| &s.group))
            .flat_map(|g| g.clauses.iter())
    }
}

fn push_join(out: &mut Vec<String>, j: &Join) {
    if j.comma {
        out.push(",".into());
    }
    match j.conj {
        Some(Conjunction::And) => out.push("and".into()),
        Some(Conjunction::Or) => out.push("or".into()),
        None => {}
    }
}

fn clause_tokens(c: &Clause, out: &mut Vec<String>) {
    if let Some(m) = &c.marker {
        out.push(m.clone());
    }
    if let (Some(m), false) = (&c.modifier, c.modifier_inline) {
        out.push(m.clone());
    }
    for (i, s) in c.subjects.iter().enumerate() {
        if i > 0 {
            push_join(out, &c.subject_joins[i - 1]);
        }
        out.extend(s.words.iter().cloned());
    }
    out.extend(c.predicate.surface.iter().cloned());
    if let Some(t) = &c.constraint {
        out.push("in".into());
        out.push(t.amount.to_string());
        out.push(t.unit.clone());
    }
}

fn group_tokens(g: &ClauseGroup, out: &mut Vec<String>) {
    for (i, c) in g.clauses.iter().enumerate() {
        if i > 0 {
            push_join(out, &g.joins[i - 1]);
        }
        clause_tokens(c, out);
    }
}

/// Token sequence of the tree (filter words omitted).
pub fn unparse_tokens(tree: &SyntaxTree) -> Vec<String> {
    let mut out = Vec::new();
    for s in &tree.pre_subclauses {
        out.push(s.surface.clone());
        group_tokens(&s.group, &mut out);
        out.push(",".into());
    }
    group_tokens(&tree.main, &mut out);
    for s in &tree.post_subclauses {
        if s.comma_before {
            out.push(",".into());
        }
        out.push(s.surface.clone());
        group_tokens(&s.group, &mut out);
    }
    out.push(".".into());
    out
}

/// Renders the tree back to a sentence (filter words omitted).
pub fn unparse(tree: &SyntaxTree) -> String {
    let mut s = String::new();
    for tok in unparse_tokens(tree) {
        if !(s.is_empty() || tok == "," || tok == ".") {
            s.push(' ');
        }
        s.push_str(&tok);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(comma: bool, conj: Option<Conjunction>) -> Join {
        Join { comma, conj }
    }

    #[test]
    fn bare_commas_inherit() {
        use Conjunction::*;
        let joins = [j(true, None), j(false, Some(Or))];
        assert_eq!(effective_conjunctions(&joins), vec![Or, Or]);
        let joins = [j(true, Some(And)), j(true, None)];
        assert_eq!(effective_conjunctions(&joins), vec![And, And]);
        assert_eq!(effective_conjunctions(&[j(true, None)]), vec![And]);
    }
}
