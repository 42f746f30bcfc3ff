//! Line-oriented algebra presentation files.
//!
//! ```text
//! # comment
//! algebra s_plus dim 3
//! basis Z1 Z2 Z3
//! [Z1,Z3] = 1/sqrt2*Z3
//! [Z2,Z3] = -1/sqrt2*Z3
//! ```
//!
//! Only one of `[A,B]` and `[B,A]` may be declared; the other follows by
//! antisymmetry. Undeclared brackets are zero.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::expr::{self, ParseError};
use crate::liealg::{LieAlgebra, LieError, StructureTensor};
use crate::sparse::Vector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Expr(ParseError),
    #[error("missing 'algebra <name> dim <k>' header")]
    MissingHeader,
    #[error("missing 'basis' line")]
    MissingBasis,
    #[error("duplicate '{0}' line")]
    DuplicateDirective(&'static str),
    #[error("unknown label '{0}'")]
    UnknownLabel(String),
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
    #[error("'{0}' is reserved and cannot be a label")]
    ReservedLabel(String),
    #[error("dim {declared} declared but {found} basis labels given")]
    DimMismatch { declared: usize, found: usize },
    #[error("bracket [{0},{1}] declared twice")]
    DuplicateBracket(String, String),
    #[error("bracket [{0},{1}] already determined by [{1},{0}]")]
    AntisymmetricDuplicate(String, String),
    #[error("self-bracket [{0},{0}] must not be declared")]
    SelfBracket(String),
}

/// Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct DslError {
    pub line: usize,
    pub column: usize,
    pub kind: DslErrorKind,
}

/// A parsed presentation in canonical form: brackets keyed by basis index
/// pairs `(p, q)` with `p < q`, zero brackets dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub basis: Vec<String>,
    pub brackets: BTreeMap<(usize, usize), Vector>,
}

impl AlgebraFile {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra, LieError> {
        let mut tensor = StructureTensor::new(self.dim());
        for (&(p, q), v) in &self.brackets {
            tensor.set(p, q, v.clone())?;
        }
        LieAlgebra::new(self.basis.clone(), tensor)
    }

    pub fn from_algebra(name: &str, alg: &LieAlgebra) -> Self {
        AlgebraFile {
            name: name.to_string(),
            basis: alg.labels().to_vec(),
            brackets: alg.tensor().entries().map(|(&k, v)| (k, v.clone())).collect(),
        }
    }
}

impl fmt::Display for AlgebraFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} dim {}", self.name, self.dim())?;
        if self.basis.is_empty() {
            writeln!(f, "basis")?;
        } else {
            writeln!(f, "basis {}", self.basis.join(" "))?;
        }
        for (&(p, q), v) in &self.brackets {
            writeln!(f, "[{},{}] = {}", self.basis[p], self.basis[q], v.render(|k| self.basis[*k].clone()))?;
        }
        Ok(())
    }
}

const RESERVED: [&str; 4] = ["i", "sqrt2", "algebra", "basis"];

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, offset: usize, kind: DslErrorKind) -> DslError {
        DslError { line: self.number, column: self.text[..offset].chars().count() + 1, kind }
    }

    /// Whitespace-separated words with their byte offsets.
    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (pos, ch) in self.text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..pos]));
                    start = None;
                }
                (false, None) => start = Some(pos),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out
    }
}

fn check_identifier(line: &Line, offset: usize, word: &str) -> Result<(), DslError> {
    let mut chars = word.chars();
    let ok = chars.next().is_some_and(expr::is_ident_start) && chars.all(expr::is_ident_char);
    if !ok {
        return Err(line.err(offset, DslErrorKind::Syntax(format!("'{}' is not a valid identifier", word))));
    }
    Ok(())
}

fn parse_header(line: &Line) -> Result<(String, usize), DslError> {
    let words = line.words();
    let usage = || DslErrorKind::Syntax("expected 'algebra <name> dim <k>'".into());
    if words.len() != 4 || words[2].1 != "dim" {
        let at = words.get(1).map_or(line.text.len(), |w| w.0);
        return Err(line.err(at, usage()));
    }
    check_identifier(line, words[1].0, words[1].1)?;
    let dim = words[3].1.parse::<usize>().map_err(|_| line.err(words[3].0, DslErrorKind::Syntax(format!("'{}' is not a dimension", words[3].1))))?;
    Ok((words[1].1.to_string(), dim))
}

fn parse_basis(line: &Line, declared: usize) -> Result<Vec<String>, DslError> {
    let words = line.words();
    let mut labels: Vec<String> = Vec::new();
    for &(offset, word) in &words[1..] {
        check_identifier(line, offset, word)?;
        if RESERVED.contains(&word) {
            return Err(line.err(offset, DslErrorKind::ReservedLabel(word.into())));
        }
        if labels.iter().any(|l| l == word) {
            return Err(line.err(offset, DslErrorKind::DuplicateLabel(word.into())));
        }
        labels.push(word.to_string());
    }
    if labels.len() != declared {
        return Err(line.err(0, DslErrorKind::DimMismatch { declared, found: labels.len() }));
    }
    Ok(labels)
}

/// `[A,B] = rhs` -> `(A, offset of A, B, offset of B, offset of rhs)`.
fn split_bracket<'a>(line: &Line<'a>) -> Result<(&'a str, usize, &'a str, usize, usize), DslError> {
    let text = line.text;
    let syntax = |at: usize, msg: &str| line.err(at, DslErrorKind::Syntax(msg.into()));
    let open = text.find('[').ok_or_else(|| syntax(0, "expected '['"))?;
    if !text[..open].trim().is_empty() {
        return Err(syntax(0, "expected '['"));
    }
    let close = text.find(']').ok_or_else(|| syntax(text.len(), "expected ']'"))?;
    let inner = &text[open + 1..close];
    let comma = inner.find(',').ok_or_else(|| syntax(close, "expected ','"))?;
    let (a_raw, b_raw) = (&inner[..comma], &inner[comma + 1..]);
    let a_off = open + 1 + (a_raw.len() - a_raw.trim_start().len());
    let b_off = open + 1 + comma + 1 + (b_raw.len() - b_raw.trim_start().len());
    let (a, b) = (a_raw.trim(), b_raw.trim());
    check_identifier(line, a_off, a)?;
    check_identifier(line, b_off, b)?;
    let after = &text[close + 1..];
    let eq = after.find('=').ok_or_else(|| syntax(close + 1, "expected '='"))?;
    if !after[..eq].trim().is_empty() {
        return Err(syntax(close + 1, "expected '='"));
    }
    Ok((a, a_off, b, b_off, close + 1 + eq + 1))
}

pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile, DslError> {
    let mut header: Option<(String, usize)> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut brackets: BTreeMap<(usize, usize), (Vector, (usize, usize))> = BTreeMap::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = Line { number: k + 1, text: content };
        last_line = k + 1;
        let first = line.words().first().map(|w| w.1);
        match first {
            None => continue,
            Some("algebra") => {
                if header.is_some() {
                    return Err(line.err(0, DslErrorKind::DuplicateDirective("algebra")));
                }
                header = Some(parse_header(&line)?);
            }
            Some("basis") => {
                let Some((_, dim)) = &header else {
                    return Err(line.err(0, DslErrorKind::MissingHeader));
                };
                if basis.is_some() {
                    return Err(line.err(0, DslErrorKind::DuplicateDirective("basis")));
                }
                basis = Some(parse_basis(&line, *dim)?);
            }
            Some(_) => {
                if header.is_none() {
                    return Err(line.err(0, DslErrorKind::MissingHeader));
                }
                let Some(labels) = &basis else {
                    return Err(line.err(0, DslErrorKind::MissingBasis));
                };
                let (a, a_off, b, b_off, rhs_off) = split_bracket(&line)?;
                let lookup = |name: &str, at: usize| {
                    labels.iter().position(|l| l == name).ok_or_else(|| line.err(at, DslErrorKind::UnknownLabel(name.into())))
                };
                let p = lookup(a, a_off)?;
                let q = lookup(b, b_off)?;
                if p == q {
                    return Err(line.err(a_off, DslErrorKind::SelfBracket(a.into())));
                }
                let key = (p.min(q), p.max(q));
                if brackets.contains_key(&key) {
                    let kind = if brackets[&key].1 == (p, q) {
                        DslErrorKind::DuplicateBracket(a.into(), b.into())
                    } else {
                        DslErrorKind::AntisymmetricDuplicate(a.into(), b.into())
                    };
                    return Err(line.err(a_off - 1, kind));
                }
                let rhs = &content[rhs_off..];
                let resolve = |name: &str| labels.iter().position(|l| l == name);
                let value = expr::parse_linear(rhs, &resolve).map_err(|e| {
                    let at = rhs_off + rhs.char_indices().nth(e.pos()).map_or(rhs.len(), |(b, _)| b);
                    match e {
                        ParseError::UnknownIdentifier { name, .. } => line.err(at, DslErrorKind::UnknownLabel(name)),
                        other => line.err(at, DslErrorKind::Expr(other)),
                    }
                })?;
                let value = if p < q { value } else { value.negated() };
                brackets.insert(key, (value, (p, q)));
            }
        }
    }
    let next = last_line + 1;
    let Some((name, _)) = header else {
        return Err(DslError { line: next, column: 1, kind: DslErrorKind::MissingHeader });
    };
    let Some(basis) = basis else {
        return Err(DslError { line: next, column: 1, kind: DslErrorKind::MissingBasis });
    };
    let brackets = brackets.into_iter().filter(|(_, (v, _))| !v.is_zero()).map(|(k, (v, _))| (k, v)).collect();
    Ok(AlgebraFile { name, basis, brackets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    const GL2_PLUS: &str = "# solvable half of gl(2)
algebra s_plus dim 3
basis Z1 Z2 Z3
[Z1,Z3] = 1/sqrt2*Z3
[Z2,Z3] = -1/sqrt2*Z3
";

    #[test]
    fn parses_gl2_half() {
        let file = parse_algebra_file(GL2_PLUS).unwrap();
        assert_eq!(file.name, "s_plus");
        assert_eq!(file.dim(), 3);
        assert_eq!(file.brackets.len(), 2);
        let alg = file.to_algebra().unwrap();
        assert_eq!(alg.bracket_basis(0, 2), Vector::term(2, Scalar::inv_sqrt2()));
        assert_eq!(alg.bracket_basis(2, 1), Vector::term(2, Scalar::inv_sqrt2()));
    }

    #[test]
    fn empty_bracket_list_is_abelian() {
        let file = parse_algebra_file("algebra a dim 2\nbasis u v\n").unwrap();
        assert!(file.to_algebra().unwrap().is_abelian());
        let zero = parse_algebra_file("algebra z dim 0\nbasis\n").unwrap();
        assert_eq!(zero.dim(), 0);
    }

    #[test]
    fn reversed_declaration_is_normalized() {
        let file = parse_algebra_file("algebra a dim 2\nbasis u v\n[v,u] = 2*u\n").unwrap();
        assert_eq!(file.brackets[&(0, 1)], Vector::term(0, Scalar::integer(-2)));
    }

    #[test]
    fn printer_round_trips() {
        let file = parse_algebra_file(GL2_PLUS).unwrap();
        let printed = file.to_string();
        assert_eq!(printed, "algebra s_plus dim 3\nbasis Z1 Z2 Z3\n[Z1,Z3] = 1/2*sqrt2*Z3\n[Z2,Z3] = -1/2*sqrt2*Z3\n");
        assert_eq!(parse_algebra_file(&printed).unwrap(), file);
    }

    fn err(text: &str) -> DslError {
        parse_algebra_file(text).unwrap_err()
    }

    #[test]
    fn antisymmetric_duplicate() {
        let e = err("algebra a dim 3\nbasis Z1 Z2 Z3\n[Z1,Z3] = Z3\n[Z3,Z1] = -Z3\n");
        assert_eq!((e.line, e.column), (4, 1));
        assert_eq!(e.kind, DslErrorKind::AntisymmetricDuplicate("Z3".into(), "Z1".into()));
        let e = err("algebra a dim 3\nbasis Z1 Z2 Z3\n[Z1,Z3] = Z3\n[Z1,Z3] = Z3\n");
        assert_eq!(e.kind, DslErrorKind::DuplicateBracket("Z1".into(), "Z3".into()));
    }

    #[test]
    fn unknown_labels_located() {
        let e = err("algebra a dim 2\nbasis u v\n[u,w] = v\n");
        assert_eq!((e.line, e.column, e.kind), (3, 4, DslErrorKind::UnknownLabel("w".into())));
        let e = err("algebra a dim 2\nbasis u v\n[u,v] = 2*q\n");
        assert_eq!((e.line, e.column, e.kind), (3, 11, DslErrorKind::UnknownLabel("q".into())));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(err("algebra a dim 3\nbasis u v\n").kind, DslErrorKind::DimMismatch { declared: 3, found: 2 });
        assert_eq!(err("basis u v\n").kind, DslErrorKind::MissingHeader);
        assert_eq!(err("algebra a dim 1\n").kind, DslErrorKind::MissingBasis);
        assert_eq!(err("algebra a dim 2\nbasis u i\n").kind, DslErrorKind::ReservedLabel("i".into()));
        assert_eq!(err("algebra a dim 2\nbasis u u\n").kind, DslErrorKind::DuplicateLabel("u".into()));
        assert_eq!(err("algebra a dim 2\nbasis u v\n[u,u] = v\n").kind, DslErrorKind::SelfBracket("u".into()));
    }

    #[test]
    fn expression_errors_carry_columns() {
        let e = err("algebra a dim 2\nbasis u v\n[u,v] = 2 $ v\n");
        assert_eq!((e.line, e.column), (3, 11));
        assert!(matches!(e.kind, DslErrorKind::Expr(ParseError::UnexpectedChar { ch: '$', .. })));
        let e = err("algebra a dim 2\nbasis u v\n[u,v] = u*v\n");
        assert!(matches!(e.kind, DslErrorKind::Expr(ParseError::NonLinear { .. })));
        let e = err("algebra a dim 2\nbasis u v\n[u,v] - v\n");
        assert!(matches!(e.kind, DslErrorKind::Syntax(_)));
    }

    #[test]
    fn comments_and_blank_lines() {
        let file = parse_algebra_file("\n# header\nalgebra a dim 2  # trailing\n\nbasis u v\n[u,v] = u # more\n").unwrap();
        assert_eq!(file.brackets.len(), 1);
    }
}
