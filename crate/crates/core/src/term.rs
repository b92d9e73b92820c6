//! Terms and identities over the signature `{->, 0}`.
//!
//! The derived symbols `'`, `^` and `v` are macros: the parser expands them
//! on the spot, so a [`Term`] only ever contains variables, `0` and `->`.
//!
//! ```text
//! x'    := x -> 0
//! x ^ y := (x -> y')'
//! x v y := (x' ^ y')'
//! ```

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Zero,
    Arrow(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn arrow(left: Term, right: Term) -> Term {
        Term::Arrow(Box::new(left), Box::new(right))
    }

    /// `t'`, i.e. `t -> 0`.
    pub fn prime(self) -> Term {
        Term::arrow(self, Term::Zero)
    }

    /// `(a -> b')'`
    pub fn meet(a: Term, b: Term) -> Term {
        Term::arrow(a, b.prime()).prime()
    }

    /// `(a' ^ b')'`
    pub fn join(a: Term, b: Term) -> Term {
        Term::meet(a.prime(), b.prime()).prime()
    }

    /// Variables in order of first occurrence, scanning left to right.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(name) => {
                if !out.iter().any(|v| v == name) {
                    out.push(name.clone());
                }
            }
            Term::Zero => {}
            Term::Arrow(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    /// Number of `->` nodes.
    pub fn arrow_count(&self) -> usize {
        match self {
            Term::Arrow(l, r) => 1 + l.arrow_count() + r.arrow_count(),
            _ => 0,
        }
    }

    /// True for terms of the form `(s -> t) -> u`.
    pub fn is_arrow_of_arrow(&self) -> bool {
        matches!(self, Term::Arrow(l, _) if matches!(**l, Term::Arrow(..)))
    }

    /// Applies `f` to every variable name, leaving the tree shape alone.
    pub fn rename(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(name) => Term::Var(f(name)),
            Term::Zero => Term::Zero,
            Term::Arrow(l, r) => Term::arrow(l.rename(f), r.rename(f)),
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(_) | Term::Zero => write!(f, "{self}"),
            Term::Arrow(_, r) if **r == Term::Zero => write!(f, "{self}"),
            Term::Arrow(..) => write!(f, "({self})"),
        }
    }
}

/// Prints in the ASCII surface syntax with as few parentheses as the
/// grammar allows. `t -> 0` is always printed as `t'`.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(name) => f.write_str(name),
            Term::Zero => f.write_str("0"),
            Term::Arrow(l, r) if **r == Term::Zero => {
                l.fmt_operand(f)?;
                f.write_str("'")
            }
            Term::Arrow(l, r) => {
                l.fmt_operand(f)?;
                f.write_str(" -> ")?;
                write!(f, "{r}")
            }
        }
    }
}

impl FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

/// An equation `lhs = rhs`, read as "holds under every assignment".
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub name: Option<String>,
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        Identity {
            name: None,
            lhs,
            rhs,
        }
    }

    pub fn named(name: impl Into<String>, lhs: Term, rhs: Term) -> Identity {
        Identity {
            name: Some(name.into()),
            lhs,
            rhs,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Identity {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => self.to_string(),
        }
    }

    /// Variables of `lhs` followed by the new ones of `rhs`.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.collect_variables(&mut out);
        self.rhs.collect_variables(&mut out);
        out
    }

    /// Both sides have the shape `(t1 -> t2) -> t3`.
    pub fn is_transfer_shape(&self) -> bool {
        self.lhs.is_arrow_of_arrow() && self.rhs.is_arrow_of_arrow()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_identity(s)
    }
}

pub fn variables_of(t: &Term) -> Vec<String> {
    t.variables()
}

pub fn is_transfer_shape(id: &Identity) -> bool {
    id.is_transfer_shape()
}

/// An ordered list of identities with unique names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityCatalog {
    entries: Vec<Identity>,
}

impl IdentityCatalog {
    pub fn new() -> IdentityCatalog {
        IdentityCatalog::default()
    }

    /// Adds a named identity. Fails if the name is missing or taken.
    pub fn push(&mut self, id: Identity) -> Result<(), ParseError> {
        let Some(name) = id.name.as_deref() else {
            return Err(ParseError::Catalog {
                line: self.entries.len() + 1,
                message: "catalog entries must be named".into(),
            });
        };
        if self.get(name).is_some() {
            return Err(ParseError::Catalog {
                line: self.entries.len() + 1,
                message: format!("duplicate name `{name}`"),
            });
        }
        self.entries.push(id);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Identity> {
        self.entries
            .iter()
            .find(|e| e.name.as_deref() == Some(name))
    }

    pub fn entries(&self) -> &[Identity] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Identity> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses the line format `NAME: identity`, with `#` comments and blank
    /// lines ignored.
    pub fn parse(src: &str) -> Result<IdentityCatalog, ParseError> {
        let mut catalog = IdentityCatalog::new();
        let mut seen = HashSet::new();
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((name, body)) = line.split_once(':') else {
                return Err(ParseError::Catalog {
                    line: line_no,
                    message: "expected `NAME: identity`".into(),
                });
            };
            let name = name.trim();
            if name.is_empty() {
                return Err(ParseError::Catalog {
                    line: line_no,
                    message: "empty name".into(),
                });
            }
            if !seen.insert(name.to_string()) {
                return Err(ParseError::Catalog {
                    line: line_no,
                    message: format!("duplicate name `{name}`"),
                });
            }
            let id = parse_identity(body).map_err(|e| ParseError::Catalog {
                line: line_no,
                message: e.to_string(),
            })?;
            catalog.entries.push(id.with_name(name));
        }
        Ok(catalog)
    }
}

impl<'a> IntoIterator for &'a IdentityCatalog {
    type Item = &'a Identity;
    type IntoIter = std::slice::Iter<'a, Identity>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

impl fmt::Display for IdentityCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for id in &self.entries {
            writeln!(f, "{}: {}", id.label(), id)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Prime,
    Meet,
    Join,
    Arrow,
    Eq,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("variable `{name}`"),
            Tok::Zero => "`0`".into(),
            Tok::Prime => "`'`".into(),
            Tok::Meet => "`^`".into(),
            Tok::Join => "`v`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        it.next();
        let tok = match c {
            '(' | '[' | '{' => Tok::LParen,
            ')' | ']' | '}' => Tok::RParen,
            '\'' | '′' | '’' => Tok::Prime,
            '^' | '∧' => Tok::Meet,
            '∨' => Tok::Join,
            '→' => Tok::Arrow,
            '=' | '≈' => Tok::Eq,
            '-' => match it.next() {
                Some((_, '>')) => Tok::Arrow,
                _ => {
                    return Err(ParseError::UnknownOperator {
                        position: pos,
                        symbol: "-".into(),
                    })
                }
            },
            '0' => {
                if let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        return Err(ParseError::Syntax {
                            position: pos,
                            message: "only the constant 0 is allowed as a numeral".into(),
                        });
                    }
                }
                Tok::Zero
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = c.to_string();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                if name == "v" {
                    Tok::Join
                } else {
                    Tok::Ident(name)
                }
            }
            c if c.is_ascii_digit() => {
                return Err(ParseError::Syntax {
                    position: pos,
                    message: "only the constant 0 is allowed as a numeral".into(),
                })
            }
            other => {
                return Err(ParseError::UnknownOperator {
                    position: pos,
                    symbol: other.to_string(),
                })
            }
        };
        out.push((pos, tok));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
//
//   identity := impl "=" impl
//   impl     := orterm [ "->" impl ]
//   orterm   := andterm { "v" andterm }
//   andterm  := primed { "^" primed }
//   primed   := atom { "'" }
//   atom     := "0" | IDENT | "(" impl ")"

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::Syntax {
                position: self.offset(),
                message: format!("expected {wanted}, found {}", t.describe()),
            },
            None => ParseError::Syntax {
                position: self.end,
                message: format!("expected {wanted}, found end of input"),
            },
        }
    }

    fn implication(&mut self) -> Result<Term, ParseError> {
        let left = self.or_term()?;
        if self.eat(&Tok::Arrow) {
            let right = self.implication()?;
            Ok(Term::arrow(left, right))
        } else {
            Ok(left)
        }
    }

    fn or_term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.and_term()?;
        while self.eat(&Tok::Join) {
            let rhs = self.and_term()?;
            acc = Term::join(acc, rhs);
        }
        Ok(acc)
    }

    fn and_term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.primed()?;
        while self.eat(&Tok::Meet) {
            let rhs = self.primed()?;
            acc = Term::meet(acc, rhs);
        }
        Ok(acc)
    }

    fn primed(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.eat(&Tok::Prime) {
            t = t.prime();
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Term::Var(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.implication()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

/// Parses a term and expands every derived operator.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.implication()?;
    if p.peek() == Some(&Tok::Eq) {
        return Err(ParseError::Syntax {
            position: p.offset(),
            message: "unexpected `=` in a term".into(),
        });
    }
    p.finish()?;
    Ok(t)
}

/// Parses `term = term`. No normalisation is applied to either side.
pub fn parse_identity(src: &str) -> Result<Identity, ParseError> {
    let mut p = Parser::new(src)?;
    if !p.toks.iter().any(|(_, t)| *t == Tok::Eq) {
        return Err(ParseError::MissingEquals);
    }
    let lhs = p.implication()?;
    if !p.eat(&Tok::Eq) {
        return Err(p.unexpected("`=`"));
    }
    let rhs = p.implication()?;
    p.finish()?;
    Ok(Identity::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }

    fn y() -> Term {
        Term::var("y")
    }

    #[test]
    fn prime_is_arrow_to_zero() {
        assert_eq!(parse_term("x'").unwrap(), Term::arrow(x(), Term::Zero));
    }

    #[test]
    fn meet_expansion() {
        let expected = Term::arrow(Term::arrow(x(), Term::arrow(y(), Term::Zero)), Term::Zero);
        assert_eq!(parse_term("x ^ y").unwrap(), expected);
    }

    #[test]
    fn join_expansion() {
        // ((x' -> y'')')'
        let xp = Term::arrow(x(), Term::Zero);
        let ypp = Term::arrow(Term::arrow(y(), Term::Zero), Term::Zero);
        let inner = Term::arrow(Term::arrow(xp, ypp), Term::Zero);
        let expected = Term::arrow(inner, Term::Zero);
        assert_eq!(parse_term("x v y").unwrap(), expected);
    }

    #[test]
    fn zero_literal() {
        assert_eq!(parse_term("0").unwrap(), Term::Zero);
    }

    #[test]
    fn arrow_is_right_associative() {
        let t = parse_term("x -> y -> 0").unwrap();
        assert_eq!(t, Term::arrow(x(), Term::arrow(y(), Term::Zero)));
    }

    #[test]
    fn precedence_prime_meet_join_arrow() {
        let t = parse_term("x ^ y v x -> y'").unwrap();
        let expected = Term::arrow(
            Term::join(Term::meet(x(), y()), x()),
            Term::arrow(y(), Term::Zero),
        );
        assert_eq!(t, expected);
        // meet is folded to the left
        assert_eq!(
            parse_term("x ^ y ^ x").unwrap(),
            Term::meet(Term::meet(x(), y()), x())
        );
    }

    #[test]
    fn unicode_input() {
        assert_eq!(
            parse_term("(x → y′) ∧ x").unwrap(),
            parse_term("(x -> y') ^ x").unwrap()
        );
        assert_eq!(
            parse_identity("x ∨ y ≈ y ∨ x").unwrap(),
            parse_identity("x v y = y v x").unwrap()
        );
    }

    #[test]
    fn identities() {
        let id = parse_identity("x'' = x").unwrap();
        assert_eq!(id.lhs, x().prime().prime());
        assert_eq!(id.rhs, x());

        let br = parse_identity("x ^ (x v y) = x v (x ^ y)").unwrap();
        assert_eq!(br.lhs, Term::meet(x(), Term::join(x(), y())));
        assert_eq!(br.rhs, Term::join(x(), Term::meet(x(), y())));
        assert_eq!(br.variables(), vec!["x", "y"]);

        let triv = parse_identity("0 = 0").unwrap();
        assert_eq!(triv.lhs, Term::Zero);
        assert_eq!(triv.rhs, Term::Zero);
    }

    #[test]
    fn identity_is_not_symmetrised() {
        let a = parse_identity("x = x''").unwrap();
        let b = parse_identity("x'' = x").unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn variables_in_first_occurrence_order() {
        let t = Term::arrow(x(), Term::arrow(y(), Term::Zero));
        assert_eq!(variables_of(&t), vec!["x", "y"]);
        assert!(variables_of(&Term::Zero).is_empty());
        let t = parse_term("(z -> x1) -> (x1 -> z)'").unwrap();
        assert_eq!(t.variables(), vec!["z", "x1"]);
    }

    #[test]
    fn transfer_shape() {
        assert!(parse_identity("(x -> y) -> z = (y -> x) -> z")
            .unwrap()
            .is_transfer_shape());
        assert!(!parse_identity("x'' = x").unwrap().is_transfer_shape());
        assert!(parse_identity("x ^ (x v y) = x v (x ^ y)")
            .unwrap()
            .is_transfer_shape());
        assert!(!parse_identity("x -> y = y -> x")
            .unwrap()
            .is_transfer_shape());
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_term("(x -> y") {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 7),
            other => panic!("unexpected {other:?}"),
        }
        match parse_term("x -> ") {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_term("x * y") {
            Err(ParseError::UnknownOperator { position, symbol }) => {
                assert_eq!(position, 2);
                assert_eq!(symbol, "*");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_term("x y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_term("1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_term("x = y"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_identity("x -> y"),
            Err(ParseError::MissingEquals)
        ));
        assert!(matches!(
            parse_identity("x = y = z"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn printing() {
        let cases = [
            ("x'", "x'"),
            ("x -> 0", "x'"),
            ("(x -> y) -> z", "(x -> y) -> z"),
            ("x -> (y -> z)", "x -> y -> z"),
            ("(x -> y)'", "(x -> y)'"),
            ("x ^ y", "(x -> y')'"),
            ("0''", "0''"),
        ];
        for (src, printed) in cases {
            assert_eq!(parse_term(src).unwrap().to_string(), printed, "{src}");
        }
    }

    #[test]
    fn catalog_format() {
        let src = "\
# comment
A: x'' = x

B: x -> y = x -> (x -> y)   # trailing comment
";
        let cat = IdentityCatalog::parse(src).unwrap();
        assert_eq!(cat.len(), 2);
        assert_eq!(cat.get("A").unwrap().rhs, x());
        assert_eq!(cat.entries()[1].label(), "B");
        let reparsed = IdentityCatalog::parse(&cat.to_string()).unwrap();
        assert_eq!(reparsed, cat);
    }

    #[test]
    fn catalog_errors() {
        assert!(matches!(
            IdentityCatalog::parse("A: x = x\nA: y = y"),
            Err(ParseError::Catalog { line: 2, .. })
        ));
        assert!(matches!(
            IdentityCatalog::parse("x = x"),
            Err(ParseError::Catalog { line: 1, .. })
        ));
        assert!(matches!(
            IdentityCatalog::parse("\n\nA: x -> "),
            Err(ParseError::Catalog { line: 3, .. })
        ));
        let mut cat = IdentityCatalog::new();
        assert!(cat.push(Identity::new(x(), x())).is_err());
        cat.push(Identity::named("a", x(), x())).unwrap();
        assert!(cat.push(Identity::named("a", y(), y())).is_err());
    }
}
