//! Finite algebras `<A, ->, 0>` stored as Cayley tables.
//!
//! The carrier is always `{0, .., n-1}` and the constant `0` is element `0`.

use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::AlgebraError;
use crate::term::{parse_identity, Identity, Term};

pub type Element = u8;

/// Largest carrier an [`Element`] can index.
pub const MAX_SIZE: usize = Element::MAX as usize;

/// Default bound on `canonical_form`, which walks all `(n-1)!` relabelings.
pub const CANONICAL_SIZE_BOUND: usize = 7;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAlgebra {
    size: usize,
    /// Row-major: `table[a * size + b] = a -> b`.
    table: Vec<Element>,
}

impl FiniteAlgebra {
    pub fn new(size: usize, table: Vec<Element>) -> Result<FiniteAlgebra, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if size > MAX_SIZE {
            return Err(AlgebraError::TooLarge(size));
        }
        if table.len() != size * size {
            return Err(AlgebraError::WrongShape {
                expected: size * size,
                found: table.len(),
            });
        }
        if let Some(i) = table.iter().position(|&v| v as usize >= size) {
            return Err(AlgebraError::EntryOutOfRange {
                row: i / size,
                col: i % size,
                value: table[i] as usize,
                size,
            });
        }
        Ok(FiniteAlgebra { size, table })
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<FiniteAlgebra, AlgebraError> {
        let size = rows.len();
        let mut table = Vec::with_capacity(size * size);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != size {
                return Err(AlgebraError::WrongShape {
                    expected: size * size,
                    found: size * (size - 1) + row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(AlgebraError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        size,
                    });
                }
                table.push(v as Element);
            }
        }
        FiniteAlgebra::new(size, table)
    }

    /// The one-element algebra.
    pub fn trivial() -> FiniteAlgebra {
        FiniteAlgebra {
            size: 1,
            table: vec![0],
        }
    }

    pub(crate) fn from_table_unchecked(size: usize, table: Vec<Element>) -> FiniteAlgebra {
        debug_assert_eq!(table.len(), size * size);
        FiniteAlgebra { size, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.size)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        self.table[a as usize * self.size + b as usize]
    }

    /// `a' = a -> 0`
    #[inline]
    pub fn prime(&self, a: Element) -> Element {
        self.op(a, 0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.size).map(|a| a as Element)
    }

    pub fn eval(&self, t: &Term, env: &Assignment) -> Result<Element, AlgebraError> {
        match t {
            Term::Zero => Ok(0),
            Term::Var(name) => match env.get(name) {
                Some(v) if (v as usize) < self.size => Ok(v),
                Some(v) => Err(AlgebraError::EntryOutOfRange {
                    row: 0,
                    col: 0,
                    value: v as usize,
                    size: self.size,
                }),
                None => Err(AlgebraError::UnboundVariable(name.clone())),
            },
            Term::Arrow(l, r) => Ok(self.op(self.eval(l, env)?, self.eval(r, env)?)),
        }
    }

    /// Checks `id` under every assignment. Assignments are enumerated with the
    /// identity's variables in first-occurrence order, the first variable
    /// varying fastest; the first failing one is reported.
    pub fn satisfies(&self, id: &Identity) -> Satisfaction {
        let vars = id.variables();
        let lhs = Program::compile(&id.lhs, &vars);
        let rhs = Program::compile(&id.rhs, &vars);
        let mut values = vec![0 as Element; vars.len()];
        let mut stack = Vec::with_capacity(16);
        loop {
            let l = lhs.run(self, &values, &mut stack);
            let r = rhs.run(self, &values, &mut stack);
            if l != r {
                return Satisfaction::Fails(Witness {
                    assignment: Assignment::from_pairs(
                        vars.iter().cloned().zip(values.iter().copied()),
                    ),
                    lhs_value: l,
                    rhs_value: r,
                });
            }
            if !advance(&mut values, self.size) {
                return Satisfaction::Holds;
            }
        }
    }

    pub fn holds(&self, id: &Identity) -> bool {
        self.satisfies(id).holds()
    }

    /// Satisfies `(x -> y) -> z = ((z' -> x) -> (y -> z)')'` and `0'' = 0`.
    pub fn is_izroupoid(&self) -> bool {
        defining_identities().iter().all(|id| self.holds(id))
    }

    pub fn derive_bimagma(&self) -> DerivedBimagma {
        let n = self.size;
        let mut meet = Vec::with_capacity(n * n);
        for a in self.elements() {
            for b in self.elements() {
                meet.push(self.prime(self.op(a, self.prime(b))));
            }
        }
        let mut join = Vec::with_capacity(n * n);
        for a in self.elements() {
            for b in self.elements() {
                let m = meet[self.prime(a) as usize * n + self.prime(b) as usize];
                join.push(self.prime(m));
            }
        }
        DerivedBimagma {
            size: n,
            meet,
            join,
        }
    }

    /// Transport of structure along `perm` (old label -> new label).
    pub fn relabel(&self, perm: &[Element]) -> FiniteAlgebra {
        let n = self.size;
        assert_eq!(perm.len(), n, "permutation length must match the size");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let v = self.table[a * n + b];
                table[perm[a] as usize * n + perm[b] as usize] = perm[v as usize];
            }
        }
        FiniteAlgebra { size: n, table }
    }

    /// A bijection `pi` with `pi(0) = 0` and `pi(a -> b) = pi(a) -> pi(b)`,
    /// if one exists.
    pub fn isomorphism_to(&self, other: &FiniteAlgebra) -> Option<Vec<Element>> {
        if self.size != other.size {
            return None;
        }
        let n = self.size;
        let mut sig_a = self.invariant_profile();
        let mut sig_b = other.invariant_profile();
        sig_a.sort_unstable();
        sig_b.sort_unstable();
        if sig_a != sig_b {
            return None;
        }
        fixed_zero_permutations(n).find(|perm| {
            (0..n).all(|a| {
                (0..n).all(|b| perm[self.table[a * n + b] as usize] == other.op(perm[a], perm[b]))
            })
        })
    }

    pub fn is_isomorphic(&self, other: &FiniteAlgebra) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Lexicographically least row-major table over all relabelings that
    /// fix `0`. Refuses sizes above [`CANONICAL_SIZE_BOUND`].
    pub fn canonical_form(&self) -> Result<FiniteAlgebra, AlgebraError> {
        self.canonical_form_bounded(CANONICAL_SIZE_BOUND)
    }

    pub fn canonical_form_bounded(&self, bound: usize) -> Result<FiniteAlgebra, AlgebraError> {
        if self.size > bound {
            return Err(AlgebraError::SizeBoundExceeded {
                size: self.size,
                bound,
            });
        }
        let mut best = self.table.clone();
        let mut scratch = vec![0; best.len()];
        for perm in fixed_zero_permutations(self.size) {
            self.relabel_into(&perm, &mut scratch);
            if scratch < best {
                std::mem::swap(&mut best, &mut scratch);
            }
        }
        Ok(FiniteAlgebra {
            size: self.size,
            table: best,
        })
    }

    pub fn is_canonical(&self) -> bool {
        let n = self.size;
        let mut scratch = vec![0; n * n];
        fixed_zero_permutations(n).all(|perm| {
            self.relabel_into(&perm, &mut scratch);
            scratch >= self.table
        })
    }

    fn relabel_into(&self, perm: &[Element], out: &mut [Element]) {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let v = self.table[a * n + b];
                out[perm[a] as usize * n + perm[b] as usize] = perm[v as usize];
            }
        }
    }

    /// Per-element data preserved by every isomorphism.
    fn invariant_profile(&self) -> Vec<(bool, bool, usize)> {
        self.elements()
            .map(|a| {
                let idem = self.op(a, a) == a;
                let zero_image = self.prime(a) == 0;
                let hits = self.table.iter().filter(|&&v| v == a).count();
                (idem, zero_image, hits)
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("algebra serialisation cannot fail")
    }

    /// Reads one algebra: the JSON object form, a bare JSON array of rows,
    /// or the plain Cayley form (size on the first line, then `n` rows).
    pub fn parse(src: &str) -> Result<FiniteAlgebra, AlgebraError> {
        let trimmed = src.trim_start();
        if trimmed.starts_with('{') {
            serde_json::from_str(trimmed).map_err(|e| AlgebraError::Format(e.to_string()))
        } else if trimmed.starts_with('[') {
            let rows: Vec<Vec<usize>> =
                serde_json::from_str(trimmed).map_err(|e| AlgebraError::Format(e.to_string()))?;
            FiniteAlgebra::from_rows(&rows)
        } else {
            parse_cayley(trimmed)
        }
    }

    /// Reads a JSON-lines stream. Lines without a `table` field (such as the
    /// metadata trailer written by `enumerate`) are skipped.
    pub fn parse_stream(src: &str) -> Result<Vec<FiniteAlgebra>, AlgebraError> {
        let trimmed = src.trim_start();
        if !trimmed.starts_with('{') {
            return FiniteAlgebra::parse(trimmed).map(|a| vec![a]);
        }
        let mut out = Vec::new();
        for line in trimmed.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let value: serde_json::Value =
                serde_json::from_str(line).map_err(|e| AlgebraError::Format(e.to_string()))?;
            if value.get("table").is_some() {
                out.push(
                    serde_json::from_value(value)
                        .map_err(|e| AlgebraError::Format(e.to_string()))?,
                );
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAlgebra({})", self.to_json())
    }
}

/// Cayley layout: one row per line.
impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size)?;
        for row in self.table.chunks(self.size) {
            writeln!(f, "{}", row.iter().join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    size: usize,
    table: Vec<Vec<usize>>,
}

impl Serialize for FiniteAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AlgebraDoc {
            size: self.size,
            table: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = AlgebraDoc::deserialize(d)?;
        if doc.table.len() != doc.size {
            return Err(serde::de::Error::custom(format!(
                "size is {} but the table has {} rows",
                doc.size,
                doc.table.len()
            )));
        }
        FiniteAlgebra::from_rows(&doc.table).map_err(serde::de::Error::custom)
    }
}

fn parse_cayley(src: &str) -> Result<FiniteAlgebra, AlgebraError> {
    let mut lines = src.lines().map(str::trim).filter(|l| !l.is_empty());
    let size: usize = lines
        .next()
        .ok_or_else(|| AlgebraError::Format("empty input".into()))?
        .parse()
        .map_err(|_| AlgebraError::Format("first line must be the size".into()))?;
    let mut rows = Vec::with_capacity(size);
    for line in lines {
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| AlgebraError::Format(format!("bad entry `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != size {
        return Err(AlgebraError::Format(format!(
            "expected {size} rows, found {}",
            rows.len()
        )));
    }
    FiniteAlgebra::from_rows(&rows)
}

/// All permutations of `0..n` that fix `0`.
pub fn fixed_zero_permutations(n: usize) -> impl Iterator<Item = Vec<Element>> {
    let rest = (1..n as Element).collect::<Vec<_>>();
    let k = rest.len();
    rest.into_iter().permutations(k).map(|tail| {
        let mut p = Vec::with_capacity(tail.len() + 1);
        p.push(0);
        p.extend(tail);
        p
    })
}

/// Little-endian mixed-radix increment. Returns false after the last value.
fn advance(values: &mut [Element], radix: usize) -> bool {
    for v in values.iter_mut() {
        if (*v as usize) + 1 < radix {
            *v += 1;
            return true;
        }
        *v = 0;
    }
    false
}

/// `(I)` and `0'' = 0`.
pub fn defining_identities() -> &'static [Identity; 2] {
    static IDS: OnceLock<[Identity; 2]> = OnceLock::new();
    IDS.get_or_init(|| {
        [
            parse_identity("(x -> y) -> z = ((z' -> x) -> (y -> z)')'")
                .expect("static identity")
                .with_name("I"),
            parse_identity("0'' = 0")
                .expect("static identity")
                .with_name("0''=0"),
        ]
    })
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Zero,
    Arrow,
}

/// Postfix form of a term with variables resolved to slots.
#[derive(Clone, Debug)]
struct Program {
    ops: Vec<Op>,
}

impl Program {
    fn compile(t: &Term, vars: &[String]) -> Program {
        fn go(t: &Term, vars: &[String], ops: &mut Vec<Op>) {
            match t {
                Term::Zero => ops.push(Op::Zero),
                Term::Var(name) => {
                    let slot = vars
                        .iter()
                        .position(|v| v == name)
                        .expect("variable list covers the term");
                    ops.push(Op::Var(slot));
                }
                Term::Arrow(l, r) => {
                    go(l, vars, ops);
                    go(r, vars, ops);
                    ops.push(Op::Arrow);
                }
            }
        }
        let mut ops = Vec::new();
        go(t, vars, &mut ops);
        Program { ops }
    }

    fn run(&self, alg: &FiniteAlgebra, values: &[Element], stack: &mut Vec<Element>) -> Element {
        stack.clear();
        for op in &self.ops {
            match *op {
                Op::Zero => stack.push(0),
                Op::Var(i) => stack.push(values[i]),
                Op::Arrow => {
                    let r = stack.pop().expect("well-formed program");
                    let l = stack.pop().expect("well-formed program");
                    stack.push(alg.op(l, r));
                }
            }
        }
        stack.pop().expect("well-formed program")
    }
}

/// A valuation of variables in the carrier, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment {
    bindings: Vec<(String, Element)>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, Element)>) -> Assignment {
        let mut a = Assignment::new();
        for (k, v) in pairs {
            a.set(k, v);
        }
        a
    }

    pub fn set(&mut self, name: impl Into<String>, value: Element) {
        let name = name.into();
        match self.bindings.iter_mut().find(|(k, _)| *k == name) {
            Some(slot) => slot.1 = value,
            None => self.bindings.push((name, value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<Element> {
        self.bindings
            .iter()
            .find(|(k, _)| k == name)
            .map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Element)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.bindings.len()))?;
        for (k, v) in &self.bindings {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// A falsifying assignment for an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub assignment: Assignment,
    #[serde(rename = "lhs")]
    pub lhs_value: Element,
    #[serde(rename = "rhs")]
    pub rhs_value: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfaction {
    Holds,
    Fails(Witness),
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Satisfaction::Holds => None,
            Satisfaction::Fails(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<Witness> {
        match self {
            Satisfaction::Holds => None,
            Satisfaction::Fails(w) => Some(w),
        }
    }
}

/// `A_mj = <A, ^, v>` computed from a source algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivedBimagma {
    size: usize,
    meet: Vec<Element>,
    join: Vec<Element>,
}

impl DerivedBimagma {
    /// Builds a bimagma from raw tables, mainly for tests of the
    /// classification predicates.
    pub fn from_tables(
        size: usize,
        meet: Vec<Element>,
        join: Vec<Element>,
    ) -> Result<DerivedBimagma, AlgebraError> {
        FiniteAlgebra::new(size, meet.clone())?;
        FiniteAlgebra::new(size, join.clone())?;
        Ok(DerivedBimagma { size, meet, join })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn meet(&self, a: Element, b: Element) -> Element {
        self.meet[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn join(&self, a: Element, b: Element) -> Element {
        self.join[a as usize * self.size + b as usize]
    }

    pub fn meet_table(&self) -> &[Element] {
        &self.meet
    }

    pub fn join_table(&self) -> &[Element] {
        &self.join
    }

    pub fn meet_rows(&self) -> Vec<Vec<usize>> {
        to_rows(&self.meet, self.size)
    }

    pub fn join_rows(&self) -> Vec<Vec<usize>> {
        to_rows(&self.join, self.size)
    }
}

impl Serialize for DerivedBimagma {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("size", &self.size)?;
        map.serialize_entry("meet", &self.meet_rows())?;
        map.serialize_entry("join", &self.join_rows())?;
        map.end()
    }
}

fn to_rows(table: &[Element], n: usize) -> Vec<Vec<usize>> {
    table
        .chunks(n)
        .map(|r| r.iter().map(|&v| v as usize).collect())
        .collect()
}
