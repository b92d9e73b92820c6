//! Membership in the named subvarieties of implication zroupoids, and the
//! bisemigroup / bisemilattice / Birkhoff hierarchy on the derived algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{defining_identities, DerivedBimagma, Element, FiniteAlgebra, Witness};
use crate::term::{parse_identity, Identity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variety {
    /// Implication zroupoids.
    I,
    /// Involutive: `x'' = x`.
    I20,
    /// Meet-commutative: `x ^ y = y ^ x`.
    MC,
    /// Symmetric: involutive and meet-commutative.
    S,
    /// Implication semigroups: `->` is associative.
    IS,
}

impl Variety {
    pub const ALL: [Variety; 5] = [
        Variety::I,
        Variety::I20,
        Variety::MC,
        Variety::S,
        Variety::IS,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variety::I => "I",
            Variety::I20 => "I20",
            Variety::MC => "MC",
            Variety::S => "S",
            Variety::IS => "IS",
        }
    }

    /// Whether `x'' = x` is pushed into the search instead of post-filtered.
    pub fn is_involutive(self) -> bool {
        matches!(self, Variety::I20 | Variety::S)
    }

    /// Table-level test of the identities this variety adds on top of `I`.
    /// The caller is responsible for `I` itself.
    pub fn accepts_izroupoid(self, alg: &FiniteAlgebra) -> bool {
        match self {
            Variety::I => true,
            Variety::I20 => is_involutive_table(alg),
            Variety::MC => is_meet_commutative_table(alg),
            Variety::S => is_involutive_table(alg) && is_meet_commutative_table(alg),
            Variety::IS => is_associative_table(alg),
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variety {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "i" => Ok(Variety::I),
            "i20" => Ok(Variety::I20),
            "mc" => Ok(Variety::MC),
            "s" => Ok(Variety::S),
            "is" => Ok(Variety::IS),
            other => Err(format!(
                "unknown variety `{other}` (expected i, i20, mc, s or is)"
            )),
        }
    }
}

/// Named identities used throughout classification.
pub struct Laws {
    pub involutive: Identity,
    pub meet_commutative: Identity,
    pub associative: Identity,
    pub birkhoff: Identity,
}

pub fn laws() -> &'static Laws {
    static LAWS: OnceLock<Laws> = OnceLock::new();
    LAWS.get_or_init(|| {
        let p = |name: &str, src: &str| {
            parse_identity(src)
                .expect("static identity")
                .with_name(name)
        };
        Laws {
            involutive: p("I20", "x'' = x"),
            meet_commutative: p("MC", "x ^ y = y ^ x"),
            associative: p("A", "x -> (y -> z) = (x -> y) -> z"),
            birkhoff: p("BR", "x ^ (x v y) = x v (x ^ y)"),
        }
    })
}

fn is_involutive_table(alg: &FiniteAlgebra) -> bool {
    alg.elements().all(|a| alg.prime(alg.prime(a)) == a)
}

fn is_meet_commutative_table(alg: &FiniteAlgebra) -> bool {
    let meet = |a, b| alg.prime(alg.op(a, alg.prime(b)));
    alg.elements()
        .all(|a| alg.elements().all(|b| meet(a, b) == meet(b, a)))
}

fn is_associative_table(alg: &FiniteAlgebra) -> bool {
    associativity_violation(alg.size(), |a, b| alg.op(a, b), "->").is_none()
}

/// A concrete violation of a table law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableWitness {
    pub law: &'static str,
    pub operation: &'static str,
    pub elements: Vec<Element>,
    pub lhs: Element,
    pub rhs: Element,
}

fn associativity_violation(
    n: usize,
    f: impl Fn(Element, Element) -> Element,
    operation: &'static str,
) -> Option<TableWitness> {
    for a in 0..n as Element {
        for b in 0..n as Element {
            let ab = f(a, b);
            for c in 0..n as Element {
                let l = f(ab, c);
                let r = f(a, f(b, c));
                if l != r {
                    return Some(TableWitness {
                        law: "associativity",
                        operation,
                        elements: vec![a, b, c],
                        lhs: l,
                        rhs: r,
                    });
                }
            }
        }
    }
    None
}

fn commutativity_violation(
    n: usize,
    f: impl Fn(Element, Element) -> Element,
    operation: &'static str,
) -> Option<TableWitness> {
    for a in 0..n as Element {
        for b in 0..n as Element {
            let (l, r) = (f(a, b), f(b, a));
            if l != r {
                return Some(TableWitness {
                    law: "commutativity",
                    operation,
                    elements: vec![a, b],
                    lhs: l,
                    rhs: r,
                });
            }
        }
    }
    None
}

fn idempotency_violation(
    n: usize,
    f: impl Fn(Element, Element) -> Element,
    operation: &'static str,
) -> Option<TableWitness> {
    (0..n as Element).find_map(|a| {
        let v = f(a, a);
        (v != a).then(|| TableWitness {
            law: "idempotency",
            operation,
            elements: vec![a],
            lhs: v,
            rhs: a,
        })
    })
}

/// Both operations associative.
pub fn is_bisemigroup(bm: &DerivedBimagma) -> Result<(), TableWitness> {
    let n = bm.size();
    match associativity_violation(n, |a, b| bm.meet(a, b), "meet")
        .or_else(|| associativity_violation(n, |a, b| bm.join(a, b), "join"))
    {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

/// Both operations associative, commutative and idempotent.
pub fn is_bisemilattice(bm: &DerivedBimagma) -> Result<(), TableWitness> {
    let n = bm.size();
    let meet = |a, b| bm.meet(a, b);
    let join = |a, b| bm.join(a, b);
    let violation = associativity_violation(n, meet, "meet")
        .or_else(|| commutativity_violation(n, meet, "meet"))
        .or_else(|| idempotency_violation(n, meet, "meet"))
        .or_else(|| associativity_violation(n, join, "join"))
        .or_else(|| commutativity_violation(n, join, "join"))
        .or_else(|| idempotency_violation(n, join, "join"));
    match violation {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

/// `a ^ (a v b) = a v (a ^ b)` for all `a, b`.
pub fn satisfies_birkhoff(bm: &DerivedBimagma) -> Result<(), TableWitness> {
    let n = bm.size() as Element;
    for a in 0..n {
        for b in 0..n {
            let l = bm.meet(a, bm.join(a, b));
            let r = bm.join(a, bm.meet(a, b));
            if l != r {
                return Err(TableWitness {
                    law: "birkhoff",
                    operation: "meet/join",
                    elements: vec![a, b],
                    lhs: l,
                    rhs: r,
                });
            }
        }
    }
    Ok(())
}

/// The two operations coincide and are associative.
pub fn essentially_semigroup(bm: &DerivedBimagma) -> bool {
    bm.meet_table() == bm.join_table()
        && associativity_violation(bm.size(), |a, b| bm.meet(a, b), "meet").is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    Assignment(Witness),
    Elements(TableWitness),
}

impl From<Witness> for Evidence {
    fn from(w: Witness) -> Self {
        Evidence::Assignment(w)
    }
}

impl From<TableWitness> for Evidence {
    fn from(w: TableWitness) -> Self {
        Evidence::Elements(w)
    }
}

/// Field names match the serialized flag names.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub in_I: bool,
    pub in_I20: bool,
    pub in_MC: bool,
    pub in_S: bool,
    pub in_IS: bool,
    pub derived_is_bisemigroup: bool,
    pub derived_is_bisemilattice: bool,
    pub derived_satisfies_BR: bool,
    pub derived_is_birkhoff_system: bool,
    pub derived_is_birkhoff_bisemigroup: bool,
    pub derived_essentially_semigroup: bool,
    pub witnesses: BTreeMap<&'static str, Evidence>,
}

impl ClassificationReport {
    pub fn in_variety(&self, v: Variety) -> bool {
        match v {
            Variety::I => self.in_I,
            Variety::I20 => self.in_I20,
            Variety::MC => self.in_MC,
            Variety::S => self.in_S,
            Variety::IS => self.in_IS,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialisation cannot fail")
    }
}

/// Computes every flag by its own exhaustive check. Membership in the named
/// subvarieties requires membership in `I`.
pub fn classify(alg: &FiniteAlgebra) -> ClassificationReport {
    let mut witnesses = BTreeMap::new();
    let l = laws();

    let i_failure = defining_identities()
        .iter()
        .find_map(|id| alg.satisfies(id).into_witness());
    let in_i = i_failure.is_none();
    if let Some(w) = i_failure {
        witnesses.insert("in_I", w.into());
    }

    let mut identity_flag =
        |key: &'static str, id: &Identity| match alg.satisfies(id).into_witness() {
            Some(w) => {
                witnesses.insert(key, Evidence::from(w));
                false
            }
            None => in_i,
        };
    let in_i20 = identity_flag("in_I20", &l.involutive);
    let in_mc = identity_flag("in_MC", &l.meet_commutative);
    let in_is = identity_flag("in_IS", &l.associative);

    let bm = alg.derive_bimagma();

    // S by the table route, independent of the term evaluator used above.
    let in_s = in_i
        && is_involutive_table(alg)
        && commutativity_violation(bm.size(), |a, b| bm.meet(a, b), "meet").is_none();
    assert_eq!(
        in_s,
        in_i && in_i20 && in_mc,
        "S membership disagrees with I20 and MC for {alg:?}"
    );
    if !in_s {
        let w = witnesses
            .get("in_I")
            .or_else(|| witnesses.get("in_I20"))
            .or_else(|| witnesses.get("in_MC"))
            .cloned();
        if let Some(w) = w {
            witnesses.insert("in_S", w);
        }
    }

    let mut table_flag = |key: &'static str, r: Result<(), TableWitness>| match r {
        Ok(()) => true,
        Err(w) => {
            witnesses.insert(key, w.into());
            false
        }
    };
    let bisemigroup = table_flag("derived_is_bisemigroup", is_bisemigroup(&bm));
    let bisemilattice = table_flag("derived_is_bisemilattice", is_bisemilattice(&bm));
    let birkhoff = table_flag("derived_satisfies_BR", satisfies_birkhoff(&bm));
    let birkhoff_system = table_flag(
        "derived_is_birkhoff_system",
        is_bisemilattice(&bm).and_then(|_| satisfies_birkhoff(&bm)),
    );
    let birkhoff_bisemigroup = table_flag(
        "derived_is_birkhoff_bisemigroup",
        is_bisemigroup(&bm).and_then(|_| satisfies_birkhoff(&bm)),
    );
    let essentially = essentially_semigroup(&bm);
    if !essentially {
        if let Some(w) = first_table_mismatch(&bm) {
            witnesses.insert("derived_essentially_semigroup", w.into());
        } else if let Err(w) = is_bisemigroup(&bm) {
            witnesses.insert("derived_essentially_semigroup", w.into());
        }
    }

    assert_eq!(birkhoff_system, bisemilattice && birkhoff);
    assert_eq!(birkhoff_bisemigroup, bisemigroup && birkhoff);

    ClassificationReport {
        in_I: in_i,
        in_I20: in_i20,
        in_MC: in_mc,
        in_S: in_s,
        in_IS: in_is,
        derived_is_bisemigroup: bisemigroup,
        derived_is_bisemilattice: bisemilattice,
        derived_satisfies_BR: birkhoff,
        derived_is_birkhoff_system: birkhoff_system,
        derived_is_birkhoff_bisemigroup: birkhoff_bisemigroup,
        derived_essentially_semigroup: essentially,
        witnesses,
    }
}

fn first_table_mismatch(bm: &DerivedBimagma) -> Option<TableWitness> {
    let n = bm.size() as Element;
    for a in 0..n {
        for b in 0..n {
            let (m, j) = (bm.meet(a, b), bm.join(a, b));
            if m != j {
                return Some(TableWitness {
                    law: "meet = join",
                    operation: "meet/join",
                    elements: vec![a, b],
                    lhs: m,
                    rhs: j,
                });
            }
        }
    }
    None
}
