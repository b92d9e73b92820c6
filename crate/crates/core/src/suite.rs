//! Executable checks of identity catalogs and named statements over
//! enumerated finite models.
//!
//! Every suite enumerates its scope up to isomorphism (identities are
//! invariant under relabeling) and checks each algebra independently.
//! Failures are reported in canonical algebra order, so results are
//! identical for any number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FiniteAlgebra;
use crate::catalogs;
use crate::error::SuiteError;
use crate::search::{enumerate_up_to, MAX_SEARCH_SIZE};
use crate::term::{Identity, IdentityCatalog, Term};
use crate::varieties::{
    essentially_semigroup, is_bisemigroup, is_bisemilattice, laws, satisfies_birkhoff, Evidence,
    TableWitness, Variety,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub variety: Variety,
    pub max_size: usize,
}

impl Scope {
    pub fn new(variety: Variety, max_size: usize) -> Result<Scope, SuiteError> {
        if max_size == 0 || max_size > MAX_SEARCH_SIZE {
            return Err(SuiteError::SizeOutOfBounds(max_size));
        }
        Ok(Scope { variety, max_size })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Incomplete,
}

impl Verdict {
    /// 0 on pass, 1 on fail, 2 on incomplete.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Incomplete => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Incomplete => "incomplete",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Detail {
    Evidence(Evidence),
    Flags(BTreeMap<String, bool>),
}

impl From<Evidence> for Detail {
    fn from(e: Evidence) -> Self {
        Detail::Evidence(e)
    }
}

impl From<TableWitness> for Detail {
    fn from(w: TableWitness) -> Self {
        Detail::Evidence(w.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub algebra: FiniteAlgebra,
    pub check: String,
    pub witness: Detail,
}

/// Per-identity outcome of the transfer harness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferRow {
    pub name: String,
    pub holds_i20: bool,
    pub holds_i: bool,
    pub red_flag: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub scope: Scope,
    pub checked: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub transfer: Vec<TransferRow>,
    pub verdict: Verdict,
}

impl SuiteResult {
    fn new(
        suite: &str,
        scope: Scope,
        checked: usize,
        failures: Vec<Failure>,
        complete: bool,
    ) -> Self {
        let verdict = if !failures.is_empty() {
            Verdict::Fail
        } else if !complete {
            Verdict::Incomplete
        } else {
            Verdict::Pass
        };
        SuiteResult {
            suite: suite.to_string(),
            scope,
            checked,
            failures,
            transfer: Vec::new(),
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn red_flags(&self) -> impl Iterator<Item = &TransferRow> {
        self.transfer.iter().filter(|r| r.red_flag)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("suite result serialisation cannot fail")
    }
}

fn scoped_algebras(
    scope: Scope,
    budget: Option<Duration>,
) -> Result<(Vec<FiniteAlgebra>, bool), SuiteError> {
    let e = enumerate_up_to(scope.max_size, scope.variety, budget)
        .map_err(|_| SuiteError::SizeOutOfBounds(scope.max_size))?;
    Ok((e.algebras, e.complete))
}

fn check_all<F>(algebras: &[FiniteAlgebra], check: F) -> Vec<Failure>
where
    F: Fn(&FiniteAlgebra) -> Vec<Failure> + Sync + Send,
{
    algebras
        .par_iter()
        .map(check)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn identity_failures(alg: &FiniteAlgebra, catalog: &IdentityCatalog) -> Vec<Failure> {
    catalog
        .iter()
        .filter_map(|id| {
            alg.satisfies(id).into_witness().map(|w| Failure {
                algebra: alg.clone(),
                check: id.label(),
                witness: Detail::Evidence(w.into()),
            })
        })
        .collect()
}

/// Checks every identity of `catalog` on every algebra in `scope`.
pub fn run_catalog_suite(
    name: &str,
    scope: Scope,
    catalog: &IdentityCatalog,
    budget: Option<Duration>,
) -> Result<SuiteResult, SuiteError> {
    let (algebras, complete) = scoped_algebras(scope, budget)?;
    let failures = check_all(&algebras, |alg| identity_failures(alg, catalog));
    Ok(SuiteResult::new(
        name,
        scope,
        algebras.len(),
        failures,
        complete,
    ))
}

/// The four conditions of the equivalence catalog must be jointly true or
/// jointly false on each implication zroupoid.
pub fn run_equivalence_suite(
    scope: Scope,
    budget: Option<Duration>,
) -> Result<SuiteResult, SuiteError> {
    let catalog = catalogs::equivalence();
    let (algebras, complete) = scoped_algebras(scope, budget)?;
    let failures = check_all(&algebras, |alg| {
        let flags: BTreeMap<String, bool> = catalog
            .iter()
            .map(|id| (id.label(), alg.holds(id)))
            .collect();
        let first = flags.values().next().copied();
        if flags.values().all(|&v| Some(v) == first) {
            Vec::new()
        } else {
            vec![Failure {
                algebra: alg.clone(),
                check: "equivalence-cluster".into(),
                witness: Detail::Flags(flags),
            }]
        }
    });
    Ok(SuiteResult::new(
        "equivalence",
        scope,
        algebras.len(),
        failures,
        complete,
    ))
}

/// A named, quantified statement about finite models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statement {
    /// Every derived algebra of an `I` member satisfies (BR).
    Main,
    /// Same, restricted to involutive members.
    TheoBsI20,
    /// The derived algebra is a Birkhoff system iff the algebra is in `S`.
    CorollaryIff,
    /// On `S`: meet and join idempotent, join commutative, (BR).
    STheorem,
    /// The derived meet and join are associative on `I`.
    Bisemigroup,
    /// On `IS`: `0 -> 0' = 0`, `0 -> x' = x'`, `0' = 0`, `x v y = x ^ y`.
    IsLemma,
    /// On `IS`: the derived algebra is essentially a semigroup.
    IsCorollary,
    /// On `IS`: the derived algebra satisfies (BR).
    IsBirkhoff,
}

impl Statement {
    pub const ALL: [Statement; 8] = [
        Statement::Main,
        Statement::TheoBsI20,
        Statement::CorollaryIff,
        Statement::STheorem,
        Statement::Bisemigroup,
        Statement::IsLemma,
        Statement::IsCorollary,
        Statement::IsBirkhoff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statement::Main => "main",
            Statement::TheoBsI20 => "theo-BS-I20",
            Statement::CorollaryIff => "corollary-iff",
            Statement::STheorem => "s-theorem",
            Statement::Bisemigroup => "bisemigroup",
            Statement::IsLemma => "is-lemma",
            Statement::IsCorollary => "is-corollary",
            Statement::IsBirkhoff => "is-birkhoff",
        }
    }

    pub fn from_name(name: &str) -> Option<Statement> {
        Statement::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn variety(self) -> Variety {
        match self {
            Statement::Main | Statement::CorollaryIff | Statement::Bisemigroup => Variety::I,
            Statement::TheoBsI20 => Variety::I20,
            Statement::STheorem => Variety::S,
            Statement::IsLemma | Statement::IsCorollary | Statement::IsBirkhoff => Variety::IS,
        }
    }

    fn check(self, alg: &FiniteAlgebra) -> Vec<Failure> {
        let fail = |check: &str, witness: Detail| {
            vec![Failure {
                algebra: alg.clone(),
                check: check.to_string(),
                witness,
            }]
        };
        let bm = alg.derive_bimagma();
        match self {
            Statement::Main | Statement::TheoBsI20 | Statement::IsBirkhoff => {
                match satisfies_birkhoff(&bm) {
                    Ok(()) => Vec::new(),
                    Err(w) => fail("BR", w.into()),
                }
            }
            Statement::Bisemigroup => match is_bisemigroup(&bm) {
                Ok(()) => Vec::new(),
                Err(w) => fail("bisemigroup", w.into()),
            },
            Statement::CorollaryIff => {
                let birkhoff_system =
                    is_bisemilattice(&bm).is_ok() && satisfies_birkhoff(&bm).is_ok();
                let l = laws();
                let in_s = alg.holds(&l.involutive) && alg.holds(&l.meet_commutative);
                if birkhoff_system == in_s {
                    Vec::new()
                } else {
                    let flags = BTreeMap::from([
                        ("derived_is_birkhoff_system".to_string(), birkhoff_system),
                        ("in_S".to_string(), in_s),
                    ]);
                    fail("birkhoff-system-iff-S", Detail::Flags(flags))
                }
            }
            Statement::STheorem => identity_failures(alg, &statement_catalog("S-")),
            Statement::IsLemma => identity_failures(alg, &statement_catalog("IS-")),
            Statement::IsCorollary => {
                if essentially_semigroup(&bm) {
                    Vec::new()
                } else {
                    let flags = BTreeMap::from([
                        (
                            "meet_equals_join".to_string(),
                            bm.meet_table() == bm.join_table(),
                        ),
                        ("bisemigroup".to_string(), is_bisemigroup(&bm).is_ok()),
                    ]);
                    fail("essentially-semigroup", Detail::Flags(flags))
                }
            }
        }
    }
}

fn statement_catalog(prefix: &str) -> IdentityCatalog {
    let mut out = IdentityCatalog::new();
    for id in catalogs::statements().iter() {
        if id.label().starts_with(prefix) {
            out.push(id.clone())
                .expect("names are unique in the source");
        }
    }
    out
}

pub fn run_statement_suite(
    name: &str,
    max_size: usize,
    budget: Option<Duration>,
) -> Result<SuiteResult, SuiteError> {
    let stmt = Statement::from_name(name).ok_or_else(|| SuiteError::UnknownSuite(name.into()))?;
    let scope = Scope::new(stmt.variety(), max_size)?;
    let (algebras, complete) = scoped_algebras(scope, budget)?;
    let failures = check_all(&algebras, |alg| stmt.check(alg));
    Ok(SuiteResult::new(
        stmt.name(),
        scope,
        algebras.len(),
        failures,
        complete,
    ))
}

/// For each identity, compares satisfaction on the involutive members with
/// satisfaction on all members up to `max_size`. An identity holding on the
/// former but not the latter is a red flag. Red flags are reported but do
/// not fail the suite.
pub fn run_transfer_harness(
    catalog: &IdentityCatalog,
    max_size: usize,
    budget: Option<Duration>,
) -> Result<SuiteResult, SuiteError> {
    if let Some(bad) = catalog.iter().find(|id| !id.is_transfer_shape()) {
        return Err(SuiteError::NotTransferShaped(bad.label()));
    }
    let scope = Scope::new(Variety::I, max_size)?;
    let (algebras, complete) = scoped_algebras(scope, budget)?;
    let involutive: Vec<bool> = algebras
        .iter()
        .map(|a| Variety::I20.accepts_izroupoid(a))
        .collect();

    let rows: Vec<TransferRow> = catalog
        .entries()
        .par_iter()
        .map(|id| {
            let holds: Vec<bool> = algebras.iter().map(|a| a.holds(id)).collect();
            let holds_i = holds.iter().all(|&h| h);
            let holds_i20 = holds.iter().zip(&involutive).all(|(&h, &inv)| h || !inv);
            TransferRow {
                name: id.label(),
                holds_i20,
                holds_i,
                red_flag: holds_i20 && !holds_i,
            }
        })
        .collect();

    let mut result = SuiteResult::new("transfer", scope, algebras.len(), Vec::new(), complete);
    result.transfer = rows;
    Ok(result)
}

/// Iso-reduced `I` members up to `max_size` whose derived algebra is a
/// Birkhoff bisemigroup but not a bisemilattice.
pub fn search_birkhoff_not_bisemilattice(
    max_size: usize,
    budget: Option<Duration>,
) -> Result<(Vec<FiniteAlgebra>, bool), SuiteError> {
    let scope = Scope::new(Variety::I, max_size)?;
    let (algebras, complete) = scoped_algebras(scope, budget)?;
    let hits = algebras
        .into_par_iter()
        .filter(|alg| {
            let bm = alg.derive_bimagma();
            is_bisemigroup(&bm).is_ok()
                && satisfies_birkhoff(&bm).is_ok()
                && is_bisemilattice(&bm).is_err()
        })
        .collect();
    Ok((hits, complete))
}

/// Names accepted by [`run_suite`].
pub const SUITE_NAMES: [&str; 12] = [
    "main",
    "theo-BS-I20",
    "corollary-iff",
    "s-theorem",
    "bisemigroup",
    "is-lemma",
    "is-corollary",
    "is-birkhoff",
    "lemma-i20",
    "lemma-br",
    "equivalence",
    "transfer",
];

/// Runs any registered suite by name.
pub fn run_suite(
    name: &str,
    max_size: usize,
    budget: Option<Duration>,
) -> Result<SuiteResult, SuiteError> {
    match name {
        "lemma-i20" => run_catalog_suite(
            name,
            Scope::new(Variety::I20, max_size)?,
            catalogs::lemma_i20(),
            budget,
        ),
        "lemma-br" => run_catalog_suite(
            name,
            Scope::new(Variety::I20, max_size)?,
            catalogs::lemma_br(),
            budget,
        ),
        "equivalence" => run_equivalence_suite(Scope::new(Variety::I, max_size)?, budget),
        "transfer" => run_transfer_harness(catalogs::transfer(), max_size, budget),
        other => run_statement_suite(other, max_size, budget),
    }
}

/// Exchanges two variables on the right-hand side only, which turns a valid
/// identity into a (usually) false one.
pub fn swap_rhs_variables(id: &Identity, a: &str, b: &str) -> Identity {
    let swap = |name: &str| {
        if name == a {
            b.to_string()
        } else if name == b {
            a.to_string()
        } else {
            name.to_string()
        }
    };
    let rhs: Term = id.rhs.rename(&swap);
    Identity {
        name: id.name.as_ref().map(|n| format!("{n}~{a}{b}")),
        lhs: id.lhs.clone(),
        rhs,
    }
}
