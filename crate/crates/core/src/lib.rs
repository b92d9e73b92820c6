//! A finite-model laboratory for implication zroupoids: algebras
//! `<A, ->, 0>` satisfying
//!
//! ```text
//! (x -> y) -> z = ((z' -> x) -> (y -> z)')'     and     0'' = 0
//! ```
//!
//! where `x' := x -> 0`, together with their derived meet/join algebras.
//!
//! * [`term`] parses and prints terms and identities.
//! * [`algebra`] evaluates terms in Cayley tables and decides isomorphism.
//! * [`search`] enumerates models of a given size.
//! * [`varieties`] classifies an algebra and its derived bimagma.
//! * [`suite`] turns identity catalogs and named statements into checks.

pub mod algebra;
pub mod catalogs;
mod clock;
pub mod error;
pub mod search;
pub mod suite;
pub mod term;
pub mod varieties;

pub use algebra::{Assignment, DerivedBimagma, Element, FiniteAlgebra, Satisfaction, Witness};
pub use error::{AlgebraError, ParseError, SuiteError};
pub use search::{
    check_partial, count_classes, enumerate, Enumeration, PartialTable, SearchConfig,
};
pub use suite::{run_suite, SuiteResult, Verdict};
pub use term::{parse_identity, parse_term, Identity, IdentityCatalog, Term};
pub use varieties::{classify, ClassificationReport, Variety};
