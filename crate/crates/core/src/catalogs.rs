//! Identity catalogs shipped with the crate.

use std::sync::OnceLock;

use crate::term::IdentityCatalog;

pub const LEMMA_I20_SRC: &str = include_str!("../catalogs/lemma_i20.txt");
pub const LEMMA_BR_SRC: &str = include_str!("../catalogs/lemma_br.txt");
pub const EQUIVALENCE_SRC: &str = include_str!("../catalogs/equivalence.txt");
pub const STATEMENTS_SRC: &str = include_str!("../catalogs/statements.txt");
pub const TRANSFER_SRC: &str = include_str!("../catalogs/transfer.txt");

fn load(cell: &'static OnceLock<IdentityCatalog>, src: &str) -> &'static IdentityCatalog {
    cell.get_or_init(|| IdentityCatalog::parse(src).expect("shipped catalog parses"))
}

/// 22 identities of involutive implication zroupoids.
pub fn lemma_i20() -> &'static IdentityCatalog {
    static C: OnceLock<IdentityCatalog> = OnceLock::new();
    load(&C, LEMMA_I20_SRC)
}

/// 16 identities leading to the Birkhoff identity in the involutive case.
pub fn lemma_br() -> &'static IdentityCatalog {
    static C: OnceLock<IdentityCatalog> = OnceLock::new();
    load(&C, LEMMA_BR_SRC)
}

/// `0' -> x = x`, `x'' = x`, `(x -> x')' = x`, `x' -> x = x`.
pub fn equivalence() -> &'static IdentityCatalog {
    static C: OnceLock<IdentityCatalog> = OnceLock::new();
    load(&C, EQUIVALENCE_SRC)
}

pub fn statements() -> &'static IdentityCatalog {
    static C: OnceLock<IdentityCatalog> = OnceLock::new();
    load(&C, STATEMENTS_SRC)
}

/// Identities of the shape `(t1 -> t2) -> t3 = (t4 -> t5) -> t6`.
pub fn transfer() -> &'static IdentityCatalog {
    static C: OnceLock<IdentityCatalog> = OnceLock::new();
    load(&C, TRANSFER_SRC)
}
