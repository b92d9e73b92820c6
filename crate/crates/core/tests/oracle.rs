//! Brute-force oracles for the enumerator and canonical forms. Everything
//! here is computed from raw tables with plain loops, independently of the
//! term evaluator and the search.

use std::collections::BTreeSet;

use izlab::algebra::fixed_zero_permutations;
use izlab::search::{enumerate, SearchConfig};
use izlab::{FiniteAlgebra, Variety};

type Table = Vec<u8>;

fn op(t: &[u8], n: usize, a: u8, b: u8) -> u8 {
    t[a as usize * n + b as usize]
}

fn raw_is_izroupoid(t: &[u8], n: usize) -> bool {
    let p = |a: u8| op(t, n, a, 0);
    if p(p(0)) != 0 {
        return false;
    }
    for x in 0..n as u8 {
        for y in 0..n as u8 {
            for z in 0..n as u8 {
                let lhs = op(t, n, op(t, n, x, y), z);
                let rhs = p(op(t, n, op(t, n, p(z), x), p(op(t, n, y, z))));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn raw_in(t: &[u8], n: usize, v: Variety) -> bool {
    if !raw_is_izroupoid(t, n) {
        return false;
    }
    let p = |a: u8| op(t, n, a, 0);
    let meet = |a: u8, b: u8| p(op(t, n, a, p(b)));
    let els = || 0..n as u8;
    let involutive = els().all(|a| p(p(a)) == a);
    let mc = els().all(|a| els().all(|b| meet(a, b) == meet(b, a)));
    let assoc = els().all(|a| {
        els().all(|b| els().all(|c| op(t, n, a, op(t, n, b, c)) == op(t, n, op(t, n, a, b), c)))
    });
    match v {
        Variety::I => true,
        Variety::I20 => involutive,
        Variety::MC => mc,
        Variety::S => involutive && mc,
        Variety::IS => assoc,
    }
}

fn all_tables(n: usize) -> impl Iterator<Item = Table> {
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0u8; cells];
        for c in t.iter_mut() {
            *c = (code % n as u64) as u8;
            code /= n as u64;
        }
        t
    })
}

fn relabel(t: &[u8], n: usize, perm: &[u8]) -> Table {
    let mut out = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a] as usize * n + perm[b] as usize] = perm[t[a * n + b] as usize];
        }
    }
    out
}

fn raw_canonical(t: &[u8], n: usize) -> Table {
    fixed_zero_permutations(n)
        .map(|p| relabel(t, n, &p))
        .min()
        .unwrap()
}

fn brute(n: usize, v: Variety) -> BTreeSet<Table> {
    all_tables(n).filter(|t| raw_in(t, n, v)).collect()
}

fn enumerated(n: usize, v: Variety, iso: bool) -> BTreeSet<Table> {
    let e = enumerate(&SearchConfig::new(n, v).iso_reduce(iso)).unwrap();
    assert!(e.complete);
    let set: BTreeSet<Table> = e.algebras.iter().map(|a| a.table().to_vec()).collect();
    assert_eq!(set.len(), e.algebras.len(), "duplicates in output");
    set
}

#[test]
fn raw_check_agrees_with_term_evaluation() {
    for n in 1..=3 {
        for t in all_tables(n) {
            let alg = FiniteAlgebra::new(n, t.clone()).unwrap();
            assert_eq!(alg.is_izroupoid(), raw_is_izroupoid(&t, n), "{alg}");
        }
    }
}

#[test]
fn labelled_enumeration_equals_brute_force() {
    for n in 1..=3 {
        for v in Variety::ALL {
            assert_eq!(enumerated(n, v, false), brute(n, v), "{v} at size {n}");
        }
    }
}

#[test]
fn iso_reduced_enumeration_equals_brute_force_classes() {
    for n in 1..=3 {
        for v in Variety::ALL {
            let classes: BTreeSet<Table> =
                brute(n, v).iter().map(|t| raw_canonical(t, n)).collect();
            assert_eq!(enumerated(n, v, true), classes, "{v} at size {n}");
        }
    }
}

#[test]
fn canonical_forms_characterise_isomorphism() {
    let members: Vec<FiniteAlgebra> = brute(3, Variety::I)
        .into_iter()
        .map(|t| FiniteAlgebra::new(3, t).unwrap())
        .collect();
    for a in &members {
        for b in &members {
            let raw_iso =
                fixed_zero_permutations(3).any(|p| relabel(a.table(), 3, &p) == b.table());
            let same_form = a.canonical_form().unwrap() == b.canonical_form().unwrap();
            assert_eq!(same_form, raw_iso, "{a:?} vs {b:?}");
            assert_eq!(a.is_isomorphic(b), raw_iso);
            if let Some(perm) = a.isomorphism_to(b) {
                assert_eq!(a.relabel(&perm), *b);
            }
        }
    }
}

/// Straightforward backtracking over row-major cells, checking only the
/// instances of the defining identity that are fully determined.
fn backtrack_size_four() -> Vec<Table> {
    const N: usize = 4;
    const UNSET: u8 = u8::MAX;
    fn ok(t: &[u8]) -> bool {
        let at = |a: u8, b: u8| {
            if a == UNSET || b == UNSET {
                UNSET
            } else {
                t[a as usize * N + b as usize]
            }
        };
        let p = |a: u8| at(a, 0);
        let zpp = p(p(0));
        if zpp != UNSET && zpp != 0 {
            return false;
        }
        for x in 0..N as u8 {
            for y in 0..N as u8 {
                for z in 0..N as u8 {
                    let lhs = at(at(x, y), z);
                    let rhs = p(at(at(p(z), x), p(at(y, z))));
                    if lhs != UNSET && rhs != UNSET && lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(t: &mut Vec<u8>, k: usize, out: &mut Vec<Table>) {
        if k == N * N {
            out.push(t.clone());
            return;
        }
        for v in 0..N as u8 {
            t[k] = v;
            if ok(t) {
                go(t, k + 1, out);
            }
        }
        t[k] = UNSET;
    }
    let mut out = Vec::new();
    go(&mut vec![UNSET; N * N], 0, &mut out);
    out
}

#[test]
fn size_four_matches_naive_backtracking() {
    let labelled: BTreeSet<Table> = backtrack_size_four().into_iter().collect();
    assert!(labelled.iter().all(|t| raw_is_izroupoid(t, 4)));
    assert_eq!(enumerated(4, Variety::I, false), labelled);
    for v in Variety::ALL {
        let classes: BTreeSet<Table> = labelled
            .iter()
            .filter(|t| raw_in(t, 4, v))
            .map(|t| raw_canonical(t, 4))
            .collect();
        assert_eq!(enumerated(4, v, true), classes, "{v} at size 4");
    }
}

/// Counts frozen from the brute-force oracles above.
#[test]
fn golden_counts() {
    let labelled = [
        (Variety::I, [1, 3, 31, 1382]),
        (Variety::I20, [1, 2, 8, 70]),
        (Variety::MC, [1, 3, 29, 1336]),
        (Variety::S, [1, 2, 6, 42]),
        (Variety::IS, [1, 2, 10, 119]),
    ];
    let classes = [
        (Variety::I, [1, 3, 17, 249]),
        (Variety::I20, [1, 2, 5, 18]),
        (Variety::MC, [1, 3, 15, 236]),
        (Variety::S, [1, 2, 3, 9]),
        (Variety::IS, [1, 2, 6, 26]),
    ];
    for (v, counts) in labelled {
        for (i, &c) in counts.iter().enumerate() {
            assert_eq!(
                enumerated(i + 1, v, false).len(),
                c,
                "labelled {v} at size {}",
                i + 1
            );
        }
    }
    for (v, counts) in classes {
        for (i, &c) in counts.iter().enumerate() {
            assert_eq!(
                enumerated(i + 1, v, true).len(),
                c,
                "classes {v} at size {}",
                i + 1
            );
        }
    }
}

/// Involutive classes at size 5, beyond the reach of the oracles.
#[test]
fn golden_involutive_counts_at_five() {
    assert_eq!(enumerated(5, Variety::I20, false).len(), 818);
    assert_eq!(enumerated(5, Variety::I20, true).len(), 61);
    assert_eq!(enumerated(5, Variety::S, false).len(), 304);
    assert_eq!(enumerated(5, Variety::S, true).len(), 18);
}
