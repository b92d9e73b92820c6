//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use izlab::catalogs;
use izlab::search::{enumerate, enumerate_up_to, SearchConfig};
use izlab::suite::{
    run_catalog_suite, run_equivalence_suite, run_statement_suite,
    search_birkhoff_not_bisemilattice, swap_rhs_variables, Scope,
};
use izlab::varieties::{
    essentially_semigroup, is_bisemigroup, is_bisemilattice, satisfies_birkhoff,
};
use izlab::{FiniteAlgebra, IdentityCatalog, Variety, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn members_up_to(max: usize, v: Variety, budget: Option<Duration>) -> (Vec<FiniteAlgebra>, bool) {
    let e = enumerate_up_to(max, v, budget).expect("valid scope");
    (e.algebras, e.complete)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for n in 1..=3usize {
        let cells = n * n;
        let brute: BTreeSet<Vec<u8>> = (0..(n as u64).pow(cells as u32))
            .map(|mut code| {
                (0..cells)
                    .map(|_| {
                        let v = (code % n as u64) as u8;
                        code /= n as u64;
                        v
                    })
                    .collect::<Vec<u8>>()
            })
            .filter(|t| FiniteAlgebra::new(n, t.clone()).unwrap().is_izroupoid())
            .collect();
        let e = enumerate(&SearchConfig::new(n, Variety::I).iso_reduce(false)).unwrap();
        let found: BTreeSet<Vec<u8>> = e.algebras.iter().map(|a| a.table().to_vec()).collect();
        ensure(
            e.complete && found.len() == e.algebras.len(),
            format!("size {n}: incomplete or duplicated output"),
        )?;
        ensure(
            found == brute,
            format!(
                "size {n}: {} enumerated vs {} brute force",
                found.len(),
                brute.len()
            ),
        )?;
        total += found.len();
    }
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(30),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "{total} labelled tables match brute force in {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let (small, complete) = members_up_to(3, Variety::I, None);
    ensure(complete, "enumeration up to size 3 incomplete")?;
    let bad = small
        .iter()
        .filter(|a| satisfies_birkhoff(&a.derive_bimagma()).is_err())
        .count();
    ensure(bad == 0, format!("{bad} failures up to size 3"))?;
    let e = enumerate(&SearchConfig::new(4, Variety::I).budget(Some(Duration::from_secs(600))))
        .unwrap();
    let bad4 = e
        .algebras
        .iter()
        .filter(|a| satisfies_birkhoff(&a.derive_bimagma()).is_err())
        .count();
    ensure(bad4 == 0, format!("{bad4} failures at size 4"))?;
    Ok(format!(
        "{} classes up to size 3 and {} at size 4 ({}) satisfy BR",
        small.len(),
        e.algebras.len(),
        if e.complete {
            "complete"
        } else {
            "budget exhausted"
        }
    ))
}

fn criterion_3() -> Outcome {
    let r = run_statement_suite("bisemigroup", 3, None).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::Pass, r.to_json())?;
    let (algs, _) = members_up_to(3, Variety::I, None);
    ensure(
        algs.iter()
            .all(|a| is_bisemigroup(&a.derive_bimagma()).is_ok()),
        "direct recheck failed",
    )?;
    Ok(format!("{} classes, zero failures", r.checked))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let scope = Scope::new(Variety::I20, 3).unwrap();
    let a = run_catalog_suite("lemma-i20", scope, catalogs::lemma_i20(), None)
        .map_err(|e| e.to_string())?;
    let b = run_catalog_suite("lemma-br", scope, catalogs::lemma_br(), None)
        .map_err(|e| e.to_string())?;
    ensure(
        catalogs::lemma_i20().len() == 22 && catalogs::lemma_br().len() == 16,
        "catalog sizes",
    )?;
    ensure(a.passed(), a.to_json())?;
    ensure(b.passed(), b.to_json())?;
    let elapsed = start.elapsed();
    ensure(
        elapsed < Duration::from_secs(120),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "22 + 16 identities on {} classes in {elapsed:.2?}",
        a.checked
    ))
}

fn criterion_5() -> Outcome {
    let r = run_equivalence_suite(Scope::new(Variety::I, 3).unwrap(), None)
        .map_err(|e| e.to_string())?;
    ensure(r.passed(), r.to_json())?;
    Ok(format!("{} classes, zero cluster violations", r.checked))
}

fn criterion_6() -> Outcome {
    let r = run_statement_suite("corollary-iff", 3, None).map_err(|e| e.to_string())?;
    ensure(r.passed(), r.to_json())?;
    let (algs, _) = members_up_to(3, Variety::I, None);
    let s: BTreeSet<_> = members_up_to(3, Variety::S, None).0.into_iter().collect();
    let mut both = 0;
    for a in &algs {
        let bm = a.derive_bimagma();
        let system = is_bisemilattice(&bm).is_ok() && satisfies_birkhoff(&bm).is_ok();
        ensure(system == s.contains(a), format!("disagreement on {a}"))?;
        both += system as usize;
    }
    Ok(format!(
        "{} classes, {both} Birkhoff systems, all in S and conversely",
        algs.len()
    ))
}

fn criterion_7() -> Outcome {
    let lemma = run_statement_suite("is-lemma", 4, None).map_err(|e| e.to_string())?;
    let corollary = run_statement_suite("is-corollary", 4, None).map_err(|e| e.to_string())?;
    ensure(lemma.passed(), lemma.to_json())?;
    ensure(corollary.passed(), corollary.to_json())?;
    let (algs, complete) = members_up_to(4, Variety::IS, None);
    ensure(complete, "enumeration incomplete")?;
    for a in &algs {
        let bm = a.derive_bimagma();
        ensure(a.prime(0) == 0, format!("0' != 0 on {a}"))?;
        ensure(
            a.elements().all(|x| a.op(0, a.prime(x)) == a.prime(x)),
            format!("0 -> x' != x' on {a}"),
        )?;
        ensure(
            bm.meet_table() == bm.join_table(),
            format!("join != meet on {a}"),
        )?;
        ensure(
            essentially_semigroup(&bm),
            format!("not essentially a semigroup: {a}"),
        )?;
    }
    Ok(format!(
        "{} implication semigroups up to size 4",
        algs.len()
    ))
}

fn criterion_8() -> Outcome {
    let (hits, complete) = search_birkhoff_not_bisemilattice(4, None).map_err(|e| e.to_string())?;
    ensure(!hits.is_empty(), "no counterexample found")?;
    for a in &hits {
        let bm = a.derive_bimagma();
        ensure(a.is_izroupoid(), format!("not a member: {a}"))?;
        ensure(
            is_bisemigroup(&bm).is_ok(),
            format!("not a bisemigroup: {a}"),
        )?;
        ensure(satisfies_birkhoff(&bm).is_ok(), format!("fails BR: {a}"))?;
        ensure(
            is_bisemilattice(&bm).is_err(),
            format!("is a bisemilattice: {a}"),
        )?;
    }
    let smallest = hits.iter().map(|a| a.size()).min().unwrap();
    Ok(format!(
        "{} found up to size 4 ({}), smallest of size {smallest}",
        hits.len(),
        if complete {
            "complete"
        } else {
            "budget exhausted"
        }
    ))
}

fn criterion_9() -> Outcome {
    let r = izlab::suite::run_transfer_harness(catalogs::transfer(), 3, None)
        .map_err(|e| e.to_string())?;
    let flags: Vec<&str> = r.red_flags().map(|f| f.name.as_str()).collect();
    ensure(flags.is_empty(), format!("red flags: {flags:?}"))?;
    Ok(format!(
        "{} transfer-shaped identities, no red flags",
        r.transfer.len()
    ))
}

fn criterion_10() -> Outcome {
    let scope = Scope::new(Variety::I20, 3).unwrap();
    let mut caught = 0;
    for catalog in [catalogs::lemma_i20(), catalogs::lemma_br()] {
        for id in catalog.iter() {
            let vars = id.variables();
            for (i, a) in vars.iter().enumerate() {
                for b in &vars[i + 1..] {
                    let mutant = swap_rhs_variables(id, a, b);
                    let mut single = IdentityCatalog::new();
                    single.push(mutant.clone()).unwrap();
                    let r = run_catalog_suite("mutant", scope, &single, None)
                        .map_err(|e| e.to_string())?;
                    ensure(
                        r.verdict == Verdict::Fail,
                        format!("mutant survived: {mutant}"),
                    )?;
                    caught += 1;
                }
            }
        }
    }
    ensure(caught >= 5, format!("only {caught} mutations sampled"))?;
    Ok(format!("all {caught} variable-swap mutations detected"))
}

fn criterion_11() -> Outcome {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_izlab"))
            .args([
                "verify",
                "--suite",
                "main",
                "--max-size",
                "3",
                "--jobs",
                jobs,
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let one = run("1")?;
    let eight = run("8")?;
    ensure(
        one.status.success() && eight.status.success(),
        "verify did not pass",
    )?;
    ensure(one.stdout == eight.stdout, "outputs differ")?;
    Ok(format!("{} identical bytes", one.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("enumeration equals brute force, sizes 1-3", criterion_1),
        ("BR on every I-member up to size 4", criterion_2),
        ("derived algebra is a bisemigroup, size <= 3", criterion_3),
        ("both lemma catalogs on I20, size <= 3", criterion_4),
        ("equivalence cluster, size <= 3", criterion_5),
        ("Birkhoff system iff in S, size <= 3", criterion_6),
        ("implication semigroups, size <= 4", criterion_7),
        (
            "Birkhoff bisemigroup that is not a bisemilattice",
            criterion_8,
        ),
        ("transfer harness has no red flags", criterion_9),
        ("mutation sensitivity", criterion_10),
        ("verify output independent of --jobs", criterion_11),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {label}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {label}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
