//! Backtracking enumeration of implication zroupoids of a fixed size.
//!
//! Cells are filled column 0 first (the `'` map), then row 0, then the rest
//! row-major. After every assignment all instances of `(I)` and `0'' = 0`
//! whose lookups are fully determined are checked. With isomorphism
//! reduction, a partial lex-leader test runs whenever a row of the table
//! becomes complete, and a leaf is kept only if it is its own canonical form.

use std::io::{self, Write};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{fixed_zero_permutations, Element, FiniteAlgebra, MAX_SIZE};
use crate::clock::{Deadline, Stopwatch};
use crate::error::AlgebraError;
use crate::varieties::Variety;

pub const UNSET: Element = Element::MAX;

/// Largest size the enumerator accepts.
pub const MAX_SEARCH_SIZE: usize = 7;

/// A Cayley table with holes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialTable {
    size: usize,
    cells: Vec<Element>,
}

impl PartialTable {
    pub fn new(size: usize) -> PartialTable {
        assert!((1..MAX_SIZE).contains(&size), "size out of range");
        PartialTable {
            size,
            cells: vec![UNSET; size * size],
        }
    }

    pub fn from_algebra(alg: &FiniteAlgebra) -> PartialTable {
        PartialTable {
            size: alg.size(),
            cells: alg.table().to_vec(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: usize, b: usize) -> Option<Element> {
        let v = self.cells[a * self.size + b];
        (v != UNSET).then_some(v)
    }

    pub fn set(&mut self, a: usize, b: usize, value: Element) -> Result<(), AlgebraError> {
        if value as usize >= self.size {
            return Err(AlgebraError::EntryOutOfRange {
                row: a,
                col: b,
                value: value as usize,
                size: self.size,
            });
        }
        self.cells[a * self.size + b] = value;
        Ok(())
    }

    pub fn clear(&mut self, a: usize, b: usize) {
        self.cells[a * self.size + b] = UNSET;
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&v| v != UNSET)
    }

    pub fn to_algebra(&self) -> Option<FiniteAlgebra> {
        self.is_complete()
            .then(|| FiniteAlgebra::from_table_unchecked(self.size, self.cells.clone()))
    }
}

/// No fully determined instance of `(I)` or `0'' = 0` is violated.
pub fn check_partial(pt: &PartialTable) -> bool {
    consistent(&pt.cells, pt.size, false)
}

/// [`check_partial`] plus every determined instance of `x'' = x`.
pub fn check_partial_involutive(pt: &PartialTable) -> bool {
    consistent(&pt.cells, pt.size, true)
}

fn consistent(cells: &[Element], n: usize, involutive: bool) -> bool {
    let at = |a: Element, b: Element| -> Element {
        if a == UNSET || b == UNSET {
            UNSET
        } else {
            cells[a as usize * n + b as usize]
        }
    };

    let zp = at(0, 0);
    let zpp = at(zp, 0);
    if zpp != UNSET && zpp != 0 {
        return false;
    }
    if involutive {
        for a in 0..n as Element {
            let app = at(at(a, 0), 0);
            if app != UNSET && app != a {
                return false;
            }
        }
    }

    // (x -> y) -> z = ((z' -> x) -> (y -> z)')'
    for x in 0..n as Element {
        for y in 0..n as Element {
            let xy = at(x, y);
            if xy == UNSET {
                continue;
            }
            for z in 0..n as Element {
                let lhs = at(xy, z);
                if lhs == UNSET {
                    continue;
                }
                let p = at(at(z, 0), x);
                let q = at(at(y, z), 0);
                let rhs = at(at(p, q), 0);
                if rhs != UNSET && rhs != lhs {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub size: usize,
    pub variety: Variety,
    pub iso_reduce: bool,
    pub budget: Option<Duration>,
    /// Number of leading cells (in fill order) expanded before work is
    /// handed to parallel workers.
    pub parallel_width: usize,
}

impl SearchConfig {
    pub fn new(size: usize, variety: Variety) -> SearchConfig {
        SearchConfig {
            size,
            variety,
            iso_reduce: true,
            budget: None,
            parallel_width: default_parallel_width(size),
        }
    }

    pub fn iso_reduce(mut self, on: bool) -> SearchConfig {
        self.iso_reduce = on;
        self
    }

    pub fn budget(mut self, budget: Option<Duration>) -> SearchConfig {
        self.budget = budget;
        self
    }

    pub fn parallel_width(mut self, width: usize) -> SearchConfig {
        self.parallel_width = width;
        self
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        if self.size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        if self.size > MAX_SEARCH_SIZE {
            return Err(AlgebraError::SizeBoundExceeded {
                size: self.size,
                bound: MAX_SEARCH_SIZE,
            });
        }
        if self.parallel_width >= self.size * self.size {
            return Err(AlgebraError::Format(format!(
                "parallel width {} must be below {}",
                self.parallel_width,
                self.size * self.size
            )));
        }
        Ok(())
    }
}

fn default_parallel_width(size: usize) -> usize {
    size.min((size * size).saturating_sub(1))
}

/// The outcome of one enumeration run, sorted by table.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub algebras: Vec<FiniteAlgebra>,
    pub complete: bool,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct StreamTrailer {
    complete: bool,
    count: usize,
    elapsed: f64,
}

impl Enumeration {
    /// JSON lines: one algebra per line, then a `{complete, count, elapsed}`
    /// trailer.
    pub fn write_jsonl(&self, mut w: impl Write, with_timing: bool) -> io::Result<()> {
        for a in &self.algebras {
            writeln!(w, "{}", a.to_json())?;
        }
        let trailer = StreamTrailer {
            complete: self.complete,
            count: self.algebras.len(),
            elapsed: if with_timing {
                (self.elapsed.as_secs_f64() * 1000.0).round() / 1000.0
            } else {
                0.0
            },
        };
        writeln!(
            w,
            "{}",
            serde_json::to_string(&trailer).map_err(io::Error::other)?
        )
    }
}

/// Symmetry data for the partial lex-leader test.
struct Relabeling {
    forward: Vec<Element>,
    inverse: Vec<usize>,
}

struct Plan {
    n: usize,
    order: Vec<usize>,
    row_done: Vec<bool>,
    involutive: bool,
    variety: Variety,
    relabelings: Option<Vec<Relabeling>>,
}

impl Plan {
    fn new(cfg: &SearchConfig) -> Plan {
        let n = cfg.size;
        let mut order: Vec<usize> = (0..n).map(|a| a * n).collect();
        order.extend(1..n);
        for a in 1..n {
            for b in 1..n {
                order.push(a * n + b);
            }
        }
        // Row-major prefixes grow only when a row finishes.
        let mut position = vec![0; n * n];
        for (depth, &cell) in order.iter().enumerate() {
            position[cell] = depth;
        }
        let mut row_done = vec![false; order.len()];
        for row in 0..n {
            let last = (0..n).map(|b| position[row * n + b]).max().unwrap();
            row_done[last] = true;
        }
        let relabelings = (cfg.iso_reduce && n > 2).then(|| {
            fixed_zero_permutations(n)
                .skip(1)
                .map(|forward| {
                    let mut inverse = vec![0; n];
                    for (old, &new) in forward.iter().enumerate() {
                        inverse[new as usize] = old;
                    }
                    Relabeling { forward, inverse }
                })
                .collect()
        });
        Plan {
            n,
            order,
            row_done,
            involutive: cfg.variety.is_involutive(),
            variety: cfg.variety,
            relabelings,
        }
    }

    /// False if some relabeling is already lexicographically smaller on the
    /// determined row-major prefix.
    fn could_be_canonical(&self, cells: &[Element]) -> bool {
        let Some(perms) = &self.relabelings else {
            return true;
        };
        let n = self.n;
        'perm: for p in perms {
            for k in 0..n * n {
                let cur = cells[k];
                if cur == UNSET {
                    continue 'perm;
                }
                let src = cells[p.inverse[k / n] * n + p.inverse[k % n]];
                if src == UNSET {
                    continue 'perm;
                }
                let img = p.forward[src as usize];
                if img < cur {
                    return false;
                }
                if img > cur {
                    continue 'perm;
                }
            }
        }
        true
    }
}

struct Worker<'a> {
    plan: &'a Plan,
    deadline: &'a Deadline,
    aborted: &'a AtomicBool,
    iso_reduce: bool,
    ticks: u32,
    found: Vec<FiniteAlgebra>,
}

impl Worker<'_> {
    fn stop(&mut self) -> bool {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) && self.deadline.passed() {
            self.aborted.store(true, Ordering::Relaxed);
        }
        self.aborted.load(Ordering::Relaxed)
    }

    /// Depth-first over cells `depth..limit`; at `limit` the callback gets
    /// the current state.
    fn descend(
        &mut self,
        cells: &mut Vec<Element>,
        depth: usize,
        limit: usize,
        at_limit: &mut dyn FnMut(&mut Self, &[Element]),
    ) {
        if self.stop() {
            return;
        }
        if depth == limit {
            at_limit(self, cells);
            return;
        }
        let plan = self.plan;
        let cell = plan.order[depth];
        for v in 0..plan.n as Element {
            cells[cell] = v;
            if consistent(cells, plan.n, plan.involutive)
                && (!plan.row_done[depth] || plan.could_be_canonical(cells))
            {
                self.descend(cells, depth + 1, limit, at_limit);
            }
        }
        cells[cell] = UNSET;
    }

    fn leaf(&mut self, cells: &[Element]) {
        let alg = FiniteAlgebra::from_table_unchecked(self.plan.n, cells.to_vec());
        if !self.plan.variety.accepts_izroupoid(&alg) {
            return;
        }
        if self.iso_reduce && !alg.is_canonical() {
            return;
        }
        self.found.push(alg);
    }
}

/// Every algebra of the configured size in the configured variety, sorted
/// lexicographically by table. The result does not depend on the thread
/// count or on `parallel_width`.
pub fn enumerate(cfg: &SearchConfig) -> Result<Enumeration, AlgebraError> {
    cfg.validate()?;
    let clock = Stopwatch::start();
    let deadline = Deadline::after(cfg.budget);
    let aborted = AtomicBool::new(false);
    let plan = Plan::new(cfg);
    let total = plan.order.len();
    let width = cfg.parallel_width;

    let mut seeds: Vec<Vec<Element>> = Vec::new();
    {
        let mut w = Worker {
            plan: &plan,
            deadline: &deadline,
            aborted: &aborted,
            iso_reduce: cfg.iso_reduce,
            ticks: 0,
            found: Vec::new(),
        };
        let mut cells = vec![UNSET; total];
        w.descend(&mut cells, 0, width, &mut |_, c| seeds.push(c.to_vec()));
    }

    let chunks: Vec<Vec<FiniteAlgebra>> = seeds
        .into_par_iter()
        .map(|mut cells| {
            let mut w = Worker {
                plan: &plan,
                deadline: &deadline,
                aborted: &aborted,
                iso_reduce: cfg.iso_reduce,
                ticks: 0,
                found: Vec::new(),
            };
            w.descend(&mut cells, width, total, &mut |w, c| w.leaf(c));
            w.found
        })
        .collect();

    let mut algebras: Vec<FiniteAlgebra> = chunks.into_iter().flatten().collect();
    algebras.sort();
    Ok(Enumeration {
        algebras,
        complete: !aborted.load(Ordering::Relaxed),
        elapsed: clock.elapsed(),
    })
}

/// Census result for one `(size, variety)` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassCount {
    pub count: u64,
    pub complete: bool,
    pub elapsed: Duration,
}

/// Number of isomorphism classes; when the budget runs out the count is a
/// lower bound and `complete` is false.
pub fn count_classes(
    size: usize,
    variety: Variety,
    budget: Option<Duration>,
) -> Result<ClassCount, AlgebraError> {
    let e = enumerate(&SearchConfig::new(size, variety).budget(budget))?;
    Ok(ClassCount {
        count: e.algebras.len() as u64,
        complete: e.complete,
        elapsed: e.elapsed,
    })
}

/// Iso-reduced members of `variety` for every size in `1..=max_size`,
/// smallest size first.
pub fn enumerate_up_to(
    max_size: usize,
    variety: Variety,
    budget: Option<Duration>,
) -> Result<Enumeration, AlgebraError> {
    let clock = Stopwatch::start();
    let deadline = Deadline::after(budget);
    let mut algebras = Vec::new();
    let mut complete = true;
    for n in 1..=max_size {
        let cfg = SearchConfig::new(n, variety).budget(deadline.remaining());
        let e = enumerate(&cfg)?;
        algebras.extend(e.algebras);
        if !e.complete {
            complete = false;
            break;
        }
    }
    Ok(Enumeration {
        algebras,
        complete,
        elapsed: clock.elapsed(),
    })
}
