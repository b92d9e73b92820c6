//! Wall-clock helpers. `std::time::Instant` is unavailable on
//! `wasm32-unknown-unknown`, where budgets are ignored and elapsed time
//! reads as zero.

use std::time::Duration;

#[cfg(not(target_arch = "wasm32"))]
type Now = std::time::Instant;

#[cfg(not(target_arch = "wasm32"))]
fn now() -> Option<Now> {
    Some(Now::now())
}

#[cfg(target_arch = "wasm32")]
type Now = ();

#[cfg(target_arch = "wasm32")]
fn now() -> Option<Now> {
    None
}

#[derive(Clone, Copy, Debug)]
pub struct Stopwatch(Option<Now>);

impl Stopwatch {
    pub fn start() -> Stopwatch {
        Stopwatch(now())
    }

    pub fn elapsed(&self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        if let Some(t) = self.0 {
            return t.elapsed();
        }
        Duration::ZERO
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    start: Stopwatch,
    budget: Option<Duration>,
}

impl Deadline {
    pub fn after(budget: Option<Duration>) -> Deadline {
        Deadline {
            start: Stopwatch::start(),
            budget,
        }
    }

    pub fn passed(&self) -> bool {
        match self.budget {
            Some(b) => self.start.0.is_some() && self.start.elapsed() >= b,
            None => false,
        }
    }

    pub fn remaining(&self) -> Option<Duration> {
        self.budget.map(|b| b.saturating_sub(self.start.elapsed()))
    }
}
