//! Cooperative deadlines for long-running solvers.

use std::time::{Duration, Instant};

/// A deadline polled between outer-loop iterations of a solver.
///
/// Enforcement is cooperative: an expired deadline makes the solver return
/// `None` at its next poll, so overshoot is bounded by one outer iteration.
#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    expires_at: Option<Instant>,
}

impl Deadline {
    /// A deadline that never expires.
    pub fn none() -> Self {
        Deadline { expires_at: None }
    }

    /// A deadline `budget` from now.
    pub fn after(budget: Duration) -> Self {
        Deadline {
            expires_at: Some(Instant::now() + budget),
        }
    }

    #[inline]
    pub fn expired(&self) -> bool {
        match self.expires_at {
            Some(at) => Instant::now() >= at,
            None => false,
        }
    }
}
