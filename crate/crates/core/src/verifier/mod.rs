//! Named, replayable identity checks.
//!
//! Each identity is a [`Identity`] trait object registered by name in a
//! [`Registry`]. A check evaluates two lists of polynomials through
//! independent code paths and passes when they agree entry by entry. The
//! [`Params`] of a check serialize to command-line flags, so the instance
//! field of a [`CheckReport`] is enough to rerun it.

mod identities;
mod params;
mod suite;

use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::polyring::Poly;

pub use identities::{alternating_window_sides, check_lemma_3_6};
pub use params::{FTable, Params};
pub use suite::{gen_instance, instance_flags, run_suite, SuiteConfig, SuiteSummary};

/// Both sides of an identity on one instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sides {
    pub lhs: Vec<Poly>,
    pub rhs: Vec<Poly>,
    /// The brute-force side was replaced because it exceeded its budget.
    pub oracle_skipped: bool,
}

impl Sides {
    pub fn single(lhs: Poly, rhs: Poly) -> Self {
        Sides {
            lhs: vec![lhs],
            rhs: vec![rhs],
            oracle_skipped: false,
        }
    }

    pub fn push(&mut self, lhs: Poly, rhs: Poly) {
        self.lhs.push(lhs);
        self.rhs.push(rhs);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to the instance, or only checkable by an oracle that
    /// ran out of budget.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Serialized [`Params`], as command-line flags.
    pub instance: String,
    pub lhs: Vec<Poly>,
    pub rhs: Vec<Poly>,
    pub status: Status,
    pub oracle_skipped: bool,
    pub elapsed: Duration,
    /// Why the check was skipped, if it was.
    pub note: Option<String>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.status == Status::Pass
    }

    fn from_sides(name: &str, params: &Params, sides: Sides, elapsed: Duration) -> Self {
        let status = if sides.lhs.len() == sides.rhs.len() && sides.lhs == sides.rhs {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckReport {
            name: name.to_string(),
            instance: params.to_flags(),
            lhs: sides.lhs,
            rhs: sides.rhs,
            status,
            oracle_skipped: sides.oracle_skipped,
            elapsed,
            note: None,
        }
    }

    fn skipped(name: &str, params: &Params, note: String, elapsed: Duration) -> Self {
        CheckReport {
            name: name.to_string(),
            instance: params.to_flags(),
            lhs: Vec::new(),
            rhs: Vec::new(),
            status: Status::Skipped,
            oracle_skipped: false,
            elapsed,
            note: Some(note),
        }
    }

    /// `name status elapsed_ms instance`. The status carries an
    /// `+oracle-skipped` suffix when the brute-force side was replaced.
    pub fn line(&self, timing: bool) -> String {
        let ms = if timing { self.elapsed.as_millis() } else { 0 };
        let flag = if self.oracle_skipped {
            "+oracle-skipped"
        } else {
            ""
        };
        format!(
            "{} {}{} {} {}",
            self.name, self.status, flag, ms, self.instance
        )
    }

    /// Both sides in machine format, entries separated by `; `.
    pub fn sides_machine(&self) -> (String, String) {
        let join = |ps: &[Poly]| {
            ps.iter()
                .map(Poly::to_machine)
                .collect::<Vec<_>>()
                .join("; ")
        };
        (join(&self.lhs), join(&self.rhs))
    }
}

/// One identity between corner polynomials.
pub trait Identity: Send + Sync {
    fn name(&self) -> &'static str;

    /// One-line statement of the identity.
    fn summary(&self) -> &'static str;

    /// Evaluates both sides on `params`.
    ///
    /// Returns `Err(Error::Precondition)` when the identity does not apply
    /// to the instance; other errors mean the parameters are malformed.
    fn sides(&self, params: &Params) -> Result<Sides>;
}

/// Name-indexed collection of identities.
#[derive(Default)]
pub struct Registry {
    entries: Vec<Box<dyn Identity>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Every identity this crate knows how to check.
    pub fn standard() -> Self {
        let mut reg = Registry::new();
        identities::register_all(&mut reg);
        reg
    }

    /// Adds an identity, replacing any previous one with the same name.
    pub fn register(&mut self, identity: Box<dyn Identity>) {
        self.entries.retain(|e| e.name() != identity.name());
        self.entries.push(identity);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Identity> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|e| e.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.name())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Identity> {
        self.entries.iter().map(|e| e.as_ref())
    }

    /// Runs one identity. Instances outside an identity's hypotheses give a
    /// skipped report; malformed parameters are errors.
    pub fn check(&self, name: &str, params: &Params) -> Result<CheckReport> {
        let identity = self
            .get(name)
            .ok_or_else(|| Error::UnknownIdentity(name.to_string()))?;
        let started = Instant::now();
        match identity.sides(params) {
            Ok(sides) => Ok(CheckReport::from_sides(
                name,
                params,
                sides,
                started.elapsed(),
            )),
            Err(Error::Precondition(why)) => {
                Ok(CheckReport::skipped(name, params, why, started.elapsed()))
            }
            Err(Error::BudgetExceeded(budget)) => Ok(CheckReport::skipped(
                name,
                params,
                format!("oracle-skipped: step budget {budget} exceeded"),
                started.elapsed(),
            )),
            Err(other) => Err(other),
        }
    }
}

pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Registry::standard)
}

/// Runs the named identity from the standard registry.
pub fn check_identity(name: &str, params: &Params) -> Result<CheckReport> {
    registry().check(name, params)
}
