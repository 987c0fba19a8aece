use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::region::{EndpointSpec, LadderRegion};
use crate::tuple::IncTuple;

/// Test function for the alternating window-sum identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FTable {
    /// `f = 1`.
    Ones,
    /// `f(d) = t^(d_1 + ... + d_k)`.
    Monomial,
    /// A pseudorandom polynomial per tuple, fixed by the seed.
    Random(u64),
}

impl FTable {
    pub fn eval(&self, d: &[u32]) -> Poly {
        match *self {
            FTable::Ones => Poly::one(),
            FTable::Monomial => Poly::monomial(1, d.iter().map(|&x| x as usize).sum()),
            FTable::Random(seed) => {
                let mixed = d.iter().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, &x| {
                    h.rotate_left(13).wrapping_mul(0x100_0000_01b3) ^ u64::from(x)
                });
                let mut rng = ChaCha8Rng::seed_from_u64(mixed);
                let len = rng.gen_range(1..=4);
                Poly::from_coeffs((0..len).map(|_| rng.gen_range(-9i64..=9).into()).collect())
            }
        }
    }
}

impl fmt::Display for FTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FTable::Ones => write!(f, "ones"),
            FTable::Monomial => write!(f, "monomial"),
            FTable::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for FTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ones" => Ok(FTable::Ones),
            "monomial" => Ok(FTable::Monomial),
            _ => s
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(FTable::Random)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown f table `{s}` (ones, monomial, random:SEED)"
                    ))
                }),
        }
    }
}

/// Parameters of one identity check. Which fields are needed depends on
/// the identity; the flag names match the `check` subcommand.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub region: Option<LadderRegion>,
    pub a: Option<IncTuple>,
    pub b: Option<IncTuple>,
    pub c: Option<IncTuple>,
    pub e: Option<u32>,
    pub b_extra: Option<u32>,
    pub f: Option<FTable>,
    pub budget: Option<u64>,
}

impl Params {
    pub fn with_region(mut self, region: LadderRegion) -> Self {
        self.region = Some(region);
        self
    }

    pub fn with_a(mut self, a: IncTuple) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_b(mut self, b: IncTuple) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_c(mut self, c: IncTuple) -> Self {
        self.c = Some(c);
        self
    }

    pub fn with_e(mut self, e: u32) -> Self {
        self.e = Some(e);
        self
    }

    pub fn with_b_extra(mut self, b_extra: u32) -> Self {
        self.b_extra = Some(b_extra);
        self
    }

    pub fn with_f(mut self, f: FTable) -> Self {
        self.f = Some(f);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub(crate) fn need_region(&self) -> Result<&LadderRegion> {
        self.region.as_ref().ok_or_else(|| missing("region"))
    }

    pub(crate) fn need_b(&self) -> Result<&IncTuple> {
        self.b.as_ref().ok_or_else(|| missing("b"))
    }

    pub(crate) fn need_c(&self) -> Result<&IncTuple> {
        self.c.as_ref().ok_or_else(|| missing("c"))
    }

    /// Endpoints from `--a` (default `1..r`) and `--b`.
    pub(crate) fn endpoints(&self) -> Result<EndpointSpec> {
        let b = self.need_b()?.clone();
        match &self.a {
            Some(a) => EndpointSpec::new(a.clone(), b),
            None => Ok(EndpointSpec::standard(b)),
        }
    }

    /// Serializes to flags accepted by [`Params::from_args`].
    pub fn to_flags(&self) -> String {
        let mut parts = Vec::new();
        if let Some(region) = &self.region {
            parts.push(format!("--region {}", region.to_arg()));
        }
        let mut list = |flag: &str, t: &Option<IncTuple>| {
            if let Some(t) = t {
                parts.push(format!("--{flag} {t}"));
            }
        };
        list("a", &self.a);
        list("b", &self.b);
        list("c", &self.c);
        if let Some(e) = self.e {
            parts.push(format!("--e {e}"));
        }
        if let Some(x) = self.b_extra {
            parts.push(format!("--b-extra {x}"));
        }
        if let Some(f) = &self.f {
            parts.push(format!("--f {f}"));
        }
        if let Some(budget) = self.budget {
            parts.push(format!("--budget {budget}"));
        }
        parts.join(" ")
    }

    /// Parses `--flag value` pairs.
    pub fn from_args<S: AsRef<str>>(args: &[S]) -> Result<Self> {
        let mut params = Params::default();
        let mut it = args.iter().map(AsRef::as_ref);
        while let Some(flag) = it.next() {
            let value = it
                .next()
                .ok_or_else(|| Error::Parse(format!("flag `{flag}` needs a value")))?;
            let int = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("`{flag}` expects an integer, got `{v}`")))
            };
            match flag {
                "--region" => params.region = Some(LadderRegion::from_arg(value)?),
                "--a" => params.a = Some(value.parse()?),
                "--b" => params.b = Some(value.parse()?),
                "--c" => params.c = Some(value.parse()?),
                "--e" => params.e = Some(int(value)? as u32),
                "--b-extra" => params.b_extra = Some(int(value)? as u32),
                "--f" => params.f = Some(value.parse()?),
                "--budget" => params.budget = Some(int(value)?),
                other => return Err(Error::Parse(format!("unknown flag `{other}`"))),
            }
        }
        Ok(params)
    }

    /// Parses a whitespace-separated flag string such as a report's
    /// instance field.
    pub fn parse_flags(s: &str) -> Result<Self> {
        let args: Vec<&str> = s.split_whitespace().collect();
        Params::from_args(&args)
    }
}

fn missing(flag: &str) -> Error {
    Error::Parse(format!("missing --{flag}"))
}
