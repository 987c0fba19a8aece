use std::thread;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::DEFAULT_STEP_BUDGET;
use crate::region::{EndpointSpec, LadderRegion};
use crate::tuple::IncTuple;

use super::{registry, CheckReport, Params, Status};

/// Bounds and seed of a random-instance run. Instance `k` is drawn from
/// ChaCha8 seeded with `seed` on stream `k`, so it does not depend on how
/// many cases run or in which order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_m: u32,
    pub max_n: u32,
    pub max_r: u32,
    pub budget: u64,
    /// Worker threads; `0` picks the available parallelism.
    pub threads: usize,
}

impl SuiteConfig {
    pub fn new(seed: u64, cases: usize, max_m: u32, max_n: u32, max_r: u32) -> Self {
        SuiteConfig {
            seed,
            cases,
            max_m: max_m.max(1),
            max_n: max_n.max(1),
            max_r: max_r.max(1),
            budget: DEFAULT_STEP_BUDGET,
            threads: 0,
        }
    }
}

/// The `index`-th pseudorandom instance: `m`, `n` and `r` uniform within
/// the bounds, the first `r` columns full, the remaining heights a uniform
/// non-increasing sequence in `[r, n]`, and `b` a uniform `r`-subset of the
/// rows of the last column.
pub fn gen_instance(config: &SuiteConfig, index: u64) -> (LadderRegion, EndpointSpec) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index);
    let m = rng.gen_range(1..=config.max_m.max(1));
    let n = rng.gen_range(1..=config.max_n.max(1));
    let r = rng.gen_range(1..=config.max_r.max(1).min(m).min(n));

    // Multisets of size k from the n - r + 1 heights r..=n, by stars and bars.
    let k = (m - r) as usize;
    let values = (n - r + 1) as usize;
    let mut bars = sample(&mut rng, k + values - 1, k).into_vec();
    bars.sort_unstable();
    let mut profile = vec![n; r as usize];
    profile.extend(
        bars.iter()
            .enumerate()
            .rev()
            .map(|(j, &pos)| r + (pos - j) as u32),
    );

    let top = *profile.last().expect("m >= 1");
    let mut rows: Vec<u32> = sample(&mut rng, top as usize, r as usize)
        .iter()
        .map(|i| i as u32 + 1)
        .collect();
    rows.sort_unstable();

    let region = LadderRegion::new(m, n, profile).expect("generated profile is valid");
    let spec = EndpointSpec::standard(IncTuple::new(rows).expect("distinct sorted rows"));
    (region, spec)
}

/// `--region .. --b ..` for the `index`-th instance.
pub fn instance_flags(config: &SuiteConfig, index: u64) -> String {
    let (region, spec) = gen_instance(config, index);
    Params::default()
        .with_region(region)
        .with_b(spec.b)
        .to_flags()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Every report, in instance order.
    pub reports: Vec<CheckReport>,
}

impl SuiteSummary {
    pub fn success(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| r.status == Status::Fail)
    }

    /// `total passed failed skipped`.
    pub fn line(&self) -> String {
        format!(
            "{} {} {} {}",
            self.total, self.passed, self.failed, self.skipped
        )
    }
}

fn checks_for(config: &SuiteConfig, index: u64) -> Vec<CheckReport> {
    let (region, spec) = gen_instance(config, index);
    let peelable = region.m() > spec.a.last().unwrap_or(0).max(1);
    let params = Params::default()
        .with_region(region)
        .with_b(spec.b)
        .with_budget(config.budget);
    let mut names = vec!["thm4_2"];
    if peelable {
        names.extend(["lem2_3i", "lem2_3ii"]);
    }
    names.push("family");
    names
        .into_iter()
        .map(|name| match registry().check(name, &params) {
            Ok(report) => report,
            // A generated instance is always well formed, so this is a bug
            // in an identity; count it as a failure with the error attached.
            Err(e) => CheckReport {
                name: name.to_string(),
                instance: params.to_flags(),
                lhs: Vec::new(),
                rhs: Vec::new(),
                status: Status::Fail,
                oracle_skipped: false,
                elapsed: Default::default(),
                note: Some(e.to_string()),
            },
        })
        .collect()
}

/// Runs the main expansion, both one-column recursions and the
/// enumeration cross-check on every generated instance.
pub fn run_suite(config: &SuiteConfig) -> SuiteSummary {
    let threads = match config.threads {
        0 => thread::available_parallelism().map_or(1, |n| n.get()),
        t => t,
    }
    .min(config.cases.max(1));
    let per_case: Vec<Vec<CheckReport>> = if threads <= 1 {
        (0..config.cases as u64)
            .map(|i| checks_for(config, i))
            .collect()
    } else {
        let mut slots: Vec<Vec<CheckReport>> = vec![Vec::new(); config.cases];
        thread::scope(|scope| {
            // Strided assignment keeps the slow large instances spread out.
            let mut handles = Vec::new();
            for worker in 0..threads {
                handles.push(scope.spawn(move || {
                    (worker..config.cases)
                        .step_by(threads)
                        .map(|i| (i, checks_for(config, i as u64)))
                        .collect::<Vec<_>>()
                }));
            }
            for handle in handles {
                for (i, reports) in handle.join().expect("suite worker panicked") {
                    slots[i] = reports;
                }
            }
        });
        slots
    };
    let mut summary = SuiteSummary::default();
    for report in per_case.into_iter().flatten() {
        summary.total += 1;
        match report.status {
            Status::Pass => summary.passed += 1,
            Status::Fail => summary.failed += 1,
            Status::Skipped => summary.skipped += 1,
        }
        summary.reports.push(report);
    }
    summary
}
