//! Command-line front end: compute corner polynomials and check identities.
//!
//! Polynomials print twice, first as space-separated coefficients from the
//! constant term up, then in human form. Exit status is 0 on success, 1
//! when an identity fails, 2 on usage errors or inapplicable instances.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ladder_corners::acoeff::{a_coeff, b1, b2, b3};
use ladder_corners::brackets::{curly, sq_tuple};
use ladder_corners::closedform::{conca_herzog_det, kk_det};
use ladder_corners::engine::{
    family_peel, family_poly, main_rhs, single_path_poly, wtilde, wtilde_step,
};
use ladder_corners::oracle::{family_poly_oracle_with_budget, DEFAULT_STEP_BUDGET};
use ladder_corners::verifier::{instance_flags, registry, run_suite, Params, Status, SuiteConfig};
use ladder_corners::{EndpointSpec, Error, IncTuple, LadderRegion, Poly};

#[derive(Parser)]
#[command(
    name = "ladder-corners",
    version,
    about = "Corner polynomials of non-intersecting lattice paths in ladder regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArgs {
    /// Region file, `rectMxN`, or `g:h1,h2,..`.
    #[arg(long, value_parser = parse_region)]
    region: LadderRegion,
    /// End rows in the last column.
    #[arg(long)]
    b: IncTuple,
    /// Start columns in the top row (default 1..r).
    #[arg(long)]
    a: Option<IncTuple>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<EndpointSpec, Error> {
        match &self.a {
            Some(a) => EndpointSpec::new(a.clone(), self.b.clone()),
            None => Ok(EndpointSpec::standard(self.b.clone())),
        }
    }
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    b: IncTuple,
    #[arg(long)]
    c: IncTuple,
}

#[derive(Subcommand)]
enum Command {
    /// Corner polynomial W of non-intersecting families.
    W(FamilyArgs),
    /// Determinant W~ of single-path polynomials.
    Wtilde(FamilyArgs),
    /// W by exhaustive enumeration.
    Oracle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        budget: u64,
    },
    /// Corner polynomial of single paths from (a, n) to (m, b).
    Single {
        #[arg(long, value_parser = parse_region)]
        region: LadderRegion,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// W~ or W rebuilt from the previous column.
    Peel {
        #[command(flatten)]
        family: FamilyArgs,
        /// Peel W instead of W~.
        #[arg(long)]
        square: bool,
    },
    /// sum_c A(b;c) (1-t)^{sum(c-b)} W(c).
    Rhs(FamilyArgs),
    /// Rectangle determinant formulas: binomial-sum determinant, or with
    /// `--identity` the normalized determinant for a_i = b_i = i.
    Closed {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        identity: bool,
    },
    /// The coefficient A(b; c).
    Acoeff(PairArgs),
    /// B1, B2 or B3 of (b, c).
    Bform {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Square or curly bracket of (c over b).
    Bracket {
        #[arg(long)]
        curly: bool,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Check one identity; flags after NAME describe the instance.
    Check {
        /// Print elapsed milliseconds instead of 0.
        #[arg(long)]
        timing: bool,
        name: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Seeded random-instance suite.
    Suite {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cases: usize,
        #[arg(long, default_value_t = 7)]
        max_m: u32,
        #[arg(long, default_value_t = 7)]
        max_n: u32,
        #[arg(long, default_value_t = 3)]
        max_r: u32,
        #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
        budget: u64,
        /// Worker threads, 0 for all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        timing: bool,
    },
    /// Print the instances a suite run would check, one per line.
    Instances {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cases: usize,
        #[arg(long, default_value_t = 7)]
        max_m: u32,
        #[arg(long, default_value_t = 7)]
        max_n: u32,
        #[arg(long, default_value_t = 3)]
        max_r: u32,
    },
    /// Registered identity names.
    List,
}

fn parse_region(arg: &str) -> Result<LadderRegion, Error> {
    LadderRegion::from_arg(arg)
}

fn print_poly(p: &Poly) {
    println!("{}", p.to_machine());
    println!("{p}");
}

fn print_sides(report: &ladder_corners::verifier::CheckReport) {
    let (lhs, rhs) = report.sides_machine();
    println!("lhs {lhs}");
    println!("rhs {rhs}");
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::W(f) => print_poly(&family_poly(&f.region, &f.spec()?)?),
        Command::Wtilde(f) => print_poly(&wtilde(&f.region, &f.spec()?)?),
        Command::Oracle { family: f, budget } => print_poly(&family_poly_oracle_with_budget(
            &f.region,
            &f.spec()?,
            budget,
        )?),
        Command::Single { region, a, b } => {
            let spec = EndpointSpec::new(IncTuple::new(vec![a])?, IncTuple::new(vec![b])?)?;
            spec.validate(&region)?;
            print_poly(&single_path_poly(
                &region,
                spec.start(&region, 0),
                spec.end(&region, 0),
            ));
        }
        Command::Peel { family: f, square } => {
            let spec = f.spec()?;
            let p = if square {
                family_peel(&f.region, &spec)?
            } else {
                wtilde_step(&f.region, &spec)?
            };
            print_poly(&p);
        }
        Command::Rhs(f) => print_poly(&main_rhs(&f.region, &f.spec()?)?),
        Command::Closed {
            family: f,
            identity,
        } => {
            let spec = f.spec()?;
            if !f.region.is_rectangle() {
                return Err(Error::Precondition(format!(
                    "{} is not a rectangle",
                    f.region.to_arg()
                )));
            }
            let (m, n) = (f.region.m(), f.region.n());
            let p = if identity {
                if spec.b != IncTuple::identity(spec.r()) || !spec.has_standard_starts() {
                    return Err(Error::Precondition("--identity needs a_i = b_i = i".into()));
                }
                conca_herzog_det(m, n, spec.r() as u32)?
            } else {
                kk_det(m, n, &spec.a, &spec.b)?
            };
            print_poly(&p);
        }
        Command::Acoeff(p) => println!("{}", a_coeff(&p.b, &p.c)?),
        Command::Bform { which, pair } => {
            let p = match which {
                1 => b1(&pair.b, &pair.c)?,
                2 => b2(&pair.b, &pair.c)?,
                _ => b3(&pair.b, &pair.c)?,
            };
            print_poly(&p);
        }
        Command::Bracket {
            curly: is_curly,
            pair,
        } => {
            let p = if is_curly {
                curly(&pair.c, &pair.b)?
            } else {
                sq_tuple(&pair.c, &pair.b)?
            };
            print_poly(&p);
        }
        Command::Check {
            timing,
            name,
            params,
        } => {
            let params = Params::from_args(&params)?;
            let report = registry().check(&name, &params)?;
            println!("{}", report.line(timing));
            match report.status {
                Status::Pass => print_sides(&report),
                Status::Fail => {
                    print_sides(&report);
                    return Ok(ExitCode::from(1));
                }
                Status::Skipped => {
                    eprintln!("not applicable: {}", report.note.as_deref().unwrap_or(""));
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Suite {
            seed,
            cases,
            max_m,
            max_n,
            max_r,
            budget,
            threads,
            timing,
        } => {
            let mut config = SuiteConfig::new(seed, cases, max_m, max_n, max_r);
            config.budget = budget;
            config.threads = threads;
            let summary = run_suite(&config);
            for report in &summary.reports {
                println!("{}", report.line(timing));
                if report.status == Status::Fail {
                    let (lhs, rhs) = report.sides_machine();
                    println!("  lhs {lhs}");
                    println!("  rhs {rhs}");
                    if let Some(note) = &report.note {
                        println!("  note {note}");
                    }
                }
            }
            println!("{}", summary.line());
            if !summary.success() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Instances {
            seed,
            cases,
            max_m,
            max_n,
            max_r,
        } => {
            let config = SuiteConfig::new(seed, cases, max_m, max_n, max_r);
            for index in 0..cases as u64 {
                println!("{index} {}", instance_flags(&config, index));
            }
        }
        Command::List => {
            for identity in registry().iter() {
                println!("{} {}", identity.name(), identity.summary());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NotDivisible { .. } => 1,
                _ => 2,
            })
        }
    }
}
