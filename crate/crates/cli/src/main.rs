//! Command-line front end: compute kernels, solve the focal problems,
//! evaluate bounds, extract spectra, run zero-exclusion scans, and execute
//! the full verification suite.
//!
//! Exit codes: 0 = success / all checks pass; 1 = a verification or
//! exclusion check failed (the report is still emitted); 2 = invalid input.
//! Reports go to standard output, diagnostics to standard error. All
//! numbers are serialized with 17 significant digits, so outputs are
//! byte-reproducible.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nabla_bvp::io;
use nabla_bvp::suite;
use nabla_bvp::{
    closed_form_bounds, eigen_bound, eigen_spectrum, greens_left, greens_right, kernel_stats,
    lyapunov_bound, solve_greens, verify_solution, zero_exclusion_scan, BvpSpec, Domain, Error,
    FocalKind, GreensKernel,
};

#[derive(Parser)]
#[command(
    name = "nabla-bvp",
    version,
    about = "Discrete fractional focal BVP toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Left,
    Right,
}

impl From<Kind> for FocalKind {
    fn from(k: Kind) -> FocalKind {
        match k {
            Kind::Left => FocalKind::Left,
            Kind::Right => FocalKind::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ProblemArgs {
    /// Left base point of the integer interval.
    #[arg(long)]
    a: i64,
    /// Right endpoint of the integer interval.
    #[arg(long)]
    b: i64,
    /// Fractional order, strictly between 1 and 2.
    #[arg(long)]
    alpha: f64,
    /// Which focal boundary value problem.
    #[arg(long, value_enum)]
    kind: Kind,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the Green's kernel with its scan statistics and closed forms.
    Greens {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Solve the focal problem for a forcing read from a file, and verify.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Forcing h on N^b_{a+2}: CSV rows `t,value` or JSON {base, values}.
        #[arg(long)]
        input: PathBuf,
        /// Verification tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate the Lyapunov and eigenvalue lower bounds.
    Bounds {
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Eigenvalues of the Green operator (needs b − a >= 3).
    Eigen {
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Scan the characteristic function on its zero-exclusion interval
    /// (n = b − a, needs n >= 3).
    Mlzeros {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Number of equispaced sample points.
        #[arg(long, default_value_t = 1001)]
        samples: u32,
        /// Series evaluation tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the full invariant verification suite.
    Verify,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        // a non-converging eigensolver is a failed check on valid input
        Err(e @ Error::SolverFailure(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn kernel_for(kind: FocalKind, domain: &Domain, alpha: f64) -> Result<GreensKernel, Error> {
    match kind {
        FocalKind::Left => greens_left(domain, alpha),
        FocalKind::Right => greens_right(domain, alpha),
    }
}

fn read_grid(path: &PathBuf, domain: &Domain) -> Result<nabla_bvp::GridFunction, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse_grid(
        &text,
        domain.a() + 2,
        (domain.b() - domain.a() - 1) as usize,
    )
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Greens { problem, format } => {
            let domain = Domain::new(problem.a, problem.b)?;
            let kind = FocalKind::from(problem.kind);
            let kernel = kernel_for(kind, &domain, problem.alpha)?;
            match format {
                Format::Csv => print!("{}", io::kernel_to_csv(&kernel)),
                Format::Json => {
                    let stats = kernel_stats(&kernel);
                    let closed = closed_form_bounds(kind, &domain, problem.alpha)?;
                    // splice stats and closed forms into the kernel object
                    let body = io::kernel_to_json(&kernel);
                    let extra = format!(
                        ",\"stats\":{},\"closed_form\":{}}}",
                        io::stats_to_json(&stats),
                        io::bounds_to_json(&closed)
                    );
                    println!("{}{}", &body[..body.len() - 1], extra);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            problem,
            input,
            tol,
            format,
        } => {
            let domain = Domain::new(problem.a, problem.b)?;
            let kind = FocalKind::from(problem.kind);
            let h = read_grid(&input, &domain)?;
            let spec = BvpSpec::new(kind, domain, problem.alpha, h)?;
            let u = solve_greens(&spec)?;
            let report = verify_solution(&spec, &u, tol)?;
            match format {
                Format::Csv => {
                    print!("{}", io::grid_to_csv(&u));
                    eprintln!(
                        "verification: {} (interior {:.3e}, bc worst {:.3e})",
                        if report.pass { "pass" } else { "fail" },
                        report.residual_interior_max,
                        report
                            .bc_values
                            .iter()
                            .fold(0.0_f64, |m, (_, v)| m.max(v.abs()))
                    );
                }
                Format::Json => {
                    println!(
                        "{}",
                        io::json_object(&[
                            ("kind", format!("\"{}\"", kind.as_str())),
                            ("a", problem.a.to_string()),
                            ("b", problem.b.to_string()),
                            ("alpha", io::fmt_f64(problem.alpha)),
                            ("u", io::grid_to_json(&u)),
                            ("report", io::verification_to_json(&report)),
                        ])
                    );
                }
            }
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Bounds { problem } => {
            let domain = Domain::new(problem.a, problem.b)?;
            let kind = FocalKind::from(problem.kind);
            let lb = lyapunov_bound(kind, &domain, problem.alpha)?;
            let eb = eigen_bound(kind, &domain, problem.alpha)?;
            println!(
                "{}",
                io::json_object(&[
                    ("lyapunov_bound", io::fmt_f64(lb)),
                    ("eigen_bound", io::fmt_f64(eb)),
                ])
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Eigen { problem } => {
            let domain = Domain::new(problem.a, problem.b)?;
            let kind = FocalKind::from(problem.kind);
            let spectrum = eigen_spectrum(kind, &domain, problem.alpha)?;
            let eb = eigen_bound(kind, &domain, problem.alpha)?;
            println!("{}", io::spectrum_to_json(&spectrum, eb));
            Ok(ExitCode::SUCCESS)
        }
        Command::Mlzeros {
            problem,
            samples,
            tol,
        } => {
            let domain = Domain::new(problem.a, problem.b)?;
            let kind = FocalKind::from(problem.kind);
            let n = domain.b() - domain.a();
            let report = zero_exclusion_scan(kind, problem.alpha, n, samples, tol)?;
            println!("{}", io::scan_to_json(&report));
            let pass = report.sign_changes == 0 && report.min_abs_value > 0.0;
            Ok(if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify => {
            let report = suite::run_suite()?;
            for check in &report.checks {
                eprintln!(
                    "{:<45} {} (measure {:.3e}, threshold {:.3e})",
                    check.name,
                    if check.pass { "pass" } else { "FAIL" },
                    check.measure,
                    check.threshold
                );
            }
            println!("{}", suite::suite_to_json(&report));
            Ok(if report.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
