use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use covinv::cli::{
    emit, exit_code_for, parse_coordinates, parse_problem_with, run, OutputFormat, Overrides,
};
use covinv::identities::run_suite;
use covinv::Error;

#[derive(Parser)]
#[command(name = "covinv", version, about = "Exact local solutions of dφ + A∧φ = J")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the problem in a problem file.
    Solve {
        file: PathBuf,
        /// text, json or latex
        #[arg(long)]
        output: Option<String>,
        /// Only solve and re-check the residual; print a one-line verdict.
        #[arg(long)]
        verify_only: bool,
        /// Homotopy center as comma-separated rationals, e.g. 1/2,0.
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        /// Truncation order.
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// Check the operator identities on pseudo-random forms.
    CheckIdentities {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 6)]
        trunc: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random forms per identity and fiber dimension.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code_for(e) as u8)
}

fn solve(
    file: PathBuf,
    output: Option<String>,
    verify_only: bool,
    center: Option<String>,
    trunc: Option<u32>,
) -> ExitCode {
    let mut overrides = Overrides {
        trunc,
        ..Default::default()
    };
    if let Some(o) = output {
        match OutputFormat::parse(&o) {
            Some(f) => overrides.output = Some(f),
            None => return fail(&Error::Validation(format!("unknown output format '{o}'"))),
        }
    }
    if let Some(c) = center {
        match parse_coordinates(&c) {
            Some(c) => overrides.center = Some(c),
            None => return fail(&Error::Validation(format!("bad center '{c}'"))),
        }
    }
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(3);
        }
    };
    let spec = match parse_problem_with(&text, &overrides) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let report = match run(&spec) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if verify_only {
        let verdict = match report.verified {
            Some(true) => "residual verified",
            Some(false) => "residual MISMATCH",
            None => "nothing to verify",
        };
        println!(
            "{}: {verdict}, status {}, residual min degree {}",
            file.display(),
            report.constraint_status.status,
            report
                .residual_min_degree
                .map_or_else(|| "-".to_string(), |d| d.to_string())
        );
    } else {
        print!("{}", emit(&report, spec.output));
    }
    if let Some(d) = &report.constraint_status.detail {
        eprintln!("no solution: {d}");
    }
    ExitCode::from(report.exit_code() as u8)
}

fn check_identities(dim: usize, trunc: u32, seed: u64, samples: usize) -> ExitCode {
    if dim == 0 || dim > covinv::coeff::MAX_DIM || trunc == 0 {
        return fail(&Error::Validation(format!("need 1 <= dim <= {} and trunc >= 1", covinv::coeff::MAX_DIM)));
    }
    let results = match run_suite(dim, trunc, seed, samples) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut failed = 0;
    for r in &results {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        println!(
            "{:<width$}  m={}  {verdict}  {}/{}",
            r.name,
            r.fiber,
            r.trials - r.failures,
            r.trials
        );
        if let Some(f) = &r.first_failure {
            println!("{:<width$}        first failure: {f}", "");
        }
        failed += usize::from(!r.passed());
    }
    println!("{failed} of {} checks failed (dim {dim}, trunc {trunc}, seed {seed})", results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Solve {
            file,
            output,
            verify_only,
            center,
            trunc,
        } => solve(file, output, verify_only, center, trunc),
        Command::CheckIdentities {
            dim,
            trunc,
            seed,
            samples,
        } => check_identities(dim, trunc, seed, samples),
    }
}
