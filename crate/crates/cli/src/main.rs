//! `orbitcode` command line: splitting-degree tables, single polynomials,
//! code construction and certification.
//!
//! Exit codes: 0 success or certified, 2 falsified, 3 not falsified
//! (sampled), 4 bad input or violated precondition, 5 cap exceeded.

mod output;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbitcode::codes::{self, CertReport, DEFAULT_PAIR_CAP};
use orbitcode::io::{self, FieldSpec};
use orbitcode::linpoly::DEFAULT_SPLITTING_CAP;
use orbitcode::{tables, Error, FieldCtx, LinearizedPoly, Verdict};

use output::Format;

const EXIT_FALSIFIED: u8 = 2;
const EXIT_NOT_FALSIFIED: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;
const EXIT_CAP: u8 = 5;

#[derive(Parser)]
#[command(name = "orbitcode", version, about = "Cyclic orbit codes from subspace polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Exact when the pair budget allows, sampled otherwise.
    Auto,
    Exact,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Splitting degrees of X^(3^5) + a_l X^(3^l) + a_0 X over F_3.
    Table31 {
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SPLITTING_CAP)]
        cap: u64,
    },
    /// lcm of splitting degrees of X^(2^5) + t X^(2^l) + t X, t = θ^3, θ^6, θ^12, θ^17, θ^24.
    Table32 {
        /// Presentation of F_32 (file or inline JSON). Defaults to X^5 + X^2 + 1.
        #[arg(long)]
        field_spec: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SPLITTING_CAP)]
        cap: u64,
    },
    /// Splitting degree of one linearized polynomial.
    Degree {
        /// {"q_coeffs": [[i, a_i], ...]} (file or inline JSON).
        #[arg(long)]
        poly: String,
        /// Coefficient field (file or inline JSON).
        #[arg(long, conflicts_with = "q")]
        field_spec: Option<String>,
        /// Shorthand for the coefficient field F_q.
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SPLITTING_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build a code from a spec and certify its distance.
    Certify {
        /// Code spec (file or inline JSON).
        #[arg(long)]
        spec: String,
        /// Coefficient field presentation, overriding the spec.
        #[arg(long)]
        field_spec: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Budget for exact mode, in intersection computations.
        #[arg(long, default_value_t = DEFAULT_PAIR_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        threads: Option<usize>,
        /// Report wall time; without it wall_ms is 0 so output is reproducible.
        #[arg(long)]
        timing: bool,
        /// Skip the union, gcd and ambient checks (for planted counterexamples).
        #[arg(long)]
        skip_preconditions: bool,
    },
    /// Splitting degrees of every trinomial X^(q^k) + θ X^(q^l) + γ X over F_(q^n).
    Sweep {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        /// Only list degrees up to this bound.
        #[arg(long)]
        max_degree: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SPLITTING_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Either a path to a file or the JSON text itself.
fn read_arg(arg: &str) -> Result<String, Error> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg))
        .map_err(|e| Error::InvalidInput(format!("cannot read {arg}: {e}")))
}

fn field_from_arg(arg: &str) -> Result<FieldCtx, Error> {
    FieldSpec::from_json(&read_arg(arg)?)?.build()
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_PRECONDITION,
    }
}

fn verdict_code(report: &CertReport) -> u8 {
    match report.verdict {
        Verdict::Certified => 0,
        Verdict::Falsified => EXIT_FALSIFIED,
        Verdict::NotFalsified => EXIT_NOT_FALSIFIED,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Table31 { format, cap } => {
            let table = tables::table31(cap)?;
            print!("{}", output::table31(&table, format));
            Ok(0)
        }
        Command::Table32 {
            field_spec,
            format,
            cap,
        } => {
            let field = match field_spec {
                Some(arg) => field_from_arg(&arg)?,
                None => FieldSpec::for_q_n(2, 5)?.build()?,
            };
            let table = tables::table32(&field, cap)?;
            print!("{}", output::table32(&table, format));
            Ok(0)
        }
        Command::Degree {
            poly,
            field_spec,
            q,
            cap,
            format,
        } => {
            let field = match (field_spec, q) {
                (Some(arg), _) => field_from_arg(&arg)?,
                (None, Some(q)) => FieldSpec::for_q_n(q, 1)?.build()?,
                (None, None) => {
                    return Err(Error::InvalidInput("pass --field-spec or --q".into()));
                }
            };
            let f = io::poly_from_json(&field, &read_arg(&poly)?)?;
            let degree = f.splitting_degree(cap)?;
            print!("{}", output::degree(&f, degree, format));
            Ok(0)
        }
        Command::Certify {
            spec,
            field_spec,
            mode,
            samples,
            seed,
            cap,
            format,
            threads,
            timing,
            skip_preconditions,
        } => {
            if let Some(t) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global()
                    .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
            }
            let field = field_spec.as_deref().map(field_from_arg).transpose()?;
            let spec = io::code_spec_from_json(&read_arg(&spec)?, field.as_ref())?;
            let code = if skip_preconditions {
                codes::build_code_unchecked(&spec)?
            } else {
                codes::build_code(&spec)?
            };
            for w in code.warnings() {
                eprintln!("warning: {w}");
            }
            let exact = match mode {
                ModeArg::Exact => true,
                ModeArg::Sampled => false,
                ModeArg::Auto => code.exact_pair_count() <= cap.into(),
            };
            let report = if exact {
                codes::certify_exact(&code, cap)?
            } else {
                codes::certify_sampled(&code, samples, seed)?
            };
            let report = if timing { report } else { report.without_timing() };
            print!("{}", output::report(&report, format));
            Ok(verdict_code(&report))
        }
        Command::Sweep {
            q,
            n,
            k,
            l,
            max_degree,
            cap,
            format,
        } => {
            let field = FieldSpec::for_q_n(q, n)?.build()?;
            let rows = sweep(&field, k, l, max_degree, cap)?;
            print!("{}", output::sweep_table(&rows, format));
            Ok(0)
        }
    }
}

/// Largest coefficient field the sweep enumerates.
const SWEEP_FIELD_CAP: u64 = 256;

fn sweep(
    field: &FieldCtx,
    k: u32,
    l: u32,
    max_degree: Option<u64>,
    cap: u64,
) -> Result<Vec<output::SweepRow>, Error> {
    let elements: Vec<_> = field
        .elements(SWEEP_FIELD_CAP)
        .ok_or_else(|| Error::CapExceeded {
            what: "sweep coefficient field".into(),
            cap: SWEEP_FIELD_CAP,
            partial: format!("field has {} elements", field.size()),
        })?
        .filter(|x| !x.is_zero())
        .collect();
    let mut rows = Vec::new();
    for theta in &elements {
        for gamma in &elements {
            let f = LinearizedPoly::trinomial(k as usize, l as usize, theta, gamma)?;
            let degree = f.splitting_degree(cap)?;
            if max_degree.is_none_or(|m| degree <= m) {
                rows.push(output::SweepRow {
                    theta: theta.coeffs().to_vec(),
                    gamma: gamma.coeffs().to_vec(),
                    degree,
                });
            }
        }
    }
    Ok(rows)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PRECONDITION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
