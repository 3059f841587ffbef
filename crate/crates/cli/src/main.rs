//! `fueter`: verification suites, kernel evaluation and CSV tables.

mod config;
mod suites;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fueter_core::kernels::{evaluate, Form, KernelName, KernelSpec, DEFAULT_TRUNCATION};

use config::{parse_quaternion, RunConfig};

#[derive(Parser)]
#[command(name = "fueter", version, about = "Check and evaluate quaternionic Fueter kernels and transforms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Series truncation degree.
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
    /// Quadrature order.
    #[arg(long = "quad-order", default_value_t = 80)]
    quad_order: usize,
    /// Tolerance for series and quadrature checks.
    #[arg(long, default_value_t = 1e-8, allow_negative_numbers = true)]
    tol: f64,
    /// Seed for random test points.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest degree in exact polynomial checks.
    #[arg(long = "max-degree", default_value_t = 30)]
    max_degree: u32,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a kernel K(q, p) and print `w,x,y,z` with a truncation bound.
    Eval {
        /// Kernel name, e.g. fock_fueter or bergman_wedge.
        #[arg(long)]
        kernel: String,
        /// First argument, `w,x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Second argument, `w,x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// `series` or `closed`.
        #[arg(long, default_value = "closed")]
        form: String,
        /// Order of the wedge domain.
        #[arg(long = "wedge-n", default_value_t = 2)]
        wedge_n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate an identity over a grid as CSV.
    Table {
        /// qsum, phi-gram or fock-moments.
        #[arg(long)]
        identity: String,
        /// `name=a:b:step` or `name=v1,v2,...`, separated by `;`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        grid: String,
        #[command(flatten)]
        common: Common,
    },
}

fn config(suite: &str, c: &Common) -> Result<RunConfig, String> {
    let cfg = RunConfig {
        suite: suite.to_string(),
        truncation: c.truncation,
        quad_order: c.quad_order,
        tol: c.tol,
        seed: c.seed,
        max_degree: c.max_degree,
        output: c.output.clone(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn failure(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { suite, common } => {
            let cfg = match config(&suite, &common) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let names = match suites::select(&cfg.suite) {
                Ok(n) => n,
                Err(e) => return usage(e),
            };
            let mut out = match cfg.writer() {
                Ok(w) => w,
                Err(e) => return usage(e),
            };
            match suites::verify(&names, &cfg, &mut out).and_then(|ok| out.flush().map(|_| ok)) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(e) => failure(e),
            }
        }
        Command::Eval { kernel, q, p, form, wedge_n, common } => {
            let cfg = match config("eval", &common) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let parsed = (|| -> Result<_, String> {
                let name = KernelName::parse(&kernel, wedge_n).map_err(|e| e.to_string())?;
                let form: Form = form.parse().map_err(|e: fueter_core::Error| e.to_string())?;
                Ok((name, form, parse_quaternion(&q)?, parse_quaternion(&p)?))
            })();
            let (name, form, first, second) = match parsed {
                Ok(v) => v,
                Err(e) => return usage(e),
            };
            let spec = KernelSpec { name, truncation: cfg.truncation, form };
            let value = match evaluate(&spec, &first, &second) {
                Ok(v) => v,
                Err(e) => return failure(e),
            };
            let mut out = match cfg.writer() {
                Ok(w) => w,
                Err(e) => return usage(e),
            };
            let v = value.value;
            let written = writeln!(out, "{:?},{:?},{:?},{:?}", v.w, v.x, v.y, v.z)
                .and_then(|_| writeln!(out, "tail,{:?}", value.tail))
                .and_then(|_| out.flush());
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => failure(e),
            }
        }
        Command::Table { identity, grid, common } => {
            let cfg = match config("table", &common) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let parsed = table::Identity::parse(&identity).and_then(|id| Ok((id, table::parse_grid(&grid)?)));
            let (id, axes) = match parsed {
                Ok(v) => v,
                Err(e) => return usage(e),
            };
            // Build the whole table first so a bad grid leaves no partial file.
            let mut buf = Vec::new();
            if let Err(e) = table::write_table(id, &axes, &cfg, &mut buf) {
                return usage(e);
            }
            let mut out = match cfg.writer() {
                Ok(w) => w,
                Err(e) => return usage(e),
            };
            match out.write_all(&buf).and_then(|_| out.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => failure(e),
            }
        }
    }
}
