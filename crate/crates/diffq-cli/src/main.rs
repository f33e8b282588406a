//! `diffq`: exact checks of the q-difference algebra, its twisted Fock
//! modules, q-W currents and Whittaker vectors, with JSON reports.

mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::CmdError;
use report::{Report, Row, RunConfig};

#[derive(Parser)]
#[command(name = "diffq", version, about = "Exact checks for Diff_q, twisted Fock modules and q-W algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report to FILE, or to stdout without a value
    #[arg(long, global = true, value_name = "FILE", num_args = 0..=1)]
    json: Option<Option<PathBuf>>,
    /// Write the JSON report to FILE
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads (0: one per core)
    #[arg(long, global = true, env = "DIFFQ_THREADS", default_value_t = 0)]
    threads: usize,
    /// Report `timing` as null, so that identical runs give identical bytes
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Main identity: (q^(1/n) z^(1/n); q^(1/n), q^(1/n))_inf against the lattice sum of pairings
    VerifyIdentity {
        #[arg(long)]
        n: usize,
        /// last coefficient compared, in steps of z^(1/n)
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Whittaker vector of a tensor product of Fock modules
    Whittaker {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// comma separated parameters u_1,...,u_n in t (default t,t^2,...,t^n)
        #[arg(long, value_delimiter = ',')]
        u: Option<Vec<String>>,
        /// q^(1/2) = t^half (default n)
        #[arg(long)]
        half: Option<i64>,
    },
    /// Relations of the twisted q-W currents (and, for n = 2, the q-Virasoro bosonizations)
    VerifyWalgebra {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        ntw: i64,
        #[arg(long, default_value_t = 2)]
        modes: i64,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// u^(1/n) = t^u_root
        #[arg(long, default_value_t = 1)]
        u_root: i64,
    },
    /// Every realization of the twisted Fock module: relations, characters, trace fingerprints
    TwistedCheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        ntw: i64,
        #[arg(long, default_value_t = 2)]
        modes: i64,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        u_root: i64,
    },
    /// Graded dimensions of the (twisted) Fock module against 1/(q)_inf
    Characters {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// default 1 for n > 1, else 0
        #[arg(long)]
        ntw: Option<i64>,
        #[arg(long, default_value_t = 10)]
        degree: usize,
    },
    /// Character identity for the decomposition of the restricted Fock module
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        ntw: i64,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
}

fn config(cmd: &Command) -> RunConfig {
    let mut c = RunConfig::default();
    match cmd {
        Command::VerifyIdentity { n, order } => {
            c.command = "verify-identity".into();
            c.n = *n;
            c.order = Some(*order);
        }
        Command::Whittaker { n, degree, u, half } => {
            c.command = "whittaker".into();
            c.n = *n;
            c.degree = Some(*degree);
            c.params = u.clone().unwrap_or_else(|| commands::default_params(*n));
            c.half = Some(half.unwrap_or(*n as i64));
        }
        Command::VerifyWalgebra { n, ntw, modes, degree, u_root } => {
            c.command = "verify-walgebra".into();
            (c.n, c.ntw, c.modes, c.degree, c.u_root) = (*n, *ntw, Some(*modes), Some(*degree), Some(*u_root));
            c.roots = if *ntw != 0 { 2 * *n as u32 } else { 1 };
        }
        Command::TwistedCheck { n, ntw, modes, degree, u_root } => {
            c.command = "twisted-check".into();
            (c.n, c.ntw, c.modes, c.degree, c.u_root) = (*n, *ntw, Some(*modes), Some(*degree), Some(*u_root));
            c.roots = 2 * *n as u32;
        }
        Command::Characters { n, ntw, degree } => {
            c.command = "characters".into();
            c.n = *n;
            c.ntw = ntw.unwrap_or(if *n > 1 { 1 } else { 0 });
            c.degree = Some(*degree);
        }
        Command::Decompose { n, ntw, degree } => {
            c.command = "decompose".into();
            (c.n, c.ntw, c.degree) = (*n, *ntw, Some(*degree));
        }
    }
    if c.roots == 0 {
        c.roots = 1;
    }
    c
}

fn execute(cfg: &RunConfig) -> commands::Rows {
    match cfg.command.as_str() {
        "verify-identity" => commands::verify_identity(cfg),
        "whittaker" => commands::whittaker(cfg),
        "verify-walgebra" => commands::verify_w(cfg),
        "twisted-check" => commands::twisted_check(cfg),
        "characters" => commands::characters(cfg),
        _ => commands::decompose(cfg),
    }
}

/// Parse, run and report; returns the exit code.
fn run<I: IntoIterator<Item = OsString>>(argv: I) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let mut cfg = config(&cli.command);
    cfg.output = cli.out.out.clone().or_else(|| cli.out.json.clone().flatten());
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.out.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return 2;
        }
    };
    cfg.threads = pool.current_num_threads();
    let start = Instant::now();
    let (rows, notes) = match pool.install(|| execute(&cfg)) {
        Ok(r) => r,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            return 2;
        }
        Err(CmdError::Failed(msg)) => (vec![Row::holds("computation", Some(msg))], Vec::new()),
    };
    let elapsed = start.elapsed();
    let report = Report { config: cfg, rows, notes };
    let json = report.to_json(if cli.out.no_timing { None } else { Some(elapsed) });
    let text = serde_json::to_string_pretty(&json).expect("report serializes") + "\n";
    let to_stdout = cli.out.json == Some(None) && cli.out.out.is_none();
    if let Some(path) = &report.config.output {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {}", path.display(), e);
            return 2;
        }
    }
    let mut stdout = std::io::stdout().lock();
    let _ = if to_stdout { stdout.write_all(text.as_bytes()) } else { stdout.write_all(report.human().as_bytes()) };
    if report.pass() {
        0
    } else {
        1
    }
}

fn main() {
    std::process::exit(run(std::env::args_os()));
}
