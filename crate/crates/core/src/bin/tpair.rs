use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use terminal_pairing::cli::commands::{self, Family};
use terminal_pairing::cli::{Outcome, EXIT_PARSE};
use terminal_pairing::RealizeOptions;

/// Edge-disjoint path realizations in K_n and K_t^d.
///
/// Demand files: optional '#' comment lines, 'base complete <n>' or
/// 'base grid <t> <d>', 'demand <m>', then m lines 'e <u> <v>'. Vertices are
/// 1-based; grid vertex (a_1, ..., a_d) is 1 + sum_j (a_j - 1) t^(j-1).
/// Demand labels are 1..m in line order. Realization files: 'realization <m>'
/// then lines 'p <label> <v0> ... <vk>'.
///
/// Exit codes: 0 success, 1 unrealizable or verification failure, 2 parse
/// error, 3 precondition violated.
#[derive(Parser)]
#[command(name = "tpair", version, verbatim_doc_comment)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Realize a demand file; prints a realization file.
    Realize {
        /// demand file, '-' for stdin
        input: PathBuf,
        /// assert every reduction certificate while running
        #[arg(long)]
        self_check: bool,
    },
    /// Check a realization file against a demand file.
    Verify { demand: PathBuf, realization: PathBuf },
    /// Keep a maximum degree-capped subgraph of a K_n demand and realize it.
    Maxedp {
        input: PathBuf,
        /// uniform degree cap, default 2⌊n/6⌋−4
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        self_check: bool,
    },
    /// Exhaustive realizability check for tiny instances.
    Oracle { input: PathBuf },
    /// Print a demand file from an instance family.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Averaging upper bound on the bundle size q.
    Bound {
        input: PathBuf,
        /// minimum path length ℓ of non-exempt demands, default the smallest base distance
        #[arg(long)]
        len: Option<u64>,
        /// number of exempt demands e_0
        #[arg(long, default_value_t = 0)]
        exempt: u64,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// perfect matching of K_n, each edge q times
    OneFactor { n: usize, q: usize },
    /// each grid vertex paired with its mirror image, q times
    Antipodal { t: usize, d: usize, q: usize },
    /// (n−2)×(1,2) plus (n−2)×(3,4) in K_n
    DoubleBundle { n: usize },
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map(|_| text).map_err(|e| Outcome {
        code: EXIT_PARSE,
        stdout: String::new(),
        stderr: format!("error: {}: {e}\n", path.display()),
    })
}

fn run(cli: Cli) -> Result<Outcome, Outcome> {
    Ok(match cli.command {
        Command::Realize { input, self_check } => commands::realize(&read(&input)?, &RealizeOptions { self_check }),
        Command::Verify { demand, realization } => commands::verify(&read(&demand)?, &read(&realization)?),
        Command::Maxedp { input, cap, self_check } => {
            commands::maxedp(&read(&input)?, cap, &RealizeOptions { self_check })
        }
        Command::Oracle { input } => commands::oracle(&read(&input)?),
        Command::Gen { family } => commands::gen(match family {
            GenFamily::OneFactor { n, q } => Family::OneFactor { n, q },
            GenFamily::Antipodal { t, d, q } => Family::Antipodal { t, d, q },
            GenFamily::DoubleBundle { n } => Family::DoubleBundle { n },
        }),
        Command::Bound { input, len, exempt } => commands::bound(&read(&input)?, len, exempt),
    })
}

fn main() -> ExitCode {
    let out = run(Cli::parse()).unwrap_or_else(|e| e);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
