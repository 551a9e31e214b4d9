//! Command-line front end: tangle brackets, matrix invariants, the
//! composition algebra, synthesis of target classes and the obstruction
//! checks.
//!
//! Exit codes: 1 for parse/validation errors, 2 when a size guard is
//! exceeded, 3 for internal coherence failures (a bracket that is not a
//! monomial or a matrix with no common phase).

mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::report::CliError;

/// Exact Kauffman-bracket invariants of punctured ball tangles.
#[derive(Parser)]
#[command(name = "pbtangle", version, about)]
struct Cli {
    /// Emit machine-readable JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kauffman bracket of a closed diagram at A = e^{iπ/4}
    Bracket {
        /// Tangle expression (closed with --closure when it has 4 outer points)
        #[arg(short, long, conflicts_with = "file")]
        expr: Option<String>,
        /// Raw diagram file
        #[arg(short, long)]
        file: Option<String>,
        /// Closure applied to a 4-point tangle: num or den
        #[arg(long, default_value = "num")]
        closure: String,
    },
    /// The 2 x 2^n matrix invariant of a punctured tangle
    Invariant {
        #[arg(short, long, conflicts_with = "file")]
        expr: Option<String>,
        #[arg(short, long)]
        file: Option<String>,
    },
    /// Compose invariants by the hole-filling or connect-sum formulas
    Compose {
        /// fill, hsum or vsum
        #[arg(long)]
        op: String,
        /// Head matrix (row-major "a,b;c,d"), required for fill
        #[arg(long, allow_hyphen_values = true)]
        head: Option<String>,
        /// Part matrices, in hole order
        #[arg(long = "part", required = true, allow_hyphen_values = true)]
        parts: Vec<String>,
    },
    /// Emit a tangle expression realizing the class [p;q]
    Synthesize {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
    },
    /// Divisibility obstruction for disjointly embedded tangles
    CheckKrebes {
        /// Embedded tangle classes as "p,q"
        #[arg(short, long = "tangle", required = true, allow_hyphen_values = true)]
        tangles: Vec<String>,
        /// Bracket magnitude of the ambient link
        #[arg(short, long, conflicts_with = "expr", allow_hyphen_values = true)]
        magnitude: Option<i64>,
        /// Or a link expression (numerator closure is taken)
        #[arg(short, long)]
        expr: Option<String>,
    },
    /// det mod 4 realizability verdict for a 2x2 class
    CheckMod4 {
        /// Matrix "a,b;c,d"
        #[arg(short, long, allow_hyphen_values = true)]
        matrix: String,
    },
    /// Reduce a word in the operation group, optionally acting on a matrix
    Coxeter {
        /// Word over x (swap), y (inner turn), z (mirror)
        #[arg(short, long)]
        word: String,
        /// Matrix "a,b;c,d" to act on
        #[arg(short, long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Fill a template's 6-point hole with both delta gadgets and report
    /// the mod-4 congruence of the resulting invariants
    DeltaTest {
        /// Template file: a raw diagram with one 6-point hole
        #[arg(short, long, conflicts_with = "random")]
        file: Option<String>,
        /// Generate this many random spherical templates instead
        #[arg(long)]
        random: Option<usize>,
        /// Seed for --random
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code);
        }
    };
    println!("{out}");
    ExitCode::SUCCESS
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Bracket { expr, file, closure } => {
            commands::bracket(expr.as_deref(), file.as_deref(), closure, cli.json)
        }
        Command::Invariant { expr, file } => {
            commands::invariant(expr.as_deref(), file.as_deref(), cli.json)
        }
        Command::Compose { op, head, parts } => {
            commands::compose(op, head.as_deref(), parts, cli.json)
        }
        Command::Synthesize { p, q } => commands::synthesize(*p, *q, cli.json),
        Command::CheckKrebes { tangles, magnitude, expr } => {
            commands::check_krebes(tangles, *magnitude, expr.as_deref(), cli.json)
        }
        Command::CheckMod4 { matrix } => commands::check_mod4(matrix, cli.json),
        Command::Coxeter { word, matrix } => commands::coxeter(word, matrix.as_deref(), cli.json),
        Command::DeltaTest { file, random, seed } => {
            commands::delta_test(file.as_deref(), *random, *seed, cli.json)
        }
    }
}
