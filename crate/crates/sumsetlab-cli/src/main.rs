//! Command line front end for exact additive-complement arithmetic.

mod commands;
mod dsl;
mod report;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CliResult;
use report::Report;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "sumsetlab",
    version,
    about = "Exact arithmetic for additive complements of integer sets",
    after_help = "Exit codes: 0 certified-yes, 1 certified-no, 2 unknown, 3 error."
)]
struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a set expression and list its members in a window.
    Eval {
        expr: String,
        /// Inclusive window LO..HI.
        #[arg(long)]
        window: String,
    },
    /// Decide whether C + W = Z (exact for periodic operands).
    Iscomplement {
        c: String,
        w: String,
        /// Required when an operand is window-backed.
        #[arg(long)]
        window: Option<String>,
    },
    /// Per-element minimality evidence for C as a complement of W.
    Isminimal {
        c: String,
        w: String,
        #[arg(long)]
        window: String,
    },
    /// Integers in the window that only the chosen element of C covers.
    Dependents {
        c_expr: String,
        w_expr: String,
        /// The element of C to probe.
        #[arg(long = "c", allow_hyphen_values = true)]
        element: i64,
        #[arg(long)]
        window: String,
    },
    /// Exhaustive search for residue patterns S passing the chosen condition.
    #[command(name = "search-s")]
    SearchS {
        /// 'necessary' or 'sufficient'.
        #[arg(long)]
        theorem: String,
        /// EP description like "n=2;A={1};F={};G={0,2,6}".
        #[arg(long)]
        ep: String,
    },
    /// Constructions that produce sets.
    #[command(subcommand)]
    Build(BuildCommand),
    /// Recover structure from certified complements.
    #[command(subcommand)]
    Extract(ExtractCommand),
    /// Generators for named families.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check whether a set is a minimal additive complement of itself.
    Selfmac {
        expr: String,
        #[arg(long)]
        window: String,
    },
    /// Gap histogram of a set (and of its complement) on a window.
    Gapstats {
        expr: String,
        #[arg(long)]
        window: String,
    },
}

#[derive(Subcommand)]
enum BuildCommand {
    /// Base set making a given finite C a minimal additive complement.
    #[command(name = "finite-w")]
    FiniteW {
        /// Finite literal like {0,1}.
        #[arg(long)]
        c: String,
        /// How far the explicit construction must reach before the tail.
        #[arg(long = "fill-to", allow_hyphen_values = true)]
        fill_to: i64,
    },
    /// Restrict a greedy complement of G to the classes of S.
    Inherit {
        /// EP description like "n=2;A={1};F={};G={0,2,6}".
        #[arg(long)]
        ep: String,
        /// Residue literal like {0}.
        #[arg(long)]
        s: String,
        #[arg(long)]
        window: String,
    },
}

#[derive(Subcommand)]
enum ExtractCommand {
    /// From a certified minimal complement of W, build one of G alone.
    Converse {
        /// EP description like "n=2;A={1};F={};G={0,2,6}".
        #[arg(long)]
        ep: String,
        /// Expression for the certified complement C.
        #[arg(long)]
        c: String,
        #[arg(long)]
        window: String,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// 3-AP-free set that is its own additive complement on its window.
    Prop11 {
        /// Truncation bound for the underlying digit family.
        #[arg(long)]
        limit: i64,
    },
}

fn run(command: &Command) -> CliResult<Report> {
    match command {
        Command::Eval { expr, window } => commands::cmd_eval(expr, window),
        Command::Iscomplement { c, w, window } => {
            commands::cmd_iscomplement(c, w, window.as_deref())
        }
        Command::Isminimal { c, w, window } => commands::cmd_isminimal(c, w, window),
        Command::Dependents { c_expr, w_expr, element, window } => {
            commands::cmd_dependents(c_expr, w_expr, *element, window)
        }
        Command::SearchS { theorem, ep } => commands::cmd_search_s(theorem, ep),
        Command::Build(BuildCommand::FiniteW { c, fill_to }) => {
            commands::cmd_build_finite_w(c, *fill_to)
        }
        Command::Build(BuildCommand::Inherit { ep, s, window }) => {
            commands::cmd_build_inherit(ep, s, window)
        }
        Command::Extract(ExtractCommand::Converse { ep, c, window }) => {
            commands::cmd_extract_converse(ep, c, window)
        }
        Command::Gen(GenCommand::Prop11 { limit }) => commands::cmd_gen_prop11(*limit),
        Command::Selfmac { expr, window } => commands::cmd_selfmac(expr, window),
        Command::Gapstats { expr, window } => commands::cmd_gapstats(expr, window),
    }
}

fn main() {
    // Argument mistakes exit 3 like any other error; 2 is reserved for UNKNOWN.
    let cli = Cli::try_parse().unwrap_or_else(|err| {
        use clap::error::ErrorKind;
        let code = match err.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
            _ => 3,
        };
        let _ = err.print();
        std::process::exit(code);
    });
    let start = std::time::Instant::now();
    match run(&cli.command) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_millis() as u64;
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.render_json()),
            }
            std::process::exit(report.exit_code());
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(3);
        }
    }
}
