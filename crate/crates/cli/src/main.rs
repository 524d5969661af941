use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Exact computation in R. Thompson's group F.
///
/// Exit status: 0 for success, true or accepted; 1 for false or rejected;
/// 2 for usage and parse errors.
#[derive(Parser, Debug)]
#[command(name = "thompson", version)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write a DOT rendering (diagrams and cores) to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    /// Read generator words from FILE, one per line.
    #[arg(long, global = true, value_name = "FILE")]
    pub gens: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of a word.
    Nf {
        word: String,
        /// Apply the isomorphism F -> G (x0 -> x0 x2, x1 -> x1 x2) first.
        #[arg(long)]
        psi: bool,
        /// Apply the inverse isomorphism G -> F.
        #[arg(long, conflicts_with = "psi")]
        psi_inverse: bool,
    },
    /// Product `a b`.
    Mul {
        a: String,
        b: String,
        /// Print `b^-1 a b` instead.
        #[arg(long)]
        conjugate: bool,
        /// Print the direct sum, `a` on [0,1/2] and `b` on [1/2,1].
        #[arg(long, conflicts_with = "conjugate")]
        oplus: bool,
    },
    /// Inverse of a word.
    Inv { word: String },
    /// Image of a point: a binary point like `.0(10)` or a rational like `1/3`.
    Act { word: String, point: String },
    /// Fixed set of an element.
    Fix {
        word: String,
        /// List the minimal components instead, one normal form per line.
        #[arg(long)]
        components: bool,
        /// Test whether every point of a comma-separated list is fixed.
        #[arg(long, value_name = "POINTS", conflicts_with = "components")]
        stabilizes: Option<String>,
    },
    /// Fold the 2-core of the subgroup generated by the given words.
    Core {
        words: Vec<String>,
        /// Print the fold trace.
        #[arg(long)]
        trace: bool,
        /// Print the size of the unfolded bouquet.
        #[arg(long)]
        raw: bool,
        /// Processing order: `fifo` or `shuffled:<seed>`.
        #[arg(long, default_value = "fifo")]
        order: String,
        /// Load a core exported with `--json` or `--dot` instead of folding.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["words", "trace", "raw"])]
        from: Option<PathBuf>,
    },
    /// Acceptance of a word's reduced diagram by a core.
    Accept {
        word: String,
        /// A generator (repeatable); combined with `--gens`.
        #[arg(long = "gen", value_name = "WORD")]
        generator: Vec<String>,
        /// Use a core exported with `--json` or `--dot`.
        #[arg(long, value_name = "FILE")]
        core: Option<PathBuf>,
    },
    /// Membership in a named subgroup: jones, g, savchuk or stab:<points>.
    Member {
        word: Option<String>,
        #[arg(long)]
        subgroup: String,
        /// Print a generating set of the subgroup instead.
        #[arg(long)]
        generators: bool,
    },
    /// Which subgroup Jones' subgroup and the word generate: jones, g or f.
    Classify { word: String },
    /// A checkable expression deriving a target element.
    Witness {
        word: String,
        #[arg(long, value_enum, default_value_t = WitnessKind::Augment)]
        kind: WitnessKind,
    },
    /// Shortest representative of the double coset F→ w F→.
    Minimize {
        word: String,
        /// Only make the representative positive.
        #[arg(long)]
        positivize: bool,
        /// List the blocks of a positive normal form.
        #[arg(long, conflicts_with = "positivize")]
        blocks: bool,
        /// Test whether x_I skips over a positive normal form.
        #[arg(long, value_name = "I", conflicts_with_all = ["positivize", "blocks"])]
        skips: Option<usize>,
    },
    /// Convert a word, a tree pair `D | R` or a JSON breakpoint list.
    Export {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Tree)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    /// Express an element of G over y0 = x0 x2 and y1 = x1 x2.
    G,
    /// Derive x0 x2 from Jones' subgroup and an element outside it.
    Augment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Word,
    Tree,
    Plmap,
    Prefix,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            // a closed pipe is not an error worth reporting
            let text: Vec<&str> = out.text.lines().map(str::trim_end).collect();
            let _ = writeln!(std::io::stdout(), "{}", text.join("\n"));
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
