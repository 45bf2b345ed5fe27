use clap::{Parser, Subcommand, ValueEnum};
use cycloseq::coeffs::AppendixKind;

#[derive(Debug, Parser)]
#[command(name = "cycloseq", version, about = "Exact counts of strings in cyclic binary sequences")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    #[value(name = "closed-form")]
    ClosedForm,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffKind {
    /// One deleted column, by dimension.
    C,
    /// Two deleted columns, by dimension.
    Cprime,
    /// `s + 1` deleted columns, by dimension.
    Cs,
    /// `s + 1` deleted columns, by weight.
    Cweight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Diagonal {
    /// `c^i_{i0} = i`.
    Formula,
    /// `c^i_{i0} = 1`.
    Tableau,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jump numbers: the distribution of a family, one value, or the grid of all
    /// families up to a length.
    Tnum {
        #[arg(long, required_unless_present = "grid")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "grid")]
        n: Option<usize>,
        #[arg(long)]
        tau: Option<usize>,
        /// Print every family with 2 <= N <= --max-N, columns by N then m.
        #[arg(long, conflicts_with_all = ["m", "n", "tau"])]
        grid: bool,
        #[arg(long = "max-N", default_value_t = 10, requires = "grid")]
        max_len: usize,
    },
    /// Occurrence distribution of a pattern over a family.
    Dist {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value_t = Via::ClosedForm)]
        via: Via,
    },
    /// Column-deletion coefficients. Without --j and --k prints the matrix
    /// over both.
    Coeff {
        #[arg(long, value_enum)]
        kind: CoeffKind,
        /// Depth: s + 1 columns are deleted. Fixed to 0 for c and 1 for cprime.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, visible_alias = "m")]
        i: usize,
        #[arg(long, visible_alias = "h")]
        j: Option<usize>,
        #[arg(long, visible_alias = "g")]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Diagonal::Formula)]
        diagonal: Diagonal,
    },
    /// Coefficient matrices in the appendix layout.
    Appendix {
        #[arg(long, value_parser = parse_appendix_kind)]
        which: AppendixKind,
        /// One fixed index instead of the whole printed set.
        #[arg(long)]
        fixed: Option<usize>,
        /// Last row label.
        #[arg(long)]
        extent: Option<usize>,
    },
    /// Subsets of Z_N with exactly h cyclic runs of r consecutive elements.
    Fib {
        #[arg(long = "N")]
        len: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        h: usize,
    },
    /// Cyclic selections of n out of N points, chosen points at least p - 1 apart.
    Kaplansky {
        #[arg(long = "N")]
        len: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Ring Ising partition functions.
    Ising {
        #[command(subcommand)]
        mode: IsingMode,
    },
    /// Weight polynomial of a walk with one-step memory.
    Walk {
        #[arg(long = "N")]
        steps: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        alpha: f64,
    },
    /// Moments of the jump count.
    Moments {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: u32,
        /// Also evaluate the Stirling-number expansion.
        #[arg(long)]
        approx: bool,
    },
    /// Large-family approximation of the jump numbers.
    Asym {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "sweep")]
        tau: Option<f64>,
        /// Emit (tau, value) pairs from --from to --to.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 0.0, requires = "sweep")]
        from: f64,
        #[arg(long, requires = "sweep")]
        to: Option<f64>,
        #[arg(long, default_value_t = 0.1, requires = "sweep")]
        step: f64,
    },
    /// Closed forms against enumeration, the misprint ledger and the printed
    /// coefficient matrices.
    Verify {
        #[arg(long = "max-N", default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        max_pattern_len: usize,
        /// Enumerate on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum IsingMode {
    /// Fixed number n of up spins.
    Fixed {
        #[arg(long = "N")]
        len: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
    },
    /// Sum over every configuration.
    Total {
        #[arg(long = "N")]
        len: usize,
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
    },
}

fn parse_appendix_kind(text: &str) -> Result<AppendixKind, String> {
    text.parse().map_err(|e: cycloseq::CountError| e.to_string())
}
