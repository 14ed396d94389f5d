//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gwenum", version, about = "Quadratic enumerative invariants in GW(k)")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: OutputFormat,
    /// Print stored term maps instead of canonical forms.
    #[arg(long, global = true)]
    pub raw: bool,
    /// Keep <1> + <-1> pairs instead of collecting them into h.
    #[arg(long, global = true)]
    pub no_h: bool,
    /// Seed-data directory; overrides GWENUM_DATA_DIR.
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enriched binomial coefficient binom(A, j).
    Binom(BinomArgs),
    /// Twisted binomial coefficient tbinom(A, j, d) for deg A = 2j.
    Tbinom(TbinomArgs),
    /// Pascal triangle of binom(F_{q^n}, j) over F_q.
    Pascal(PascalArgs),
    /// Verify the binomial identities against the orbit enumeration.
    VerifyIdentities(VerifyIdentitiesArgs),
    /// Picard lattice computations.
    Lattice(LatticeArgs),
    /// Wall-crossing from a table of split invariants.
    Wallcross(WallcrossArgs),
    /// Closed-form tables for quadrics and blow-ups of P^2.
    Table(TableArgs),
    /// Check Dehn twist invariance on a table.
    DehnCheck(DehnCheckArgs),
    /// Check the surgery identity on random profiles.
    VerifySurgery(VerifySurgeryArgs),
    /// Arithmetic in GW(k).
    Gw(GwArgs),
}

#[derive(Debug, Args)]
pub struct BinomArgs {
    /// Base field: fq:<q>, q or r.
    #[arg(long, default_value = "q")]
    pub base: String,
    /// Algebra, e.g. ff:4,ff:2 or quad:2,trivial.
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub j: usize,
}

#[derive(Debug, Args)]
pub struct TbinomArgs {
    #[arg(long, default_value = "q")]
    pub base: String,
    #[arg(long)]
    pub algebra: String,
    #[arg(long)]
    pub j: usize,
    /// Twist class: an integer or u.
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
}

#[derive(Debug, Args)]
pub struct PascalArgs {
    #[arg(long, default_value = "fq:3")]
    pub base: String,
    #[arg(long, default_value_t = 6)]
    pub nmax: usize,
    /// Also list tbinom(F_{q^{2j}}, j, u) for j up to this bound.
    #[arg(long)]
    pub twisted: Option<usize>,
    /// Compare with the seeded published values.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct VerifyIdentitiesArgs {
    #[arg(long, default_value = "fq:3")]
    pub base: String,
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
    /// Square classes generating the multiquadratic corpus over Q or R.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub classes: Vec<i64>,
    /// Twist classes; defaults to u over F_q and -1 otherwise.
    #[arg(long = "d", value_delimiter = ',', allow_hyphen_values = true)]
    pub twists: Vec<String>,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// quadric, cubic, p2 or blowup:<m>.
    #[arg(long, default_value = "quadric")]
    pub model: String,
    /// Override the vanishing cycle.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Intersection product of two classes.
    #[arg(long, num_args = 2, allow_hyphen_values = true)]
    pub dot: Option<Vec<String>>,
    /// Classes to describe: point count, genus, Dehn twist and j-range.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Vec<String>,
    /// List the fiber pairs over D - l gamma for the given class.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub l: i64,
    /// Print the basis of gamma-perp.
    #[arg(long)]
    pub perp: bool,
}

#[derive(Debug, Args)]
pub struct WallcrossArgs {
    /// Invariant tables; later files override earlier ones.
    #[arg(long, required = true)]
    pub db: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', default_value = "-1")]
    pub d: Vec<String>,
    /// split, or an algebra such as quad:-1,split:5.
    #[arg(long, default_value = "split")]
    pub sigma: String,
    /// Fail on missing entries instead of treating them as 0.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Quadric,
    Blowup,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub kind: TableKind,
    /// Largest a for the quadric table.
    #[arg(long, default_value_t = 4)]
    pub amax: i64,
    /// Rows (a,b) for the blow-up table.
    #[arg(long, num_args = 1..)]
    pub rows: Vec<String>,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', default_value = "-1")]
    pub d: Vec<String>,
    /// Recompute quadric rows through the wall-crossing formula.
    #[arg(long)]
    pub wall_cross: bool,
    /// Include the external seed tier.
    #[arg(long)]
    pub external: bool,
}

#[derive(Debug, Args)]
pub struct DehnCheckArgs {
    #[arg(long, required = true)]
    pub db: Vec<String>,
    /// Check only these classes; defaults to every entry.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Vec<String>,
    #[arg(long, default_value = "split")]
    pub sigma: String,
}

#[derive(Debug, Args)]
pub struct VerifySurgeryArgs {
    #[arg(long, default_value_t = 500)]
    pub trials: u64,
    #[arg(long, default_value = "fq:5")]
    pub base: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Twist classes; defaults to u over F_q and -1,2 otherwise.
    #[arg(long = "d", value_delimiter = ',', allow_hyphen_values = true)]
    pub twists: Vec<String>,
}

#[derive(Debug, Args)]
pub struct GwArgs {
    #[command(subcommand)]
    pub op: GwOp,
    #[arg(long, default_value = "q", global = true)]
    pub base: String,
    /// Value of d in <2d>-style terms.
    #[arg(long, allow_hyphen_values = true, global = true)]
    pub d: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum GwOp {
    /// Decide equality in GW(k).
    Eq { x: String, y: String },
    /// Print canonical form and invariants.
    Show { x: String },
    Add { x: String, y: String },
    Sub { x: String, y: String },
    Mul { x: String, y: String },
}
