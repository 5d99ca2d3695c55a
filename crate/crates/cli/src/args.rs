use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "hodgecor", version, about = "Quasidihedral relations and Hodge correlators: enumeration, exact verification and numerical certification")]
pub struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// List quasishuffles of two blocks or plane trivalent trees.
    Enumerate(EnumerateArgs),
    /// Check that the relation space is a coideal, weight by weight.
    VerifyCoideal(CoidealArgs),
    /// Evaluate a Hodge correlator.
    Eval(EvalArgs),
    /// Check a relation numerically.
    CheckRelation(CheckArgs),
    /// Expand a generating function up to a total degree.
    ExpandGenfun(GenfunArgs),
    /// Run the acceptance matrix and emit one consolidated report.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerateKind {
    Quasishuffles,
    Trees,
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    pub kind: EnumerateKind,
    /// Block sizes `r s` for quasishuffles.
    pub sizes: Vec<usize>,
    /// Number of leaves for trees.
    #[arg(long)]
    pub leaves: Option<usize>,
    /// Include every item, not just the count.
    #[arg(long)]
    pub list: bool,
    /// Largest listing produced.
    #[arg(long, default_value_t = 100_000)]
    pub limit: usize,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Mu,
    Free,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GroupArgs {
    #[arg(long, value_enum, default_value_t = GroupKind::Mu)]
    pub group: GroupKind,
    /// Order of μ_N.
    #[arg(long = "N", default_value_t = 1)]
    pub n: u32,
    /// Generators of the free abelian group, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub symbols: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Full,
    FirstShuffle,
}

#[derive(Args, Debug, Serialize)]
pub struct CoidealArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub max_weight: usize,
    /// Adjoin the words with all letters equal to the relations.
    #[arg(long)]
    pub restricted: bool,
    #[arg(long, value_enum, default_value_t = FamilyArg::Full)]
    pub family: FamilyArg,
    /// Flip one quasishuffle sign (negative control; μ_2, weight 4).
    #[arg(long)]
    pub mutation_control: bool,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Closed,
    Feynman,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorArg {
    MeanOfMeans,
    MedianOfMeans,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct IntegrationArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 32)]
    pub batches: u32,
    #[arg(long, default_value_t = 0.5)]
    pub domain_radius: f64,
    #[arg(long, value_enum, default_value_t = EstimatorArg::MedianOfMeans)]
    pub estimator: EstimatorArg,
}

#[derive(Args, Debug, Serialize)]
pub struct EvalArgs {
    /// Letters as complex literals or assigned names, e.g. "(1,0,0,z)".
    #[arg(long)]
    pub word: String,
    /// Name=value pairs, comma separated, e.g. z=0.3+0.4i.
    #[arg(long, value_delimiter = ',')]
    pub assign: Vec<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    #[command(flatten)]
    pub integration: IntegrationArgs,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationArg {
    SecondShuffle,
    FirstShuffle,
    DilogBaseCase,
    FiveTerm,
    Gr27,
    Gr29,
    Gr29Reduced,
    Gr28,
    AdditiveShuffle,
    DistributionW1,
    Rotation,
    Reversal,
    AdditiveShift,
    MultiplicativeShift,
    Continuity,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub relation: RelationArg,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    /// Zero runs n_0, …, n_{r+s} for second shuffles.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Second shuffles over μ_N: exponents of w_1, …, w_{r+s}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub roots: Vec<i64>,
    #[arg(long = "N")]
    pub order: Option<u32>,
    /// Name=value pairs, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub assign: Vec<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    #[command(flatten)]
    pub integration: IntegrationArgs,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct GenfunArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Segment letters w_0, …, w_k (Λ*) or points x_0, …, x_k with --dual, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub letters: Vec<String>,
    /// Expand the dual series Λ instead of Λ*.
    #[arg(long)]
    pub dual: bool,
    #[arg(long, default_value_t = 2)]
    pub max_degree: u32,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Monte Carlo samples per correlator.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Run only these criteria (1-13), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
    #[arg(long)]
    pub out: Option<String>,
}
