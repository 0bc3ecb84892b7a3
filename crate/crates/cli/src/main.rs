//! `subcomm`: subgroup lattices and subgroup commutativity degrees of small
//! finite groups.
//!
//! Exit status: 0 success, 1 a checked property failed, 2 usage or parse
//! error, 3 a resource cap was exceeded.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use subcomm::group::DEFAULT_MAX_ORDER;

const GROUP_HELP: &str = "Group expression: Z<n>, D<order>, S<n>, A<n>, ZM(m,n,r), perm(d):(1,2),(1,2,3), \
joined by 'x' for direct products. Dihedral groups are named by order: D8 has 8 elements.";

const SUBGROUP_HELP: &str = "Subgroup selector: lattice index, class:C[:R], <gen,...> (element names, \
cycles, or products a*b), or one of G, 1, center, derived, alternating";

#[derive(Parser, Debug)]
#[command(name = "subcomm", version, about = "Subgroup commutativity degrees of small finite groups")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Directory for cached lattices.
    #[arg(long, env = "SUBCOMM_CACHE", global = true)]
    pub cache: Option<PathBuf>,

    /// Largest group order any command will construct.
    #[arg(long, env = "SUBCOMM_MAX_ORDER", default_value_t = DEFAULT_MAX_ORDER, global = true)]
    pub max_order: usize,

    /// Cross-check every lattice against brute-force enumeration (order <= 128).
    #[arg(long, global = true)]
    pub oracle: bool,

    /// Worker threads for commands that process many groups.
    #[arg(long, env = "SUBCOMM_JOBS", default_value_t = 1, global = true)]
    pub jobs: usize,

    /// Log cache activity and timings to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// sd(G): fraction of ordered subgroup pairs that permute.
    Sd {
        #[arg(help = GROUP_HELP)]
        group: String,
        /// Include |C(H1)| for every subgroup.
        #[arg(long)]
        breakdown: bool,
    },
    /// sd(H, G) over L(H) x L(G).
    SdRel {
        #[arg(help = GROUP_HELP)]
        group: String,
        #[arg(help = SUBGROUP_HELP)]
        subgroup: String,
        #[arg(long)]
        breakdown: bool,
    },
    /// sd(H, K) over L(H) x L(K).
    SdPair {
        #[arg(help = GROUP_HELP)]
        group: String,
        #[arg(help = SUBGROUP_HELP)]
        h: String,
        #[arg(help = SUBGROUP_HELP)]
        k: String,
    },
    /// sd(H1, ..., Hn): tuples whose set product is the same in every order.
    SdNary {
        #[arg(help = GROUP_HELP)]
        group: String,
        #[arg(help = SUBGROUP_HELP, required = true, num_args = 1..=6)]
        subgroups: Vec<String>,
    },
    /// d(G), or d(H, G) with a subgroup: fraction of commuting element pairs.
    D {
        #[arg(help = GROUP_HELP)]
        group: String,
        #[arg(help = SUBGROUP_HELP)]
        subgroup: Option<String>,
    },
    /// List every subgroup with order, class, normality and maximality.
    Lattice {
        #[arg(help = GROUP_HELP)]
        group: String,
    },
    /// Maximal subgroups, their intersections, and the inclusion-exclusion
    /// expansion of sd(G). Exits 1 if the expansion disagrees with sd(G).
    Maximal {
        #[arg(help = GROUP_HELP)]
        group: String,
    },
    /// Run property suites over a corpus (the default corpus if no groups
    /// are given). Exits 1 if any property fails.
    Verify {
        /// Groups to check instead of the default corpus.
        groups: Vec<String>,
        /// Suites to run (repeatable or comma-separated); all by default.
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<String>,
    },
    /// Relative degrees of every triple-indexed subgroup of ZM groups.
    ZmSweep {
        /// Specific groups, e.g. ZM(5,4,2); otherwise every valid (m,n,r)
        /// with m*n <= --max-mn.
        groups: Vec<String>,
        #[arg(long, default_value_t = 30)]
        max_mn: u64,
    },
    /// The S4 maximal-subgroup worked example against its published values.
    /// Exits 1 only if the expansion disagrees with the direct computation.
    Example26 {
        #[arg(help = GROUP_HELP, default_value = "S4")]
        group: String,
    },
    /// sd(H, G) on each conjugacy class, with classes sharing a value.
    Profile {
        #[arg(help = GROUP_HELP, required_unless_present = "dihedral_sweep")]
        group: Option<String>,
        /// Instead: sd(<y>) and sd(<xy>) in every dihedral group of order
        /// 4..=N.
        #[arg(long, value_name = "N")]
        dihedral_sweep: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
