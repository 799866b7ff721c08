//! Command-line arguments.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "perflat", version, about = "Perfect lattices: families, tables, recovery and enumeration")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Search node budget for enumeration and isometry tests.
    #[arg(long, global = true)]
    pub node_budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct L_d(h) and print its invariants.
    Family(FamilyArgs),
    /// The nine-dimensional family table together with L_10(4,10).
    Table9,
    /// Decide perfection of the form in a Gram file.
    PerfectCheck {
        #[arg(long)]
        gram: PathBuf,
    },
    /// Recover d and the holes of a family lattice from a Gram file.
    Recover {
        #[arg(long)]
        gram: PathBuf,
    },
    /// Hole sequence counts, subgroup counts and family sizes.
    Count(CountArgs),
    /// Bounds on the index I_d and on the number of perfect lattices.
    Bounds(BoundsArgs),
    /// Enumerate perfect lattices of small dimension.
    Enumerate(EnumerateArgs),
    /// Hollow systems, small-height bases, polytopes and root lattices.
    #[command(subcommand)]
    Geometry(GeometryCommand),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub dim: usize,
    /// Comma separated, increasing.
    #[arg(long, value_delimiter = ',')]
    pub holes: Vec<u64>,
    /// Also write the Gram matrix of the basis to this file.
    #[arg(long)]
    pub gram_out: Option<PathBuf>,
    /// Apply a seeded random change of basis before writing.
    #[arg(long, requires = "gram_out")]
    pub scramble: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("what").required(true).args(["alpha", "sigma", "family", "asymptotic"])))]
pub struct CountArgs {
    /// alpha(n) for a range such as `1..11`.
    #[arg(long)]
    pub alpha: Option<IntRange>,
    /// sigma_d(N) for a range of N, with `--dim`.
    #[arg(long, requires = "dim")]
    pub sigma: Option<IntRange>,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Number of perfect family members for a range of dimensions.
    #[arg(long)]
    pub family: Option<IntRange>,
    /// Certified check of the growth constant at n.
    #[arg(long)]
    pub asymptotic: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 10)]
    pub max_dim: usize,
    /// Value of I_d used in the counting bounds: minkowski, blichfeldt,
    /// hermite, best-known, best (smallest available) or an integer.
    #[arg(long, default_value = "best")]
    pub id: IdArg,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub dim: usize,
    /// Required for d = 4.
    #[arg(long)]
    pub long: bool,
    #[arg(long)]
    pub max_index: Option<u64>,
    #[arg(long)]
    pub no_symmetry: bool,
    #[arg(long)]
    pub no_hull_pruning: bool,
    #[arg(long)]
    pub no_minor_pruning: bool,
}

#[derive(Debug, Subcommand)]
pub enum GeometryCommand {
    /// Hollow systems in Z^d up to a given index.
    Hollow {
        #[arg(long)]
        dim: usize,
        /// Defaults to 2 d!.
        #[arg(long)]
        max_index: Option<u64>,
    },
    /// Random instances of the small-height basis construction.
    SmallHeight {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Lattice points of polytopes spanned by random short generators.
    Polytope {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Largest index of a sublattice spanned by roots.
    Roots {
        #[arg(long, value_enum, ignore_case = true)]
        r#type: RootArg,
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RootArg {
    A,
    D,
}

/// Inclusive range `a..b` (also `a..=b` or a single `a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(IntRange { lo, hi })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdArg {
    Minkowski,
    Blichfeldt,
    Hermite,
    BestKnown,
    Best,
    Explicit(u64),
}

impl FromStr for IdArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "minkowski" => IdArg::Minkowski,
            "blichfeldt" => IdArg::Blichfeldt,
            "hermite" => IdArg::Hermite,
            "best-known" => IdArg::BestKnown,
            "best" => IdArg::Best,
            _ => IdArg::Explicit(s.parse().map_err(|_| format!("unknown I_d choice {s:?}"))?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("1..11".parse(), Ok(IntRange { lo: 1, hi: 11 }));
        assert_eq!("3..=4".parse(), Ok(IntRange { lo: 3, hi: 4 }));
        assert_eq!("7".parse(), Ok(IntRange { lo: 7, hi: 7 }));
        assert!("5..2".parse::<IntRange>().is_err());
        assert!("a..2".parse::<IntRange>().is_err());
    }

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from(["perflat", "count", "--alpha", "1..11", "--format", "json"]).unwrap();
        assert_eq!(cli.format, Format::Json);
        assert!(Cli::try_parse_from(["perflat", "count"]).is_err());
        assert!(Cli::try_parse_from(["perflat", "count", "--sigma", "1..3"]).is_err());
        let cli = Cli::try_parse_from(["perflat", "family", "--dim", "9", "--holes", "2,8"]).unwrap();
        match cli.command {
            Command::Family(f) => assert_eq!(f.holes, [2, 8]),
            other => panic!("{other:?}"),
        }
    }
}
