use std::path::PathBuf;

use clap::{Parser, Subcommand};
use invlim_core::{parse_rational, ratio, Rational, UnitRational};

use crate::error::CliError;

/// Exact computations with piecewise-linear maps of [0,1] and their inverse limits.
///
/// Map files use the `plmap v1` format, thread files the `threads v1` format.
/// Exit status: 0 on success, 2 when a computed verdict says the hypotheses
/// fail, 1 on any operational error.
#[derive(Clone, Debug, Parser)]
#[command(name = "invlim", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Thread depth for `threads`; largest certified depth for `certify-pair` (default 3).
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Stop `threads` after this many branches.
    #[arg(long, global = true)]
    pub max_branches: Option<usize>,

    /// Largest breakpoint count allowed for a composed map.
    #[arg(long = "budget", global = true, default_value_t = 1 << 20)]
    pub breakpoint_budget: usize,

    /// Lower bound on |slope| checked by `certify-seq`.
    #[arg(long, global = true, default_value = "3/1", value_parser = rational_arg)]
    pub slope_bound: Rational,

    /// First coordinate of the threads enumerated by `threads`.
    #[arg(long, global = true, value_parser = unit_arg)]
    pub root: Option<UnitRational>,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for `threads`. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Evaluate a map at one or more points.
    Eval {
        map: PathBuf,
        #[arg(required = true, value_parser = unit_arg)]
        points: Vec<UnitRational>,
    },
    /// Print OUTER∘INNER as a plmap v1 file.
    Compose { outer: PathBuf, inner: PathBuf },
    /// Print the fixed-point set of a map.
    Fix { map: PathBuf },
    /// Print the commutator defect ‖f∘g − g∘f‖∞ and where it is attained.
    Commute { f: PathBuf, g: PathBuf },
    /// Certify a pair: commutation, surjectivity, disjoint fixed sets, fixed threads.
    CertifyPair { f: PathBuf, g: PathBuf },
    /// Report on a sequence of stages given as F1 G1 F2 G2 ...
    CertifySeq {
        #[arg(required = true, num_args = 4..)]
        maps: Vec<PathBuf>,
    },
    /// Enumerate the backward branches of a bonding map from --root to --depth.
    Threads { map: PathBuf },
    /// Apply the map induced by MAP to every thread of a dump bonded by BONDING.
    Induce {
        map: PathBuf,
        bonding: PathBuf,
        threads: PathBuf,
    },
    /// Check F∘G = G∘F = shift on every thread of a dump bonded by f∘g.
    Mouron {
        f: PathBuf,
        g: PathBuf,
        threads: PathBuf,
    },
    /// Draw a map, or with --threads the (x1, x2) projections of a thread dump, as SVG.
    Plot {
        map: PathBuf,
        /// Thread dump bonded by MAP.
        #[arg(long)]
        threads: Option<PathBuf>,
        /// Pixels per unit length.
        #[arg(long, default_value_t = 400)]
        scale: u32,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("`{s}`: {e}"))
}

fn unit_arg(s: &str) -> Result<UnitRational, String> {
    let r = rational_arg(s)?;
    UnitRational::new(r).map_err(|e| e.to_string())
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("--depth", self.depth),
            ("--max-branches", self.max_branches),
            ("--budget", Some(self.breakpoint_budget)),
            ("--workers", Some(self.workers)),
        ];
        for (flag, value) in positive {
            if value == Some(0) {
                return Err(CliError::Usage(format!("{flag} must be at least 1")));
            }
        }
        if self.slope_bound <= ratio(0, 1) {
            return Err(CliError::Usage("--slope-bound must be positive".into()));
        }
        if let Command::Plot { scale: 0, .. } = self.command {
            return Err(CliError::Usage("--scale must be at least 1".into()));
        }
        Ok(())
    }
}
