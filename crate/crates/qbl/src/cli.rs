//! Argument definitions for the `qbl` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qbl", version, about = "Mostow coordinates, Stein certification and hyperbolicity witnesses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add the wall time to JSON reports (breaks byte-identical output).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArg {
    /// Spec file: weight, profile and optional params.
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct Ball {
    /// Second-column center, first entry (complex, e.g. `0.5` or `1-2i`).
    #[arg(long, allow_hyphen_values = true)]
    pub z3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z4: Option<String>,
    /// Ball radius.
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor g = u·exp(ihH)·diag(1/ζ, ζ).
    Decompose {
        /// Row-major matrix "a+bi,c+di;e+fi,g+hi" with determinant 1.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[command(flatten)]
        output: Output,
    },
    /// Invariant coordinates (s, t) and derived quantities.
    Coords {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[command(flatten)]
        output: Output,
    },
    /// Membership of a bundle point in the disc bundle.
    Member {
        #[command(flatten)]
        spec: SpecArg,
        /// Point file {"g": [[re, im] × 4], "z": [re, im], "m": int}.
        #[arg(long)]
        point: PathBuf,
        /// Treat the zero section as removed.
        #[arg(long)]
        punctured: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Three-valued Stein verdict; exit 0 certified, 2 refuted, 3 inconclusive.
    Certify {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Run the submean probe on one thread.
        #[arg(long)]
        serial: bool,
        /// Optional ball for a hyperbolicity witness on certified profiles.
        #[command(flatten)]
        ball: Ball,
        #[command(flatten)]
        output: Output,
    },
    /// The δ-transform on a uniform τ grid.
    Delta {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        tau_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Boundedness constants C, D and the bound on s over a ball.
    Witness {
        #[command(flatten)]
        spec: SpecArg,
        #[command(flatten)]
        ball: Ball,
        /// Check the bound on this many rejection-sampled cover members.
        #[arg(long, default_value_t = 0)]
        verify: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// δ along the distinguished curve x ↦ log(1 + e^{2x}).
    Curve {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Quick built-in consistency checks.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Decompose { .. } => "decompose",
            Command::Coords { .. } => "coords",
            Command::Member { .. } => "member",
            Command::Certify { .. } => "certify",
            Command::Delta { .. } => "delta",
            Command::Witness { .. } => "witness",
            Command::Curve { .. } => "curve",
            Command::Selftest { .. } => "selftest",
        }
    }

    pub fn output(&self) -> &Output {
        match self {
            Command::Decompose { output, .. }
            | Command::Coords { output, .. }
            | Command::Member { output, .. }
            | Command::Certify { output, .. }
            | Command::Delta { output, .. }
            | Command::Witness { output, .. }
            | Command::Curve { output, .. }
            | Command::Selftest { output, .. } => output,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_negative_values() {
        let cli =
            Cli::try_parse_from(["qbl", "curve", "--spec", "s.json", "--x-min", "-2", "--format", "csv"]).unwrap();
        match cli.command {
            Command::Curve { x_min, format, .. } => {
                assert_eq!(x_min, Some(-2.0));
                assert_eq!(format, Format::Csv);
            }
            other => panic!("parsed {other:?}"),
        }
        let cli = Cli::try_parse_from(["qbl", "witness", "--spec", "s", "--z3", "-0.5i", "--eps", "0.1"]).unwrap();
        assert_eq!(cli.command.name(), "witness");
    }

    #[test]
    fn unknown_subcommand_fails() {
        assert!(Cli::try_parse_from(["qbl", "plot"]).is_err());
    }
}
