use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use descriptor_lab::layout::DEFAULT_MAX_DIM;
use descriptor_lab::pauli::parse_complex;
use descriptor_lab::suites::Suite;
use descriptor_lab::C64;

#[derive(Debug, Parser)]
#[command(name = "descriptor-lab", version, about = "Heisenberg-picture network simulation with Deutsch-Hayden descriptors")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Cap on the total Hilbert-space dimension.
    #[arg(long, env = "DESCRIPTOR_LAB_MAX_DIM", default_value_t = DEFAULT_MAX_DIM, global = true)]
    pub max_dim: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate observables on a circuit file in one or both pictures.
    Simulate(SimulateArgs),
    /// Run a randomized verification suite.
    Verify(VerifyArgs),
    /// Run one of the protocol demonstrations.
    Protocol(ProtocolArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Picture {
    Heisenberg,
    Schrodinger,
    Both,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Circuit file (JSON).
    pub circuit: PathBuf,

    #[arg(long, value_enum, default_value_t = Picture::Both)]
    pub picture: Picture,

    /// Observable as a Pauli sum, e.g. `ZZ` or `0.5*XI;-1*ZZ`. Words shorter
    /// than the circuit are padded with `I`. Repeatable; defaults to `Z` on
    /// every qubit.
    #[arg(short = 'o', long = "observable")]
    pub observables: Vec<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    pub suite: Suite,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Number of cases; each suite has its own default.
    #[arg(long)]
    pub cases: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    #[command(subcommand)]
    pub protocol: Protocol,
}

#[derive(Debug, Subcommand)]
pub enum Protocol {
    /// Superdense coding of two classical bits.
    Sdc {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        i: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        j: u8,
    },
    /// Teleportation of `alpha|0> + beta|1>`.
    Teleport {
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        alpha: C64,
        #[arg(long, value_parser = parse_c64, allow_hyphen_values = true)]
        beta: C64,
        /// Fully dephase the message qubits on their way to Bob.
        #[arg(long)]
        decohere: bool,
        /// Number of copy hops between Alice and Bob.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        hops: u64,
    },
    /// Local branching on a Bell pair followed by a comparison of records.
    Branching {
        /// Bob's measurement angle.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        bob_angle: f64,
    },
    /// CHSH game with exact branch measures.
    Chsh {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a_prime: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b_prime: Option<f64>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

fn parse_c64(s: &str) -> Result<C64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_complex_amplitudes() {
        let cli = Cli::try_parse_from(["descriptor-lab", "protocol", "teleport", "--alpha", "0.6", "--beta", "0.8i"]).unwrap();
        let Command::Protocol(p) = cli.command else { panic!() };
        let Protocol::Teleport { alpha, beta, hops, .. } = p.protocol else { panic!() };
        assert_eq!((alpha, beta, hops), (C64::new(0.6, 0.0), C64::new(0.0, 0.8), 1));
    }

    #[test]
    fn rejects_bits_outside_range() {
        assert!(Cli::try_parse_from(["descriptor-lab", "protocol", "sdc", "--i", "2", "--j", "0"]).is_err());
    }
}
