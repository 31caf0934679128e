mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cellcode::gf2::DEFAULT_COSET_BUDGET;
use cellcode::search::DEFAULT_CLASS_BUDGET;

/// Quantum codes from cellulations of surfaces.
#[derive(Parser, Debug)]
#[command(name = "cellcode", version)]
pub struct Cli {
    /// Print the machine-readable JSON payload.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads. Results do not depend on this.
    #[arg(long, global = true, env = "CELLCODE_WORKERS")]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Built-in cellulations.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Code construction and analysis.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Decoding simulations.
    #[command(subcommand)]
    Decode(DecodeCmd),
    /// Enumeration of small cellulations.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Planar codes.
    #[command(subcommand)]
    Planar(PlanarCmd),
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List,
    Show { name: String },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CosetBudget {
    /// Coset vectors examined per distance search.
    #[arg(long = "coset-budget", default_value_t = DEFAULT_COSET_BUDGET)]
    pub coset_budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum CodeCmd {
    /// `[[n,k,d_x,d_z]]` plus relation and commutation checks.
    Params {
        /// Catalog name, `planar_two_holes`, or a path to cellulation JSON.
        input: String,
        #[command(flatten)]
        budget: CosetBudget,
    },
    /// Stabilizer generators as Pauli strings.
    Stabilizers {
        input: String,
        #[command(flatten)]
        budget: CosetBudget,
    },
    /// Two-qubit reduced density matrix ranks.
    Invariants {
        input: String,
        /// Use the dense density-matrix route (at most 14 qubits).
        #[arg(long)]
        dense: bool,
        #[command(flatten)]
        budget: CosetBudget,
    },
    /// Try to certify that two codes are inequivalent.
    Compare {
        a: String,
        b: String,
        #[command(flatten)]
        budget: CosetBudget,
    },
}

#[derive(Subcommand, Debug)]
pub enum DecodeCmd {
    /// Monte Carlo failure rates as CSV.
    Sweep {
        input: String,
        /// Comma-separated X error probabilities.
        #[arg(long = "p", value_delimiter = ',', required = true)]
        p: Vec<f64>,
        /// Comma-separated Z error probabilities, one per `--p` value.
        /// Defaults to the `--p` values.
        #[arg(long = "pz", value_delimiter = ',')]
        pz: Option<Vec<f64>>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidate corrections per syndrome for codes too large for a
        /// syndrome table.
        #[arg(long = "decoder-budget", default_value_t = cellcode::decoder::DEFAULT_SEARCH_BUDGET)]
        decoder_budget: u64,
        #[command(flatten)]
        budget: CosetBudget,
    },
    /// Decode every error up to a given weight.
    Exhaustive {
        input: String,
        #[arg(long)]
        weight: usize,
        #[arg(long = "decoder-budget", default_value_t = cellcode::decoder::DEFAULT_SEARCH_BUDGET)]
        decoder_budget: u64,
        #[command(flatten)]
        budget: CosetBudget,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ClassBudget {
    /// Maximum classes held in one enumeration level.
    #[arg(long = "class-budget", default_value_t = DEFAULT_CLASS_BUDGET)]
    pub class_budget: usize,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    /// Enumerate cellulations with a given number of edges.
    Census {
        #[arg(long)]
        edges: usize,
        /// rp2, sphere, torus or klein.
        #[arg(long, default_value = "rp2")]
        surface: String,
        #[arg(long = "min-systole", default_value_t = 3)]
        min_systole: usize,
        #[arg(long = "min-dual-systole", default_value_t = 3)]
        min_dual_systole: usize,
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long)]
        bigons: Option<usize>,
        #[arg(long = "valence-two")]
        valence_two: Option<usize>,
        /// Skip the class counts and list survivors only. Much faster on the
        /// last level.
        #[arg(long = "survivors-only")]
        survivors_only: bool,
        #[command(flatten)]
        budget: ClassBudget,
    },
    /// Distance-3 census of the projective plane at 5 and 7 edges.
    VerifyPaper {
        /// Also run the 9-edge census (minutes, about a gigabyte).
        #[arg(long = "include-nine")]
        include_nine: bool,
        #[command(flatten)]
        budget: ClassBudget,
    },
    /// Search for the two nine-edge cellulations of the catalog.
    Reconstruct {
        #[command(flatten)]
        budget: ClassBudget,
    },
}

#[derive(Subcommand, Debug)]
pub enum PlanarCmd {
    /// Remove one face and one vertex.
    Puncture {
        input: String,
        #[arg(long)]
        face: usize,
        #[arg(long)]
        vertex: usize,
    },
    /// Code of a square lattice with holes.
    Holes {
        /// Lattice JSON, inline or as a file path.
        #[arg(long)]
        spec: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli.command) {
        Ok(result) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&result.payload).expect("JSON values serialize"));
            } else {
                print!("{}", result.summary);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
