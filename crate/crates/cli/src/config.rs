//! Command-line surface and the experiment record derived from it.

use std::path::PathBuf;

use atomlab_core::cylindric::TermInequality;
use atomlab_core::graphs::DEFAULT_CHI_LIMIT;
use atomlab_core::Variant;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "atomlab", version, about = "Atom structures, blurs, cylindric bases and representability games")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Replay the certificate even on a fresh result.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Result cache directory.
    #[arg(long, env = "ATOMLAB_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the cache even if a directory is configured.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Largest graph coloured exactly.
    #[arg(long, default_value_t = DEFAULT_CHI_LIMIT, global = true)]
    pub chi_limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Build an atom structure and optionally check the axioms.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Blur conditions.
    #[command(subcommand)]
    Blur(BlurCmd),
    /// Basic matrices and amalgamation.
    #[command(subcommand)]
    Basis(BasisCmd),
    /// Term inequalities and identities in full cylindric set algebras.
    #[command(subcommand)]
    Term(TermCmd),
    /// Bounded representability games.
    #[command(subcommand)]
    Game(GameCmd),
    /// Graph certificates, random graphs and Ramsey checks.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Symbolic set algebras.
    #[command(subcommand)]
    Sym(SymCmd),
    /// Search for an embedding of one atom structure's algebra into another's.
    Embed(EmbedArgs),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Args)]
pub struct AlgebraOpts {
    /// Check the relation algebra axioms.
    #[arg(long)]
    pub check: bool,
    /// Include the structure in the algebra text format.
    #[arg(long)]
    pub emit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraCmd {
    /// All triangles allowed except monochromatic ones.
    Ek {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        opts: AlgebraOpts,
    },
    /// Two-coloured Monk structure.
    Bicolour {
        #[arg(long)]
        n0: usize,
        #[arg(long)]
        n1: usize,
        #[command(flatten)]
        opts: AlgebraOpts,
    },
    /// Any spec string (`ek:3`, `file:x.alg`, `blowup:ek:2:n=3:l=2:depth=3`, ...).
    Spec {
        alg: String,
        #[command(flatten)]
        opts: AlgebraOpts,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum BlurCmd {
    /// Check (J4) and (J5) for the blur family J_l over k atoms.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        /// Base structure (default `ek:<k>`).
        #[arg(long)]
        alg: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum BasisCmd {
    /// Enumerate basic matrices.
    Enum {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        dim: usize,
        /// List every matrix, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Check that the basic matrices form an amalgamation class.
    Amalgamation {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum TermCmd {
    /// Check a term inequality, exhaustively or on seeded samples.
    Check {
        #[arg(long)]
        which: TermInequality,
        #[arg(long)]
        base: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Cylindric identities over every element.
    Identities {
        #[arg(long)]
        base: usize,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Args)]
pub struct GameArgs {
    #[arg(long)]
    pub alg: String,
    #[arg(long, default_value = "triangle")]
    pub variant: Variant,
    #[arg(long)]
    pub rounds: usize,
    /// Node budget.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Opening edge label (default: ∀ chooses).
    #[arg(long)]
    pub start: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum GameCmd {
    /// Solve the game and emit the winner's strategy.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        /// Write the strategy certificate here.
        #[arg(long)]
        cert_out: Option<PathBuf>,
        /// Write ∀'s opening network as DOT here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Replay a strategy certificate.
    Verify {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum GraphCmd {
    /// Sample a random graph with large chromatic number and girth.
    Erdos {
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        girth: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1000)]
        attempts: u64,
        /// Edge probability (default `max_n^-0.8`).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Certify girth, chromatic and independence numbers of a graph file.
    Cert {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Look for 2-colourings of K_m without a monochromatic triangle.
    Ramsey {
        #[arg(long, default_value_t = 6)]
        m: usize,
        /// Enumerate every colouring.
        #[arg(long)]
        exhaustive: bool,
        /// Seeded random colourings when not exhaustive.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Demo {
    Product,
    Rx,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum SymCmd {
    /// Substitution is additive but not completely additive.
    Additivity {
        #[arg(long, value_enum)]
        demo: Demo,
        /// Size of the dyadic test family.
        #[arg(long, default_value_t = 64)]
        family: usize,
        /// Arity of the product sets.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of atoms sampled by the rx demo.
        #[arg(long, default_value_t = 8)]
        sample_k: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Every subset of the target's atoms.
    Cm,
    /// Approximation of the term algebra of a blow-up.
    TermApprox,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub src: String,
    #[arg(long)]
    pub dst: String,
    #[arg(long, value_enum, default_value_t = Family::Cm)]
    pub family: Family,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub chi_limit: usize,
}

/// Everything that determines a result. Runtime knobs (threads, format,
/// timing) are deliberately absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub seed: u64,
    pub limits: Limits,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        ExperimentConfig {
            command: cli.command.clone(),
            seed: cli.global.seed,
            limits: Limits { chi_limit: cli.global.chi_limit },
            cache_dir: if cli.global.no_cache { None } else { cli.global.cache_dir.clone() },
        }
    }

    /// The echo embedded in reports; the cache directory is left out so
    /// reports do not depend on where they were cached.
    pub fn params(&self) -> serde_json::Value {
        serde_json::json!({
            "command": self.command,
            "seed": self.seed,
            "limits": self.limits,
        })
    }

    pub fn experiment(&self) -> &'static str {
        use Command::*;
        match &self.command {
            Algebra(AlgebraCmd::Ek { .. }) => "algebra ek",
            Algebra(AlgebraCmd::Bicolour { .. }) => "algebra bicolour",
            Algebra(AlgebraCmd::Spec { .. }) => "algebra spec",
            Blur(BlurCmd::Check { .. }) => "blur check",
            Basis(BasisCmd::Enum { .. }) => "basis enum",
            Basis(BasisCmd::Amalgamation { .. }) => "basis amalgamation",
            Term(TermCmd::Check { .. }) => "term check",
            Term(TermCmd::Identities { .. }) => "term identities",
            Game(GameCmd::Solve { .. }) => "game solve",
            Game(GameCmd::Verify { .. }) => "game verify",
            Graph(GraphCmd::Erdos { .. }) => "graph erdos",
            Graph(GraphCmd::Cert { .. }) => "graph cert",
            Graph(GraphCmd::Ramsey { .. }) => "graph ramsey",
            Sym(SymCmd::Additivity { .. }) => "sym additivity",
            Embed(_) => "embed",
        }
    }

    /// Files whose contents the result depends on.
    pub fn input_files(&self) -> Vec<PathBuf> {
        let mut out = Vec::new();
        let mut spec = |s: &str| {
            let mut rest = s;
            // blowup specs nest a base spec
            while let Some(r) = rest.strip_prefix("blowup:") {
                rest = r;
            }
            for prefix in ["file:", "graphmonk:"] {
                if let Some(p) = rest.strip_prefix(prefix) {
                    let p = p.split(":n=").next().unwrap_or(p);
                    out.push(PathBuf::from(p));
                }
            }
        };
        use Command::*;
        match &self.command {
            Algebra(AlgebraCmd::Spec { alg, .. }) => spec(alg),
            Blur(BlurCmd::Check { alg: Some(a), .. }) => spec(a),
            Basis(BasisCmd::Enum { alg, .. } | BasisCmd::Amalgamation { alg, .. }) => spec(alg),
            Game(GameCmd::Solve { game, .. }) => spec(&game.alg),
            Game(GameCmd::Verify { game, cert }) => {
                spec(&game.alg);
                out.push(cert.clone());
            }
            Embed(e) => {
                spec(&e.src);
                spec(&e.dst);
            }
            Graph(GraphCmd::Cert { file, .. }) => out.push(file.clone()),
            _ => {}
        }
        out
    }
}
