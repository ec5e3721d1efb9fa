//! `gpdcalc`: load groupoids, modules and crossed modules from JSON, run
//! the constructions, and replay the built-in scenarios.
//!
//! Exit codes: 0 success, 1 a checked assertion failed, 2 bad input,
//! 3 a bounded step ran out of budget.

mod input;
mod ops;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gpdcalc::fpgroup::RewriteBound;

use report::Report;

#[derive(Debug, Parser)]
#[command(name = "gpdcalc", version, about = "Groupoids, modules and crossed modules over groupoids")]
struct Cli {
    /// Budget for rewriting and coset enumeration.
    #[arg(long, global = true, default_value_t = 10_000)]
    bound: usize,
    /// Write the canonical JSON result here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// What to print on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of a structure; exits 1 on any violation.
    Validate {
        #[arg(long, value_enum)]
        kind: ops::Kind,
        file: PathBuf,
    },
    /// Pull a groupoid back along an object map.
    Pullback {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        gpd: PathBuf,
    },
    /// Induce a module along a groupoid morphism.
    InduceModule {
        #[arg(long)]
        morphism: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Induce a crossed module along a groupoid morphism.
    InduceXmod {
        #[arg(long)]
        morphism: PathBuf,
        #[arg(long)]
        xmod: PathBuf,
        /// Also compute the finite table.
        #[arg(long)]
        realize: bool,
    },
    /// Free module on generators placed at objects.
    FreeModule {
        #[arg(long)]
        gpd: PathBuf,
        /// `name=object`, repeatable.
        #[arg(long = "basis", value_parser = input::pair)]
        basis: Vec<(String, String)>,
    },
    /// Free crossed module on vertex arrows.
    FreeXmod {
        #[arg(long)]
        gpd: PathBuf,
        /// `name=arrow`, repeatable.
        #[arg(long = "relator", value_parser = input::pair)]
        relators: Vec<(String, String)>,
        #[arg(long)]
        realize: bool,
    },
    /// The universal groupoid of an object map applied to a groupoid.
    UniversalMorphism {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        gpd: PathBuf,
        /// List reduced words up to this length.
        #[arg(long, default_value_t = 0)]
        words: usize,
    },
    /// Quotient by the normal closure of vertex arrows.
    Quotient {
        #[arg(long)]
        gpd: PathBuf,
        /// Arrow id, repeatable.
        #[arg(long = "arrow")]
        arrows: Vec<String>,
    },
    /// Colimit of a connected diagram.
    Colim {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        realize: bool,
    },
    /// Unique-factorization check for a map over an object map; the map
    /// defaults to the universal morphism.
    CheckCocartesian {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        gpd: PathBuf,
        #[arg(long, requires = "psi")]
        target: Option<PathBuf>,
        #[arg(long, requires = "target")]
        psi: Option<PathBuf>,
        /// Extra test groupoids over the codomain objects.
        #[arg(long)]
        against: Vec<PathBuf>,
    },
    /// Retract a connected groupoid, and optionally a crossed module over
    /// it, onto a vertex group.
    Retract {
        #[arg(long)]
        gpd: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        xmod: Option<PathBuf>,
    },
    /// Crossed square completing two crossed modules over one group.
    DComplete {
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        nu: PathBuf,
    },
    /// Nonabelian tensor product of two crossed modules over one group.
    Tensor {
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        nu: PathBuf,
        #[arg(long)]
        realize: bool,
    },
    /// Run a named scenario; lists them when no name is given.
    Scenario { name: Option<String> },
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let bound = RewriteBound::uniform(cli.bound);
    match &cli.command {
        Command::Validate { kind, file } => ops::validate(*kind, file),
        Command::Pullback { map, gpd } => ops::pullback(map, gpd),
        Command::InduceModule { morphism, module } => ops::induce_module(morphism, module),
        Command::InduceXmod { morphism, xmod, realize } => ops::induce_xmod(morphism, xmod, *realize, &bound),
        Command::FreeModule { gpd, basis } => ops::free_module_cmd(gpd, basis),
        Command::FreeXmod { gpd, relators, realize } => ops::free_xmod_cmd(gpd, relators, *realize, &bound),
        Command::UniversalMorphism { map, gpd, words } => ops::universal(map, gpd, *words),
        Command::Quotient { gpd, arrows } => ops::quotient(gpd, arrows),
        Command::Colim { diagram, realize } => ops::colim(diagram, *realize, &bound),
        Command::CheckCocartesian { map, gpd, target, psi, against } => {
            ops::check_cocartesian_cmd(map, gpd, target.as_deref(), psi.as_deref(), against, &bound)
        }
        Command::Retract { gpd, object, xmod } => ops::retract(gpd, object, xmod.as_deref()),
        Command::DComplete { mu, nu } => ops::d_complete(mu, nu),
        Command::Tensor { mu, nu, realize } => ops::tensor(mu, nu, *realize, &bound),
        Command::Scenario { name } => ops::scenario(name.as_deref(), &bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(report::error_code(&e));
        }
    };
    let canonical = serde_json::to_string_pretty(&report.json).expect("values serialize") + "\n";
    match cli.format {
        Format::Text => print!("{}", report.text),
        Format::Json => print!("{canonical}"),
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &canonical) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(report::INPUT_ERROR);
        }
    }
    ExitCode::from(report.status.code())
}
