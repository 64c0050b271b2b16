use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use magbrauer_core::cohom::Budget;
use magbrauer_core::MagError;

mod cache;
mod commands;

use cache::Cache;
use commands::{Ctx, Report};

#[derive(Parser)]
#[command(name = "magbrauer", version, about = "Magnetic equivariant graded Brauer groups of finite groups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Cache directory [default: $MAGBRAUER_CACHE, then .magbrauer-cache/]
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Largest dense coboundary matrix, in cells
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads for element enumeration
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Group and grading, given positionally or as flags.
#[derive(Args, Clone)]
pub struct GroupArgs {
    /// Group spec, e.g. cyclic:4 or product(cyclic:2, cyclic:2)
    #[arg(value_name = "GROUP")]
    group_pos: Option<String>,
    /// Grading spec: trivial, mod2 (alias id), proj2 or values:[0,1,...]
    #[arg(value_name = "PHI")]
    phi_pos: Option<String>,
    #[arg(long, conflicts_with = "group_pos")]
    group: Option<String>,
    #[arg(long, conflicts_with = "phi_pos")]
    phi: Option<String>,
}

impl GroupArgs {
    pub fn group(&self) -> Result<&str, MagError> {
        self.group
            .as_deref()
            .or(self.group_pos.as_deref())
            .ok_or_else(|| MagError::Parse { pos: 0, msg: "missing group spec".into() })
    }

    pub fn phi(&self) -> &str {
        self.phi.as_deref().or(self.phi_pos.as_deref()).unwrap_or("trivial")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Magnetic equivariant graded Brauer group
    Grbr(GroupArgs),
    /// Subgroup with a = 0 (or a = 0 and psi = 0 with --double)
    GrbrPrime {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        double: bool,
    },
    /// Graded Brauer group of a finite group over R or C
    Riehm {
        #[arg(value_name = "GROUP")]
        group_pos: Option<String>,
        #[arg(long, conflicts_with = "group_pos")]
        group: Option<String>,
        #[arg(long, default_value = "R")]
        field: String,
    },
    /// H^n(G, M) for a coefficient model M
    Cohomology {
        #[command(flatten)]
        g: GroupArgs,
        /// Z, Zt, Z/m, Z/mt, Q/Z or Q/Zt
        #[arg(value_name = "MODEL")]
        model_pos: Option<String>,
        #[arg(value_name = "DEGREE")]
        degree_pos: Option<usize>,
        #[arg(long, conflicts_with = "model_pos")]
        model: Option<String>,
        #[arg(long, conflicts_with = "degree_pos")]
        degree: Option<usize>,
    },
    /// Tenfold class of a real graded division algebra given as JSON
    Tenfold {
        file: PathBuf,
        #[arg(long)]
        assume_division: bool,
    },
    /// Brauer-Wall class of C^{p,q} in Z/8
    CliffordClass { p: usize, q: usize },
    /// Altland-Zirnbauer class from symmetry data
    Az(AzArgs),
    /// Magnetic representation tools
    Rep {
        #[command(subcommand)]
        action: RepAction,
    },
    /// Whether the square of the grading class is trivial
    Periodicity(GroupArgs),
    /// Inspect or clear the cohomology cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args)]
pub struct AzArgs {
    /// Square of time reversal: +1, -1 or 0 when absent
    #[arg(long, allow_hyphen_values = true)]
    t: Option<i8>,
    /// Square of particle-hole: +1, -1 or 0 when absent
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i8>,
    /// Chiral symmetry present (1) or absent (0)
    #[arg(long)]
    s: Option<u8>,
    /// Hamiltonian as a JSON matrix
    #[arg(long, conflicts_with_all = ["t", "c", "s"])]
    hamiltonian: Option<PathBuf>,
    /// Unitary part of time reversal
    #[arg(long, requires = "hamiltonian")]
    ut: Option<PathBuf>,
    /// Unitary part of particle-hole
    #[arg(long, requires = "hamiltonian")]
    uc: Option<PathBuf>,
    /// Chiral unitary
    #[arg(long, requires = "hamiltonian")]
    us: Option<PathBuf>,
    #[arg(long, default_value_t = magbrauer_core::gradalg::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
pub struct RepArgs {
    /// Representation JSON file
    rep: PathBuf,
    #[arg(long)]
    group: String,
    #[arg(long, default_value = "trivial")]
    phi: String,
}

#[derive(Subcommand)]
pub enum RepAction {
    /// Check the twisted homomorphism identity
    Verify(RepArgs),
    /// Scalar 2-cocycle of a projective representation
    Cocycle(RepArgs),
    /// Lift a projective representation to a strict one when its class vanishes
    Trivialize(RepArgs),
    /// Equivariant endomorphisms as a real vector space
    Commutant(RepArgs),
    /// Wigner or Dyson type of the commutant
    Dyson(RepArgs),
}

#[derive(Subcommand)]
enum CacheAction {
    Inspect,
    Clear,
}

fn exit_code(e: &MagError) -> u8 {
    match e {
        MagError::Parse { .. } => 2,
        MagError::ResourceLimit { .. } => 3,
        _ => 4,
    }
}

fn run(cli: Cli) -> Result<Report, MagError> {
    let budget = match cli.budget {
        Some(cells) => Budget {
            max_dense_cells: cells,
            max_sparse_entries: cells.saturating_mul(20),
        },
        None => Budget::default(),
    };
    let ctx = Ctx {
        cache: Cache::resolve(cli.cache_dir),
        budget,
        jobs: cli.jobs.max(1),
    };
    match cli.cmd {
        Command::Grbr(g) => commands::grbr(&ctx, &g, commands::Variant::Full),
        Command::GrbrPrime { g, double } => {
            let v = if double { commands::Variant::DoublePrime } else { commands::Variant::Prime };
            commands::grbr(&ctx, &g, v)
        }
        Command::Riehm { group_pos, group, field } => {
            let g = group.or(group_pos).ok_or_else(|| MagError::Parse { pos: 0, msg: "missing group spec".into() })?;
            commands::riehm(&ctx, &g, &field)
        }
        Command::Cohomology {
            g,
            model_pos,
            degree_pos,
            model,
            degree,
        } => {
            let model = model.or(model_pos).ok_or_else(|| MagError::Parse { pos: 0, msg: "missing coefficient model".into() })?;
            let degree = degree.or(degree_pos).unwrap_or(2);
            commands::cohomology(&ctx, &g, &model, degree)
        }
        Command::Tenfold { file, assume_division } => commands::tenfold(&file, assume_division),
        Command::CliffordClass { p, q } => Ok(commands::clifford_class(p, q)),
        Command::Az(a) => commands::az(&a),
        Command::Rep { action } => commands::rep(&ctx, action),
        Command::Periodicity(g) => commands::periodicity(&ctx, &g),
        Command::Cache { action } => match action {
            CacheAction::Inspect => Ok(commands::cache_inspect(&ctx)),
            CacheAction::Clear => commands::cache_clear(&ctx),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(r) => {
            match format {
                Format::Text => print!("{}", r.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
