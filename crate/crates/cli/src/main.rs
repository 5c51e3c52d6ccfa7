use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ruledsym::mesh::parse_range;
use ruledsym_cli::{default_mesh_spec, diagnostic, run, Input, MeshRequest, RunConfig, RunMode};

/// Exact symmetry detection for rational ruled surfaces.
#[derive(Parser)]
#[command(name = "ruledsym", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetries of a surface p(t) + s q(t) given as JSON.
    Solve(SolveArgs),
    /// Symmetries of an implicit ruled surface F(x, y, z) = 0.
    Implicit(ImplicitArgs),
    /// Lists the built-in reference surfaces.
    Corpus,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    All,
    Involutions,
    Conical,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "surface", "corpus"])))]
struct SolveArgs {
    #[arg(long, value_enum, default_value = "all")]
    mode: ModeArg,
    /// Surface JSON file, or - for stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Surface JSON given inline.
    #[arg(long)]
    surface: Option<String>,
    /// Name of a built-in surface.
    #[arg(long)]
    corpus: Option<String>,
    #[command(flatten)]
    common: Common,
    /// Write a CSV grid of surface points to this file.
    #[arg(long, value_name = "FILE")]
    emit_mesh: Option<PathBuf>,
    /// t range as a,b.
    #[arg(long, allow_hyphen_values = true, requires = "emit_mesh")]
    t_range: Option<String>,
    /// s range as a,b.
    #[arg(long, allow_hyphen_values = true, requires = "emit_mesh")]
    s_range: Option<String>,
    /// Sample counts as T,S.
    #[arg(long, requires = "emit_mesh")]
    samples: Option<String>,
    /// Print the reparametrization systems to stderr.
    #[arg(long)]
    dump_system: bool,
}

#[derive(Args)]
struct ImplicitArgs {
    /// Polynomial in x, y, z.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Confirms that the polynomial is irreducible; required.
    #[arg(long)]
    assume_irreducible: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Decimal precision of mesh coordinates, in bits.
    #[arg(long, default_value_t = 64)]
    precision_bits: u32,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_samples(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once([',', 'x']).ok_or("samples must be T,S")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad sample count '{x}': {e}"));
    Ok((p(a)?, p(b)?))
}

fn mesh_request(a: &SolveArgs) -> Result<Option<MeshRequest>, ruledsym::Error> {
    let Some(path) = &a.emit_mesh else { return Ok(None) };
    let mut spec = default_mesh_spec();
    if let Some(r) = &a.t_range {
        spec.t_range = parse_range(r)?;
    }
    if let Some(r) = &a.s_range {
        spec.s_range = parse_range(r)?;
    }
    if let Some(s) = &a.samples {
        (spec.t_samples, spec.s_samples) = parse_samples(s).map_err(ruledsym::Error::Parse)?;
    }
    Ok(Some(MeshRequest { path: path.clone(), spec }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Command::Corpus => {
            for e in ruledsym::corpus::ALL {
                println!("{}", e.name);
            }
            return ExitCode::SUCCESS;
        }
        Command::Implicit(a) => {
            let mut c = RunConfig::new(RunMode::Implicit, Input::Poly(a.poly));
            c.assume_irreducible = a.assume_irreducible;
            c.precision_bits = a.common.precision_bits;
            c.output = a.common.output;
            c
        }
        Command::Solve(a) => {
            let mode = match a.mode {
                ModeArg::All => RunMode::All,
                ModeArg::Involutions => RunMode::Involutions,
                ModeArg::Conical => RunMode::Conical,
            };
            let input = match (&a.input, &a.surface, &a.corpus) {
                (Some(p), _, _) => Input::File(p.clone()),
                (_, Some(s), _) => Input::Inline(s.clone()),
                (_, _, Some(n)) => Input::Corpus(n.clone()),
                _ => unreachable!("clap enforces one source"),
            };
            let mesh = match mesh_request(&a) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("{}", diagnostic(&e));
                    return ExitCode::from(e.exit_code() as u8);
                }
            };
            let mut c = RunConfig::new(mode, input);
            c.precision_bits = a.common.precision_bits;
            c.output = a.common.output;
            c.mesh = mesh;
            c.dump_system = a.dump_system;
            c
        }
    };
    let code = run(&cfg, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
