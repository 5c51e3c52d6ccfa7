//! Command orchestration shared by the binary and its tests.

use std::io::Write;
use std::path::PathBuf;

use ruledsym::algebra::Rational;
use ruledsym::implicit::{implicit_pipeline, ImplicitSurface};
use ruledsym::isometry::{full_pipeline, Mode};
use ruledsym::mesh::{sample, MeshSpec};
use ruledsym::phi::{build_system, Branch, PhiMode};
use ruledsym::surface::RuledSurface;
use ruledsym::{corpus, Error, Result};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunMode {
    All,
    Involutions,
    Conical,
    Implicit,
}

#[derive(Clone, Debug)]
pub enum Input {
    /// Surface JSON document; "-" reads stdin.
    File(PathBuf),
    /// Surface JSON given on the command line.
    Inline(String),
    /// Built-in reference surface.
    Corpus(String),
    /// Implicit polynomial in x, y, z.
    Poly(String),
}

#[derive(Clone, Debug)]
pub struct MeshRequest {
    pub path: PathBuf,
    pub spec: MeshSpec,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: RunMode,
    pub input: Input,
    pub assume_irreducible: bool,
    /// Binary precision of decimal renderings in the mesh file.
    pub precision_bits: u32,
    pub output: Option<PathBuf>,
    pub mesh: Option<MeshRequest>,
    pub dump_system: bool,
}

impl RunConfig {
    pub fn new(mode: RunMode, input: Input) -> Self {
        RunConfig {
            mode,
            input,
            assume_irreducible: false,
            precision_bits: 64,
            output: None,
            mesh: None,
            dump_system: false,
        }
    }
}

pub fn default_mesh_spec() -> MeshSpec {
    MeshSpec {
        t_range: (Rational::from_integer((-2).into()), Rational::from_integer(2.into())),
        s_range: (Rational::from_integer((-1).into()), Rational::from_integer(1.into())),
        t_samples: 50,
        s_samples: 20,
    }
}

/// Machine-readable error document.
pub fn diagnostic(e: &Error) -> Value {
    json!({"error": {"code": e.code(), "message": e.to_string()}})
}

fn read_surface(input: &Input) -> Result<RuledSurface> {
    match input {
        Input::File(p) => {
            let text = if p.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(p)
            }
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))?;
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "surface".into());
            RuledSurface::from_json_str(&text, &name)
        }
        Input::Inline(s) => RuledSurface::from_json_str(s, "surface"),
        Input::Corpus(n) => corpus::by_name(n)
            .map(|e| e.surface())
            .ok_or_else(|| Error::InvalidInput(format!("unknown corpus surface '{n}'"))),
        Input::Poly(_) => Err(Error::InvalidInput("a polynomial input needs implicit mode".into())),
    }
}

fn system_dump(s: &RuledSurface, mode: RunMode) -> String {
    let pm = if mode == RunMode::Involutions { PhiMode::InvolutionsI } else { PhiMode::All };
    let modes: &[PhiMode] = if pm == PhiMode::All { &[PhiMode::All] } else { &[PhiMode::InvolutionsI, PhiMode::InvolutionsII] };
    let mut out = String::new();
    for &m in modes {
        for b in [Branch::Gamma0, Branch::Gamma1] {
            if let Some(sys) = build_system(&s.q, s.n, b, m) {
                out.push_str(&sys.dump());
            }
        }
    }
    out
}

fn digits(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize
}

fn execute(cfg: &RunConfig, err: &mut dyn Write) -> Result<Value> {
    if cfg.mode == RunMode::Implicit {
        let Input::Poly(p) = &cfg.input else {
            return Err(Error::InvalidInput("implicit mode takes --poly".into()));
        };
        if cfg.mesh.is_some() {
            return Err(Error::InvalidInput("mesh output needs a parametrized surface".into()));
        }
        let surf = ImplicitSurface::parse(p)?;
        return Ok(implicit_pipeline(&surf, cfg.assume_irreducible)?.to_json());
    }
    let s = read_surface(&cfg.input)?;
    let _ = writeln!(err, "note: the parametrization is assumed to be proper");
    if cfg.dump_system {
        let _ = write!(err, "{}", system_dump(&s, cfg.mode));
    }
    let mode = match cfg.mode {
        RunMode::All => Mode::All,
        RunMode::Involutions => Mode::Involutions,
        _ => Mode::Conical,
    };
    let report = full_pipeline(&s, mode)?;
    if let Some(m) = &cfg.mesh {
        let mesh = sample(&s, &m.spec)?;
        std::fs::write(&m.path, mesh.to_csv(digits(cfg.precision_bits)))
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", m.path.display())))?;
        let _ = writeln!(err, "mesh: {} rows, {} pole columns skipped", mesh.rows.len(), mesh.skipped_t.len());
    }
    Ok(report.to_json())
}

/// Runs one command and returns the process exit code. The report goes to
/// `cfg.output` or `out`; diagnostics go to `err`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = execute(cfg, err).and_then(|v| {
        let text = serde_json::to_string_pretty(&v).expect("report serializes") + "\n";
        match &cfg.output {
            Some(p) => std::fs::write(p, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display()))),
            None => out.write_all(text.as_bytes()).map_err(|e| Error::InvalidInput(e.to_string())),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", diagnostic(&e));
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_from_bits() {
        assert_eq!(digits(64), 20);
        assert_eq!(digits(10), 4);
    }

    #[test]
    fn polynomial_needs_implicit_mode() {
        let cfg = RunConfig::new(RunMode::All, Input::Poly("x".into()));
        let (mut o, mut e) = (vec![], vec![]);
        assert_eq!(run(&cfg, &mut o, &mut e), 1);
        assert!(String::from_utf8(e).unwrap().contains("INVALID_INPUT"));
    }
}
