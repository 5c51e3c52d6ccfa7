//! Browser bindings: analyse a surface, analyse an implicit equation, sample a mesh.
//! Every export returns a JSON string; failures come back as `{"error": {...}}`.

use ruledsym::algebra::field::to_f64;
use ruledsym::implicit::{implicit_pipeline, ImplicitSurface};
use ruledsym::isometry::{full_pipeline, Mode};
use ruledsym::mesh::{grid, parse_range, sample, MeshSpec};
use ruledsym::surface::RuledSurface;
use ruledsym::{corpus, Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn wrap(r: Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({"error": {"code": e.code(), "message": e.to_string()}}).to_string(),
    }
}

/// `source` is either a corpus name or a surface JSON document.
fn surface(source: &str) -> Result<RuledSurface> {
    match corpus::by_name(source.trim()) {
        Some(e) => Ok(e.surface()),
        None => RuledSurface::from_json_str(source, "surface"),
    }
}

/// Names and JSON documents of the built-in surfaces.
#[wasm_bindgen]
pub fn corpus_surfaces() -> String {
    let v: Vec<Value> = corpus::ALL
        .iter()
        .map(|e| json!({"name": e.name, "surface": serde_json::to_value(e.surface().to_json()).unwrap()}))
        .collect();
    Value::Array(v).to_string()
}

#[wasm_bindgen]
pub fn analyze_surface(source: &str, mode: &str) -> String {
    wrap((|| {
        let mode = match mode {
            "all" => Mode::All,
            "involutions" => Mode::Involutions,
            "conical" => Mode::Conical,
            m => return Err(Error::InvalidInput(format!("unknown mode '{m}'"))),
        };
        Ok(full_pipeline(&surface(source)?, mode)?.to_json())
    })())
}

#[wasm_bindgen]
pub fn analyze_implicit(poly: &str) -> String {
    wrap((|| Ok(implicit_pipeline(&ImplicitSurface::parse(poly)?, true)?.to_json()))())
}

/// Grid of points as `{"t": n, "s": m, "points": [[x, y, z] | null, ...]}` in row-major
/// t order; pole columns are null so the grid stays rectangular.
#[wasm_bindgen]
pub fn sample_mesh(source: &str, t_range: &str, s_range: &str, t_samples: usize, s_samples: usize) -> String {
    wrap((|| {
        let s = surface(source)?;
        let spec = MeshSpec { t_range: parse_range(t_range)?, s_range: parse_range(s_range)?, t_samples, s_samples };
        let m = sample(&s, &spec)?;
        let mut pts = vec![];
        let mut rows = m.rows.iter().peekable();
        for t in &grid(&spec.t_range, t_samples) {
            for _ in 0..s_samples {
                match rows.peek() {
                    Some(r) if &r.t == t => {
                        pts.push(json!(r.x.iter().map(to_f64).collect::<Vec<_>>()));
                        rows.next();
                    }
                    _ => pts.push(Value::Null),
                }
            }
        }
        Ok(json!({"t": t_samples, "s": s_samples, "points": pts}))
    })())
}
