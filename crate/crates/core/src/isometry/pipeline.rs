use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use super::classify::{classify, Classification, FixedLocus, Kind};
use super::recover::{mat_mul, mat_vec, recover_c, solve_b, solve_q, verify_symmetry, Mat3, Vec3N};
use crate::algebra::numfield::FieldMerger;
use crate::algebra::{Field, NfElem, NumberField, NumberJson, RatFunc};
use crate::error::{Error, Result};
use crate::phi::{solve_involutions, solve_phi, PhiMode, PhiSolution};
use crate::surface::RuledSurface;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    All,
    Involutions,
    /// Cone with the vertex moved to the origin, so b and c vanish there.
    Conical,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::All => "all",
            Mode::Involutions => "involutions",
            Mode::Conical => "conical",
        }
    }
}

/// f(x) = Qx + b together with phi(t, s) = (psi(t), k (gamma t + delta)^n s + c(t)).
#[derive(Clone, Debug)]
pub struct Symmetry {
    pub phi: PhiSolution,
    pub q: Mat3,
    pub b: Vec3N,
    pub c: RatFunc<NfElem>,
    pub class: Classification,
}

impl Symmetry {
    pub fn kind(&self) -> Kind {
        self.class.kind
    }
    pub fn field(&self) -> Option<Arc<NumberField>> {
        self.phi.field.clone()
    }
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub surface: String,
    pub mode: String,
    pub symmetries: Vec<Symmetry>,
    pub notes: Vec<String>,
}

impl SymmetryReport {
    /// Counts by kind, identity included.
    pub fn counts(&self) -> BTreeMap<Kind, usize> {
        let mut m = BTreeMap::new();
        for s in &self.symmetries {
            *m.entry(s.kind()).or_insert(0) += 1;
        }
        m
    }
    pub fn count(&self, k: Kind) -> usize {
        self.counts().get(&k).copied().unwrap_or(0)
    }
    pub fn to_json(&self) -> Value {
        let counts: serde_json::Map<String, Value> =
            Kind::ALL.iter().map(|k| (k.name().to_string(), json!(self.count(*k)))).collect();
        json!({
            "surface": self.surface,
            "mode": self.mode,
            "count": self.symmetries.len(),
            "counts": counts,
            "isometries": self.symmetries.iter().map(symmetry_json).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

pub fn number_json(e: &NfElem) -> Value {
    let n = match e.as_rational() {
        Some(r) => NumberJson::Rat { rat: crate::algebra::field::rat_to_string(&r) },
        None => e.to_algebraic().to_json(),
    };
    serde_json::to_value(n).unwrap()
}

fn vec_json(v: &Vec3N) -> Value {
    Value::Array(v.iter().map(number_json).collect())
}

pub fn locus_json(l: &FixedLocus) -> Value {
    match l {
        FixedLocus::AllSpace => json!({"type": "all-space"}),
        FixedLocus::Plane { normal, offset } => json!({"type": "plane", "normal": vec_json(normal), "offset": number_json(offset)}),
        FixedLocus::Line { point, direction } => json!({"type": "line", "point": vec_json(point), "direction": vec_json(direction)}),
        FixedLocus::Point(p) => json!({"type": "point", "point": vec_json(p)}),
    }
}

fn symmetry_json(s: &Symmetry) -> Value {
    let p = &s.phi;
    json!({
        "kind": s.kind().name(),
        "Q": s.q.iter().map(vec_json).collect::<Vec<_>>(),
        "b": vec_json(&s.b),
        "fixed_locus": locus_json(&s.class.locus),
        "angle": s.class.angle.as_ref().map(|(c, si)| json!({"cos": number_json(c), "sin": number_json(si)})),
        "mobius": {
            "alpha": number_json(&p.alpha),
            "beta": number_json(&p.beta),
            "gamma": number_json(&p.gamma),
            "delta": number_json(&p.delta),
        },
        "k": number_json(&p.k),
        "c": s.c.to_string_var("t"),
    })
}

/// Recovers every isometry attached to one reparametrization.
pub fn recover(s: &RuledSurface, phi: &PhiSolution) -> Result<Vec<Symmetry>> {
    let mut out = vec![];
    for q in solve_q(s, phi) {
        let Some(b) = solve_b(s, phi, &q) else { continue };
        let Some(c) = recover_c(s, phi, &q, &b) else { continue };
        if !verify_symmetry(s, phi, &q, &b, &c) {
            continue;
        }
        let class = classify(&q, &b)?;
        out.push(Symmetry { phi: phi.clone(), q, b, c, class });
    }
    Ok(out)
}

/// All symmetries of a ruled surface in the requested mode.
pub fn full_pipeline(s: &RuledSurface, mode: Mode) -> Result<SymmetryReport> {
    if s.is_cylindrical() {
        return Err(Error::CylindricalInput);
    }
    let mut notes = vec![];
    let phis = match mode {
        Mode::All => solve_phi(&s.q, s.n, PhiMode::All)?,
        Mode::Involutions => solve_involutions(&s.q, s.n)?,
        Mode::Conical => {
            let Some(v) = s.vertex() else { return Err(Error::NotConical) };
            if !s.p_is_zero() {
                notes.push(format!("vertex at ({}, {}, {})", v[0], v[1], v[2]));
            }
            solve_phi(&s.q, s.n, PhiMode::All)?
        }
    };
    let mut symmetries = vec![];
    for phi in &phis {
        symmetries.extend(recover(s, phi)?);
    }
    Ok(SymmetryReport { surface: s.name.clone(), mode: mode.name().to_string(), symmetries, notes })
}

/// Q and b of several isometries expressed over one common field.
pub fn merge_fields(syms: &[(&Mat3, &Vec3N)]) -> Vec<(Mat3, Vec3N)> {
    let mut m = FieldMerger::new();
    for (q, b) in syms {
        for e in q.iter().flatten().chain(b.iter()) {
            if let Some(f) = e.field() {
                m.include(f);
            }
        }
    }
    syms.iter()
        .map(|(q, b)| {
            let q2: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| m.map(&q[i][j])));
            let b2: Vec3N = std::array::from_fn(|i| m.map(&b[i]));
            (q2, b2)
        })
        .collect()
}

/// (Q_f Q_g, Q_f b_g + b_f): the isometry f o g.
pub fn compose(f: &(Mat3, Vec3N), g: &(Mat3, Vec3N)) -> (Mat3, Vec3N) {
    let q = mat_mul(&f.0, &g.0);
    let qb = mat_vec(&f.0, &g.1);
    let b = std::array::from_fn(|i| qb[i].add_ref(&f.1[i]));
    (q, b)
}

pub fn is_identity(f: &(Mat3, Vec3N)) -> bool {
    f.0 == super::recover::identity3() && f.1.iter().all(|x| x.is_zero())
}

/// True iff the set is closed under composition.
pub fn group_closed(syms: &[Symmetry]) -> bool {
    let refs: Vec<(&Mat3, &Vec3N)> = syms.iter().map(|s| (&s.q, &s.b)).collect();
    let m = merge_fields(&refs);
    m.iter().all(|f| m.iter().all(|g| {
        let h = compose(f, g);
        m.contains(&h)
    }))
}

/// f o f = identity, checked on the matrices.
pub fn is_involutive(s: &Symmetry) -> bool {
    let f = (s.q.clone(), s.b.clone());
    is_identity(&compose(&f, &f))
}
