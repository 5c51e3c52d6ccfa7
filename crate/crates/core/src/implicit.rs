//! Symmetries of an implicit surface F = 0 from the conical surface of its highest form.

use serde_json::{json, Value};

use crate::algebra::parse::parse_multipoly;
use crate::algebra::solve::{lift, solve};
use crate::algebra::{rat, Field, MultiPoly, NfElem, Poly, RatFunc, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::isometry::{classify, full_pipeline, identity3, locus_json, number_json, Classification, Kind, Mat3, Mode, Vec3N};
use crate::surface::RuledSurface;

pub const XYZ: [&str; 3] = ["x", "y", "z"];

/// Section values tried for each coordinate plane, in order.
pub const SECTION_VALUES: [i64; 5] = [1, 2, -1, 3, -2];

#[derive(Clone, Debug)]
pub struct ImplicitSurface {
    pub f: MultiPoly<Rational>,
    pub degree: u32,
}

impl ImplicitSurface {
    pub fn new(f: MultiPoly<Rational>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidInput("implicit polynomial is zero".into()));
        }
        if f.nvars() != 3 {
            return Err(Error::InvalidInput("implicit polynomial must be in x, y, z".into()));
        }
        let degree = f.total_degree();
        Ok(ImplicitSurface { f, degree })
    }
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_multipoly(s, &XYZ)?)
    }
    pub fn highest_form(&self) -> MultiPoly<Rational> {
        highest_form(&self.f)
    }
}

/// Degree-N homogeneous part of F.
pub fn highest_form(f: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    f.homogeneous_part(f.total_degree())
}

/// Conical surface s r(t) from the section {v = c} of F_N = 0, provided the section
/// equation is linear in one of the two remaining coordinates.
pub fn parametrize_with_plane(fn_: &MultiPoly<Rational>, v: usize, c: &Rational) -> Option<RuledSurface> {
    let g = fn_.eval_var(v, c);
    if g.is_zero() || g.is_constant() {
        return None;
    }
    let others: Vec<usize> = (0..3).filter(|&w| w != v).collect();
    for (wi, &w) in others.iter().enumerate() {
        let u = others[1 - wi];
        if g.degree_in(w) != 1 {
            continue;
        }
        let cs = g.coeffs_in(w);
        let (a, b) = (cs[1].to_univariate(u)?, cs[0].to_univariate(u).unwrap_or_else(UniPoly::zero));
        if a.is_zero() {
            continue;
        }
        let mut r: [RatFunc<Rational>; 3] = std::array::from_fn(|_| RatFunc::zero());
        r[v] = RatFunc::constant(c.clone());
        r[u] = RatFunc::from_poly(Poly::x());
        r[w] = RatFunc::new(b.neg(), a);
        let zero = || RatFunc::zero();
        let name = format!("section {}={}", XYZ[v], c);
        return RuledSurface::new(&name, [zero(), zero(), zero()], &r).ok();
    }
    None
}

/// Tries the planes x, y, z = c for c in `SECTION_VALUES`; the first solvable section wins.
pub fn parametrize_highest_form(fn_: &MultiPoly<Rational>) -> Option<RuledSurface> {
    for v in 0..3 {
        for c in SECTION_VALUES {
            if let Some(s) = parametrize_with_plane(fn_, v, &rat(c)) {
                if !s.is_cylindrical() {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// F(Q x + b) with b symbolic; variables x, y, z, b1, b2, b3.
fn substitute_affine(f: &MultiPoly<Rational>, q: &Mat3) -> MultiPoly<NfElem> {
    const NV: usize = 6;
    let lin: Vec<MultiPoly<NfElem>> = (0..3)
        .map(|i| {
            let mut l = MultiPoly::var(NV, 3 + i);
            for (j, qij) in q[i].iter().enumerate() {
                l = l.add(&MultiPoly::var(NV, j).scale(qij));
            }
            l
        })
        .collect();
    let maxd = f.total_degree() as usize;
    let pows: Vec<Vec<MultiPoly<NfElem>>> = lin
        .iter()
        .map(|l| {
            let mut v = vec![MultiPoly::one(NV)];
            for _ in 0..maxd {
                let nx = v.last().unwrap().mul(l);
                v.push(nx);
            }
            v
        })
        .collect();
    let mut acc = MultiPoly::zero(NV);
    for (m, c) in f.terms() {
        let t = pows[0][m[0] as usize].mul(&pows[1][m[1] as usize]).mul(&pows[2][m[2] as usize]);
        acc = acc.add(&t.scale(&NfElem::rational(c.clone())));
    }
    acc
}

/// All (b, lambda) with F(Q x + b) = lambda F(x) identically.
pub fn lift_symmetry(f: &MultiPoly<Rational>, q: &Mat3) -> Result<Vec<(Vec3N, NfElem)>> {
    const NV: usize = 4; // b1, b2, b3, lambda
    let sub = substitute_affine(f, q);
    let mut groups: std::collections::BTreeMap<Vec<u32>, MultiPoly<NfElem>> = Default::default();
    for (m, c) in sub.terms() {
        let key = m[..3].to_vec();
        let mut e = vec![0; NV];
        e[..3].copy_from_slice(&m[3..6]);
        let t = MultiPoly::term(e, c.clone());
        let g = groups.entry(key).or_insert_with(|| MultiPoly::zero(NV));
        *g = g.add(&t);
    }
    let lam = MultiPoly::var(NV, 3);
    for (m, c) in f.terms() {
        let t = lam.scale(&NfElem::rational(c.clone())).neg();
        let g = groups.entry(m.clone()).or_insert_with(|| MultiPoly::zero(NV));
        *g = g.add(&t);
    }
    let eqs: Vec<MultiPoly<NfElem>> = groups.into_values().filter(|e| !e.is_zero()).collect();
    let sols = solve(&eqs, &[0, 1, 2, 3])?;
    let mut out = vec![];
    for s in sols {
        let b: Vec3N = std::array::from_fn(|i| s.values[&i].clone());
        out.push((b, s.values[&3].clone()));
    }
    Ok(out)
}

/// Exact check of F(Q x + b) = lambda F(x).
pub fn check_lift(f: &MultiPoly<Rational>, q: &Mat3, b: &Vec3N, lambda: &NfElem) -> bool {
    let mut sub = substitute_affine(f, q);
    for (i, bi) in b.iter().enumerate() {
        sub = sub.eval_var(3 + i, bi);
    }
    let rhs = lift(f).extend_vars(6).scale(lambda);
    sub.sub(&rhs).is_zero()
}

#[derive(Clone, Debug)]
pub struct ImplicitSymmetry {
    pub q: Mat3,
    pub b: Vec3N,
    pub lambda: NfElem,
    pub class: Classification,
    /// Found by the direct Q = -I lift rather than from the cone.
    pub supplementary: bool,
}

#[derive(Clone, Debug)]
pub struct ImplicitReport {
    pub polynomial: String,
    pub highest_form: String,
    pub cone: RuledSurface,
    pub symmetries: Vec<ImplicitSymmetry>,
    pub notes: Vec<String>,
}

impl ImplicitReport {
    pub fn count(&self, k: Kind) -> usize {
        self.symmetries.iter().filter(|s| s.class.kind == k).count()
    }
    pub fn to_json(&self) -> Value {
        let counts: serde_json::Map<String, Value> =
            Kind::ALL.iter().map(|k| (k.name().to_string(), json!(self.count(*k)))).collect();
        let cone = self.cone.to_json();
        json!({
            "polynomial": self.polynomial,
            "highest_form": self.highest_form,
            "cone_direction": cone.q,
            "count": self.symmetries.len(),
            "counts": counts,
            "isometries": self.symmetries.iter().map(|s| {
                let v = |x: &Vec3N| x.iter().map(number_json).collect::<Vec<_>>();
                json!({
                    "kind": s.class.kind.name(),
                    "Q": s.q.iter().map(&v).collect::<Vec<_>>(),
                    "b": v(&s.b),
                    "lambda": number_json(&s.lambda),
                    "fixed_locus": locus_json(&s.class.locus),
                    "supplementary": s.supplementary,
                })
            }).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

/// Restriction of F to the line t -> a t + b.
fn restrict_to_line(f: &MultiPoly<Rational>, a: [i64; 3], b: [i64; 3]) -> UniPoly {
    let lines: Vec<UniPoly> = (0..3).map(|i| UniPoly::from_ints(&[b[i], a[i]])).collect();
    let mut acc = UniPoly::zero();
    for (m, c) in f.terms() {
        let t = lines[0].pow(m[0]).mul(&lines[1].pow(m[1])).mul(&lines[2].pow(m[2]));
        acc = acc.add(&t.scale(c));
    }
    acc
}

/// A repeated factor G^2 of F shows up on every line; F square-free is square-free on
/// a generic line.
fn looks_squarefree(f: &MultiPoly<Rational>) -> bool {
    let lines = [([3, 5, 7], [2, -1, 4]), ([-4, 9, 2], [1, 6, -3])];
    lines.iter().any(|(a, b)| {
        let g = restrict_to_line(f, *a, *b);
        g.deg() < 1 || g.gcd(&g.derivative()).deg() == 0
    })
}

/// Full implicit route. Irreducibility of F is the caller's responsibility.
pub fn implicit_pipeline(surf: &ImplicitSurface, assume_irreducible: bool) -> Result<ImplicitReport> {
    if !assume_irreducible {
        return Err(Error::IrreducibilityNotAsserted);
    }
    if !looks_squarefree(&surf.f) {
        return Err(Error::InvalidInput("implicit polynomial has a repeated factor".into()));
    }
    let fn_ = surf.highest_form();
    let cone = parametrize_highest_form(&fn_).ok_or_else(|| {
        Error::ParamHeuristicFailed("no coordinate-plane section of the highest form is linear in a coordinate".into())
    })?;
    let mut notes = vec![format!("highest form parametrized through the {}", cone.name)];
    let rep = full_pipeline(&cone, Mode::All)?;
    let mut cands: Vec<(Mat3, bool)> = vec![];
    for s in &rep.symmetries {
        if !cands.iter().any(|(q, _)| *q == s.q) {
            cands.push((s.q.clone(), false));
        }
    }
    let minus: Mat3 = identity3().map(|r| r.map(|c| c.neg_ref()));
    if !cands.iter().any(|(q, _)| *q == minus) {
        cands.push((minus, true));
    }
    notes.push("central symmetries are not determined by the cone; Q = -I is lifted directly".into());
    let mut symmetries = vec![];
    for (q, supplementary) in cands {
        for (b, lambda) in lift_symmetry(&surf.f, &q)? {
            let class = classify(&q, &b)?;
            symmetries.push(ImplicitSymmetry { q: q.clone(), b, lambda, class, supplementary });
        }
    }
    symmetries.sort_by_key(|s| s.class.kind);
    Ok(ImplicitReport {
        polynomial: surf.f.to_string_vars(&XYZ),
        highest_form: fn_.to_string_vars(&XYZ),
        cone,
        symmetries,
        notes,
    })
}
