use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::parse::parse_ratfunc;
use crate::algebra::{Field, RatFunc, Rational, UniPoly};
use crate::error::{Error, Result};

pub type Vec3<T> = [T; 3];

/// Rational ruled surface x(t, s) = p(t) + s q(t), with q normalised to
/// coprime primitive integer polynomials.
#[derive(Clone, Debug)]
pub struct RuledSurface {
    pub name: String,
    pub p: Vec3<RatFunc<Rational>>,
    pub q: Vec3<UniPoly>,
    pub n: usize,
}

/// Clears denominators and common polynomial/integer factors of a direction vector.
pub fn normalize_direction(q: &Vec3<RatFunc<Rational>>) -> Result<Vec3<UniPoly>> {
    if q.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidInput("direction vector is identically zero".into()));
    }
    let mut l = UniPoly::one();
    for c in q {
        let g = l.gcd(c.den());
        l = l.mul(c.den()).exact_div(&g);
    }
    let polys: Vec<UniPoly> = q.iter().map(|c| c.num().mul(&l.exact_div(c.den()))).collect();
    let mut g = UniPoly::zero();
    for p in &polys {
        g = g.gcd(p);
    }
    let polys: Vec<UniPoly> = polys.iter().map(|p| p.exact_div(&g)).collect();
    // integer content: lcm of coefficient denominators over gcd of numerators
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for p in &polys {
        for a in p.coeffs() {
            den = den.lcm(a.denom());
            num = num.gcd(a.numer());
        }
    }
    let f = Rational::new(den, num.abs());
    Ok([polys[0].scale(&f), polys[1].scale(&f), polys[2].scale(&f)])
}

/// Maximum component degree.
pub fn degree_n(q: &Vec3<UniPoly>) -> usize {
    q.iter().filter(|c| !c.is_zero()).map(|c| c.deg()).max().unwrap_or(0)
}

fn cross_poly(a: &Vec3<UniPoly>, b: &Vec3<UniPoly>) -> Vec3<UniPoly> {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

/// True iff q(t) has constant direction, i.e. q x q' vanishes identically.
pub fn is_cylindrical(q: &Vec3<UniPoly>) -> bool {
    let d = [q[0].derivative(), q[1].derivative(), q[2].derivative()];
    cross_poly(q, &d).iter().all(|c| c.is_zero())
}

/// Solves a small dense linear system over a field. Returns a particular solution
/// and a null-space basis, or None if inconsistent.
pub fn solve_linear<F: Field>(rows: &[Vec<F>], rhs: &[F], ncols: usize) -> Option<(Vec<F>, Vec<Vec<F>>)> {
    let mut m: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let mut pivots = vec![];
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, pr);
        let inv = m[row][col].inv();
        for x in m[row].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub_ref(&p.mul_ref(&f));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    let mut null = vec![];
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = m[i][free].neg_ref();
        }
        null.push(v);
    }
    Some((x, null))
}

/// Vertex v with (p - v) x q = 0 identically, if the surface is a cone.
pub fn detect_conical(p: &Vec3<RatFunc<Rational>>, q: &Vec3<UniPoly>) -> Option<Vec3<Rational>> {
    if p.iter().all(|c| c.is_zero()) {
        return Some([Rational::zero(), Rational::zero(), Rational::zero()]);
    }
    // common denominator
    let mut d = UniPoly::one();
    for c in p {
        let g = d.gcd(c.den());
        d = d.mul(c.den()).exact_div(&g);
    }
    let pp: Vec3<UniPoly> = [0, 1, 2].map(|i| p[i].num().mul(&d.exact_div(p[i].den())));
    let dq: Vec3<UniPoly> = [0, 1, 2].map(|i| q[i].mul(&d));
    let lhs = cross_poly(&pp, q);
    // v x dq is linear in v: component rows
    let e = |i: usize| -> Vec3<UniPoly> {
        let mut v = [UniPoly::zero(), UniPoly::zero(), UniPoly::zero()];
        v[i] = UniPoly::one();
        cross_poly(&v, &dq)
    };
    let cols = [e(0), e(1), e(2)];
    let mut rows = vec![];
    let mut rhs = vec![];
    for comp in 0..3 {
        let deg = lhs[comp].deg().max(cols.iter().map(|c| c[comp].deg()).max().unwrap());
        for k in 0..=deg {
            rows.push(cols.iter().map(|c| c[comp].coeff(k)).collect());
            rhs.push(lhs[comp].coeff(k));
        }
    }
    let (x, _) = solve_linear(&rows, &rhs, 3)?;
    Some([x[0].clone(), x[1].clone(), x[2].clone()])
}

/// Input format: three strings each for p and q, rational functions of t.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<[String; 3]>,
    pub q: [String; 3],
}

impl RuledSurface {
    pub fn new(name: &str, p: Vec3<RatFunc<Rational>>, q_raw: &Vec3<RatFunc<Rational>>) -> Result<Self> {
        let q = normalize_direction(q_raw)?;
        let n = degree_n(&q);
        Ok(RuledSurface { name: name.to_string(), p, q, n })
    }
    pub fn from_strings(name: &str, p: Option<&[&str; 3]>, q: &[&str; 3]) -> Result<Self> {
        let pp = match p {
            Some(p) => [parse_ratfunc(p[0])?, parse_ratfunc(p[1])?, parse_ratfunc(p[2])?],
            None => [RatFunc::zero(), RatFunc::zero(), RatFunc::zero()],
        };
        let qq = [parse_ratfunc(q[0])?, parse_ratfunc(q[1])?, parse_ratfunc(q[2])?];
        RuledSurface::new(name, pp, &qq)
    }
    pub fn from_json_str(s: &str, default_name: &str) -> Result<Self> {
        let j: SurfaceJson = serde_json::from_str(s).map_err(|e| Error::Parse(format!("surface JSON: {e}")))?;
        let name = j.name.clone().unwrap_or_else(|| default_name.to_string());
        let p = j.p.as_ref().map(|p| [p[0].as_str(), p[1].as_str(), p[2].as_str()]);
        RuledSurface::from_strings(&name, p.as_ref(), &[&j.q[0], &j.q[1], &j.q[2]])
    }
    pub fn to_json(&self) -> SurfaceJson {
        SurfaceJson {
            name: Some(self.name.clone()),
            p: Some([0, 1, 2].map(|i| self.p[i].to_string_var("t"))),
            q: [0, 1, 2].map(|i| self.q[i].to_string_var("t")),
        }
    }
    pub fn is_cylindrical(&self) -> bool {
        is_cylindrical(&self.q)
    }
    pub fn vertex(&self) -> Option<Vec3<Rational>> {
        detect_conical(&self.p, &self.q)
    }
    pub fn p_is_zero(&self) -> bool {
        self.p.iter().all(|c| c.is_zero())
    }
    /// ||q(t)||^2.
    pub fn norm_poly(&self) -> UniPoly {
        self.q.iter().fold(UniPoly::zero(), |acc, c| acc.add(&c.mul(c)))
    }
    /// Point of the surface, None at a pole of p.
    pub fn point(&self, t: &Rational, s: &Rational) -> Option<Vec3<Rational>> {
        let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.p[i].eval(t)? + s * self.q[i].eval(t);
        }
        Some(out)
    }
    /// Same surface translated so that a cone has its vertex at the origin and p = 0.
    pub fn centered_cone(&self) -> Option<(Vec3<Rational>, RuledSurface)> {
        let v = self.vertex()?;
        let mut c = self.clone();
        c.p = [RatFunc::zero(), RatFunc::zero(), RatFunc::zero()];
        Some((v, c))
    }
    /// Lowest common denominator of p.
    pub fn p_denominator(&self) -> UniPoly {
        let mut d = UniPoly::one();
        for c in &self.p {
            let g = d.gcd(c.den());
            d = d.mul(c.den()).exact_div(&g);
        }
        d
    }
}
