//! Real solutions of small zero-dimensional polynomial systems.
//!
//! Strategy, tried in order at every level: a variable with univariate
//! equations is fixed at each real root; a variable occurring only squared is
//! replaced by its square; a variable occurring linearly is eliminated (with a
//! case split when its coefficient is not constant); otherwise one variable is
//! projected away with resultants and lifted back. Every returned point is
//! checked exactly against the input equations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::Field;
use super::multipoly::{resultant, MultiPoly};
use super::numfield::{common_field, real_roots_over, real_roots_over_field, NfElem, NumberField, RootOver};
use super::poly::Poly;
use crate::error::{Error, Result};

pub type Eq = MultiPoly<NfElem>;

/// One real solution; all values live in `field`.
#[derive(Clone, Debug)]
pub struct Solution {
    pub field: Option<Arc<NumberField>>,
    pub values: BTreeMap<usize, NfElem>,
    images: BTreeMap<u64, NfElem>,
}

impl Solution {
    /// Maps an element of any ancestor field into this solution's field.
    pub fn embed(&self, e: &NfElem) -> NfElem {
        if let Some(r) = e.as_rational() {
            return NfElem::rational(r);
        }
        let id = e.field().unwrap().id();
        let img = self.images.get(&id).expect("element from an unrelated field");
        img.eval_poly(&e.poly())
    }
    fn eval(&self, p: &Eq) -> Eq {
        let mut q = p.map(|c| self.embed(c));
        for (v, x) in &self.values {
            if q.uses_var(*v) {
                q = q.eval_var(*v, x);
            }
        }
        q
    }
    fn extend(&self, r: &RootOver) -> Solution {
        let mut images: BTreeMap<u64, NfElem> = self.images.iter().map(|(k, v)| (*k, r.embed(v))).collect();
        if let Some(f) = &r.field {
            images.insert(f.id(), NfElem::generator(f));
        }
        let values = self.values.iter().map(|(k, v)| (*k, r.embed(v))).collect();
        Solution { field: r.field.clone(), values, images }
    }
}

fn start(field: &Option<Arc<NumberField>>) -> Solution {
    let mut images = BTreeMap::new();
    if let Some(f) = field {
        images.insert(f.id(), NfElem::generator(f));
    }
    Solution { field: field.clone(), values: BTreeMap::new(), images }
}

/// Real roots of a univariate polynomial, computed over the context field.
pub fn roots_in(g: &Poly<NfElem>, field: &Option<Arc<NumberField>>) -> Vec<RootOver> {
    match field {
        Some(f) if common_field(g.coeffs()).is_none() => real_roots_over_field(g, f),
        _ => {
            let mut rs = real_roots_over(g);
            if let Some(f) = field {
                // rational roots of a polynomial over f stay in f
                for r in rs.iter_mut() {
                    if r.field.is_none() {
                        r.field = Some(f.clone());
                        r.theta_image = Some(NfElem::generator(f));
                    }
                }
            }
            rs
        }
    }
}

const MAX_DEPTH: usize = 40;

/// Solves `eqs = 0` for the listed unknowns. Other variables must not occur.
pub fn solve(eqs: &[Eq], unknowns: &[usize]) -> Result<Vec<Solution>> {
    let field = common_field(eqs.iter().flat_map(|e| e.terms().map(|(_, c)| c)));
    for e in eqs {
        for v in e.vars_used() {
            if !unknowns.contains(&v) {
                return Err(Error::InvalidInput(format!("variable {v} is not an unknown")));
            }
        }
    }
    let sols = rec(eqs.to_vec(), unknowns.to_vec(), field.clone(), start(&field), 0)?;
    let mut out: Vec<Solution> = vec![];
    for s in sols {
        if eqs.iter().all(|e| s.eval(e).is_zero()) && !out.iter().any(|o| same_point(o, &s, unknowns)) {
            out.push(s);
        }
    }
    Ok(out)
}

fn same_point(a: &Solution, b: &Solution, vars: &[usize]) -> bool {
    vars.iter().all(|v| {
        let (x, y) = (&a.values[v], &b.values[v]);
        match (x.as_rational(), y.as_rational()) {
            (Some(p), Some(q)) => p == q,
            _ => {
                if (x.to_f64() - y.to_f64()).abs() > 1e-9 {
                    return false;
                }
                x.to_algebraic() == y.to_algebraic()
            }
        }
    })
}

fn clean(eqs: Vec<Eq>) -> Option<Vec<Eq>> {
    let mut out: Vec<Eq> = vec![];
    for e in eqs {
        if e.is_zero() {
            continue;
        }
        if e.is_constant() {
            return None;
        }
        let m = e.monic();
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out.sort_by_key(|e| (e.total_degree(), e.num_terms()));
    Some(out)
}

fn rec(eqs: Vec<Eq>, active: Vec<usize>, field: Option<Arc<NumberField>>, base: Solution, depth: usize) -> Result<Vec<Solution>> {
    if depth > MAX_DEPTH {
        return Err(Error::PositiveDimensional("elimination depth limit reached".into()));
    }
    let Some(eqs) = clean(eqs) else { return Ok(vec![]) };
    if active.is_empty() {
        return Ok(vec![base]);
    }
    if eqs.is_empty() {
        return Err(Error::PositiveDimensional(format!("{} unknown(s) left unconstrained", active.len())));
    }
    // a variable with univariate equations
    let mut best: Option<(usize, Poly<NfElem>)> = None;
    for &v in &active {
        let mut g: Option<Poly<NfElem>> = None;
        for e in &eqs {
            if let Some(u) = e.to_univariate(v) {
                g = Some(match g {
                    None => u.monic(),
                    Some(h) => h.gcd_euclid(&u),
                });
            }
        }
        if let Some(g) = g {
            if best.as_ref().is_none_or(|(_, b)| g.deg() < b.deg()) {
                best = Some((v, g));
            }
        }
    }
    if let Some((v, g)) = best {
        let rest: Vec<usize> = active.iter().copied().filter(|&w| w != v).collect();
        let mut out = vec![];
        for r in roots_in(&g, &field) {
            let sub = base.extend(&r);
            let neqs: Vec<Eq> = eqs.iter().map(|e| e.map(|c| r.embed(c)).eval_var(v, &r.root)).collect();
            for mut s in rec(neqs, rest.clone(), r.field.clone(), sub, depth + 1)? {
                let val = s.embed(&r.root);
                s.values.insert(v, val);
                out.push(s);
            }
        }
        return Ok(out);
    }
    // a variable occurring only in even powers
    for &v in &active {
        let used = eqs.iter().any(|e| e.uses_var(v));
        let even = eqs.iter().all(|e| e.terms().all(|(m, _)| m[v] % 2 == 0));
        if used && even {
            let neqs: Vec<Eq> = eqs.iter().map(|e| halve(e, v)).collect();
            let mut out = vec![];
            for s in rec(neqs, active.clone(), field.clone(), base.clone(), depth + 1)? {
                let w = s.values[&v].clone();
                match w.sign() {
                    -1 => {}
                    0 => out.push(s),
                    _ => {
                        let p = Poly::new(vec![w.neg_ref(), NfElem::zero(), NfElem::one()]);
                        for r in roots_in(&p, &s.field) {
                            let mut s2 = s.extend(&r);
                            s2.values.insert(v, r.root.clone());
                            out.push(s2);
                        }
                    }
                }
            }
            return Ok(out);
        }
    }
    // a variable occurring linearly
    let mut lin: Option<(usize, usize, bool, usize)> = None;
    for (i, e) in eqs.iter().enumerate() {
        for &v in &active {
            if e.degree_in(v) == 1 {
                let cs = e.coeffs_in(v);
                let konst = cs[1].is_constant();
                let size = cs[1].num_terms() * 1000 + e.num_terms();
                let better = match lin {
                    None => true,
                    Some((_, _, k, sz)) => (konst && !k) || (konst == k && size < sz),
                };
                if better {
                    lin = Some((i, v, konst, size));
                }
            }
        }
    }
    if let Some((i, v, konst, _)) = lin {
        let cs = eqs[i].coeffs_in(v);
        let (a, b) = (cs[1].clone(), cs[0].clone());
        let others: Vec<Eq> = eqs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e.clone()).collect();
        let rest: Vec<usize> = active.iter().copied().filter(|&w| w != v).collect();
        let mut out = vec![];
        // this branch assumes a != 0, so factors of a can be dropped
        let neqs: Vec<Eq> = others.iter().map(|e| strip_factor(substitute_fraction(e, v, &b.neg(), &a), &a)).collect();
        for mut s in rec(neqs, rest, field.clone(), base.clone(), depth + 1)? {
            let av = s.eval(&a).constant_term();
            if av.is_zero() {
                continue;
            }
            let bv = s.eval(&b).constant_term();
            s.values.insert(v, bv.neg_ref().div_ref(&av));
            out.push(s);
        }
        if !konst {
            let mut neqs = others.clone();
            neqs.push(a);
            neqs.push(b);
            out.extend(rec(neqs, active.clone(), field, base, depth + 1)?);
        }
        return Ok(out);
    }
    // projection by resultants
    let mut choice: Option<(usize, Vec<usize>)> = None;
    for &v in &active {
        let mut with: Vec<usize> = (0..eqs.len()).filter(|&j| eqs[j].uses_var(v)).collect();
        if with.len() < 2 {
            continue;
        }
        with.sort_by_key(|&j| (eqs[j].degree_in(v), eqs[j].num_terms()));
        let cost = eqs[with[0]].degree_in(v) * eqs[with[1]].degree_in(v);
        if choice.as_ref().is_none_or(|(w, ws)| cost < eqs[ws[0]].degree_in(*w) * eqs[ws[1]].degree_in(*w)) {
            choice = Some((v, with));
        }
    }
    let Some((v, with)) = choice else {
        return Err(Error::PositiveDimensional("too few equations to eliminate a variable".into()));
    };
    let mut proj: Vec<Eq> = eqs.iter().filter(|e| !e.uses_var(v)).cloned().collect();
    for &j in with.iter().skip(1).take(3) {
        proj.push(resultant(&eqs[with[0]], &eqs[j], v)?);
    }
    let rest: Vec<usize> = active.iter().copied().filter(|&w| w != v).collect();
    let mut out = vec![];
    for s in rec(proj, rest, field, base, depth + 1)? {
        let mut g: Option<Poly<NfElem>> = None;
        for e in &eqs {
            let u = s.eval(e).to_univariate(v).expect("only the projected variable remains");
            if u.is_zero() {
                continue;
            }
            g = Some(match g {
                None => u.monic(),
                Some(h) => h.gcd_euclid(&u),
            });
        }
        let Some(g) = g else {
            return Err(Error::PositiveDimensional("fibre over a projected point is not finite".into()));
        };
        for r in roots_in(&g, &s.field) {
            let mut s2 = s.extend(&r);
            s2.values.insert(v, r.root.clone());
            out.push(s2);
        }
    }
    Ok(out)
}

fn strip_factor(mut e: Eq, a: &Eq) -> Eq {
    if a.is_constant() {
        return e;
    }
    while !e.is_zero() {
        match e.div_exact(a) {
            Some(q) => e = q,
            None => break,
        }
    }
    e
}

fn halve(e: &Eq, v: usize) -> Eq {
    let mut r = MultiPoly::zero(e.nvars());
    for (m, c) in e.terms() {
        let mut m2 = m.clone();
        m2[v] /= 2;
        r = r.add(&MultiPoly::term(m2, c.clone()));
    }
    r
}

/// Numerator of e with v replaced by num/den, homogenised in den.
fn substitute_fraction(e: &Eq, v: usize, num: &Eq, den: &Eq) -> Eq {
    let cs = e.coeffs_in(v);
    if cs.len() <= 1 {
        return e.clone();
    }
    let d = cs.len() - 1;
    if den.is_constant() {
        let x = num.scale(&den.constant_term().inv());
        return e.substitute(v, &x);
    }
    let mut acc = MultiPoly::zero(e.nvars());
    let mut np = MultiPoly::one(e.nvars());
    let mut dps = vec![MultiPoly::one(e.nvars())];
    for _ in 0..d {
        let nx = dps.last().unwrap().mul(den);
        dps.push(nx);
    }
    for (j, c) in cs.iter().enumerate() {
        acc = acc.add(&c.mul(&np).mul(&dps[d - j]));
        np = np.mul(num);
    }
    acc
}

/// Lifts a rational polynomial into the element type used by the solver.
pub fn lift(p: &MultiPoly<super::field::Rational>) -> Eq {
    p.map(|c| NfElem::rational(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, Rational};
    use crate::algebra::parse::parse_multipoly;

    fn sys(v: &[&str], names: &[&str]) -> Vec<Eq> {
        v.iter().map(|s| lift(&parse_multipoly(s, names).unwrap())).collect()
    }

    #[test]
    fn small_system_with_rational_points() {
        let n = ["a", "b", "k"];
        let e = sys(&["a^2 - 1", "b", "k - 1"], &n);
        let s = solve(&e, &[0, 1, 2]).unwrap();
        let mut a: Vec<Rational> = s.iter().map(|x| x.values[&0].as_rational().unwrap()).collect();
        a.sort();
        assert_eq!(a, vec![rat(-1), rat(1)]);
    }

    #[test]
    fn circle_and_line_need_sqrt() {
        let n = ["x", "y"];
        let e = sys(&["x^2 + y^2 - 4", "x - y"], &n);
        let s = solve(&e, &[0, 1]).unwrap();
        assert_eq!(s.len(), 2);
        for p in &s {
            let x = &p.values[&0];
            assert_eq!(x.mul_ref(x), NfElem::from_int(2));
        }
    }

    #[test]
    fn projection_path() {
        // no linear variable, no univariate equation
        let n = ["x", "y"];
        let e = sys(&["x^2 + y^2 - 5", "x^2*y - 2 + x*y^2 - 4"], &n);
        let s = solve(&e, &[0, 1]).unwrap();
        for p in &s {
            for f in &e {
                assert!(p.eval(f).is_zero());
            }
        }
        // (1, 2) and (2, 1) are solutions: x^2 y + x y^2 = xy(x+y) = 6
        let pts: Vec<(f64, f64)> = s.iter().map(|p| (p.values[&0].to_f64(), p.values[&1].to_f64())).collect();
        assert!(pts.iter().any(|&(a, b)| (a - 1.0).abs() < 1e-9 && (b - 2.0).abs() < 1e-9));
        assert!(pts.iter().any(|&(a, b)| (a - 2.0).abs() < 1e-9 && (b - 1.0).abs() < 1e-9));
    }

    #[test]
    fn positive_dimensional_is_reported() {
        let n = ["x", "y"];
        let e = sys(&["x^2 - y^2"], &n);
        assert!(matches!(solve(&e, &[0, 1]), Err(Error::PositiveDimensional(_))));
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let n = ["x", "y"];
        let e = sys(&["x^2 + 1", "y"], &n);
        assert!(solve(&e, &[0, 1]).unwrap().is_empty());
    }
}
