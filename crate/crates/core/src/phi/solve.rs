use std::cmp::Ordering;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::system::{build_system, Branch, PhiMode, PhiSystem, ALPHA, DELTA, NVARS};
use crate::algebra::numfield::{real_roots_over, NfElem, NumberField, RootOver};
use crate::algebra::solve::{lift, roots_in, solve};
use crate::algebra::{rat, Field, Poly, Rational, UniPoly};
use crate::error::{Error, Result};

/// A reparametrization phi(t, s) = ((alpha t + beta)/(gamma t + delta), k (gamma t + delta)^n s).
#[derive(Clone, Debug)]
pub struct PhiSolution {
    pub branch: Branch,
    pub field: Option<Arc<NumberField>>,
    pub alpha: NfElem,
    pub beta: NfElem,
    pub gamma: NfElem,
    pub delta: NfElem,
    pub k: NfElem,
}

impl PhiSolution {
    pub fn values(&self) -> [NfElem; NVARS] {
        [self.alpha.clone(), self.beta.clone(), self.gamma.clone(), self.delta.clone(), self.k.clone()]
    }
    pub fn is_identity(&self) -> bool {
        self.alpha.is_one() && self.beta.is_zero() && self.gamma.is_zero() && self.delta.is_one() && self.k.is_one()
    }
    /// True iff phi composed with itself is the identity.
    pub fn is_involution(&self, n: usize) -> bool {
        let case1 = self.alpha.add_ref(&self.delta).is_zero() && {
            let inner = self.gamma.mul_ref(&self.beta).add_ref(&self.delta.mul_ref(&self.delta));
            self.k.mul_ref(&self.k).mul_ref(&inner.pow(n as u32)).is_one()
        };
        let case2 = self.beta.is_zero() && self.gamma.is_zero() && self.alpha == self.delta && self.k.mul_ref(&self.k).is_one();
        case1 || case2
    }
    fn with_embedding(&self, r: &RootOver) -> PhiSolution {
        PhiSolution {
            branch: self.branch,
            field: r.field.clone(),
            alpha: r.embed(&self.alpha),
            beta: r.embed(&self.beta),
            gamma: r.embed(&self.gamma),
            delta: r.embed(&self.delta),
            k: r.embed(&self.k),
        }
    }
}

fn cmp_elem(a: &NfElem, b: &NfElem) -> Ordering {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => {
            let (x, y) = (a.approx_rational(80), b.approx_rational(80));
            let tol = Rational::new(1.into(), num_bigint::BigInt::one() << 70);
            if (&x - &y) > tol || (&y - &x) > tol {
                return x.cmp(&y);
            }
            a.to_algebraic().cmp_exact(&b.to_algebraic())
        }
    }
}

/// Canonical order: branch, then alpha, beta, delta, k.
pub fn cmp_solutions(a: &PhiSolution, b: &PhiSolution) -> Ordering {
    a.branch
        .cmp(&b.branch)
        .then_with(|| cmp_elem(&a.alpha, &b.alpha))
        .then_with(|| cmp_elem(&a.beta, &b.beta))
        .then_with(|| cmp_elem(&a.delta, &b.delta))
        .then_with(|| cmp_elem(&a.k, &b.k))
}

/// Exact check against every equation plus the non-degeneracy conditions.
pub fn validate(sys: &PhiSystem, s: &PhiSolution) -> bool {
    let v = s.values();
    let det = s.alpha.mul_ref(&s.delta).sub_ref(&s.beta.mul_ref(&s.gamma));
    if det.is_zero() || s.k.is_zero() {
        return false;
    }
    for (var, val) in sys.fixed() {
        if v[var] != NfElem::rational(val) {
            return false;
        }
    }
    sys.equations.iter().all(|e| lift(e).eval(&v).is_zero())
}

/// Solves a system: the structured elimination for the full system, the generic
/// solver otherwise. Every returned solution passed `validate`.
pub fn solve_system(sys: &PhiSystem) -> Result<Vec<PhiSolution>> {
    let cands = match sys.mode {
        PhiMode::All => match sys.branch {
            Branch::Gamma0 => solve_gamma0(&sys.norm)?,
            Branch::Gamma1 => solve_gamma1(&sys.norm)?,
        },
        _ => solve_generic(sys)?,
    };
    let mut out: Vec<PhiSolution> = cands.into_iter().filter(|s| validate(sys, s)).collect();
    out.sort_by(cmp_solutions);
    out.dedup_by(|a, b| cmp_solutions(a, b) == Ordering::Equal);
    Ok(out)
}

/// Generic route: hand the coefficient equations to the zero-dimensional solver.
pub fn solve_generic(sys: &PhiSystem) -> Result<Vec<PhiSolution>> {
    let eqs: Vec<_> = sys.equations.iter().map(lift).collect();
    let sols = solve(&eqs, &sys.unknowns)?;
    let mut out = vec![];
    for s in sols {
        let mut v: [NfElem; NVARS] = std::array::from_fn(|_| NfElem::zero());
        for (var, val) in sys.fixed() {
            v[var] = NfElem::rational(val);
        }
        if sys.mode == PhiMode::InvolutionsI && sys.branch == Branch::Gamma1 {
            v[ALPHA] = s.values[&DELTA].neg_ref();
        }
        for (&var, val) in &s.values {
            v[var] = val.clone();
        }
        let [alpha, beta, gamma, delta, k] = v;
        out.push(PhiSolution { branch: sys.branch, field: s.field.clone(), alpha, beta, gamma, delta, k });
    }
    Ok(out)
}

struct Centered {
    d: usize,
    lc: Rational,
    c: Rational,
    coeffs: Vec<Rational>,
}

/// P(w + c) with c chosen to kill the w^(d-1) coefficient.
fn center(p: &UniPoly) -> Centered {
    let d = p.deg();
    let lc = p.lc();
    let c = -p.coeff(d - 1) / (rat(d as i64) * &lc);
    let coeffs = p.taylor_shift(&c).into_coeffs();
    Centered { d, lc, c, coeffs }
}

/// gamma = 0: psi is affine. Centring shows alpha^(d-m) = 1 for every nonzero
/// centred coefficient m, and beta = c (1 - alpha), k^2 = 1.
fn solve_gamma0(p: &UniPoly) -> Result<Vec<PhiSolution>> {
    let ce = center(p);
    let exps: Vec<usize> = (0..ce.d - 1).filter(|&m| !ce.coeffs[m].is_zero()).map(|m| ce.d - m).collect();
    if exps.is_empty() {
        return Err(Error::PositiveDimensional("norm polynomial is a pure power".into()));
    }
    let mut alphas = vec![rat(1)];
    if exps.iter().all(|e| e % 2 == 0) {
        alphas.push(rat(-1));
    }
    let mut out = vec![];
    for a in alphas {
        let beta = &ce.c * (rat(1) - &a);
        for k in [rat(-1), rat(1)] {
            out.push(PhiSolution {
                branch: Branch::Gamma0,
                field: None,
                alpha: NfElem::rational(a.clone()),
                beta: NfElem::rational(beta.clone()),
                gamma: NfElem::zero(),
                delta: NfElem::one(),
                k: NfElem::rational(k),
            });
        }
    }
    Ok(out)
}

fn binom(n: usize, k: usize) -> Rational {
    let mut r = num_bigint::BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    Rational::from_integer(r)
}

/// Relations in alpha for gamma = 1. With B = beta - alpha delta the system splits
/// into `free` equations h(alpha) = 0 and binomials lhs(alpha) B^e = rhs(alpha).
struct Gamma1Relations {
    free: Vec<UniPoly>,
    bins: Vec<(usize, UniPoly, UniPoly)>,
}

fn gamma1_relations(p: &UniPoly, ce: &Centered) -> Gamma1Relations {
    let d = ce.d;
    // Taylor coefficients e_j(a) = P^(j)(a) / j!
    let mut e = vec![];
    let mut der = p.clone();
    let mut fact = Rational::one();
    for j in 0..=d {
        if j > 0 {
            der = der.derivative();
            fact *= rat(j as i64);
        }
        e.push(der.scale(&fact.recip()));
    }
    let m_p1 = p.derivative().neg();
    let d_p = p.scale(&rat(d as i64));
    let mut pw_m = vec![UniPoly::one()];
    let mut pw_d = vec![UniPoly::one()];
    for _ in 0..d {
        let a = pw_m.last().unwrap().mul(&m_p1);
        pw_m.push(a);
        let b = pw_d.last().unwrap().mul(&d_p);
        pw_d.push(b);
    }
    let mut free = vec![];
    let mut bins = vec![];
    for m in 0..=d - 2 {
        let mut h = UniPoly::zero();
        for j in 0..=d - m {
            h = h.add(&e[j].mul(&pw_m[d - j - m]).mul(&pw_d[j]).scale(&binom(d - j, m)));
        }
        if ce.coeffs[m].is_zero() {
            if !h.is_zero() {
                free.push(h);
            }
        } else {
            let rhs = p.mul(&pw_d[d - m]).scale(&ce.coeffs[m]);
            bins.push((d - m, h.scale(&ce.lc), rhs));
        }
    }
    free.sort_by_key(|h| h.deg());
    bins.sort_by_key(|b| b.0);
    Gamma1Relations { free, bins }
}

fn powmod(x: &UniPoly, e: usize, g: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::one();
    let base = x.rem(g);
    for _ in 0..e {
        acc = acc.mul(&base).rem(g);
    }
    acc
}

fn pair_relation(a: &(usize, UniPoly, UniPoly), b: &(usize, UniPoly, UniPoly), modulus: Option<&UniPoly>) -> UniPoly {
    let g = a.0.gcd(&b.0);
    let (ea, eb) = (b.0 / g, a.0 / g);
    match modulus {
        None => a.2.pow(ea as u32).mul(&b.1.pow(eb as u32)).sub(&b.2.pow(eb as u32).mul(&a.1.pow(ea as u32))),
        Some(m) => {
            let l = powmod(&a.2, ea, m).mul(&powmod(&b.1, eb, m));
            let r = powmod(&b.2, eb, m).mul(&powmod(&a.1, ea, m));
            l.sub(&r).rem(m)
        }
    }
}

/// Univariate polynomial whose real roots contain every alpha of a gamma = 1 solution.
pub fn gamma1_alpha_poly(p: &UniPoly) -> Result<UniPoly> {
    let ce = center(p);
    let rel = gamma1_relations(p, &ce);
    let mut g = UniPoly::zero();
    for h in &rel.free {
        g = g.gcd(h);
        if !g.is_zero() {
            g = g.strip_common(p);
        }
        if !g.is_zero() && g.deg() == 0 {
            return Ok(g);
        }
    }
    let n = rel.bins.len();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| rel.bins[i].0 * rel.bins[j].0);
    if g.is_zero() {
        for &(i, j) in &pairs {
            let r = pair_relation(&rel.bins[i], &rel.bins[j], None);
            if !r.is_zero() {
                g = r.monic().strip_common(p);
                break;
            }
        }
    }
    if g.is_zero() {
        return Err(Error::PositiveDimensional("no relation isolates alpha".into()));
    }
    for &(i, j) in &pairs {
        if g.deg() == 0 {
            break;
        }
        let r = pair_relation(&rel.bins[i], &rel.bins[j], Some(&g));
        g = g.gcd(&r);
    }
    Ok(g)
}

fn solve_gamma1(p: &UniPoly) -> Result<Vec<PhiSolution>> {
    let ce = center(p);
    let d = ce.d;
    let u = gamma1_alpha_poly(p)?;
    if u.deg() == 0 {
        return Ok(vec![]);
    }
    let rel = gamma1_relations(p, &ce);
    let pn: Poly<NfElem> = u.map(|c| NfElem::rational(c.clone()));
    let p_der = p.derivative();
    let mut out = vec![];
    for ra in real_roots_over(&pn) {
        let a0 = ra.root.clone();
        let field = ra.field.clone();
        let pa = a0.eval_poly(p);
        let mut gb: Option<Poly<NfElem>> = None;
        for (e, lhs, rhs) in &rel.bins {
            let l = a0.eval_poly(lhs);
            let r = a0.eval_poly(rhs);
            if l.is_zero() && r.is_zero() {
                continue;
            }
            let poly = Poly::monomial(l, *e).sub(&Poly::constant(r));
            gb = Some(match gb {
                None => poly.monic(),
                Some(g) => g.gcd_euclid(&poly),
            });
        }
        let Some(gb) = gb else {
            return Err(Error::PositiveDimensional("beta - alpha delta is unconstrained".into()));
        };
        for rb in roots_in(&gb, &field) {
            let b0 = rb.root.clone();
            if b0.is_zero() {
                continue;
            }
            let a = rb.embed(&a0);
            let pa = rb.embed(&pa);
            let p1 = a.eval_poly(&p_der);
            let delta = b0
                .mul_ref(&p1)
                .neg_ref()
                .div_ref(&pa.mul_ref(&NfElem::from_int(d as i64)))
                .sub_ref(&NfElem::rational(ce.c.clone()));
            let beta = b0.add_ref(&a.mul_ref(&delta));
            let kk = NfElem::rational(ce.lc.clone()).div_ref(&pa);
            let base = PhiSolution {
                branch: Branch::Gamma1,
                field: rb.field.clone(),
                alpha: a,
                beta,
                gamma: NfElem::one(),
                delta,
                k: NfElem::zero(),
            };
            let sq = Poly::new(vec![kk.neg_ref(), NfElem::zero(), NfElem::one()]);
            for rk in roots_in(&sq, &rb.field) {
                let mut s = base.with_embedding(&rk);
                s.k = rk.root.clone();
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// All reparametrizations of the given mode across both branches.
pub fn solve_phi(q: &[UniPoly; 3], n: usize, mode: PhiMode) -> Result<Vec<PhiSolution>> {
    let mut out = vec![];
    for branch in [Branch::Gamma0, Branch::Gamma1] {
        if let Some(sys) = build_system(q, n, branch, mode) {
            out.extend(solve_system(&sys)?);
        }
    }
    out.sort_by(cmp_solutions);
    Ok(out)
}

/// Solutions of both involution systems.
pub fn solve_involutions(q: &[UniPoly; 3], n: usize) -> Result<Vec<PhiSolution>> {
    let mut out = solve_phi(q, n, PhiMode::InvolutionsI)?;
    out.extend(solve_phi(q, n, PhiMode::InvolutionsII)?);
    out.sort_by(cmp_solutions);
    out.dedup_by(|a, b| cmp_solutions(a, b) == Ordering::Equal);
    Ok(out)
}

/// Keeps the involutive reparametrizations.
pub fn filter_involutions(sols: &[PhiSolution], n: usize) -> Vec<PhiSolution> {
    sols.iter().filter(|s| s.is_involution(n)).cloned().collect()
}
