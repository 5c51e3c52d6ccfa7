#![allow(dead_code)]

use num_traits::Zero;
use ruledsym::algebra::{rat, ratio, Field, MultiPoly, NfElem, Rational};
use ruledsym::isometry::{mat_vec, merge_fields, Mat3, Symmetry, Vec3N};
use ruledsym::surface::RuledSurface;

pub fn nf(r: Rational) -> NfElem {
    NfElem::rational(r)
}

pub fn diag(a: [i64; 3]) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| NfElem::from_int(if i == j { a[i] } else { 0 })))
}

pub fn ints(v: [i64; 3]) -> Vec3N {
    v.map(NfElem::from_int)
}

/// Sample parameters that avoid small poles.
pub fn sample_points() -> Vec<(Rational, Rational)> {
    vec![
        (ratio(3, 7), ratio(1, 2)),
        (ratio(-5, 4), rat(-3)),
        (rat(2), ratio(7, 3)),
        (ratio(11, 3), ratio(-2, 5)),
        (ratio(-13, 9), rat(5)),
    ]
}

/// Q x(t, s) + b == x(psi(t), k (gamma t + delta)^n s + c(t)) at sample points, computed
/// pointwise in the number field without any polynomial identity machinery.
pub fn pointwise_holds(surf: &RuledSurface, q: &Mat3, b: &Vec3N, sym: &Symmetry) -> bool {
    let phi = &sym.phi;
    let mut checked = 0;
    'sample: for (t, s) in sample_points() {
        let tn = nf(t.clone());
        let den = phi.gamma.mul_ref(&tn).add_ref(&phi.delta);
        if den.is_zero() {
            continue;
        }
        let psi = phi.alpha.mul_ref(&tn).add_ref(&phi.beta).div_ref(&den);
        let Some(c) = sym.c.eval(&tn) else { continue };
        let lift = |i: usize, x: &NfElem| -> Option<(NfElem, NfElem)> {
            let p = surf.p[i].map(|a| nf(a.clone())).eval(x)?;
            let qq = surf.q[i].map(|a| nf(a.clone())).eval(x);
            Some((p, qq))
        };
        let mut here = vec![];
        let mut there = vec![];
        for i in 0..3 {
            let (Some(a), Some(bb)) = (lift(i, &tn), lift(i, &psi)) else { continue 'sample };
            here.push(a);
            there.push(bb);
        }
        let s_new = phi.k.mul_ref(&Field::pow(&den, surf.n as u32)).mul_ref(&nf(s.clone())).add_ref(&c);
        let x: Vec3N = std::array::from_fn(|i| here[i].0.add_ref(&here[i].1.mul_ref(&nf(s.clone()))));
        let qx = mat_vec(q, &x);
        for i in 0..3 {
            let lhs = qx[i].add_ref(&b[i]);
            let rhs = there[i].0.add_ref(&there[i].1.mul_ref(&s_new));
            if lhs != rhs {
                return false;
            }
        }
        checked += 1;
    }
    checked > 0
}

/// F(Q x + b) - lambda F(x) at a few rational points, exactly.
pub fn implicit_identity_holds(f: &MultiPoly<Rational>, q: &Mat3, b: &Vec3N, lambda: &NfElem) -> bool {
    let fe = f.map(|c| nf(c.clone()));
    let pts = [[1, 2, 3], [-2, 5, 1], [3, -1, -4], [7, 2, -5], [0, 1, -1], [4, 4, 9]];
    pts.iter().all(|p| {
        let x: Vec3N = p.map(NfElem::from_int);
        let y = mat_vec(q, &x);
        let y: Vec<NfElem> = (0..3).map(|i| y[i].add_ref(&b[i])).collect();
        fe.eval(&y) == lambda.mul_ref(&fe.eval(&x))
    })
}

/// (Q, b) pairs over one common field, sorted for set comparison.
pub fn canonical_set(syms: &[&Symmetry]) -> Vec<(Mat3, Vec3N)> {
    let refs: Vec<(&Mat3, &Vec3N)> = syms.iter().map(|s| (&s.q, &s.b)).collect();
    merge_fields(&refs)
}

pub fn same_sets(a: &[&Symmetry], b: &[&Symmetry]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let all: Vec<&Symmetry> = a.iter().chain(b).copied().collect();
    let m = canonical_set(&all);
    let (x, y) = m.split_at(a.len());
    x.iter().all(|e| y.contains(e)) && y.iter().all(|e| x.contains(e))
}

pub struct Analysed {
    pub entry: &'static ruledsym::corpus::Entry,
    pub surface: RuledSurface,
    pub report: ruledsym::isometry::SymmetryReport,
}

fn analyse_corpus(mode: ruledsym::isometry::Mode) -> Vec<Analysed> {
    std::thread::scope(|sc| {
        let hs: Vec<_> = ruledsym::corpus::ALL
            .iter()
            .map(|&entry| {
                sc.spawn(move || {
                    let surface = entry.surface();
                    let report = ruledsym::isometry::full_pipeline(&surface, mode).unwrap();
                    Analysed { entry, surface, report }
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

/// Every corpus surface in all mode, computed once per test binary.
pub fn corpus_all() -> &'static [Analysed] {
    static C: std::sync::OnceLock<Vec<Analysed>> = std::sync::OnceLock::new();
    C.get_or_init(|| analyse_corpus(ruledsym::isometry::Mode::All))
}

pub fn corpus_involutions() -> &'static [Analysed] {
    static C: std::sync::OnceLock<Vec<Analysed>> = std::sync::OnceLock::new();
    C.get_or_init(|| analyse_corpus(ruledsym::isometry::Mode::Involutions))
}

pub fn analysed(name: &str) -> &'static Analysed {
    corpus_all().iter().find(|a| a.entry.name == name).unwrap()
}

/// F(Q x + b) as a polynomial, by symbolic substitution of the affine forms.
pub fn compose_affine(f: &MultiPoly<Rational>, q: &Mat3, b: &Vec3N) -> MultiPoly<NfElem> {
    let n = f.nvars();
    let forms: Vec<MultiPoly<NfElem>> = (0..3)
        .map(|i| {
            (0..3).fold(MultiPoly::constant(n, b[i].clone()), |acc, j| acc.add(&MultiPoly::var(n, j).scale(&q[i][j])))
        })
        .collect();
    f.terms().fold(MultiPoly::zero(n), |acc, (m, c)| {
        let t = (0..3).fold(MultiPoly::constant(n, nf(c.clone())), |t, i| t.mul(&forms[i].pow(m[i])));
        acc.add(&t)
    })
}

/// lambda with F(Q x + b) = lambda F exactly, if one exists.
pub fn invariance_factor(f: &MultiPoly<Rational>, q: &Mat3, b: &Vec3N) -> Option<NfElem> {
    let g = compose_affine(f, q, b);
    let fe = f.map(|c| nf(c.clone()));
    let (m, c) = fe.terms().next()?;
    let lambda = g.coeff(m).div_ref(c);
    (g == fe.scale(&lambda)).then_some(lambda)
}
