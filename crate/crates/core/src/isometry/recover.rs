use num_traits::{One, Zero};

use crate::algebra::{Field, NfElem, Poly, RatFunc, Rational, UniPoly};
use crate::phi::PhiSolution;
use crate::surface::{solve_linear, RuledSurface};

pub type Mat3 = [[NfElem; 3]; 3];
pub type Vec3N = [NfElem; 3];

pub(crate) fn lift_poly(p: &UniPoly) -> Poly<NfElem> {
    p.map(|c| NfElem::rational(c.clone()))
}

pub(crate) fn lift_rf(f: &RatFunc<Rational>) -> RatFunc<NfElem> {
    f.map(|c| NfElem::rational(c.clone()))
}

pub fn identity3() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { NfElem::one() } else { NfElem::zero() }))
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(NfElem::zero(), |acc, l| acc.add_ref(&a[i][l].mul_ref(&b[l][j]))))
    })
}

pub fn mat_vec(a: &Mat3, v: &Vec3N) -> Vec3N {
    std::array::from_fn(|i| (0..3).fold(NfElem::zero(), |acc, l| acc.add_ref(&a[i][l].mul_ref(&v[l]))))
}

pub fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn det3(a: &Mat3) -> NfElem {
    let m = |i: usize, j: usize, k: usize, l: usize| a[i][k].mul_ref(&a[j][l]).sub_ref(&a[i][l].mul_ref(&a[j][k]));
    a[0][0]
        .mul_ref(&m(1, 2, 1, 2))
        .sub_ref(&a[0][1].mul_ref(&m(1, 2, 0, 2)))
        .add_ref(&a[0][2].mul_ref(&m(1, 2, 0, 1)))
}

pub fn cross(a: &Vec3N, b: &Vec3N) -> Vec3N {
    [
        a[1].mul_ref(&b[2]).sub_ref(&a[2].mul_ref(&b[1])),
        a[2].mul_ref(&b[0]).sub_ref(&a[0].mul_ref(&b[2])),
        a[0].mul_ref(&b[1]).sub_ref(&a[1].mul_ref(&b[0])),
    ]
}

pub fn dot(a: &Vec3N, b: &Vec3N) -> NfElem {
    (0..3).fold(NfElem::zero(), |acc, i| acc.add_ref(&a[i].mul_ref(&b[i])))
}

/// Exact test of Q^T Q = I.
pub fn check_orthogonal(q: &Mat3) -> bool {
    mat_mul(&transpose(q), q) == identity3()
}

/// a(t) = k (gamma t + delta)^n.
pub(crate) fn scale_factor(phi: &PhiSolution, n: usize) -> Poly<NfElem> {
    Poly::new(vec![phi.delta.clone(), phi.gamma.clone()]).pow(n as u32).scale(&phi.k)
}

/// H(t) = a(t) q(psi(t)), a polynomial vector of degree at most n.
pub fn image_direction(s: &RuledSurface, phi: &PhiSolution) -> [Poly<NfElem>; 3] {
    let num = Poly::new(vec![phi.beta.clone(), phi.alpha.clone()]);
    let den = Poly::new(vec![phi.delta.clone(), phi.gamma.clone()]);
    std::array::from_fn(|i| lift_poly(&s.q[i]).homogenize(&num, &den, s.n).scale(&phi.k))
}

fn p_of_psi(s: &RuledSurface, phi: &PhiSolution) -> [RatFunc<NfElem>; 3] {
    std::array::from_fn(|i| lift_rf(&s.p[i]).compose_mobius(&phi.alpha, &phi.beta, &phi.gamma, &phi.delta))
}

/// Orthogonal matrices Q with Q q(t) = a(t) q(psi(t)). Usually zero or one; a planar
/// q leaves one column direction free, fixed by orthogonality up to det Q = +-1.
pub fn solve_q(s: &RuledSurface, phi: &PhiSolution) -> Vec<Mat3> {
    let h = image_direction(s, phi);
    let rows: Vec<Vec<NfElem>> =
        (0..=s.n).map(|j| (0..3).map(|l| NfElem::rational(s.q[l].coeff(j))).collect()).collect();
    let mut q0: Vec<Vec<NfElem>> = vec![];
    let mut null = vec![];
    for hi in &h {
        let rhs: Vec<NfElem> = (0..=s.n).map(|j| hi.coeff(j)).collect();
        let Some((x, ns)) = solve_linear(&rows, &rhs, 3) else { return vec![] };
        q0.push(x);
        null = ns;
    }
    let q0: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| q0[i][j].clone()));
    let cands = match null.len() {
        0 => vec![q0],
        1 => planar_completions(&q0, &null[0]),
        _ => vec![],
    };
    cands.into_iter().filter(check_orthogonal).collect()
}

fn planar_completions(q0: &Mat3, nv: &[NfElem]) -> Vec<Mat3> {
    let n: Vec3N = [nv[0].clone(), nv[1].clone(), nv[2].clone()];
    let e = (0..3)
        .map(|j| {
            let mut v: Vec3N = std::array::from_fn(|_| NfElem::zero());
            v[j] = NfElem::one();
            cross(&n, &v)
        })
        .find(|u| u.iter().any(|c| !c.is_zero()))
        .unwrap();
    let u = e;
    let v = cross(&n, &u);
    // u x v = |u|^2 n and Q u x Q v = det(Q) Q (u x v)
    let uu = dot(&u, &u);
    let nn = dot(&n, &n);
    let img = cross(&mat_vec(q0, &u), &mat_vec(q0, &v));
    let q0n = mat_vec(q0, &n);
    let mut out = vec![];
    for sign in [1i64, -1] {
        let qn: Vec3N = std::array::from_fn(|i| img[i].mul_ref(&NfElem::from_int(sign)).div_ref(&uu));
        let mu: Vec3N = std::array::from_fn(|i| qn[i].sub_ref(&q0n[i]).div_ref(&nn));
        out.push(std::array::from_fn(|i| std::array::from_fn(|j| q0[i][j].add_ref(&mu[i].mul_ref(&n[j])))));
    }
    out
}

/// L(t) = Q p(t) - p(psi(t)).
fn defect(s: &RuledSurface, phi: &PhiSolution, q: &Mat3) -> [RatFunc<NfElem>; 3] {
    let p: [RatFunc<NfElem>; 3] = std::array::from_fn(|i| lift_rf(&s.p[i]));
    let pp = p_of_psi(s, phi);
    std::array::from_fn(|i| {
        let qp = (0..3).fold(RatFunc::zero(), |acc: RatFunc<NfElem>, l| acc.add(&p[l].scale(&q[i][l])));
        qp.sub(&pp[i])
    })
}

/// Translation b from the pairwise eliminations of c(t), by coefficient matching.
pub fn solve_b(s: &RuledSurface, phi: &PhiSolution, q: &Mat3) -> Option<Vec3N> {
    if s.p_is_zero() {
        return Some(std::array::from_fn(|_| NfElem::zero()));
    }
    let h = image_direction(s, phi);
    let l = defect(s, phi, q);
    let mut rows = vec![];
    let mut rhs = vec![];
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        // b_i H_j - b_j H_i = L_j H_i - L_i H_j
        let hi = RatFunc::from_poly(h[i].clone());
        let hj = RatFunc::from_poly(h[j].clone());
        let r = l[j].mul(&hi).sub(&l[i].mul(&hj));
        let d = r.den().clone();
        let ci = h[j].mul(&d);
        let cj = h[i].mul(&d).neg();
        let deg = [ci.deg(), cj.deg(), r.num().deg()].into_iter().max().unwrap();
        for k in 0..=deg {
            let mut row = vec![NfElem::zero(); 3];
            row[i] = ci.coeff(k);
            row[j] = cj.coeff(k);
            rows.push(row);
            rhs.push(r.num().coeff(k));
        }
    }
    let (x, null) = solve_linear(&rows, &rhs, 3)?;
    if !null.is_empty() {
        // only possible for a constant image direction, i.e. a cylinder
        return None;
    }
    Some([x[0].clone(), x[1].clone(), x[2].clone()])
}

/// c(t) with Q p + b = p(psi) + c q(psi) holding in all three components.
pub fn recover_c(s: &RuledSurface, phi: &PhiSolution, q: &Mat3, b: &Vec3N) -> Option<RatFunc<NfElem>> {
    if s.p_is_zero() && b.iter().all(|x| x.is_zero()) {
        return Some(RatFunc::zero());
    }
    let h = image_direction(s, phi);
    let a = RatFunc::from_poly(scale_factor(phi, s.n));
    let l = defect(s, phi, q);
    let lb: [RatFunc<NfElem>; 3] = std::array::from_fn(|i| l[i].add(&RatFunc::constant(b[i].clone())));
    let i = (0..3).find(|&i| !h[i].is_zero())?;
    let c = lb[i].mul(&a).div(&RatFunc::from_poly(h[i].clone()));
    let ok = (0..3).all(|j| lb[j].mul(&a) == c.mul(&RatFunc::from_poly(h[j].clone())));
    ok.then_some(c)
}

/// Q x(t, s) + b - x(phi(t, s)) vanishes identically, with phi(t, s) = (psi(t), a(t) s + c(t)).
/// Uses the rational-function composition rather than the homogenised form.
pub fn verify_symmetry(s: &RuledSurface, phi: &PhiSolution, q: &Mat3, b: &Vec3N, c: &RatFunc<NfElem>) -> bool {
    let p: [RatFunc<NfElem>; 3] = std::array::from_fn(|i| lift_rf(&s.p[i]));
    let qd: [RatFunc<NfElem>; 3] = std::array::from_fn(|i| RatFunc::from_poly(lift_poly(&s.q[i])));
    let comp = |f: &RatFunc<NfElem>| f.compose_mobius(&phi.alpha, &phi.beta, &phi.gamma, &phi.delta);
    let a = RatFunc::from_poly(scale_factor(phi, s.n));
    (0..3).all(|i| {
        let lin = |v: &[RatFunc<NfElem>; 3]| (0..3).fold(RatFunc::zero(), |acc: RatFunc<NfElem>, l| acc.add(&v[l].scale(&q[i][l])));
        // s^1 part
        let s1 = lin(&qd).sub(&a.mul(&comp(&qd[i])));
        // s^0 part
        let s0 = lin(&p).add(&RatFunc::constant(b[i].clone())).sub(&comp(&p[i])).sub(&c.mul(&comp(&qd[i])));
        s1.is_zero() && s0.is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_cross() {
        let m: Mat3 = [[0, 1, 0], [-1, 0, 0], [0, 0, 1]].map(|r| r.map(NfElem::from_int));
        assert_eq!(det3(&m), NfElem::one());
        assert!(check_orthogonal(&m));
        let d: Mat3 = [[2, 0, 0], [0, 1, 0], [0, 0, 1]].map(|r| r.map(NfElem::from_int));
        assert!(!check_orthogonal(&d));
        let x = [1, 0, 0].map(NfElem::from_int);
        let y = [0, 1, 0].map(NfElem::from_int);
        assert_eq!(cross(&x, &y), [0, 0, 1].map(NfElem::from_int));
    }
}
