use num_traits::{One, Zero};

use crate::algebra::{MultiPoly, Rational, UniPoly};

/// Variable indices of the Moebius system.
pub const ALPHA: usize = 0;
pub const BETA: usize = 1;
pub const GAMMA: usize = 2;
pub const DELTA: usize = 3;
pub const K: usize = 4;
pub const NVARS: usize = 5;
pub const VAR_NAMES: [&str; NVARS] = ["alpha", "beta", "gamma", "delta", "k"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// gamma = 0, delta = 1
    Gamma0,
    /// gamma = 1
    Gamma1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiMode {
    All,
    /// alpha = -delta and k^2 (gamma beta + delta^2)^n = 1
    InvolutionsI,
    /// beta = gamma = 0, alpha = delta = 1, k^2 = 1
    InvolutionsII,
}

/// Coefficient equations of ||q(t)||^2 - k^2 (gamma t + delta)^(2n) ||q(psi(t))||^2 = 0.
#[derive(Clone, Debug)]
pub struct PhiSystem {
    pub branch: Branch,
    pub mode: PhiMode,
    pub n: usize,
    pub unknowns: Vec<usize>,
    pub equations: Vec<MultiPoly<Rational>>,
    /// ||q||^2, kept for the structured solver.
    pub norm: UniPoly,
}

fn c(v: i64) -> MultiPoly<Rational> {
    MultiPoly::constant(NVARS + 1, Rational::from_integer(v.into()))
}

fn var(i: usize) -> MultiPoly<Rational> {
    MultiPoly::var(NVARS + 1, i)
}

/// Builds the system for one branch; returns None when the mode does not apply to it.
pub fn build_system(q: &[UniPoly; 3], n: usize, branch: Branch, mode: PhiMode) -> Option<PhiSystem> {
    let norm = q.iter().fold(UniPoly::zero(), |a, c| a.add(&c.mul(c)));
    let d = 2 * n;
    let t = var(NVARS);
    let (g, dl) = match branch {
        Branch::Gamma0 => (c(0), c(1)),
        Branch::Gamma1 => (c(1), var(DELTA)),
    };
    let (a, b, unknowns) = match (mode, branch) {
        (PhiMode::All, Branch::Gamma0) => (var(ALPHA), var(BETA), vec![ALPHA, BETA, K]),
        (PhiMode::All, Branch::Gamma1) => (var(ALPHA), var(BETA), vec![ALPHA, BETA, DELTA, K]),
        (PhiMode::InvolutionsI, Branch::Gamma0) => (c(-1), var(BETA), vec![BETA, K]),
        (PhiMode::InvolutionsI, Branch::Gamma1) => (dl.neg(), var(BETA), vec![BETA, DELTA, K]),
        (PhiMode::InvolutionsII, Branch::Gamma0) => (c(1), c(0), vec![K]),
        (PhiMode::InvolutionsII, Branch::Gamma1) => return None,
    };
    let num = a.mul(&t).add(&b);
    let den = g.mul(&t).add(&dl);
    let mut h = MultiPoly::zero(NVARS + 1);
    let mut np = MultiPoly::one(NVARS + 1);
    let mut dps = vec![MultiPoly::one(NVARS + 1)];
    for _ in 0..d {
        let nx = dps.last().unwrap().mul(&den);
        dps.push(nx);
    }
    for j in 0..=d {
        let pj = norm.coeff(j);
        if !pj.is_zero() {
            h = h.add(&np.mul(&dps[d - j]).scale(&pj));
        }
        np = np.mul(&num);
    }
    let k2 = var(K).mul(&var(K));
    let lhs = MultiPoly::from_univariate(&norm, NVARS, NVARS + 1).sub(&k2.mul(&h));
    let mut equations: Vec<MultiPoly<Rational>> =
        lhs.coeffs_in(NVARS).into_iter().filter(|e| !e.is_zero()).map(|e| e.truncate_vars(NVARS)).collect();
    match mode {
        PhiMode::All => {}
        PhiMode::InvolutionsI => {
            let inner = g.mul(&b).add(&dl.mul(&dl));
            equations.push(k2.mul(&inner.pow(n as u32)).sub(&c(1)).truncate_vars(NVARS));
        }
        PhiMode::InvolutionsII => equations.push(k2.sub(&c(1)).truncate_vars(NVARS)),
    }
    Some(PhiSystem { branch, mode, n, unknowns, equations, norm })
}

impl PhiSystem {
    /// Readable dump of the system for debugging.
    pub fn dump(&self) -> String {
        let mut s = format!("branch {:?}, mode {:?}, unknowns {:?}\n", self.branch, self.mode, self.unknowns.iter().map(|&v| VAR_NAMES[v]).collect::<Vec<_>>());
        for (i, e) in self.equations.iter().enumerate() {
            s.push_str(&format!("  E{i}: {} = 0\n", e.to_string_vars(&VAR_NAMES)));
        }
        s
    }
    /// Values fixed by branch and mode, as (variable, value) pairs.
    pub fn fixed(&self) -> Vec<(usize, Rational)> {
        let one = Rational::one();
        let zero = Rational::zero();
        let mut v = vec![];
        match self.branch {
            Branch::Gamma0 => {
                v.push((GAMMA, zero.clone()));
                v.push((DELTA, one.clone()));
            }
            Branch::Gamma1 => v.push((GAMMA, one.clone())),
        }
        match (self.mode, self.branch) {
            (PhiMode::InvolutionsI, Branch::Gamma0) => v.push((ALPHA, -one.clone())),
            (PhiMode::InvolutionsII, _) => {
                v.push((ALPHA, one.clone()));
                v.push((BETA, zero));
            }
            _ => {}
        }
        v
    }
}

impl std::fmt::Display for PhiSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.dump())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn identity_satisfies_both_branch_zero_system() {
        let q = [UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[1, 0, 1]), UniPoly::from_ints(&[2])];
        let s = build_system(&q, 2, Branch::Gamma0, PhiMode::All).unwrap();
        let pt = [rat(1), rat(0), rat(0), rat(1), rat(1)];
        assert!(s.equations.iter().all(|e| e.eval(&pt).is_zero()));
        let pt2 = [rat(1), rat(0), rat(0), rat(1), rat(2)];
        assert!(!s.equations.iter().all(|e| e.eval(&pt2).is_zero()));
    }

    #[test]
    fn involution_case_two_only_on_branch_zero() {
        let q = [UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[1]), UniPoly::from_ints(&[0, 0, 1])];
        assert!(build_system(&q, 2, Branch::Gamma1, PhiMode::InvolutionsII).is_none());
        let s = build_system(&q, 2, Branch::Gamma0, PhiMode::InvolutionsII).unwrap();
        assert_eq!(s.unknowns, vec![K]);
        assert!(s.dump().contains("k^2"));
    }
}
