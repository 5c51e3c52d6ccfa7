//! Factorization of polynomials over Q.
//!
//! A single prime larger than the coefficient bound of any factor is used, so no
//! Hensel lifting is needed: factor mod p (Cantor-Zassenhaus), then recombine.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;

use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Rational;
use super::poly::UniPoly;

/// Irreducible factors of a nonzero polynomial over Q with multiplicities.
/// Factors are primitive integer polynomials with positive leading coefficient.
pub fn factor(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = vec![];
    for (g, m) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.0.coeffs().to_vec()).partial_cmp(&(b.0.deg(), b.0.coeffs().to_vec())).unwrap());
    out
}

/// Irreducible factors of a square-free polynomial over Q.
pub fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    if f.deg() == 0 {
        return vec![];
    }
    let mut g = f.to_primitive().1;
    let mut out = vec![];
    // strip powers of x first; cheap and keeps the prime search simple
    if g[0].is_zero() {
        let k = g.iter().position(|a| !a.is_zero()).unwrap();
        g.drain(..k);
        out.push(UniPoly::from_bigints(&[BigInt::zero(), BigInt::one()]));
    }
    if g.len() > 1 {
        for h in zassenhaus(&g) {
            out.push(UniPoly::from_bigints(&h));
        }
    }
    out
}

fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let norm2: BigInt = f.iter().map(|a| a * a).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * (norm2.sqrt() + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let p = loop {
        let cand = next_prime(&(&bound + random_below(&bound, &mut rng)), &mut rng);
        if (&lc % &cand).is_zero() {
            continue;
        }
        let fp = ModPoly::from_ints(f, &cand);
        let d = fp.derivative();
        if fp.gcd(&d).deg() == 0 {
            break cand;
        }
    };
    let fm = ModPoly::from_ints(f, &p).monic();
    let mut modular = vec![];
    for (g, d) in distinct_degree(&fm) {
        equal_degree(&g, d, &mut rng, &mut modular);
    }
    recombine(f.to_vec(), modular, &p)
}

fn recombine(mut f: Vec<BigInt>, mut facs: Vec<ModPoly>, p: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = vec![];
    let mut s = 1;
    while 2 * s <= facs.len() {
        let mut found = false;
        for subset in combinations(facs.len(), s) {
            let lc = f.last().unwrap().clone();
            let mut prod = ModPoly::constant(lc.clone(), p);
            for &i in &subset {
                prod = prod.mul(&facs[i]);
            }
            let cand = super::poly::int_primitive(prod.symmetric());
            if cand.len() < 2 {
                continue;
            }
            let fq = UniPoly::from_bigints(&f);
            let cq = UniPoly::from_bigints(&cand);
            let (q, r) = fq.div_rem(&cq);
            if r.is_zero() && q.coeffs().iter().all(|a| a.is_integer()) {
                out.push(cand);
                f = q.coeffs().iter().map(|a| a.to_integer()).collect();
                let keep: Vec<ModPoly> = facs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                facs = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    let f = super::poly::int_primitive(f);
    if f.len() > 1 {
        out.push(f);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut cur = vec![];
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn random_below(m: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    let words = m.bits() / 32 + 2;
    let mut acc = BigInt::zero();
    for _ in 0..words {
        acc = (acc << 32) + BigInt::from(rng.next_u32());
    }
    acc.mod_floor(m)
}

fn is_probable_prime(n: &BigInt, rng: &mut ChaCha8Rng) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for sp in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let sp = BigInt::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - 1;
    let mut d = nm1.clone();
    let mut r = 0;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'witness: for _ in 0..24 {
        let a: BigInt = random_below(&(n - 3), rng) + 2;
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn next_prime(start: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    let mut c = start.clone();
    if c.is_even() {
        c += 1;
    }
    while !is_probable_prime(&c, rng) {
        c += 2;
    }
    c
}

/// Polynomial over Z/p, ascending, entries in [0, p).
#[derive(Clone, Debug, PartialEq)]
struct ModPoly {
    c: Vec<BigInt>,
    p: BigInt,
}

impl ModPoly {
    fn new(mut c: Vec<BigInt>, p: &BigInt) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ModPoly { c, p: p.clone() }
    }
    fn from_ints(v: &[BigInt], p: &BigInt) -> Self {
        ModPoly::new(v.iter().map(|a| a.mod_floor(p)).collect(), p)
    }
    fn constant(a: BigInt, p: &BigInt) -> Self {
        ModPoly::new(vec![a.mod_floor(p)], p)
    }
    fn x(p: &BigInt) -> Self {
        ModPoly::new(vec![BigInt::zero(), BigInt::one()], p)
    }
    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn inv(&self, a: &BigInt) -> BigInt {
        let e = a.extended_gcd(&self.p);
        e.x.mod_floor(&self.p)
    }
    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let i = self.inv(self.c.last().unwrap());
        ModPoly::new(self.c.iter().map(|a| (a * &i) % &self.p).collect(), &self.p)
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = BigInt::zero();
        ModPoly::new(
            (0..n)
                .map(|i| (self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z)).mod_floor(&self.p))
                .collect(),
            &self.p,
        )
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ModPoly::new(vec![], &self.p);
        }
        let mut r = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        ModPoly::new(r.into_iter().map(|a| a % &self.p).collect(), &self.p)
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = &self.p;
        if self.c.len() < d.c.len() {
            return (ModPoly::new(vec![], p), self.clone());
        }
        let inv = self.inv(d.c.last().unwrap());
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = (&r[i + dd] * &inv) % p;
            if f.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[i + j] = (&r[i + j] - &f * b).mod_floor(p);
            }
            q[i] = f;
        }
        r.truncate(dd);
        (ModPoly::new(q, p), ModPoly::new(r, p))
    }
    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
    fn derivative(&self) -> Self {
        ModPoly::new(
            self.c.iter().enumerate().skip(1).map(|(i, a)| (a * BigInt::from(i)) % &self.p).collect(),
            &self.p,
        )
    }
    fn powmod(&self, e: &BigInt, m: &Self) -> Self {
        let mut acc = ModPoly::constant(BigInt::one(), &self.p);
        let base = self.rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }
    fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.p >> 1;
        self.c.iter().map(|a| if *a > half { a - &self.p } else { a.clone() }).collect()
    }
}

fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p.clone();
    let mut out = vec![];
    let mut f = f.clone();
    let x = ModPoly::x(&p);
    let mut h = x.clone();
    let mut i = 0;
    while f.deg() >= 2 * (i + 1) {
        i += 1;
        h = h.powmod(&p, &f);
        let g = h.sub(&x).gcd(&f);
        if g.deg() > 0 {
            f = f.div_rem(&g).0;
            h = h.rem(&f);
            out.push((g, i));
        }
    }
    if f.deg() > 0 {
        let d = f.deg();
        out.push((f.monic(), d));
    }
    out
}

fn equal_degree(g: &ModPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    if g.deg() == d {
        out.push(g.clone());
        return;
    }
    let p = g.p.clone();
    let e: BigInt = (p.pow(d as u32) - 1) >> 1;
    loop {
        let a = ModPoly::new((0..g.deg()).map(|_| random_below(&p, rng)).collect(), &p);
        if a.deg() == 0 {
            continue;
        }
        let b = a.powmod(&e, g).sub(&ModPoly::constant(BigInt::one(), &p));
        let h = b.gcd(g);
        if h.deg() > 0 && h.deg() < g.deg() {
            let other = g.div_rem(&h).0.monic();
            equal_degree(&h, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

/// Integer square root helper exposed for callers needing exact checks.
pub fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, if it exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let a = is_square(r.numer())?;
    let b = is_square(r.denom())?;
    Some(Rational::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UniPoly {
        UniPoly::from_ints(v)
    }

    fn product(fs: &[(UniPoly, u32)]) -> UniPoly {
        fs.iter().fold(UniPoly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    #[test]
    fn factors_product_of_known_irreducibles() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-3, 0, 1]);
        let c = p(&[1, -4, 0, 0, 0, 7]);
        let d = p(&[-1, 2]);
        let f = a.mul(&b).mul(&c).mul(&d).mul(&d);
        let fs = factor(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(product(&fs).monic(), f.monic());
        assert!(fs.iter().any(|(g, m)| *g == d && *m == 2));
    }

    #[test]
    fn swinnerton_dyer_style_polynomial_stays_whole() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        let f = p(&[1, 0, -10, 0, 1]);
        let fs = factor(&f);
        assert_eq!(fs, vec![(f, 1)]);
    }

    #[test]
    fn cyclotomic_split() {
        // x^12 - 1 = product of Phi_d for d | 12: six factors
        let mut v = vec![0i64; 13];
        v[0] = -1;
        v[12] = 1;
        let fs = factor(&p(&v));
        assert_eq!(fs.len(), 6);
        assert_eq!(product(&fs), p(&v));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&Rational::new(9.into(), 64.into())), Some(Rational::new(3.into(), 8.into())));
        assert_eq!(rational_sqrt(&Rational::new(3.into(), 1.into())), None);
    }
}
