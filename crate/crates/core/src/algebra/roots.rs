use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factor_squarefree;
use super::field::{rat_to_string, to_decimal, Rational};
use super::poly::UniPoly;

/// Real algebraic number: irreducible primitive integer polynomial plus an
/// isolating interval. Rational numbers carry a degenerate interval.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    poly: UniPoly,
    lo: Rational,
    hi: Rational,
}

fn sign_at(f: &UniPoly, x: &Rational) -> i32 {
    let v = f.eval(x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

impl AlgebraicNumber {
    pub fn from_rational(r: Rational) -> Self {
        let poly = UniPoly::new(vec![-r.clone(), Rational::one()]).primitive();
        AlgebraicNumber { poly, lo: r.clone(), hi: r }
    }
    /// Builds from an irreducible polynomial and an interval that isolates one of its roots
    /// with a strict sign change. Degree-one polynomials may pass any interval.
    pub fn from_isolating(poly: &UniPoly, lo: Rational, hi: Rational) -> Self {
        let poly = poly.primitive();
        if poly.deg() == 1 {
            let r = -poly.coeff(0) / poly.coeff(1);
            return AlgebraicNumber::from_rational(r);
        }
        debug_assert!(sign_at(&poly, &lo) * sign_at(&poly, &hi) < 0);
        AlgebraicNumber { poly, lo, hi }
    }
    pub fn minimal_poly(&self) -> &UniPoly {
        &self.poly
    }
    pub fn degree(&self) -> usize {
        self.poly.deg()
    }
    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.poly.deg() == 1).then_some(&self.lo)
    }
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
    /// Bisects until the interval width is at most `w`.
    pub fn refine(&mut self, w: &Rational) {
        if self.poly.deg() == 1 {
            return;
        }
        let slo = sign_at(&self.poly, &self.lo);
        while self.width() > *w {
            let mid = (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2));
            let s = sign_at(&self.poly, &mid);
            debug_assert!(s != 0);
            if s == slo {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }
    pub fn refine_bits(&mut self, bits: u32) {
        let w = Rational::new(BigInt::one(), BigInt::one() << bits);
        self.refine(&w);
    }
    pub fn sign(&self) -> i32 {
        if let Some(r) = self.as_rational() {
            return if r.is_zero() { 0 } else if r.is_positive() { 1 } else { -1 };
        }
        let mut a = self.clone();
        loop {
            if a.lo >= Rational::zero() {
                return 1;
            }
            if a.hi <= Rational::zero() {
                return -1;
            }
            let w = a.width() / Rational::from_integer(BigInt::from(4));
            a.refine(&w);
        }
    }
    pub fn to_f64(&self) -> f64 {
        let mut a = self.clone();
        a.refine_bits(60);
        super::field::to_f64(&a.lo)
    }
    /// Decimal approximation with `digits` fractional digits.
    pub fn approx(&self, digits: usize) -> String {
        if let Some(r) = self.as_rational() {
            return to_decimal(r, digits);
        }
        let mut a = self.clone();
        a.refine_bits((digits as f64 * 3.33) as u32 + 8);
        to_decimal(&a.lo, digits)
    }
    pub fn neg(&self) -> Self {
        let c: Vec<Rational> = self
            .poly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
            .collect();
        let poly = UniPoly::new(c).primitive();
        if self.poly.deg() == 1 {
            return AlgebraicNumber::from_rational(-&self.lo);
        }
        AlgebraicNumber { poly, lo: -&self.hi, hi: -&self.lo }
    }
    /// Exact comparison.
    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), o.as_rational()) {
            return a.cmp(b);
        }
        if self.poly == o.poly {
            let lo = (&self.lo).min(&o.lo).clone();
            let hi = (&self.hi).max(&o.hi).clone();
            if sturm_count(&self.poly, &lo, &hi) == 1 {
                return Ordering::Equal;
            }
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            // a rational value inside the other interval: test it directly
            if let Some(r) = a.as_rational() {
                if sign_at(&b.poly, r) == 0 {
                    return Ordering::Equal;
                }
            }
            if let Some(r) = b.as_rational() {
                if sign_at(&a.poly, r) == 0 {
                    return Ordering::Equal;
                }
            }
            if a.poly == b.poly {
                let lo = (&a.lo).min(&b.lo).clone();
                let hi = (&a.hi).max(&b.hi).clone();
                if sturm_count(&a.poly, &lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
            let two = Rational::from_integer(BigInt::from(2));
            let wa = a.width() / &two;
            let wb = b.width() / &two;
            a.refine(&wa);
            b.refine(&wb);
        }
    }
    /// Minimal polynomial rendered in x.
    pub fn poly_string(&self) -> String {
        self.poly.to_string_var("x")
    }
    pub fn to_json(&self) -> NumberJson {
        match self.as_rational() {
            Some(r) => NumberJson::Rat { rat: rat_to_string(r) },
            None => {
                let mut a = self.clone();
                a.refine_bits(64);
                NumberJson::Alg {
                    minpoly: self.poly_string(),
                    interval: [rat_to_string(&a.lo), rat_to_string(&a.hi)],
                    approx: self.approx(30),
                }
            }
        }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_exact(o) == Ordering::Equal
    }
}

/// JSON encoding of an exact real number.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum NumberJson {
    Rat { rat: String },
    Alg { minpoly: String, interval: [String; 2], approx: String },
}

/// Sturm sequence of a polynomial.
pub fn sturm_sequence(f: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r.primitive_signed());
    }
    seq.retain(|p| !p.is_zero());
    seq
}

trait PrimSigned {
    fn primitive_signed(&self) -> Self;
}

impl PrimSigned for UniPoly {
    /// Primitive part that keeps the sign of the leading coefficient.
    fn primitive_signed(&self) -> Self {
        let neg = self.lc().is_negative();
        let p = self.primitive();
        if neg {
            p.neg()
        } else {
            p
        }
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sign_at_inf(f: &UniPoly, positive: bool) -> i32 {
    let s = if f.lc().is_positive() { 1 } else { -1 };
    if positive || f.deg().is_multiple_of(2) {
        s
    } else {
        -s
    }
}

/// Number of distinct real roots in (a, b].
pub fn sturm_count(f: &UniPoly, a: &Rational, b: &Rational) -> usize {
    let seq = sturm_sequence(f);
    let va = variations(seq.iter().map(|p| sign_at(p, a)));
    let vb = variations(seq.iter().map(|p| sign_at(p, b)));
    va.saturating_sub(vb)
}

/// Number of distinct real roots.
pub fn sturm_count_all(f: &UniPoly) -> usize {
    if f.deg() == 0 {
        return 0;
    }
    let seq = sturm_sequence(f);
    let vm = variations(seq.iter().map(|p| sign_at_inf(p, false)));
    let vp = variations(seq.iter().map(|p| sign_at_inf(p, true)));
    vm - vp
}

/// Isolating intervals for the real roots of a square-free integer polynomial.
/// Returns exact rational roots separately from open intervals.
pub fn isolate_squarefree(f: &UniPoly) -> (Vec<Rational>, Vec<(Rational, Rational)>) {
    let mut exact = vec![];
    let mut ivs = vec![];
    let mut g = f.to_primitive().1;
    if g.len() <= 1 {
        return (exact, ivs);
    }
    if g[0].is_zero() {
        exact.push(Rational::zero());
        g.remove(0);
    }
    if g.len() <= 1 {
        return (exact, ivs);
    }
    // Cauchy bound rounded up to a power of two
    let n = g.len() - 1;
    let lc = g[n].abs();
    let mut maxr = Rational::zero();
    for a in &g[..n] {
        let r = Rational::new(a.abs(), lc.clone());
        if r > maxr {
            maxr = r;
        }
    }
    let bound = maxr + Rational::one();
    let mut k = 0u32;
    while Rational::from_integer(BigInt::one() << k) < bound {
        k += 1;
    }
    let m = BigInt::one() << k;
    for negative in [false, true] {
        // h(x) = f(+-M x)
        let mut h: Vec<BigInt> = g.clone();
        let mut pw = BigInt::one();
        for (i, a) in h.iter_mut().enumerate() {
            *a *= &pw;
            if negative && i % 2 == 1 {
                *a = -a.clone();
            }
            pw *= &m;
        }
        let mut roots_unit = vec![];
        vca(h, BigInt::zero(), 0, &mut roots_unit, &mut exact, &m, negative);
        for (c, kk) in roots_unit {
            let den = BigInt::one() << kk;
            let a = Rational::new(&c * &m, den.clone());
            let b = Rational::new((&c + 1) * &m, den);
            if negative {
                ivs.push((-b, -a));
            } else {
                ivs.push((a, b));
            }
        }
    }
    (exact, ivs)
}

fn descartes_unit(h: &[BigInt]) -> usize {
    // sign variations of (x+1)^n h(1/(x+1))
    let mut r: Vec<BigInt> = h.iter().rev().cloned().collect();
    let n = r.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = r[j + 1].clone();
            r[j] += t;
        }
    }
    variations(r.iter().map(|a| if a.is_zero() { 0 } else if a.is_positive() { 1 } else { -1 }))
}

fn taylor1(h: &[BigInt]) -> Vec<BigInt> {
    let mut r = h.to_vec();
    let n = r.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = r[j + 1].clone();
            r[j] += t;
        }
    }
    r
}

#[allow(clippy::too_many_arguments)]
fn vca(
    h: Vec<BigInt>,
    c: BigInt,
    k: u32,
    out: &mut Vec<(BigInt, u32)>,
    exact: &mut Vec<Rational>,
    m: &BigInt,
    negative: bool,
) {
    let v = descartes_unit(&h);
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push((c, k));
        return;
    }
    let n = h.len() - 1;
    // left half: 2^n h(x/2)
    let mut left: Vec<BigInt> = h.iter().enumerate().map(|(i, a)| a << (n - i)).collect();
    let mut right = taylor1(&left);
    if right[0].is_zero() {
        // exact root at the midpoint
        let mid = Rational::new((BigInt::from(2) * &c + 1) * m, BigInt::one() << (k + 1));
        exact.push(if negative { -mid } else { mid });
        right.remove(0);
        // deflate the left copy by (x - 1)
        let lq = UniPoly::from_bigints(&left).exact_div(&UniPoly::from_ints(&[-1, 1]));
        left = lq.to_primitive().1;
    }
    let c2: BigInt = &c * 2;
    vca(left, c2.clone(), k + 1, out, exact, m, negative);
    vca(right, c2 + 1, k + 1, out, exact, m, negative);
}

/// All real roots of a nonzero polynomial, ascending, each with its minimal polynomial.
pub fn real_roots(f: &UniPoly) -> Vec<AlgebraicNumber> {
    let mut out = vec![];
    if f.deg() == 0 {
        return out;
    }
    for g in factor_squarefree(&f.squarefree_part()) {
        if g.deg() == 1 {
            out.push(AlgebraicNumber::from_rational(-g.coeff(0) / g.coeff(1)));
            continue;
        }
        let (ex, ivs) = isolate_squarefree(&g);
        debug_assert!(ex.is_empty());
        for (a, b) in ivs {
            out.push(AlgebraicNumber::from_isolating(&g, a, b));
        }
    }
    sort_algebraic(&mut out);
    out
}

pub fn sort_algebraic(v: &mut [AlgebraicNumber]) {
    v.sort_by(|a, b| a.cmp_exact(b));
}

/// Rational roots of a nonzero polynomial, ascending.
pub fn rational_roots(f: &UniPoly) -> Vec<Rational> {
    real_roots(f).into_iter().filter_map(|a| a.as_rational().cloned()).collect()
}
