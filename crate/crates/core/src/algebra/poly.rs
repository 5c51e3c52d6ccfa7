use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::field::{Field, Rational};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    c: Vec<F>,
}

pub type UniPoly = Poly<Rational>;

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }
    pub fn zero() -> Self {
        Poly { c: vec![] }
    }
    pub fn one() -> Self {
        Poly::constant(F::one())
    }
    pub fn constant(a: F) -> Self {
        Poly::new(vec![a])
    }
    pub fn x() -> Self {
        Poly { c: vec![F::zero(), F::one()] }
    }
    /// a*x^k
    pub fn monomial(a: F, k: usize) -> Self {
        let mut c = vec![F::zero(); k + 1];
        c[k] = a;
        Poly::new(c)
    }
    pub fn from_ints(v: &[i64]) -> Self {
        Poly::new(v.iter().map(|&n| F::from_int(n)).collect())
    }
    pub fn coeffs(&self) -> &[F] {
        &self.c
    }
    pub fn into_coeffs(self) -> Vec<F> {
        self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    /// Degree; the zero polynomial reports 0 (check `is_zero` separately).
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero)
    }
    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(F::zero)
    }
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(f).collect())
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new(
            (0..n)
                .map(|i| match (self.c.get(i), o.c.get(i)) {
                    (Some(a), Some(b)) => a.add_ref(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    _ => unreachable!(),
                })
                .collect(),
        )
    }
    pub fn neg(&self) -> Self {
        Poly { c: self.c.iter().map(|a| a.neg_ref()).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    r[i + j] = r[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Poly::new(r)
    }
    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| x.mul_ref(a)).collect() }
    }
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![F::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul_ref(x).add_ref(a);
        }
        acc
    }
    /// self(g(x))
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(a.clone()));
        }
        acc
    }
    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.mul_ref(&F::from_int(i as i64)))
                .collect(),
        )
    }
    /// Coefficient list of self(x + a).
    pub fn taylor_shift(&self, a: &F) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].mul_ref(a);
                c[j] = c[j].add_ref(&t);
            }
        }
        Poly::new(c)
    }
    /// Homogenised substitution: sum a_j (num)^j (den)^(deg - j) with the given total degree.
    pub fn homogenize(&self, num: &Self, den: &Self, total: usize) -> Self {
        let mut acc = Poly::zero();
        let mut np = Poly::one();
        let denp: Vec<Self> = {
            let mut v = vec![Poly::one()];
            for _ in 0..total {
                let last = v.last().unwrap().mul(den);
                v.push(last);
            }
            v
        };
        for (j, a) in self.c.iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&np.mul(&denp[total - j]).scale(a));
            }
            np = np.mul(num);
        }
        acc
    }
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lc().inv();
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let mut q = vec![F::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let f = r[i + dd].mul_ref(&inv);
            if f.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                r[i + j] = r[i + j].sub_ref(&f.mul_ref(b));
            }
            q[i] = f;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }
    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }
    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }
    pub fn divides(&self, o: &Self) -> bool {
        o.rem(self).is_zero()
    }
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().inv())
    }
    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd_euclid(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
    /// Returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }
    /// Resultant over the field via the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Self) -> F {
        if self.is_zero() || o.is_zero() {
            return F::zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = F::one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return acc.mul_ref(&b.lc().pow(da as u32));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return F::zero();
            }
            let dr = r.deg();
            if (da * db) % 2 == 1 {
                acc = acc.neg_ref();
            }
            acc = acc.mul_ref(&b.lc().pow((da - dr) as u32));
            a = b;
            b = r;
        }
    }
}

impl<F: Field> Poly<F> {
    /// Square-free part (monic), via gcd with the derivative. Characteristic zero.
    pub fn squarefree_part_field(&self) -> Self {
        if self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd_euclid(&self.derivative());
        self.exact_div(&g).monic()
    }
}

// Rational specialisations: gcd over Z keeps coefficient growth in check.
impl Poly<Rational> {
    /// Content-free integer polynomial with positive leading coefficient, and the
    /// rational factor c with self = c * result.
    pub fn to_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), vec![]);
        }
        let mut l = BigInt::from(1);
        for a in &self.c {
            l = l.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for a in &ints {
            g = g.gcd(a);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|a| a / &g).collect();
        (Rational::new(g, l), prim)
    }
    pub fn from_bigints(v: &[BigInt]) -> Self {
        Poly::new(v.iter().map(|a| Rational::from_integer(a.clone())).collect())
    }
    pub fn primitive(&self) -> Self {
        Poly::from_bigints(&self.to_primitive().1)
    }
    /// Monic gcd over Q computed with a primitive remainder sequence over Z.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let mut a = self.to_primitive().1;
        let mut b = o.to_primitive().1;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_prem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        Poly::from_bigints(&a).monic()
    }
    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }
    /// Yun's square-free decomposition: pairs (factor, multiplicity), factors monic.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = vec![];
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.exact_div(&a);
        let mut c = fp.exact_div(&a);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.deg() > 0 {
            a = b.gcd(&d);
            b = b.exact_div(&a);
            c = d.exact_div(&a);
            d = c.sub(&b.derivative());
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            i += 1;
        }
        out
    }
    /// Removes from self every irreducible factor it shares with `o`.
    pub fn strip_common(&self, o: &Self) -> Self {
        let mut f = self.clone();
        loop {
            let g = f.gcd(o);
            if g.deg() == 0 {
                return f;
            }
            f = f.exact_div(&g);
        }
    }
}

/// Pseudo-remainder over Z.
pub(crate) fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() >= b.len() {
        let lr = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &lr * bj;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

pub(crate) fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for a in &v {
        g = g.gcd(a);
        if g == BigInt::from(1) {
            break;
        }
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.iter().map(|a| a / &g).collect()
}

impl<F: Field + fmt::Display> Poly<F> {
    /// Human-readable form in the given variable, highest degree first.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let txt = a.to_string();
            let (neg, body) = match txt.strip_prefix('-') {
                Some(b) if !b.contains(['+', '-']) => (true, b.to_string()),
                _ => (false, txt.clone()),
            };
            let body = if body.contains(['+', '-']) { format!("({body})") } else { body };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&body);
            } else if body == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{body}*{mono}"));
            }
        }
        s
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}
