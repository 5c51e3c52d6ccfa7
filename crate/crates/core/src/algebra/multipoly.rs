use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

/// Sparse polynomial in a fixed number of variables. Exponent vectors compare
/// lexicographically, which is the monomial order used for division.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }
    pub fn constant(nvars: usize, a: F) -> Self {
        let mut p = Self::zero(nvars);
        if !a.is_zero() {
            p.terms.insert(vec![0; nvars], a);
        }
        p
    }
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::term(m, F::one())
    }
    pub fn term(m: Monomial, a: F) -> Self {
        let mut p = Self::zero(m.len());
        if !a.is_zero() {
            p.terms.insert(m, a);
        }
        p
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }
    pub fn constant_term(&self) -> F {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(F::zero)
    }
    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }
    fn add_term(&mut self, m: Monomial, a: F) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c = c.add_ref(&a);
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, a);
            }
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, a) in &o.terms {
            r.add_term(m.clone(), a.clone());
        }
        r
    }
    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.neg_ref())).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, a) in &o.terms {
            r.add_term(m.clone(), a.neg_ref());
        }
        r
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m1, a) in &self.terms {
            for (m2, b) in &o.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
                r.add_term(m, a.mul_ref(b));
            }
        }
        r
    }
    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(a))).collect() }
    }
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
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
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut r = MultiPoly::zero(self.nvars);
        for (m, a) in &self.terms {
            r.add_term(m.clone(), f(a));
        }
        r
    }
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m[v]).max().unwrap_or(0)
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }
    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m[v] > 0)
    }
    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.uses_var(v)).collect()
    }
    /// Homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.iter().sum::<u32>() == d).map(|(m, a)| (m.clone(), a.clone())).collect(),
        }
    }
    /// Coefficients with respect to variable v: self = sum_j c_j v^j.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, a) in &self.terms {
            let mut m2 = m.clone();
            let j = m2[v] as usize;
            m2[v] = 0;
            out[j].add_term(m2, a.clone());
        }
        out
    }
    pub fn from_coeffs_in(v: usize, nvars: usize, cs: &[Self]) -> Self {
        let mut r = Self::zero(nvars);
        for (j, c) in cs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2[v] += j as u32;
                r.add_term(m2, a.clone());
            }
        }
        r
    }
    /// Replaces variable v by the polynomial g.
    pub fn substitute(&self, v: usize, g: &Self) -> Self {
        let cs = self.coeffs_in(v);
        let mut acc = Self::zero(self.nvars);
        for c in cs.iter().rev() {
            acc = acc.mul(g).add(c);
        }
        acc
    }
    /// Replaces variable v by the value a.
    pub fn eval_var(&self, v: usize, a: &F) -> Self {
        let mut r = Self::zero(self.nvars);
        let mut cache: Vec<F> = vec![F::one()];
        for (m, c) in &self.terms {
            let e = m[v] as usize;
            while cache.len() <= e {
                let nx = cache.last().unwrap().mul_ref(a);
                cache.push(nx);
            }
            let mut m2 = m.clone();
            m2[v] = 0;
            r.add_term(m2, c.mul_ref(&cache[e]));
        }
        r
    }
    pub fn eval(&self, x: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, xi) in m.iter().zip(x) {
                if *e > 0 {
                    t = t.mul_ref(&xi.pow(*e));
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }
    /// Univariate view when only variable v occurs.
    pub fn to_univariate(&self, v: usize) -> Option<Poly<F>> {
        if self.terms.keys().any(|m| m.iter().enumerate().any(|(i, &e)| i != v && e > 0)) {
            return None;
        }
        let d = self.degree_in(v) as usize;
        let mut c = vec![F::zero(); d + 1];
        for (m, a) in &self.terms {
            c[m[v] as usize] = a.clone();
        }
        Some(Poly::new(c))
    }
    pub fn from_univariate(p: &Poly<F>, v: usize, nvars: usize) -> Self {
        let mut r = Self::zero(nvars);
        for (j, a) in p.coeffs().iter().enumerate() {
            let mut m = vec![0; nvars];
            m[v] = j as u32;
            r.add_term(m, a.clone());
        }
        r
    }
    /// Same polynomial in the first `n` variables; the dropped ones must not occur.
    pub fn truncate_vars(&self, n: usize) -> Self {
        let mut r = Self::zero(n);
        for (m, a) in &self.terms {
            assert!(m[n..].iter().all(|&e| e == 0), "truncated variable occurs");
            r.add_term(m[..n].to_vec(), a.clone());
        }
        r
    }
    /// Same polynomial with extra trailing variables.
    pub fn extend_vars(&self, n: usize) -> Self {
        let mut r = Self::zero(n);
        for (m, a) in &self.terms {
            let mut m2 = m.clone();
            m2.resize(n, 0);
            r.add_term(m2, a.clone());
        }
        r
    }
    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }
    /// Scales so the lexicographically leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, a)) => self.scale(&a.inv()),
        }
    }
    /// Exact quotient, or None if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        let dinv = dc.inv();
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((rm, rc)) = r.leading() {
            if rm.iter().zip(dm).any(|(a, b)| a < b) {
                return None;
            }
            let m: Monomial = rm.iter().zip(dm).map(|(a, b)| a - b).collect();
            let t = Self::term(m, rc.mul_ref(&dinv));
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }
}

/// Determinant by fraction-free Bareiss elimination over the polynomial ring.
pub fn det_bareiss<F: Field>(mut a: Vec<Vec<MultiPoly<F>>>, nvars: usize) -> MultiPoly<F> {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut sign = false;
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Sylvester resultant with respect to variable v.
pub fn resultant<F: Field>(a: &MultiPoly<F>, b: &MultiPoly<F>, v: usize) -> Result<MultiPoly<F>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = a.nvars();
    let ca = a.coeffs_in(v);
    let cb = b.coeffs_in(v);
    let (da, db) = (ca.len() - 1, cb.len() - 1);
    if da == 0 {
        return Ok(a.pow(db as u32));
    }
    if db == 0 {
        return Ok(b.pow(da as u32));
    }
    let size = da + db;
    let mut m = vec![vec![MultiPoly::zero(n); size]; size];
    for i in 0..db {
        for (j, c) in ca.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in cb.iter().rev().enumerate() {
            m[db + i][i + j] = c.clone();
        }
    }
    Ok(det_bareiss(m, n))
}

impl<F: Field + fmt::Display> MultiPoly<F> {
    pub fn to_string_vars(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, a) in self.terms.iter().rev() {
            let txt = a.to_string();
            let (neg, body) = match txt.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, txt),
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e) })
                .collect();
            if mono.is_empty() {
                s.push_str(&body);
            } else if body == "1" {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{}*{}", body, mono.join("*")));
            }
        }
        s
    }
}
