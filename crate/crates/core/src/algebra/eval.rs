//! Certified evaluation of rational polynomials at real algebraic points.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::{rat, Rational};
use super::multipoly::MultiPoly;
use super::numfield::{FieldMerger, NfElem, NumberField};
use super::roots::AlgebraicNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(r: Rational) -> Self {
        Interval { lo: r.clone(), hi: r }
    }
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }
    fn add(&self, o: &Self) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }
    fn mul(&self, o: &Self) -> Self {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Interval { lo: ps.iter().min().unwrap().clone(), hi: ps.iter().max().unwrap().clone() }
    }
    fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Budget {
    /// Narrowest point-interval width tried before giving up on intervals.
    pub width: Rational,
    /// Decide remaining cases by exact arithmetic in a common number field.
    pub exact_fallback: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { width: Rational::new(BigInt::one(), BigInt::from(10).pow(60)), exact_fallback: true }
    }
}

impl Budget {
    pub fn from_bits(bits: u32) -> Self {
        Budget { width: Rational::new(BigInt::one(), BigInt::one() << bits), ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation {
    /// Proved zero by exact arithmetic (or by rational evaluation).
    Zero,
    /// Nonzero with the given sign; the interval encloses the value and excludes 0.
    Nonzero { sign: i32, enclosure: Interval },
}

impl Evaluation {
    pub fn is_zero(&self) -> bool {
        matches!(self, Evaluation::Zero)
    }
    pub fn sign(&self) -> i32 {
        match self {
            Evaluation::Zero => 0,
            Evaluation::Nonzero { sign, .. } => *sign,
        }
    }
}

fn enclose(p: &MultiPoly<Rational>, xs: &[Interval]) -> Interval {
    let mut acc = Interval::point(Rational::zero());
    for (m, c) in p.terms() {
        let mut t = Interval::point(Rational::one());
        for (x, &e) in xs.iter().zip(m) {
            for _ in 0..e {
                t = t.mul(x);
            }
        }
        acc = acc.add(&t.scale(c));
    }
    acc
}

fn nonzero(iv: Interval) -> Option<Evaluation> {
    if iv.lo.is_positive() {
        Some(Evaluation::Nonzero { sign: 1, enclosure: iv })
    } else if iv.hi.is_negative() {
        Some(Evaluation::Nonzero { sign: -1, enclosure: iv })
    } else {
        None
    }
}

/// Value of `p` at `point`. Zero is only ever reported after an exact check.
pub fn eval_interval(p: &MultiPoly<Rational>, point: &[AlgebraicNumber], budget: &Budget) -> Result<Evaluation> {
    if point.len() != p.nvars() {
        return Err(Error::InvalidInput(format!("{} coordinates for {} variables", point.len(), p.nvars())));
    }
    if point.iter().all(|a| a.as_rational().is_some()) {
        let xs: Vec<Rational> = point.iter().map(|a| a.as_rational().unwrap().clone()).collect();
        let v = p.eval(&xs);
        return Ok(nonzero(Interval::point(v)).unwrap_or(Evaluation::Zero));
    }
    let mut pts: Vec<AlgebraicNumber> = point.to_vec();
    let mut w = rat(1) / rat(1 << 10);
    loop {
        for a in &mut pts {
            a.refine(&w);
        }
        let xs: Vec<Interval> = pts
            .iter()
            .map(|a| {
                let (lo, hi) = a.interval();
                Interval { lo: lo.clone(), hi: hi.clone() }
            })
            .collect();
        if let Some(e) = nonzero(enclose(p, &xs)) {
            return Ok(e);
        }
        if w <= budget.width {
            break;
        }
        w = (&w * &w).max(budget.width.clone());
    }
    if !budget.exact_fallback {
        return Err(Error::PrecisionBudget("sign undecided at the interval budget".into()));
    }
    let v = eval_exact(p, point);
    if v.is_zero() {
        return Ok(Evaluation::Zero);
    }
    let sign = v.sign();
    let mut bits = 64;
    loop {
        let (lo, hi) = v.enclosure(bits);
        if let Some(e) = nonzero(Interval { lo, hi }) {
            debug_assert_eq!(e.sign(), sign);
            return Ok(e);
        }
        bits *= 2;
    }
}

/// Exact value in a number field containing every coordinate.
pub fn eval_exact(p: &MultiPoly<Rational>, point: &[AlgebraicNumber]) -> NfElem {
    let mut m = FieldMerger::new();
    let fields: Vec<Option<std::sync::Arc<NumberField>>> =
        point.iter().map(|a| a.as_rational().is_none().then(|| NumberField::new(a.clone()))).collect();
    for f in fields.iter().flatten() {
        m.include(f);
    }
    let xs: Vec<NfElem> = point
        .iter()
        .zip(&fields)
        .map(|(a, f)| match f {
            Some(f) => m.map(&NfElem::generator(f)),
            None => NfElem::rational(a.as_rational().unwrap().clone()),
        })
        .collect();
    p.map(|c| NfElem::rational(c.clone())).eval(&xs)
}
