//! Sample grids of a ruled surface for external plotting.

use std::fmt::Write;

use crate::algebra::field::to_decimal;
use crate::algebra::{rat, Rational};
use crate::error::{Error, Result};
use crate::surface::RuledSurface;

#[derive(Clone, Debug)]
pub struct MeshSpec {
    pub t_range: (Rational, Rational),
    pub s_range: (Rational, Rational),
    pub t_samples: usize,
    pub s_samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeshRow {
    pub t: Rational,
    pub s: Rational,
    pub x: [Rational; 3],
}

#[derive(Clone, Debug)]
pub struct Mesh {
    pub rows: Vec<MeshRow>,
    /// Parameter values dropped because p has a pole there.
    pub skipped_t: Vec<Rational>,
}

/// n evenly spaced values from r.0 to r.1 inclusive.
pub fn grid(r: &(Rational, Rational), n: usize) -> Vec<Rational> {
    let step = (&r.1 - &r.0) / rat(n as i64 - 1);
    (0..n).map(|i| &r.0 + &step * rat(i as i64)).collect()
}

/// Evenly spaced exact samples; columns at poles of p are left out.
pub fn sample(s: &RuledSurface, spec: &MeshSpec) -> Result<Mesh> {
    if spec.t_samples < 2 || spec.s_samples < 2 {
        return Err(Error::InvalidInput("mesh needs at least 2 samples in each direction".into()));
    }
    if spec.t_range.0 >= spec.t_range.1 || spec.s_range.0 >= spec.s_range.1 {
        return Err(Error::InvalidInput("mesh range must be increasing".into()));
    }
    let den = s.p_denominator();
    let ss = grid(&spec.s_range, spec.s_samples);
    let mut rows = vec![];
    let mut skipped_t = vec![];
    for t in grid(&spec.t_range, spec.t_samples) {
        if den.eval(&t) == rat(0) {
            skipped_t.push(t);
            continue;
        }
        for sv in &ss {
            let x = s.point(&t, sv).expect("denominator checked");
            rows.push(MeshRow { t: t.clone(), s: sv.clone(), x });
        }
    }
    Ok(Mesh { rows, skipped_t })
}

impl Mesh {
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::from("t,s,x,y,z\n");
        for r in &self.rows {
            let cols = [&r.t, &r.s, &r.x[0], &r.x[1], &r.x[2]].map(|v| to_decimal(v, digits));
            writeln!(out, "{}", cols.join(",")).unwrap();
        }
        out
    }
}

/// Parses "a,b" or "a:b" into an exact range.
pub fn parse_range(s: &str) -> Result<(Rational, Rational)> {
    let parts: Vec<&str> = s.split([',', ':']).map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(Error::Parse(format!("range '{s}' must be two numbers")));
    };
    let p = |x: &str| {
        crate::algebra::field::parse_rational(x)
            .or_else(|| parse_decimal(x))
            .ok_or_else(|| Error::Parse(format!("bad number '{x}' in range")))
    };
    Ok((p(a)?, p(b)?))
}

fn parse_decimal(x: &str) -> Option<Rational> {
    let (neg, body) = match x.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, x),
    };
    let (ip, fp) = body.split_once('.')?;
    if fp.is_empty() || !fp.bytes().all(|c| c.is_ascii_digit()) || !ip.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: num_bigint::BigInt = format!("{ip}{fp}").parse().ok()?;
    let v = Rational::new(digits, num_bigint::BigInt::from(10u32).pow(fp.len() as u32));
    Some(if neg { -v } else { v })
}
