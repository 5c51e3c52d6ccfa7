//! Text parser for polynomial and rational-function expressions.
//!
//! Grammar: integers or decimals, single-letter variables, `+ - * / ^ ( )`.
//! Juxtaposition multiplies (`2t^2`, `3(t+1)`); `**` is accepted for `^`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::{Field, Rational};
use super::multipoly::MultiPoly;
use super::poly::{Poly, UniPoly};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = vec![];
    while i < b.len() {
        let ch = b[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == '.') {
                i += 1;
            }
            let txt: String = b[st..i].iter().collect();
            out.push((st, Tok::Num(parse_decimal(&txt).ok_or_else(|| Error::Parse(format!("bad number '{txt}' at {st}")))?)));
        } else if ch.is_ascii_alphabetic() {
            out.push((i, Tok::Var(ch.to_string())));
            i += 1;
        } else if ch == '*' && b.get(i + 1) == Some(&'*') {
            out.push((i, Tok::Op('^')));
            i += 2;
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{ch}' at {i}")));
        }
    }
    Ok(out)
}

fn parse_decimal(s: &str) -> Option<Rational> {
    match s.split_once('.') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((a, f)) => {
            if f.contains('.') || (a.is_empty() && f.is_empty()) {
                return None;
            }
            let ip: BigInt = if a.is_empty() { BigInt::zero() } else { a.parse().ok()? };
            let fp: BigInt = if f.is_empty() { BigInt::zero() } else { f.parse().ok()? };
            let scale = BigInt::from(10u32).pow(f.len() as u32);
            Some(Rational::new(ip * &scale + fp, scale))
        }
    }
}

/// Target algebra for expression evaluation.
pub trait ExprTarget: Sized + Clone {
    fn constant(r: Rational) -> Self;
    fn variable(name: &str) -> Result<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn pow(&self, e: u32) -> Self;
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }
    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(usize::MAX)
    }
    fn err<T>(&self, msg: &str) -> Result<T> {
        match self.toks.get(self.pos) {
            Some((p, _)) => Err(Error::Parse(format!("{msg} at {p}"))),
            None => Err(Error::Parse(format!("{msg} at end of input"))),
        }
    }
    fn expr<T: ExprTarget>(&mut self) -> Result<T> {
        let mut acc = self.term::<T>()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let t = self.term::<T>()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }
    fn term<T: ExprTarget>(&mut self) -> Result<T> {
        let mut acc = self.unary::<T>()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary::<T>()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary::<T>()?;
                    acc = acc.div(&d)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')) => {
                    acc = acc.mul(&self.power::<T>()?);
                }
                _ => return Ok(acc),
            }
        }
    }
    fn unary<T: ExprTarget>(&mut self) -> Result<T> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(T::constant(Rational::zero()).sub(&self.unary::<T>()?))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }
    fn power<T: ExprTarget>(&mut self) -> Result<T> {
        let base = self.primary::<T>()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let paren = matches!(self.peek(), Some(Tok::Op('(')));
            if paren {
                self.pos += 1;
            }
            let e = match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() => n.to_integer(),
                _ => return self.err("expected a non-negative integer exponent"),
            };
            self.pos += 1;
            if paren {
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
            }
            let e: u32 = e.try_into().map_err(|_| Error::Parse(format!("exponent too large at {}", self.at())))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
    fn primary<T: ExprTarget>(&mut self) -> Result<T> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(T::constant(n))
            }
            Some(Tok::Var(v)) => {
                let at = self.at();
                self.pos += 1;
                T::variable(&v).map_err(|e| match e {
                    Error::Parse(m) => Error::Parse(format!("{m} at {at}")),
                    o => o,
                })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr::<T>()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

pub fn parse_expr<T: ExprTarget>(s: &str) -> Result<T> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0 };
    let e = p.expr::<T>()?;
    if p.pos != toks.len() {
        return p.err("unexpected token");
    }
    Ok(e)
}

/// Rational function in the variable `t`.
#[derive(Clone)]
struct RfT(RatFunc<Rational>);

impl ExprTarget for RfT {
    fn constant(r: Rational) -> Self {
        RfT(RatFunc::constant(r))
    }
    fn variable(name: &str) -> Result<Self> {
        if name == "t" {
            Ok(RfT(RatFunc::from_poly(Poly::x())))
        } else {
            Err(Error::Parse(format!("unknown variable '{name}', expected t")))
        }
    }
    fn add(&self, o: &Self) -> Self {
        RfT(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        RfT(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        RfT(self.0.mul(&o.0))
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.0.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(RfT(self.0.div(&o.0)))
    }
    fn pow(&self, e: u32) -> Self {
        RfT(self.0.pow(e))
    }
}

/// Parses a rational function of `t`.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc<Rational>> {
    parse_expr::<RfT>(s).map(|r| r.0)
}

/// Parses a polynomial in `t`.
pub fn parse_unipoly(s: &str) -> Result<UniPoly> {
    let r = parse_ratfunc(s)?;
    if !r.is_poly() {
        return Err(Error::Parse(format!("'{s}' is not a polynomial")));
    }
    let d = r.den().coeff(0);
    Ok(r.num().scale(&d.inv()))
}

thread_local! {
    static VARS: std::cell::RefCell<Vec<String>> = const { std::cell::RefCell::new(Vec::new()) };
}

#[derive(Clone)]
struct Mp(MultiPoly<Rational>);

impl ExprTarget for Mp {
    fn constant(r: Rational) -> Self {
        let n = VARS.with(|v| v.borrow().len());
        Mp(MultiPoly::constant(n, r))
    }
    fn variable(name: &str) -> Result<Self> {
        VARS.with(|v| {
            let v = v.borrow();
            match v.iter().position(|x| x == name) {
                Some(i) => Ok(Mp(MultiPoly::var(v.len(), i))),
                None => Err(Error::Parse(format!("unknown variable '{name}', expected one of {}", v.join(", ")))),
            }
        })
    }
    fn add(&self, o: &Self) -> Self {
        Mp(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        Mp(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        Mp(self.0.mul(&o.0))
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if !o.0.is_constant() || o.0.is_zero() {
            return Err(Error::Parse("only division by nonzero constants is allowed in a polynomial".into()));
        }
        Ok(Mp(self.0.scale(&o.0.constant_term().inv())))
    }
    fn pow(&self, e: u32) -> Self {
        Mp(self.0.pow(e))
    }
}

/// Parses a polynomial in the given variables.
pub fn parse_multipoly(s: &str, vars: &[&str]) -> Result<MultiPoly<Rational>> {
    VARS.with(|v| *v.borrow_mut() = vars.iter().map(|s| s.to_string()).collect());
    parse_expr::<Mp>(s).map(|m| m.0)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, ratio};

    #[test]
    fn parses_rational_function() {
        let r = parse_ratfunc("(2*t^8 - 10t^6 - 10*t^4 + 5*t^2 + 1)/(t^2+1)").unwrap();
        assert_eq!(*r.den(), UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(r.eval(&rat(1)), Some(ratio(-12, 2)));
    }

    #[test]
    fn unary_minus_binds_below_power() {
        assert_eq!(parse_unipoly("-t^2").unwrap(), UniPoly::from_ints(&[0, 0, -1]));
        assert_eq!(parse_unipoly("(-t)^2").unwrap(), UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(parse_unipoly("2^3*t").unwrap(), UniPoly::from_ints(&[0, 8]));
        assert_eq!(parse_unipoly("0.5t**2").unwrap(), UniPoly::new(vec![rat(0), rat(0), ratio(1, 2)]));
    }

    #[test]
    fn multivariate() {
        let f = parse_multipoly("x^6 + y^5*z + 6x^5 + z^2/2", &["x", "y", "z"]).unwrap();
        assert_eq!(f.total_degree(), 6);
        assert_eq!(f.eval(&[rat(1), rat(1), rat(2)]), rat(1 + 2 + 6 + 2));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_unipoly("t +* 2"), Err(Error::Parse(m)) if m.contains("at 3")));
        assert!(matches!(parse_unipoly("q^2"), Err(Error::Parse(_))));
        assert!(matches!(parse_ratfunc("1/(t-t)"), Err(Error::Parse(_))));
        assert!(matches!(parse_unipoly("(t+1"), Err(Error::Parse(_))));
        assert!(matches!(parse_multipoly("x/y", &["x", "y"]), Err(Error::Parse(_))));
    }
}
