
use super::field::Field;
use super::poly::Poly;

/// Univariate rational function with monic denominator and coprime parts.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd_euclid(&den);
        let (mut n, mut d) = (num.exact_div(&g), den.exact_div(&g));
        let l = d.lc().inv();
        n = n.scale(&l);
        d = d.scale(&l);
        RatFunc { num: n, den: d }
    }
    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }
    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    pub fn constant(a: F) -> Self {
        Self::from_poly(Poly::constant(a))
    }
    pub fn num(&self) -> &Poly<F> {
        &self.num
    }
    pub fn den(&self) -> &Poly<F> {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_poly(&self) -> bool {
        self.den.deg() == 0
    }
    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(self.num.add(&o.num), self.den.clone());
        }
        RatFunc::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    pub fn scale(&self, a: &F) -> Self {
        RatFunc { num: self.num.scale(a), den: if a.is_zero() { Poly::one() } else { self.den.clone() } }
    }
    pub fn inv(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }
    /// None at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x).div_ref(&d))
        }
    }
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RatFunc<G> {
        RatFunc::new(self.num.map(&f), self.den.map(&f))
    }
    /// self((a t + b)/(c t + d)) for an invertible Moebius map.
    pub fn compose_mobius(&self, a: &F, b: &F, c: &F, d: &F) -> Self {
        let lin_n = Poly::new(vec![b.clone(), a.clone()]);
        let lin_d = Poly::new(vec![d.clone(), c.clone()]);
        let (dn, dd) = (self.num.deg(), self.den.deg());
        let k = dn.max(dd);
        let n = self.num.homogenize(&lin_n, &lin_d, k);
        let dh = self.den.homogenize(&lin_n, &lin_d, k);
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(n, dh)
    }
    /// Larger of the numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }
}

impl<F: Field + std::fmt::Display> RatFunc<F> {
    pub fn to_string_var(&self, v: &str) -> String {
        if self.den.deg() == 0 && self.den.coeff(0).is_one() {
            return self.num.to_string_var(v);
        }
        format!("({})/({})", self.num.to_string_var(v), self.den.to_string_var(v))
    }
}
