//! Real number fields Q(theta) with a distinguished real embedding.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::{rat, to_decimal, Field, Rational};
use super::poly::{Poly, UniPoly};
use super::roots::{real_roots, AlgebraicNumber};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
pub struct NumberField {
    id: u64,
    minpoly: UniPoly,
    root: Mutex<AlgebraicNumber>,
}

impl NumberField {
    /// `root` must be an irrational real algebraic number.
    pub fn new(root: AlgebraicNumber) -> Arc<Self> {
        assert!(root.degree() >= 2, "number field needs an irrational generator");
        let minpoly = root.minimal_poly().monic();
        Arc::new(NumberField { id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed), minpoly, root: Mutex::new(root) })
    }
    pub fn id(&self) -> u64 {
        self.id
    }
    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }
    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }
    pub fn generator(&self) -> AlgebraicNumber {
        self.root.lock().unwrap().clone()
    }
    fn root_interval(&self, bits: u32) -> (Rational, Rational) {
        let mut r = self.root.lock().unwrap();
        r.refine_bits(bits);
        let (a, b) = r.interval();
        (a.clone(), b.clone())
    }
}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    a.id == b.id
}

/// Element of Q or of a number field, stored as a reduced polynomial in the generator.
#[derive(Clone)]
pub struct NfElem {
    field: Option<Arc<NumberField>>,
    c: Vec<Rational>,
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", super::field::rat_to_string(&r)),
            None => write!(f, "{}", to_decimal(&self.approx_rational(80), 20)),
        }
    }
}

impl PartialEq for NfElem {
    fn eq(&self, o: &Self) -> bool {
        if let (Some(a), Some(b)) = (&self.field, &o.field) {
            if self.c.len() > 1 && o.c.len() > 1 {
                assert!(same_field(a, b), "comparing elements of different number fields");
            }
        }
        self.c == o.c
    }
}

fn trim(mut c: Vec<Rational>) -> Vec<Rational> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

impl NfElem {
    pub fn rational(r: Rational) -> Self {
        NfElem { field: None, c: trim(vec![r]) }
    }
    pub fn generator(f: &Arc<NumberField>) -> Self {
        NfElem { field: Some(f.clone()), c: vec![Rational::zero(), Rational::one()] }
    }
    pub fn from_poly(f: &Option<Arc<NumberField>>, p: &UniPoly) -> Self {
        match f {
            None => {
                assert!(p.deg() == 0, "polynomial element without a field");
                NfElem::rational(p.coeff(0))
            }
            Some(nf) => NfElem { field: Some(nf.clone()), c: p.rem(&nf.minpoly).into_coeffs() },
        }
    }
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }
    pub fn poly(&self) -> UniPoly {
        UniPoly::new(self.c.clone())
    }
    pub fn as_rational(&self) -> Option<Rational> {
        match self.c.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }
    pub fn is_rational(&self) -> bool {
        self.c.len() <= 1
    }
    fn join(&self, o: &Self) -> Option<Arc<NumberField>> {
        match (&self.field, &o.field) {
            (Some(a), Some(b)) => {
                if self.c.len() > 1 && o.c.len() > 1 {
                    assert!(same_field(a, b), "mixing elements of different number fields");
                }
                if self.c.len() > 1 {
                    Some(a.clone())
                } else {
                    Some(b.clone())
                }
            }
            (Some(a), None) => Some(a.clone()),
            (None, b) => b.clone(),
        }
    }
    /// Certified enclosure of the value with the generator refined to 2^-bits.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        if let Some(r) = self.as_rational() {
            return (r.clone(), r);
        }
        let (lo, hi) = self.field.as_ref().unwrap().root_interval(bits);
        let mut a = (Rational::zero(), Rational::zero());
        for c in self.c.iter().rev() {
            let ps = [&a.0 * &lo, &a.0 * &hi, &a.1 * &lo, &a.1 * &hi];
            let mn = ps.iter().min().unwrap().clone();
            let mx = ps.iter().max().unwrap().clone();
            a = (mn + c, mx + c);
        }
        a
    }
    pub fn sign(&self) -> i32 {
        if let Some(r) = self.as_rational() {
            return if r.is_zero() { 0 } else if r.is_positive() { 1 } else { -1 };
        }
        let mut bits = 32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }
    pub fn cmp_value(&self, o: &Self) -> std::cmp::Ordering {
        self.sub_ref(o).sign().cmp(&0)
    }
    /// Rational within 2^-bits of the value.
    pub fn approx_rational(&self, bits: u32) -> Rational {
        let (lo, hi) = self.enclosure(bits);
        let mut b = bits;
        let target = Rational::new(BigInt::one(), BigInt::one() << bits);
        let (mut lo, mut hi) = (lo, hi);
        while &hi - &lo > target {
            b += 16;
            (lo, hi) = self.enclosure(b);
        }
        (lo + hi) / rat(2)
    }
    pub fn to_f64(&self) -> f64 {
        super::field::to_f64(&self.approx_rational(64))
    }
    /// Characteristic polynomial of the multiplication map, in Q[x].
    pub fn charpoly(&self) -> UniPoly {
        let Some(nf) = &self.field else {
            return UniPoly::new(vec![-self.c.first().cloned().unwrap_or_else(Rational::zero), Rational::one()]);
        };
        let m = &nf.minpoly;
        let e = m.deg();
        let a = self.poly();
        let xs: Vec<Rational> = (0..=e as i64).map(rat).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| m.resultant(&UniPoly::constant(x.clone()).sub(&a))).collect();
        interpolate(&xs, &ys)
    }
    /// The value as a real algebraic number with its minimal polynomial.
    pub fn to_algebraic(&self) -> AlgebraicNumber {
        if let Some(r) = self.as_rational() {
            return AlgebraicNumber::from_rational(r);
        }
        let cands = real_roots(&self.charpoly());
        self.locate(cands)
    }
    /// Picks the candidate equal to this value; the value must be one of them.
    pub fn locate(&self, mut cands: Vec<AlgebraicNumber>) -> AlgebraicNumber {
        assert!(!cands.is_empty(), "value is not among the candidates");
        let mut bits = 16;
        loop {
            let (lo, hi) = self.enclosure(bits);
            let w = (&hi - &lo).max(Rational::new(BigInt::one(), BigInt::one() << bits));
            let mut hits = vec![];
            for (i, c) in cands.iter_mut().enumerate() {
                c.refine(&w);
                let (a, b) = c.interval();
                if !(b < &lo || a > &hi) {
                    hits.push(i);
                }
            }
            if hits.len() == 1 {
                return cands.swap_remove(hits[0]);
            }
            bits *= 2;
        }
    }
    /// True iff this value is the root of `a.minimal_poly()` that `a` isolates.
    /// The caller guarantees the value is a root of that polynomial.
    pub fn is_root_isolated_by(&self, a: &AlgebraicNumber) -> bool {
        if let Some(r) = a.as_rational() {
            return self.as_rational().as_ref() == Some(r);
        }
        let (alo, ahi) = a.interval();
        let mut bits = 16;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if &lo > alo && &hi < ahi {
                return true;
            }
            if &hi < alo || &lo > ahi {
                return false;
            }
            bits *= 2;
        }
    }
    /// Evaluates a rational polynomial at this element.
    pub fn eval_poly(&self, p: &UniPoly) -> NfElem {
        let mut acc = NfElem::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul_ref(self).add_ref(&NfElem::rational(c.clone()));
        }
        acc
    }
}

impl Zero for NfElem {
    fn zero() -> Self {
        NfElem { field: None, c: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl One for NfElem {
    fn one() -> Self {
        NfElem::rational(Rational::one())
    }
}

impl std::ops::Add for NfElem {
    type Output = NfElem;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl std::ops::Mul for NfElem {
    type Output = NfElem;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Field for NfElem {
    fn add_ref(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = Rational::zero();
        let c = (0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect();
        NfElem { field: self.join(o), c: trim(c) }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn neg_ref(&self) -> Self {
        NfElem { field: self.field.clone(), c: self.c.iter().map(|a| -a).collect() }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let field = self.join(o);
        if self.c.len() <= 1 || o.c.len() <= 1 {
            let (s, v) = if self.c.len() <= 1 { (self, o) } else { (o, self) };
            let Some(k) = s.c.first() else { return NfElem::zero() };
            return NfElem { field, c: trim(v.c.iter().map(|a| a * k).collect()) };
        }
        let p = self.poly().mul(&o.poly());
        let c = p.rem(&field.as_ref().unwrap().minpoly).into_coeffs();
        NfElem { field, c }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if let Some(r) = self.as_rational() {
            return NfElem { field: self.field.clone(), c: vec![r.recip()] };
        }
        let nf = self.field.as_ref().unwrap();
        let (g, s, _) = self.poly().ext_gcd(&nf.minpoly);
        debug_assert!(g.deg() == 0);
        NfElem { field: self.field.clone(), c: s.rem(&nf.minpoly).into_coeffs() }
    }
    fn from_rat(r: &Rational) -> Self {
        NfElem::rational(r.clone())
    }
}

/// Lagrange interpolation over Q.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut num = UniPoly::one();
        let mut den = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                num = num.mul(&UniPoly::new(vec![-xj.clone(), Rational::one()]));
                den *= xi - xj;
            }
        }
        acc = acc.add(&num.scale(&(yi / den)));
    }
    acc
}

/// A real root found over a base field, together with the field that contains it.
#[derive(Clone, Debug)]
pub struct RootOver {
    pub field: Option<Arc<NumberField>>,
    /// Image of the base field generator in `field` (None when the base is Q).
    pub theta_image: Option<NfElem>,
    pub root: NfElem,
}

impl RootOver {
    /// Maps an element of the base field into the new field.
    pub fn embed(&self, e: &NfElem) -> NfElem {
        if let Some(r) = e.as_rational() {
            return NfElem::rational(r);
        }
        let t = self.theta_image.as_ref().expect("embedding from Q has no generator image");
        t.eval_poly(&e.poly())
    }
}

/// Common field of a set of elements (they must agree).
pub fn common_field<'a>(it: impl IntoIterator<Item = &'a NfElem>) -> Option<Arc<NumberField>> {
    let mut f: Option<Arc<NumberField>> = None;
    for e in it {
        if e.c.len() > 1 {
            let ef = e.field.as_ref().unwrap();
            match &f {
                None => f = Some(ef.clone()),
                Some(g) => assert!(same_field(g, ef), "elements from different number fields"),
            }
        }
    }
    f
}

fn lift_bivariate(g: &Poly<NfElem>) -> Vec<UniPoly> {
    g.coeffs().iter().map(|a| a.poly()).collect()
}

/// Norm of a polynomial over Q(theta): Res_y(m(y), G(x, y)).
pub fn norm(g: &Poly<NfElem>, nf: &NumberField) -> UniPoly {
    let m = &nf.minpoly;
    let gk = lift_bivariate(g);
    let d = m.deg() * g.deg();
    let xs: Vec<Rational> = (0..=d as i64).map(rat).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let mut h = UniPoly::zero();
            let mut xp = Rational::one();
            for c in &gk {
                h = h.add(&c.scale(&xp));
                xp *= x;
            }
            m.resultant(&h)
        })
        .collect();
    interpolate(&xs, &ys)
}

fn poly_field(g: &Poly<NfElem>) -> Option<Arc<NumberField>> {
    common_field(g.coeffs())
}

/// Real roots of a nonzero polynomial over Q or over a real number field, ascending.
/// Each root is returned in the smallest field found by the construction.
pub fn real_roots_over(g: &Poly<NfElem>) -> Vec<RootOver> {
    if g.is_zero() || g.deg() == 0 {
        return vec![];
    }
    let Some(nf) = poly_field(g) else {
        let q = UniPoly::new(g.coeffs().iter().map(|a| a.as_rational().unwrap()).collect());
        return real_roots(&q)
            .into_iter()
            .map(|a| match a.as_rational() {
                Some(r) => RootOver { field: None, theta_image: None, root: NfElem::rational(r.clone()) },
                None => {
                    let f = NumberField::new(a);
                    RootOver { field: Some(f.clone()), theta_image: None, root: NfElem::generator(&f) }
                }
            })
            .collect();
    };
    let g = g.squarefree_part_field();
    let theta = NfElem::generator(&nf);
    if g.deg() == 1 {
        let r = g.coeff(0).neg_ref().div_ref(&g.coeff(1));
        return vec![RootOver { field: Some(nf.clone()), theta_image: Some(theta), root: r }];
    }
    let mut s = 0i64;
    let (shift, n) = loop {
        let sh = NfElem::from_int(s).mul_ref(&theta);
        let gs = g.compose(&Poly::new(vec![sh.neg_ref(), NfElem::one()]));
        let n = norm(&gs, &nf);
        if n.gcd(&n.derivative()).deg() == 0 {
            break (sh, n);
        }
        s = if s > 0 { -s } else { -s + 1 };
    };
    let gk = lift_bivariate(&g);
    let mut out = vec![];
    for (ni, _) in super::factor::factor(&n) {
        // factor of g over the base field belonging to this norm factor
        let ni_f: Poly<NfElem> = ni.map(|a| NfElem::rational(a.clone()));
        let hi = g.gcd_euclid(&ni_f.compose(&Poly::new(vec![shift.clone(), NfElem::one()])));
        if hi.deg() == 0 {
            continue;
        }
        if hi.deg() == 1 {
            let r = hi.coeff(0).neg_ref().div_ref(&hi.coeff(1));
            out.push(RootOver { field: Some(nf.clone()), theta_image: Some(theta.clone()), root: r });
            continue;
        }
        let base_root = nf.generator();
        for rho in real_roots(&ni) {
            let k = NumberField::new(rho);
            let rho_k = NfElem::generator(&k);
            // sum_j g_j(y) (rho - s y)^j as a polynomial in y over K
            let lin = Poly::new(vec![rho_k.clone(), NfElem::from_int(-s)]);
            let mut acc: Poly<NfElem> = Poly::zero();
            let mut pw: Poly<NfElem> = Poly::one();
            for c in &gk {
                acc = acc.add(&pw.mul(&c.map(|a| NfElem::rational(a.clone()))));
                pw = pw.mul(&lin);
            }
            let m_k: Poly<NfElem> = nf.minpoly.map(|a| NfElem::rational(a.clone()));
            let h = acc.gcd_euclid(&m_k);
            if h.deg() != 1 {
                continue;
            }
            let theta_k = h.coeff(0).neg_ref();
            if !theta_k.is_root_isolated_by(&base_root) {
                continue;
            }
            let r = rho_k.sub_ref(&NfElem::from_int(s).mul_ref(&theta_k));
            out.push(RootOver { field: Some(k), theta_image: Some(theta_k), root: r });
        }
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.root.approx_rational(64), b.root.approx_rational(64));
        x.cmp(&y)
    });
    out
}

/// Extension of `base` containing the real algebraic number `a`.
pub fn adjoin(base: &Option<Arc<NumberField>>, a: &AlgebraicNumber) -> RootOver {
    let theta = base.as_ref().map(NfElem::generator);
    if let Some(r) = a.as_rational() {
        return RootOver { field: base.clone(), theta_image: theta, root: NfElem::rational(r.clone()) };
    }
    let p: Poly<NfElem> = a.minimal_poly().map(|c| NfElem::rational(c.clone()));
    let roots = match base {
        None => real_roots_over(&p),
        Some(nf) => real_roots_over_field(&p, nf),
    };
    for r in roots {
        if r.root.is_root_isolated_by(a) {
            return r;
        }
    }
    unreachable!("algebraic number not found among the roots of its minimal polynomial")
}

/// Real roots of a polynomial viewed over the given field even if its coefficients are rational.
pub fn real_roots_over_field(p: &Poly<NfElem>, nf: &Arc<NumberField>) -> Vec<RootOver> {
    let theta = NfElem::generator(nf);
    // x -> x + 0*theta marks the field; use a shifted copy with a field tag and shift back
    let tagged = p.compose(&Poly::new(vec![theta.clone(), NfElem::one()]));
    real_roots_over(&tagged)
        .into_iter()
        .map(|mut r| {
            let shift = r.embed(&theta);
            r.root = r.root.add_ref(&shift);
            r
        })
        .collect()
}

/// Re-expresses elements over one common field. Call `include` for every field
/// first: values returned by `map` are only valid in the field current at that time.
#[derive(Default)]
pub struct FieldMerger {
    field: Option<Arc<NumberField>>,
    images: BTreeMap<u64, NfElem>,
}

impl FieldMerger {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn field(&self) -> &Option<Arc<NumberField>> {
        &self.field
    }
    /// Makes sure the generator of `nf` is representable in the merged field.
    pub fn include(&mut self, nf: &Arc<NumberField>) {
        if self.images.contains_key(&nf.id) {
            return;
        }
        match &self.field {
            None => {
                self.field = Some(nf.clone());
                self.images.insert(nf.id, NfElem::generator(nf));
                return;
            }
            Some(f) if same_field(f, nf) => {
                self.images.insert(nf.id, NfElem::generator(nf));
                return;
            }
            _ => {}
        }
        let ext = adjoin(&self.field, &nf.generator());
        let old: Vec<(u64, NfElem)> = self.images.iter().map(|(k, v)| (*k, v.clone())).collect();
        for (k, v) in old {
            self.images.insert(k, ext.embed(&v));
        }
        if let Some(f) = &ext.field {
            if self.field.as_ref().is_none_or(|g| !same_field(g, f)) {
                self.images.insert(f.id, NfElem::generator(f));
            }
        }
        self.field = ext.field.clone();
        self.images.insert(nf.id, ext.root);
    }
    pub fn map(&mut self, e: &NfElem) -> NfElem {
        if let Some(r) = e.as_rational() {
            return NfElem::rational(r);
        }
        let nf = e.field.as_ref().unwrap().clone();
        self.include(&nf);
        self.images[&nf.id].eval_poly(&e.poly())
    }
}
