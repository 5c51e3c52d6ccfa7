use num_traits::{One, Zero};
use serde::Serialize;

use super::recover::{check_orthogonal, det3, identity3, Mat3, Vec3N};
use crate::algebra::solve::roots_in;
use crate::algebra::{Field, NfElem, Poly};
use crate::error::{Error, Result};
use crate::surface::solve_linear;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Identity,
    Reflection,
    Rotation,
    Axial,
    Central,
    Rotoreflection,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::Identity, Kind::Reflection, Kind::Rotation, Kind::Axial, Kind::Central, Kind::Rotoreflection];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Identity => "identity",
            Kind::Reflection => "reflection",
            Kind::Rotation => "rotation",
            Kind::Axial => "axial",
            Kind::Central => "central",
            Kind::Rotoreflection => "rotoreflection",
        }
    }

    pub fn is_involution(self) -> bool {
        matches!(self, Kind::Identity | Kind::Reflection | Kind::Axial | Kind::Central)
    }
}

/// Fixed points of x -> Qx + b.
#[derive(Clone, Debug, PartialEq)]
pub enum FixedLocus {
    AllSpace,
    /// normal . x = offset, normal scaled to a leading 1
    Plane { normal: Vec3N, offset: NfElem },
    /// point + span(direction), direction scaled to a leading 1
    Line { point: Vec3N, direction: Vec3N },
    Point(Vec3N),
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub kind: Kind,
    pub locus: FixedLocus,
    /// (cos, sin) of the rotation angle about `direction` of the axis, for rotations
    /// and rotoreflections. sin may live in an extension of the entries' field.
    pub angle: Option<(NfElem, NfElem)>,
}

fn sub_identity(q: &Mat3, sign: i64) -> Mat3 {
    let s = NfElem::from_int(sign);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let d = if i == j { s.clone() } else { NfElem::zero() };
            q[i][j].sub_ref(&d)
        })
    })
}

fn rows(m: &Mat3) -> Vec<Vec<NfElem>> {
    m.iter().map(|r| r.to_vec()).collect()
}

fn rank(m: &Mat3) -> usize {
    let zero = vec![NfElem::zero(); 3];
    let (_, null) = solve_linear(&rows(m), &zero, 3).unwrap();
    3 - null.len()
}

fn leading_one(v: &[NfElem]) -> Vec3N {
    let lead = v.iter().find(|c| !c.is_zero()).expect("zero vector").inv();
    std::array::from_fn(|i| v[i].mul_ref(&lead))
}

fn null_vector(m: &Mat3) -> Vec3N {
    let zero = vec![NfElem::zero(); 3];
    let (_, null) = solve_linear(&rows(m), &zero, 3).unwrap();
    leading_one(&null[0])
}

/// Fixed locus from (I - Q) x = b.
fn fixed_points(q: &Mat3, b: &Vec3N) -> Option<(Vec3N, Vec<Vec<NfElem>>)> {
    let m = sub_identity(q, 1);
    let lhs: Vec<Vec<NfElem>> = m.iter().map(|r| r.iter().map(|c| c.neg_ref()).collect()).collect();
    let (x, null) = solve_linear(&lhs, b, 3)?;
    Some(([x[0].clone(), x[1].clone(), x[2].clone()], null))
}

fn sine(q: &Mat3, axis: &Vec3N, cos: &NfElem) -> NfElem {
    // Q - Q^T = 2 sin(theta) [u]x for the unit axis u
    let w = [
        q[2][1].sub_ref(&q[1][2]),
        q[0][2].sub_ref(&q[2][0]),
        q[1][0].sub_ref(&q[0][1]),
    ];
    let sgn = super::recover::dot(&w, axis).sign();
    let s2 = NfElem::one().sub_ref(&cos.mul_ref(cos));
    if sgn == 0 || s2.is_zero() {
        return NfElem::zero();
    }
    let field = cos.field().cloned().or_else(|| s2.field().cloned());
    let p = Poly::new(vec![s2.neg_ref(), NfElem::zero(), NfElem::one()]);
    let roots = roots_in(&p, &field);
    let r = roots.into_iter().find(|r| r.root.sign() == sgn).expect("1 - cos^2 > 0 has a real square root");
    r.root
}

/// Kind, fixed locus and angle of x -> Qx + b.
pub fn classify(q: &Mat3, b: &Vec3N) -> Result<Classification> {
    if !check_orthogonal(q) {
        return Err(Error::NotAnIsometry("Q^T Q != I".into()));
    }
    let det = det3(q);
    let tr = q[0][0].add_ref(&q[1][1]).add_ref(&q[2][2]);
    let Some((x0, null)) = fixed_points(q, b) else {
        return Err(Error::NotAnIsometry("no fixed point (screw motion or glide reflection)".into()));
    };
    let two = NfElem::from_int(2);
    if det.is_one() {
        if *q == identity3() {
            return Ok(Classification { kind: Kind::Identity, locus: FixedLocus::AllSpace, angle: None });
        }
        let axis = null_vector(&sub_identity(q, 1));
        let cos = tr.sub_ref(&NfElem::one()).div_ref(&two);
        let kind = if cos == NfElem::from_int(-1) { Kind::Axial } else { Kind::Rotation };
        let sin = sine(q, &axis, &cos);
        debug_assert_eq!(null.len(), 1);
        Ok(Classification { kind, locus: FixedLocus::Line { point: x0, direction: axis }, angle: Some((cos, sin)) })
    } else {
        let minus = sub_identity(q, -1);
        if minus.iter().flatten().all(|c| c.is_zero()) {
            return Ok(Classification { kind: Kind::Central, locus: FixedLocus::Point(x0), angle: None });
        }
        let iq = sub_identity(q, 1);
        if rank(&iq) == 1 {
            let row = iq.iter().find(|r| r.iter().any(|c| !c.is_zero())).unwrap();
            let ri = iq.iter().position(|r| r.iter().any(|c| !c.is_zero())).unwrap();
            // row . x = -b_ri, rescaled so the normal has a leading 1
            let lead = row.iter().find(|c| !c.is_zero()).unwrap().clone();
            let normal = leading_one(row);
            let offset = b[ri].neg_ref().div_ref(&lead);
            return Ok(Classification { kind: Kind::Reflection, locus: FixedLocus::Plane { normal, offset }, angle: None });
        }
        let axis = null_vector(&minus);
        let cos = tr.add_ref(&NfElem::one()).div_ref(&two);
        let sin = sine(q, &axis, &cos);
        Ok(Classification { kind: Kind::Rotoreflection, locus: FixedLocus::Point(x0), angle: Some((cos, sin)) })
    }
}
