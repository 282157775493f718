use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::exact_arith::{
    cos_turns, eigen_angle_of, quat_order, sin_turns, FieldElement, RationalAngle, UnitQuaternion,
    DEFAULT_ORDER_CAP,
};

/// A finite-order element of SU(2).
///
/// Diagonal elements are always `Torus` and anti-diagonal ones always
/// `JCoset`, so every element has a single representation. `Quat` holds
/// everything else together with its cached order and eigen angle.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Su2Repr", into = "Su2Repr")]
pub enum Su2Element {
    /// `diag(e^{iθ}, e^{-iθ})`.
    Torus(RationalAngle),
    /// `Torus(θ)·j`.
    JCoset(RationalAngle),
    Quat(Box<QuatElement>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuatElement {
    q: UnitQuaternion,
    order: u32,
    eigen: RationalAngle,
}

impl QuatElement {
    pub fn quaternion(&self) -> &UnitQuaternion {
        &self.q
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
enum Su2Repr {
    Torus(RationalAngle),
    JCoset(RationalAngle),
    Quat(Box<UnitQuaternion>),
}

impl TryFrom<Su2Repr> for Su2Element {
    type Error = GroupError;
    fn try_from(r: Su2Repr) -> Result<Self, GroupError> {
        match r {
            Su2Repr::Torus(t) => Ok(Su2Element::Torus(t)),
            Su2Repr::JCoset(t) => Ok(Su2Element::JCoset(t)),
            Su2Repr::Quat(q) => {
                let q = UnitQuaternion::new(q.w().clone(), q.x().clone(), q.y().clone(), q.z().clone())?;
                Su2Element::from_quaternion(&q)
            }
        }
    }
}

impl From<Su2Element> for Su2Repr {
    fn from(e: Su2Element) -> Self {
        match e {
            Su2Element::Torus(t) => Su2Repr::Torus(t),
            Su2Element::JCoset(t) => Su2Repr::JCoset(t),
            Su2Element::Quat(q) => Su2Repr::Quat(Box::new(q.q)),
        }
    }
}

/// Angle `θ` with `(cos 2πθ, sin 2πθ) = (c, s)` for a torsion point of the circle.
fn circle_angle(c: &FieldElement, s: &FieldElement) -> Result<RationalAngle, GroupError> {
    let z = FieldElement::zero();
    let q = UnitQuaternion::new(c.clone(), s.clone(), z.clone(), z)?;
    let t = eigen_angle_of(&q)?;
    Ok(if s.signum() < 0 { -t } else { t })
}

impl Su2Element {
    pub fn identity() -> Self {
        Su2Element::Torus(RationalAngle::ZERO)
    }

    pub fn minus_identity() -> Self {
        Su2Element::Torus(RationalAngle::HALF)
    }

    /// The quaternion `i`.
    pub fn i() -> Self {
        Su2Element::Torus(RationalAngle::new(1, 4))
    }

    /// The quaternion `j`.
    pub fn j() -> Self {
        Su2Element::JCoset(RationalAngle::ZERO)
    }

    /// The quaternion `k = i·j`.
    pub fn k() -> Self {
        Su2Element::JCoset(RationalAngle::new(1, 4))
    }

    /// Canonical element for a finite-order unit quaternion.
    pub fn from_quaternion(q: &UnitQuaternion) -> Result<Self, GroupError> {
        if q.y().is_zero() && q.z().is_zero() {
            return Ok(Su2Element::Torus(circle_angle(q.w(), q.x())?));
        }
        if q.w().is_zero() && q.x().is_zero() {
            return Ok(Su2Element::JCoset(circle_angle(q.y(), q.z())?));
        }
        let order = quat_order(q, DEFAULT_ORDER_CAP)?;
        let eigen = eigen_angle_of(q)?;
        Ok(Su2Element::Quat(Box::new(QuatElement { q: q.clone(), order, eigen })))
    }

    /// Exact quaternion, if the coordinates lie in `Q(√2, √5)`.
    pub fn to_quaternion(&self) -> Option<UnitQuaternion> {
        let z = FieldElement::zero;
        let built = match self {
            Su2Element::Torus(t) => UnitQuaternion::new(cos_turns(*t)?, sin_turns(*t)?, z(), z()),
            Su2Element::JCoset(t) => UnitQuaternion::new(z(), z(), cos_turns(*t)?, sin_turns(*t)?),
            Su2Element::Quat(q) => return Some(q.q.clone()),
        };
        built.ok()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_central(&self) -> bool {
        matches!(self, Su2Element::Torus(t) if t.denominator() <= 2)
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, Su2Element::Torus(_))
    }

    pub fn order(&self) -> u64 {
        match self {
            Su2Element::Torus(t) => t.order() as u64,
            Su2Element::JCoset(_) => 4,
            Su2Element::Quat(q) => q.order as u64,
        }
    }

    /// `t ∈ [0, 1/2]` with eigenvalues `exp(±2πi·t)`.
    pub fn eigen_angle(&self) -> RationalAngle {
        match self {
            Su2Element::Torus(t) => t.fold_half(),
            Su2Element::JCoset(_) => RationalAngle::new(1, 4),
            Su2Element::Quat(q) => q.eigen,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Su2Element::Torus(t) => Su2Element::Torus(-*t),
            Su2Element::JCoset(t) => Su2Element::JCoset(*t + RationalAngle::HALF),
            Su2Element::Quat(q) => Su2Element::Quat(Box::new(QuatElement {
                q: q.q.conj(),
                order: q.order,
                eigen: q.eigen,
            })),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self, GroupError> {
        use Su2Element::*;
        let half = RationalAngle::HALF;
        Ok(match (self, o) {
            (Torus(a), Torus(b)) => Torus(*a + *b),
            (Torus(a), JCoset(b)) => JCoset(*a + *b),
            (JCoset(a), Torus(b)) => JCoset(*a - *b),
            (JCoset(a), JCoset(b)) => Torus(*a - *b + half),
            _ => {
                let (p, q) = match (self.to_quaternion(), o.to_quaternion()) {
                    (Some(p), Some(q)) => (p, q),
                    _ => return Err(GroupError::MixedProduct),
                };
                Su2Element::from_quaternion(&p.mul(&q))?
            }
        })
    }

    pub fn pow(&self, n: u64) -> Result<Self, GroupError> {
        let mut acc = Su2Element::identity();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Fixed-width, order-preserving byte encoding used for deduplication and sorting.
    pub fn encode_into(&self, out: &mut Vec<u8>) {
        match self {
            Su2Element::Torus(t) => {
                out.push(0);
                push_angle(out, *t);
            }
            Su2Element::JCoset(t) => {
                out.push(1);
                push_angle(out, *t);
            }
            Su2Element::Quat(q) => {
                out.push(2);
                for c in [q.q.w(), q.q.x(), q.q.y(), q.q.z()] {
                    for r in c.coeffs() {
                        push_i64(out, *r.numer());
                        push_i64(out, *r.denom());
                    }
                }
            }
        }
    }
}

pub(crate) fn push_i64(out: &mut Vec<u8>, v: i64) {
    out.extend_from_slice(&((v as u64) ^ (1 << 63)).to_be_bytes());
}

pub(crate) fn push_angle(out: &mut Vec<u8>, t: RationalAngle) {
    push_i64(out, t.numerator());
    push_i64(out, t.denominator());
}

impl fmt::Debug for Su2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Su2Element::Torus(t) => write!(f, "T({t})"),
            Su2Element::JCoset(t) => write!(f, "J({t})"),
            Su2Element::Quat(q) => write!(f, "Q{:?}", q.q),
        }
    }
}

impl fmt::Display for Su2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::rational(n, d)
    }

    #[test]
    fn quaternion_units_are_hybrid() {
        let z = fe(0, 1);
        let qi = UnitQuaternion::new(z.clone(), fe(1, 1), z.clone(), z.clone()).unwrap();
        let qk = UnitQuaternion::new(z.clone(), z.clone(), z.clone(), fe(1, 1)).unwrap();
        let qm = UnitQuaternion::new(fe(-1, 1), z.clone(), z.clone(), z).unwrap();
        assert_eq!(Su2Element::from_quaternion(&qi).unwrap(), Su2Element::i());
        assert_eq!(Su2Element::from_quaternion(&qk).unwrap(), Su2Element::k());
        assert_eq!(Su2Element::from_quaternion(&qm).unwrap(), Su2Element::minus_identity());
    }

    #[test]
    fn hybrid_rules_match_quaternion_products() {
        let angles = [0, 1, 2, 3, 5, 7].map(|k| RationalAngle::new(k, 8));
        let mut elems = Vec::new();
        for t in angles {
            elems.push(Su2Element::Torus(t));
            elems.push(Su2Element::JCoset(t));
        }
        for a in &elems {
            for b in &elems {
                let hybrid = a.mul(b).unwrap();
                let via = a.to_quaternion().unwrap().mul(&b.to_quaternion().unwrap());
                assert_eq!(hybrid, Su2Element::from_quaternion(&via).unwrap(), "{a:?}*{b:?}");
            }
            assert!(a.mul(&a.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn quaternion_relations() {
        assert_eq!(Su2Element::i().mul(&Su2Element::j()).unwrap(), Su2Element::k());
        assert_eq!(Su2Element::j().mul(&Su2Element::j()).unwrap(), Su2Element::minus_identity());
        assert_eq!(Su2Element::k().order(), 4);
        assert_eq!(Su2Element::j().eigen_angle(), RationalAngle::new(1, 4));
    }

    #[test]
    fn mixed_products_outside_the_field_are_rejected() {
        let s = UnitQuaternion::new(fe(1, 2), fe(1, 2), fe(1, 2), fe(1, 2)).unwrap();
        let s = Su2Element::from_quaternion(&s).unwrap();
        let third = Su2Element::Torus(RationalAngle::new(1, 3));
        assert_eq!(third.mul(&s), Err(GroupError::MixedProduct));
        assert!(Su2Element::i().mul(&s).is_ok());
    }

    #[test]
    fn serde_round_trip() {
        let s = UnitQuaternion::new(fe(1, 2), fe(1, 2), fe(1, 2), fe(-1, 2)).unwrap();
        for e in [Su2Element::i(), Su2Element::k(), Su2Element::from_quaternion(&s).unwrap()] {
            let js = serde_json::to_string(&e).unwrap();
            let back: Su2Element = serde_json::from_str(&js).unwrap();
            assert_eq!(back, e);
        }
    }
}
