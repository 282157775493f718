use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{ArithError, FieldElement, RationalAngle};

pub const DEFAULT_ORDER_CAP: u32 = 240;

/// A unit quaternion `w + xi + yj + zk` with coordinates in `Q(√2, √5)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitQuaternion {
    w: FieldElement,
    x: FieldElement,
    y: FieldElement,
    z: FieldElement,
}

impl UnitQuaternion {
    pub fn new(w: FieldElement, x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self, ArithError> {
        let norm = &(&(&w * &w) + &(&x * &x)) + &(&(&y * &y) + &(&z * &z));
        if norm != FieldElement::one() {
            return Err(ArithError::NotUnit);
        }
        Ok(UnitQuaternion { w, x, y, z })
    }

    pub fn identity() -> Self {
        UnitQuaternion {
            w: FieldElement::one(),
            x: FieldElement::zero(),
            y: FieldElement::zero(),
            z: FieldElement::zero(),
        }
    }

    pub fn w(&self) -> &FieldElement {
        &self.w
    }
    pub fn x(&self) -> &FieldElement {
        &self.x
    }
    pub fn y(&self) -> &FieldElement {
        &self.y
    }
    pub fn z(&self) -> &FieldElement {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Conjugate, which is the inverse for unit quaternions.
    pub fn conj(&self) -> Self {
        UnitQuaternion {
            w: self.w.clone(),
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }

    pub fn neg(&self) -> Self {
        UnitQuaternion {
            w: -&self.w,
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        let w = &(&(a1 * a2) - &(b1 * b2)) - &(&(c1 * c2) + &(d1 * d2));
        let x = &(&(a1 * b2) + &(b1 * a2)) + &(&(c1 * d2) - &(d1 * c2));
        let y = &(&(a1 * c2) - &(b1 * d2)) + &(&(c1 * a2) + &(d1 * b2));
        let z = &(&(a1 * d2) + &(b1 * c2)) + &(&(d1 * a2) - &(c1 * b2));
        UnitQuaternion { w, x, y, z }
    }
}

impl fmt::Debug for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.w, self.x, self.y, self.z)
    }
}

impl fmt::Display for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Smallest `n >= 1` with `q^n = 1`, searching up to `cap`.
pub fn quat_order(q: &UnitQuaternion, cap: u32) -> Result<u32, ArithError> {
    let mut acc = q.clone();
    for n in 1..=cap {
        if acc.is_identity() {
            return Ok(n);
        }
        acc = acc.mul(q);
    }
    Err(ArithError::Overflow { cap })
}

/// `cos(2π·t)` when it lies in `Q(√2, √5)`.
pub fn cos_turns(t: RationalAngle) -> Option<FieldElement> {
    let n = t.denominator();
    let k = t.numerator().min(n - t.numerator());
    let half = |x: FieldElement| &x * &FieldElement::rational(1, 2);
    let quarter = |a: i64, b: i64| &FieldElement::rational(a, 4) + &FieldElement::sqrt5(b, 4);
    Some(match (k, n) {
        (0, 1) => FieldElement::one(),
        (1, 2) => FieldElement::rational(-1, 1),
        (_, 3) => FieldElement::rational(-1, 2),
        (_, 4) => FieldElement::zero(),
        (_, 6) => FieldElement::rational(1, 2),
        (1, 8) => half(FieldElement::sqrt2(1, 1)),
        (3, 8) => half(FieldElement::sqrt2(-1, 1)),
        (1, 5) => quarter(-1, 1),
        (2, 5) => quarter(-1, -1),
        (1, 10) => quarter(1, 1),
        (3, 10) => quarter(1, -1),
        _ => return None,
    })
}

/// `sin(2π·t)` when it lies in `Q(√2, √5)`.
pub fn sin_turns(t: RationalAngle) -> Option<FieldElement> {
    cos_turns(t - RationalAngle::new(1, 4))
}

/// The eigen angle `t ∈ [0, 1/2]` with eigenvalues `exp(±2πi·t)`.
pub fn eigen_angle_of(q: &UnitQuaternion) -> Result<RationalAngle, ArithError> {
    let n = quat_order(q, DEFAULT_ORDER_CAP)? as i64;
    if n == 1 {
        return Ok(RationalAngle::ZERO);
    }
    (1..=n / 2)
        .filter(|k| k.gcd(&n) == 1)
        .map(|k| RationalAngle::new(k, n))
        .find(|t| cos_turns(*t).as_ref() == Some(q.w()))
        .ok_or(ArithError::NoMatch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::rational(n, d)
    }

    fn half_all() -> UnitQuaternion {
        UnitQuaternion::new(fe(1, 2), fe(1, 2), fe(1, 2), fe(1, 2)).unwrap()
    }

    fn quat_i() -> UnitQuaternion {
        UnitQuaternion::new(fe(0, 1), fe(1, 1), fe(0, 1), fe(0, 1)).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(quat_order(&UnitQuaternion::identity(), DEFAULT_ORDER_CAP).unwrap(), 1);
        assert_eq!(quat_order(&quat_i(), DEFAULT_ORDER_CAP).unwrap(), 4);
        assert_eq!(quat_order(&half_all(), DEFAULT_ORDER_CAP).unwrap(), 6);
        assert_eq!(quat_order(&half_all(), 3), Err(ArithError::Overflow { cap: 3 }));
    }

    #[test]
    fn eigen_angles() {
        assert_eq!(eigen_angle_of(&UnitQuaternion::identity()).unwrap(), RationalAngle::ZERO);
        assert_eq!(eigen_angle_of(&quat_i()).unwrap(), RationalAngle::new(1, 4));
        assert_eq!(eigen_angle_of(&half_all()).unwrap(), RationalAngle::new(1, 6));
        assert_eq!(eigen_angle_of(&half_all().neg()).unwrap(), RationalAngle::new(1, 3));
    }

    #[test]
    fn rejects_non_unit() {
        assert_eq!(
            UnitQuaternion::new(fe(1, 1), fe(1, 1), fe(0, 1), fe(0, 1)),
            Err(ArithError::NotUnit)
        );
    }

    #[test]
    fn cosine_table_matches_float() {
        for n in 1..=12 {
            for k in 0..n {
                let t = RationalAngle::new(k, n);
                if let Some(c) = cos_turns(t) {
                    let expect = (2.0 * std::f64::consts::PI * t.to_f64()).cos();
                    assert!((c.to_f64() - expect).abs() < 1e-12, "{t}");
                }
            }
        }
    }
}
