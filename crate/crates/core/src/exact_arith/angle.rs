use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ArithError;

/// A point of the circle group `Q/Z`, i.e. the root of unity `exp(2πi·num/den)`.
///
/// Always stored reduced with `0 <= num < den`. Addition of angles corresponds
/// to multiplication of the circle elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalAngle {
    num: i64,
    den: i64,
}

fn narrow(v: i128, what: &str) -> i64 {
    i64::try_from(v).unwrap_or_else(|_| panic!("angle arithmetic overflow in {what}: {v}"))
}

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle { num: 0, den: 1 };
    pub const HALF: RationalAngle = RationalAngle { num: 1, den: 2 };

    /// Builds `num/den mod 1`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_wide(num as i128, den as i128)
    }

    fn from_wide(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational angle with zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let r = num.rem_euclid(den);
        let g = r.gcd(&den);
        let (r, d) = if g == 0 { (0, 1) } else { (r / g, den / g) };
        RationalAngle {
            num: narrow(r, "reduce"),
            den: narrow(d, "reduce"),
        }
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    /// Multiplicative order of the root of unity.
    pub fn order(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `m · self`, i.e. the `m`-th power of the root of unity.
    pub fn scale(self, m: i64) -> Self {
        let n = (self.num as i128) * (m as i128);
        Self::from_wide(n.rem_euclid(self.den as i128), self.den as i128)
    }

    /// Divides the representative in `[0,1)` by a positive integer: `(num/den)/g`.
    pub fn div_rep(self, g: i64) -> Self {
        assert!(g > 0);
        Self::from_wide(self.num as i128, (self.den as i128) * (g as i128))
    }

    /// Representative folded into `[0, 1/2]`, i.e. the eigen angle of `diag(e^{iθ}, e^{-iθ})`.
    pub fn fold_half(self) -> Self {
        if 2 * self.num > self.den {
            -self
        } else {
            self
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for RationalAngle {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for RationalAngle {
    type Output = RationalAngle;
    fn add(self, o: RationalAngle) -> RationalAngle {
        let l = (self.den as i128).lcm(&(o.den as i128));
        let n = self.num as i128 * (l / self.den as i128) + o.num as i128 * (l / o.den as i128);
        Self::from_wide(n, l)
    }
}

impl Neg for RationalAngle {
    type Output = RationalAngle;
    fn neg(self) -> RationalAngle {
        Self::from_wide(-(self.num as i128), self.den as i128)
    }
}

impl Sub for RationalAngle {
    type Output = RationalAngle;
    fn sub(self, o: RationalAngle) -> RationalAngle {
        self + (-o)
    }
}

impl Ord for RationalAngle {
    fn cmp(&self, o: &Self) -> Ordering {
        ((self.num as i128) * (o.den as i128)).cmp(&((o.num as i128) * (self.den as i128)))
    }
}

impl PartialOrd for RationalAngle {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalAngle {
    type Err = ArithError;

    /// Accepts `"n/d"` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(RationalAngle::new(n, d))
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalAngle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
