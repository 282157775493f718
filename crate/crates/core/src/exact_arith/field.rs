use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Q = Ratio<i64>;

fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn add_q(a: &Q, b: &Q) -> Q {
    a.checked_add(b).expect("field arithmetic overflow (add)")
}

fn sub_q(a: &Q, b: &Q) -> Q {
    a.checked_sub(b).expect("field arithmetic overflow (sub)")
}

fn mul_q(a: &Q, b: &Q) -> Q {
    a.checked_mul(b).expect("field arithmetic overflow (mul)")
}

/// An element `a + b√2 + c√5 + d√10` of the real field `Q(√2, √5)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElement {
    coeffs: [Q; 4],
}

impl FieldElement {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        FieldElement { coeffs: [a, b, c, d] }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::new(q(n, d), Q::zero(), Q::zero(), Q::zero())
    }

    pub fn zero() -> Self {
        Self::rational(0, 1)
    }

    pub fn one() -> Self {
        Self::rational(1, 1)
    }

    /// `(n/d)·√2`.
    pub fn sqrt2(n: i64, d: i64) -> Self {
        Self::new(Q::zero(), q(n, d), Q::zero(), Q::zero())
    }

    /// `(n/d)·√5`.
    pub fn sqrt5(n: i64, d: i64) -> Self {
        Self::new(Q::zero(), Q::zero(), q(n, d), Q::zero())
    }

    pub fn coeffs(&self) -> &[Q; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        // x = u + v√5 with u = a + b√2, v = c + d√2.
        let [a, b, c, d] = &self.coeffs;
        let u = (*a, *b);
        let v = (*c, *d);
        let su = sign_sqrt2(&u);
        let sv = sign_sqrt2(&v);
        if sv == 0 || su == sv {
            return if su == 0 { sv } else { su };
        }
        if su == 0 {
            return sv;
        }
        // Opposite signs: compare u² with 5v².
        let u2 = sq_sqrt2(&u);
        let v2 = sq_sqrt2(&v);
        let diff = (sub_q(&u2.0, &mul_q(&q(5, 1), &v2.0)), sub_q(&u2.1, &mul_q(&q(5, 1), &v2.1)));
        match sign_sqrt2(&diff) {
            1 => su,
            -1 => sv,
            _ => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Q| *r.numer() as f64 / *r.denom() as f64;
        let [a, b, c, d] = &self.coeffs;
        f(a) + f(b) * 2f64.sqrt() + f(c) * 5f64.sqrt() + f(d) * 10f64.sqrt()
    }
}

/// Sign of `a + b√2`.
fn sign_sqrt2(x: &(Q, Q)) -> i32 {
    let sa = sgn(&x.0);
    let sb = sgn(&x.1);
    if sb == 0 || sa == sb {
        return if sa == 0 { sb } else { sa };
    }
    if sa == 0 {
        return sb;
    }
    let lhs = mul_q(&x.0, &x.0);
    let rhs = mul_q(&q(2, 1), &mul_q(&x.1, &x.1));
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

fn sq_sqrt2(x: &(Q, Q)) -> (Q, Q) {
    let a2 = mul_q(&x.0, &x.0);
    let b2 = mul_q(&q(2, 1), &mul_q(&x.1, &x.1));
    (add_q(&a2, &b2), mul_q(&q(2, 1), &mul_q(&x.0, &x.1)))
}

fn sgn(r: &Q) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        let c = &self.coeffs;
        let d = &o.coeffs;
        FieldElement::new(add_q(&c[0], &d[0]), add_q(&c[1], &d[1]), add_q(&c[2], &d[2]), add_q(&c[3], &d[3]))
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self + &(-o)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let c = &self.coeffs;
        FieldElement::new(-c[0], -c[1], -c[2], -c[3])
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        // Basis products: e_i·e_j = k·e_l over {1, √2, √5, √10}.
        const TABLE: [[(i64, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (2, 0), (1, 3), (2, 2)],
            [(1, 2), (1, 3), (5, 0), (5, 1)],
            [(1, 3), (2, 2), (5, 1), (10, 0)],
        ];
        let mut out = [Q::zero(), Q::zero(), Q::zero(), Q::zero()];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (k, l) = TABLE[i][j];
                let term = mul_q(&mul_q(x, y), &q(k, 1));
                out[l] = add_q(&out[l], &term);
            }
        }
        FieldElement { coeffs: out }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["", "√2", "√5", "√10"];
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(NAMES) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            write!(f, "{}{}", c.abs(), name)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
