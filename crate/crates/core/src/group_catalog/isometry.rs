use std::collections::BTreeMap;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::su2::push_angle;
use super::{FiniteSu2Group, GroupError, Side, Su2Element};
use crate::exact_arith::RationalAngle;

pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// A natural isometry `(w1, g1, w2, g2)`: central circle phases and SU(2)
/// parts acting on the left and right of SU(3).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsometryTuple {
    pub w1: RationalAngle,
    pub g1: Su2Element,
    pub w2: RationalAngle,
    pub g2: Su2Element,
}

impl IsometryTuple {
    pub fn new(w1: RationalAngle, g1: Su2Element, w2: RationalAngle, g2: Su2Element) -> Self {
        IsometryTuple { w1, g1, w2, g2 }
    }

    pub fn identity() -> Self {
        Self::new(RationalAngle::ZERO, Su2Element::identity(), RationalAngle::ZERO, Su2Element::identity())
    }

    /// `g` placed in one SU(2) factor, everything else trivial.
    pub fn on_side(side: Side, g: Su2Element) -> Self {
        let mut t = Self::identity();
        match side {
            Side::Left => t.g1 = g,
            Side::Right => t.g2 = g,
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn has_phases(&self) -> bool {
        !self.w1.is_zero() || !self.w2.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Result<Self, GroupError> {
        Ok(IsometryTuple {
            w1: self.w1 + o.w1,
            g1: self.g1.mul(&o.g1)?,
            w2: self.w2 + o.w2,
            g2: self.g2.mul(&o.g2)?,
        })
    }

    pub fn inverse(&self) -> Self {
        IsometryTuple {
            w1: -self.w1,
            g1: self.g1.inverse(),
            w2: -self.w2,
            g2: self.g2.inverse(),
        }
    }

    pub fn pow(&self, n: u64) -> Result<Self, GroupError> {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn order(&self) -> u64 {
        use num_integer::Integer;
        [self.w1.order() as u64, self.g1.order(), self.w2.order() as u64, self.g2.order()]
            .into_iter()
            .fold(1, |a, b| a.lcm(&b))
    }

    /// Canonical byte encoding; its lexicographic order is the element order of groups.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(64);
        push_angle(&mut out, self.w1);
        self.g1.encode_into(&mut out);
        push_angle(&mut out, self.w2);
        self.g2.encode_into(&mut out);
        out
    }
}

impl fmt::Debug for IsometryTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?}, {}, {:?})", self.w1, self.g1, self.w2, self.g2)
    }
}

impl fmt::Display for IsometryTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite group of natural isometries, elements sorted by canonical encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteIsometryGroup {
    elements: Vec<IsometryTuple>,
    generators: Vec<IsometryTuple>,
}

impl FiniteIsometryGroup {
    pub fn elements(&self) -> &[IsometryTuple] {
        &self.elements
    }

    pub fn generators(&self) -> &[IsometryTuple] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, t: &IsometryTuple) -> bool {
        let key = t.encode();
        self.elements.binary_search_by(|e| e.encode().cmp(&key)).is_ok()
    }

    /// A catalog SU(2) group acting through one factor only.
    pub fn from_factor(group: &FiniteSu2Group, side: Side) -> Self {
        let mut elements: Vec<_> = group.elements().iter().map(|g| IsometryTuple::on_side(side, g.clone())).collect();
        elements.sort_by_cached_key(IsometryTuple::encode);
        let generators = elements.iter().filter(|e| !e.is_identity()).cloned().collect();
        FiniteIsometryGroup { elements, generators }
    }

    /// Applies `f` to every element and generator, e.g. a conjugation.
    pub fn map<F>(&self, f: F) -> Result<Self, GroupError>
    where
        F: Fn(&IsometryTuple) -> Result<IsometryTuple, GroupError>,
    {
        let mut elements = self.elements.iter().map(&f).collect::<Result<Vec<_>, _>>()?;
        elements.sort_by_cached_key(IsometryTuple::encode);
        let generators = self.generators.iter().map(&f).collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteIsometryGroup { elements, generators })
    }
}

/// Breadth-first closure of `generators` under right multiplication.
pub(crate) fn bfs_closure<T, M, E>(identity: T, generators: &[T], cap: usize, mul: M, encode: E) -> Result<Vec<T>, GroupError>
where
    T: Clone,
    M: Fn(&T, &T) -> Result<T, GroupError>,
    E: Fn(&T) -> Vec<u8>,
{
    let mut seen: BTreeMap<Vec<u8>, T> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(encode(&identity), identity.clone());
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = mul(&x, g)?;
            let key = encode(&y);
            if !seen.contains_key(&key) {
                if seen.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(key, y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// The subgroup generated by `generators`, bounded by `cap` elements.
pub fn close_subgroup(generators: &[IsometryTuple], cap: usize) -> Result<FiniteIsometryGroup, GroupError> {
    let elements = bfs_closure(IsometryTuple::identity(), generators, cap, IsometryTuple::mul, IsometryTuple::encode)?;
    Ok(FiniteIsometryGroup {
        elements,
        generators: generators.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64, d: i64) -> RationalAngle {
        RationalAngle::new(n, d)
    }

    fn right(g: Su2Element) -> IsometryTuple {
        IsometryTuple::on_side(Side::Right, g)
    }

    #[test]
    fn closure_examples() {
        let g = close_subgroup(&[right(Su2Element::Torus(a(1, 3)))], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.len(), 3);
        let central = IsometryTuple::new(a(1, 5), Su2Element::identity(), a(0, 1), Su2Element::identity());
        let g = close_subgroup(&[central, right(Su2Element::i()), right(Su2Element::j())], DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.len(), 40);
        assert_eq!(close_subgroup(&[], DEFAULT_CLOSURE_CAP).unwrap().len(), 1);
    }

    #[test]
    fn closure_is_idempotent_and_sorted() {
        let g = close_subgroup(&[right(Su2Element::i()), right(Su2Element::j())], DEFAULT_CLOSURE_CAP).unwrap();
        let again = close_subgroup(g.elements(), DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.elements(), again.elements());
        let keys: Vec<_> = g.elements().iter().map(IsometryTuple::encode).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(g.contains(&right(Su2Element::k())));
    }

    #[test]
    fn cap_is_enforced() {
        let r = close_subgroup(&[right(Su2Element::Torus(a(1, 50)))], 20);
        assert_eq!(r.unwrap_err(), GroupError::CapExceeded { cap: 20 });
    }
}
