//! Finite subgroups of SU(2) and of the natural isometry groups, with exact
//! element representations.

mod abstract_type;
mod isometry;
mod su2;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use abstract_type::{abstract_type, effective_abstract_type, exponent, invariant_factors, AbstractDescriptor};
pub use isometry::{close_subgroup, FiniteIsometryGroup, IsometryTuple, DEFAULT_CLOSURE_CAP};
pub use su2::{QuatElement, Su2Element};

use crate::exact_arith::{ArithError, FieldElement, RationalAngle, UnitQuaternion};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("product of a torus element outside Q(√2,√5) with a quaternion element")]
    MixedProduct,
    #[error("closure exceeded {cap} elements")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
}

/// Which SU(2) factor of the natural isometry group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(GroupError::UnknownGroup(s.to_string())),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Cyclic(u32),
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupKind {
    pub fn order(&self) -> u64 {
        match *self {
            GroupKind::Cyclic(n) => n as u64,
            GroupKind::BinaryDihedral(n) => 4 * n as u64,
            GroupKind::BinaryTetrahedral => 24,
            GroupKind::BinaryOctahedral => 48,
            GroupKind::BinaryIcosahedral => 120,
        }
    }
}

impl FromStr for GroupKind {
    type Err = GroupError;

    /// Names: `cyclic:n`, `bindihedral:n`, `quaternion8`, `2T`, `2O`, `2I`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::UnknownGroup(s.to_string());
        let param = |v: &str| v.trim().parse::<u32>().ok().filter(|n| *n >= 1).ok_or_else(bad);
        match s.trim() {
            "quaternion8" => Ok(GroupKind::BinaryDihedral(2)),
            "2T" => Ok(GroupKind::BinaryTetrahedral),
            "2O" => Ok(GroupKind::BinaryOctahedral),
            "2I" => Ok(GroupKind::BinaryIcosahedral),
            other => match other.split_once(':') {
                Some(("cyclic", n)) => Ok(GroupKind::Cyclic(param(n)?)),
                Some(("bindihedral", n)) => Ok(GroupKind::BinaryDihedral(param(n)?)),
                _ => Err(bad()),
            },
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupKind::BinaryDihedral(n) => write!(f, "bindihedral:{n}"),
            GroupKind::BinaryTetrahedral => f.write_str("2T"),
            GroupKind::BinaryOctahedral => f.write_str("2O"),
            GroupKind::BinaryIcosahedral => f.write_str("2I"),
        }
    }
}

/// A finite subgroup of SU(2), elements sorted by canonical encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSu2Group {
    kind: GroupKind,
    elements: Vec<Su2Element>,
}

impl FiniteSu2Group {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn elements(&self) -> &[Su2Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn encode_su2(g: &Su2Element) -> Vec<u8> {
    let mut out = Vec::new();
    g.encode_into(&mut out);
    out
}

fn quat(w: FieldElement, x: FieldElement, y: FieldElement, z: FieldElement) -> Su2Element {
    let q = UnitQuaternion::new(w, x, y, z).expect("catalog generator has unit norm");
    Su2Element::from_quaternion(&q).expect("catalog generator has finite order")
}

fn polyhedral_generators(kind: GroupKind) -> Vec<Su2Element> {
    let r = FieldElement::rational;
    // (1 + i + j + k)/2
    let s = quat(r(1, 2), r(1, 2), r(1, 2), r(1, 2));
    match kind {
        GroupKind::BinaryTetrahedral => vec![Su2Element::i(), s],
        // (1 + i)/√2
        GroupKind::BinaryOctahedral => vec![Su2Element::Torus(RationalAngle::new(1, 8)), s],
        GroupKind::BinaryIcosahedral => {
            // (φ + φ⁻¹ i + j)/2 with φ = (1+√5)/2
            let w = &r(1, 4) + &FieldElement::sqrt5(1, 4);
            let x = &r(-1, 4) + &FieldElement::sqrt5(1, 4);
            vec![s, quat(w, x, r(1, 2), r(0, 1))]
        }
        _ => unreachable!("not a polyhedral kind"),
    }
}

/// Full element list of a catalog group.
pub fn build_group(kind: GroupKind) -> Result<FiniteSu2Group, GroupError> {
    let mut elements = match kind {
        GroupKind::Cyclic(n) => (0..n as i64).map(|k| Su2Element::Torus(RationalAngle::new(k, n as i64))).collect(),
        GroupKind::BinaryDihedral(n) => {
            let m = 2 * n as i64;
            (0..m)
                .flat_map(|k| {
                    let t = RationalAngle::new(k, m);
                    [Su2Element::Torus(t), Su2Element::JCoset(t)]
                })
                .collect()
        }
        _ => isometry::bfs_closure(
            Su2Element::identity(),
            &polyhedral_generators(kind),
            DEFAULT_CLOSURE_CAP,
            Su2Element::mul,
            encode_su2,
        )?,
    };
    elements.sort_by_cached_key(encode_su2);
    Ok(FiniteSu2Group { kind, elements })
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;

    fn histogram(g: &FiniteSu2Group) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for e in g.elements() {
            *h.entry(e.order()).or_insert(0) += 1;
        }
        h
    }

    #[test]
    fn catalog_orders_and_histograms() {
        let c5 = build_group(GroupKind::Cyclic(5)).unwrap();
        assert_eq!(histogram(&c5), BTreeMap::from([(1, 1), (5, 4)]));
        let q8 = build_group("quaternion8".parse().unwrap()).unwrap();
        assert_eq!(histogram(&q8), BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        let t = build_group(GroupKind::BinaryTetrahedral).unwrap();
        assert_eq!(histogram(&t), BTreeMap::from([(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]));
        let o = build_group(GroupKind::BinaryOctahedral).unwrap();
        assert_eq!(o.len(), 48);
        assert_eq!(histogram(&o), BTreeMap::from([(1, 1), (2, 1), (3, 8), (4, 18), (6, 8), (8, 12)]));
        let i = build_group(GroupKind::BinaryIcosahedral).unwrap();
        assert_eq!(i.len(), 120);
        assert_eq!(
            histogram(&i),
            BTreeMap::from([(1, 1), (2, 1), (3, 20), (4, 30), (5, 24), (6, 20), (10, 24)])
        );
    }

    #[test]
    fn catalog_groups_are_closed() {
        let kinds = [
            GroupKind::Cyclic(7),
            GroupKind::BinaryDihedral(3),
            GroupKind::BinaryTetrahedral,
            GroupKind::BinaryOctahedral,
            GroupKind::BinaryIcosahedral,
        ];
        for kind in kinds {
            let g = build_group(kind).unwrap();
            assert_eq!(g.len() as u64, kind.order());
            let set: BTreeSet<_> = g.elements().iter().map(encode_su2).collect();
            for x in g.elements() {
                assert_eq!(kind.order() % x.order(), 0, "Lagrange fails for {x:?} in {kind}");
                assert!(set.contains(&encode_su2(&x.inverse())));
                for y in g.elements() {
                    assert!(set.contains(&encode_su2(&x.mul(y).unwrap())), "{kind}: {x:?}*{y:?}");
                }
            }
        }
    }

    #[test]
    fn binary_dihedral_tags() {
        for n in 1..=6 {
            let g = build_group(GroupKind::BinaryDihedral(n)).unwrap();
            let torus = g.elements().iter().filter(|e| matches!(e, Su2Element::Torus(_))).count();
            let jcos: Vec<_> = g.elements().iter().filter(|e| matches!(e, Su2Element::JCoset(_))).collect();
            assert_eq!(torus, 2 * n as usize);
            assert_eq!(jcos.len(), 2 * n as usize);
            assert!(jcos.iter().all(|e| e.order() == 4));
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!("cyclic:5".parse::<GroupKind>().unwrap(), GroupKind::Cyclic(5));
        assert_eq!("bindihedral:3".parse::<GroupKind>().unwrap(), GroupKind::BinaryDihedral(3));
        assert_eq!("2I".parse::<GroupKind>().unwrap(), GroupKind::BinaryIcosahedral);
        assert!("cyclic:0".parse::<GroupKind>().is_err());
        assert!("dihedral:3".parse::<GroupKind>().is_err());
    }
}
