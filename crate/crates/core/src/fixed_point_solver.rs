//! Exact fixed-point and freeness engine.
//!
//! An isometry `(A, B)` acting by `g ↦ A g B⁻¹` fixes a point of the
//! biquotient iff for some circle parameter `z` the matrices
//! `diag(z^a)·A` and `diag(z^b)·B` have the same eigenvalues. Eigenvalues are
//! written additively as monomials `m·z + β` in `Q/Z`; each of the six
//! bijections between the two triples gives a congruence system in `z`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::espaces::{permutations3, EschParams, SpaceParams};
use crate::exact_arith::{reduce_system, Congruence, RationalAngle};
use crate::group_catalog::{
    effective_abstract_type, AbstractDescriptor, FiniteIsometryGroup, GroupError, IsometryTuple, Side, Su2Element,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("the {side} SU(2) factor is not part of this space's natural isometry group")]
    UnsupportedFactor { side: Side },
    #[error("the space has no SU(2) factor on the {side}")]
    NoSuchFactor { side: Side },
    #[error("fixed-point analysis is only available for Eschenburg spaces, not {0}")]
    UnsupportedSpace(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The eigenvalue `z^m · exp(2πi·β)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigMonomial {
    pub z_exp: i64,
    pub const_angle: RationalAngle,
}

impl EigMonomial {
    pub fn new(z_exp: i64, const_angle: RationalAngle) -> Self {
        EigMonomial { z_exp, const_angle }
    }

    pub fn eval(&self, z: RationalAngle) -> RationalAngle {
        z.scale(self.z_exp) + self.const_angle
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigTriples {
    pub left: [EigMonomial; 3],
    pub right: [EigMonomial; 3],
}

/// Slot order putting a repeated exponent pair first, if there is one.
/// The SU(2) factor of a side acts on the first two slots.
fn block_order(exps: [i64; 3]) -> ([usize; 3], bool) {
    for order in [[0, 1, 2], [0, 2, 1], [1, 2, 0]] {
        if exps[order[0]] == exps[order[1]] {
            return (order, true);
        }
    }
    ([0, 1, 2], false)
}

/// Whether the SU(2) factor on `side` belongs to the natural isometry group.
pub fn supports_factor(space: &EschParams, side: Side) -> bool {
    let exps = match side {
        Side::Left => space.a(),
        Side::Right => space.b(),
    };
    block_order(exps).1
}

/// Sides whose SU(2) factor belongs to the natural isometry group.
pub fn available_sides(space: &EschParams) -> Vec<Side> {
    [Side::Left, Side::Right].into_iter().filter(|s| supports_factor(space, *s)).collect()
}

fn side_parts(exps: [i64; 3], w: RationalAngle, g: &Su2Element, side: Side) -> Result<[(i64, RationalAngle); 3], SolverError> {
    let (order, supported) = block_order(exps);
    let theta = match g {
        Su2Element::Torus(t) => *t,
        _ if supported => g.eigen_angle(),
        _ => return Err(SolverError::UnsupportedFactor { side }),
    };
    let consts = [w + theta, w - theta, -w.scale(2)];
    Ok([0, 1, 2].map(|s| (exps[order[s]], consts[s])))
}

/// Eigenvalue monomials of `diag(z^a)·A` and `diag(z^b)·B` for the isometry `t`.
pub fn eig_triples(space: &EschParams, t: &IsometryTuple) -> Result<EigTriples, SolverError> {
    let l = side_parts(space.a(), t.w1, &t.g1, Side::Left)?;
    let r = side_parts(space.b(), t.w2, &t.g2, Side::Right)?;
    Ok(EigTriples {
        left: l.map(|(m, c)| EigMonomial::new(m, c)),
        right: r.map(|(m, c)| EigMonomial::new(m, c)),
    })
}

fn bijection_system(left: &[EigMonomial; 3], right: &[EigMonomial; 3], perm: &[usize; 3]) -> Congruence {
    reduce_system((0..3).map(|i| {
        let (l, r) = (left[i], right[perm[i]]);
        (l.z_exp - r.z_exp, r.const_angle - l.const_angle)
    }))
}

/// First `(z, bijection index)` making the multisets equal: lowest bijection, then smallest `z`.
pub fn fixed_point_witness(left: &[EigMonomial; 3], right: &[EigMonomial; 3]) -> Option<(RationalAngle, usize)> {
    permutations3()
        .iter()
        .enumerate()
        .find_map(|(idx, perm)| bijection_system(left, right, perm).smallest().map(|z| (z, idx)))
}

/// Whether `t` acts trivially: `A = ζ·diag(z^a)` and `B = ζ·diag(z^b)` for some `z` and scalar `ζ`.
pub fn is_in_action_kernel(space: &EschParams, t: &IsometryTuple) -> Result<bool, SolverError> {
    let tr = eig_triples(space, t)?;
    if !t.g1.is_diagonal() || !t.g2.is_diagonal() {
        return Ok(false);
    }
    let (l0, rest) = (tr.left[0], &tr.left[1..]);
    // ζ = L0 - a0·z eliminated against every other entry.
    let eqs = rest
        .iter()
        .chain(tr.right.iter())
        .map(|m| (m.z_exp - l0.z_exp, m.const_angle - l0.const_angle));
    Ok(!reduce_system(eqs).is_empty())
}

/// A fixed point of a non-kernel element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointWitness {
    pub z: RationalAngle,
    #[serde(rename = "lambda", default, skip_serializing_if = "Option::is_none")]
    pub free_eigen: Option<RationalAngle>,
    pub bijection: usize,
    pub element: IsometryTuple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Free,
    NotFree,
}

/// What was tested for freeness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub label: String,
    /// Number of elements, absent for a full SU(2) factor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_order: Option<u64>,
    /// Abstract type of the group modulo the action kernel.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effective: Option<AbstractDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessCertificate {
    pub space: SpaceParams,
    pub group: GroupSummary,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FixedPointWitness>,
}

impl FreenessCertificate {
    pub fn is_free(&self) -> bool {
        self.verdict == Verdict::Free
    }
}

/// Eschenburg form of a space, or `UnsupportedSpace`.
pub fn esch_form(space: &SpaceParams) -> Result<EschParams, SolverError> {
    space.as_esch().ok_or_else(|| SolverError::UnsupportedSpace(space.to_string()))
}

/// Certifies whether `group` acts freely on `space`.
pub fn action_is_free(space: &SpaceParams, group: &FiniteIsometryGroup, label: &str) -> Result<FreenessCertificate, SolverError> {
    let esch = esch_form(space)?;
    let kernel = group
        .elements()
        .par_iter()
        .map(|t| is_in_action_kernel(&esch, t))
        .collect::<Result<Vec<bool>, _>>()?;
    let witness = group
        .elements()
        .par_iter()
        .zip(kernel.par_iter())
        .filter(|(_, k)| !**k)
        .map(|(t, _)| {
            let tr = eig_triples(&esch, t).expect("checked during kernel test");
            fixed_point_witness(&tr.left, &tr.right).map(|(z, bijection)| FixedPointWitness {
                z,
                free_eigen: None,
                bijection,
                element: t.clone(),
            })
        })
        .find_map_first(|w| w);
    let kernel_order = kernel.iter().filter(|k| **k).count() as u64;
    let effective = effective_abstract_type(group, |t| is_in_action_kernel(&esch, t).unwrap_or(false))?;
    Ok(FreenessCertificate {
        space: *space,
        group: GroupSummary {
            label: label.to_string(),
            order: Some(group.len() as u64),
            kernel_order: Some(kernel_order),
            effective: Some(effective),
        },
        verdict: if witness.is_some() { Verdict::NotFree } else { Verdict::Free },
        witness,
    })
}

/// Certifies whether the whole SU(2) factor on `side` acts freely, modulo the kernel.
///
/// The factor element is conjugate to `Torus(λ)` with `λ` unknown. In each
/// bijection `λ` and `-λ` appear in exactly two equations with opposite
/// signs; their sum eliminates `λ`, the remaining system is solved for `z`,
/// and `λ` is read back from one of the two equations.
pub fn so3_factor_is_free(space: &SpaceParams, side: Side) -> Result<FreenessCertificate, SolverError> {
    let esch = esch_form(space)?;
    if !supports_factor(&esch, side) {
        return Err(SolverError::NoSuchFactor { side });
    }
    let half_in_kernel = is_in_action_kernel(&esch, &IsometryTuple::on_side(side, Su2Element::minus_identity()))?;
    let in_kernel = |lambda: RationalAngle| lambda.is_zero() || (half_in_kernel && lambda == RationalAngle::HALF);

    // Symbolic triples with zero constants; λ coefficients per slot.
    let base = eig_triples(&esch, &IsometryTuple::identity())?;
    let (lam_left, lam_right) = match side {
        Side::Left => ([1, -1, 0], [0, 0, 0]),
        Side::Right => ([0, 0, 0], [1, -1, 0]),
    };

    let mut witness = None;
    'search: for (idx, perm) in permutations3().iter().enumerate() {
        // rows: (z coefficient, λ coefficient), all targets zero
        let rows: Vec<(i64, i64)> = (0..3)
            .map(|i| {
                let j = perm[i];
                (base.left[i].z_exp - base.right[j].z_exp, lam_left[i] - lam_right[j])
            })
            .collect();
        let with_lambda: Vec<_> = rows.iter().filter(|r| r.1 != 0).copied().collect();
        let plain = rows.iter().find(|r| r.1 == 0).copied().expect("one row free of λ");
        let (m1, s1) = with_lambda[0];
        let (m2, _) = with_lambda[1];
        let zs = reduce_system([(m1 + m2, RationalAngle::ZERO), (plain.0, RationalAngle::ZERO)]);
        // m1·z + s1·λ = 0  =>  λ = -s1·m1·z
        let c = -s1 * m1;
        let candidates = match zs.solutions() {
            Some(v) => v,
            None if c == 0 => Vec::new(),
            None => vec![RationalAngle::new(1, 4 * c.abs())],
        };
        for z in candidates {
            let lambda = z.scale(c);
            if !in_kernel(lambda) {
                witness = Some(FixedPointWitness {
                    z,
                    free_eigen: Some(lambda),
                    bijection: idx,
                    element: IsometryTuple::on_side(side, Su2Element::Torus(lambda)),
                });
                break 'search;
            }
        }
    }
    Ok(FreenessCertificate {
        space: *space,
        group: GroupSummary {
            label: format!("SU(2)@{side}"),
            order: None,
            kernel_order: Some(if half_in_kernel { 2 } else { 1 }),
            effective: None,
        },
        verdict: if witness.is_some() { Verdict::NotFree } else { Verdict::Free },
        witness,
    })
}

/// Re-checks a witness by direct substitution: the element is outside the
/// kernel and the two eigenvalue multisets coincide at `z`.
pub fn verify_witness(space: &EschParams, w: &FixedPointWitness) -> bool {
    let Ok(tr) = eig_triples(space, &w.element) else {
        return false;
    };
    if is_in_action_kernel(space, &w.element).unwrap_or(true) {
        return false;
    }
    let mut l = tr.left.map(|m| m.eval(w.z));
    let mut r = tr.right.map(|m| m.eval(w.z));
    l.sort();
    r.sort();
    l == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::espaces::E2Params;
    use crate::group_catalog::{build_group, close_subgroup, GroupKind, DEFAULT_CLOSURE_CAP};

    fn a(n: i64, d: i64) -> RationalAngle {
        RationalAngle::new(n, d)
    }

    fn e2(p: [i64; 3]) -> EschParams {
        E2Params::new(p).unwrap().to_esch()
    }

    fn sp(s: &str) -> SpaceParams {
        s.parse().unwrap()
    }

    fn mono(m: i64, c: RationalAngle) -> EigMonomial {
        EigMonomial::new(m, c)
    }

    fn multiset(ms: &[EigMonomial; 3]) -> Vec<(i64, RationalAngle)> {
        let mut v: Vec<_> = ms.iter().map(|m| (m.z_exp, m.const_angle)).collect();
        v.sort();
        v
    }

    #[test]
    fn triples_for_e1_and_e2() {
        let g = Su2Element::Torus(a(1, 5));
        let tr = eig_triples(&e2([1, 1, 2]), &IsometryTuple::on_side(Side::Right, g)).unwrap();
        assert_eq!(multiset(&tr.left), vec![(1, a(0, 1)), (1, a(0, 1)), (2, a(0, 1))]);
        assert_eq!(multiset(&tr.right), vec![(0, a(1, 5)), (0, a(4, 5)), (4, a(0, 1))]);

        // left torus (t1, t2) = (1/2, 0) on (1,2,3)
        let t = IsometryTuple::new(a(1, 4), Su2Element::Torus(a(1, 4)), a(0, 1), Su2Element::identity());
        let tr = eig_triples(&e2([1, 2, 3]), &t).unwrap();
        assert_eq!(multiset(&tr.left), vec![(1, a(1, 2)), (2, a(0, 1)), (3, a(1, 2))]);
        assert_eq!(multiset(&tr.right), vec![(0, a(0, 1)), (0, a(0, 1)), (6, a(0, 1))]);

        let bad = IsometryTuple::on_side(Side::Left, Su2Element::j());
        assert_eq!(eig_triples(&e2([1, 2, 3]), &bad), Err(SolverError::UnsupportedFactor { side: Side::Left }));
    }

    #[test]
    fn witness_examples() {
        let w = a(1, 3);
        let left = [mono(1, a(0, 1)), mono(1, a(0, 1)), mono(2, a(0, 1))];
        let right = [mono(0, w), mono(0, w.scale(2)), mono(4, a(0, 1))];
        assert_eq!(fixed_point_witness(&left, &right).map(|x| x.0), Some(a(1, 3)));

        let zzz = [mono(1, a(0, 1)); 3];
        assert_eq!(fixed_point_witness(&zzz, &zzz), Some((a(0, 1), 0)));

        let right = [mono(0, a(1, 2)), mono(0, a(1, 2)), mono(4, a(0, 1))];
        assert_eq!(fixed_point_witness(&left, &right).map(|x| x.0), Some(a(1, 2)));

        let right = [mono(0, a(1, 4)), mono(0, a(3, 4)), mono(0, a(1, 2))];
        let left = [mono(0, a(0, 1)), mono(0, a(1, 4)), mono(0, a(3, 4))];
        assert_eq!(fixed_point_witness(&left, &right), None);
    }

    #[test]
    fn kernel_examples() {
        let mid = Su2Element::minus_identity;
        let id = Su2Element::identity;
        let z = a(0, 1);
        assert!(is_in_action_kernel(&e2([1, 1, 2]), &IsometryTuple::new(z, mid(), z, id())).unwrap());
        assert!(is_in_action_kernel(&e2([1, 1, 3]), &IsometryTuple::new(z, id(), z, mid())).unwrap());
        assert!(!is_in_action_kernel(&e2([1, 2, 3]), &IsometryTuple::new(z, id(), z, mid())).unwrap());
        assert!(!is_in_action_kernel(&e2([1, 1, 2]), &IsometryTuple::new(z, id(), z, mid())).unwrap());
        assert!(is_in_action_kernel(&e2([1, 2, 3]), &IsometryTuple::identity()).unwrap());
        // a left central phase alone moves points
        let circle = IsometryTuple::new(a(1, 7), Su2Element::identity(), a(0, 1), Su2Element::identity());
        assert!(!is_in_action_kernel(&e2([1, 2, 3]), &circle).unwrap());
    }

    #[test]
    fn action_examples() {
        let q8 = build_group(GroupKind::BinaryDihedral(2)).unwrap();
        let g = FiniteIsometryGroup::from_factor(&q8, Side::Right);
        assert!(action_is_free(&sp("1,1,1"), &g, "q8").unwrap().is_free());

        let c5 = close_subgroup(&[IsometryTuple::on_side(Side::Right, Su2Element::Torus(a(1, 5)))], DEFAULT_CLOSURE_CAP).unwrap();
        let cert = action_is_free(&sp("1,1,4"), &c5, "c5").unwrap();
        assert_eq!(cert.verdict, Verdict::NotFree);
        let w = cert.witness.unwrap();
        assert_eq!(w.z.order(), 5);
        assert!(verify_witness(&e2([1, 1, 4]), &w));

        let trivial = close_subgroup(&[], DEFAULT_CLOSURE_CAP).unwrap();
        assert!(action_is_free(&sp("1,2,3"), &trivial, "1").unwrap().is_free());
    }

    #[test]
    fn factor_examples() {
        let cert = so3_factor_is_free(&sp("1,1,2"), Side::Right).unwrap();
        assert_eq!(cert.verdict, Verdict::NotFree);
        assert!(verify_witness(&e2([1, 1, 2]), cert.witness.as_ref().unwrap()));
        assert!(so3_factor_is_free(&sp("1,1,2"), Side::Left).unwrap().is_free());
        assert!(so3_factor_is_free(&sp("1,1,1"), Side::Right).unwrap().is_free());
        assert_eq!(
            so3_factor_is_free(&sp("1,2,3"), Side::Left).unwrap_err(),
            SolverError::NoSuchFactor { side: Side::Left }
        );
        assert!(matches!(
            so3_factor_is_free(&sp("1,1,1,1,1"), Side::Left),
            Err(SolverError::UnsupportedSpace(_))
        ));
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = so3_factor_is_free(&sp("1,1,2"), Side::Right).unwrap();
        let js = serde_json::to_string(&cert).unwrap();
        assert!(js.contains("\"lambda\""));
        let back: FreenessCertificate = serde_json::from_str(&js).unwrap();
        assert_eq!(back, cert);
    }
}
