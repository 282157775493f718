use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::espaces::{E2Params, SpaceParams};
use crate::fixed_point_solver::action_is_free;
use crate::group_catalog::{FiniteIsometryGroup, IsometryTuple, Su2Element};

/// The kernel generator of the `SU(2)×SU(2)` action on `E_p`: `(-id, id)` for
/// even `p`, `(id, -id)` for odd `p`.
fn kernel_generator(p: i64) -> IsometryTuple {
    let mid = Su2Element::minus_identity();
    if p % 2 == 0 {
        IsometryTuple::on_side(crate::group_catalog::Side::Left, mid)
    } else {
        IsometryTuple::on_side(crate::group_catalog::Side::Right, mid)
    }
}

/// Freeness on `E_p` decided from element orders alone.
///
/// Every `(γ1, γ2)` outside the kernel must have `|γ1| ≠ |γ2|`, must not be
/// `±(-id, id)`, and must have `|γ1| ∤ p|γ2|` or `|γ2| ∤ (p+1)|γ1|`.
pub fn order_criterion_free(p: i64, group: &FiniteIsometryGroup) -> Result<bool, SearchError> {
    if p < 1 {
        return Err(SearchError::InvalidRange(format!("E1 parameter must be positive, got {p}")));
    }
    let h = kernel_generator(p);
    let p = p as u64;
    let mid = Su2Element::minus_identity();
    let id = Su2Element::identity();
    for t in group.elements() {
        if t.has_phases() {
            return Err(SearchError::UnsupportedGroup(format!("{t} has central phases")));
        }
        if t.is_identity() || *t == h {
            continue;
        }
        let (o1, o2) = (t.g1.order(), t.g2.order());
        let pm = (t.g1 == mid && t.g2 == id) || (t.g1 == id && t.g2 == mid);
        if o1 == o2 || pm {
            return Ok(false);
        }
        if (p * o2).is_multiple_of(o1) && ((p + 1) * o1).is_multiple_of(o2) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub space: SpaceParams,
    pub group: String,
    /// product of a catalog group with the trivial group
    pub product: bool,
    pub order_verdict: bool,
    pub solver_verdict: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| !r.agree)
    }
}

/// Compares the order criterion with the solver on `E_p` for one group.
pub fn compare(p: i64, group: &FiniteIsometryGroup, label: &str, product: bool) -> Result<ComparisonRow, SearchError> {
    let space = SpaceParams::E2(E2Params::new([1, 1, p]).map_err(|e| SearchError::InvalidRange(e.to_string()))?);
    let order_verdict = order_criterion_free(p, group)?;
    let solver_verdict = action_is_free(&space, group, label)?.is_free();
    Ok(ComparisonRow {
        space,
        group: label.to_string(),
        product,
        order_verdict,
        solver_verdict,
        agree: order_verdict == solver_verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::RationalAngle;
    use crate::group_catalog::{build_group, close_subgroup, GroupKind, Side, DEFAULT_CLOSURE_CAP};

    #[test]
    fn examples() {
        let q8 = build_group(GroupKind::BinaryDihedral(2)).unwrap();
        let left = FiniteIsometryGroup::from_factor(&q8, Side::Left);
        assert!(order_criterion_free(2, &left).unwrap());
        assert!(compare(2, &left, "q8", true).unwrap().agree);

        let flip = close_subgroup(&[IsometryTuple::on_side(Side::Left, Su2Element::minus_identity())], DEFAULT_CLOSURE_CAP).unwrap();
        assert!(!order_criterion_free(3, &flip).unwrap());

        let c4 = close_subgroup(&[IsometryTuple::on_side(Side::Right, Su2Element::i())], DEFAULT_CLOSURE_CAP).unwrap();
        assert!(!order_criterion_free(3, &c4).unwrap());
        assert!(compare(3, &c4, "c4", true).unwrap().agree);

        let phased = close_subgroup(
            &[IsometryTuple::new(RationalAngle::new(1, 3), Su2Element::identity(), RationalAngle::ZERO, Su2Element::identity())],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert!(matches!(order_criterion_free(3, &phased), Err(SearchError::UnsupportedGroup(_))));
    }
}
