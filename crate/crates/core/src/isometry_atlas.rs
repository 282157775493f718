//! Known isometry groups and cohomogeneity-one group diagrams as structured data.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::espaces::{classify_family, FamilyTag, SpaceError, SpaceParams};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AtlasError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("no isometry group data recorded for family {0}")]
    NotCovered(FamilyTag),
    #[error("family {0} is not cohomogeneity one")]
    NotCohomogeneityOne(FamilyTag),
}

/// How much of the full (possibly disconnected) isometry group is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FullGroupStatus {
    Known,
    /// An extra component from complex conjugation exists; maximality is open.
    Suspected,
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryDescriptor {
    pub identity_component: String,
    pub dimension: u32,
    pub rank: u32,
    pub full_group: Option<String>,
    pub component_count: Option<u32>,
    pub full_group_status: FullGroupStatus,
    pub cohomogeneity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomOneDiagram {
    pub group: String,
    pub principal_isotropy: String,
    /// generator of the principal isotropy, as a pair of SU(2) elements, when it is finite cyclic
    pub principal_generator: Option<String>,
    pub k_minus: String,
    pub k_plus: String,
    pub slope: (i64, i64),
}

fn descriptor(
    identity: &str,
    dimension: u32,
    rank: u32,
    full: Option<(&str, u32)>,
    status: FullGroupStatus,
    cohomogeneity: u32,
) -> IsometryDescriptor {
    IsometryDescriptor {
        identity_component: identity.to_string(),
        dimension,
        rank,
        full_group: full.map(|(n, _)| n.to_string()),
        component_count: full.map(|(_, c)| c),
        full_group_status: status,
        cohomogeneity,
    }
}

pub fn isometry_descriptor(params: &SpaceParams) -> Result<IsometryDescriptor, AtlasError> {
    let c = classify_family(params)?;
    let tags = [Some(c.family), c.also];
    if tags.contains(&Some(FamilyTag::AloffWallach { k: 1, l: 1 })) {
        return Ok(descriptor("(SU(3)×SU(2))/Z", 11, 3, None, FullGroupStatus::Open, 0));
    }
    Ok(match c.family {
        FamilyTag::AloffWallach { .. } => descriptor("(SU(3)×S¹)/Z", 9, 3, None, FullGroupStatus::Open, 0),
        FamilyTag::E1 { .. } => descriptor(
            "U(2)×SO(3)",
            7,
            3,
            Some(("(U(2)⋊Z₂)×SO(3)", 2)),
            FullGroupStatus::Known,
            1,
        ),
        FamilyTag::E2Generic => {
            let all_odd = c.normalized.map(|p| p.p().iter().all(|x| x.is_odd())).unwrap_or(false);
            let id = if all_odd { "T²×SO(3)" } else { "T²×SU(2)" };
            descriptor(id, 5, 3, None, FullGroupStatus::Suspected, 2)
        }
        FamilyTag::Bazaikin1 { p } if p > 1 => {
            descriptor("U(4)", 16, 4, Some(("U(4)⋊Z₂", 2)), FullGroupStatus::Known, 1)
        }
        FamilyTag::TwistedFlag => descriptor("U(2)", 4, 2, None, FullGroupStatus::Open, 2),
        other => return Err(AtlasError::NotCovered(other)),
    })
}

pub fn group_diagram(params: &SpaceParams) -> Result<CohomOneDiagram, AtlasError> {
    let c = classify_family(params)?;
    let slope = |p: i64| {
        debug_assert_eq!((p + 1).gcd(&p), 1);
        (p + 1, p)
    };
    match c.family {
        FamilyTag::E1 { p } => {
            let generator = if p % 2 == 0 { "(-id, id)" } else { "(id, -id)" };
            Ok(CohomOneDiagram {
                group: "SU(2)×SU(2)".into(),
                principal_isotropy: "Z₂".into(),
                principal_generator: Some(generator.into()),
                k_minus: "ΔSU(2)·H".into(),
                k_plus: format!("S¹ of slope ({}, {})·H", p + 1, p),
                slope: slope(p),
            })
        }
        FamilyTag::Bazaikin1 { p } => Ok(CohomOneDiagram {
            group: "SU(4)".into(),
            principal_isotropy: "SU(2)·Z₂".into(),
            principal_generator: None,
            k_minus: "Sp(2)∪i·Sp(2)".into(),
            k_plus: format!("SU(2)·S¹ of slope ({}, {})", p + 1, p),
            slope: slope(p),
        }),
        other => Err(AtlasError::NotCohomogeneityOne(other)),
    }
}

fn factor_dimension(tok: &str) -> Option<u32> {
    let arg = |prefix: &str| -> Option<u32> { tok.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok() };
    if let Some(n) = arg("SU(") {
        return Some(n * n - 1);
    }
    if let Some(n) = arg("SO(") {
        return Some(n * (n - 1) / 2);
    }
    if let Some(n) = arg("Sp(") {
        return Some(n * (2 * n + 1));
    }
    if let Some(n) = arg("U(") {
        return Some(n * n);
    }
    match tok {
        "S¹" | "T¹" => Some(1),
        "T²" => Some(2),
        "T³" => Some(3),
        _ if tok.starts_with('Z') => Some(0),
        _ => None,
    }
}

/// Dimension of a group written in the atlas grammar (`×`, `⋊`, `/`, parentheses).
pub fn symbolic_dimension(name: &str) -> Option<u32> {
    let mut total = 0;
    let mut tok = String::new();
    let mut depth = 0;
    let flush = |tok: &mut String, total: &mut u32| -> Option<()> {
        if !tok.is_empty() {
            *total += factor_dimension(tok)?;
            tok.clear();
        }
        Some(())
    };
    for ch in name.chars() {
        match ch {
            '(' if tok.is_empty() => {}
            '(' => {
                depth += 1;
                tok.push(ch);
            }
            ')' if depth > 0 => {
                depth -= 1;
                tok.push(ch);
            }
            ')' | '×' | '⋊' | '/' => flush(&mut tok, &mut total)?,
            c => tok.push(c),
        }
    }
    flush(&mut tok, &mut total)?;
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SpaceParams {
        s.parse().unwrap()
    }

    #[test]
    fn descriptor_examples() {
        let d = isometry_descriptor(&sp("1,1,5")).unwrap();
        assert_eq!(d.dimension, 7);
        assert_eq!(d.full_group.as_deref(), Some("(U(2)⋊Z₂)×SO(3)"));
        let d = isometry_descriptor(&sp("1,3,5")).unwrap();
        assert_eq!((d.dimension, d.identity_component.as_str()), (5, "T²×SO(3)"));
        assert_eq!(d.full_group_status, FullGroupStatus::Suspected);
        assert_eq!(isometry_descriptor(&sp("1,2,3")).unwrap().identity_component, "T²×SU(2)");
        assert_eq!(isometry_descriptor(&sp("1,1,-2")).unwrap().dimension, 11);
        assert_eq!(isometry_descriptor(&sp("1,1,1")).unwrap().dimension, 11);
        assert_eq!(isometry_descriptor(&sp("2,1,-3")).unwrap().dimension, 9);
        assert_eq!(isometry_descriptor(&sp("1,1,1,1,3")).unwrap().full_group.as_deref(), Some("U(4)⋊Z₂"));
        assert_eq!(isometry_descriptor(&sp("twisted-flag")).unwrap().identity_component, "U(2)");
        assert!(matches!(isometry_descriptor(&sp("1,1,1,1,1")), Err(AtlasError::NotCovered(_))));
    }

    #[test]
    fn dimensions_match_names() {
        for s in ["1,1,5", "1,3,5", "1,2,3", "1,1,-2", "2,1,-3", "1,1,1,1,3", "twisted-flag"] {
            let d = isometry_descriptor(&sp(s)).unwrap();
            assert_eq!(symbolic_dimension(&d.identity_component), Some(d.dimension), "{s}");
        }
        assert_eq!(symbolic_dimension("Sp(2)"), Some(10));
        assert_eq!(symbolic_dimension("Foo(2)"), None);
    }

    #[test]
    fn diagrams() {
        let d = group_diagram(&sp("1,1,2")).unwrap();
        assert_eq!((d.slope, d.principal_generator.as_deref()), ((3, 2), Some("(-id, id)")));
        let d = group_diagram(&sp("1,1,3")).unwrap();
        assert_eq!((d.slope, d.principal_generator.as_deref()), ((4, 3), Some("(id, -id)")));
        assert_eq!(group_diagram(&sp("1,1,1,1,3")).unwrap().slope, (3, 2));
        assert!(matches!(group_diagram(&sp("1,2,3")), Err(AtlasError::NotCohomogeneityOne(_))));
    }
}
