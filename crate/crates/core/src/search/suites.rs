use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::order_criterion::{compare, ComparisonReport};
use super::{dirichlet_triples, enumerate_canonical, SearchError, SweepConfig};
use crate::espaces::{e2_is_free, e2_is_positively_curved, E2Params, SpaceParams};
use crate::exact_arith::RationalAngle;
use crate::fixed_point_solver::{
    action_is_free, available_sides, so3_factor_is_free, verify_witness, FixedPointWitness, Verdict,
};
use crate::group_catalog::{
    build_group, close_subgroup, FiniteIsometryGroup, GroupKind, IsometryTuple, Side, Su2Element, DEFAULT_CLOSURE_CAP,
};
use crate::invariants::{distinguish_pair, h4_order, pontrjagin_residue, Distinction};

fn e2(p: [i64; 3]) -> E2Params {
    E2Params::new(p).expect("nonzero triple")
}

/// Identifies the mirrored triple `(q, 1, 1)`, `q <= -2`, with `(1, 1, -q-1)`;
/// the inverse map of SU(3) carries one circle action to the other.
pub fn fold_inverse(p: &E2Params) -> E2Params {
    match p.p() {
        [q, 1, 1] if q <= -2 => e2([1, 1, -q - 1]),
        _ => *p,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct So3Hit {
    pub space: E2Params,
    pub free_sides: Vec<Side>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct So3Report {
    pub bound: i64,
    pub spaces_checked: usize,
    pub factors_checked: usize,
    /// canonical triples with some free SU(2) factor
    pub free: Vec<So3Hit>,
    /// the same set after identifying mirrored E₁ triples
    pub free_up_to_inverse: Vec<E2Params>,
    pub witnesses_checked: usize,
    pub witnesses_invalid: usize,
}

/// Tests every available SU(2) factor of every canonical space up to `bound`.
pub fn so3_sweep(bound: i64) -> Result<So3Report, SearchError> {
    let spaces: Vec<E2Params> = enumerate_canonical(SweepConfig::new(bound)).collect();
    let per_space = spaces
        .par_iter()
        .map(|p| {
            let esch = p.to_esch();
            let mut free_sides = Vec::new();
            let (mut checked, mut invalid) = (0usize, 0usize);
            let sides = available_sides(&esch);
            for side in &sides {
                let cert = so3_factor_is_free(&SpaceParams::E2(*p), *side)?;
                match &cert.witness {
                    None => free_sides.push(*side),
                    Some(w) => {
                        checked += 1;
                        if !verify_witness(&esch, w) {
                            invalid += 1;
                        }
                    }
                }
            }
            Ok((*p, sides.len(), free_sides, checked, invalid))
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    let mut report = So3Report {
        bound,
        spaces_checked: spaces.len(),
        factors_checked: 0,
        free: Vec::new(),
        free_up_to_inverse: Vec::new(),
        witnesses_checked: 0,
        witnesses_invalid: 0,
    };
    for (p, n, free_sides, checked, invalid) in per_space {
        report.factors_checked += n;
        report.witnesses_checked += checked;
        report.witnesses_invalid += invalid;
        if !free_sides.is_empty() {
            report.free.push(So3Hit { space: p, free_sides });
            report.free_up_to_inverse.push(fold_inverse(&p));
        }
    }
    report.free_up_to_inverse.sort();
    report.free_up_to_inverse.dedup();
    Ok(report)
}

/// Where the cyclic factor `Z_q` sits relative to the quaternion group on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    /// central phase `(1/q, id, 0, id)`
    LeftCentral,
    /// central phase `(0, id, 1/q, id)`
    RightCentral,
    /// `(1/q, Torus(1/q), 0, id)`, i.e. `diag(u², 1, u⁻²)` on the left with `u = e^{2πi/q}`
    LeftTorus,
}

impl Placement {
    pub const ALL: [Placement; 3] = [Placement::LeftCentral, Placement::RightCentral, Placement::LeftTorus];

    fn generator(self, q: i64) -> IsometryTuple {
        let w = RationalAngle::new(1, q);
        let (z, id) = (RationalAngle::ZERO, Su2Element::identity);
        match self {
            Placement::LeftCentral => IsometryTuple::new(w, id(), z, id()),
            Placement::RightCentral => IsometryTuple::new(z, id(), w, id()),
            Placement::LeftTorus => IsometryTuple::new(w, Su2Element::Torus(w), z, id()),
        }
    }
}

/// `Z_q` in the given placement together with the quaternion group on the right factor.
pub fn theorem_b_group(q: i64, placement: Placement) -> Result<FiniteIsometryGroup, SearchError> {
    let gens = [
        placement.generator(q),
        IsometryTuple::on_side(Side::Right, Su2Element::i()),
        IsometryTuple::on_side(Side::Right, Su2Element::j()),
    ];
    Ok(close_subgroup(&gens, DEFAULT_CLOSURE_CAP)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementResult {
    pub placement: Placement,
    pub verdict: Verdict,
    pub invariant_factors: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FixedPointWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBRow {
    pub p: i64,
    pub q: i64,
    pub placements: Vec<PlacementResult>,
    /// first placement acting freely with effective group `Z_2 × Z_2q`
    pub certified: Option<Placement>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBReport {
    pub rows: Vec<TheoremBRow>,
    pub witnesses_checked: usize,
    pub witnesses_invalid: usize,
}

impl TheoremBReport {
    pub fn failures(&self) -> impl Iterator<Item = &TheoremBRow> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

/// For odd `p <= max_p`, odd `q <= max_q` with `gcd(p+1, q) = 1`, tries every
/// placement of `Z_q × Q_8` on `E_p`.
pub fn theorem_b_sweep(max_p: i64, max_q: i64) -> Result<TheoremBReport, SearchError> {
    let pairs: Vec<(i64, i64)> = (1..=max_p)
        .step_by(2)
        .flat_map(|p| (1..=max_q).step_by(2).map(move |q| (p, q)))
        .filter(|(p, q)| (p + 1).gcd(q) == 1)
        .collect();
    let rows = pairs
        .par_iter()
        .map(|&(p, q)| {
            let space = SpaceParams::E2(e2([1, 1, p]));
            let esch = e2([1, 1, p]).to_esch();
            let mut placements = Vec::new();
            let (mut checked, mut invalid) = (0, 0);
            for placement in Placement::ALL {
                let group = theorem_b_group(q, placement)?;
                let cert = action_is_free(&space, &group, &format!("Z{q}xQ8/{placement:?}"))?;
                if let Some(w) = &cert.witness {
                    checked += 1;
                    if !verify_witness(&esch, w) {
                        invalid += 1;
                    }
                }
                placements.push(PlacementResult {
                    placement,
                    verdict: cert.verdict,
                    invariant_factors: cert.group.effective.and_then(|d| d.invariant_factors),
                    witness: cert.witness,
                });
            }
            let expected = vec![2, 2 * q as u64];
            let certified = placements
                .iter()
                .find(|r| r.verdict == Verdict::Free && r.invariant_factors.as_ref() == Some(&expected));
            let row = TheoremBRow {
                p,
                q,
                certified: certified.map(|r| r.placement),
                pass: certified.is_some(),
                placements,
            };
            Ok((row, checked, invalid))
        })
        .collect::<Result<Vec<_>, SearchError>>()?;
    let mut report = TheoremBReport {
        rows: Vec::new(),
        witnesses_checked: 0,
        witnesses_invalid: 0,
    };
    for (row, c, i) in rows {
        report.rows.push(row);
        report.witnesses_checked += c;
        report.witnesses_invalid += i;
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletRow {
    pub group: String,
    pub modulus: u64,
    pub triple: [u64; 3],
    pub space_valid: bool,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FixedPointWitness>,
    pub witness_valid: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletReport {
    pub rows: Vec<DirichletRow>,
}

/// Binary polyhedral groups on the right factor of `E_p` for Dirichlet prime triples.
pub fn dirichlet_sweep(count: usize) -> Result<DirichletReport, SearchError> {
    let cases = [
        (GroupKind::BinaryTetrahedral, 12),
        (GroupKind::BinaryOctahedral, 24),
        (GroupKind::BinaryIcosahedral, 60),
    ];
    let mut rows = Vec::new();
    for (kind, modulus) in cases {
        let group = FiniteIsometryGroup::from_factor(&build_group(kind)?, Side::Right);
        let triples = dirichlet_triples(modulus, count);
        let results = triples
            .par_iter()
            .map(|t| {
                let p = e2(t.map(|x| x as i64));
                let cert = action_is_free(&SpaceParams::E2(p), &group, &kind.to_string())?;
                let witness_valid = cert.witness.as_ref().map(|w| verify_witness(&p.to_esch(), w));
                Ok(DirichletRow {
                    group: kind.to_string(),
                    modulus,
                    triple: *t,
                    space_valid: e2_is_free(&p) && e2_is_positively_curved(&p),
                    verdict: cert.verdict,
                    witness: cert.witness,
                    witness_valid,
                })
            })
            .collect::<Result<Vec<_>, SearchError>>()?;
        rows.extend(results);
    }
    Ok(DirichletReport { rows })
}

fn product_groups() -> Result<Vec<(String, FiniteIsometryGroup)>, SearchError> {
    let mut kinds: Vec<GroupKind> = (1..=12).map(GroupKind::Cyclic).collect();
    kinds.extend((2..=6).map(GroupKind::BinaryDihedral));
    kinds.extend([GroupKind::BinaryTetrahedral, GroupKind::BinaryOctahedral, GroupKind::BinaryIcosahedral]);
    let mut out = Vec::new();
    for kind in kinds {
        let g = build_group(kind)?;
        for side in [Side::Left, Side::Right] {
            out.push((format!("{kind}@{side}"), FiniteIsometryGroup::from_factor(&g, side)));
        }
    }
    Ok(out)
}

/// Graphs of homomorphisms between cyclic and quaternion groups: `{(g, φ(g))}`.
fn graph_groups() -> Result<Vec<(String, FiniteIsometryGroup)>, SearchError> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let g = Su2Element::Torus(RationalAngle::new(1, n));
        for m in [1, -1, 2, 3] {
            let h = Su2Element::Torus(RationalAngle::new(m, n));
            let gen = IsometryTuple::new(RationalAngle::ZERO, g.clone(), RationalAngle::ZERO, h);
            out.push((format!("graph(cyclic:{n}, x^{m})"), close_subgroup(&[gen], DEFAULT_CLOSURE_CAP)?));
        }
    }
    let diag = |a: Su2Element, b: Su2Element| IsometryTuple::new(RationalAngle::ZERO, a, RationalAngle::ZERO, b);
    out.push((
        "diagonal(quaternion8)".into(),
        close_subgroup(&[diag(Su2Element::i(), Su2Element::i()), diag(Su2Element::j(), Su2Element::j())], DEFAULT_CLOSURE_CAP)?,
    ));
    out.push((
        "twisted(quaternion8)".into(),
        close_subgroup(&[diag(Su2Element::i(), Su2Element::j()), diag(Su2Element::j(), Su2Element::i())], DEFAULT_CLOSURE_CAP)?,
    ));
    Ok(out)
}

/// Order criterion against the solver on `E_p`, `1 <= p <= max_p`, for
/// catalog product groups and a set of non-product graph subgroups.
pub fn order_comparison_sweep(max_p: i64) -> Result<ComparisonReport, SearchError> {
    let mut jobs: Vec<(i64, String, FiniteIsometryGroup, bool)> = Vec::new();
    let products = product_groups()?;
    let graphs = graph_groups()?;
    for p in 1..=max_p {
        for (label, g) in &products {
            jobs.push((p, label.clone(), g.clone(), true));
        }
        for (label, g) in &graphs {
            jobs.push((p, label.clone(), g.clone(), false));
        }
    }
    let rows = jobs
        .par_iter()
        .map(|(p, label, g, product)| compare(*p, g, label, *product))
        .collect::<Result<Vec<_>, SearchError>>()?;
    Ok(ComparisonReport { rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Closed formulas for `(1,1,p)` and `(-k,1,k-2)` and their pairwise separation.
pub fn invariant_formula_sweep(max_p: i64, max_k: i64) -> InvariantReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    let ks: Vec<i64> = (5..=max_k).step_by(2).collect();
    for p in 1..=max_p {
        let s = e2([1, 1, p]);
        checked += 1;
        let r = 2 * p as u64 + 1;
        if h4_order(&s) != r || pontrjagin_residue(&s) != Ok((p as u64 + 5) % r) {
            failures.push(format!("(1,1,{p})"));
        }
    }
    for &k in &ks {
        let s = e2([-k, 1, k - 2]);
        checked += 1;
        if h4_order(&s) != ((k - 1) * (k - 1) + 1) as u64 || pontrjagin_residue(&s) != Ok(2) {
            failures.push(format!("({},1,{})", -k, k - 2));
        }
    }
    for p in 1..=max_p {
        for &k in &ks {
            checked += 1;
            if distinguish_pair(&e2([1, 1, p]), &e2([-k, 1, k - 2])) == Distinction::Indistinguishable {
                failures.push(format!("(1,1,{p}) vs ({},1,{})", -k, k - 2));
            }
        }
    }
    InvariantReport { checked, failures }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    So3Classification,
    TheoremB,
    DirichletF,
    OrderCriterionComparison,
    InvariantFormulas,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::So3Classification,
        Suite::TheoremB,
        Suite::DirichletF,
        Suite::OrderCriterionComparison,
        Suite::InvariantFormulas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::So3Classification => "so3-classification",
            Suite::TheoremB => "theorem-b",
            Suite::DirichletF => "dirichlet-f",
            Suite::OrderCriterionComparison => "order-criterion-comparison",
            Suite::InvariantFormulas => "invariant-formulas",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SearchError;
    fn from_str(s: &str) -> Result<Self, SearchError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SearchError::UnknownSuite(s.to_string()))
    }
}

/// Range limits; unset fields take the suite defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRanges {
    pub bound: Option<i64>,
    pub max_p: Option<i64>,
    pub max_q: Option<i64>,
    pub max_k: Option<i64>,
    pub count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    /// one record per space/group pair (or per hit, for the SO(3) sweep)
    pub records: Vec<serde_json::Value>,
    pub summary: serde_json::Value,
}

fn to_values<T: Serialize>(rows: &[T]) -> Vec<serde_json::Value> {
    rows.iter().map(|r| serde_json::to_value(r).expect("report rows serialize")).collect()
}

fn positive(v: Option<i64>, default: i64, name: &str) -> Result<i64, SearchError> {
    let v = v.unwrap_or(default);
    if v < 1 {
        return Err(SearchError::InvalidRange(format!("{name} must be positive, got {v}")));
    }
    Ok(v)
}

/// Runs one verification suite and returns its report.
pub fn verify_theorems(suite: Suite, ranges: VerifyRanges) -> Result<SuiteReport, SearchError> {
    use serde_json::json;
    Ok(match suite {
        Suite::So3Classification => {
            let bound = positive(ranges.bound, 40, "bound")?;
            let r = so3_sweep(bound)?;
            let expected = vec![e2([1, 1, 1]), e2([1, 1, 2])];
            let pass = r.free_up_to_inverse == expected && r.witnesses_invalid == 0;
            SuiteReport {
                suite,
                pass,
                records: to_values(&r.free),
                summary: json!({
                    "bound": bound,
                    "spaces_checked": r.spaces_checked,
                    "factors_checked": r.factors_checked,
                    "free_up_to_inverse": r.free_up_to_inverse,
                    "witnesses_checked": r.witnesses_checked,
                    "witnesses_invalid": r.witnesses_invalid,
                }),
            }
        }
        Suite::TheoremB => {
            let max_p = positive(ranges.max_p, 25, "max-p")?;
            let max_q = positive(ranges.max_q, 25, "max-q")?;
            let r = theorem_b_sweep(max_p, max_q)?;
            let failing: Vec<_> = r.failures().map(|x| (x.p, x.q)).collect();
            SuiteReport {
                suite,
                pass: failing.is_empty() && r.witnesses_invalid == 0,
                records: to_values(&r.rows),
                summary: json!({
                    "pairs": r.rows.len(),
                    "failing_pairs": failing,
                    "witnesses_checked": r.witnesses_checked,
                    "witnesses_invalid": r.witnesses_invalid,
                }),
            }
        }
        Suite::DirichletF => {
            let count = ranges.count.unwrap_or(3);
            let r = dirichlet_sweep(count)?;
            let free = r.rows.iter().filter(|x| x.verdict == Verdict::Free && x.space_valid).count();
            SuiteReport {
                suite,
                pass: free == r.rows.len(),
                records: to_values(&r.rows),
                summary: json!({ "certificates": r.rows.len(), "free": free }),
            }
        }
        Suite::OrderCriterionComparison => {
            let max_p = positive(ranges.max_p, 20, "max-p")?;
            let r = order_comparison_sweep(max_p)?;
            let product_dis = r.disagreements().filter(|x| x.product).count();
            let other_dis = r.disagreements().filter(|x| !x.product).count();
            SuiteReport {
                suite,
                pass: product_dis == 0,
                records: to_values(&r.rows),
                summary: json!({
                    "comparisons": r.rows.len(),
                    "product_disagreements": product_dis,
                    "non_product_disagreements": other_dis,
                }),
            }
        }
        Suite::InvariantFormulas => {
            let max_p = positive(ranges.max_p, 200, "max-p")?;
            let max_k = positive(ranges.max_k, 99, "max-k")?;
            let r = invariant_formula_sweep(max_p, max_k);
            SuiteReport {
                suite,
                pass: r.failures.is_empty(),
                records: r.failures.iter().map(|f| json!({ "failure": f })).collect(),
                summary: json!({ "checked": r.checked, "failures": r.failures.len() }),
            }
        }
    })
}
