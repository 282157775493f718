//! Parameter types for Eschenburg, E₂, Aloff–Wallach and Bazaikin spaces,
//! with freeness, curvature, normalization and family predicates.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("cannot parse space parameters {0:?}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("action is not free: {0}")]
    NotFree(String),
    #[error("not positively curved: {0}")]
    NotPositivelyCurved(String),
}

/// General Eschenburg parameters: left exponents `a`, right exponents `b`, equal sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EschParams {
    a: [i64; 3],
    b: [i64; 3],
}

impl EschParams {
    pub fn new(a: [i64; 3], b: [i64; 3]) -> Result<Self, SpaceError> {
        if a.iter().sum::<i64>() != b.iter().sum::<i64>() {
            return Err(SpaceError::Invalid(format!("sums of {a:?} and {b:?} differ")));
        }
        Ok(EschParams { a, b })
    }

    pub fn a(&self) -> [i64; 3] {
        self.a
    }

    pub fn b(&self) -> [i64; 3] {
        self.b
    }

    pub fn negated(&self) -> Self {
        EschParams {
            a: self.a.map(|x| -x),
            b: self.b.map(|x| -x),
        }
    }

    /// The same space written as an E₂ triple, if one side has a repeated exponent.
    pub fn as_e2(&self) -> Option<E2Params> {
        for (a, b) in [(self.a, self.b), (self.b, self.a)] {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                if b[i] == b[j] {
                    return E2Params::new(a.map(|x| x - b[i])).ok();
                }
            }
        }
        None
    }
}

/// E₂ triple `p`, i.e. `a = p`, `b = (0, 0, p1+p2+p3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct E2Params {
    p: [i64; 3],
}

impl E2Params {
    pub fn new(p: [i64; 3]) -> Result<Self, SpaceError> {
        if p == [0, 0, 0] {
            return Err(SpaceError::Invalid("triple is zero".into()));
        }
        Ok(E2Params { p })
    }

    pub fn p(&self) -> [i64; 3] {
        self.p
    }

    pub fn sum(&self) -> i64 {
        self.p.iter().sum()
    }

    pub fn to_esch(&self) -> EschParams {
        EschParams {
            a: self.p,
            b: [0, 0, self.sum()],
        }
    }

    /// E₁ parameter `p` when this triple is `(1,1,p)` up to order with `p > 0`.
    pub fn e1_parameter(&self) -> Option<i64> {
        let mut s = self.p;
        s.sort();
        match s {
            [1, 1, p] if p > 0 => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for E2Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.p))
    }
}

/// Bazaikin 5-tuple with its cached sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BazParams {
    p: [i64; 5],
    q: i64,
}

impl BazParams {
    pub fn new(p: [i64; 5]) -> Self {
        BazParams { p, q: p.iter().sum() }
    }

    pub fn p(&self) -> [i64; 5] {
        self.p
    }

    pub fn sum(&self) -> i64 {
        self.q
    }
}

/// Any of the supported biquotient parameterizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceParams {
    Esch(EschParams),
    E2(E2Params),
    AloffWallach { k: i64, l: i64 },
    Bazaikin(BazParams),
    TwistedFlag,
}

impl SpaceParams {
    /// General Eschenburg form, when the space is an Eschenburg space.
    pub fn as_esch(&self) -> Option<EschParams> {
        match *self {
            SpaceParams::Esch(e) => Some(e),
            SpaceParams::E2(p) => Some(p.to_esch()),
            SpaceParams::AloffWallach { k, l } => Some(EschParams {
                a: [k, l, -k - l],
                b: [0, 0, 0],
            }),
            _ => None,
        }
    }
}

fn parse_ints(s: &str) -> Option<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse().ok()).collect()
}

impl FromStr for SpaceParams {
    type Err = SpaceError;

    /// `p1,p2,p3` (E₂), `a1,a2,a3/b1,b2,b3` (Eschenburg), `p1,...,p5` (Bazaikin),
    /// `aw:k,l` (Aloff–Wallach) or `twisted-flag`.
    fn from_str(s: &str) -> Result<Self, SpaceError> {
        let bad = || SpaceError::Parse(s.to_string());
        let s = s.trim();
        if s == "twisted-flag" {
            return Ok(SpaceParams::TwistedFlag);
        }
        if let Some(rest) = s.strip_prefix("aw:") {
            return match parse_ints(rest).ok_or_else(bad)?[..] {
                [k, l] => Ok(SpaceParams::AloffWallach { k, l }),
                _ => Err(bad()),
            };
        }
        if let Some((a, b)) = s.split_once('/') {
            let a = parse_ints(a).ok_or_else(bad)?;
            let b = parse_ints(b).ok_or_else(bad)?;
            let (a, b): ([i64; 3], [i64; 3]) = (a.try_into().map_err(|_| bad())?, b.try_into().map_err(|_| bad())?);
            return Ok(SpaceParams::Esch(EschParams::new(a, b)?));
        }
        let v = parse_ints(s).ok_or_else(bad)?;
        match v.len() {
            3 => Ok(SpaceParams::E2(E2Params::new([v[0], v[1], v[2]])?)),
            5 => Ok(SpaceParams::Bazaikin(BazParams::new([v[0], v[1], v[2], v[3], v[4]]))),
            _ => Err(bad()),
        }
    }
}

fn join(v: &[i64]) -> String {
    v.iter().join(",")
}

impl fmt::Display for SpaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceParams::Esch(e) => write!(f, "{}/{}", join(&e.a), join(&e.b)),
            SpaceParams::E2(p) => f.write_str(&join(&p.p)),
            SpaceParams::AloffWallach { k, l } => write!(f, "aw:{k},{l}"),
            SpaceParams::Bazaikin(b) => f.write_str(&join(&b.p)),
            SpaceParams::TwistedFlag => f.write_str("twisted-flag"),
        }
    }
}

impl Serialize for SpaceParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpaceParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for E2Params {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&join(&self.p))
    }
}

impl<'de> Deserialize<'de> for E2Params {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.parse().map_err(serde::de::Error::custom)? {
            SpaceParams::E2(p) => Ok(p),
            other => Err(serde::de::Error::custom(format!("{other} is not an E2 triple"))),
        }
    }
}

const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The six permutations of three slots in lexicographic order.
pub fn permutations3() -> &'static [[usize; 3]; 6] {
    &PERMS3
}

pub fn esch_is_free(params: &EschParams) -> bool {
    let (a, b) = (params.a, params.b);
    PERMS3.iter().all(|s| (a[0] - b[s[0]]).gcd(&(a[1] - b[s[1]])) == 1)
}

pub fn esch_is_positively_curved(params: &EschParams) -> bool {
    let outside = |xs: &[i64; 3], ys: &[i64; 3]| {
        let (lo, hi) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        xs.iter().all(|x| *x < lo || *x > hi)
    };
    outside(&params.b, &params.a) || outside(&params.a, &params.b)
}

/// Canonical representative up to reordering and global sign.
///
/// The sign with fewer negative entries wins; on a tie the sign whose sorted
/// triple, read from the largest entry down, is lexicographically larger.
pub fn e2_normalize(p: &E2Params) -> E2Params {
    let sorted = |mut v: [i64; 3]| {
        v.sort();
        v
    };
    let plus = sorted(p.p);
    let minus = sorted(p.p.map(|x| -x));
    let negs = |v: &[i64; 3]| v.iter().filter(|x| **x < 0).count();
    let rev = |v: &[i64; 3]| [v[2], v[1], v[0]];
    let pick = match negs(&plus).cmp(&negs(&minus)) {
        std::cmp::Ordering::Less => plus,
        std::cmp::Ordering::Greater => minus,
        std::cmp::Ordering::Equal => {
            if rev(&plus) >= rev(&minus) {
                plus
            } else {
                minus
            }
        }
    };
    E2Params { p: pick }
}

pub fn e2_is_free(p: &E2Params) -> bool {
    let [x, y, z] = p.p;
    x.gcd(&y) == 1 && x.gcd(&z) == 1 && y.gcd(&z) == 1
}

pub fn e2_is_positively_curved(p: &E2Params) -> bool {
    [1, -1].iter().any(|s| {
        PERMS3.iter().any(|perm| {
            let [p1, p2, p3] = perm.map(|i| s * p.p[i]);
            (0 < p1 && p1 <= p2 && p2 <= p3) || (0 < p2 && p2 <= p3 && p1 < -p3)
        })
    })
}

const PAIRINGS5: [[usize; 4]; 15] = [
    [0, 1, 2, 3],
    [0, 1, 2, 4],
    [0, 1, 3, 4],
    [0, 2, 1, 3],
    [0, 2, 1, 4],
    [0, 2, 3, 4],
    [0, 3, 1, 2],
    [0, 3, 1, 4],
    [0, 3, 2, 4],
    [0, 4, 1, 2],
    [0, 4, 1, 3],
    [0, 4, 2, 3],
    [1, 2, 3, 4],
    [1, 3, 2, 4],
    [1, 4, 2, 3],
];

pub fn baz_is_free(p: &BazParams) -> bool {
    let p = p.p;
    p.iter().all(|x| x.is_odd())
        && PAIRINGS5
            .iter()
            .all(|&[i, j, k, l]| (p[i] + p[j]).gcd(&(p[k] + p[l])) == 2)
}

pub fn baz_is_positively_curved(p: &BazParams) -> bool {
    let mut s = p.p;
    s.sort();
    s[0] + s[1] > 0
}

/// Family a positively curved space belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyTag {
    AloffWallach { k: i64, l: i64 },
    E1 { p: i64 },
    E2Generic,
    EschGeneric,
    TwistedFlag,
    Bazaikin1 { p: i64 },
    BazaikinGeneric,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::AloffWallach { k, l } => write!(f, "AloffWallach({k},{l})"),
            FamilyTag::E1 { p } => write!(f, "E1({p})"),
            FamilyTag::E2Generic => f.write_str("E2Generic"),
            FamilyTag::EschGeneric => f.write_str("EschGeneric"),
            FamilyTag::TwistedFlag => f.write_str("TwistedFlag"),
            FamilyTag::Bazaikin1 { p } => write!(f, "Bazaikin1({p})"),
            FamilyTag::BazaikinGeneric => f.write_str("BazaikinGeneric"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub family: FamilyTag,
    /// A second name for the same space (`E1(1)` is `AloffWallach(1,1)`).
    pub also: Option<FamilyTag>,
    /// `None` where no cohomogeneity is attached to the family.
    pub cohomogeneity: Option<u32>,
    /// E₂ form the classification was read from, if any.
    pub normalized: Option<E2Params>,
}

/// E₁ parameter of a canonical E₂ triple, including the mirrored form
/// `(-p-1, 1, 1)` which the inverse map of SU(3) identifies with `(1, 1, p)`.
pub fn e1_parameter_up_to_inverse(canonical: &E2Params) -> Option<i64> {
    if let Some(p) = canonical.e1_parameter() {
        return Some(p);
    }
    match canonical.p {
        [q, 1, 1] if q <= -2 => Some(-q - 1),
        _ => None,
    }
}

fn classify_e2(p: &E2Params) -> Result<Classification, SpaceError> {
    if !e2_is_free(p) {
        return Err(SpaceError::NotFree(format!("{:?} is not pairwise coprime", p.p)));
    }
    if !e2_is_positively_curved(p) {
        return Err(SpaceError::NotPositivelyCurved(format!("{:?} fails both curvature branches", p.p)));
    }
    let n = e2_normalize(p);
    let e1 = e1_parameter_up_to_inverse(&n);
    let aw = (n.sum() == 0).then(|| {
        let [_, l, k] = n.p;
        FamilyTag::AloffWallach { k, l }
    });
    let (family, also, cohomogeneity) = match (e1, aw) {
        (Some(1), _) => (FamilyTag::E1 { p: 1 }, Some(FamilyTag::AloffWallach { k: 1, l: 1 }), 0),
        (Some(p), _) => (FamilyTag::E1 { p }, None, 1),
        (None, Some(tag)) => (tag, None, 0),
        (None, None) => (FamilyTag::E2Generic, None, 2),
    };
    Ok(Classification {
        family,
        also,
        cohomogeneity: Some(cohomogeneity),
        normalized: Some(n),
    })
}

pub fn classify_family(params: &SpaceParams) -> Result<Classification, SpaceError> {
    match params {
        SpaceParams::E2(p) => classify_e2(p),
        SpaceParams::AloffWallach { k, l } => classify_e2(&E2Params::new([*k, *l, -k - l])?),
        SpaceParams::Esch(e) => {
            if !esch_is_free(e) {
                return Err(SpaceError::NotFree("some permutation has gcd different from 1".into()));
            }
            if !esch_is_positively_curved(e) {
                return Err(SpaceError::NotPositivelyCurved("exponent intervals overlap".into()));
            }
            match e.as_e2() {
                Some(p) => classify_e2(&p),
                None => Ok(Classification {
                    family: FamilyTag::EschGeneric,
                    also: None,
                    cohomogeneity: Some(4),
                    normalized: None,
                }),
            }
        }
        SpaceParams::Bazaikin(b) => {
            if !baz_is_free(b) {
                return Err(SpaceError::NotFree(format!("{:?} fails the Bazaikin gcd condition", b.p)));
            }
            if !baz_is_positively_curved(b) {
                return Err(SpaceError::NotPositivelyCurved(format!("two smallest entries of {:?} sum to <= 0", b.p)));
            }
            let mut s = b.p;
            s.sort();
            let (family, cohomogeneity) = match s {
                [1, 1, 1, 1, m] if m >= 1 => {
                    let p = (m + 1) / 2;
                    (FamilyTag::Bazaikin1 { p }, Some(if p == 1 { 0 } else { 1 }))
                }
                _ => (FamilyTag::BazaikinGeneric, None),
            };
            Ok(Classification {
                family,
                also: None,
                cohomogeneity,
                normalized: None,
            })
        }
        SpaceParams::TwistedFlag => Ok(Classification {
            family: FamilyTag::TwistedFlag,
            also: None,
            cohomogeneity: Some(2),
            normalized: None,
        }),
    }
}
