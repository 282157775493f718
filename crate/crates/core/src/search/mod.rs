//! Canonical parameter sweeps, free-action certification campaigns,
//! Dirichlet prime triples and the order-criterion comparison.

mod dirichlet;
mod order_criterion;
mod suites;

use std::mem::discriminant;

use serde::{Deserialize, Serialize};

pub use dirichlet::{dirichlet_triples, is_prime, primes_one_mod};
pub use order_criterion::{compare, order_criterion_free, ComparisonReport, ComparisonRow};
pub use suites::{
    dirichlet_sweep, fold_inverse, invariant_formula_sweep, order_comparison_sweep, so3_sweep, theorem_b_group,
    theorem_b_sweep, verify_theorems, DirichletReport, DirichletRow, InvariantReport, Placement, PlacementResult,
    So3Hit, So3Report, Suite, SuiteReport, TheoremBReport, TheoremBRow, VerifyRanges,
};

use crate::espaces::{classify_family, e2_is_free, e2_is_positively_curved, e2_normalize, E2Params, FamilyTag, SpaceParams};
use crate::fixed_point_solver::SolverError;
use crate::group_catalog::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_abs: i64,
    /// keep only triples whose family has the same variant as this tag
    pub family: Option<FamilyTag>,
    /// `(index, count)`
    pub shard: (u32, u32),
}

impl SweepConfig {
    pub fn new(max_abs: i64) -> Self {
        SweepConfig {
            max_abs,
            family: None,
            shard: (0, 1),
        }
    }

    pub fn with_shard(mut self, index: u32, count: u32) -> Result<Self, SearchError> {
        if count == 0 || index >= count {
            return Err(SearchError::InvalidRange(format!("shard {index} of {count}")));
        }
        self.shard = (index, count);
        Ok(self)
    }

    pub fn with_family(mut self, family: FamilyTag) -> Self {
        self.family = Some(family);
        self
    }
}

/// 64-bit FNV-1a, used for stable shard assignment.
pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn shard_of(p: &E2Params, count: u32) -> u32 {
    let bytes: Vec<u8> = p.p().iter().flat_map(|x| x.to_le_bytes()).collect();
    (fnv1a(&bytes) % count as u64) as u32
}

/// Free, positively curved, normalization-fixed triples with `max|p_i| <= max_abs`,
/// in lexicographic order.
pub fn enumerate_canonical(config: SweepConfig) -> impl Iterator<Item = E2Params> {
    let b = config.max_abs.max(0);
    (-b..=b)
        .flat_map(move |x| (x..=b).flat_map(move |y| (y..=b).map(move |z| [x, y, z])))
        .filter_map(|p| E2Params::new(p).ok())
        .filter(|p| e2_normalize(p) == *p && e2_is_free(p) && e2_is_positively_curved(p))
        .filter(move |p| shard_of(p, config.shard.1) == config.shard.0)
        .filter(move |p| match config.family {
            None => true,
            Some(tag) => classify_family(&SpaceParams::E2(*p))
                .map(|c| discriminant(&c.family) == discriminant(&tag))
                .unwrap_or(false),
        })
}
