//! Exact tools for positively curved Eschenburg and Bazaikin biquotients:
//! family predicates, invariants, isometry data, and certificates for free
//! isometric actions of finite groups.

pub mod exact_arith;
pub mod espaces;
pub mod fixed_point_solver;
pub mod group_catalog;
pub mod invariants;
pub mod isometry_atlas;
pub mod search;
