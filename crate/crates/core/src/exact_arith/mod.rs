//! Exact arithmetic on roots of unity, the real field `Q(√2, √5)` and unit
//! quaternions over it.

mod angle;
mod congruence;
mod field;
mod quaternion;

pub use angle::RationalAngle;
pub use congruence::{reduce_system, solve_congruence_system, Congruence, SolutionSet};
pub use field::{FieldElement, Q};
pub use quaternion::{cos_turns, eigen_angle_of, quat_order, sin_turns, UnitQuaternion, DEFAULT_ORDER_CAP};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("no finite order found within {cap} multiplications")]
    Overflow { cap: u32 },
    #[error("real part matches no root of unity of the computed order")]
    NoMatch,
    #[error("quaternion does not have unit norm")]
    NotUnit,
    #[error("cannot parse rational angle {0:?}")]
    Parse(String),
}
