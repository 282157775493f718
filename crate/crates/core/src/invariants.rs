//! Topological invariants of E₂ spaces: the order of H⁴, the first Pontrjagin
//! class residue, and the orders of the vertex lens spaces.

use serde::{Deserialize, Serialize};

use crate::espaces::E2Params;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("H^4 is infinite (r = 0); the residue is undefined")]
    ZeroModulus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Invariants {
    pub r: u64,
    pub p1_residue: u64,
    /// sorted ascending
    pub vertex_orders: [u64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distinction {
    ByH4Order,
    ByPontrjagin,
    Indistinguishable,
}

pub fn h4_order(p: &E2Params) -> u64 {
    let [a, b, c] = p.p().map(i128::from);
    (a * b + a * c + b * c).unsigned_abs() as u64
}

pub fn pontrjagin_residue(p: &E2Params) -> Result<u64, InvariantError> {
    let r = h4_order(p);
    if r == 0 {
        return Err(InvariantError::ZeroModulus);
    }
    let s = p.sum() as i128;
    Ok((2 * s * s).rem_euclid(r as i128) as u64)
}

pub fn vertex_lens_orders(p: &E2Params) -> [u64; 3] {
    let [a, b, c] = p.p();
    let mut v = [(a + b).unsigned_abs(), (a + c).unsigned_abs(), (b + c).unsigned_abs()];
    v.sort();
    v
}

pub fn e2_invariants(p: &E2Params) -> Result<E2Invariants, InvariantError> {
    Ok(E2Invariants {
        r: h4_order(p),
        p1_residue: pontrjagin_residue(p)?,
        vertex_orders: vertex_lens_orders(p),
    })
}

/// First invariant, in the order `r` then `p1`, that tells the two spaces apart.
pub fn distinguish_pair(p: &E2Params, q: &E2Params) -> Distinction {
    if h4_order(p) != h4_order(q) {
        return Distinction::ByH4Order;
    }
    match (pontrjagin_residue(p), pontrjagin_residue(q)) {
        (Ok(x), Ok(y)) if x != y => Distinction::ByPontrjagin,
        _ => Distinction::Indistinguishable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2(p: [i64; 3]) -> E2Params {
        E2Params::new(p).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(h4_order(&e2([1, 1, 4])), 9);
        assert_eq!(h4_order(&e2([1, 1, -2])), 3);
        assert_eq!(h4_order(&e2([-7, 1, 5])), 37);
        assert_eq!(pontrjagin_residue(&e2([1, 1, 2])), Ok(2));
        assert_eq!(pontrjagin_residue(&e2([-7, 1, 5])), Ok(2));
        assert_eq!(pontrjagin_residue(&e2([2, 2, -1])), Err(InvariantError::ZeroModulus));
        assert_eq!(vertex_lens_orders(&e2([1, 1, 2])), [2, 3, 3]);
        assert_eq!(vertex_lens_orders(&e2([1, 1, 1])), [2, 2, 2]);
        assert_eq!(vertex_lens_orders(&e2([3, 2, -5])), [2, 3, 5]);
    }

    #[test]
    fn distinguishing() {
        assert_eq!(distinguish_pair(&e2([1, 1, 12]), &e2([-5, 1, 3])), Distinction::ByH4Order);
        assert_eq!(distinguish_pair(&e2([1, 1, 8]), &e2([-5, 1, 3])), Distinction::ByPontrjagin);
        assert_eq!(distinguish_pair(&e2([1, 2, 3]), &e2([1, 2, 3])), Distinction::Indistinguishable);
    }
}
