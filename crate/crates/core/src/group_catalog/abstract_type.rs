use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{FiniteIsometryGroup, GroupError, IsometryTuple};

/// Isomorphism-type summary of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractDescriptor {
    pub order: u64,
    /// element order -> number of elements of that order
    pub order_histogram: BTreeMap<u64, u64>,
    pub abelian: bool,
    /// `d1 | d2 | ...` with the group `Z_{d1} × Z_{d2} × ...`; only for abelian groups.
    pub invariant_factors: Option<Vec<u64>>,
}

impl AbstractDescriptor {
    fn from_histogram(order: u64, order_histogram: BTreeMap<u64, u64>, abelian: bool) -> Self {
        let invariant_factors = abelian.then(|| invariant_factors(order, &order_histogram));
        AbstractDescriptor {
            order,
            order_histogram,
            abelian,
            invariant_factors,
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of an abelian group from its element-order histogram.
///
/// For each prime `r`, the number of solutions of `x^{r^k} = 1` is `r^{s_k}` with
/// `s_k = Σ_i min(e_i, k)` over the exponents `e_i` of the `r`-primary part.
pub fn invariant_factors(order: u64, hist: &BTreeMap<u64, u64>) -> Vec<u64> {
    let count_dividing = |m: u64| -> u64 { hist.iter().filter(|(o, _)| m.is_multiple_of(**o)).map(|(_, c)| c).sum() };
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for r in prime_factors(order) {
        let mut s_prev = 0u32;
        let mut at_least = Vec::new(); // at_least[k-1] = #{i : e_i >= k}
        let mut rk = 1u64;
        loop {
            rk *= r;
            let c = count_dividing(rk);
            let s = c.ilog(r);
            if s == s_prev {
                break;
            }
            at_least.push(s - s_prev);
            s_prev = s;
        }
        let width = at_least.first().copied().unwrap_or(0);
        // exponents sorted descending
        let exps = (0..width).map(|i| at_least.iter().filter(|&&n| n > i).count() as u32).collect();
        per_prime.push((r, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..width)
        .map(|i| per_prime.iter().map(|(r, e)| r.pow(e.get(i).copied().unwrap_or(0))).product())
        .collect();
    factors.reverse();
    factors
}

/// Descriptor of the group itself.
pub fn abstract_type(group: &FiniteIsometryGroup) -> Result<AbstractDescriptor, GroupError> {
    effective_abstract_type(group, |t| t.is_identity())
}

/// Descriptor of the quotient of `group` by the normal subgroup `{g : in_kernel(g)}`.
pub fn effective_abstract_type<K>(group: &FiniteIsometryGroup, in_kernel: K) -> Result<AbstractDescriptor, GroupError>
where
    K: Fn(&IsometryTuple) -> bool,
{
    let kernel_size = group.elements().iter().filter(|g| in_kernel(g)).count() as u64;
    let mut raw: BTreeMap<u64, u64> = BTreeMap::new();
    for g in group.elements() {
        let mut n = 1u64;
        let mut acc = g.clone();
        while !in_kernel(&acc) {
            acc = acc.mul(g)?;
            n += 1;
        }
        *raw.entry(n).or_default() += 1;
    }
    let hist = raw.into_iter().map(|(o, c)| (o, c / kernel_size)).collect();
    let gens = if group.generators().is_empty() {
        group.elements()
    } else {
        group.generators()
    };
    let mut abelian = true;
    'outer: for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            let comm = x.mul(y)?.mul(&x.inverse())?.mul(&y.inverse())?;
            if !in_kernel(&comm) {
                abelian = false;
                break 'outer;
            }
        }
    }
    let order = group.len() as u64 / kernel_size;
    Ok(AbstractDescriptor::from_histogram(order, hist, abelian))
}

/// Exponent of the group: lcm of element orders.
pub fn exponent(desc: &AbstractDescriptor) -> u64 {
    desc.order_histogram.keys().fold(1, |a, b| a.lcm(b))
}
