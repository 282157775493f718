use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::RationalAngle;

/// Solution set of a system of circle equations `m·z = t` in `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionSet {
    Empty,
    Finite(Vec<RationalAngle>),
    All,
}

/// Compact form of a solution set: either nothing, the whole circle, or all
/// `z` with `modulus·z = target` (`modulus > 0`), which has exactly `modulus`
/// elements `(target + k)/modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Congruence {
    Empty,
    All,
    Coset { modulus: i64, target: RationalAngle },
}

impl Congruence {
    /// Intersects with the solutions of `m·z = t`.
    pub fn constrain(self, m: i64, t: RationalAngle) -> Congruence {
        let (m, t) = if m < 0 { (-m, -t) } else { (m, t) };
        match self {
            Congruence::Empty => Congruence::Empty,
            _ if m == 0 => {
                if t.is_zero() {
                    self
                } else {
                    Congruence::Empty
                }
            }
            Congruence::All => Congruence::Coset { modulus: m, target: t },
            Congruence::Coset { modulus: g, target: c } => {
                let e = g.extended_gcd(&m);
                let d = e.gcd;
                let cand = c.scale(e.x) + t.scale(e.y);
                if cand.scale(g / d) != c || cand.scale(m / d) != t {
                    return Congruence::Empty;
                }
                Congruence::Coset { modulus: d, target: cand }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Congruence::Empty)
    }

    pub fn contains(&self, z: RationalAngle) -> bool {
        match *self {
            Congruence::Empty => false,
            Congruence::All => true,
            Congruence::Coset { modulus, target } => z.scale(modulus) == target,
        }
    }

    /// Solutions in increasing order; `None` for the whole circle.
    pub fn solutions(&self) -> Option<Vec<RationalAngle>> {
        match *self {
            Congruence::Empty => Some(Vec::new()),
            Congruence::All => None,
            Congruence::Coset { modulus, target } => {
                let base = target.div_rep(modulus);
                let step = RationalAngle::new(1, modulus);
                let mut out: Vec<_> = (0..modulus).map(|k| base + step.scale(k)).collect();
                out.sort();
                Some(out)
            }
        }
    }

    /// Smallest solution, `0/1` for the whole circle.
    pub fn smallest(&self) -> Option<RationalAngle> {
        match *self {
            Congruence::Empty => None,
            Congruence::All => Some(RationalAngle::ZERO),
            Congruence::Coset { modulus, target } => {
                // (target + k)/modulus with k = 0 is already the least representative.
                Some(target.div_rep(modulus))
            }
        }
    }
}

/// Reduces a system to its compact form by extended-Euclid folding.
pub fn reduce_system<I>(equations: I) -> Congruence
where
    I: IntoIterator<Item = (i64, RationalAngle)>,
{
    let mut acc = Congruence::All;
    for (m, t) in equations {
        acc = acc.constrain(m, t);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Solves `z^m = exp(2πi·t)` for every `(m, t)` in `equations`.
pub fn solve_congruence_system(equations: &[(i64, RationalAngle)]) -> SolutionSet {
    match reduce_system(equations.iter().copied()).solutions() {
        None => SolutionSet::All,
        Some(v) if v.is_empty() => SolutionSet::Empty,
        Some(v) => SolutionSet::Finite(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64, d: i64) -> RationalAngle {
        RationalAngle::new(n, d)
    }

    #[test]
    fn small_systems() {
        assert_eq!(
            solve_congruence_system(&[(2, a(0, 1)), (3, a(0, 1))]),
            SolutionSet::Finite(vec![a(0, 1)])
        );
        assert_eq!(
            solve_congruence_system(&[(3, a(0, 1))]),
            SolutionSet::Finite(vec![a(0, 1), a(1, 3), a(2, 3)])
        );
        assert_eq!(
            solve_congruence_system(&[(2, a(1, 2))]),
            SolutionSet::Finite(vec![a(1, 4), a(3, 4)])
        );
        assert_eq!(solve_congruence_system(&[]), SolutionSet::All);
        assert_eq!(solve_congruence_system(&[(0, a(1, 3))]), SolutionSet::Empty);
        assert_eq!(solve_congruence_system(&[(0, a(0, 1))]), SolutionSet::All);
        assert_eq!(
            solve_congruence_system(&[(2, a(0, 1)), (2, a(1, 2))]),
            SolutionSet::Empty
        );
        assert_eq!(
            solve_congruence_system(&[(-2, a(1, 2))]),
            SolutionSet::Finite(vec![a(1, 4), a(3, 4)])
        );
    }

    #[test]
    fn smallest_is_first_solution() {
        let c = reduce_system([(6, a(1, 2)), (4, a(1, 2))]);
        let sols = c.solutions().unwrap();
        assert_eq!(c.smallest(), sols.first().copied());
        for z in sols {
            assert_eq!(z.scale(6), a(1, 2));
            assert_eq!(z.scale(4), a(1, 2));
        }
    }
}
