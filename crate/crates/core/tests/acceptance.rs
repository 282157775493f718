//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use eschenburg::espaces::{
    baz_is_free, baz_is_positively_curved, e2_is_free, e2_is_positively_curved, esch_is_free,
    esch_is_positively_curved, BazParams, E2Params, SpaceParams,
};
use eschenburg::exact_arith::{solve_congruence_system, RationalAngle, SolutionSet};
use eschenburg::group_catalog::{build_group, GroupKind, Su2Element};
use eschenburg::invariants::{distinguish_pair, h4_order, pontrjagin_residue, Distinction};
use eschenburg::isometry_atlas::{group_diagram, isometry_descriptor};
use eschenburg::search::{verify_theorems, Suite, SuiteReport, VerifyRanges};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2(p: [i64; 3]) -> E2Params {
    E2Params::new(p).unwrap()
}

fn suite(s: Suite, ranges: VerifyRanges) -> Result<SuiteReport, String> {
    verify_theorems(s, ranges).map_err(|e| e.to_string())
}

fn so3_classification() -> Outcome {
    let r = suite(Suite::So3Classification, VerifyRanges { bound: Some(40), ..Default::default() })?;
    let s = &r.summary;
    check(r.pass, format!("free set {} ; invalid witnesses {}", s["free_up_to_inverse"], s["witnesses_invalid"]))?;
    Ok(format!(
        "{} spaces, free set {} (raw hits {})",
        s["spaces_checked"],
        s["free_up_to_inverse"],
        r.records.len()
    ))
}

fn theorem_b() -> Outcome {
    let r = suite(Suite::TheoremB, VerifyRanges { max_p: Some(25), max_q: Some(25), ..Default::default() })?;
    let failing = r.summary["failing_pairs"].as_array().map(|a| a.len()).unwrap_or(0);
    let shown: Vec<String> = r.summary["failing_pairs"]
        .as_array()
        .into_iter()
        .flatten()
        .take(6)
        .map(|v| format!("(p={},q={})", v[0], v[1]))
        .collect();
    check(r.pass, format!("{failing} of {} pairs without a free certificate, e.g. {}", r.summary["pairs"], shown.join(" ")))?;
    Ok(format!("{} pairs", r.summary["pairs"]))
}

fn dirichlet() -> Outcome {
    let r = suite(Suite::DirichletF, VerifyRanges { count: Some(3), ..Default::default() })?;
    let bad: Vec<String> = r
        .records
        .iter()
        .filter(|x| x["verdict"] != "free" || x["space_valid"] != true)
        .map(|x| format!("{} {}", x["group"], x["triple"]))
        .collect();
    check(r.pass && r.records.len() == 9, format!("not free: {}", bad.join(", ")))?;
    Ok(format!("{} certificates", r.records.len()))
}

fn invariant_formulas() -> Outcome {
    let mut n = 0;
    for p in 1..=200i64 {
        let s = e2([1, 1, p]);
        let r = 2 * p as u64 + 1;
        check(h4_order(&s) == r, format!("r of (1,1,{p})"))?;
        check(pontrjagin_residue(&s) == Ok((p as u64 + 5) % r), format!("p1 of (1,1,{p})"))?;
        n += 1;
    }
    for k in (5..=99i64).step_by(2) {
        let s = e2([-k, 1, k - 2]);
        check(h4_order(&s) == ((k - 1) * (k - 1) + 1) as u64, format!("r of k={k}"))?;
        check(pontrjagin_residue(&s) == Ok(2), format!("p1 of k={k}"))?;
        for p in 1..=200i64 {
            check(
                distinguish_pair(&e2([1, 1, p]), &s) != Distinction::Indistinguishable,
                format!("p={p}, k={k} not separated"),
            )?;
        }
        n += 1;
    }
    Ok(format!("{n} spaces, all pairs separated"))
}

fn cross_oracle() -> Outcome {
    let (mut n, mut mismatches) = (0, Vec::new());
    for a in -20..=20i64 {
        for b in -20..=20 {
            for c in -20..=20 {
                let Ok(p) = E2Params::new([a, b, c]) else { continue };
                let esch = p.to_esch();
                n += 1;
                if e2_is_free(&p) != esch_is_free(&esch) || e2_is_positively_curved(&p) != esch_is_positively_curved(&esch) {
                    mismatches.push(format!("({a},{b},{c})"));
                }
            }
        }
    }
    check(mismatches.is_empty(), format!("{} mismatches: {}", mismatches.len(), mismatches.join(" ")))?;
    Ok(format!("{n} triples, 0 mismatches"))
}

fn bazaikin() -> Outcome {
    for p in 1..=100i64 {
        let b = BazParams::new([1, 1, 1, 1, 2 * p - 1]);
        check(baz_is_free(&b) && baz_is_positively_curved(&b), format!("B1({p}) rejected"))?;
    }
    for bad in [[1, 1, 1, 1, 2], [1, 1, 1, 3, 3]] {
        let b = BazParams::new(bad);
        check(!(baz_is_free(&b) && baz_is_positively_curved(&b)), format!("{bad:?} accepted"))?;
    }
    Ok("B1(1..=100) accepted, two counterexamples rejected".into())
}

fn atlas() -> Outcome {
    for (lit, dim) in [("1,1,-2", 11), ("2,1,-3", 9), ("1,1,5", 7), ("1,3,5", 5)] {
        let space: SpaceParams = lit.parse().map_err(|e| format!("{lit}: {e}"))?;
        let d = isometry_descriptor(&space).map_err(|e| format!("{lit}: {e}"))?;
        check(d.dimension == dim, format!("{lit}: dimension {} instead of {dim}", d.dimension))?;
    }
    for p in 1..=10i64 {
        for space in [SpaceParams::E2(e2([1, 1, p])), SpaceParams::Bazaikin(BazParams::new([1, 1, 1, 1, 2 * p - 1]))] {
            let d = group_diagram(&space).map_err(|e| format!("{space}: {e}"))?;
            check(d.slope == (p + 1, p), format!("{space}: slope {:?}", d.slope))?;
        }
    }
    Ok("4 dimensions, 20 slopes".into())
}

fn brute_force(system: &[(i64, RationalAngle)]) -> SolutionSet {
    let Some(&(m, t)) = system.iter().find(|(m, _)| *m != 0) else {
        return if system.iter().all(|(_, t)| t.is_zero()) { SolutionSet::All } else { SolutionSet::Empty };
    };
    let n = m.abs() * t.denominator();
    let sols: Vec<RationalAngle> = (0..n)
        .map(|k| RationalAngle::new(k, n))
        .filter(|z| system.iter().all(|(m, t)| z.scale(*m) == *t))
        .collect();
    if sols.is_empty() {
        SolutionSet::Empty
    } else {
        SolutionSet::Finite(sols)
    }
}

fn normalized(s: SolutionSet) -> SolutionSet {
    match s {
        SolutionSet::Finite(mut v) => {
            v.sort();
            SolutionSet::Finite(v)
        }
        other => other,
    }
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=4);
        let system: Vec<(i64, RationalAngle)> = (0..len)
            .map(|_| {
                let d = rng.gen_range(1..=36);
                (rng.gen_range(-12..=12), RationalAngle::new(rng.gen_range(0..d), d))
            })
            .collect();
        check(
            normalized(solve_congruence_system(&system)) == brute_force(&system),
            format!("congruence system {system:?}"),
        )?;
    }

    let mut kinds: Vec<GroupKind> = (1..=12).map(GroupKind::Cyclic).collect();
    kinds.extend((2..=8).map(GroupKind::BinaryDihedral));
    kinds.extend([GroupKind::BinaryTetrahedral, GroupKind::BinaryOctahedral, GroupKind::BinaryIcosahedral]);
    for kind in kinds {
        let g = build_group(kind).map_err(|e| e.to_string())?;
        check(g.len() as u64 == kind.order(), format!("{kind}: order {}", g.len()))?;
        let members: HashSet<&Su2Element> = g.elements().iter().collect();
        for a in g.elements() {
            check((g.len() as u64).is_multiple_of(a.order()), format!("{kind}: element order {}", a.order()))?;
            for b in g.elements() {
                let ab = a.mul(b).map_err(|e| e.to_string())?;
                check(members.contains(&ab), format!("{kind}: not closed"))?;
            }
        }
    }

    let so3 = suite(Suite::So3Classification, VerifyRanges { bound: Some(40), ..Default::default() })?;
    let tb = suite(Suite::TheoremB, VerifyRanges { max_p: Some(25), max_q: Some(25), ..Default::default() })?;
    let dir = suite(Suite::DirichletF, VerifyRanges { count: Some(3), ..Default::default() })?;
    check(so3.summary["witnesses_invalid"] == 0, "invalid SO(3) witness")?;
    check(tb.summary["witnesses_invalid"] == 0, "invalid Z_2 x Z_2q witness")?;
    check(dir.records.iter().all(|r| r["witness_valid"] != false), "invalid Dirichlet witness")?;
    let witnesses = so3.summary["witnesses_checked"].as_u64().unwrap_or(0)
        + tb.summary["witnesses_checked"].as_u64().unwrap_or(0)
        + dir.records.iter().filter(|r| r["witness_valid"] == true).count() as u64;

    let cmp = suite(Suite::OrderCriterionComparison, VerifyRanges { max_p: Some(20), ..Default::default() })?;
    check(
        cmp.pass,
        format!("{} product-group disagreements", cmp.summary["product_disagreements"]),
    )?;
    Ok(format!(
        "1000 congruence systems, 22 catalog groups, {witnesses} witnesses substituted, {} comparisons ({} non-product disagreements reported)",
        cmp.summary["comparisons"], cmp.summary["non_product_disagreements"]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("SO(3)-factor freeness classification, bound 40", so3_classification),
        ("Z_2 x Z_2q acts freely on E_p, odd p, q <= 25", theorem_b),
        ("binary polyhedral groups on Dirichlet prime triples", dirichlet),
        ("invariant formulas and pair separation", invariant_formulas),
        ("cross-oracle freeness and curvature, |p_i| <= 20", cross_oracle),
        ("Bazaikin predicates", bazaikin),
        ("isometry dimensions and diagram slopes", atlas),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} [{detail}] ({secs:.2}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} [{detail}] ({secs:.2}s)", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
