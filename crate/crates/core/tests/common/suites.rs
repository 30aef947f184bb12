//! Seeded suites shared by the acceptance harness and the regular tests.
//! Each returns a short summary on success and the first failure otherwise.

#![allow(dead_code)]

use std::collections::BTreeSet;

use forestsolve::blocksys::{
    block_formula, build_acompatible, certify_block_nonneg, solve_block, zero_components,
    BlockCertification, BlockStructure,
};
use forestsolve::crn::{parameterize, parse_network};
use forestsolve::forests::{signed_minor_rhs, upsilon_rooted};
use forestsolve::linsys::{
    bordered_laplacian, cramer_oracle, residual_check, solve, solve_by_trees, LinearSystem, Solution,
};
use forestsolve::multigraph::NodeId;
use forestsolve::pgraph::{
    certify_nonneg, check_fiber_partition, find_pgraph, nonzero_component, positive_upsilon,
    Certification, PGraphWitness,
};
use forestsolve::testgen::{random_block_system, random_graph, random_signed_system, random_system, subsets};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

pub type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Tree sums and solution of the three-unknown example.
pub fn tree_example_golden() -> Outcome {
    let sys = tree_example();
    let g = bordered_laplacian(&sys).canonical_graph();
    let u2 = upsilon_rooted(&g, NodeId(2));
    let u4 = upsilon_rooted(&g, NodeId(4));
    ensure(u2 == poly("2*z2*z4*z5"), || format!("Υ(2) = {u2}"))?;
    ensure(u4 == poly("(z1 + 2*z2)*z3*z4"), || format!("Υ(4) = {u4}"))?;
    let expected = Solution {
        components: vec![
            ratio("z5", "z1 + 2*z2"),
            ratio("2*z2*z5", "(z1 + 2*z2)*z3"),
            ratio("z2*z5", "(z1 + 2*z2)*z4"),
        ],
    };
    let x = solve(&sys).map_err(|e| e.to_string())?;
    ensure(x.rat_equal(&expected), || format!("solution {:?}", x.components))?;
    Ok("x1, x2, x3, Υ(2), Υ(4) exact".into())
}

/// The split witness for the same example, and that no edge partition of
/// the canonical graph works.
pub fn tree_example_witness() -> Result<(String, PGraphWitness), String> {
    let sys = tree_example();
    let l = bordered_laplacian(&sys);
    ensure(!exhaustive_pgraph(&l.canonical_graph()), || "canonical graph is a P-graph".into())?;
    let w = find_pgraph(&l).map_err(|e| e.to_string())?;
    ensure(w.graph().laplacian() == l, || "witness Laplacian differs".into())?;
    let sums: BTreeSet<String> = w.group_sums.values().map(|p| p.to_string()).collect();
    ensure(sums == BTreeSet::from(["0".into(), "z2".into()]), || format!("group sums {sums:?}"))?;
    match certify_nonneg(&sys).map_err(|e| e.to_string())? {
        Certification::Certified(c) => ensure(c.solution.rat_equal(&solve(&sys).unwrap()), || "certified solution differs".into())?,
        Certification::NotCertified(r) => return Err(r.to_string()),
    }
    Ok(("group sums {0, z2}; canonical graph rejected".into(), w))
}

/// All-minors identity on random integer graphs against a numeric
/// determinant.
pub fn all_minors_suite(seed: u64, graphs: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    for gi in 0..graphs {
        let n = rng.gen_range(1..=5);
        let g = random_graph(&mut rng, n, 10, -3, 3);
        let l: Vec<Vec<BigRational>> = g
            .laplacian()
            .matrix()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|p| p.as_constant().unwrap()).collect())
            .collect();
        for k in 0..=3.min(n) {
            for f in subsets(n, k) {
                for b in subsets(n, k) {
                    let minor: Vec<Vec<BigRational>> = (1..=n)
                        .filter(|r| !f.contains(&NodeId(*r)))
                        .map(|r| {
                            (1..=n)
                                .filter(|c| !b.contains(&NodeId(*c)))
                                .map(|c| l[r - 1][c - 1].clone())
                                .collect()
                        })
                        .collect();
                    let lhs = det_numeric(minor);
                    let rhs = signed_minor_rhs(&g, &f, &b).unwrap().as_constant().unwrap_or_default();
                    ensure(lhs == rhs, || format!("graph {gi}: F={f:?} B={b:?}: minor {lhs} vs forests {rhs}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{graphs} graphs, {checks} minors"))
}

/// Evaluated solution against Gauss-Jordan elimination at one point.
fn numeric_agrees(sys: &LinearSystem, x: &Solution, point: &std::collections::BTreeMap<forestsolve::symring::Var, BigRational>) -> bool {
    let (a, b) = evaluate(sys, point);
    match solve_numeric(&a, &b) {
        Some(y) => x.components.iter().zip(&y).all(|(c, v)| c.eval(point).ok().as_ref() == Some(v)),
        None => true,
    }
}

/// Tree solutions and block solutions against Cramer's rule and numeric
/// elimination, with the denominator identity on the block systems.
/// Returns the witnesses found along the way.
pub fn oracle_suite(seed: u64, plain: usize, blocked: usize) -> Result<(String, Vec<PGraphWitness>), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::new();
    let empty = Default::default();
    let mut done = 0;
    while done < plain {
        let m = rng.gen_range(1..=5);
        let sys = random_system(&mut rng, m, -5, 5);
        if sys.det().is_zero() {
            continue;
        }
        done += 1;
        let g = bordered_laplacian(&sys).canonical_graph();
        let x = solve_by_trees(&sys, &g).map_err(|e| e.to_string())?;
        let c = cramer_oracle(&sys).map_err(|e| e.to_string())?;
        ensure(x.rat_equal(&c) && residual_check(&sys, &x), || format!("tree solution differs on {:?}", sys.to_json()))?;
        ensure(numeric_agrees(&sys, &x, &empty), || format!("numeric mismatch on {:?}", sys.to_json()))?;
        if let Certification::Certified(cert) = certify_nonneg(&sys).map_err(|e| e.to_string())? {
            witnesses.push(cert.witness);
        }
    }
    let mut done_blocks = 0;
    while done_blocks < blocked {
        let (sys, bs) = random_block_system(&mut rng, 6, 2);
        if sys.det().is_zero() {
            continue;
        }
        done_blocks += 1;
        let w = build_acompatible(&sys, &bs).ok_or_else(|| format!("no compatible Laplacian for {:?}", sys.to_json()))?;
        let x = solve_block(&sys, &bs, &w).map_err(|e| e.to_string())?;
        let c = cramer_oracle(&sys).map_err(|e| e.to_string())?;
        ensure(x.rat_equal(&c), || format!("block solution differs on {:?}", sys.to_json()))?;
        ensure(numeric_agrees(&sys, &x, &empty), || format!("numeric mismatch on {:?}", sys.to_json()))?;
        denominator_identity(&sys, &bs)?;
        if let BlockCertification::Certified(cert) = certify_block_nonneg(&sys, &bs, 50).map_err(|e| e.to_string())? {
            witnesses.push(cert.witness);
        }
    }
    Ok((format!("{plain} plain and {blocked} block systems"), witnesses))
}

/// `(-1)^(m-d)` times the block denominator equals `det(A)`.
pub fn denominator_identity(sys: &LinearSystem, bs: &BlockStructure) -> Result<(), String> {
    let w = build_acompatible(sys, bs).ok_or("no compatible Laplacian")?;
    let f = block_formula(sys, bs, &w.graph);
    let sign = if (bs.m() - bs.d()).is_multiple_of(2) { 1 } else { -1 };
    let lhs = f.denominator.scale(&q(sign, 1));
    ensure(lhs == sys.det(), || format!("denominator {lhs} vs det {}", sys.det()))
}

/// The denominator identity alone on the same block suite as
/// [`oracle_suite`].
pub fn denominator_suite(seed: u64, plain: usize, blocked: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Replay the plain systems so the block systems match the oracle suite.
    let mut done = 0;
    while done < plain {
        let m = rng.gen_range(1..=5);
        if !random_system(&mut rng, m, -5, 5).det().is_zero() {
            done += 1;
        }
    }
    let mut checked = 0;
    while checked < blocked {
        let (sys, bs) = random_block_system(&mut rng, 6, 2);
        if sys.det().is_zero() {
            continue;
        }
        denominator_identity(&sys, &bs)?;
        checked += 1;
    }
    Ok(format!("{checked} block systems"))
}

pub fn single_block_example() -> Outcome {
    let sys = two_blocks();
    ensure(sys.det() == poly("(z2 + z3)*z4"), || format!("det {}", sys.det()))?;
    let bs = BlockStructure::from_system(&sys, vec![2], 1, None).map_err(|e| e.to_string())?;
    let BlockCertification::Certified(c) = certify_block_nonneg(&sys, &bs, 100).map_err(|e| e.to_string())? else {
        return Err("not certified".into());
    };
    ensure(c.solution.rat_equal(&cramer_oracle(&sys).unwrap()), || "solution differs from Cramer".into())?;
    ensure(c.solution.components.iter().all(|x| x.numerator().sign().is_nonneg()), || "negative numerator".into())?;
    Ok("det (z2 + z3)*z4, certified".into())
}

pub fn five_variable_example() -> Outcome {
    let sys = five_var();
    let bs = BlockStructure::from_system(&sys, vec![2], 3, None).map_err(|e| e.to_string())?;
    let BlockCertification::Certified(c) = certify_block_nonneg(&sys, &bs, 100).map_err(|e| e.to_string())? else {
        return Err("not certified".into());
    };
    let printed = [
        ratio("z7*z2", "z2 + z1"),
        ratio("z1*z7", "z2 + z1"),
        ratio("z1*z2*z7 + (z1 + z2)*z8", "z4*(z2 + z1)"),
        ratio("z3*(z1*z2*z7 + (z1 + z2)*z8)", "z4*(z2 + z1)*z5"),
        ratio("2*z1*z2*z3*z7 + (z1 + z2)*(2*z3*z8 + z4*z9)", "z6*z4*(z2 + z1)"),
    ];
    for (i, (x, p)) in c.solution.components.iter().zip(&printed).enumerate() {
        ensure(x.rat_equal(p), || format!("x{} = {x}", i + 1))?;
    }
    Ok("five components exact".into())
}

pub fn network_example() -> Outcome {
    let net = parse_network(NETWORK).map_err(|e| e.to_string())?;
    let rep = parameterize(&net, &network_task(), None, 1000).map_err(|e| e.to_string())?;
    let BlockCertification::Certified(c) = &rep.certification else {
        return Err("not certified".into());
    };
    let names = ["x1", "x2", "x3", "x4", "x6"];
    for ((x, p), name) in c.solution.components.iter().zip(network_solution()).zip(names) {
        ensure(x.rat_equal(&p), || format!("{name} = {x}"))?;
    }
    let det = rep.steady.system.det();
    let kq = poly(&format!("k7*({NETWORK_Q})"));
    ensure(det == kq || det == -kq.clone(), || format!("det {det}"))?;
    Ok("x1..x4, x6 and q exact".into())
}

/// Certified solutions are nonnegative at random positive points and agree
/// with numeric elimination there; nonzero-component verdicts match the
/// tree sums.
pub fn soundness_suite(seed: u64, systems: usize, points: usize) -> Result<(String, Vec<PGraphWitness>), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut certified = Vec::new();
    for _ in 0..systems {
        let m = rng.gen_range(2..=4);
        let sys = random_signed_system(&mut rng, m);
        if sys.det().is_zero() {
            continue;
        }
        if let Certification::Certified(c) = certify_nonneg(&sys).map_err(|e| e.to_string())? {
            certified.push((sys, c.solution, c.witness));
        }
    }
    for (sys, bs) in [
        (two_blocks(), BlockStructure::from_system(&two_blocks(), vec![2], 1, None).unwrap()),
        (five_var(), BlockStructure::from_system(&five_var(), vec![2], 3, None).unwrap()),
        (zero_instance(), BlockStructure::from_system(&zero_instance(), vec![3], 1, None).unwrap()),
    ] {
        if let BlockCertification::Certified(c) = certify_block_nonneg(&sys, &bs, 100).map_err(|e| e.to_string())? {
            certified.push((sys, c.solution, c.witness));
        }
    }
    ensure(certified.len() >= 10, || format!("only {} certified systems", certified.len()))?;
    let mut evaluations = 0;
    for (sys, x, w) in &certified {
        for _ in 0..points {
            let pt = positive_point(&mut rng, sys);
            for c in &x.components {
                let v = c.eval(&pt).map_err(|e| e.to_string())?;
                ensure(is_nonneg(&v), || format!("negative value {v} for {c}"))?;
                evaluations += 1;
            }
            ensure(numeric_agrees(sys, x, &pt), || format!("numeric mismatch on {:?}", sys.to_json()))?;
        }
        for i in w.graph().nodes() {
            let nz = !upsilon_rooted(w.graph(), i).is_zero();
            ensure(nonzero_component(w, i) == nz, || format!("nonzero verdict at node {} of {:?}", i.0, sys.to_json()))?;
        }
    }
    let summary = format!("{} certified systems, {evaluations} evaluations", certified.len());
    Ok((summary, certified.into_iter().map(|(_, _, w)| w).collect()))
}

/// Fiber partition over every nonempty root set and positive tree sums, on
/// every witness.
pub fn decomposition_suite(witnesses: &[PGraphWitness]) -> Outcome {
    let mut root_sets = 0;
    for (k, w) in witnesses.iter().enumerate() {
        let n = w.graph().node_count();
        for size in 1..=n {
            for b in subsets(n, size) {
                ensure(check_fiber_partition(w, &b), || format!("witness {k}: fibers fail for B={b:?}"))?;
                root_sets += 1;
            }
        }
        for i in w.graph().nodes() {
            ensure(positive_upsilon(w, i) == upsilon_rooted(w.graph(), i), || format!("witness {k}: positive sum differs at {}", i.0))?;
        }
    }
    Ok(format!("{} witnesses, {root_sets} root sets", witnesses.len()))
}

pub fn mmatrix_control() -> Outcome {
    let sys = mmatrix();
    ensure(matches!(certify_nonneg(&sys).unwrap(), Certification::NotCertified(_)), || "a witness was found".into())?;
    // Hand-solved: the second equation gives x2 = x1 + 1, then -2 x1 + 3 = 0.
    let x = cramer_oracle(&sys).map_err(|e| e.to_string())?;
    let pt = Default::default();
    let vals: Vec<BigRational> = x.components.iter().map(|c| c.eval(&pt).unwrap()).collect();
    ensure(vals == [q(3, 2), q(5, 2)], || format!("solution {vals:?}"))?;
    Ok("no witness; solution (3/2, 5/2)".into())
}

pub fn zero_component_instance() -> Outcome {
    let sys = zero_instance();
    let bs = BlockStructure::from_system(&sys, vec![3], 1, None).map_err(|e| e.to_string())?;
    let BlockCertification::Certified(c) = certify_block_nonneg(&sys, &bs, 100).map_err(|e| e.to_string())? else {
        return Err("not certified".into());
    };
    ensure(c.zero_components == BTreeSet::from([2, 3]), || format!("zeros {:?}", c.zero_components))?;
    let w = build_acompatible(&sys, &bs).ok_or("no compatible Laplacian")?;
    ensure(zero_components(&w.graph, &bs) == c.zero_components, || "heuristic graph disagrees".into())?;
    let x = cramer_oracle(&sys).map_err(|e| e.to_string())?;
    for (i, comp) in x.components.iter().enumerate() {
        ensure(comp.is_zero() == c.zero_components.contains(&(i + 1)), || format!("x{} = {comp}", i + 1))?;
    }
    Ok("x2 = x3 = 0 confirmed by Cramer".into())
}
