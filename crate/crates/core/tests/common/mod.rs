#![allow(dead_code)]
pub mod suites;

use std::collections::{BTreeMap, BTreeSet};

use forestsolve::crn::{ConservationSub, SteadyStateTask};
use forestsolve::linsys::LinearSystem;
use forestsolve::multigraph::{EdgeId, Multidigraph};
use forestsolve::pgraph::{is_pgraph, EdgePartition};
use forestsolve::symring::{parse_poly, Polynomial, RationalExpr, Var};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn poly(s: &str) -> Polynomial {
    parse_poly(s).unwrap()
}

pub fn ratio(num: &str, den: &str) -> RationalExpr {
    RationalExpr::new(poly(num), poly(den)).unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Three unknowns, one negative entry pair in the first row.
pub fn tree_example() -> LinearSystem {
    LinearSystem::parse(
        &[&["-z2", "0", "z4"], &["-z1", "-z3", "0"], &["-z2", "z3", "-z4"]],
        &["0", "z5", "0"],
    )
    .unwrap()
}

pub fn mmatrix() -> LinearSystem {
    LinearSystem::parse(&[&["-4", "2"], &["1", "-1"]], &["1", "1"]).unwrap()
}

/// One block of two unknowns and a trailing row; second equation sign-flipped.
pub fn two_blocks() -> LinearSystem {
    LinearSystem::parse(
        &[&["-z2", "z3", "0"], &["1", "1", "0"], &["0", "z3", "-z4"]],
        &["0", "-z1", "z5"],
    )
    .unwrap()
}

pub fn five_var() -> LinearSystem {
    LinearSystem::parse(
        &[
            &["-z1", "z2", "0", "0", "0"],
            &["1", "1", "0", "0", "0"],
            &["0", "z2", "-z3 - z4", "z5", "0"],
            &["0", "0", "z3", "-z5", "0"],
            &["0", "0", "z3", "z5", "-z6"],
        ],
        &["0", "-z7", "z8", "0", "z9"],
    )
    .unwrap()
}

/// One block `{1,2,3}` whose distinguished row 1 is a conservation row. The
/// trailing row reaches node 2 through a negative edge `4 -> 5`, so
/// `x_2 = x_3 = 0`.
pub fn zero_instance() -> LinearSystem {
    LinearSystem::parse(
        &[
            &["1", "1", "1", "0"],
            &["0", "-z2", "z3", "0"],
            &["0", "z2", "-z3 - z5", "0"],
            &["0", "-z4", "0", "-z6"],
        ],
        &["-T", "0", "0", "z7"],
    )
    .unwrap()
}

pub const NETWORK: &str = "
species: X1, X2, X3, X4, X5, X6
X1 + X5 <-> X3 ; k1, k2
X3 -> X1 + X6 ; k3
X2 + X5 <-> X4 ; k4, k5
X4 -> X2 + X6 ; k6
X6 -> X5 ; k7
X1 <-> X2 ; k8, k9
X3 <-> X4 ; k10, k11
";

pub fn network_task() -> SteadyStateTask {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect();
    SteadyStateTask {
        solve_for: s(&["X1", "X2", "X3", "X4", "X6"]),
        parameters: s(&["X5"]),
        conservation: vec![ConservationSub {
            law: 0,
            total: "T1".into(),
            replaces: "X4".into(),
        }],
        drop: s(&["X5"]),
    }
}

/// The printed steady-state denominator of the network.
pub const NETWORK_Q: &str = "k1*k4*(k10 + k11)*x5^2 \
    + ((k2 + k3)*k4*(k8 + k11) + (k5 + k6)*k1*(k9 + k10) + (k10 + k11)*(k1*k9 + k4*k8))*x5 \
    + (k8 + k9)*((k2 + k3)*(k5 + k6 + k11) + k10*(k5 + k6))";

/// Printed closed forms for `x1, x2, x3, x4, x6` as `(numerator, denominator)`.
pub fn network_solution() -> Vec<RationalExpr> {
    let shared = "(k2 + k3)*(k5 + k6) + (k2 + k3)*k11 + (k5 + k6)*k10";
    let nums = [
        format!("T1*((k2 + k3)*k4*k11*x5 + k9*({shared}))"),
        format!("T1*((k5 + k6)*k1*k10*x5 + k8*({shared}))"),
        "T1*x5*(k1*k4*k11*x5 + k1*k9*(k5 + k6 + k11) + k4*k8*k11)".to_string(),
        "T1*x5*(k1*k4*k10*x5 + k4*k8*(k2 + k3 + k10) + k1*k9*k10)".to_string(),
        "T1*x5*(k1*k4*(k3*k11 + k6*k10)*x5 + k1*k3*k9*(k5 + k11) + k4*k8*(k2*k6 + k3*k11) \
         + k6*(k3 + k10)*(k1*k9 + k4*k8))"
            .to_string(),
    ];
    nums.iter()
        .enumerate()
        .map(|(i, n)| {
            let den = if i == 4 { format!("k7*({NETWORK_Q})") } else { NETWORK_Q.to_string() };
            ratio(n, &den)
        })
        .collect()
}

/// Every variable of the system set to a random positive rational.
pub fn positive_point<R: rand::Rng>(rng: &mut R, sys: &LinearSystem) -> BTreeMap<Var, BigRational> {
    let rows = sys.a.to_rows();
    forestsolve::testgen::random_positive_point(rng, rows.iter().flatten().chain(sys.b.iter()))
}

/// Evaluates `A` and `b` at a point.
pub fn evaluate(sys: &LinearSystem, point: &BTreeMap<Var, BigRational>) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let a = sys
        .a
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|p| p.eval(point).unwrap()).collect())
        .collect();
    let b = sys.b.iter().map(|p| p.eval(point).unwrap()).collect();
    (a, b)
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det_numeric(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            let f = &a[r][c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Solves `A x + b = 0` by Gauss-Jordan elimination; `None` when singular.
pub fn solve_numeric(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(-bi.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        let pivot = m[c][c].clone();
        for k in c..=n {
            m[c][k] = &m[c][k] / &pivot;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=n {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Whether some edge partition of `g` makes it a P-graph, by trying every
/// assignment of same-source positive edges to negative edges.
pub fn exhaustive_pgraph(g: &Multidigraph) -> bool {
    let negs: Vec<EdgeId> = g.edges().iter().filter(|e| e.is_negative()).map(|e| e.id).collect();
    // Each positive edge goes to one of the same-source negative edges or to none.
    let options: Vec<(EdgeId, Vec<EdgeId>)> = g
        .edges()
        .iter()
        .filter(|e| e.is_positive())
        .map(|e| {
            let owners = negs
                .iter()
                .copied()
                .filter(|n| g.edge(*n).unwrap().source == e.source)
                .collect();
            (e.id, owners)
        })
        .collect();
    let mut choice = vec![0usize; options.len()];
    loop {
        let mut mu: BTreeMap<EdgeId, BTreeSet<EdgeId>> = negs.iter().map(|n| (*n, BTreeSet::new())).collect();
        for ((pos, owners), &c) in options.iter().zip(&choice) {
            if c > 0 {
                mu.get_mut(&owners[c - 1]).unwrap().insert(*pos);
            }
        }
        if is_pgraph(&EdgePartition::new(g.clone(), mu)).is_some() {
            return true;
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] <= options[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

pub fn is_nonneg(x: &BigRational) -> bool {
    !x.is_negative()
}
