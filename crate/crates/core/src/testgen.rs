//! Seeded random instances for the property suites and `mtt-check`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::blocksys::BlockStructure;
use crate::linsys::LinearSystem;
use crate::matrix::PolyMatrix;
use crate::multigraph::{Multidigraph, NodeId};
use crate::symring::{Polynomial, Var};

fn nonzero_int<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> i64 {
    loop {
        let v = rng.gen_range(lo..=hi);
        if v != 0 {
            return v;
        }
    }
}

/// A multidigraph on `nodes` nodes with up to `max_edges` edges carrying
/// nonzero integer labels in `[lo, hi]`.
pub fn random_graph<R: Rng>(rng: &mut R, nodes: usize, max_edges: usize, lo: i64, hi: i64) -> Multidigraph {
    let mut g = Multidigraph::new(nodes);
    if nodes < 2 {
        return g;
    }
    let count = rng.gen_range(0..=max_edges);
    for _ in 0..count {
        let s = rng.gen_range(1..=nodes);
        let mut t = rng.gen_range(1..nodes);
        if t >= s {
            t += 1;
        }
        let label = Polynomial::int(nonzero_int(rng, lo, hi));
        g.add_edge(NodeId(s), NodeId(t), label).expect("valid edge");
    }
    g
}

/// A system of size `m` with integer entries in `[lo, hi]`.
pub fn random_system<R: Rng>(rng: &mut R, m: usize, lo: i64, hi: i64) -> LinearSystem {
    let rows = (0..m)
        .map(|_| (0..m).map(|_| Polynomial::int(rng.gen_range(lo..=hi))).collect())
        .collect();
    let b = (0..m).map(|_| Polynomial::int(rng.gen_range(lo..=hi))).collect();
    LinearSystem::new(PolyMatrix::from_rows(rows).expect("square"), b).expect("valid")
}

/// A system in block form with `m <= max_m` unknowns and `d <= max_d`
/// blocks, integer entries in `[-3, 3]`.
pub fn random_block_system<R: Rng>(rng: &mut R, max_m: usize, max_d: usize) -> (LinearSystem, BlockStructure) {
    let m = rng.gen_range(1..=max_m);
    let d = rng.gen_range(0..=max_d.min(m));
    let mut sizes = vec![1usize; d];
    let mut spare = m - d;
    let m0 = if d == 0 { spare } else { rng.gen_range(0..=spare) };
    spare -= m0;
    for _ in 0..spare {
        let i = rng.gen_range(0..d);
        sizes[i] += 1;
    }
    let mut a = PolyMatrix::zeros(m, m);
    let mut b = vec![Polynomial::zero(); m];
    let mut start = 0;
    let mut j = Vec::with_capacity(d);
    for &s in &sizes {
        for r in start..start + s {
            for c in start..start + s {
                a.set(r, c, Polynomial::int(rng.gen_range(-3..=3)));
            }
        }
        let jr = start + rng.gen_range(0..s);
        if rng.gen_bool(0.8) {
            b[jr] = Polynomial::int(nonzero_int(rng, -3, 3));
        }
        j.push(jr + 1);
        start += s;
    }
    for r in start..m {
        for c in 0..m {
            a.set(r, c, Polynomial::int(rng.gen_range(-3..=3)));
        }
        b[r] = Polynomial::int(rng.gen_range(-3..=3));
    }
    let sys = LinearSystem::new(a, b).expect("valid");
    let bs = BlockStructure::new(sizes, m0, j).expect("consistent by construction");
    (sys, bs)
}

/// Symbolic parameter `z{i}`.
pub fn zvar(i: usize) -> Var {
    Var::new(&format!("z{i}")).expect("valid name")
}

/// A system `A x + b = 0` read off a random graph on `m + 1` nodes with
/// positive symbolic labels, where some nodes get an extra negative edge
/// balanced by a positive edge with the same label. Such systems are often,
/// but not always, certifiable.
pub fn random_signed_system<R: Rng>(rng: &mut R, m: usize) -> LinearSystem {
    let n = m + 1;
    let mut g = Multidigraph::new(n);
    let mut next_var = 1;
    let mut fresh = |rng: &mut R| {
        let v = Polynomial::var(zvar(next_var));
        next_var += 1;
        if rng.gen_bool(0.3) {
            v.scale(&BigRational::from_integer(rng.gen_range(2..=3).into()))
        } else {
            v
        }
    };
    // A cycle through all nodes keeps every tree sum nonzero.
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    for w in 0..n {
        let (s, t) = (order[w], order[(w + 1) % n]);
        let label = fresh(rng);
        g.add_edge(NodeId(s), NodeId(t), label).expect("valid");
    }
    for _ in 0..rng.gen_range(0..=n) {
        let s = rng.gen_range(1..=n);
        let t = loop {
            let t = rng.gen_range(1..=n);
            if t != s {
                break t;
            }
        };
        let label = fresh(rng);
        g.add_edge(NodeId(s), NodeId(t), label).expect("valid");
    }
    for _ in 0..rng.gen_range(0..=2) {
        let s = rng.gen_range(1..=n);
        let targets: Vec<usize> = (1..=n).filter(|&t| t != s).collect();
        let (t1, t2) = (targets[rng.gen_range(0..targets.len())], targets[rng.gen_range(0..targets.len())]);
        let label = fresh(rng);
        g.add_edge(NodeId(s), NodeId(t1), -&label).expect("valid");
        g.add_edge(NodeId(s), NodeId(t2), label).expect("valid");
    }
    let l = g.laplacian();
    let a = l.matrix().select(&(0..m).collect::<Vec<_>>(), &(0..m).collect::<Vec<_>>());
    let b = (0..m).map(|r| l.matrix().get(r, m).clone()).collect();
    LinearSystem::new(a, b).expect("valid")
}

/// A point with positive rational coordinates for every variable of `polys`.
pub fn random_positive_point<'a, R: Rng>(
    rng: &mut R,
    polys: impl IntoIterator<Item = &'a Polynomial>,
) -> BTreeMap<Var, BigRational> {
    let mut point = BTreeMap::new();
    for p in polys {
        for v in p.variables() {
            point.entry(v).or_insert_with(|| {
                let n: i64 = rng.gen_range(1..=50);
                let d: i64 = rng.gen_range(1..=10);
                BigRational::new(n.into(), d.into())
            });
        }
    }
    point
}

/// All subsets of `1..=n` with `size` elements, lexicographically.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<NodeId>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(NodeId(v));
            rec(v + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, size, &mut Vec::new(), &mut out);
    out
}
