mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use forestsolve::forests::{enumerate_rooted, upsilon, upsilon_signed, Forest};
use forestsolve::linsys::{bordered_laplacian, cramer_oracle, solve_by_trees, LinearSystem};
use forestsolve::matrix::PolyMatrix;
use forestsolve::multigraph::{EdgeId, Multidigraph, NodeId};
use forestsolve::symring::{parse_poly, Monomial, Polynomial, RationalExpr, Var};
use num_rational::BigRational;
use proptest::prelude::*;

fn vars() -> Vec<Var> {
    ["a", "b", "c"].iter().map(|v| Var::new(v).unwrap()).collect()
}

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        let v = vars();
        Polynomial::from_terms(terms.into_iter().map(|(c, e0, e1, e2)| {
            let m = Monomial::from_factors([(v[0].clone(), e0), (v[1].clone(), e1), (v[2].clone(), e2)]);
            (m, BigRational::from_integer(c.into()))
        }))
    })
}

fn point_strategy() -> impl Strategy<Value = BTreeMap<Var, BigRational>> {
    prop::collection::vec((1i64..=40, 1i64..=9), 3).prop_map(|v| {
        vars().into_iter().zip(v).map(|(x, (n, d))| (x, q(n, d))).collect()
    })
}

/// Graph on `n` nodes from `(source, target-offset, label)` triples.
fn graph_from(n: usize, raw: &[(usize, usize, i64)]) -> Multidigraph {
    let mut g = Multidigraph::new(n);
    if n < 2 {
        return g;
    }
    for &(s, t, l) in raw {
        let s = s % n + 1;
        let t = (s - 1 + 1 + t % (n - 1)) % n + 1;
        g.add_edge(NodeId(s), NodeId(t), Polynomial::int(l)).unwrap();
    }
    g
}

fn graph_strategy(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Multidigraph> {
    (1..=max_nodes, prop::collection::vec((0usize..16, 0usize..16, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_edges))
        .prop_map(|(n, raw)| graph_from(n, &raw))
}

/// Forests rooted at `roots` by brute force over edge subsets: every other
/// node has one outgoing edge, roots have none, and following edges never
/// loops.
fn brute_forests(g: &Multidigraph, roots: &[NodeId]) -> BTreeSet<Vec<EdgeId>> {
    let edges = g.edges();
    let n = g.node_count();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << edges.len()) {
        let chosen: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| &edges[i]).collect();
        let mut next = vec![None; n + 1];
        let mut ok = true;
        for e in &chosen {
            if roots.contains(&e.source) || next[e.source.0].replace(e.target.0).is_some() {
                ok = false;
            }
        }
        let non_roots = (1..=n).filter(|v| !roots.contains(&NodeId(*v)));
        if !ok || non_roots.clone().any(|v| next[v].is_none()) {
            continue;
        }
        let acyclic = non_roots.clone().all(|v| {
            let mut cur = v;
            for _ in 0..=n {
                match next[cur] {
                    Some(t) => cur = t,
                    None => return true,
                }
            }
            false
        });
        if acyclic {
            let mut ids: Vec<EdgeId> = chosen.iter().map(|e| e.id).collect();
            ids.sort();
            out.insert(ids);
        }
    }
    out
}

/// Simple cycles by brute force: edge subsets in which every touched node
/// has in- and out-degree one and which are connected.
fn brute_cycle_count(g: &Multidigraph) -> usize {
    let edges = g.edges();
    let mut count = 0;
    for mask in 1u32..(1 << edges.len()) {
        let chosen: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| &edges[i]).collect();
        let mut outd = BTreeMap::new();
        let mut ind = BTreeMap::new();
        for e in &chosen {
            *outd.entry(e.source).or_insert(0) += 1;
            *ind.entry(e.target).or_insert(0) += 1;
        }
        if outd.values().any(|&d| d != 1) || ind.values().any(|&d| d != 1) || outd.keys().ne(ind.keys()) {
            continue;
        }
        let next: BTreeMap<NodeId, NodeId> = chosen.iter().map(|e| (e.source, e.target)).collect();
        let start = chosen[0].source;
        let mut cur = next[&start];
        let mut len = 1;
        while cur != start {
            cur = next[&cur];
            len += 1;
        }
        if len == chosen.len() {
            count += 1;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_idempotent(p in poly_strategy()) {
        let again = Polynomial::from_terms(p.terms().map(|(m, c)| (m.clone(), c.clone())));
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn sign_is_sound(p in poly_strategy(), pts in prop::collection::vec(point_strategy(), 50)) {
        let s = p.sign();
        for pt in &pts {
            let v = p.eval(pt).unwrap();
            if s.is_nonneg() {
                prop_assert!(is_nonneg(&v));
            }
            if s.is_nonpos() {
                prop_assert!(is_nonneg(&-v));
            }
        }
    }

    #[test]
    fn monomial_split_sums_back(p in poly_strategy()) {
        if p.is_zero() {
            prop_assert!(p.monomial_split().is_err());
            return Ok(());
        }
        let parts = p.monomial_split().unwrap();
        prop_assert!(parts.iter().all(|t| t.len() == 1));
        prop_assert_eq!(parts.into_iter().sum::<Polynomial>(), p);
    }

    #[test]
    fn rat_equal_is_an_equivalence(n in poly_strategy(), d in poly_strategy(), k in poly_strategy(), j in poly_strategy()) {
        prop_assume!(!d.is_zero() && !k.is_zero() && !j.is_zero());
        let x = RationalExpr::new(n.clone(), d.clone()).unwrap();
        let y = RationalExpr::new(&n * &k, &d * &k).unwrap();
        let z = RationalExpr::new(&(&n * &k) * &j, &(&d * &k) * &j).unwrap();
        prop_assert!(x.rat_equal(&x));
        prop_assert_eq!(x.rat_equal(&y), y.rat_equal(&x));
        prop_assert!(x.rat_equal(&y) && y.rat_equal(&z) && x.rat_equal(&z));
    }

    #[test]
    fn laplacian_round_trip(g in graph_strategy(5, 10)) {
        let l = g.laplacian();
        let c = l.canonical_graph();
        prop_assert_eq!(c.laplacian(), l);
        let pairs: BTreeSet<_> = c.edges().iter().map(|e| (e.source, e.target)).collect();
        prop_assert_eq!(pairs.len(), c.edges().len());
        prop_assert!(c.edges().iter().all(|e| e.source != e.target));
    }

    #[test]
    fn cycles_match_brute_force(g in graph_strategy(5, 8)) {
        let cycles = g.simple_cycles();
        for cyc in &cycles {
            let es: Vec<_> = cyc.iter().map(|id| g.edge(*id).unwrap()).collect();
            for w in 0..es.len() {
                prop_assert_eq!(es[w].target, es[(w + 1) % es.len()].source);
            }
            let nodes: BTreeSet<_> = es.iter().map(|e| e.source).collect();
            prop_assert_eq!(nodes.len(), es.len());
        }
        prop_assert_eq!(cycles.len(), brute_cycle_count(&g));
    }

    #[test]
    fn forests_match_brute_force(g in graph_strategy(5, 8), root_mask in 1u32..32) {
        let n = g.node_count();
        let roots: Vec<NodeId> = (1..=n).filter(|v| root_mask >> (v - 1) & 1 == 1).map(NodeId).collect();
        prop_assume!(!roots.is_empty());
        let found = enumerate_rooted(&g, &roots);
        for z in &found {
            prop_assert_eq!(z.edges().len(), n - roots.len());
        }
        let ids: BTreeSet<Vec<EdgeId>> = found.iter().map(|z| z.edge_set().into_iter().collect()).collect();
        prop_assert_eq!(ids.len(), found.len());
        prop_assert_eq!(ids, brute_forests(&g, &roots));
    }

    #[test]
    fn single_root_sums_agree(g in graph_strategy(5, 10), f in 1usize..=5, b in 1usize..=5) {
        let n = g.node_count();
        let (f, b) = ([NodeId((f - 1) % n + 1)], [NodeId((b - 1) % n + 1)]);
        prop_assert_eq!(upsilon(&g, &f, &b).unwrap(), upsilon_signed(&g, &f, &b).unwrap());
    }

    #[test]
    fn tree_solution_matches_cramer(entries in prop::collection::vec(-4i64..=4, 12)) {
        let m = 3;
        let a: Vec<Vec<Polynomial>> = (0..m).map(|r| (0..m).map(|c| Polynomial::int(entries[r * m + c])).collect()).collect();
        let b: Vec<Polynomial> = (0..m).map(|r| Polynomial::int(entries[9 + r])).collect();
        let sys = LinearSystem::new(PolyMatrix::from_rows(a).unwrap(), b).unwrap();
        prop_assume!(!sys.det().is_zero());
        let g = bordered_laplacian(&sys).canonical_graph();
        prop_assert!(solve_by_trees(&sys, &g).unwrap().rat_equal(&cramer_oracle(&sys).unwrap()));
    }
}

#[test]
fn forest_from_edges_recovers_roots() {
    let g = Multidigraph::parse(4, &[(1, 2, "a"), (2, 4, "b"), (3, 4, "c"), (1, 3, "d")]).unwrap();
    for z in enumerate_rooted(&g, &[NodeId(4)]) {
        let again = Forest::from_edges(&g, z.edges()).unwrap();
        assert_eq!(again.roots(), z.roots());
    }
}
