//! Edge partitions and P-graphs: graphical certificates that every
//! rooted-tree sum of a Laplacian is nonnegative.
//!
//! An edge partition pairs each negative edge `e` with a set `μ(e)` of
//! positive edges leaving the same node, such that
//!
//! 1. every label is strictly positive or strictly negative,
//! 2. no cycle holds two negative edges,
//! 3. every cycle through an edge of `μ(e)` passes through the target of `e`,
//!    and the sets `μ(e)` are pairwise disjoint.
//!
//! The graph is a P-graph when in addition every group sum
//! `π(e) + Σ_{e' ∈ μ(e)} π(e')` is nonnegative. Then each forest sum splits
//! into products of positive labels and group sums, so it is nonnegative.
//!
//! ```
//! use forestsolve::linsys::{bordered_laplacian, LinearSystem};
//! use forestsolve::pgraph::find_pgraph;
//!
//! let sys = LinearSystem::parse(
//!     &[&["-z2", "0", "z4"], &["-z1", "-z3", "0"], &["-z2", "z3", "-z4"]],
//!     &["0", "z5", "0"],
//! )
//! .unwrap();
//! let w = find_pgraph(&bordered_laplacian(&sys)).unwrap();
//! let sums: Vec<String> = w.group_sums.values().map(|p| p.to_string()).collect();
//! assert_eq!(sums, ["0", "z2"]);
//! ```

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::forests::{enumerate_rooted, Forest};
use crate::linsys::{bordered_laplacian, LinearSystem, Solution};
use crate::multigraph::{EdgeId, LaplacianMatrix, Multidigraph, NodeId};
use crate::symring::{Monomial, Polynomial, RationalExpr, Sign};

/// A graph together with a map `μ` from negative edges to sets of positive
/// edges. Negative edges missing from `mu` have `μ(e) = ∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    pub graph: Multidigraph,
    pub mu: BTreeMap<EdgeId, BTreeSet<EdgeId>>,
}

impl EdgePartition {
    pub fn new(graph: Multidigraph, mu: BTreeMap<EdgeId, BTreeSet<EdgeId>>) -> Self {
        EdgePartition { graph, mu }
    }

    /// `μ(e)`, empty when unassigned.
    pub fn image(&self, e: EdgeId) -> BTreeSet<EdgeId> {
        self.mu.get(&e).cloned().unwrap_or_default()
    }

    /// `μ*`, sending each edge of `im μ` to its negative edge.
    pub fn inverse(&self) -> BTreeMap<EdgeId, EdgeId> {
        let mut inv = BTreeMap::new();
        for (&e, set) in &self.mu {
            for &p in set {
                inv.insert(p, e);
            }
        }
        inv
    }

    pub fn negative_edges(&self) -> Vec<EdgeId> {
        self.graph
            .edges()
            .iter()
            .filter(|e| e.is_negative())
            .map(|e| e.id)
            .collect()
    }

    /// `π(e) + Σ_{e' ∈ μ(e)} π(e')`.
    pub fn group_sum(&self, e: EdgeId) -> Polynomial {
        let mut s = self.graph.edge_ref(e).label.clone();
        for p in self.image(e) {
            s += &self.graph.edge_ref(p).label;
        }
        s
    }
}

/// A broken condition of an edge partition or P-graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownEdge(EdgeId),
    /// A label that is neither strictly positive nor strictly negative.
    MixedLabel(EdgeId),
    /// A cycle holding at least two negative edges.
    TwoNegativeEdgesOnCycle(Vec<EdgeId>),
    /// `μ` is defined on an edge that is not negative.
    NotNegative(EdgeId),
    /// `μ(e)` holds an edge that is not positive.
    NotPositive { negative: EdgeId, edge: EdgeId },
    DifferentSource { negative: EdgeId, edge: EdgeId },
    /// A cycle through `edge ∈ μ(negative)` that misses the target of `negative`.
    CycleMissesTarget {
        negative: EdgeId,
        edge: EdgeId,
        cycle: Vec<EdgeId>,
    },
    Overlap {
        first: EdgeId,
        second: EdgeId,
        edge: EdgeId,
    },
    /// A group sum without a nonnegativity certificate.
    GroupSum { negative: EdgeId, sum: Polynomial },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq = |c: &[EdgeId]| c.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            Violation::UnknownEdge(e) => write!(f, "edge {e} is not in the graph"),
            Violation::MixedLabel(e) => write!(f, "label of {e} has no definite sign"),
            Violation::TwoNegativeEdgesOnCycle(c) => {
                write!(f, "cycle [{}] has two or more negative edges", seq(c))
            }
            Violation::NotNegative(e) => write!(f, "mu is defined on {e}, which is not negative"),
            Violation::NotPositive { negative, edge } => {
                write!(f, "mu({negative}) contains {edge}, which is not positive")
            }
            Violation::DifferentSource { negative, edge } => {
                write!(f, "{edge} in mu({negative}) has a different source")
            }
            Violation::CycleMissesTarget {
                negative,
                edge,
                cycle,
            } => write!(
                f,
                "cycle [{}] through {edge} in mu({negative}) misses the target of {negative}",
                seq(cycle)
            ),
            Violation::Overlap {
                first,
                second,
                edge,
            } => write!(f, "{edge} lies in both mu({first}) and mu({second})"),
            Violation::GroupSum { negative, sum } => {
                write!(f, "group sum of {negative} is {sum}, not certified nonnegative")
            }
        }
    }
}

/// Checks conditions (i)-(iii) of an edge partition. Empty means valid.
pub fn validate_partition(p: &EdgePartition) -> Vec<Violation> {
    let g = &p.graph;
    let mut out = Vec::new();
    for e in g.edges() {
        if !matches!(e.sign(), Sign::Nonneg | Sign::Nonpos) {
            out.push(Violation::MixedLabel(e.id));
        }
    }
    for c in g.simple_cycles() {
        if c.iter().filter(|&&e| g.edge_ref(e).is_negative()).count() >= 2 {
            out.push(Violation::TwoNegativeEdgesOnCycle(c));
        }
    }
    let mut owner: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for (&neg, set) in &p.mu {
        let Some(ne) = g.edge(neg) else {
            out.push(Violation::UnknownEdge(neg));
            continue;
        };
        if !ne.is_negative() {
            out.push(Violation::NotNegative(neg));
        }
        for &pos in set {
            let Some(pe) = g.edge(pos) else {
                out.push(Violation::UnknownEdge(pos));
                continue;
            };
            if !pe.is_positive() {
                out.push(Violation::NotPositive {
                    negative: neg,
                    edge: pos,
                });
            }
            if pe.source != ne.source {
                out.push(Violation::DifferentSource {
                    negative: neg,
                    edge: pos,
                });
            } else if pe.target != ne.target {
                if let Some(path) = g.path_avoiding(pe.target, pe.source, ne.target) {
                    let mut cycle = vec![pos];
                    cycle.extend(path);
                    out.push(Violation::CycleMissesTarget {
                        negative: neg,
                        edge: pos,
                        cycle,
                    });
                }
            }
            if let Some(&first) = owner.get(&pos) {
                out.push(Violation::Overlap {
                    first,
                    second: neg,
                    edge: pos,
                });
            } else {
                owner.insert(pos, neg);
            }
        }
    }
    out
}

/// An edge partition whose group sums are all certified nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PGraphWitness {
    pub partition: EdgePartition,
    /// Group sum of every negative edge.
    pub group_sums: BTreeMap<EdgeId, Polynomial>,
}

impl PGraphWitness {
    pub fn graph(&self) -> &Multidigraph {
        &self.partition.graph
    }
}

/// Condition (iv) on top of [`validate_partition`].
pub fn pgraph_violations(p: &EdgePartition) -> Vec<Violation> {
    let mut out = validate_partition(p);
    if out.is_empty() {
        for neg in p.negative_edges() {
            let sum = p.group_sum(neg);
            if !sum.sign().is_nonneg() {
                out.push(Violation::GroupSum { negative: neg, sum });
            }
        }
    }
    out
}

/// The witness when `p` makes its graph a P-graph.
pub fn is_pgraph(p: &EdgePartition) -> Option<PGraphWitness> {
    if !pgraph_violations(p).is_empty() {
        return None;
    }
    let group_sums = p
        .negative_edges()
        .into_iter()
        .map(|e| (e, p.group_sum(e)))
        .collect();
    Some(PGraphWitness {
        partition: p.clone(),
        group_sums,
    })
}

/// Why [`find_pgraph`] gave up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoWitness {
    /// A diagonal entry of the Laplacian is not certified nonpositive.
    Diagonal { node: NodeId, entry: Polynomial },
    /// The forced negative edges lie on a common cycle.
    NegativeCycle(Vec<(NodeId, NodeId)>),
    /// The negative monomials at `source` cannot be covered by eligible
    /// positive monomials.
    Uncovered { source: NodeId, monomial: String },
}

impl fmt::Display for NoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("no witness found at monomial granularity: ")?;
        match self {
            NoWitness::Diagonal { node, entry } => {
                write!(f, "diagonal entry {node} is {entry}, not nonpositive")
            }
            NoWitness::NegativeCycle(c) => {
                let arcs: Vec<String> = c.iter().map(|(s, t)| format!("{s}->{t}")).collect();
                write!(f, "negative edges {} lie on one cycle", arcs.join(", "))
            }
            NoWitness::Uncovered { source, monomial } => write!(
                f,
                "negative terms in {monomial} leaving node {source} cannot be compensated"
            ),
        }
    }
}

/// Searches for a P-graph with Laplacian `l`.
///
/// Every entry with negative coefficients becomes one negative edge, every
/// positive term its own positive edge, and zero entries get no edge. The
/// positive terms leaving a node are then distributed over that node's
/// negative edges by a max-flow computation per monomial, splitting a term
/// when it has to serve several negative edges. The search is complete for
/// partitions whose labels are rational multiples of single monomials.
pub fn find_pgraph(l: &LaplacianMatrix) -> Result<PGraphWitness, NoWitness> {
    let n = l.size();
    for j in 1..=n {
        let d = l.entry(NodeId(j), NodeId(j));
        if !d.sign().is_nonpos() {
            return Err(NoWitness::Diagonal {
                node: NodeId(j),
                entry: d.clone(),
            });
        }
    }
    // Base graph: one negative edge per entry with negative terms, one
    // positive edge per positive term.
    let mut base = Multidigraph::new(n);
    for j in 1..=n {
        for i in 1..=n {
            if i == j {
                continue;
            }
            let p = l.entry(NodeId(i), NodeId(j));
            let neg = p.negative_part();
            if !neg.is_zero() {
                base.add_edge(NodeId(j), NodeId(i), neg).expect("valid");
            }
            for part in p.positive_part().monomial_split().unwrap_or_default() {
                base.add_edge(NodeId(j), NodeId(i), part).expect("valid");
            }
        }
    }
    for c in base.simple_cycles() {
        let negs: Vec<(NodeId, NodeId)> = c
            .iter()
            .map(|&e| base.edge_ref(e))
            .filter(|e| e.is_negative())
            .map(|e| (e.source, e.target))
            .collect();
        if negs.len() >= 2 {
            return Err(NoWitness::NegativeCycle(negs));
        }
    }

    // Class of every positive base edge: None or the index of its negative
    // edge; plus the label pieces when a term is split.
    let mut pieces: Vec<(EdgeId, Option<EdgeId>, Polynomial)> = Vec::new();
    for s in 1..=n {
        let s = NodeId(s);
        let negs: Vec<&crate::multigraph::Edge> =
            base.out_edges(s).filter(|e| e.is_negative()).collect();
        let poss: Vec<&crate::multigraph::Edge> =
            base.out_edges(s).filter(|e| e.is_positive()).collect();
        let eligible = |pos: &crate::multigraph::Edge, neg: &crate::multigraph::Edge| {
            pos.target == neg.target || !base.reaches_avoiding(pos.target, s, neg.target)
        };
        let mut monomials: BTreeSet<Monomial> = BTreeSet::new();
        for e in &negs {
            monomials.extend(e.label.terms().map(|(m, _)| m.clone()));
        }
        // amount[(pos, neg)] of the positive term routed to the negative edge
        let mut amount: BTreeMap<(EdgeId, EdgeId), BigRational> = BTreeMap::new();
        for mono in &monomials {
            let sup: Vec<(EdgeId, BigRational)> = poss
                .iter()
                .filter_map(|e| {
                    let (m, c) = e.label.leading_term()?;
                    (m == mono).then(|| (e.id, c.clone()))
                })
                .collect();
            let dem: Vec<(EdgeId, BigRational)> = negs
                .iter()
                .filter_map(|e| {
                    e.label
                        .terms()
                        .find(|(m, _)| *m == mono)
                        .map(|(_, c)| (e.id, -c.clone()))
                })
                .collect();
            let mut arcs: Vec<(usize, usize)> = Vec::new();
            for (a, (pid, _)) in sup.iter().enumerate() {
                for (b, (nid, _)) in dem.iter().enumerate() {
                    if eligible(base.edge_ref(*pid), base.edge_ref(*nid)) {
                        arcs.push((a, b));
                    }
                }
            }
            let caps_s: Vec<BigRational> = sup.iter().map(|(_, c)| c.clone()).collect();
            let caps_t: Vec<BigRational> = dem.iter().map(|(_, c)| c.clone()).collect();
            let flows = transport(&caps_s, &caps_t, &arcs).ok_or_else(|| NoWitness::Uncovered {
                source: s,
                monomial: mono.to_string(),
            })?;
            for ((a, b), f) in flows {
                amount.insert((sup[a].0, dem[b].0), f);
            }
        }
        for pos in &poss {
            let routed: Vec<(EdgeId, BigRational)> = amount
                .iter()
                .filter(|((p, _), _)| *p == pos.id)
                .map(|((_, ng), f)| (*ng, f.clone()))
                .collect();
            match routed.len() {
                0 => pieces.push((pos.id, None, pos.label.clone())),
                1 => pieces.push((pos.id, Some(routed[0].0), pos.label.clone())),
                _ => {
                    let (mono, c) = pos.label.leading_term().expect("nonzero");
                    let used: BigRational = routed.iter().map(|(_, f)| f.clone()).sum();
                    let leftover = c - &used;
                    for (k, (ng, f)) in routed.iter().enumerate() {
                        let mut coef = f.clone();
                        if k == 0 {
                            coef += &leftover;
                        }
                        pieces.push((pos.id, Some(*ng), Polynomial::term(coef, mono.clone())));
                    }
                }
            }
        }
    }

    // Final graph: negative edges as in the base graph, positive pieces merged
    // per (source, target, class).
    let mut graph = Multidigraph::new(n);
    let mut new_id: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut mu: BTreeMap<EdgeId, BTreeSet<EdgeId>> = BTreeMap::new();
    for s in 1..=n {
        let s = NodeId(s);
        for e in base.out_edges(s).filter(|e| e.is_negative()) {
            let id = graph.add_edge(e.source, e.target, e.label.clone()).expect("valid");
            new_id.insert(e.id, id);
            mu.insert(id, BTreeSet::new());
        }
        let mut groups: BTreeMap<(NodeId, Option<EdgeId>), Polynomial> = BTreeMap::new();
        for (pid, class, label) in &pieces {
            let e = base.edge_ref(*pid);
            if e.source == s {
                *groups.entry((e.target, *class)).or_default() += label;
            }
        }
        for ((t, class), label) in groups {
            let id = graph.add_edge(s, t, label).expect("valid");
            if let Some(neg) = class {
                mu.get_mut(&new_id[&neg]).expect("negative edge").insert(id);
            }
        }
    }
    let partition = EdgePartition::new(graph, mu);
    let w = is_pgraph(&partition)
        .expect("search output satisfies the P-graph conditions by construction");
    debug_assert_eq!(&w.graph().laplacian(), l);
    Ok(w)
}

/// Max-flow from supplies to demands along `arcs`; `None` unless every
/// demand is met. Returns the positive arc flows.
fn transport(
    supply: &[BigRational],
    demand: &[BigRational],
    arcs: &[(usize, usize)],
) -> Option<BTreeMap<(usize, usize), BigRational>> {
    let (ns, nd) = (supply.len(), demand.len());
    let n = ns + nd + 2;
    let (src, snk) = (ns + nd, ns + nd + 1);
    let mut cap = vec![vec![BigRational::zero(); n]; n];
    for (a, c) in supply.iter().enumerate() {
        cap[src][a] = c.clone();
    }
    for (b, c) in demand.iter().enumerate() {
        cap[ns + b][snk] = c.clone();
    }
    let total: BigRational = demand.iter().sum();
    for &(a, b) in arcs {
        cap[a][ns + b] = total.clone();
    }
    let original = cap.clone();
    let mut flow = BigRational::zero();
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[src] = src;
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u][v].is_positive() {
                    prev[v] = u;
                    q.push_back(v);
                }
            }
        }
        if prev[snk] == usize::MAX {
            break;
        }
        let mut bottleneck: Option<BigRational> = None;
        let mut v = snk;
        while v != src {
            let u = prev[v];
            bottleneck = Some(match bottleneck {
                None => cap[u][v].clone(),
                Some(b) => b.min(cap[u][v].clone()),
            });
            v = u;
        }
        let b = bottleneck.expect("path has an arc");
        let mut v = snk;
        while v != src {
            let u = prev[v];
            cap[u][v] -= &b;
            cap[v][u] += &b;
            v = u;
        }
        flow += b;
    }
    if flow != total {
        return None;
    }
    let mut out = BTreeMap::new();
    for &(a, b) in arcs {
        let f = &original[a][ns + b] - &cap[a][ns + b];
        if f.is_positive() {
            out.insert((a, b), f);
        }
    }
    Some(out)
}

/// Edges of `zeta` in `im μ` whose replacement by `μ*` still gives a forest
/// in `Θ(B)`: the largest such set, `E_ζ`.
pub fn max_replacement_set(w: &PGraphWitness, zeta: &Forest) -> BTreeSet<EdgeId> {
    let inv = w.partition.inverse();
    let cand: Vec<EdgeId> = zeta
        .edges()
        .iter()
        .copied()
        .filter(|e| inv.contains_key(e))
        .collect();
    let mut union = BTreeSet::new();
    for mask in 1u64..(1u64 << cand.len()) {
        let chosen: Vec<EdgeId> = (0..cand.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| cand[k])
            .collect();
        if replacement_is_forest(w, zeta, &chosen, &inv) {
            union.extend(chosen);
        }
    }
    union
}

fn replace(zeta: &Forest, chosen: &[EdgeId], inv: &BTreeMap<EdgeId, EdgeId>) -> Vec<EdgeId> {
    let mut edges: Vec<EdgeId> = zeta
        .edges()
        .iter()
        .copied()
        .filter(|e| !chosen.contains(e))
        .collect();
    edges.extend(chosen.iter().map(|e| inv[e]));
    edges
}

fn replacement_is_forest(
    w: &PGraphWitness,
    zeta: &Forest,
    chosen: &[EdgeId],
    inv: &BTreeMap<EdgeId, EdgeId>,
) -> bool {
    Forest::from_edges(w.graph(), &replace(zeta, chosen, inv))
        .is_some_and(|z| z.roots() == zeta.roots())
}

/// Whether `E_ζ` is empty, i.e. no nonempty replacement stays a forest.
fn is_maximal(w: &PGraphWitness, zeta: &Forest, inv: &BTreeMap<EdgeId, EdgeId>) -> bool {
    let cand: Vec<EdgeId> = zeta
        .edges()
        .iter()
        .copied()
        .filter(|e| inv.contains_key(e))
        .collect();
    (1u64..(1u64 << cand.len())).all(|mask| {
        let chosen: Vec<EdgeId> = (0..cand.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| cand[k])
            .collect();
        !replacement_is_forest(w, zeta, &chosen, inv)
    })
}

/// `Λ(B)`: the forests of `Θ(B)` with empty replacement set.
pub fn lambda_forests(w: &PGraphWitness, b: &[NodeId]) -> Vec<Forest> {
    let inv = w.partition.inverse();
    enumerate_rooted(w.graph(), b)
        .into_iter()
        .filter(|z| is_maximal(w, z, &inv))
        .collect()
}

/// `ψ(ζ)`: the forest of `Λ(B)` obtained by replacing `E_ζ`.
pub fn psi(w: &PGraphWitness, zeta: &Forest) -> Forest {
    let inv = w.partition.inverse();
    let e: Vec<EdgeId> = max_replacement_set(w, zeta).into_iter().collect();
    Forest::from_edges(w.graph(), &replace(zeta, &e, &inv)).expect("replacement is a forest")
}

/// The preimage `ψ^{-1}(ζ)` of a forest in `Λ(B)`: each negative edge `e` of
/// `ζ` is kept or swapped for one edge of `μ(e)`.
pub fn psi_fiber(w: &PGraphWitness, zeta: &Forest) -> Vec<Forest> {
    let g = w.graph();
    let pos: Vec<EdgeId> = zeta
        .edges()
        .iter()
        .copied()
        .filter(|&e| !g.edge_ref(e).is_negative())
        .collect();
    let choices: Vec<Vec<EdgeId>> = zeta
        .edges()
        .iter()
        .copied()
        .filter(|&e| g.edge_ref(e).is_negative())
        .map(|e| {
            let mut c = vec![e];
            c.extend(w.partition.image(e));
            c
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut edges = pos.clone();
        edges.extend(idx.iter().zip(&choices).map(|(&k, c)| c[k]));
        out.push(Forest::from_edges(g, &edges).expect("fiber elements are forests"));
        let mut k = 0;
        loop {
            if k == choices.len() {
                out.sort();
                return out;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Whether `Θ(B)` is the disjoint union of the fibers over `Λ(B)`.
pub fn check_fiber_partition(w: &PGraphWitness, b: &[NodeId]) -> bool {
    let theta: BTreeSet<Vec<EdgeId>> = enumerate_rooted(w.graph(), b)
        .into_iter()
        .map(|z| z.edges().to_vec())
        .collect();
    let mut seen: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    for z in lambda_forests(w, b) {
        for f in psi_fiber(w, &z) {
            if !seen.insert(f.edges().to_vec()) {
                return false;
            }
        }
    }
    seen == theta
}

/// `Υ(i)` as a sum over `Λ(i)` of positive labels times group sums; every
/// factor is nonnegative.
pub fn positive_upsilon(w: &PGraphWitness, i: NodeId) -> Polynomial {
    let g = w.graph();
    lambda_forests(w, &[i])
        .iter()
        .map(|z| {
            z.edges()
                .iter()
                .map(|&e| {
                    if g.edge_ref(e).is_negative() {
                        w.group_sums[&e].clone()
                    } else {
                        g.edge_ref(e).label.clone()
                    }
                })
                .product::<Polynomial>()
        })
        .sum()
}

/// Whether `Υ(i) ≠ 0`, decided on the graph: some tree of `Λ(i)` has only
/// strictly positive group sums.
pub fn nonzero_component(w: &PGraphWitness, i: NodeId) -> bool {
    let g = w.graph();
    lambda_forests(w, &[i]).iter().any(|z| {
        z.edges()
            .iter()
            .filter(|&&e| g.edge_ref(e).is_negative())
            .all(|e| w.group_sums[e].sign().is_strictly_positive())
    })
}

/// A nonnegative solution together with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub solution: Solution,
    pub witness: PGraphWitness,
    /// `Υ(1), ..., Υ(m+1)`, each a sum of nonnegative terms.
    pub upsilon: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    Certified(Box<Certificate>),
    NotCertified(NoWitness),
}

/// Certifies that the solution of `A x + b = 0` is nonnegative by finding a
/// P-graph with the bordered Laplacian.
pub fn certify_nonneg(sys: &LinearSystem) -> Result<Certification, Error> {
    let l = bordered_laplacian(sys);
    let w = match find_pgraph(&l) {
        Ok(w) => w,
        Err(reason) => return Ok(Certification::NotCertified(reason)),
    };
    let upsilon: Vec<Polynomial> = w
        .graph()
        .nodes()
        .map(|i| positive_upsilon(&w, i))
        .collect();
    let den = upsilon.last().expect("m + 1 >= 1").clone();
    if den.is_zero() {
        return Err(Error::Singular);
    }
    let components = upsilon[..sys.size()]
        .iter()
        .map(|p| RationalExpr::new(p.clone(), den.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Certification::Certified(Box::new(Certificate {
        solution: Solution { components },
        witness: w,
        upsilon,
    })))
}
