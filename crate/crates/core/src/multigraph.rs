//! Labeled multidigraphs on the nodes `1..=m+1` and their Laplacians.
//!
//! The Laplacian of a graph has off-diagonal entry `(i, j)` equal to the sum
//! of the labels of the edges `j -> i`; the diagonal is chosen so that every
//! column sums to zero.
//!
//! ```
//! use forestsolve::multigraph::{Multidigraph, NodeId};
//! use forestsolve::symring::parse_poly;
//!
//! let mut g = Multidigraph::new(3);
//! g.add_edge(NodeId(1), NodeId(3), parse_poly("z1").unwrap()).unwrap();
//! g.add_edge(NodeId(1), NodeId(3), parse_poly("2*z2").unwrap()).unwrap();
//! let l = g.laplacian();
//! assert_eq!(l.entry(NodeId(3), NodeId(1)).to_string(), "z1 + 2*z2");
//! assert_eq!(l.entry(NodeId(1), NodeId(1)).to_string(), "-z1 - 2*z2");
//! ```

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::PolyMatrix;
use crate::symring::{parse_poly, Polynomial, Sign};

/// A node, numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub usize);

impl NodeId {
    /// 0-based position, for indexing matrices and vectors.
    pub fn idx(self) -> usize {
        self.0 - 1
    }

    pub fn from_idx(i: usize) -> Self {
        NodeId(i + 1)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Opaque edge identifier, stable under rewrites of other edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub source: NodeId,
    pub target: NodeId,
    pub label: Polynomial,
}

impl Edge {
    pub fn sign(&self) -> Sign {
        self.label.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.label.sign() == Sign::Nonpos
    }

    pub fn is_positive(&self) -> bool {
        self.label.sign() == Sign::Nonneg
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multidigraph {
    node_count: usize,
    edges: Vec<Edge>,
    next_id: u32,
}

impl Multidigraph {
    /// An edgeless graph on `node_count` nodes.
    pub fn new(node_count: usize) -> Self {
        Multidigraph {
            node_count,
            edges: Vec::new(),
            next_id: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// The last node, `m + 1`.
    pub fn last_node(&self) -> NodeId {
        NodeId(self.node_count)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (1..=self.node_count).map(NodeId)
    }

    /// Edges in increasing id order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub(crate) fn edge_ref(&self, id: EdgeId) -> &Edge {
        self.edge(id).expect("edge id belongs to this graph")
    }

    pub fn out_edges(&self, node: NodeId) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.source == node)
    }

    fn check_node(&self, n: NodeId) -> Result<(), Error> {
        if n.0 == 0 || n.0 > self.node_count {
            return Err(Error::NodeOutOfRange {
                node: n.0,
                max: self.node_count,
            });
        }
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        source: NodeId,
        target: NodeId,
        label: Polynomial,
    ) -> Result<EdgeId, Error> {
        self.check_node(source)?;
        self.check_node(target)?;
        if source == target {
            return Err(Error::SelfLoop(source.0));
        }
        if label.is_zero() {
            return Err(Error::ZeroLabel);
        }
        let id = EdgeId(self.next_id);
        self.next_id += 1;
        self.edges.push(Edge {
            id,
            source,
            target,
            label,
        });
        Ok(id)
    }

    /// Builds a graph from `(source, target, label)` triples.
    pub fn from_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, Polynomial)>,
    ) -> Result<Self, Error> {
        let mut g = Multidigraph::new(node_count);
        for (s, t, l) in edges {
            g.add_edge(NodeId(s), NodeId(t), l)?;
        }
        Ok(g)
    }

    /// Like [`Multidigraph::from_edges`] with labels given as strings.
    pub fn parse(node_count: usize, edges: &[(usize, usize, &str)]) -> Result<Self, Error> {
        let mut g = Multidigraph::new(node_count);
        for &(s, t, l) in edges {
            g.add_edge(NodeId(s), NodeId(t), parse_poly(l)?)?;
        }
        Ok(g)
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Edge, Error> {
        let pos = self
            .edges
            .binary_search_by_key(&id, |e| e.id)
            .map_err(|_| Error::UnknownEdge(id.0))?;
        Ok(self.edges.remove(pos))
    }

    pub fn laplacian(&self) -> LaplacianMatrix {
        laplacian_of(self)
    }

    /// Replaces `id` by parallel edges carrying `parts`. Returns the new
    /// graph and the ids of the parts, in order.
    pub fn split_edge(
        &self,
        id: EdgeId,
        parts: &[Polynomial],
    ) -> Result<(Multidigraph, Vec<EdgeId>), Error> {
        let e = self.edge(id).ok_or(Error::UnknownEdge(id.0))?.clone();
        let total: Polynomial = parts.iter().sum();
        if total != e.label || parts.is_empty() {
            return Err(Error::SplitMismatch);
        }
        if parts.iter().any(Polynomial::is_zero) {
            return Err(Error::ZeroLabel);
        }
        let mut g = self.clone();
        g.remove_edge(id)?;
        let ids = parts
            .iter()
            .map(|p| g.add_edge(e.source, e.target, p.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((g, ids))
    }

    /// Merges, for each ordered pair of nodes, all parallel edges with
    /// nonpositive labels into one. Returns the new graph and a map from every
    /// old edge id to its id in the new graph.
    pub fn merge_parallel_negative(&self) -> (Multidigraph, BTreeMap<EdgeId, EdgeId>) {
        let mut groups: BTreeMap<(NodeId, NodeId), Vec<EdgeId>> = BTreeMap::new();
        for e in &self.edges {
            if e.is_negative() {
                groups.entry((e.source, e.target)).or_default().push(e.id);
            }
        }
        let mut g = self.clone();
        let mut map: BTreeMap<EdgeId, EdgeId> = self.edges.iter().map(|e| (e.id, e.id)).collect();
        for ((s, t), ids) in groups {
            if ids.len() < 2 {
                continue;
            }
            let label: Polynomial = ids.iter().map(|&i| &self.edge_ref(i).label).sum();
            for &i in &ids {
                g.remove_edge(i).expect("edge present");
            }
            let new = g.add_edge(s, t, label).expect("merged label is nonzero");
            for i in ids {
                map.insert(i, new);
            }
        }
        (g, map)
    }

    /// All directed cycles without repeated nodes, as edge sequences starting
    /// at the smallest node of the cycle. Parallel edges give distinct cycles.
    pub fn simple_cycles(&self) -> Vec<Vec<EdgeId>> {
        let n = self.node_count;
        let mut adj: Vec<Vec<(EdgeId, usize)>> = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.source.idx()].push((e.id, e.target.idx()));
        }
        let mut out = Vec::new();
        for s in 0..n {
            let mut j = Johnson {
                adj: &adj,
                start: s,
                blocked: vec![false; n],
                blist: vec![BTreeSet::new(); n],
                path: Vec::new(),
                out: &mut out,
            };
            j.circuit(s);
        }
        out
    }

    /// Whether a directed path leads from `from` to `to` without visiting
    /// `avoid`. A node reaches itself.
    pub fn reaches_avoiding(&self, from: NodeId, to: NodeId, avoid: NodeId) -> bool {
        self.path_avoiding(from, to, avoid).is_some()
    }

    /// A shortest path (as edge ids) from `from` to `to` that never visits
    /// `avoid`; empty when `from == to`.
    pub fn path_avoiding(&self, from: NodeId, to: NodeId, avoid: NodeId) -> Option<Vec<EdgeId>> {
        if from == to {
            return Some(Vec::new());
        }
        if from == avoid || to == avoid {
            return None;
        }
        let mut via: Vec<Option<(EdgeId, NodeId)>> = vec![None; self.node_count];
        let mut seen = vec![false; self.node_count];
        seen[from.idx()] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for e in self.out_edges(u) {
                let v = e.target;
                if v == avoid || seen[v.idx()] {
                    continue;
                }
                seen[v.idx()] = true;
                via[v.idx()] = Some((e.id, u));
                if v == to {
                    let mut path = Vec::new();
                    let mut w = to;
                    while let Some((id, prev)) = via[w.idx()] {
                        path.push(id);
                        w = prev;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(v);
            }
        }
        None
    }

    /// Graphviz rendering. Node `m + 1` is drawn as a double circle and edges
    /// with nonpositive labels are dashed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n  node [shape=circle];\n");
        for v in self.nodes() {
            if v == self.last_node() {
                s.push_str(&format!("  {v} [shape=doublecircle];\n"));
            } else {
                s.push_str(&format!("  {v};\n"));
            }
        }
        for e in &self.edges {
            let style = if e.is_negative() { ", style=dashed" } else { "" };
            s.push_str(&format!(
                "  {} -> {} [label=\"{}\"{}];\n",
                e.source, e.target, e.label, style
            ));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            nodes: self.node_count,
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    src: e.source.0,
                    tgt: e.target.0,
                    label: e.label.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self, Error> {
        let mut g = Multidigraph::new(j.nodes);
        for e in &j.edges {
            g.add_edge(NodeId(e.src), NodeId(e.tgt), parse_poly(&e.label)?)?;
        }
        Ok(g)
    }
}

struct Johnson<'a> {
    adj: &'a [Vec<(EdgeId, usize)>],
    start: usize,
    blocked: Vec<bool>,
    blist: Vec<BTreeSet<usize>>,
    path: Vec<EdgeId>,
    out: &'a mut Vec<Vec<EdgeId>>,
}

impl Johnson<'_> {
    fn circuit(&mut self, v: usize) -> bool {
        let mut found = false;
        self.blocked[v] = true;
        for &(id, w) in &self.adj[v] {
            if w < self.start {
                continue;
            }
            self.path.push(id);
            if w == self.start {
                self.out.push(self.path.clone());
                found = true;
            } else if !self.blocked[w] && self.circuit(w) {
                found = true;
            }
            self.path.pop();
        }
        if found {
            self.unblock(v);
        } else {
            for &(_, w) in &self.adj[v] {
                if w >= self.start {
                    self.blist[w].insert(v);
                }
            }
        }
        found
    }

    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        let waiting = std::mem::take(&mut self.blist[u]);
        for w in waiting {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}

/// Serialized form of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

/// A square matrix of polynomials whose columns sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianMatrix(PolyMatrix);

impl LaplacianMatrix {
    pub fn new(m: PolyMatrix) -> Result<Self, Error> {
        if !m.is_square() {
            return Err(Error::Dimension("a Laplacian must be square".into()));
        }
        for c in 0..m.ncols() {
            let sum: Polynomial = (0..m.nrows()).map(|r| m.get(r, c)).sum();
            if !sum.is_zero() {
                return Err(Error::NonzeroColumnSum(c + 1));
            }
        }
        Ok(LaplacianMatrix(m))
    }

    /// Size `m + 1`.
    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    /// Entry in row `i`, column `j` (1-based nodes).
    pub fn entry(&self, i: NodeId, j: NodeId) -> &Polynomial {
        self.0.get(i.idx(), j.idx())
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.0
    }

    /// The graph with one edge `j -> i` labeled `L_ij` per nonzero
    /// off-diagonal entry.
    pub fn canonical_graph(&self) -> Multidigraph {
        canonical_graph(self)
    }
}

impl fmt::Display for LaplacianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn laplacian_of(g: &Multidigraph) -> LaplacianMatrix {
    let n = g.node_count();
    let mut m = PolyMatrix::zeros(n, n);
    let mut acc: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(); n]; n];
    for e in g.edges() {
        let (i, j) = (e.target.idx(), e.source.idx());
        acc[i][j] += &e.label;
        acc[j][j] -= &e.label;
    }
    for (i, row) in acc.into_iter().enumerate() {
        for (j, p) in row.into_iter().enumerate() {
            m.set(i, j, p);
        }
    }
    LaplacianMatrix(m)
}

pub fn canonical_graph(l: &LaplacianMatrix) -> Multidigraph {
    let n = l.size();
    let mut g = Multidigraph::new(n);
    // Edges are created source-major so ids follow (source, target) order.
    for j in 0..n {
        for i in 0..n {
            if i != j {
                let p = l.0.get(i, j);
                if !p.is_zero() {
                    g.add_edge(NodeId::from_idx(j), NodeId::from_idx(i), p.clone())
                        .expect("valid edge");
                }
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_graph() -> Multidigraph {
        // Canonical graph of the bordered Laplacian of the 3x3 worked example.
        Multidigraph::parse(
            4,
            &[
                (1, 2, "-z1"),
                (1, 3, "-z2"),
                (1, 4, "z1 + 2*z2"),
                (2, 3, "z3"),
                (3, 1, "z4"),
                (4, 2, "z5"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn laplacian_round_trip() {
        let g = example_graph();
        let l = g.laplacian();
        let c = l.canonical_graph();
        assert_eq!(c.laplacian(), l);
        assert_eq!(c.edges().len(), 6);
        assert!(LaplacianMatrix::new(l.matrix().clone()).is_ok());
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Multidigraph::new(3);
        assert_eq!(
            g.add_edge(NodeId(1), NodeId(1), Polynomial::one()),
            Err(Error::SelfLoop(1))
        );
        assert_eq!(
            g.add_edge(NodeId(1), NodeId(2), Polynomial::zero()),
            Err(Error::ZeroLabel)
        );
        assert!(g.add_edge(NodeId(1), NodeId(4), Polynomial::one()).is_err());
        let bad = PolyMatrix::parse(&[&["1", "0"], &["0", "0"]]).unwrap();
        assert_eq!(LaplacianMatrix::new(bad), Err(Error::NonzeroColumnSum(1)));
    }

    #[test]
    fn split_and_merge_keep_laplacian() {
        let g = example_graph();
        let e14 = g.edges()[2].id;
        let (h, ids) = g
            .split_edge(e14, &[parse_poly("z1").unwrap(), parse_poly("2*z2").unwrap()])
            .unwrap();
        assert_eq!(ids.len(), 2);
        assert_eq!(h.laplacian(), g.laplacian());
        assert!(g.split_edge(e14, &[parse_poly("z1").unwrap()]).is_err());

        let n = Multidigraph::parse(6, &[(3, 6, "-z3"), (3, 6, "-z3"), (1, 2, "z1")]).unwrap();
        let (m, map) = n.merge_parallel_negative();
        assert_eq!(m.edges().len(), 2);
        assert_eq!(m.laplacian(), n.laplacian());
        assert_eq!(map[&EdgeId(0)], map[&EdgeId(1)]);
        assert_eq!(m.edge(map[&EdgeId(0)]).unwrap().label.to_string(), "-2*z3");
    }

    #[test]
    fn cycles() {
        let g = Multidigraph::parse(2, &[(1, 2, "1"), (2, 1, "1")]).unwrap();
        assert_eq!(g.simple_cycles().len(), 1);
        let p = Multidigraph::parse(2, &[(1, 2, "1"), (1, 2, "2"), (2, 1, "1")]).unwrap();
        assert_eq!(p.simple_cycles().len(), 2);
        let dag = Multidigraph::parse(3, &[(1, 2, "1"), (2, 3, "1"), (1, 3, "1")]).unwrap();
        assert!(dag.simple_cycles().is_empty());
        let c = example_graph().simple_cycles();
        // 1->3->1, 1->2->3->1 and 1->4->2->3->1
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn reachability() {
        let g = example_graph();
        assert!(g.reaches_avoiding(NodeId(2), NodeId(1), NodeId(4)));
        assert!(!g.reaches_avoiding(NodeId(4), NodeId(1), NodeId(2)));
        assert!(!g.reaches_avoiding(NodeId(2), NodeId(1), NodeId(3)));
        assert!(Multidigraph::new(3).reaches_avoiding(NodeId(1), NodeId(1), NodeId(3)));
        assert!(!Multidigraph::new(3).reaches_avoiding(NodeId(1), NodeId(2), NodeId(3)));
    }

    #[test]
    fn dot_and_json() {
        let g = Multidigraph::parse(3, &[(1, 3, "z1"), (2, 1, "-z2")]).unwrap();
        let dot = g.to_dot();
        assert!(dot.contains("3 [shape=doublecircle]"));
        assert!(dot.contains("2 -> 1 [label=\"-z2\", style=dashed]"));
        let j = g.to_json();
        assert_eq!(Multidigraph::from_json(&j).unwrap(), g);
    }
}
