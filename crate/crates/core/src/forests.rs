//! Rooted spanning forests and the matrix-forest sums built from them.
//!
//! For root set `B` and node set `F` of the same size, `Θ(F, B)` is the set of
//! spanning forests with one tree per root in `B`, where edges point towards
//! the root and every tree contains exactly one node of `F`. The sums
//!
//! * `Υ(F, B) = Σ π(ζ)` and
//! * `Ỹ(F, B) = Σ (-1)^{I(g_ζ)} π(ζ)`
//!
//! run over that set, where `π(ζ)` is the product of the edge labels and
//! `g_ζ : F -> B` sends a node to the root of its tree. The all-minors
//! matrix-tree theorem says that deleting rows `F` and columns `B` from the
//! Laplacian leaves a minor equal to `(-1)^ε Ỹ(F, B)` with
//! `ε = m + 1 - |F| + ΣF + ΣB`.
//!
//! ```
//! use forestsolve::forests::{upsilon_rooted, all_minors_check};
//! use forestsolve::multigraph::{Multidigraph, NodeId};
//!
//! let g = Multidigraph::parse(3, &[(1, 2, "a"), (2, 3, "b"), (1, 3, "c")]).unwrap();
//! assert_eq!(upsilon_rooted(&g, NodeId(3)).to_string(), "a*b + b*c");
//! assert!(all_minors_check(&g, &[NodeId(1)], &[NodeId(3)]).unwrap());
//! ```

use std::collections::BTreeSet;

use crate::error::Error;
use crate::multigraph::{EdgeId, Multidigraph, NodeId};
use crate::symring::Polynomial;

/// A spanning forest given by the chosen edges; every node outside the
/// root set has exactly one outgoing edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Forest {
    edges: Vec<EdgeId>,
    roots: Vec<NodeId>,
    component: Vec<NodeId>,
}

impl Forest {
    /// Edge ids in increasing order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn roots(&self) -> &[NodeId] {
        &self.roots
    }

    /// Root of the tree containing `node`.
    pub fn root_of(&self, node: NodeId) -> NodeId {
        self.component[node.idx()]
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    /// `π(ζ)`, the product of the edge labels.
    pub fn label(&self, g: &Multidigraph) -> Polynomial {
        self.edges.iter().map(|&e| &g.edge_ref(e).label).product()
    }

    /// The root assignment `F -> B`, or `None` when some tree does not hold
    /// exactly one node of `F`.
    pub fn root_assignment(&self, f: &[NodeId]) -> Option<RootAssignment> {
        let mut fs: Vec<NodeId> = f.to_vec();
        fs.sort();
        let mut hit = vec![0usize; self.component.len()];
        for &v in &fs {
            hit[self.root_of(v).idx()] += 1;
        }
        if self.roots.iter().any(|r| hit[r.idx()] != 1) || fs.len() != self.roots.len() {
            return None;
        }
        let pairs: Vec<(NodeId, NodeId)> = fs.iter().map(|&v| (v, self.root_of(v))).collect();
        let mut inversions = 0;
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                if pairs[i].1 > pairs[j].1 {
                    inversions += 1;
                }
            }
        }
        Some(RootAssignment { pairs, inversions })
    }

    /// Builds a forest from explicit edges when they form a spanning forest
    /// rooted exactly at the nodes without an outgoing edge.
    pub fn from_edges(g: &Multidigraph, edges: &[EdgeId]) -> Option<Forest> {
        let n = g.node_count();
        let mut next: Vec<Option<NodeId>> = vec![None; n];
        for &id in edges {
            let e = g.edge(id)?;
            if next[e.source.idx()].is_some() {
                return None;
            }
            next[e.source.idx()] = Some(e.target);
        }
        let mut component = vec![NodeId(0); n];
        for v in 0..n {
            let mut u = NodeId::from_idx(v);
            let mut steps = 0;
            while let Some(w) = next[u.idx()] {
                u = w;
                steps += 1;
                if steps > n {
                    return None;
                }
            }
            component[v] = u;
        }
        let roots = (0..n)
            .filter(|&v| next[v].is_none())
            .map(NodeId::from_idx)
            .collect();
        let mut edges = edges.to_vec();
        edges.sort();
        Some(Forest {
            edges,
            roots,
            component,
        })
    }
}

/// The map `g_ζ : F -> B` of a forest, as sorted `(f, root)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootAssignment {
    pub pairs: Vec<(NodeId, NodeId)>,
    pub inversions: usize,
}

impl RootAssignment {
    pub fn sign(&self) -> i64 {
        if self.inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// All spanning forests whose roots are exactly `roots`, ordered
/// lexicographically by edge ids.
pub fn enumerate_rooted(g: &Multidigraph, roots: &[NodeId]) -> Vec<Forest> {
    let n = g.node_count();
    let mut is_root = vec![false; n];
    for r in roots {
        is_root[r.idx()] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !is_root[v]).collect();
    let mut out_edges: Vec<Vec<(EdgeId, usize)>> = vec![Vec::new(); n];
    for e in g.edges() {
        out_edges[e.source.idx()].push((e.id, e.target.idx()));
    }
    if free.iter().any(|&v| out_edges[v].is_empty()) {
        return Vec::new();
    }
    let mut next: Vec<Option<usize>> = vec![None; n];
    let mut chosen: Vec<EdgeId> = Vec::with_capacity(free.len());
    let mut out = Vec::new();
    let mut root_list: Vec<NodeId> = roots.to_vec();
    root_list.sort();
    root_list.dedup();
    backtrack(&free, 0, &out_edges, &mut next, &mut chosen, &mut |next, chosen| {
        let mut component = vec![NodeId(0); n];
        for (v, slot) in component.iter_mut().enumerate() {
            let mut u = v;
            while let Some(w) = next[u] {
                u = w;
            }
            *slot = NodeId::from_idx(u);
        }
        let mut edges = chosen.to_vec();
        edges.sort();
        out.push(Forest {
            edges,
            roots: root_list.clone(),
            component,
        });
    });
    out.sort();
    out
}

fn backtrack(
    free: &[usize],
    k: usize,
    out_edges: &[Vec<(EdgeId, usize)>],
    next: &mut Vec<Option<usize>>,
    chosen: &mut Vec<EdgeId>,
    emit: &mut dyn FnMut(&[Option<usize>], &[EdgeId]),
) {
    if k == free.len() {
        emit(next, chosen);
        return;
    }
    let u = free[k];
    for &(id, v) in &out_edges[u] {
        // Following pointers from v must not come back to u.
        let mut w = v;
        let mut cycle = false;
        loop {
            if w == u {
                cycle = true;
                break;
            }
            match next[w] {
                Some(x) => w = x,
                None => break,
            }
        }
        if cycle {
            continue;
        }
        next[u] = Some(v);
        chosen.push(id);
        backtrack(free, k + 1, out_edges, next, chosen, emit);
        chosen.pop();
        next[u] = None;
    }
}

fn check_sets(g: &Multidigraph, f: &[NodeId], b: &[NodeId]) -> Result<(), Error> {
    if f.len() != b.len() {
        return Err(Error::SizeMismatch {
            f: f.len(),
            b: b.len(),
        });
    }
    for v in f.iter().chain(b) {
        if v.0 == 0 || v.0 > g.node_count() {
            return Err(Error::NodeOutOfRange {
                node: v.0,
                max: g.node_count(),
            });
        }
    }
    let distinct = |s: &[NodeId]| s.iter().collect::<BTreeSet<_>>().len() == s.len();
    if !distinct(f) || !distinct(b) {
        return Err(Error::Input("node sets must not repeat nodes".into()));
    }
    Ok(())
}

/// `Θ(F, B)`.
pub fn enumerate_forests(
    g: &Multidigraph,
    f: &[NodeId],
    b: &[NodeId],
) -> Result<Vec<Forest>, Error> {
    check_sets(g, f, b)?;
    Ok(enumerate_rooted(g, b)
        .into_iter()
        .filter(|z| z.root_assignment(f).is_some())
        .collect())
}

/// `Υ(F, B)`.
pub fn upsilon(g: &Multidigraph, f: &[NodeId], b: &[NodeId]) -> Result<Polynomial, Error> {
    Ok(enumerate_forests(g, f, b)?.iter().map(|z| z.label(g)).sum())
}

/// `Ỹ(F, B)`.
pub fn upsilon_signed(g: &Multidigraph, f: &[NodeId], b: &[NodeId]) -> Result<Polynomial, Error> {
    let mut acc = Polynomial::zero();
    for z in enumerate_forests(g, f, b)? {
        let sign = z.root_assignment(f).expect("filtered").sign();
        let p = z.label(g);
        if sign > 0 {
            acc += &p;
        } else {
            acc -= &p;
        }
    }
    Ok(acc)
}

/// `Υ(j)`, the sum over spanning trees rooted at `j`.
pub fn upsilon_rooted(g: &Multidigraph, j: NodeId) -> Polynomial {
    enumerate_rooted(g, &[j]).iter().map(|z| z.label(g)).sum()
}

/// Checks the all-minors matrix-tree identity for one pair `(F, B)`.
pub fn all_minors_check(g: &Multidigraph, f: &[NodeId], b: &[NodeId]) -> Result<bool, Error> {
    let lhs = signed_minor_rhs(g, f, b)?;
    let l = g.laplacian();
    let rows: Vec<usize> = f.iter().map(|v| v.idx()).collect();
    let cols: Vec<usize> = b.iter().map(|v| v.idx()).collect();
    let minor = l.matrix().minor(&rows, &cols)?;
    Ok(minor == lhs)
}

/// `(-1)^ε Ỹ(F, B)`, the forest side of the all-minors identity.
pub fn signed_minor_rhs(g: &Multidigraph, f: &[NodeId], b: &[NodeId]) -> Result<Polynomial, Error> {
    let y = upsilon_signed(g, f, b)?;
    let eps = g.node_count() - f.len()
        + f.iter().map(|v| v.0).sum::<usize>()
        + b.iter().map(|v| v.0).sum::<usize>();
    Ok(if eps.is_multiple_of(2) { y } else { -y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symring::parse_poly;

    fn example() -> Multidigraph {
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
    fn rooted_sums() {
        let g = example();
        assert_eq!(
            upsilon_rooted(&g, NodeId(4)),
            parse_poly("(z1 + 2*z2)*z3*z4").unwrap()
        );
        // The trees through 1->2 and 1->4 contribute -z1*z4*z5 and (z1 + 2*z2)*z4*z5.
        assert_eq!(upsilon_rooted(&g, NodeId(2)), parse_poly("2*z2*z4*z5").unwrap());
        assert_eq!(
            upsilon(&g, &[NodeId(4)], &[NodeId(2)]).unwrap(),
            upsilon_rooted(&g, NodeId(2))
        );
    }

    #[test]
    fn trivial_cases() {
        let g = example();
        let all: Vec<NodeId> = g.nodes().collect();
        let f = enumerate_forests(&g, &all, &all).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].edges().is_empty());
        assert!(all_minors_check(&g, &all, &all).unwrap());
        assert_eq!(upsilon_rooted(&Multidigraph::new(1), NodeId(1)), Polynomial::one());
        let disc = Multidigraph::parse(3, &[(1, 2, "1")]).unwrap();
        assert!(enumerate_rooted(&disc, &[NodeId(2)]).is_empty());
        assert_eq!(
            enumerate_forests(&g, &[NodeId(1)], &[]),
            Err(Error::SizeMismatch { f: 1, b: 0 })
        );
    }

    #[test]
    fn determinant_identity_on_example() {
        let g = example();
        for f in 1..=4 {
            for b in 1..=4 {
                assert!(all_minors_check(&g, &[NodeId(f)], &[NodeId(b)]).unwrap());
            }
        }
        assert!(all_minors_check(&g, &[NodeId(1), NodeId(4)], &[NodeId(3), NodeId(2)]).unwrap());
    }

    #[test]
    fn inversions() {
        let g = Multidigraph::parse(4, &[(1, 4, "a"), (2, 3, "b")]).unwrap();
        let z = Forest::from_edges(&g, &[EdgeId(0), EdgeId(1)]).unwrap();
        let ra = z.root_assignment(&[NodeId(1), NodeId(2)]).unwrap();
        assert_eq!(ra.pairs, vec![(NodeId(1), NodeId(4)), (NodeId(2), NodeId(3))]);
        assert_eq!(ra.inversions, 1);
        assert_eq!(ra.sign(), -1);
        assert!(z.root_assignment(&[NodeId(1), NodeId(4)]).is_none());
    }
}
