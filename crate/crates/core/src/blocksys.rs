//! Block-structured systems.
//!
//! The unknowns are split into consecutive blocks `N_1, ..., N_d` followed by
//! a trailing block `N_0`. Rows of block `i > 0` only involve the unknowns of
//! that block, and the independent terms of block `i` vanish except possibly
//! in one distinguished row `j_i`. Rows of `N_0` are arbitrary. The node
//! `m + 1` belongs to `N_0`.
//!
//! A graph on `m + 1` nodes is compatible with such a system when no edge
//! enters a block `N_i`, `i > 0`, from outside and its Laplacian agrees with
//! `(A | b)` outside the distinguished rows and row `m + 1`. The solution is
//! then a ratio of forest sums with roots chosen one per block, and a P-graph
//! of this kind certifies nonnegativity.
//!
//! ```
//! use forestsolve::blocksys::{certify_block_nonneg, BlockCertification, BlockStructure};
//! use forestsolve::linsys::LinearSystem;
//!
//! let sys = LinearSystem::parse(
//!     &[&["-z2", "z3", "0"], &["1", "1", "0"], &["0", "z3", "-z4"]],
//!     &["0", "-z1", "z5"],
//! )
//! .unwrap();
//! let bs = BlockStructure::from_system(&sys, vec![2], 1, None).unwrap();
//! assert_eq!(bs.distinguished(), &[2]);
//! let BlockCertification::Certified(c) = certify_block_nonneg(&sys, &bs, 1000).unwrap() else {
//!     panic!()
//! };
//! assert_eq!(c.solution.components[0].to_string(), "z1*z3/(z2 + z3)");
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::Error;
use crate::forests::enumerate_rooted;
use crate::linsys::{BlocksJson, LinearSystem, Solution};
use crate::matrix::PolyMatrix;
use crate::multigraph::{EdgeId, LaplacianMatrix, Multidigraph, NodeId};
use crate::pgraph::{find_pgraph, PGraphWitness};
use crate::symring::{Polynomial, RationalExpr};

/// Block sizes, trailing size and distinguished rows (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    sizes: Vec<usize>,
    m0: usize,
    j: Vec<usize>,
}

impl BlockStructure {
    /// Checks only the shape: sizes add up and `j_i ∈ N_i`.
    pub fn new(sizes: Vec<usize>, m0: usize, j: Vec<usize>) -> Result<Self, Error> {
        if j.len() != sizes.len() {
            return Err(Error::BlockForm(format!(
                "{} blocks but {} distinguished rows",
                sizes.len(),
                j.len()
            )));
        }
        if sizes.contains(&0) {
            return Err(Error::BlockForm("blocks must be nonempty".into()));
        }
        let bs = BlockStructure { sizes, m0, j };
        for i in 1..=bs.d() {
            if !bs.block(i).contains(&bs.j[i - 1]) {
                return Err(Error::BlockForm(format!(
                    "distinguished row {} is not in block {i}",
                    bs.j[i - 1]
                )));
            }
        }
        Ok(bs)
    }

    /// Builds the structure for `sys`, choosing the distinguished rows with
    /// [`choose_j`] unless given.
    pub fn from_system(
        sys: &LinearSystem,
        sizes: Vec<usize>,
        m0: usize,
        j: Option<Vec<usize>>,
    ) -> Result<Self, Error> {
        let total: usize = sizes.iter().sum::<usize>() + m0;
        if total != sys.size() {
            return Err(Error::BlockForm(format!(
                "block sizes add up to {total}, the system has {} unknowns",
                sys.size()
            )));
        }
        let j = match j {
            Some(j) => j,
            None => choose_j(sys, &sizes)?,
        };
        Self::new(sizes, m0, j)
    }

    pub fn from_json(sys: &LinearSystem, j: &BlocksJson) -> Result<Self, Error> {
        Self::from_system(sys, j.sizes.clone(), j.m0, j.j.clone())
    }

    pub fn to_json(&self) -> BlocksJson {
        BlocksJson {
            sizes: self.sizes.clone(),
            m0: self.m0,
            j: Some(self.j.clone()),
        }
    }

    /// Number of blocks `d`.
    pub fn d(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn m0(&self) -> usize {
        self.m0
    }

    /// Number of unknowns `m`.
    pub fn m(&self) -> usize {
        self.sizes.iter().sum::<usize>() + self.m0
    }

    /// `j_1, ..., j_d`.
    pub fn distinguished(&self) -> &[usize] {
        &self.j
    }

    /// Index range of `N_i` for `1 <= i <= d`; for `i = 0` the trailing
    /// unknowns together with `m + 1`.
    pub fn block(&self, i: usize) -> std::ops::RangeInclusive<usize> {
        if i == 0 {
            let start = self.m() - self.m0 + 1;
            return start..=self.m() + 1;
        }
        let start: usize = self.sizes[..i - 1].iter().sum::<usize>() + 1;
        start..=start + self.sizes[i - 1] - 1
    }

    /// The block holding node `v`; `0` for the trailing block and `m + 1`.
    pub fn block_of(&self, v: usize) -> usize {
        let mut end = 0;
        for (i, s) in self.sizes.iter().enumerate() {
            end += s;
            if v <= end {
                return i + 1;
            }
        }
        0
    }

    /// `F = {j_1, ..., j_d, m + 1}`.
    pub fn f_set(&self) -> Vec<NodeId> {
        let mut f: Vec<NodeId> = self.j.iter().map(|&j| NodeId(j)).collect();
        f.push(NodeId(self.m() + 1));
        f
    }

    fn is_distinguished(&self, row: usize) -> bool {
        self.j.contains(&row) || row == self.m() + 1
    }
}

/// For each block, the row of its nonzero independent term, or the first row
/// of the block when the block's terms all vanish.
pub fn choose_j(sys: &LinearSystem, sizes: &[usize]) -> Result<Vec<usize>, Error> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut start = 1;
    for (i, &s) in sizes.iter().enumerate() {
        let nz: Vec<usize> = (start..start + s)
            .filter(|&r| !sys.b[r - 1].is_zero())
            .collect();
        match nz[..] {
            [] => out.push(start),
            [r] => out.push(r),
            _ => return Err(Error::AmbiguousDistinguishedRow { block: i + 1 }),
        }
        start += s;
    }
    Ok(out)
}

/// Proposes block sizes for the first `m - m0` rows from the connected
/// components of their row/column support. Returns `None` when the
/// components are not consecutive square blocks.
pub fn detect_blocks(sys: &LinearSystem, m0: usize) -> Option<Vec<usize>> {
    let m = sys.size();
    let top = m.checked_sub(m0)?;
    // union-find over rows 0..top and columns top..top+m
    let mut parent: Vec<usize> = (0..m + top).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for r in 0..top {
        for c in 0..m {
            if !sys.a.get(r, c).is_zero() {
                let (a, b) = (find(&mut parent, r), find(&mut parent, top + c));
                parent[a] = b;
            }
        }
    }
    let mut sizes = Vec::new();
    let mut start = 0;
    while start < top {
        let root = find(&mut parent, start);
        let mut end = start;
        while end + 1 < top && find(&mut parent, end + 1) == root {
            end += 1;
        }
        for r in start..=end {
            for c in 0..m {
                let inside = (start..=end).contains(&c);
                if !inside && !sys.a.get(r, c).is_zero() {
                    return None;
                }
            }
        }
        if (end + 1..top).any(|r| find(&mut parent, r) == root) {
            return None;
        }
        sizes.push(end - start + 1);
        start = end + 1;
    }
    Some(sizes)
}

/// A way in which `(A | b)` fails the block form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockViolation {
    SizeSum { expected: usize, got: usize },
    /// Row `row` of block `block` has a nonzero entry in a column outside it.
    OffBlockEntry { block: usize, row: usize, column: usize },
    /// Nonzero independent term in a non-distinguished row of a block.
    IndependentTerm { block: usize, row: usize },
}

impl fmt::Display for BlockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockViolation::SizeSum { expected, got } => {
                write!(f, "block sizes add up to {got}, expected {expected}")
            }
            BlockViolation::OffBlockEntry { block, row, column } => write!(
                f,
                "entry ({row}, {column}) lies outside block {block} but is nonzero"
            ),
            BlockViolation::IndependentTerm { block, row } => write!(
                f,
                "b_{row} is nonzero but row {row} is not the distinguished row of block {block}"
            ),
        }
    }
}

/// Empty iff `(A | b)` has the block form described by `bs`.
pub fn validate_block_form(sys: &LinearSystem, bs: &BlockStructure) -> Vec<BlockViolation> {
    if bs.m() != sys.size() {
        return vec![BlockViolation::SizeSum {
            expected: sys.size(),
            got: bs.m(),
        }];
    }
    let mut out = Vec::new();
    for i in 1..=bs.d() {
        let range = bs.block(i);
        for row in range.clone() {
            for column in 1..=sys.size() {
                if !range.contains(&column) && !sys.a.get(row - 1, column - 1).is_zero() {
                    out.push(BlockViolation::OffBlockEntry { block: i, row, column });
                }
            }
            if row != bs.j[i - 1] && !sys.b[row - 1].is_zero() {
                out.push(BlockViolation::IndependentTerm { block: i, row });
            }
        }
    }
    out
}

/// A graph compatible with the block system, with its Laplacian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ACompatibleWitness {
    pub graph: Multidigraph,
    pub laplacian: LaplacianMatrix,
}

/// A way in which a graph fails to be compatible with the block system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatViolation {
    NodeCount { expected: usize, got: usize },
    /// An edge entering block `N_i`, `i > 0`, from another block.
    CrossBlockEdge { edge: EdgeId, from_block: usize, to_block: usize },
    /// Laplacian entry differing from `(A | b)` in a non-distinguished row.
    RowMismatch { row: usize, column: usize },
}

impl fmt::Display for CompatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompatViolation::NodeCount { expected, got } => {
                write!(f, "graph has {got} nodes, expected {expected}")
            }
            CompatViolation::CrossBlockEdge {
                edge,
                from_block,
                to_block,
            } => write!(f, "edge {edge} goes from block {from_block} into block {to_block}"),
            CompatViolation::RowMismatch { row, column } => {
                write!(f, "Laplacian entry ({row}, {column}) differs from (A | b)")
            }
        }
    }
}

fn augmented(sys: &LinearSystem, row: usize, col: usize) -> &Polynomial {
    if col == sys.size() {
        &sys.b[row]
    } else {
        sys.a.get(row, col)
    }
}

/// Empty iff `g` is compatible with the block system.
pub fn validate_acompatible(
    g: &Multidigraph,
    bs: &BlockStructure,
    sys: &LinearSystem,
) -> Vec<CompatViolation> {
    let m = sys.size();
    if g.node_count() != m + 1 || bs.m() != m {
        return vec![CompatViolation::NodeCount {
            expected: m + 1,
            got: g.node_count(),
        }];
    }
    let mut out = Vec::new();
    for e in g.edges() {
        let (from, to) = (bs.block_of(e.source.0), bs.block_of(e.target.0));
        if to >= 1 && from != to {
            out.push(CompatViolation::CrossBlockEdge {
                edge: e.id,
                from_block: from,
                to_block: to,
            });
        }
    }
    let l = g.laplacian();
    for row in 1..=m {
        if bs.is_distinguished(row) {
            continue;
        }
        for column in 1..=m + 1 {
            if l.entry(NodeId(row), NodeId(column)) != augmented(sys, row - 1, column - 1) {
                out.push(CompatViolation::RowMismatch { row, column });
            }
        }
    }
    out
}

/// Per column of a block, the terms that are free to go to the distinguished
/// row or to row `m + 1`.
struct FreeColumns {
    /// `(distinguished row, column, terms of minus the fixed column sum)`
    cols: Vec<(usize, usize, Vec<Polynomial>)>,
}

impl FreeColumns {
    fn new(sys: &LinearSystem, bs: &BlockStructure) -> Self {
        let mut cols = Vec::new();
        for i in 1..=bs.d() {
            let jr = bs.j[i - 1];
            for c in bs.block(i) {
                let s: Polynomial = (1..=sys.size())
                    .filter(|&r| r != jr)
                    .map(|r| sys.a.get(r - 1, c - 1))
                    .sum();
                let terms = (-s).monomial_split().unwrap_or_default();
                cols.push((jr, c, terms));
            }
        }
        FreeColumns { cols }
    }

    /// The assignment that keeps off-diagonal entries of the distinguished
    /// rows nonnegative and their diagonal nonpositive.
    fn heuristic(&self) -> Vec<Vec<bool>> {
        self.cols
            .iter()
            .map(|(jr, c, terms)| {
                terms
                    .iter()
                    .map(|t| t.sign().is_nonneg() != (jr == c))
                    .collect()
            })
            .collect()
    }

    fn laplacian(&self, sys: &LinearSystem, bs: &BlockStructure, pick: &[Vec<bool>]) -> LaplacianMatrix {
        let m = sys.size();
        let mut l = PolyMatrix::zeros(m + 1, m + 1);
        for r in 1..=m {
            if bs.is_distinguished(r) {
                continue;
            }
            for c in 1..=m + 1 {
                l.set(r - 1, c - 1, augmented(sys, r - 1, c - 1).clone());
            }
        }
        for ((jr, c, terms), chosen) in self.cols.iter().zip(pick) {
            let p: Polynomial = terms
                .iter()
                .zip(chosen)
                .filter(|(_, &on)| on)
                .map(|(t, _)| t)
                .sum();
            l.set(jr - 1, c - 1, p);
        }
        for c in 0..=m {
            let s: Polynomial = (0..m).map(|r| l.get(r, c)).sum();
            l.set(m, c, -s);
        }
        LaplacianMatrix::new(l).expect("columns sum to zero by construction")
    }
}

/// The compatible Laplacian built by the sign heuristic: each distinguished
/// row takes the terms of minus the remaining column sum that make its
/// off-diagonal entries nonnegative and its diagonal entry nonpositive; row
/// `m + 1` balances the columns. Returns the canonical graph when it is
/// compatible.
pub fn build_acompatible(sys: &LinearSystem, bs: &BlockStructure) -> Option<ACompatibleWitness> {
    let free = FreeColumns::new(sys, bs);
    let laplacian = free.laplacian(sys, bs, &free.heuristic());
    let graph = laplacian.canonical_graph();
    validate_acompatible(&graph, bs, sys)
        .is_empty()
        .then_some(ACompatibleWitness { graph, laplacian })
}

/// Numerators and the common denominator of the block forest formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFormula {
    pub numerators: Vec<Polynomial>,
    pub denominator: Polynomial,
}

fn cartesian(ranges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for r in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                r.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Evaluates the forest formula on a compatible graph `g`.
///
/// The denominator sums `Π a_{j_i β_i} Υ(F, B)` over root sets with one node
/// `β_i` per block and `m + 1`. The numerator of `x_ℓ` sums, over the block
/// `k` whose root is replaced by `ℓ`, the weight `-b_{j_k}` (or `1` for
/// `k = d + 1`) times `Π_{i≠k} a_{j_i β_i} Υ(F, B ∪ {ℓ})`.
pub fn block_formula(sys: &LinearSystem, bs: &BlockStructure, g: &Multidigraph) -> BlockFormula {
    let m = sys.size();
    let d = bs.d();
    let f = bs.f_set();
    let mut cache: HashMap<Vec<NodeId>, Polynomial> = HashMap::new();
    let mut ups = |b: Vec<NodeId>| -> Polynomial {
        let mut key = b;
        key.sort();
        cache
            .entry(key)
            .or_insert_with_key(|key| {
                enumerate_rooted(g, key)
                    .iter()
                    .filter(|z| z.root_assignment(&f).is_some())
                    .map(|z| z.label(g))
                    .sum()
            })
            .clone()
    };
    let a = |i: usize, beta: usize| sys.a.get(bs.j[i] - 1, beta - 1);
    let blocks: Vec<Vec<usize>> = (1..=d).map(|i| bs.block(i).collect()).collect();

    let mut denominator = Polynomial::zero();
    for betas in cartesian(&blocks) {
        let w: Polynomial = betas.iter().enumerate().map(|(i, &b)| a(i, b)).product();
        if w.is_zero() {
            continue;
        }
        let mut roots: Vec<NodeId> = betas.iter().map(|&b| NodeId(b)).collect();
        roots.push(NodeId(m + 1));
        denominator += &(&w * &ups(roots));
    }

    let mut numerators = Vec::with_capacity(m);
    for ell in 1..=m {
        let home = bs.block_of(ell);
        let mut num = Polynomial::zero();
        for k in 1..=d + 1 {
            // Θ(F, B ∪ {ℓ}) is empty when ℓ sits in a block other than k.
            if home != 0 && home != k {
                continue;
            }
            let coef = if k <= d {
                -&sys.b[bs.j[k - 1] - 1]
            } else {
                Polynomial::one()
            };
            if coef.is_zero() {
                continue;
            }
            let ranges: Vec<Vec<usize>> = (1..=d)
                .filter(|&i| i != k)
                .map(|i| blocks[i - 1].clone())
                .collect();
            let others: Vec<usize> = (1..=d).filter(|&i| i != k).collect();
            for betas in cartesian(&ranges) {
                if betas.contains(&ell) {
                    continue;
                }
                let w: Polynomial = betas
                    .iter()
                    .zip(&others)
                    .map(|(&b, &i)| a(i - 1, b))
                    .product();
                if w.is_zero() {
                    continue;
                }
                let mut roots: Vec<NodeId> = betas.iter().map(|&b| NodeId(b)).collect();
                if k <= d {
                    if ell == m + 1 {
                        continue;
                    }
                    roots.push(NodeId(m + 1));
                }
                roots.push(NodeId(ell));
                num += &(&(&coef * &w) * &ups(roots));
            }
        }
        numerators.push(num);
    }
    BlockFormula {
        numerators,
        denominator,
    }
}

/// Solves the block system through the forest formula on a compatible graph.
pub fn solve_block(
    sys: &LinearSystem,
    bs: &BlockStructure,
    w: &ACompatibleWitness,
) -> Result<Solution, Error> {
    let BlockFormula {
        numerators,
        denominator,
    } = block_formula(sys, bs, &w.graph);
    if denominator.is_zero() {
        return Err(Error::Singular);
    }
    let components = numerators
        .into_iter()
        .map(|n| RationalExpr::new(n, denominator.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Solution { components })
}

/// A path from `j_block` to `target` through the negative edge `edge` that
/// avoids `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarViolation {
    pub block: usize,
    pub target: NodeId,
    pub edge: EdgeId,
}

impl fmt::Display for StarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a walk from the distinguished row of block {} to node {} uses negative edge {} without visiting the last node",
            self.block, self.target, self.edge
        )
    }
}

/// Checks that every walk from a distinguished node `j_i` to a node
/// `ℓ <= m` that uses a negative edge passes through `m + 1`.
///
/// Walks are allowed to repeat nodes, so this is at least as strict as the
/// path reading.
pub fn check_condition_star(g: &Multidigraph, bs: &BlockStructure) -> Result<(), StarViolation> {
    let last = g.last_node();
    for e in g.edges().iter().filter(|e| e.is_negative()) {
        if e.source == last || e.target == last {
            continue;
        }
        for (i, &j) in bs.j.iter().enumerate() {
            if !g.reaches_avoiding(NodeId(j), e.source, last) {
                continue;
            }
            if let Some(ell) = g
                .nodes()
                .filter(|&l| l != last)
                .find(|&l| g.reaches_avoiding(e.target, l, last))
            {
                return Err(StarViolation {
                    block: i + 1,
                    target: ell,
                    edge: e.id,
                });
            }
        }
    }
    Ok(())
}

/// Nodes `ℓ` of the blocks `N_i`, `i > 0`, with a simple path to a node
/// `j <= m` that uses a negative edge and avoids `m + 1`. Under the
/// certification hypotheses these components of the solution vanish.
pub fn zero_components(g: &Multidigraph, bs: &BlockStructure) -> BTreeSet<usize> {
    let last = g.last_node();
    let mut out = BTreeSet::new();
    for ell in 1..=bs.m() - bs.m0 {
        let start = NodeId(ell);
        let hit = g.edges().iter().filter(|e| e.is_negative()).any(|e| {
            e.source != last
                && e.target != last
                && e.target != start
                && reaches_avoiding_two(g, start, e.source, last, e.target)
        });
        if hit {
            out.insert(ell);
        }
    }
    out
}

fn reaches_avoiding_two(g: &Multidigraph, from: NodeId, to: NodeId, a: NodeId, b: NodeId) -> bool {
    if from == to {
        return true;
    }
    let mut seen = vec![false; g.node_count()];
    seen[from.idx()] = true;
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        for e in g.out_edges(u) {
            let v = e.target;
            if v == a || v == b || seen[v.idx()] {
                continue;
            }
            if v == to {
                return true;
            }
            seen[v.idx()] = true;
            stack.push(v);
        }
    }
    false
}

/// A certified nonnegative solution of a block system.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCertificate {
    pub solution: Solution,
    pub witness: PGraphWitness,
    pub laplacian: LaplacianMatrix,
    pub formula: BlockFormula,
    pub zero_components: BTreeSet<usize>,
    /// Number of candidate Laplacians examined, the heuristic one included.
    pub candidates: usize,
}

/// Why a block system was not certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockFailure {
    /// The input is not in block form.
    Form(Vec<BlockViolation>),
    /// A distinguished row of `A` or its independent term has the wrong sign.
    Hypothesis(String),
    /// No candidate gave a P-graph satisfying the path condition.
    NoWitness { tried: usize, exhausted: bool, last: String },
}

impl fmt::Display for BlockFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockFailure::Form(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "not in block form: {}", parts.join("; "))
            }
            BlockFailure::Hypothesis(s) => write!(f, "hypothesis fails: {s}"),
            BlockFailure::NoWitness {
                tried,
                exhausted,
                last,
            } => {
                write!(f, "no compatible P-graph among {tried} candidates")?;
                if *exhausted {
                    write!(f, " (budget exhausted)")?;
                }
                write!(f, "; last failure: {last}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BlockCertification {
    Certified(Box<BlockCertificate>),
    NotCertified(BlockFailure),
}

/// Searches for a compatible P-graph satisfying the path condition and
/// returns the solution it certifies.
///
/// The heuristic Laplacian is tried first. After that every way of sending
/// the terms of the free columns to either the distinguished row or row
/// `m + 1` is tried, at most `budget` candidates in total.
pub fn certify_block_nonneg(
    sys: &LinearSystem,
    bs: &BlockStructure,
    budget: usize,
) -> Result<BlockCertification, Error> {
    let form = validate_block_form(sys, bs);
    if !form.is_empty() {
        return Ok(BlockCertification::NotCertified(BlockFailure::Form(form)));
    }
    for (i, &j) in bs.j.iter().enumerate() {
        for c in 1..=sys.size() {
            if !sys.a.get(j - 1, c - 1).sign().is_nonneg() {
                return Ok(BlockCertification::NotCertified(BlockFailure::Hypothesis(
                    format!("entry ({j}, {c}) of distinguished row {} is not nonnegative", i + 1),
                )));
            }
        }
        if !sys.b[j - 1].sign().is_nonpos() {
            return Ok(BlockCertification::NotCertified(BlockFailure::Hypothesis(
                format!("b_{j} is not nonpositive"),
            )));
        }
    }

    let free = FreeColumns::new(sys, bs);
    let heuristic = free.heuristic();
    let radix: Vec<usize> = free.cols.iter().map(|(_, _, t)| t.len()).collect();
    let total_bits: usize = radix.iter().sum();
    let space: Option<u64> = 1u64.checked_shl(total_bits as u32).filter(|_| total_bits < 64);

    let mut tried = 0;
    let mut last = String::from("no candidates");
    let candidate = |mask: Option<u64>| -> Option<Vec<Vec<bool>>> {
        let Some(mask) = mask else {
            return Some(heuristic.clone());
        };
        let mut bit = 0;
        let pick: Vec<Vec<bool>> = radix
            .iter()
            .map(|&n| {
                (0..n)
                    .map(|_| {
                        let on = mask & (1 << bit) != 0;
                        bit += 1;
                        on
                    })
                    .collect()
            })
            .collect();
        (pick != heuristic).then_some(pick)
    };
    let masks = std::iter::once(None).chain((0..space.unwrap_or(0)).map(Some));
    for mask in masks {
        if tried >= budget {
            return Ok(BlockCertification::NotCertified(BlockFailure::NoWitness {
                tried,
                exhausted: true,
                last,
            }));
        }
        let Some(pick) = candidate(mask) else {
            continue;
        };
        tried += 1;
        let l = free.laplacian(sys, bs, &pick);
        let w = match find_pgraph(&l) {
            Ok(w) => w,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        if !validate_acompatible(w.graph(), bs, sys).is_empty() {
            last = "candidate Laplacian has an edge across blocks".into();
            continue;
        }
        if let Err(v) = check_condition_star(w.graph(), bs) {
            last = v.to_string();
            continue;
        }
        log::debug!("compatible P-graph found after {tried} candidates");
        let formula = block_formula(sys, bs, w.graph());
        if formula.denominator.is_zero() {
            return Err(Error::Singular);
        }
        let components = formula
            .numerators
            .iter()
            .map(|n| RationalExpr::new(n.clone(), formula.denominator.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let zero_components = zero_components(w.graph(), bs);
        return Ok(BlockCertification::Certified(Box::new(BlockCertificate {
            solution: Solution { components },
            zero_components,
            witness: w,
            laplacian: l,
            formula,
            candidates: tried,
        })));
    }
    Ok(BlockCertification::NotCertified(BlockFailure::NoWitness {
        tried,
        exhausted: false,
        last,
    }))
}
