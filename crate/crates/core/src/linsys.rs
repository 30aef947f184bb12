//! Square linear systems `A x + b = 0` solved through rooted spanning trees.
//!
//! The system is embedded in the Laplacian
//!
//! ```text
//!     | A   b      |
//! L = |            |
//!     | r   -Σ b_k |
//! ```
//!
//! whose last row `r` makes every column sum to zero. For any multidigraph
//! with this Laplacian, `x_i = Υ(i) / Υ(m+1)` where `Υ(j)` sums the labels of
//! the spanning trees rooted at `j`, and `det(A) = (-1)^m Υ(m+1)`.
//!
//! ```
//! use forestsolve::linsys::{solve, LinearSystem};
//!
//! let sys = LinearSystem::parse(
//!     &[&["-z2", "0", "z4"], &["-z1", "-z3", "0"], &["-z2", "z3", "-z4"]],
//!     &["0", "z5", "0"],
//! )
//! .unwrap();
//! let x = solve(&sys).unwrap();
//! assert_eq!(x.components[0].to_string(), "z5/(z1 + 2*z2)");
//! ```

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::forests::upsilon_rooted;
use crate::matrix::PolyMatrix;
use crate::multigraph::{LaplacianMatrix, Multidigraph, NodeId};
use crate::symring::{is_valid_name, parse_poly, Polynomial, RationalExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub a: PolyMatrix,
    pub b: Vec<Polynomial>,
    pub variables: Vec<String>,
}

impl LinearSystem {
    /// Validates dimensions; unknowns are named `x1..xm`.
    pub fn new(a: PolyMatrix, b: Vec<Polynomial>) -> Result<Self, Error> {
        let names = (1..=b.len()).map(|i| format!("x{i}")).collect();
        Self::with_variables(a, b, names)
    }

    pub fn with_variables(
        a: PolyMatrix,
        b: Vec<Polynomial>,
        variables: Vec<String>,
    ) -> Result<Self, Error> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "A is {}x{}, expected square",
                a.nrows(),
                a.ncols()
            )));
        }
        if b.len() != a.nrows() || variables.len() != a.nrows() {
            return Err(Error::Dimension(format!(
                "A has {} rows but b has {} entries and there are {} unknowns",
                a.nrows(),
                b.len(),
                variables.len()
            )));
        }
        for (i, v) in variables.iter().enumerate() {
            if !is_valid_name(v) {
                return Err(Error::InvalidVariable(v.clone()));
            }
            if variables[..i].contains(v) {
                return Err(Error::Input(format!("unknown `{v}` listed twice")));
            }
        }
        Ok(LinearSystem { a, b, variables })
    }

    pub fn parse(a: &[&[&str]], b: &[&str]) -> Result<Self, Error> {
        let b = b.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(PolyMatrix::parse(a)?, b)
    }

    /// Number of unknowns `m`.
    pub fn size(&self) -> usize {
        self.b.len()
    }

    /// Reorders the equations: row `i` of the result is row `perm[i]` (0-based)
    /// of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self, Error> {
        let m = self.size();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Input("row permutation is not a permutation".into()));
        }
        let rows = perm.iter().map(|&p| self.a.row(p).to_vec()).collect();
        let b = perm.iter().map(|&p| self.b[p].clone()).collect();
        Self::with_variables(PolyMatrix::from_rows(rows)?, b, self.variables.clone())
    }

    pub fn det(&self) -> Polynomial {
        self.a.det().expect("square")
    }

    pub fn from_json(j: &SystemJson) -> Result<Self, Error> {
        let a = j
            .a
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let b = j.b.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>, _>>()?;
        let a = if a.is_empty() {
            PolyMatrix::zeros(0, 0)
        } else {
            PolyMatrix::from_rows(a)?
        };
        match &j.variables {
            Some(v) => Self::with_variables(a, b, v.clone()),
            None => Self::new(a, b),
        }
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            variables: Some(self.variables.clone()),
            a: self
                .a
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|p| p.to_string()).collect())
                .collect(),
            b: self.b.iter().map(|p| p.to_string()).collect(),
            blocks: None,
        }
    }
}

/// Serialized system: `{variables, A, b}` plus an optional block description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BlocksJson>,
}

/// Block sizes `m_1..m_d`, the trailing size `m_0`, and optionally the
/// distinguished rows (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlocksJson {
    pub sizes: Vec<usize>,
    pub m0: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub components: Vec<RationalExpr>,
}

impl Solution {
    /// Componentwise [`RationalExpr::rat_equal`].
    pub fn rat_equal(&self, other: &Solution) -> bool {
        self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.rat_equal(b))
    }
}

/// The `(m+1) x (m+1)` Laplacian with `A` in the top-left block and `b` as
/// last column.
pub fn bordered_laplacian(sys: &LinearSystem) -> LaplacianMatrix {
    let m = sys.size();
    let mut l = PolyMatrix::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            l.set(i, j, sys.a.get(i, j).clone());
        }
        l.set(i, m, sys.b[i].clone());
    }
    for j in 0..=m {
        let s: Polynomial = (0..m).map(|i| l.get(i, j)).sum();
        l.set(m, j, -s);
    }
    LaplacianMatrix::new(l).expect("columns sum to zero by construction")
}

/// `x_i = Υ(i) / Υ(m+1)` on a graph whose Laplacian is the bordered one.
pub fn solve_by_trees(sys: &LinearSystem, g: &Multidigraph) -> Result<Solution, Error> {
    if g.laplacian() != bordered_laplacian(sys) {
        return Err(Error::LaplacianMismatch);
    }
    let den = upsilon_rooted(g, g.last_node());
    if den.is_zero() {
        return Err(Error::Singular);
    }
    let components = (1..=sys.size())
        .map(|i| RationalExpr::new(upsilon_rooted(g, NodeId(i)), den.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Solution { components })
}

/// [`solve_by_trees`] on the canonical graph of the bordered Laplacian.
pub fn solve(sys: &LinearSystem) -> Result<Solution, Error> {
    let g = bordered_laplacian(sys).canonical_graph();
    solve_by_trees(sys, &g)
}

/// Cramer's rule with exact determinants.
pub fn cramer_oracle(sys: &LinearSystem) -> Result<Solution, Error> {
    let m = sys.size();
    let det = sys.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let mut components = Vec::with_capacity(m);
    for i in 0..m {
        let mut ai = sys.a.clone();
        for r in 0..m {
            ai.set(r, i, -&sys.b[r]);
        }
        components.push(RationalExpr::new(ai.det()?, det.clone())?);
    }
    Ok(Solution { components })
}

/// Whether `A x + b = 0` holds exactly.
pub fn residual_check(sys: &LinearSystem, sol: &Solution) -> bool {
    if sol.components.len() != sys.size() {
        return false;
    }
    (0..sys.size()).all(|r| {
        let mut acc = RationalExpr::from_poly(sys.b[r].clone());
        for (c, x) in sol.components.iter().enumerate() {
            let a = sys.a.get(r, c);
            if !a.is_zero() {
                acc = acc.add(&x.mul_poly(a));
            }
        }
        acc.is_zero()
    })
}
