//! Dense matrices of polynomials and exact determinants.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::symring::{parse_poly, Polynomial};

/// Dimension up to which [`PolyMatrix::det`] uses cofactor expansion.
pub const COFACTOR_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Polynomial::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, Error> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("rows have different lengths".into()));
        }
        Ok(PolyMatrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from rows of polynomial strings.
    pub fn parse(rows: &[&[&str]]) -> Result<Self, Error> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-based position.
    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.data[r * self.cols + c] = p;
    }

    pub fn row(&self, r: usize) -> &[Polynomial] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// The submatrix keeping the listed 0-based rows and columns, in order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Determinant of the matrix with the given 0-based rows and columns
    /// deleted. Deleting everything gives 1.
    pub fn minor(&self, del_rows: &[usize], del_cols: &[usize]) -> Result<Polynomial, Error> {
        let keep_r: Vec<usize> = (0..self.rows).filter(|r| !del_rows.contains(r)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|c| !del_cols.contains(c)).collect();
        self.select(&keep_r, &keep_c).det()
    }

    pub fn det(&self) -> Result<Polynomial, Error> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows <= COFACTOR_LIMIT {
            Ok(self.det_cofactor())
        } else {
            Ok(self.det_bareiss())
        }
    }

    /// Laplace expansion along rows, sharing the minors on the remaining
    /// rows through a table keyed by the set of used columns.
    pub fn det_cofactor(&self) -> Polynomial {
        assert!(self.is_square() && self.rows < 64);
        let n = self.rows;
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        self.cofactor_rec(0, 0, n, &mut memo)
    }

    fn cofactor_rec(
        &self,
        row: usize,
        used: u64,
        n: usize,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        if row == n {
            return Polynomial::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = Polynomial::zero();
        let mut free_idx = 0;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            let entry = self.get(row, c);
            if !entry.is_zero() {
                let sub = self.cofactor_rec(row + 1, used | (1 << c), n, memo);
                if !sub.is_zero() {
                    let t = entry * &sub;
                    if free_idx % 2 == 0 {
                        acc += &t;
                    } else {
                        acc -= &t;
                    }
                }
            }
            free_idx += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }

    /// Fraction-free (Bareiss) elimination with exact polynomial division.
    pub fn det_bareiss(&self) -> Polynomial {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Polynomial::one();
        }
        let mut a: Vec<Vec<Polynomial>> = self.to_rows();
        let mut sign_flip = false;
        let mut prev = Polynomial::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Polynomial::zero();
                };
                a.swap(k, p);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact");
                }
                a[i][k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign_flip {
            -d
        } else {
            d
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
