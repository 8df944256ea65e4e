use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// A sparse matrix of polynomials stored by column.
///
/// Column `j` of a differential holds the image of the `j`-th basis element.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyMatrix {
    nrows: usize,
    cols: Vec<BTreeMap<usize, Polynomial>>,
}

impl PolyMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            nrows,
            cols: vec![BTreeMap::new(); ncols],
        }
    }

    /// Builds a matrix from `(row, col, entry)` triples, summing repeats.
    pub fn from_entries(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Polynomial)>,
    ) -> Result<Self> {
        let mut m = PolyMatrix::zeros(nrows, ncols);
        for (i, j, p) in entries {
            if i >= nrows {
                return Err(Error::Dimension {
                    expected: nrows,
                    found: i + 1,
                });
            }
            if j >= ncols {
                return Err(Error::Dimension {
                    expected: ncols,
                    found: j + 1,
                });
            }
            m.add_to(i, j, &p);
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Polynomial> {
        self.cols[j].get(&i)
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, Polynomial> {
        &self.cols[j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert!(i < self.nrows, "row {i} out of range");
        if p.is_zero() {
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i, p);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &Polynomial) {
        assert!(i < self.nrows, "row {i} out of range");
        let col = &mut self.cols[j];
        let sum = match col.get(&i) {
            Some(q) => q.add(p),
            None => p.clone(),
        };
        if sum.is_zero() {
            col.remove(&i);
        } else {
            col.insert(i, sum);
        }
    }

    /// Nonzero entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, p)| (*i, j, p)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols() != other.nrows {
            return Err(Error::Dimension {
                expected: self.ncols(),
                found: other.nrows,
            });
        }
        let mut out = PolyMatrix::zeros(self.nrows, other.ncols());
        for (j, col) in other.cols.iter().enumerate() {
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    out.add_to(*i, j, &a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to every entry, dropping entries that become zero.
    pub fn map_entries(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> PolyMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|(i, p)| {
                        let q = f(p);
                        (!q.is_zero()).then_some((*i, q))
                    })
                    .collect()
            })
            .collect();
        PolyMatrix {
            nrows: self.nrows,
            cols,
        }
    }

    /// The matrix with the given rows and columns removed; remaining indices
    /// keep their relative order.
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let row_map = reindex(self.nrows, rows);
        let col_keep: Vec<usize> = (0..self.ncols()).filter(|j| !cols.contains(j)).collect();
        let new_cols = col_keep
            .iter()
            .map(|&j| {
                self.cols[j]
                    .iter()
                    .filter_map(|(i, p)| row_map[*i].map(|ni| (ni, p.clone())))
                    .collect()
            })
            .collect();
        PolyMatrix {
            nrows: self.nrows - rows.len(),
            cols: new_cols,
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.ncols(), self.nrows);
        for (i, j, p) in self.entries() {
            out.cols[i].insert(j, p.clone());
        }
        out
    }
}

fn reindex(n: usize, removed: &[usize]) -> Vec<Option<usize>> {
    let mut next = 0;
    (0..n)
        .map(|i| {
            if removed.contains(&i) {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect()
}

/// Exact matrix-vector product `A v`.
pub fn matrix_apply(a: &PolyMatrix, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if a.ncols() != v.len() {
        return Err(Error::Dimension {
            expected: a.ncols(),
            found: v.len(),
        });
    }
    let mut out = vec![Polynomial::zero(); a.nrows];
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (i, p) in &a.cols[j] {
            out[*i].add_assign(&p.mul(x));
        }
    }
    Ok(out)
}
