//! Exact sparse linear algebra over a [`Field`](crate::field::Field).
//!
//! Vectors are sorted `(index, value)` lists with no stored zeros. Every
//! elimination picks the smallest available pivot index, so echelon forms,
//! kernel bases and solutions are canonical for a given input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::Scalar;

pub type SparseVec = Vec<(usize, Scalar)>;

/// `v + c * w`.
pub fn axpy(v: &[(usize, Scalar)], c: &Scalar, w: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            let x = c * &w[j].1;
            if !x.is_zero() {
                out.push((w[j].0, x));
            }
            j += 1;
        } else {
            let x = &v[i].1 + &(c * &w[j].1);
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, c * x)).collect()
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in entries {
        match map.get_mut(&i) {
            Some(y) => *y = &*y + &x,
            None => {
                map.insert(i, x);
            }
        }
    }
    map.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Row echelon form keyed by pivot column; every stored row has leading entry 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Eliminates every pivot column from `v`, scanning upward from `from`.
    fn reduce_from(&self, mut v: SparseVec, from: usize) -> SparseVec {
        let mut pos = v.partition_point(|(i, _)| *i < from);
        while pos < v.len() {
            let col = v[pos].0;
            match self.rows.get(&col) {
                Some(row) => {
                    let c = -&v[pos].1;
                    v = axpy(&v, &c, row);
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Fully reduces `v` against the stored rows.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.reduce_from(v, 0)
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v.to_vec()).is_empty()
    }

    /// Adds `v` to the row space. Returns the new pivot if the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (pivot, lead) = r.first()?.clone();
        let inv = lead.inv().expect("nonzero leading entry");
        self.rows.insert(pivot, scale(&r, &inv));
        Some(pivot)
    }

    /// Converts to reduced row echelon form: zeros above and below every pivot.
    pub fn into_rref(self) -> Echelon {
        let mut out = Echelon {
            rows: BTreeMap::new(),
        };
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        let mut done = BTreeMap::new();
        for p in pivots {
            let row = self.rows[&p].clone();
            let reduced = out.reduce_from(row, p + 1);
            done.insert(p, reduced.clone());
            out.rows.insert(p, reduced);
        }
        Echelon { rows: done }
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows.into_values().collect()
    }
}

/// Rank, image and kernel of a matrix given by its columns.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    pub rank: usize,
    /// Reduced echelon basis of the column space.
    pub image: Echelon,
    /// Reduced echelon basis of the null space.
    pub kernel: Vec<SparseVec>,
}

/// Reduces a matrix with `nrows` rows whose columns are `cols`.
///
/// The field is taken from the first nonzero entry; use [`column_reduce_in`]
/// when the matrix may be entirely zero.
pub fn column_reduce(nrows: usize, cols: &[SparseVec]) -> ColumnReduction {
    let field = cols
        .iter()
        .flatten()
        .next()
        .map_or(crate::field::Field::Rational, |(_, x)| x.field());
    column_reduce_in(field, nrows, cols)
}

/// Rank of the matrix whose columns are `cols`.
pub fn rank_of_columns(cols: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for c in cols {
        e.insert(c.clone());
    }
    e.rank()
}

/// Transposes a list of sparse columns into sparse rows.
pub fn transpose(nrows: usize, cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows = vec![Vec::new(); nrows];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            rows[*i].push((j, x.clone()));
        }
    }
    rows
}

/// Solves `A x = b` where `A` is given by rows over `ncols` unknowns.
///
/// Returns the solution whose free variables are all zero, or `None` when the
/// system is inconsistent.
pub fn solve(ncols: usize, rows: &[SparseVec], rhs: &[Scalar]) -> Option<SparseVec> {
    assert_eq!(rows.len(), rhs.len());
    let mut e = Echelon::new();
    for (row, b) in rows.iter().zip(rhs) {
        let mut v = row.clone();
        if !b.is_zero() {
            v.push((ncols, b.clone()));
        }
        e.insert(v);
    }
    if e.rows.contains_key(&ncols) {
        return None;
    }
    let e = e.into_rref();
    let mut x = Vec::new();
    for (p, row) in &e.rows {
        if let Some((_, b)) = row.iter().find(|(i, _)| *i == ncols) {
            x.push((*p, b.clone()));
        }
    }
    Some(x)
}

/// Dense convenience wrapper: rank, kernel basis and image basis of `rows`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarRank {
    pub rank: usize,
    pub kernel: Vec<Vec<Scalar>>,
    pub image: Vec<Vec<Scalar>>,
}

pub fn scalar_rank(rows: &[Vec<Scalar>]) -> ScalarRank {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let field = rows
        .iter()
        .flatten()
        .next()
        .map_or(crate::field::Field::Rational, Scalar::field);
    let cols: Vec<SparseVec> = (0..ncols)
        .map(|j| {
            (0..nrows)
                .filter(|&i| !rows[i][j].is_zero())
                .map(|i| (i, rows[i][j].clone()))
                .collect()
        })
        .collect();
    let red = column_reduce_in(field, nrows, &cols);
    let dense = |v: &SparseVec, n: usize| {
        let mut out = vec![field.zero(); n];
        for (i, x) in v {
            out[*i] = x.clone();
        }
        out
    };
    ScalarRank {
        rank: red.rank,
        kernel: red.kernel.iter().map(|v| dense(v, ncols)).collect(),
        image: red.image.rows().map(|v| dense(v, nrows)).collect(),
    }
}

/// As [`column_reduce`], with the field given explicitly so that all-zero
/// matrices produce kernel vectors in the right field.
pub fn column_reduce_in(
    field: crate::field::Field,
    nrows: usize,
    cols: &[SparseVec],
) -> ColumnReduction {
    let mut pivots = Echelon::new();
    let mut kernel = Echelon::new();
    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        v.push((nrows + j, field.one()));
        let r = pivots.reduce(v);
        let (p, lead) = r.first().expect("augmented column cannot vanish").clone();
        if p < nrows {
            pivots
                .rows
                .insert(p, scale(&r, &lead.inv().expect("nonzero")));
        } else {
            kernel.insert(r.into_iter().map(|(i, x)| (i - nrows, x)).collect());
        }
    }
    let mut image = Echelon::new();
    for row in pivots.rows.values() {
        image.insert(row.iter().filter(|(i, _)| *i < nrows).cloned().collect());
    }
    ColumnReduction {
        rank: pivots.rank(),
        image: image.into_rref(),
        kernel: kernel.into_rref().into_rows(),
    }
}

/// Rank by fraction-free (Bareiss) elimination over the integers after
/// clearing denominators row by row. Only meaningful for rational input.
pub fn fraction_free_rank(rows: &[Vec<crate::field::Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::from(1), |acc, x| {
                let d = x.denom();
                num_integer::Integer::lcm(&acc, &d)
            });
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rational, DEFAULT_PRIME};

    fn q(n: i64) -> Scalar {
        Field::Rational.from_int(n)
    }

    fn dense(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn identity_rank() {
        let r = scalar_rank(&dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn proportional_rows() {
        let r = scalar_rank(&dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        // reduced echelon kernel basis: (1, -1/2) spans the same line as (-2, 1)
        assert_eq!(r.kernel.len(), 1);
        let k = &r.kernel[0];
        assert_eq!(&(&q(-2) * &k[1]), &k[0]);
        assert_eq!(r.image, vec![vec![q(1), q(2)]]);
    }

    #[test]
    fn zero_matrix() {
        let r = scalar_rank(&dense(&[&[0; 5], &[0; 5]]));
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel.len(), 5);
        assert!(r.image.is_empty());
    }

    #[test]
    fn solve_canonical() {
        // x + y = 2, free y -> x = 2, y = 0
        let rows = vec![vec![(0, q(1)), (1, q(1))]];
        assert_eq!(solve(2, &rows, &[q(2)]), Some(vec![(0, q(2))]));
        // inconsistent
        let rows = vec![vec![(0, q(1))], vec![(0, q(1))]];
        assert_eq!(solve(1, &rows, &[q(1), q(2)]), None);
    }

    #[test]
    fn rref_is_reduced() {
        let mut e = Echelon::new();
        e.insert(vec![(0, q(1)), (1, q(1)), (2, q(1))]);
        e.insert(vec![(1, q(1)), (2, q(3))]);
        let r = e.into_rref();
        assert_eq!(r.row(0).unwrap(), &vec![(0, q(1)), (2, q(-2))]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in matrix()) {
                let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
                let res = scalar_rank(&rows);
                prop_assert_eq!(res.rank + res.kernel.len(), m[0].len());
                for k in &res.kernel {
                    for row in &rows {
                        let mut acc = q(0);
                        for (a, b) in row.iter().zip(k) {
                            acc = &acc + &(a * b);
                        }
                        prop_assert!(acc.is_zero());
                    }
                }
                let ff: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
                prop_assert_eq!(fraction_free_rank(&ff), res.rank);
            }

            #[test]
            fn prime_and_rational_agree_on_small_matrices(m in matrix()) {
                let qrows: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
                let f = Field::Prime(DEFAULT_PRIME);
                let prows: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect();
                prop_assert_eq!(scalar_rank(&qrows).rank, scalar_rank(&prows).rank);
            }
        }
    }
}
