use std::fmt;

use num_traits::Zero;

use super::domain::{CoefficientDomain, Scalar};
use crate::error::Error;

/// Sparse exact matrix over a [`CoefficientDomain`].
///
/// Rows are stored as column-sorted lists of nonzero entries, so two
/// matrices with the same entries compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    domain: CoefficientDomain,
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Scalar)>>,
}

impl ExactMatrix {
    pub fn zeros(domain: CoefficientDomain, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            domain,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(domain: CoefficientDomain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for (i, row) in m.data.iter_mut().enumerate() {
            row.push((i, domain.one()));
        }
        m
    }

    /// Dense constructor from integer rows. Entries are reduced into the domain.
    pub fn from_rows(domain: CoefficientDomain, rows: &[Vec<i64>]) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "ragged rows: expected {cols} columns, found {}",
                bad.len()
            )));
        }
        let mut m = Self::zeros(domain, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let x = domain.from_i64(v);
                if !x.is_zero() {
                    m.data[i].push((j, x));
                }
            }
        }
        Ok(m)
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        domain: CoefficientDomain,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut data: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "triplet ({r}, {c}) outside {rows}x{cols}"
            );
            data[r].push((c, v));
        }
        for row in &mut data {
            *row = compact_row(domain, std::mem::take(row));
        }
        ExactMatrix {
            domain,
            rows,
            cols,
            data,
        }
    }

    /// Builds from one vector per column.
    pub fn from_columns(domain: CoefficientDomain, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let triplets = columns.iter().enumerate().flat_map(|(j, col)| {
            assert_eq!(col.len(), rows, "column length mismatch");
            col.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(i, v)| (i, j, v.clone()))
        });
        Self::from_triplets(domain, rows, columns.len(), triplets)
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub(crate) fn sparse_rows(&self) -> &[Vec<(usize, Scalar)>] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.rows]; self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[*c][r] = v.clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let triplets = self
            .data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone())));
        Self::from_triplets(self.domain, self.cols, self.rows, triplets)
    }

    /// `self * other`.
    pub fn mul(&self, other: &ExactMatrix) -> Result<Self, Error> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain, other.domain));
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: Vec<(usize, Scalar)> = Vec::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    acc.push((*c, a * b));
                }
            }
            data.push(compact_row(self.domain, acc));
        }
        Ok(ExactMatrix {
            domain: self.domain,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                let s = row
                    .iter()
                    .fold(Scalar::zero(), |acc, (c, a)| acc + a * &v[*c]);
                self.domain.normalize(s)
            })
            .collect())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<Self, Error> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| compact_row(self.domain, a.iter().chain(b).cloned().collect()))
            .collect();
        Ok(ExactMatrix {
            data,
            ..self.clone_shape()
        })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<Self, Error> {
        self.add(&other.scale(&self.domain.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let data = self
            .data
            .iter()
            .map(|row| compact_row(self.domain, row.iter().map(|(c, v)| (*c, v * s)).collect()))
            .collect();
        ExactMatrix {
            data,
            ..self.clone_shape()
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut position = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            position[old] = new;
        }
        let triplets = self.data.iter().enumerate().flat_map(|(r, row)| {
            let position = &position;
            row.iter()
                .filter(move |(c, _)| position[*c] != usize::MAX)
                .map(move |(c, v)| (r, position[*c], v.clone()))
        });
        Self::from_triplets(self.domain, self.rows, cols.len(), triplets)
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        ExactMatrix {
            domain: self.domain,
            rows: rows.len(),
            cols: self.cols,
            data: rows.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<Self, Error> {
        if self.rows != other.rows || self.domain != other.domain {
            return Err(Error::Shape("hstack of incompatible matrices".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                a.iter()
                    .cloned()
                    .chain(b.iter().map(|(c, v)| (c + self.cols, v.clone())))
                    .collect()
            })
            .collect();
        Ok(ExactMatrix {
            domain: self.domain,
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Reinterprets integral entries over another domain.
    pub fn change_domain(&self, domain: CoefficientDomain) -> Self {
        let data = self
            .data
            .iter()
            .map(|row| compact_row(domain, row.clone()))
            .collect();
        ExactMatrix {
            domain,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    fn clone_shape(&self) -> Self {
        ExactMatrix {
            domain: self.domain,
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
        }
    }

    fn check_same_shape(&self, other: &ExactMatrix) -> Result<(), Error> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain, other.domain));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// Sorts by column, merges duplicates, reduces into the domain, drops zeros.
fn compact_row(domain: CoefficientDomain, mut row: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.into_iter()
        .map(|(c, v)| (c, domain.normalize(v)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix<{}> {}x{}",
            self.domain, self.rows, self.cols
        )?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientDomain = CoefficientDomain::Rationals;

    #[test]
    fn product_and_transpose() {
        let a = ExactMatrix::from_rows(Q, &[vec![1, 2], vec![0, 1]]).unwrap();
        let b = ExactMatrix::from_rows(Q, &[vec![1, -2], vec![0, 1]]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), ExactMatrix::identity(Q, 2));
        assert_eq!(a.transpose().get(1, 0), Q.from_i64(2));
        assert!(a.mul(&ExactMatrix::zeros(Q, 3, 1)).is_err());
    }

    #[test]
    fn zeros_are_dropped() {
        let a = ExactMatrix::from_triplets(
            Q,
            2,
            2,
            [
                (0, 0, Q.from_i64(1)),
                (0, 0, Q.from_i64(-1)),
                (1, 1, Q.from_i64(3)),
            ],
        );
        assert_eq!(a.nnz(), 1);
        let f2 = CoefficientDomain::PrimeField(2);
        let b = ExactMatrix::from_rows(f2, &[vec![2, 3]]).unwrap();
        assert_eq!(b.nnz(), 1);
    }

    #[test]
    fn column_selection() {
        let a = ExactMatrix::from_rows(Q, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let s = a.select_columns(&[2, 0]);
        assert_eq!(
            s,
            ExactMatrix::from_rows(Q, &[vec![3, 1], vec![6, 4]]).unwrap()
        );
    }
}
