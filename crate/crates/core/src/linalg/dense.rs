//! Dense Smith reduction over a Euclidean working ring.
//!
//! Over a field this is rank normal form; over the integers the diagonal is
//! the invariant-factor chain. Pivots are chosen deterministically: the
//! first unit in row-major order of the active block, otherwise the first
//! entry of least Euclidean size.

use super::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Dense<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Dense<E> {
    pub fn filled(rows: usize, cols: usize, fill: E) -> Self {
        Dense {
            rows,
            cols,
            data: vec![fill; rows * cols],
        }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let mut d = Dense::filled(n, n, ring.zero());
        for i in 0..n {
            d.data[i * n + i] = ring.one();
        }
        d
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

/// `[row_i; row_j] <- [[s, t], [u, v]] [row_i; row_j]`.
fn mix_rows<R: Ring>(
    ring: &R,
    m: &mut Dense<R::Elem>,
    i: usize,
    j: usize,
    [s, t, u, v]: &[R::Elem; 4],
) {
    for c in 0..m.cols {
        let x = m.at(i, c).clone();
        let y = m.at(j, c).clone();
        if ring.is_zero(&x) && ring.is_zero(&y) {
            continue;
        }
        m.set(i, c, ring.add(&ring.mul(s, &x), &ring.mul(t, &y)));
        m.set(j, c, ring.add(&ring.mul(u, &x), &ring.mul(v, &y)));
    }
}

/// `col_i <- s col_i + t col_j`, `col_j <- u col_i + v col_j`.
fn mix_cols<R: Ring>(
    ring: &R,
    m: &mut Dense<R::Elem>,
    i: usize,
    j: usize,
    [s, t, u, v]: &[R::Elem; 4],
) {
    for r in 0..m.rows {
        let x = m.at(r, i).clone();
        let y = m.at(r, j).clone();
        if ring.is_zero(&x) && ring.is_zero(&y) {
            continue;
        }
        m.set(r, i, ring.add(&ring.mul(s, &x), &ring.mul(t, &y)));
        m.set(r, j, ring.add(&ring.mul(u, &x), &ring.mul(v, &y)));
    }
}

/// Unimodular transforms with `left * a * right = diag`; each pair is
/// present only when requested.
#[derive(Clone, Debug)]
pub(crate) struct Transforms<E> {
    pub left: Option<(Dense<E>, Dense<E>)>,
    pub right: Option<(Dense<E>, Dense<E>)>,
}

/// Which sides of the reduction to record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Track {
    None,
    Right,
    Both,
}

#[derive(Clone, Debug)]
pub(crate) struct SmithForm<E> {
    /// Nonzero diagonal entries, in order; its length is the rank.
    pub diag: Vec<E>,
    pub transforms: Transforms<E>,
}

struct Reducer<'a, R: Ring> {
    ring: &'a R,
    a: Dense<R::Elem>,
    tr: Transforms<R::Elem>,
}

impl<R: Ring> Reducer<'_, R> {
    fn row_op(&mut self, i: usize, j: usize, op: [R::Elem; 4]) {
        let ring = self.ring;
        mix_rows(ring, &mut self.a, i, j, &op);
        if let Some((left, left_inv)) = &mut self.tr.left {
            mix_rows(ring, left, i, j, &op);
            let [s, t, u, v] = op;
            // Right-multiply left_inv by the inverse [[v, -t], [-u, s]].
            let inv = [v, ring.neg(&u), ring.neg(&t), s];
            mix_cols(ring, left_inv, i, j, &inv);
        }
    }

    fn col_op(&mut self, i: usize, j: usize, op: [R::Elem; 4]) {
        let ring = self.ring;
        mix_cols(ring, &mut self.a, i, j, &op);
        if let Some((right, right_inv)) = &mut self.tr.right {
            mix_cols(ring, right, i, j, &op);
            let [s, t, u, v] = op;
            let inv = [v, ring.neg(&u), ring.neg(&t), s];
            mix_rows(ring, right_inv, i, j, &inv);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some((left, left_inv)) = &mut self.tr.left {
            left.swap_rows(i, j);
            left_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some((right, right_inv)) = &mut self.tr.right {
            right.swap_cols(i, j);
            right_inv.swap_rows(i, j);
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R::Elem) {
        let ring = self.ring;
        let one = ring.one();
        if *unit == one {
            return;
        }
        let inv = ring.unit_inv(unit);
        for c in 0..self.a.cols {
            let x = ring.mul(unit, self.a.at(i, c));
            self.a.set(i, c, x);
        }
        if let Some((left, left_inv)) = &mut self.tr.left {
            for c in 0..left.cols {
                let x = ring.mul(unit, left.at(i, c));
                left.set(i, c, x);
            }
            for r in 0..left_inv.rows {
                let x = ring.mul(left_inv.at(r, i), &inv);
                left_inv.set(r, i, x);
            }
        }
    }

    fn choose_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let ring = self.ring;
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.at(i, j);
                if ring.is_zero(x) {
                    continue;
                }
                if ring.is_unit(x) {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if ring.size(self.a.at(bi, bj)) <= ring.size(x) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row and column `t` around the pivot; returns once both are
    /// zero off the diagonal.
    fn clear_cross(&mut self, t: usize) {
        let ring = self.ring;
        loop {
            let mut settled = true;
            for i in t + 1..self.a.rows {
                let x = self.a.at(i, t).clone();
                if ring.is_zero(&x) {
                    continue;
                }
                let p = self.a.at(t, t).clone();
                if ring.divides(&p, &x) {
                    let q = ring.exact_div(&x, &p);
                    self.row_op(t, i, [ring.one(), ring.zero(), ring.neg(&q), ring.one()]);
                } else {
                    let (_, s, tt, u, v) = ring.gcd_ext(&p, &x);
                    self.row_op(t, i, [s, tt, u, v]);
                    settled = false;
                }
            }
            for j in t + 1..self.a.cols {
                let x = self.a.at(t, j).clone();
                if ring.is_zero(&x) {
                    continue;
                }
                let p = self.a.at(t, t).clone();
                if ring.divides(&p, &x) {
                    let q = ring.exact_div(&x, &p);
                    self.col_op(t, j, [ring.one(), ring.zero(), ring.neg(&q), ring.one()]);
                } else {
                    let (_, s, tt, u, v) = ring.gcd_ext(&p, &x);
                    self.col_op(t, j, [s, tt, u, v]);
                    settled = false;
                }
            }
            if settled {
                let column_clear = (t + 1..self.a.rows).all(|i| ring.is_zero(self.a.at(i, t)));
                if column_clear {
                    return;
                }
            }
        }
    }

    fn run(mut self) -> SmithForm<R::Elem> {
        let ring = self.ring;
        let bound = self.a.rows.min(self.a.cols);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < bound {
            let Some((pi, pj)) = self.choose_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_cross(t);
                let p = self.a.at(t, t).clone();
                let offender = (t + 1..self.a.rows)
                    .find(|&i| (t + 1..self.a.cols).any(|j| !ring.divides(&p, self.a.at(i, j))));
                match offender {
                    Some(i) => self.row_op(t, i, [ring.one(), ring.one(), ring.zero(), ring.one()]),
                    None => break,
                }
            }
            let unit = ring.normalizing_unit(self.a.at(t, t));
            self.scale_row(t, &unit);
            diag.push(self.a.at(t, t).clone());
            t += 1;
        }
        SmithForm {
            diag,
            transforms: self.tr,
        }
    }
}

pub(crate) fn smith<R: Ring>(ring: &R, a: Dense<R::Elem>, track: Track) -> SmithForm<R::Elem> {
    let pair = |n| (Dense::identity(ring, n), Dense::identity(ring, n));
    let tr = Transforms {
        left: (track == Track::Both).then(|| pair(a.rows)),
        right: (track != Track::None).then(|| pair(a.cols)),
    };
    Reducer { ring, a, tr }.run()
}

pub(crate) fn dense_mul<R: Ring>(
    ring: &R,
    a: &Dense<R::Elem>,
    b: &Dense<R::Elem>,
) -> Dense<R::Elem> {
    assert_eq!(a.cols, b.rows);
    let mut out = Dense::filled(a.rows, b.cols, ring.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.at(i, k);
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.at(k, j);
                if !ring.is_zero(y) {
                    let acc = ring.add(out.at(i, j), &ring.mul(x, y));
                    out.set(i, j, acc);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ring::{IntRing, PrimeField};
    use num_bigint::BigInt;

    fn int_dense(rows: &[&[i64]]) -> Dense<BigInt> {
        Dense {
            rows: rows.len(),
            cols: rows[0].len(),
            data: rows
                .iter()
                .flat_map(|r| r.iter().map(|&v| BigInt::from(v)))
                .collect(),
        }
    }

    #[test]
    fn diag_2_3_has_factors_1_6() {
        let f = smith(&IntRing, int_dense(&[&[2, 0], &[0, 3]]), Track::None);
        assert_eq!(f.diag, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn transforms_reconstruct() {
        let a = int_dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let f = smith(&IntRing, a.clone(), Track::Both);
        assert_eq!(
            f.diag,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let (left, left_inv) = f.transforms.left.unwrap();
        let (right, right_inv) = f.transforms.right.unwrap();
        let d = dense_mul(&IntRing, &dense_mul(&IntRing, &left, &a), &right);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j {
                    f.diag[i].clone()
                } else {
                    BigInt::from(0)
                };
                assert_eq!(*d.at(i, j), want);
            }
        }
        let id = Dense::identity(&IntRing, 3);
        assert_eq!(dense_mul(&IntRing, &left, &left_inv), id);
        assert_eq!(dense_mul(&IntRing, &right_inv, &right), id);
    }

    #[test]
    fn field_rank() {
        let f2 = PrimeField { p: 2 };
        let a = Dense {
            rows: 2,
            cols: 2,
            data: vec![1u64, 1, 1, 1],
        };
        assert_eq!(smith(&f2, a, Track::None).diag.len(), 1);
    }
}
