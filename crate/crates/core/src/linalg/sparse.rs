//! Sparse elimination for the large cochain matrices.
//!
//! Matrices are first split into connected blocks of their row/column
//! incidence graph. Inside a block, unit pivots are eliminated in place
//! (each contributes one invariant factor equal to 1); whatever survives
//! without a unit entry is handed to the dense Smith reduction.

use std::collections::BTreeSet;

use super::dense::{smith, Dense, Track};
use super::ring::Ring;
use super::ExactMatrix;

/// Sparse rows as `(column, entry)` lists.
pub(crate) type SparseRows<E> = Vec<Vec<(usize, E)>>;

/// A connected block: sorted global row and column indices.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Connected blocks of the nonzero pattern, ordered by first column.
/// Zero rows and zero columns belong to no block.
pub(crate) fn blocks(m: &ExactMatrix) -> Vec<Block> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut parent: Vec<usize> = (0..nr + nc).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (r, row) in m.sparse_rows().iter().enumerate() {
        for (c, _) in row {
            let a = find(&mut parent, r);
            let b = find(&mut parent, nr + c);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Block> = Default::default();
    for c in 0..nc {
        let root = find(&mut parent, nr + c);
        by_root
            .entry(root)
            .or_insert_with(|| Block {
                rows: Vec::new(),
                cols: Vec::new(),
            })
            .cols
            .push(c);
    }
    for r in 0..nr {
        let root = find(&mut parent, r);
        if let Some(b) = by_root.get_mut(&root) {
            b.rows.push(r);
        }
    }
    let mut out: Vec<Block> = by_root
        .into_values()
        .filter(|b| !b.rows.is_empty() && !b.cols.is_empty())
        .collect();
    out.sort_by_key(|b| b.cols[0]);
    out
}

/// Restricts `m` to a block, converted into the working ring.
pub(crate) fn block_rows<R: Ring>(
    ring: &R,
    m: &ExactMatrix,
    block: &Block,
) -> Vec<Vec<(usize, R::Elem)>> {
    let mut local = vec![usize::MAX; m.cols()];
    for (i, &c) in block.cols.iter().enumerate() {
        local[c] = i;
    }
    block
        .rows
        .iter()
        .map(|&r| {
            m.row(r)
                .iter()
                .map(|(c, v)| (local[*c], ring.embed(v)))
                .collect()
        })
        .collect()
}

pub(crate) fn block_dense<R: Ring>(ring: &R, m: &ExactMatrix, block: &Block) -> Dense<R::Elem> {
    let rows = block_rows(ring, m, block);
    let mut d = Dense::filled(block.rows.len(), block.cols.len(), ring.zero());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row {
            d.set(i, j, v);
        }
    }
    d
}

/// `a - f * b` for sorted sparse rows.
fn axpy<R: Ring>(
    ring: &R,
    a: &[(usize, R::Elem)],
    f: &R::Elem,
    b: &[(usize, R::Elem)],
) -> Vec<(usize, R::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, ring.neg(&ring.mul(f, &b[j].1))));
            j += 1;
        } else {
            let v = ring.sub(&a[i].1, &ring.mul(f, &b[j].1));
            if !ring.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Eliminates unit pivots. Returns the number eliminated and the rows that
/// remain (nonempty, with no unit entry reachable by this pass).
pub(crate) fn unit_reduce<R: Ring>(
    ring: &R,
    mut rows: Vec<Vec<(usize, R::Elem)>>,
    ncols: usize,
) -> (usize, SparseRows<R::Elem>) {
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].insert(r);
        }
    }
    let mut active = vec![true; rows.len()];
    let mut pending: Vec<usize> = (0..rows.len()).collect();
    let mut pivots = 0;
    loop {
        pending.retain(|&r| active[r] && !rows[r].is_empty());
        pending.sort_by_key(|&r| (rows[r].len(), r));
        let mut deferred = Vec::new();
        let mut progressed = false;
        for &p in &pending {
            if !active[p] || rows[p].is_empty() {
                continue;
            }
            let pivot = rows[p]
                .iter()
                .filter(|(_, v)| ring.is_unit(v))
                .min_by_key(|(c, _)| (col_rows[*c].len(), *c))
                .cloned();
            let Some((pc, pv)) = pivot else {
                deferred.push(p);
                continue;
            };
            let inv = ring.unit_inv(&pv);
            let prow = std::mem::take(&mut rows[p]);
            active[p] = false;
            for (c, _) in &prow {
                col_rows[*c].remove(&p);
            }
            let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
            for r in targets {
                let old = std::mem::take(&mut rows[r]);
                let a = old
                    .iter()
                    .find(|(c, _)| *c == pc)
                    .map(|(_, v)| v.clone())
                    .expect("column index out of sync");
                let f = ring.mul(&a, &inv);
                let new = axpy(ring, &old, &f, &prow);
                for (c, _) in &old {
                    col_rows[*c].remove(&r);
                }
                for (c, _) in &new {
                    col_rows[*c].insert(r);
                }
                rows[r] = new;
            }
            pivots += 1;
            progressed = true;
        }
        pending = deferred;
        if !progressed || pending.is_empty() {
            break;
        }
    }
    let mut rest = Vec::new();
    for r in pending {
        if active[r] && !rows[r].is_empty() {
            rest.push(std::mem::take(&mut rows[r]));
        }
    }
    (pivots, rest)
}

/// Nonzero invariant factors (in no particular order) of `m` in the
/// working ring. Over a field these are all units and only their count
/// matters.
pub(crate) fn nonzero_invariants<R: Ring>(ring: &R, m: &ExactMatrix) -> Vec<R::Elem> {
    let mut out = Vec::new();
    for block in blocks(m) {
        let rows = block_rows(ring, m, &block);
        let (units, rest) = unit_reduce(ring, rows, block.cols.len());
        out.extend(std::iter::repeat_n(ring.one(), units));
        if rest.is_empty() {
            continue;
        }
        let mut used: Vec<usize> = rest
            .iter()
            .flat_map(|r| r.iter().map(|(c, _)| *c))
            .collect();
        used.sort_unstable();
        used.dedup();
        let mut local = vec![usize::MAX; block.cols.len()];
        for (i, &c) in used.iter().enumerate() {
            local[c] = i;
        }
        let mut d = Dense::filled(rest.len(), used.len(), ring.zero());
        for (i, row) in rest.into_iter().enumerate() {
            for (c, v) in row {
                d.set(i, local[c], v);
            }
        }
        out.extend(smith(ring, d, Track::None).diag);
    }
    out
}
