//! Column-sparse integer matrices and a unit-pivot eliminator for their
//! invariant factors.
//!
//! Boundary matrices of bar complexes have a handful of `±1` entries per
//! column and tens of thousands of columns. Elimination removes unit pivots
//! in Markowitz order (shortest column first, then the shortest row inside
//! it); whatever survives is small enough for the dense Smith kernel.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, Mat};
use super::scalar::{with_fast_path, Checked, Scalar};
use super::smith::{snf_kernel, Track};

pub type SparseColumn = Vec<(usize, BigInt)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    /// Per column, `(row, value)` pairs sorted by row with no zero values.
    columns: Vec<SparseColumn>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Columns may list rows in any order and repeat them; repeated entries
    /// are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|c| normalize(rows, c.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect()))
            .collect();
        SparseIntMatrix { rows, cols, columns }
    }

    pub fn from_big_columns(rows: usize, columns: Vec<SparseColumn>) -> Self {
        let cols = columns.len();
        let columns = columns.into_iter().map(|c| normalize(rows, c)).collect();
        SparseIntMatrix { rows, cols, columns }
    }

    pub fn from_dense(a: &IntMatrix) -> Self {
        let columns = (0..a.cols())
            .map(|j| {
                (0..a.rows())
                    .filter(|&i| !a[(i, j)].is_zero())
                    .map(|i| (i, a[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseIntMatrix {
            rows: a.rows(),
            cols: a.cols(),
            columns,
        }
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseColumn] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j]
            .binary_search_by_key(&i, |e| e.0)
            .map(|k| self.columns[j][k].1.clone())
            .unwrap_or_default()
    }

    /// `self * v` for a dense vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in c {
                out[*i] += a * &v[j];
            }
        }
        out
    }

    pub fn mul(&self, rhs: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in sparse product");
        let columns = rhs
            .columns
            .iter()
            .map(|c| {
                let mut acc: Vec<(usize, BigInt)> = Vec::new();
                for (k, b) in c {
                    for (i, a) in &self.columns[*k] {
                        acc.push((*i, a * b));
                    }
                }
                normalize(self.rows, acc)
            })
            .collect();
        SparseIntMatrix {
            rows: self.rows,
            cols: rhs.cols,
            columns,
        }
    }

    /// `self * m` for a dense right factor.
    pub fn mul_dense(&self, m: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, m.rows());
        let mut out = IntMatrix::zeros(self.rows, m.cols());
        for (k, c) in self.columns.iter().enumerate() {
            for j in 0..m.cols() {
                let b = &m[(k, j)];
                if b.is_zero() {
                    continue;
                }
                for (i, a) in c {
                    out[(*i, j)] += a * b;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut columns: Vec<SparseColumn> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                columns[*i].push((j, v.clone()));
            }
        }
        SparseIntMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    /// Nonzero invariant factors in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let small: Option<Vec<Vec<(u32, i64)>>> = self
            .columns
            .iter()
            .map(|c| c.iter().map(|(i, v)| i64::from_big(v).map(|v| (*i as u32, v))).collect())
            .collect();
        let fits = small.is_some();
        let (units, rest) = with_fast_path(
            fits,
            || eliminate(self.rows, small.clone().expect("checked fits")).map(|(u, r)| (u, r.iter().map(Scalar::to_big).collect::<Vec<_>>())),
            || {
                let cols = self
                    .columns
                    .iter()
                    .map(|c| c.iter().map(|(i, v)| (*i as u32, v.clone())).collect())
                    .collect();
                eliminate(self.rows, cols)
            },
        );
        let mut d = vec![BigInt::one(); units];
        d.extend(rest);
        d
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn normalize(rows: usize, mut c: Vec<(usize, BigInt)>) -> SparseColumn {
    c.sort_by_key(|e| e.0);
    let mut out: SparseColumn = Vec::with_capacity(c.len());
    for (i, v) in c {
        assert!(i < rows, "row index {i} out of range for {rows} rows");
        match out.last_mut() {
            Some((li, lv)) if *li == i => *lv += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `dst - c * src` on sorted sparse columns, skipping `skip_row`.
fn axpy<T: Scalar>(dst: &[(u32, T)], c: &T, src: &[(u32, T)], skip_row: u32, fresh: &mut Vec<u32>) -> Checked<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut a, mut b) = (0, 0);
    while a < dst.len() || b < src.len() {
        let ra = dst.get(a).map_or(u32::MAX, |e| e.0);
        let rb = src.get(b).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(dst[a].clone());
            a += 1;
        } else if rb < ra {
            if rb != skip_row {
                let v = c.mul(&src[b].1)?.negated()?;
                out.push((rb, v));
                fresh.push(rb);
            }
            b += 1;
        } else {
            if ra != skip_row {
                let v = dst[a].1.sub_mul(c, &src[b].1)?;
                if !v.is_nil() {
                    out.push((ra, v));
                }
            }
            a += 1;
            b += 1;
        }
    }
    Ok(out)
}

/// Returns the number of unit pivots removed and the nonzero invariant
/// factors of whatever block survives.
fn eliminate<T: Scalar>(rows: usize, mut cols: Vec<Vec<(u32, T)>>) -> Checked<(usize, Vec<T>)> {
    let ncols = cols.len();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        for (i, _) in c {
            row_cols[*i as usize].push(j as u32);
        }
    }
    let mut alive = vec![true; ncols];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = cols
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(j, c)| Reverse((c.len(), j as u32)))
        .collect();
    let mut units = 0usize;
    let mut fresh = Vec::new();
    let mut seen = vec![u32::MAX; ncols];

    while let Some(Reverse((len, j))) = heap.pop() {
        let ju = j as usize;
        if !alive[ju] || cols[ju].len() != len || len == 0 {
            continue;
        }
        let pivot = cols[ju]
            .iter()
            .filter(|(_, v)| v.is_unit())
            .min_by_key(|(r, _)| row_cols[*r as usize].len())
            .map(|(r, v)| (*r, v.clone()));
        let Some((r, s)) = pivot else {
            continue;
        };
        let pivot_col = std::mem::take(&mut cols[ju]);
        let touching = std::mem::take(&mut row_cols[r as usize]);
        for k in touching {
            let ku = k as usize;
            if k == j || !alive[ku] || seen[ku] == r {
                continue;
            }
            seen[ku] = r;
            let Ok(pos) = cols[ku].binary_search_by_key(&r, |e| e.0) else {
                continue;
            };
            // s = ±1, so s is its own inverse
            let c = cols[ku][pos].1.mul(&s)?;
            fresh.clear();
            let updated = axpy(&cols[ku], &c, &pivot_col, r, &mut fresh)?;
            cols[ku] = updated;
            for &fr in &fresh {
                row_cols[fr as usize].push(k);
            }
            if !cols[ku].is_empty() {
                heap.push(Reverse((cols[ku].len(), k)));
            }
        }
        alive[ju] = false;
        units += 1;
    }

    let survivors: Vec<usize> = (0..ncols).filter(|&j| alive[j] && !cols[j].is_empty()).collect();
    if survivors.is_empty() {
        return Ok((units, Vec::new()));
    }
    let mut row_ids: Vec<u32> = survivors.iter().flat_map(|&j| cols[j].iter().map(|e| e.0)).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    let mut dense = Mat {
        rows: row_ids.len(),
        cols: survivors.len(),
        data: vec![T::nil(); row_ids.len() * survivors.len()],
    };
    for (jj, &j) in survivors.iter().enumerate() {
        for (r, v) in &cols[j] {
            let ii = row_ids.binary_search(r).expect("row collected");
            dense.set(ii, jj, v.clone());
        }
    }
    let out = snf_kernel(dense, Track::default())?;
    Ok((units, out.d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::smith::snf;
    use rand::{Rng, SeedableRng};

    #[test]
    fn duplicate_entries_are_summed() {
        let m = SparseIntMatrix::from_columns(3, vec![vec![(2, 1), (0, 4), (2, -1)], vec![]]);
        assert_eq!(m.column(0), &[(0, BigInt::from(4))]);
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn agrees_with_dense_snf_on_random_matrices() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let (m, n) = (rng.gen_range(0..7), rng.gen_range(0..9));
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-3..=3) } else { 0 }).collect())
                .collect();
            let dense = IntMatrix::from_rows_with_cols(&rows, n);
            let sparse = SparseIntMatrix::from_dense(&dense);
            assert_eq!(sparse.to_dense(), dense);
            assert_eq!(sparse.invariant_factors(), snf(&dense).d, "{dense:?}");
        }
    }

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[[1, 2, 0], [0, -1, 3]]);
        let b = IntMatrix::from_rows(&[[2, 0], [1, 1], [0, 4]]);
        let (sa, sb) = (SparseIntMatrix::from_dense(&a), SparseIntMatrix::from_dense(&b));
        assert_eq!(sa.mul(&sb).to_dense(), a.mul(&b));
        assert_eq!(sa.mul_dense(&b), a.mul(&b));
        assert_eq!(sa.transpose().to_dense(), a.transpose());
    }
}
