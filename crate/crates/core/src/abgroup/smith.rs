//! Smith and Hermite normal forms over the integers.
//!
//! Pivoting follows the minimal-absolute-value rule: every step moves the
//! smallest nonzero entry of the active block to the pivot, reduces its row
//! and column by floor division, and repeats until the pivot divides the
//! whole remaining block.

use num_bigint::BigInt;

use super::matrix::{IntMatrix, Mat};
use super::scalar::{with_fast_path, Checked, Scalar};
use super::sparse::SparseIntMatrix;

/// `u * a * v` is `diag(d, 0, ...)` with `d[i] | d[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors, all positive, in divisibility order.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub shape: (usize, usize),
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// The full `rows x cols` diagonal matrix `u * a * v`.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.shape.0, self.shape.1, &self.d)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub right: bool,
}

pub(crate) struct SnfOut<T> {
    pub d: Vec<T>,
    pub u: Option<Mat<T>>,
    pub u_inv: Option<Mat<T>>,
    pub v: Option<Mat<T>>,
    pub v_inv: Option<Mat<T>>,
}

struct Work<T> {
    a: Mat<T>,
    u: Option<Mat<T>>,
    u_inv: Option<Mat<T>>,
    v: Option<Mat<T>>,
    v_inv: Option<Mat<T>>,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) -> Checked<()> {
        self.a.negate_row(i)?;
        if let Some(u) = &mut self.u {
            u.negate_row(i)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i)?;
        }
        Ok(())
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, q: &T, src: usize) -> Checked<()> {
        self.a.row_axpy(dst, q, src)?;
        if let Some(u) = &mut self.u {
            u.row_axpy(dst, q, src)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.col_axpy(src, &q.negated()?, dst)?;
        }
        Ok(())
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, q: &T, src: usize) -> Checked<()> {
        self.a.col_axpy(dst, q, src)?;
        if let Some(v) = &mut self.v {
            v.col_axpy(dst, q, src)?;
        }
        if let Some(vi) = &mut self.v_inv {
            vi.row_axpy(src, &q.negated()?, dst)?;
        }
        Ok(())
    }
}

fn min_abs_in<T: Scalar>(a: &Mat<T>, rows: impl Iterator<Item = usize> + Clone, cols: std::ops::Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = a.at(i, j);
            if x.is_nil() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs_cmp(a.at(bi, bj)).is_lt()) {
                best = Some((i, j));
                if x.is_unit() {
                    return best;
                }
            }
        }
    }
    best
}

pub(crate) fn snf_kernel<T: Scalar>(a: Mat<T>, track: Track) -> Checked<SnfOut<T>> {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        a,
        u: track.left.then(|| Mat::identity(m)),
        u_inv: track.left.then(|| Mat::identity(m)),
        v: track.right.then(|| Mat::identity(n)),
        v_inv: track.right.then(|| Mat::identity(n)),
    };
    let mut d = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_in(&w.a, t..m, t..n) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            if w.a.at(t, t).is_neg() {
                w.negate_row(t)?;
            }
            let p = w.a.at(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if !w.a.at(i, t).is_nil() {
                    let q = w.a.at(i, t).floor_div(&p)?;
                    w.row_axpy(i, &q, t)?;
                    clean &= w.a.at(i, t).is_nil();
                }
            }
            for j in t + 1..n {
                if !w.a.at(t, j).is_nil() {
                    let q = w.a.at(t, j).floor_div(&p)?;
                    w.col_axpy(j, &q, t)?;
                    clean &= w.a.at(t, j).is_nil();
                }
            }
            if !clean {
                // a smaller remainder now sits in row or column t
                let col_best = min_abs_in(&w.a, t..m, t..t + 1);
                let row_best = min_abs_in(&w.a, std::iter::once(t), t..n);
                let (bi, bj) = match (col_best, row_best) {
                    (Some(c), Some(r)) => {
                        if w.a.at(c.0, c.1).abs_cmp(w.a.at(r.0, r.1)).is_le() {
                            c
                        } else {
                            r
                        }
                    }
                    (Some(c), None) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!("pivot vanished"),
                };
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            if p.is_unit() {
                break;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a.at(i, j).is_multiple(&p)));
            match offender {
                Some(i) => {
                    let minus_one = T::unit().negated()?;
                    w.row_axpy(t, &minus_one, i)?;
                }
                None => break,
            }
        }
        d.push(w.a.at(t, t).clone());
    }
    Ok(SnfOut {
        d,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    })
}

pub(crate) fn snf_generic(a: &IntMatrix, track: Track) -> SnfOut<BigInt> {
    fn lift(o: SnfOut<i64>) -> SnfOut<BigInt> {
        let up = |m: Option<Mat<i64>>| {
            m.map(|m| Mat {
                rows: m.rows,
                cols: m.cols,
                data: m.data.iter().map(Scalar::to_big).collect(),
            })
        };
        SnfOut {
            d: o.d.iter().map(Scalar::to_big).collect(),
            u: up(o.u),
            u_inv: up(o.u_inv),
            v: up(o.v),
            v_inv: up(o.v_inv),
        }
    }
    with_fast_path(
        a.fits_i64(),
        || snf_kernel(a.to_mat::<i64>().expect("checked fits"), track).map(lift),
        || snf_kernel(a.to_mat::<BigInt>().expect("BigInt always fits"), track),
    )
}

/// Smith normal form with both unimodular transforms and their inverses.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let out = snf_generic(a, Track { left: true, right: true });
    let mat = |m: Option<Mat<BigInt>>| m.expect("tracked").to_int();
    SmithForm {
        d: out.d,
        u: mat(out.u),
        v: mat(out.v),
        u_inv: mat(out.u_inv),
        v_inv: mat(out.v_inv),
        shape: a.shape(),
    }
}

/// Nonzero invariant factors only. Large sparse inputs go through the
/// sparse eliminator.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    if a.rows() * a.cols() > 40_000 {
        return SparseIntMatrix::from_dense(a).invariant_factors();
    }
    snf_generic(a, Track::default()).d
}

pub fn rank(a: &IntMatrix) -> usize {
    invariant_factors(a).len()
}

fn hnf_kernel<T: Scalar>(mut a: Mat<T>) -> Checked<Mat<T>> {
    let (m, n) = (a.rows, a.cols);
    let mut c = 0;
    for i in 0..m {
        if c == n {
            break;
        }
        while let Some((_, k)) = min_abs_in(&a, std::iter::once(i), c..n) {
            a.swap_cols(c, k);
            let mut more = false;
            for j in c + 1..n {
                if !a.at(i, j).is_nil() {
                    let q = a.at(i, j).floor_div(a.at(i, c))?;
                    a.col_axpy(j, &q, c)?;
                    more |= !a.at(i, j).is_nil();
                }
            }
            if !more {
                break;
            }
        }
        if a.at(i, c).is_nil() {
            continue;
        }
        if a.at(i, c).is_neg() {
            a.negate_col(c)?;
        }
        for j in 0..c {
            let q = a.at(i, j).floor_div(a.at(i, c))?;
            a.col_axpy(j, &q, c)?;
        }
        c += 1;
    }
    Ok(a)
}

/// Column-style Hermite normal form: `a * v` for some unimodular `v`, lower
/// echelon with positive pivots, entries left of each pivot reduced into
/// `[0, pivot)`, zero columns last. The column lattice is unchanged.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    with_fast_path(
        a.fits_i64(),
        || hnf_kernel(a.to_mat::<i64>().expect("checked fits")).map(|m| m.to_int()),
        || hnf_kernel(a.to_mat::<BigInt>().expect("BigInt always fits")).map(|m| m.to_int()),
    )
}

/// Saturated basis of `{x : a x = 0}` together with the coordinate map.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    /// `cols(a) x k`, columns form a basis of the kernel.
    pub basis: IntMatrix,
    /// `k x cols(a)`; `coords * x` recovers the coefficients of a kernel
    /// vector `x` in `basis`.
    pub coords: IntMatrix,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

pub fn kernel(a: &IntMatrix) -> KernelBasis {
    let f = snf(a);
    let r = f.rank();
    let n = a.cols();
    KernelBasis {
        basis: f.v.select_cols(r..n),
        coords: f.v_inv.select_rows(r..n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntMatrix) -> SmithForm {
        let f = snf(a);
        assert_eq!(f.u.mul(a).mul(&f.v), f.diagonal_matrix());
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(a.cols()));
        for w in f.d.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        f
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(check(&IntMatrix::identity(2)).d, big(&[1, 1]));
        assert!(check(&IntMatrix::zeros(3, 2)).d.is_empty());
        assert!(check(&IntMatrix::zeros(0, 3)).d.is_empty());
    }

    #[test]
    fn two_by_two_example() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let f = check(&a);
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        assert_eq!(f.d, big(&[2, 4]));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let f = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(f.d, big(&[1, 6]));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big_entry = i64::MAX / 3;
        let a = IntMatrix::from_rows(&[[big_entry, 7], [5, big_entry]]);
        let f = check(&a);
        assert_eq!(f.d[0], BigInt::one());
        assert_eq!(f.d[1], a.det().magnitude().clone().into());
    }

    #[test]
    fn hnf_identity_zero() {
        assert_eq!(hnf(&IntMatrix::identity(3)), IntMatrix::identity(3));
        assert_eq!(hnf(&IntMatrix::zeros(2, 2)), IntMatrix::zeros(2, 2));
    }

    fn in_lattice(basis: &IntMatrix, v: &[i64], bound: i64) -> bool {
        // exhaustive small-coefficient search
        let k = basis.cols();
        let mut coeffs = vec![-bound; k];
        loop {
            let combo: Vec<BigInt> = (0..basis.rows())
                .map(|i| (0..k).map(|j| &basis[(i, j)] * coeffs[j]).sum())
                .collect();
            if combo == big(v) {
                return true;
            }
            let mut p = 0;
            loop {
                if p == k {
                    return false;
                }
                coeffs[p] += 1;
                if coeffs[p] <= bound {
                    break;
                }
                coeffs[p] = -bound;
                p += 1;
            }
        }
    }

    #[test]
    fn hnf_preserves_column_span() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]);
        let h = hnf(&a);
        assert_eq!(h, IntMatrix::from_rows(&[[2, 0], [2, 4]]));
        for j in 0..2 {
            let hc: Vec<i64> = h.col(j).iter().map(|x| x.try_into().unwrap()).collect();
            let ac: Vec<i64> = a.col(j).iter().map(|x| x.try_into().unwrap()).collect();
            assert!(in_lattice(&a, &hc, 6));
            assert!(in_lattice(&h, &ac, 6));
        }
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let a = IntMatrix::from_rows(&[[1, 2, 3]]);
        let k = kernel(&a);
        assert_eq!(k.dim(), 2);
        assert!(a.mul(&k.basis).is_zero());
        assert_eq!(k.coords.mul(&k.basis), IntMatrix::identity(2));
    }
}
