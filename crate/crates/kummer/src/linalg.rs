//! Dense row-reduction over any [`Scalar`] field.
//!
//! The geometry here keeps asking the same small questions: the rank of a
//! stack of linear forms, the kernel that cuts out a line in `P^5`, whether a
//! quadric lies in the span of three others.  One echelon-form routine
//! answers all of them, generically: pivots are chosen by [`Scalar::pivot_size`],
//! so the same code is exact over `F_p` (pivot sizes 0 or 1) and numerically
//! sensible over `Complex64` (largest modulus wins, entries below a relative
//! threshold count as zero).

use crate::field::Scalar;

/// Dense matrix in row-major order.
#[derive(Clone, Debug)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: T) {
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

    /// Reduced row echelon form in place.  Entries whose pivot size falls
    /// below `zero_tol` times the largest pivot size of the original matrix
    /// are treated as zero.  Returns the pivot columns in order.
    pub fn rref(&mut self, zero_tol: f64) -> Vec<usize> {
        let scale = self
            .data
            .iter()
            .map(|v| v.pivot_size())
            .fold(0.0f64, f64::max);
        if scale == 0.0 {
            return Vec::new();
        }
        let threshold = zero_tol * scale;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // Partial pivoting: the largest entry in this column at or below `row`.
            let (best, best_size) = (row..self.rows)
                .map(|r| (r, self.at(r, col).pivot_size()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("row range is nonempty");
            if best_size <= threshold {
                continue;
            }
            self.swap_rows(row, best);
            let inv = self
                .at(row, col)
                .inv()
                .expect("pivot above threshold is invertible");
            for c in col..self.cols {
                let v = self.at(row, c) * inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let f = self.at(r, col);
                for c in col..self.cols {
                    let v = self.at(r, c) - f * self.at(row, c);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank with the given relative zero threshold.
    pub fn rank(&self, zero_tol: f64) -> usize {
        self.clone().rref(zero_tol).len()
    }

    /// Basis of the right kernel.  Each basis vector sets one free variable
    /// to one and solves for the pivot variables.
    pub fn kernel_basis(&self, zero_tol: f64) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref(zero_tol);
        let one = self.data[0].one_like();
        let zero = self.data[0].zero_like();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![zero; self.cols];
                v[fc] = one;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.at(r, fc);
                }
                v
            })
            .collect()
    }

    /// Solve `A x = b` with free variables set to zero, together with the
    /// pivot-size of the residual `A x - b`.  Exact fields report residual
    /// 0.0 exactly when consistent.
    pub fn solve(&self, b: &[T], zero_tol: f64) -> (Vec<T>, f64) {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat {
            rows: self.rows,
            cols: self.cols + 1,
            data: Vec::with_capacity(self.rows * (self.cols + 1)),
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data.push(self.at(r, c));
            }
            aug.data.push(b[r]);
        }
        let pivots = aug.rref(zero_tol);
        let zero = b[0].zero_like();
        let mut x = vec![zero; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            if pc < self.cols {
                x[pc] = aug.at(r, self.cols);
            }
        }
        let residual = (0..self.rows)
            .map(|r| {
                let mut s = zero;
                for c in 0..self.cols {
                    s = s + self.at(r, c) * x[c];
                }
                (s - b[r]).pivot_size()
            })
            .fold(0.0f64, f64::max);
        (x, residual)
    }
}

/// If `u` and `v` are proportional (relative to `zero_tol` times their
/// largest entries), the scalar `s` with `u = s v`; otherwise `None`.
pub fn proportionality<T: Scalar>(u: &[T], v: &[T], zero_tol: f64) -> Option<T> {
    assert_eq!(u.len(), v.len());
    let scale_u = u.iter().map(|x| x.pivot_size()).fold(0.0f64, f64::max);
    let scale_v = v.iter().map(|x| x.pivot_size()).fold(0.0f64, f64::max);
    if scale_v == 0.0 {
        return None;
    }
    let (k, _) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.pivot_size().total_cmp(&b.1.pivot_size()))?;
    let s = u[k] * v[k].inv()?;
    let tol = zero_tol * scale_u.max(scale_v * s.pivot_size()).max(1e-300);
    for i in 0..u.len() {
        if (u[i] - s * v[i]).pivot_size() > tol {
            return None;
        }
    }
    Some(s)
}

/// Relative deviation of `u` from the line spanned by `v`: the maximum entry
/// of `u - s v` over the maximum entry of `u`, with `s` fitted at the largest
/// entry of `v`.  Infinite when either vector vanishes.
pub fn projective_distance<T: Scalar>(u: &[T], v: &[T]) -> f64 {
    assert_eq!(u.len(), v.len());
    let scale_u = u.iter().map(|x| x.pivot_size()).fold(0.0f64, f64::max);
    let kv = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.pivot_size().total_cmp(&b.1.pivot_size()))
        .map(|(i, _)| i);
    let (Some(k), true) = (kv, scale_u > 0.0) else {
        return f64::INFINITY;
    };
    if v[k].pivot_size() == 0.0 {
        return f64::INFINITY;
    }
    let s = u[k] * v[k].inv().expect("largest entry of v is invertible");
    u.iter()
        .zip(v)
        .map(|(&ui, &vi)| (ui - s * vi).pivot_size() / scale_u)
        .fold(0.0f64, f64::max)
}
