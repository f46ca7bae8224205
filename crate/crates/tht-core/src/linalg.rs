//! Dense Householder-QR least squares for the small systems the solvers
//! assemble (interpolation Vandermonde matrices, weighted design matrices).
//! No normal equations are formed; the condition estimate is the ratio of
//! extreme `|R_ii|`, a standard cheap lower bound on `cond_2`.

use crate::math;
use alloc::vec::Vec;

/// Row-major dense matrix.
pub(crate) struct DenseMatrix {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            data: alloc::vec![0.0; rows * cols],
            rows,
            cols,
        }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

pub(crate) struct LeastSquares {
    pub solution: Vec<f64>,
    /// max |R_ii| / min |R_ii| over the pivoted diagonal; infinite when a
    /// diagonal entry vanishes or the system is short of rows.
    pub condition_estimate: f64,
    /// Columns (zero-based) whose diagonal entry fell below the deficiency
    /// threshold; empty for a numerically full-rank system.
    pub deficient_columns: Vec<usize>,
}

/// Relative threshold under which a diagonal entry counts as deficient.
const DEFICIENCY_RTOL: f64 = 1e-12;

/// Solves `min ||A x - b||_2` in place via Householder QR.
///
/// When `deficient_columns` is non-empty the returned solution has the
/// deficient modes pinned to zero and should be treated as unusable unless
/// the caller regularised the system.
pub(crate) fn solve_least_squares(a: &mut DenseMatrix, b: &mut [f64]) -> LeastSquares {
    let m = a.rows();
    let n = a.cols();
    debug_assert_eq!(b.len(), m);

    let k_max = m.min(n);
    for k in 0..k_max {
        // Householder vector for column k, rows k..m.
        let mut norm_sq = 0.0;
        for r in k..m {
            let v = a.at(r, k);
            norm_sq += v * v;
        }
        let norm = math::sqrt(norm_sq);
        if norm == 0.0 {
            continue;
        }
        let akk = a.at(k, k);
        let alpha = if akk >= 0.0 { -norm } else { norm };
        // v = x - alpha e_k, stored in place of the column.
        a.set(k, k, akk - alpha);
        let mut vtv = 0.0;
        for r in k..m {
            let v = a.at(r, k);
            vtv += v * v;
        }
        if vtv > 0.0 {
            for c in (k + 1)..n {
                let mut dot = 0.0;
                for r in k..m {
                    dot += a.at(r, k) * a.at(r, c);
                }
                let scale = 2.0 * dot / vtv;
                for r in k..m {
                    let v = a.at(r, c) - scale * a.at(r, k);
                    a.set(r, c, v);
                }
            }
            let mut dot = 0.0;
            for (r, br) in b.iter().enumerate().take(m).skip(k) {
                dot += a.at(r, k) * br;
            }
            let scale = 2.0 * dot / vtv;
            for (r, br) in b.iter_mut().enumerate().take(m).skip(k) {
                *br -= scale * a.at(r, k);
            }
        }
        a.set(k, k, alpha);
    }

    let mut diag_max = 0.0_f64;
    let mut diag_min = f64::INFINITY;
    for k in 0..k_max {
        let d = math::abs(a.at(k, k));
        diag_max = diag_max.max(d);
        diag_min = diag_min.min(d);
    }

    let mut deficient = Vec::new();
    for k in 0..n {
        if k >= m || math::abs(a.at(k, k)) <= DEFICIENCY_RTOL * diag_max {
            deficient.push(k);
        }
    }

    let condition_estimate = if n > m || diag_min == 0.0 {
        f64::INFINITY
    } else {
        diag_max / diag_min
    };

    // Back substitution on the upper triangle, skipping deficient columns.
    let mut x = alloc::vec![0.0; n];
    for k in (0..k_max).rev() {
        if deficient.contains(&k) {
            continue;
        }
        let mut acc = b[k];
        for (c, xc) in x.iter().enumerate().take(n).skip(k + 1) {
            acc -= a.at(k, c) * xc;
        }
        x[k] = acc / a.at(k, k);
    }

    LeastSquares {
        solution: x,
        condition_estimate,
        deficient_columns: deficient,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[f64]]) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(rows.len(), rows[0].len());
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn square_system() {
        let mut a = from_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let mut b = [5.0, 10.0];
        let out = solve_least_squares(&mut a, &mut b);
        assert!(out.deficient_columns.is_empty());
        assert!((out.solution[0] - 1.0).abs() < 1e-12);
        assert!((out.solution[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn overdetermined_matches_normal_equations() {
        // Fit y = a + b x to 4 points; normal-equation solution computed by hand.
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 2.1, 2.9, 4.2];
        let mut a = DenseMatrix::zeros(4, 2);
        for (i, &x) in xs.iter().enumerate() {
            a.set(i, 0, 1.0);
            a.set(i, 1, x);
        }
        let mut b = ys;
        let out = solve_least_squares(&mut a, &mut b);
        // Normal equations: [4, 6; 6, 14] [a; b] = [10.2, 20.5]
        let det = 4.0 * 14.0 - 36.0;
        let ea = (14.0 * 10.2 - 6.0 * 20.5) / det;
        let eb = (4.0 * 20.5 - 6.0 * 10.2) / det;
        assert!((out.solution[0] - ea).abs() < 1e-12);
        assert!((out.solution[1] - eb).abs() < 1e-12);
    }

    #[test]
    fn detects_rank_deficiency() {
        let mut a = from_rows(&[&[1.0, 2.0, 2.0], &[2.0, 4.0, 4.0], &[3.0, 6.0, 6.0]]);
        let mut b = [1.0, 2.0, 3.0];
        let out = solve_least_squares(&mut a, &mut b);
        assert!(!out.deficient_columns.is_empty());
        assert!(out.condition_estimate.is_infinite() || out.condition_estimate > 1e12);
    }

    #[test]
    fn underdetermined_reports_missing_pivots() {
        let mut a = from_rows(&[&[1.0, 0.0, 0.0]]);
        let mut b = [1.0];
        let out = solve_least_squares(&mut a, &mut b);
        assert_eq!(out.deficient_columns, alloc::vec![1, 2]);
    }
}
