//! Small dense linear solvers over [`Scalar`] and `f64`.
//!
//! The `Scalar` path does fraction-free-style Gaussian elimination with exact
//! division on the rational backend (pivots are exact zero tests) and plain
//! partial pivoting on floats. Systems here are tiny (n ≤ 16, or n² for
//! tensor inversion), so no effort is spent on asymptotics.

use crate::scalar::Scalar;

/// Row-major dense matrix of scalars.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
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

    /// Treats entries with |x| <= eps as zero on the float backend;
    /// rational zeros are exact.
    fn is_zero_entry(&self, r: usize, c: usize, eps: f64) -> bool {
        match self.at(r, c) {
            s @ Scalar::Rational(_) => s.is_zero(),
            Scalar::Float(x) => x.abs() <= eps,
        }
    }
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug)]
pub enum LinearSolution {
    Inconsistent,
    Solution {
        particular: Vec<Scalar>,
        /// Basis of the null space of `A`; empty for a unique solution.
        kernel: Vec<Vec<Scalar>>,
    },
}

/// Gaussian elimination of `A x = b` with full solution-set extraction.
pub fn solve_linear(a: &Matrix, b: &[Scalar], eps: f64) -> LinearSolution {
    assert_eq!(a.rows, b.len(), "rhs length must match row count");
    let n = a.rows;
    let m = a.cols;
    // Augmented matrix [A | b].
    let mut aug = Matrix::zeros(n, m + 1);
    for r in 0..n {
        for c in 0..m {
            aug.set(r, c, a.at(r, c).clone());
        }
        aug.set(r, m, b[r].clone());
    }

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..m {
        // Pick the largest-magnitude candidate pivot; on rationals any
        // nonzero entry works, magnitude just bounds float error.
        let mut best: Option<(usize, f64)> = None;
        for r in row..n {
            if !aug.is_zero_entry(r, col, eps) {
                let mag = aug.at(r, col).to_f64().abs();
                if best.is_none_or(|(_, bm)| mag > bm) {
                    best = Some((r, mag));
                }
            }
        }
        let Some((prow, _)) = best else { continue };
        aug.swap_rows(row, prow);
        let pivot = aug.at(row, col).clone();
        for c in col..=m {
            let v = aug.at(row, c).div(&pivot);
            aug.set(row, c, v);
        }
        for r in 0..n {
            if r != row && !aug.is_zero_entry(r, col, eps) {
                let factor = aug.at(r, col).clone();
                for c in col..=m {
                    let v = aug.at(r, c).sub(&factor.mul(aug.at(row, c)));
                    aug.set(r, c, v);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }

    // Zero row with nonzero rhs means no solution.
    for r in row..n {
        if !aug.is_zero_entry(r, m, eps) {
            return LinearSolution::Inconsistent;
        }
    }

    let mut particular = vec![Scalar::zero(); m];
    for (i, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = aug.at(i, m).clone();
    }

    let mut kernel = Vec::new();
    for free in 0..m {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); m];
        v[free] = Scalar::one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = aug.at(i, free).neg();
        }
        kernel.push(v);
    }

    LinearSolution::Solution { particular, kernel }
}

/// Exact least-squares residual bound check: solves the normal equations
/// `AᵀA y = Aᵀb` and returns the residual vector `A y − b`. With rational
/// inputs everything is exact, so "inconsistent" systems get a provably
/// positive residual.
pub fn least_squares_residual(a: &Matrix, b: &[Scalar]) -> Vec<Scalar> {
    let n = a.rows;
    let m = a.cols;
    let mut ata = Matrix::zeros(m, m);
    let mut atb = vec![Scalar::zero(); m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = Scalar::zero();
            for r in 0..n {
                acc = acc.add(&a.at(r, i).mul(a.at(r, j)));
            }
            ata.set(i, j, acc);
        }
        let mut acc = Scalar::zero();
        for r in 0..n {
            acc = acc.add(&a.at(r, i).mul(&b[r]));
        }
        atb[i] = acc;
    }
    // Normal equations are always consistent.
    let y = match solve_linear(&ata, &atb, 0.0) {
        LinearSolution::Solution { particular, .. } => particular,
        LinearSolution::Inconsistent => unreachable!("normal equations are consistent"),
    };
    (0..n)
        .map(|r| {
            let mut acc = b[r].neg();
            for c in 0..m {
                acc = acc.add(&a.at(r, c).mul(&y[c]));
            }
            acc
        })
        .collect()
}

/// In-place LU solve with partial pivoting for the scanner's Newton step.
/// Returns `false` when the matrix is numerically singular.
pub fn solve_f64(a: &mut [f64], n: usize, b: &mut [f64]) -> bool {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        let mut prow = col;
        let mut pmag = a[col * n + col].abs();
        for r in col + 1..n {
            let mag = a[r * n + col].abs();
            if mag > pmag {
                prow = r;
                pmag = mag;
            }
        }
        if pmag < 1e-12 {
            return false;
        }
        if prow != col {
            for c in 0..n {
                a.swap(col * n + c, prow * n + c);
            }
            b.swap(col, prow);
        }
        let pivot = a[col * n + col];
        for r in col + 1..n {
            let factor = a[r * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r * n + c] -= factor * a[col * n + c];
            }
            b[r] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for c in col + 1..n {
            acc -= a[col * n + c] * b[c];
        }
        b[col] = acc / a[col * n + col];
    }
    true
}

/// Ridge-regularized normal-equation solve, used as the pseudo-inverse
/// fallback when the Newton Jacobian is singular.
pub fn ridge_solve_f64(a: &[f64], n: usize, b: &[f64], ridge: f64) -> Vec<f64> {
    let mut ata = vec![0.0; n * n];
    let mut atb = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for r in 0..n {
                acc += a[r * n + i] * a[r * n + j];
            }
            ata[i * n + j] = acc;
        }
        ata[i * n + i] += ridge;
        let mut acc = 0.0;
        for r in 0..n {
            acc += a[r * n + i] * b[r];
        }
        atb[i] = acc;
    }
    let mut x = atb;
    if solve_f64(&mut ata, n, &mut x) {
        x
    } else {
        vec![0.0; n]
    }
}
