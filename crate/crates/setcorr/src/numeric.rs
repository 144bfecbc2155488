//! Small numerical kernels shared across the crate.
//!
//! Reductions are compensated (Neumaier) and always run in a fixed order, so
//! every estimate is deterministic for a given input and accurate to a few
//! ulps regardless of node counts.

/// Compensated accumulator (Neumaier variant of Kahan summation).
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub(crate) fn compensated_total(values: &[f64]) -> f64 {
    let mut acc = CompensatedSum::new();
    for &v in values {
        acc.add(v);
    }
    acc.value()
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    compensated_total(values) / values.len() as f64
}

/// Bessel-corrected sample covariance of two equally long samples.
pub(crate) fn bessel_cov(xs: &[f64], ys: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    debug_assert!(xs.len() >= 2);
    let mx = mean(xs);
    let my = mean(ys);
    let mut acc = CompensatedSum::new();
    for (&x, &y) in xs.iter().zip(ys) {
        acc.add((x - mx) * (y - my));
    }
    acc.value() / (xs.len() - 1) as f64
}

pub(crate) fn bessel_var(xs: &[f64]) -> f64 {
    bessel_cov(xs, xs)
}

/// Mean of squares, used for relative degeneracy floors.
pub(crate) fn mean_square(values: &[f64]) -> f64 {
    let mut acc = CompensatedSum::new();
    for &v in values {
        acc.add(v * v);
    }
    acc.value() / values.len() as f64
}

/// Pearson correlation, or `None` when either sample is degenerate
/// (variance at or below `1e-12` times its mean square).
pub(crate) fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let vx = bessel_var(xs);
    let vy = bessel_var(ys);
    if vx <= 1e-12 * mean_square(xs) || vy <= 1e-12 * mean_square(ys) {
        return None;
    }
    Some(bessel_cov(xs, ys) / (vx * vy).sqrt())
}

/// Slope and intercept of the least-squares line through `(x, y)` pairs.
pub(crate) fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let sxx = bessel_var(xs);
    let sxy = bessel_cov(xs, ys);
    let slope = sxy / sxx;
    let intercept = mean(ys) - slope * mean(xs);
    (slope, intercept)
}

/// Eigenvalues of a dense symmetric matrix via cyclic Jacobi rotations.
///
/// `a` is row-major `n x n` and is consumed. Intended for the small matrices
/// (n <= ~10) that show up in PSD checks and condition estimates.
pub(crate) fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    let norm: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let tol = 1e-14 * norm.max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q].abs();
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= tol / (n * n) as f64 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Solve `A x = b` for square `A` (row-major) by Gaussian elimination with
/// partial pivoting. Returns the zero-based column index at which no usable
/// pivot exists when `A` is rank deficient.
pub(crate) fn solve_linear(mut a: Vec<f64>, mut b: Vec<f64>, n: usize) -> Result<Vec<f64>, usize> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let scale: f64 = a
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let mut pivot_row = col;
        let mut best = a[col * n + col].abs();
        for row in (col + 1)..n {
            let cand = a[row * n + col].abs();
            if cand > best {
                best = cand;
                pivot_row = row;
            }
        }
        if best <= 1e-13 * scale {
            return Err(col);
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col * n + k] * x[k];
        }
        x[col] = acc / a[col * n + col];
    }
    Ok(x)
}
