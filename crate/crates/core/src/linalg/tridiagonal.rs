//! Largest eigenvalue of a Hermitian matrix through Householder reduction to
//! real symmetric tridiagonal form followed by Sturm-sequence bisection.
//!
//! This is the inner loop of every angular sweep, where only `λ_max` is
//! needed; it costs about one Jacobi sweep.

use super::matrix::C64;

/// Reduces the Hermitian row-major buffer `a` (destroyed) to a real symmetric
/// tridiagonal matrix with diagonal `diag` and off-diagonal magnitudes `off`.
/// Off-diagonal phases are dropped since a diagonal unitary similarity
/// removes them.
fn householder_tridiagonalize(a: &mut [C64], n: usize, diag: &mut Vec<f64>, off: &mut Vec<f64>) {
    diag.clear();
    off.clear();
    let mut v = vec![C64::new(0.0, 0.0); n];
    let mut p = vec![C64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        diag.push(a[k * n + k].re);
        let m = n - k - 1;
        let col = |i: usize| k + 1 + i;
        let alpha = (0..m).map(|i| a[col(i) * n + k].norm_sqr()).sum::<f64>().sqrt();
        off.push(alpha);
        if m == 1 || alpha == 0.0 {
            continue;
        }
        let x0 = a[col(0) * n + k];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..m {
            v[i] = a[col(i) * n + k];
        }
        v[0] += phase * alpha;
        let vnorm_sq: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm_sq;

        // p = tau * A22 v
        for (i, pi) in p[..m].iter_mut().enumerate() {
            let row = col(i) * n;
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..m {
                acc += a[row + col(j)] * v[j];
            }
            *pi = acc * tau;
        }
        // K = (tau / 2) v* p (real), w = p - K v
        let vp: C64 = (0..m).map(|i| v[i].conj() * p[i]).sum();
        let kappa = 0.5 * tau * vp.re;
        for i in 0..m {
            p[i] -= v[i] * kappa;
        }
        // A22 -= v w* + w v*
        for i in 0..m {
            let row = col(i) * n;
            for j in 0..m {
                a[row + col(j)] -= v[i] * p[j].conj() + p[i] * v[j].conj();
            }
        }
    }
    diag.push(a[(n - 1) * n + (n - 1)].re);
}

/// Number of eigenvalues of the tridiagonal matrix strictly below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    for i in 0..diag.len() {
        if i > 0 {
            let e = off[i - 1];
            q = diag[i] - x - e * e / q;
        }
        if q == 0.0 {
            q = -f64::EPSILON * (x.abs() + f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn bisect_largest(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius = if i > 0 { off[i - 1] } else { 0.0 } + if i + 1 < n { off[i] } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    // Invariant: fewer than n eigenvalues below lo, all n below-or-at hi.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Scratch space for repeated `λ_max` evaluations of equal-size matrices.
#[derive(Debug, Default)]
pub(crate) struct TridiagonalWorkspace {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl TridiagonalWorkspace {
    /// Largest eigenvalue of the Hermitian buffer `a`, which is destroyed.
    pub fn lambda_max(&mut self, a: &mut [C64], n: usize) -> f64 {
        debug_assert_eq!(a.len(), n * n);
        match n {
            1 => return a[0].re,
            2 => {
                let (p, q) = (a[0].re, a[3].re);
                return 0.5 * (p + q) + (0.5 * (p - q)).hypot(a[1].norm());
            }
            _ => {}
        }
        householder_tridiagonalize(a, n, &mut self.diag, &mut self.off);
        bisect_largest(&self.diag, &self.off)
    }
}
