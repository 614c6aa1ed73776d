use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const RANK_TOLERANCE: f64 = 1e-10;

/// Least-squares solution of `A x ≈ b` through Householder QR with column
/// pivoting.
///
/// `A` must be tall (`m ≥ k`) with full column rank; a pivot below
/// `1e-10 · |R₀₀|` is reported as [`Error::RankDeficient`].
pub fn lstsq_complex(a: &ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    let (m, k) = (a.rows(), a.cols());
    if m < k {
        return Err(Error::invalid(format!(
            "least squares needs at least as many rows as columns, got {m}x{k}"
        )));
    }
    if b.len() != m {
        return Err(Error::invalid(format!(
            "right-hand side has length {}, expected {m}",
            b.len()
        )));
    }

    let mut r = a.clone();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut diag = vec![Complex64::new(0.0, 0.0); k];
    let mut rank = k;

    for j in 0..k {
        let col_norm = |r: &ComplexMatrix, c: usize| -> f64 {
            (j..m).map(|i| r[(i, c)].norm_sqr()).sum::<f64>()
        };
        let pivot = (j..k)
            .max_by(|&x, &y| col_norm(&r, x).total_cmp(&col_norm(&r, y)).then(y.cmp(&x)))
            .unwrap_or(j);
        if pivot != j {
            perm.swap(j, pivot);
            for i in 0..m {
                let tmp = r[(i, j)];
                r[(i, j)] = r[(i, pivot)];
                r[(i, pivot)] = tmp;
            }
        }

        let xnorm = col_norm(&r, j).sqrt();
        let reference = if j == 0 { xnorm } else { diag[0].norm() };
        if xnorm <= RANK_TOLERANCE * reference || xnorm == 0.0 {
            rank = j;
            break;
        }
        let x0 = r[(j, j)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        let mut v: Vec<Complex64> = (j..m).map(|i| r[(i, j)]).collect();
        v[0] -= alpha;
        let beta = 2.0 / v.iter().map(|z| z.norm_sqr()).sum::<f64>();

        for c in j..k {
            let s: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * r[(j + i, c)]).sum();
            for (i, vi) in v.iter().enumerate() {
                r[(j + i, c)] -= vi * s * beta;
            }
        }
        let s: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * rhs[j + i]).sum();
        for (i, vi) in v.iter().enumerate() {
            rhs[j + i] -= vi * s * beta;
        }
        diag[j] = alpha;
    }

    if rank < k {
        return Err(Error::RankDeficient { rank, cols: k });
    }

    let mut y = vec![Complex64::new(0.0, 0.0); k];
    for i in (0..k).rev() {
        let mut s = rhs[i];
        for c in (i + 1)..k {
            s -= r[(i, c)] * y[c];
        }
        y[i] = s / r[(i, i)];
    }
    let mut x = vec![Complex64::new(0.0, 0.0); k];
    for (j, &p) in perm.iter().enumerate() {
        x[p] = y[j];
    }
    Ok(x)
}
