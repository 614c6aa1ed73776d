use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_ORDER: usize = 32;

/// Eigenvalues of a small complex square matrix (K ≤ 32).
///
/// K = 1 and K = 2 are solved in closed form; larger matrices go through a
/// Householder reduction to Hessenberg form followed by single-shift QR
/// iteration with Wilkinson shifts.
pub fn small_complex_eig(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::invalid(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if n > MAX_ORDER {
        return Err(Error::invalid(format!(
            "small_complex_eig handles K <= {MAX_ORDER}, got {n}"
        )));
    }
    match n {
        1 => Ok(vec![a[(0, 0)]]),
        2 => Ok(eig2(a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]).into()),
        _ => hessenberg_qr(hessenberg(a)),
    }
}

fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> [Complex64; 2] {
    let mean = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    [mean + disc, mean - disc]
}

fn hessenberg(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { Complex64::new(1.0, 0.0) };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // H ← (I − β v vᴴ) H
        for j in 0..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)])
                .sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= vi * s * beta;
            }
        }
        // H ← H (I − β v vᴴ)
        for i in 0..n {
            let s: Complex64 = v
                .iter()
                .enumerate()
                .map(|(j, vj)| h[(i, k + 1 + j)] * vj)
                .sum();
            for (j, vj) in v.iter().enumerate() {
                h[(i, k + 1 + j)] -= s * vj.conj() * beta;
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    h
}

fn hessenberg_qr(mut h: ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let max_iter = 100 * n;
    let mut hi = n - 1;
    let mut iter = 0;
    let mut total = 0;

    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let diag = h[(l, l)].norm() + h[(l - 1, l - 1)].norm();
            if sub <= f64::EPSILON * diag || sub <= 1e-300 * scale {
                h[(l, l - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        if total >= max_iter {
            return Err(Error::Convergence {
                iterations: total,
                residual: h[(hi, hi - 1)].norm() / scale,
            });
        }
        iter += 1;
        total += 1;

        let [s1, s2] = eig2(
            h[(hi - 1, hi - 1)],
            h[(hi - 1, hi)],
            h[(hi, hi - 1)],
            h[(hi, hi)],
        );
        let d = h[(hi, hi)];
        let mut shift = if (s1 - d).norm() < (s2 - d).norm() { s1 } else { s2 };
        if iter % 11 == 10 {
            // Exceptional shift to break cycles.
            shift = d + Complex64::new(h[(hi, hi - 1)].norm(), 0.0);
        }

        for k in l..=hi {
            h[(k, k)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - l);
        for k in l..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (1.0, Complex64::new(0.0, 0.0))
            } else if x.norm() == 0.0 {
                (0.0, Complex64::new(1.0, 0.0))
            } else {
                let c = x.norm() / r;
                (c, (x / x.norm()) * y.conj() / r)
            };
            for j in k..=hi {
                let u = h[(k, j)];
                let v = h[(k + 1, j)];
                h[(k, j)] = u * c + s * v;
                h[(k + 1, j)] = -s.conj() * u + v * c;
            }
            rotations.push((c, s));
        }
        for (idx, k) in (l..hi).enumerate() {
            let (c, s) = rotations[idx];
            let top = (k + 2).min(hi);
            for i in l..=top {
                let u = h[(i, k)];
                let v = h[(i, k + 1)];
                h[(i, k)] = u * c + v * s.conj();
                h[(i, k + 1)] = -u * s + v * c;
            }
        }
        for k in l..=hi {
            h[(k, k)] += shift;
        }
    }
    eig[0] = h[(0, 0)];
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_and_rotation_generator() {
        let d = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]).unwrap();
        let e = sorted(small_complex_eig(&d).unwrap());
        assert!((e[0] - c(0.0, -1.0)).norm() < 1e-15 && (e[1] - c(0.0, 1.0)).norm() < 1e-15);

        let r = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let e = sorted(small_complex_eig(&r).unwrap());
        assert!((e[0] - c(0.0, -1.0)).norm() < 1e-15 && (e[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn upper_triangular_qr_path() {
        let a = ComplexMatrix::from_fn(5, 5, |i, j| {
            if i == j {
                c(i as f64, -(i as f64))
            } else if j > i {
                c(1.0, 0.5)
            } else {
                c(0.0, 0.0)
            }
        });
        let e = sorted(small_complex_eig(&a).unwrap());
        for (k, z) in e.iter().enumerate() {
            assert!((z - c(k as f64, -(k as f64))).norm() < 1e-10);
        }
    }

    #[test]
    fn companion_matrix_roots_of_unity() {
        // x^6 - 1: companion matrix eigenvalues are the sixth roots of unity.
        let n = 6;
        let mut a = ComplexMatrix::zeros(n, n);
        for i in 1..n {
            a[(i, i - 1)] = c(1.0, 0.0);
        }
        a[(0, n - 1)] = c(1.0, 0.0);
        let e = small_complex_eig(&a).unwrap();
        for z in &e {
            assert!((z.norm() - 1.0).abs() < 1e-10);
            let w = z.powu(6);
            assert!((w - c(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn oversize_rejected() {
        assert!(small_complex_eig(&ComplexMatrix::identity(33)).is_err());
        assert!(small_complex_eig(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
