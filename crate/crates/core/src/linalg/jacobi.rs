use num_complex::Complex64;

use super::matrix::{ComplexMatrix, SymMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 50;
const OFF_TOLERANCE: f64 = 1e-12;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymEig {
    /// Ascending.
    pub values: Vec<f64>,
    dim: usize,
    /// Row-major; column `k` is the eigenvector of `values[k]`.
    vectors: Vec<f64>,
}

impl SymEig {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.vectors[i * self.dim + k]).collect()
    }

    /// Entry `(i, k)` of the eigenvector matrix.
    pub fn vector_entry(&self, i: usize, k: usize) -> f64 {
        self.vectors[i * self.dim + k]
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver.
///
/// Sweeps over all `(p, q)` pairs until the off-diagonal Frobenius norm is
/// below `1e-12 · ‖A‖_F`, with a cap of 50 sweeps.
pub fn sym_eig(a: &SymMatrix) -> Result<SymEig> {
    let n = a.dim();
    if n > 4096 {
        return Err(Error::invalid(format!(
            "dense Jacobi is limited to dimension 4096, got {n}"
        )));
    }
    let mut m = a.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let norm = a.frobenius_norm();
    let target = OFF_TOLERANCE * norm;
    // Rotations on entries this small cannot move the off-norm above target.
    let skip = target / (n as f64);

    let mut off = off_diagonal_norm(&m, n);
    let mut sweeps = 0;
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence {
                iterations: sweeps,
                residual: off / norm,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let kp = m[k * n + p];
                    let kq = m[k * n + q];
                    m[k * n + p] = c * kp - s * kq;
                    m[k * n + q] = s * kp + c * kq;
                }
                for k in 0..n {
                    let pk = m[p * n + k];
                    let qk = m[q * n + k];
                    m[p * n + k] = c * pk - s * qk;
                    m[q * n + k] = s * pk + c * qk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let kp = v[k * n + p];
                    let kq = v[k * n + q];
                    v[k * n + p] = c * kp - s * kq;
                    v[k * n + q] = s * kp + c * kq;
                }
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&m, n);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].total_cmp(&m[j * n + j]));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (k, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + k] = v[i * n + src];
        }
    }
    Ok(SymEig {
        values,
        dim: n,
        vectors,
    })
}

/// Jacobi eigensolver for a small Hermitian matrix.
///
/// Returns eigenvalues in descending order and the unitary whose columns are
/// the matching eigenvectors. Used on the k×k Gram matrices of the subspace
/// iteration, so no size cap applies beyond what is practical.
pub(crate) fn hermitian_eig(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::invalid("Hermitian eigensolver needs a square matrix"));
    }
    let mut m = a.clone();
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let norm = m.frobenius_norm();
    let target = OFF_TOLERANCE * norm;
    let skip = target / (n as f64).max(1.0);

    let off = |m: &ComplexMatrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut residual = off(&m);
    while residual > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence {
                iterations: sweeps,
                residual: residual / norm,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= skip {
                    continue;
                }
                // Rotate the phase of index q so that the (p, q) entry is real.
                let phase = apq / mag;
                for k in 0..n {
                    m[(k, q)] *= phase.conj();
                    m[(q, k)] *= phase;
                    v[(k, q)] *= phase.conj();
                }
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

                let theta = (m[(q, q)].re - m[(p, p)].re) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let kp = m[(k, p)];
                    let kq = m[(k, q)];
                    m[(k, p)] = kp * c - kq * s;
                    m[(k, q)] = kp * s + kq * c;
                }
                for k in 0..n {
                    let pk = m[(p, k)];
                    let qk = m[(q, k)];
                    m[(p, k)] = pk * c - qk * s;
                    m[(q, k)] = pk * s + qk * c;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    let kp = v[(k, p)];
                    let kq = v[(k, q)];
                    v[(k, p)] = kp * c - kq * s;
                    v[(k, q)] = kp * s + kq * c;
                }
            }
        }
        sweeps += 1;
        residual = off(&m);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok((values, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reconstruct(e: &SymEig) -> Vec<f64> {
        let n = e.dim();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n)
                    .map(|k| e.vector_entry(i, k) * e.values[k] * e.vector_entry(j, k))
                    .sum();
            }
        }
        out
    }

    #[test]
    fn identity_and_diagonal() {
        let e = sym_eig(&SymMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);

        let e = sym_eig(&SymMatrix::from_diagonal(&[5.0, -2.0, 0.0])).unwrap();
        assert_eq!(e.values, vec![-2.0, 0.0, 5.0]);
        assert_eq!(e.vector(0), vec![0.0, 1.0, 0.0]);
        assert_eq!(e.vector(2), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let e = sym_eig(&SymMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_symmetric_residuals() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &n in &[1usize, 2, 5, 17, 40] {
            let mut a = SymMatrix::zeros(n);
            for i in 0..n {
                for j in i..n {
                    a.add_symmetric(i, j, rng.random_range(-1.0..1.0));
                }
            }
            let norm = a.frobenius_norm();
            let e = sym_eig(&a).unwrap();
            for k in 0..n {
                let v = e.vector(k);
                let res: f64 = (0..n)
                    .map(|i| {
                        let av: f64 = (0..n).map(|j| a.get(i, j) * v[j]).sum();
                        (av - e.values[k] * v[i]).powi(2)
                    })
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-9 * norm, "n={n} k={k} residual {res}");
            }
            for k in 1..n {
                assert!(e.values[k - 1] <= e.values[k]);
            }
            let rec = reconstruct(&e);
            let err: f64 = rec
                .iter()
                .zip(a.as_slice())
                .map(|(x, y)| (x - y).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(err <= 1e-8 * norm);
            assert!((e.values.iter().sum::<f64>() - a.trace()).abs() <= 1e-8 * n as f64 * norm);
        }
    }

    #[test]
    fn hermitian_jacobi_diagonalizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 6;
        let mut a = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        let (vals, vecs) = hermitian_eig(&a).unwrap();
        for k in 0..n {
            let v = vecs.column(k);
            let av = a.matvec(&v);
            let res: f64 = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - y * vals[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-10, "residual {res}");
        }
        for k in 1..n {
            assert!(vals[k - 1] >= vals[k]);
        }
    }
}
