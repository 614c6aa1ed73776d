use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::jacobi::hermitian_eig;
use super::matrix::{ComplexMatrix, LinearOperator};
use super::{dot_conj, norm2};
use crate::error::{Error, Result};

/// Knobs for [`top_singular_subspace`].
#[derive(Clone, Copy, Debug)]
pub struct SubspaceOptions {
    /// Stop once `max_i ‖(I − U Uᴴ) M v_i‖ / σ_1` falls below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Extra block columns beyond the target rank.
    pub oversample: usize,
    /// Seed of the random starting block; fixed so the routine is a pure
    /// function of its inputs.
    pub seed: u64,
}

impl Default for SubspaceOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 500,
            oversample: 6,
            seed: 0x005e_ed0f_b10c,
        }
    }
}

type Block = Vec<Vec<Complex64>>;

fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Columns that
/// collapse (the block is rank deficient) are replaced by fresh random
/// directions so the result is always a full orthonormal set.
fn orthonormalize(block: &mut Block, rng: &mut ChaCha8Rng) {
    let n = block.first().map_or(0, Vec::len);
    for j in 0..block.len() {
        let original = norm2(&block[j]);
        let mut attempts = 0;
        loop {
            for _ in 0..2 {
                for i in 0..j {
                    let (done, rest) = block.split_at_mut(j);
                    let proj = dot_conj(&done[i], &rest[0]);
                    for (x, q) in rest[0].iter_mut().zip(&done[i]) {
                        *x -= proj * q;
                    }
                }
            }
            let nrm = norm2(&block[j]);
            if nrm > 1e-10 * original.max(f64::MIN_POSITIVE) && nrm > 0.0 {
                for x in block[j].iter_mut() {
                    *x /= nrm;
                }
                break;
            }
            attempts += 1;
            assert!(attempts < 50, "could not complete an orthonormal basis");
            block[j] = random_vector(n, rng);
        }
    }
}

fn apply_block(op: &dyn LinearOperator, block: &Block, adjoint: bool) -> Block {
    let out_len = if adjoint { op.cols() } else { op.rows() };
    block
        .par_iter()
        .map(|x| {
            let mut y = vec![Complex64::new(0.0, 0.0); out_len];
            if adjoint {
                op.apply_adjoint(x, &mut y);
            } else {
                op.apply(x, &mut y);
            }
            y
        })
        .collect()
}

/// Orthonormal basis of the dominant `r`-dimensional left singular subspace
/// of `op`, by randomized block power iteration with Rayleigh-Ritz
/// extraction.
///
/// Columns of the returned `rows × r` matrix are ordered by decreasing
/// singular value.
pub fn top_singular_subspace(
    op: &dyn LinearOperator,
    r: usize,
    options: SubspaceOptions,
) -> Result<ComplexMatrix> {
    let (rows, cols) = (op.rows(), op.cols());
    if r == 0 || r > rows.min(cols) {
        return Err(Error::invalid(format!(
            "target rank {r} must lie in 1..={}",
            rows.min(cols)
        )));
    }
    let k = (r + options.oversample).min(rows.min(cols));
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);

    let start: Block = (0..k).map(|_| random_vector(cols, &mut rng)).collect();
    let mut q = apply_block(op, &start, false);
    orthonormalize(&mut q, &mut rng);

    let mut residual = f64::INFINITY;
    for _ in 0..options.max_iter {
        // W = Mᴴ Q, Gram = Wᴴ W = Qᴴ M Mᴴ Q.
        let w = apply_block(op, &q, true);
        let gram = ComplexMatrix::from_fn(k, k, |i, j| dot_conj(&w[i], &w[j]));
        let (vals, vecs) = hermitian_eig(&gram)?;
        let sigma1 = vals[0].max(0.0).sqrt();

        let combine = |basis: &Block, idx: usize| -> Vec<Complex64> {
            let mut out = vec![Complex64::new(0.0, 0.0); basis[0].len()];
            for (m, col) in basis.iter().enumerate() {
                let coef = vecs[(m, idx)];
                for (o, x) in out.iter_mut().zip(col) {
                    *o += coef * x;
                }
            }
            out
        };
        let ritz: Block = (0..k).map(|i| combine(&q, i)).collect();

        if sigma1 == 0.0 {
            return ComplexMatrix::from_columns(&ritz[..r]);
        }

        // Right Ritz vectors v_i = Mᴴ u_i / σ_i; residual of M v_i outside span(U_r).
        let right: Block = (0..r)
            .map(|i| {
                let s = vals[i].max(0.0).sqrt();
                let mut v = combine(&w, i);
                if s > 0.0 {
                    for x in v.iter_mut() {
                        *x /= s;
                    }
                }
                v
            })
            .collect();
        let mv = apply_block(op, &right, false);
        residual = mv
            .iter()
            .map(|y| {
                let mut y = y.clone();
                for u in &ritz[..r] {
                    let proj = dot_conj(u, &y);
                    for (a, b) in y.iter_mut().zip(u) {
                        *a -= proj * b;
                    }
                }
                norm2(&y)
            })
            .fold(0.0, f64::max)
            / sigma1;
        if residual <= options.tol {
            return ComplexMatrix::from_columns(&ritz[..r]);
        }

        let mut z = w;
        orthonormalize(&mut z, &mut rng);
        q = apply_block(op, &z, false);
        orthonormalize(&mut q, &mut rng);
    }
    Err(Error::Convergence {
        iterations: options.max_iter,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rank_one_outer_product() {
        let u: Vec<_> = (0..5).map(|i| c(1.0 + i as f64, -0.5 * i as f64)).collect();
        let v: Vec<_> = (0..4).map(|j| c(0.3 * j as f64, 1.0)).collect();
        let m = ComplexMatrix::from_fn(5, 4, |i, j| u[i] * v[j].conj());
        let basis = top_singular_subspace(&m, 1, SubspaceOptions::default()).unwrap();
        let b = basis.column(0);
        let overlap = dot_conj(&b, &u).norm() / norm2(&u);
        assert!((overlap - 1.0).abs() < 1e-10);
    }

    #[test]
    fn diagonal_spans_leading_coordinates() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| if i == j { c(4.0 - i as f64, 0.0) } else { c(0.0, 0.0) });
        let basis = top_singular_subspace(&m, 2, SubspaceOptions::default()).unwrap();
        for col in 0..2 {
            let v = basis.column(col);
            assert!(v[2].norm() < 1e-10 && v[3].norm() < 1e-10);
        }
        // Orthonormal columns.
        let g = dot_conj(&basis.column(0), &basis.column(1));
        assert!(g.norm() < 1e-12);
    }

    #[test]
    fn rejects_oversized_rank() {
        let m = ComplexMatrix::identity(3);
        assert!(top_singular_subspace(&m, 4, SubspaceOptions::default()).is_err());
        assert!(top_singular_subspace(&m, 0, SubspaceOptions::default()).is_err());
    }

    #[test]
    fn stagnation_is_reported() {
        // Degenerate leading singular values and a single iteration.
        let m = ComplexMatrix::from_fn(30, 30, |i, j| {
            if i == j {
                c(1.0 + 1e-6 * i as f64, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let opts = SubspaceOptions {
            max_iter: 1,
            oversample: 0,
            tol: 1e-14,
            ..SubspaceOptions::default()
        };
        match top_singular_subspace(&m, 2, opts) {
            Err(Error::Convergence { iterations, .. }) => assert_eq!(iterations, 1),
            other => panic!("expected convergence error, got {other:?}"),
        }
    }
}
