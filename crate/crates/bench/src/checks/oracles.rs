//! Reference computations that share no code with the estimators they
//! check: Gauss-Legendre quadrature, a one-sided Jacobi SVD, and dense
//! Kronecker-product lattice Hamiltonians.

use std::f64::consts::PI;

use rand::Rng;

use qmegs::linalg::ComplexMatrix;
use qmegs::spectrum::assign_overlaps;
use qmegs::{Complex64, SpectralModel};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre integral of `f` over `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        total += rule
            .0
            .iter()
            .zip(&rule.1)
            .map(|(&x, &w)| w * f(mid + 0.5 * h * x))
            .sum::<f64>();
    }
    0.5 * h * total
}

fn std_normal_pdf(s: f64) -> f64 {
    (-0.5 * s * s).exp() / (2.0 * PI).sqrt()
}

/// `E_{t∼a}[Z(t) e^{iθt}]` for the truncated Gaussian time density: the
/// in-range Gaussian integral plus the truncated mass sitting at `t = 0`.
///
/// Everything is even in `t`, so the integral is real and taken over
/// `[0, σ]` in units of `T`.
pub fn truncated_expectation(model: &SpectralModel, theta: f64, depth: f64, sigma: f64) -> f64 {
    let rule = gauss_legendre(16);
    let freqs: Vec<(f64, f64)> = model
        .eigenvalues()
        .iter()
        .zip(model.overlaps())
        .map(|(&l, &p)| ((theta - l) * depth, p))
        .collect();
    let fastest = freqs.iter().fold(0.0_f64, |m, (w, _)| m.max(w.abs()));
    let panels = (fastest * sigma / (2.0 * PI)).ceil() as usize + 8;
    let body = 2.0 * integrate(
        |s| std_normal_pdf(s) * freqs.iter().map(|(w, p)| p * (w * s).cos()).sum::<f64>(),
        0.0,
        sigma,
        panels,
        &rule,
    );
    body + truncated_mass(sigma)
}

/// `P(|s| > σT)` for `s ∼ N(0, T²)`, the mass moved to `t = 0`.
pub fn truncated_mass(sigma: f64) -> f64 {
    1.0 - 2.0 * integrate(std_normal_pdf, 0.0, sigma, 8, &gauss_legendre(16))
}

/// `Σ_m p_m e^{−T²(λ_m − θ)²/2}`
pub fn gaussian_filter(model: &SpectralModel, theta: f64, depth: f64) -> f64 {
    model
        .eigenvalues()
        .iter()
        .zip(model.overlaps())
        .map(|(&l, &p)| p * (-0.5 * (depth * (l - theta)).powi(2)).exp())
        .sum()
}

/// Random model with `2..=max_modes` eigenvalues in `(−π, π)` and a single
/// dominant mode of overlap at least 0.55.
pub fn random_model<R: Rng>(rng: &mut R, max_modes: usize) -> SpectralModel {
    loop {
        let m = rng.random_range(2..=max_modes);
        let mut lambda: Vec<f64> = (0..m).map(|_| rng.random_range(-PI + 1e-9..PI)).collect();
        lambda.sort_by(f64::total_cmp);
        lambda.dedup();
        if lambda.len() < 2 {
            continue;
        }
        let dominant = rng.random_range(0..lambda.len());
        let weight = rng.random_range(0.55..0.95);
        if let Ok(model) = assign_overlaps(&lambda, &[dominant], &[weight], rng.random()) {
            return model;
        }
    }
}

/// Left singular vectors and values of `a` by one-sided Jacobi rotations
/// on its columns, sorted by decreasing singular value.
pub fn jacobi_svd_left(a: &ComplexMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut c: Vec<Vec<Complex64>> = (0..cols).map(|j| a.column(j)).collect();
    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(u, v)| u.conj() * v).sum() };
    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha = dot(&c[p], &c[p]).re;
                let beta = dot(&c[q], &c[q]).re;
                let gamma = dot(&c[p], &c[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                off = off.max(g / (alpha * beta).sqrt());
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let ap = c[p][i];
                    let aq = c[q][i] * phase.conj();
                    c[p][i] = ap * cs - aq * sn;
                    c[q][i] = ap * sn + aq * cs;
                }
            }
        }
        if off < 1e-15 {
            break;
        }
    }
    let mut pairs: Vec<(f64, Vec<Complex64>)> = c
        .into_iter()
        .map(|col| {
            let s = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let u = if s > 0.0 { col.iter().map(|z| z / s).collect() } else { col };
            (s, u)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    pairs.into_iter().unzip()
}

/// `‖(I − U Uᴴ) Q‖_F` for orthonormal column sets `U` (reference) and `Q`:
/// an upper bound on the sine of the largest principal angle.
pub fn subspace_distance(u: &[Vec<Complex64>], q: &ComplexMatrix) -> f64 {
    let mut total = 0.0;
    for j in 0..q.cols() {
        let mut v = q.column(j);
        for uk in u {
            let proj: Complex64 = uk.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ui) in v.iter_mut().zip(uk) {
                *vi -= proj * ui;
            }
        }
        total += v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    total.sqrt()
}

pub type Dense = Vec<Vec<f64>>;

fn eye(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

fn kron(a: &Dense, b: &Dense) -> Dense {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0.0; n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn axpy(acc: &mut Dense, s: f64, x: &Dense) {
    for (r, xr) in acc.iter_mut().zip(x) {
        for (a, b) in r.iter_mut().zip(xr) {
            *a += s * b;
        }
    }
}

/// Operators on an `n`-site chain, site 0 leftmost.
fn chain(n: usize, ops: &[(usize, &Dense)]) -> Dense {
    let mut out = vec![vec![1.0]];
    for site in 0..n {
        let f = ops.iter().find(|(s, _)| *s == site).map(|(_, m)| (*m).clone()).unwrap_or_else(|| eye(2));
        out = kron(&out, &f);
    }
    out
}

/// `−Σ Z_i Z_{i+1} − g Σ X_i` with periodic bonds, from Pauli strings.
pub fn tfim_dense(l: usize, g: f64) -> Dense {
    let z = vec![vec![1.0, 0.0], vec![0.0, -1.0]];
    let x = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
    let mut h = vec![vec![0.0; 1 << l]; 1 << l];
    for i in 0..l {
        axpy(&mut h, -1.0, &chain(l, &[(i, &z), (((i + 1) % l), &z)]));
        axpy(&mut h, -g, &chain(l, &[(i, &x)]));
    }
    h
}

/// Open-chain Hubbard model from Jordan-Wigner fermion operators, spin-up
/// modes first, interaction `U Σ (n↑ − ½)(n↓ − ½)`.
pub fn hubbard_dense(l: usize, t: f64, u: f64) -> Dense {
    let modes = 2 * l;
    let dim = 1 << modes;
    let z = vec![vec![1.0, 0.0], vec![0.0, -1.0]];
    let lower = vec![vec![0.0, 1.0], vec![0.0, 0.0]];
    let c: Vec<Dense> = (0..modes)
        .map(|m| {
            let mut ops: Vec<(usize, &Dense)> = (0..m).map(|k| (k, &z)).collect();
            ops.push((m, &lower));
            chain(modes, &ops)
        })
        .collect();
    let cd: Vec<Dense> = c
        .iter()
        .map(|a| (0..dim).map(|i| (0..dim).map(|j| a[j][i]).collect()).collect())
        .collect();
    let mut h = vec![vec![0.0; dim]; dim];
    for spin in 0..2 {
        for j in 0..l - 1 {
            let (a, b) = (spin * l + j, spin * l + j + 1);
            axpy(&mut h, -t, &matmul(&cd[a], &c[b]));
            axpy(&mut h, -t, &matmul(&cd[b], &c[a]));
        }
    }
    for j in 0..l {
        let mut up = matmul(&cd[j], &c[j]);
        let mut down = matmul(&cd[l + j], &c[l + j]);
        for i in 0..dim {
            up[i][i] -= 0.5;
            down[i][i] -= 0.5;
        }
        axpy(&mut h, u, &matmul(&up, &down));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmegs::sampler::stream_rng;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = gauss_legendre(16);
        assert!((rule.1.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let v = integrate(|x| x.powi(30), -1.0, 1.0, 1, &rule);
        assert!((v - 2.0 / 31.0).abs() < 1e-14);
        let e = integrate(|x| x.exp(), 0.0, 1.0, 3, &rule);
        assert!((e - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn untruncated_limit_matches_gaussian() {
        let model = SpectralModel::new(vec![0.1, 0.5], vec![0.7, 0.3], vec![0]).unwrap();
        for &theta in &[0.0, 0.12, 0.4, -2.0] {
            let a = truncated_expectation(&model, theta, 10.0, 12.0);
            assert!((a - gaussian_filter(&model, theta, 10.0)).abs() < 1e-13, "{theta}");
        }
    }

    #[test]
    fn jacobi_svd_reconstructs_singular_values() {
        let mut rng = stream_rng(1, 1);
        let a = ComplexMatrix::from_fn(7, 5, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let (s, u) = jacobi_svd_left(&a);
        // Σσ² equals the squared Frobenius norm; U columns are orthonormal.
        let fro = a.frobenius_norm();
        assert!((s.iter().map(|x| x * x).sum::<f64>() - fro * fro).abs() < 1e-12);
        for i in 0..u.len() {
            for j in 0..u.len() {
                let d: Complex64 = u[i].iter().zip(&u[j]).map(|(a, b)| a.conj() * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).norm() < 1e-12);
            }
        }
        assert!(s.windows(2).all(|w| w[0] >= w[1]));
    }
}
