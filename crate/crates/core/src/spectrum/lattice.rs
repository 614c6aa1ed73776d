//! Lattice Hamiltonians in the computational basis.
//!
//! Basis index bits are read with qubit 0 as the most significant bit.

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;

#[inline]
fn bit(state: usize, qubit: usize, n: usize) -> usize {
    (state >> (n - 1 - qubit)) & 1
}

/// Transverse field Ising chain with periodic boundary:
/// `H = −(Σ_i Z_i Z_{i+1} + Z_L Z_1) − g Σ_i X_i`.
///
/// For `L = 2` the wrap-around bond coincides with the open bond, so the
/// coupling appears twice.
pub fn build_tfim(sites: usize, g: f64) -> Result<SymMatrix> {
    if !(2..=12).contains(&sites) {
        return Err(Error::invalid(format!("TFIM needs 2 <= L <= 12, got {sites}")));
    }
    let dim = 1usize << sites;
    let mut h = SymMatrix::zeros(dim);
    for s in 0..dim {
        let mut diag = 0.0;
        for i in 0..sites {
            let j = (i + 1) % sites;
            let zi = 1.0 - 2.0 * bit(s, i, sites) as f64;
            let zj = 1.0 - 2.0 * bit(s, j, sites) as f64;
            diag -= zi * zj;
        }
        h.add_symmetric(s, s, diag);
        for i in 0..sites {
            let flipped = s ^ (1 << (sites - 1 - i));
            if flipped > s {
                h.add_symmetric(s, flipped, -g);
            }
        }
    }
    Ok(h)
}

/// One-dimensional Fermi-Hubbard chain with open boundary:
/// `H = −t Σ_{j,σ} (c†_{j,σ} c_{j+1,σ} + h.c.) + U Σ_j (n_{j↑} − ½)(n_{j↓} − ½)`.
///
/// Jordan-Wigner ordering is site-major with the spin-up block first: mode
/// `j` is `(j, ↑)` and mode `L + j` is `(j, ↓)`.
pub fn build_hubbard(sites: usize, hopping: f64, interaction: f64) -> Result<SymMatrix> {
    if !(2..=5).contains(&sites) {
        return Err(Error::invalid(format!("Hubbard needs 2 <= L <= 5, got {sites}")));
    }
    let modes = 2 * sites;
    let dim = 1usize << modes;
    let mut h = SymMatrix::zeros(dim);
    for s in 0..dim {
        let mut diag = 0.0;
        for j in 0..sites {
            let up = bit(s, j, modes) as f64 - 0.5;
            let down = bit(s, sites + j, modes) as f64 - 0.5;
            diag += interaction * up * down;
        }
        h.add_symmetric(s, s, diag);

        for spin in 0..2 {
            for j in 0..sites - 1 {
                let a = spin * sites + j;
                let b = a + 1;
                // c†_a c_b moves a particle from b to a; its transpose is the h.c. term.
                if bit(s, b, modes) == 1 && bit(s, a, modes) == 0 {
                    let target = s ^ (1 << (modes - 1 - a)) ^ (1 << (modes - 1 - b));
                    let between = (a + 1..b).filter(|&k| bit(s, k, modes) == 1).count();
                    let sign = if between % 2 == 0 { 1.0 } else { -1.0 };
                    h.add_symmetric(target, s, -hopping * sign);
                }
            }
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tfim_two_sites_diagonal() {
        // Hand enumeration of −2 Z₁Z₂ over |00⟩, |01⟩, |10⟩, |11⟩.
        let h = build_tfim(2, 0.0).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| h.get(i, i)).collect();
        assert_eq!(diag, vec![-2.0, 2.0, 2.0, -2.0]);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(h.get(i, j), 0.0);
                }
            }
        }
    }

    #[test]
    fn tfim_two_sites_field() {
        let h = build_tfim(2, 1.0).unwrap();
        // Single flips: 00↔01, 00↔10, 01↔11, 10↔11.
        for (a, b) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert_eq!(h.get(a, b), -1.0);
        }
        assert_eq!(h.get(0, 3), 0.0);
        assert_eq!(h.get(1, 2), 0.0);
    }

    #[test]
    fn tfim_range() {
        assert!(build_tfim(1, 1.0).is_err());
        assert!(build_tfim(13, 1.0).is_err());
    }

    #[test]
    fn hubbard_atomic_limit() {
        let u = 3.0;
        let h = build_hubbard(2, 0.0, u).unwrap();
        for s in 0..16usize {
            let occ = |m: usize| (s >> (3 - m)) & 1;
            let mut e = 0.0;
            for j in 0..2 {
                e += u * (occ(j) as f64 - 0.5) * (occ(2 + j) as f64 - 0.5);
            }
            assert_eq!(h.get(s, s), e);
            for t in 0..16 {
                if t != s {
                    assert_eq!(h.get(s, t), 0.0);
                }
            }
        }
        // |↑↓, 0⟩: doubly occupied site plus an empty one, each U/4.
        let doubly = 0b1010;
        assert_eq!(h.get(doubly, doubly), u / 2.0);
    }

    #[test]
    fn hubbard_range() {
        assert!(build_hubbard(1, 1.0, 1.0).is_err());
        assert!(build_hubbard(6, 1.0, 1.0).is_err());
    }
}
