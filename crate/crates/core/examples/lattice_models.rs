//! Exact diagonalization of the two lattice benchmarks and the resulting
//! spectral models.
//!
//! ```bash
//! cargo run -p qmegs --example lattice_models
//! ```

use qmegs::spectrum::{build_hubbard, build_tfim, gap_report, model_from_hamiltonian};

fn main() -> qmegs::Result<()> {
    let tfim = build_tfim(8, 4.0)?;
    let model = model_from_hamiltonian(&tfim, &[0.4, 0.4], 7)?;
    let g = gap_report(&model);
    println!("TFIM L=8 g=4: dim {}, lowest {:?}", tfim.dim(), &model.eigenvalues()[..3]);
    println!("  delta_dom = {:.5}, delta = {:.5}", g.delta_dom, g.delta);

    let hubbard = build_hubbard(4, 1.0, 10.0)?;
    let model = model_from_hamiltonian(&hubbard, &[0.4, 0.4], 7)?;
    let g = gap_report(&model);
    println!("Hubbard L=4 U=10: dim {}, lowest {:?}", hubbard.dim(), &model.eigenvalues()[..3]);
    println!("  delta_dom = {:.5}, delta = {:.5}", g.delta_dom, g.delta);
    Ok(())
}
