//! Group volume and orthogonality of matrix elements under the invariant measure.
//!
//! Run with `cargo run --release --example haar_volume`.

use su3_euler::haar::{exact_volume, group_volume, group_volume_mc, orthogonality_suite, GramState, QuadratureSpec};
use su3_euler::irreps::{generate_irrep, IrrepLabel};

fn main() -> su3_euler::Result<()> {
    let spec = QuadratureSpec::default();
    let v0 = group_volume(&spec)?;
    println!("V0 quadrature  = {v0:.15}");
    println!("V0 closed form = {:.15}", exact_volume());
    let mc = group_volume_mc(&QuadratureSpec::monte_carlo(200_000, 9))?;
    println!("V0 Monte Carlo = {:.4} ± {:.4}", mc.value.re, mc.std_err);

    let mut states = Vec::new();
    for (p, q) in [(1, 0), (0, 1), (1, 1)] {
        let irrep = generate_irrep(IrrepLabel::new(p, q))?;
        for (k, st) in irrep.states.iter().enumerate() {
            states.push(GramState { label: format!("({p},{q})#{k}"), dim: irrep.dim(), state: st.state.clone() });
        }
    }
    let report = orthogonality_suite(&states, &spec)?;
    println!(
        "{} states: max off-diagonal {:.2e}, max diagonal error {:.2e}",
        report.labels.len(),
        report.gram_max_offdiag,
        report.gram_max_diag_err
    );
    Ok(())
}
