//! The eight states of the adjoint irrep (1,1) and its center isospin split.
//!
//! Run with `cargo run --example octet`.

use su3_euler::haar::QuadratureSpec;
use su3_euler::irreps::{generate_irrep, IrrepLabel};
use su3_euler::verify::{functional_mismatch, octet_center};

fn main() -> su3_euler::Result<()> {
    let octet = generate_irrep(IrrepLabel::new(1, 1))?;
    for st in &octet.states {
        println!("{}: {}", st.weight, st.state);
    }

    let order = QuadratureSpec::default().gauss_order;
    let (_, singlet) = octet_center();
    let center = octet.states.iter().find(|s| s.weight.t2 == 0).expect("octet has a singlet");
    println!(
        "singlet vs difference of center monomials: mismatch {:.2e}",
        functional_mismatch(&center.state, &singlet, order)
    );
    Ok(())
}
