//! Product decomposition and coupling coefficients, checked against the Casimir route.
//!
//! Run with `cargo run --release --example clebsch_gordan -- 1,1 1,1`.

use su3_euler::cg::{cg_suite, wcg_coefficients, CgConfig};
use su3_euler::cli::parse_label;
use su3_euler::irreps::IrrepLabel;

fn main() -> su3_euler::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = match args.as_slice() {
        [a, b] => (parse_label(a)?, parse_label(b)?),
        _ => (IrrepLabel::new(1, 0), IrrepLabel::new(0, 1)),
    };
    let report = cg_suite(a, b, &CgConfig::default(), 1)?;
    let parts: Vec<String> = report
        .decomposition
        .iter()
        .map(|(l, m)| if *m == 1 { l.to_string() } else { format!("{m}·{l}") })
        .collect();
    println!("{a} ⊗ {b} = {}", parts.join(" ⊕ "));
    println!("unitarity {:.2e}", report.unitarity_residual);
    println!("Haar vs Casimir {:.2e}", report.oracle_max_diff);
    println!("equivariance {:.2e}", report.equivariance_residual);

    let (target, _) = report.decomposition[0];
    print!("{}", wcg_coefficients(a, b, target, 0)?.to_csv());
    Ok(())
}
