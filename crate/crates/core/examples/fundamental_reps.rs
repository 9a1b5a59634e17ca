//! Triplet and antitriplet matrices at a point, built two ways.
//!
//! Run with `cargo run --example fundamental_reps`.

use su3_euler::euler::{closed_rep, product_rep, EulerAngles, FundamentalRep};

fn main() -> su3_euler::Result<()> {
    let x = EulerAngles::new(0.4, 0.3, -1.1, 0.9, 2.0, 0.7, -0.5, 1.3);
    for rep in FundamentalRep::ALL {
        let closed = closed_rep(&x, rep);
        println!("D{} at {:?}", rep.name(), x.to_array());
        for i in 0..3 {
            let row: Vec<String> = (0..3).map(|j| format!("{:+.6}", closed.get(i, j))).collect();
            println!("  [{}]", row.join(", "));
        }
        println!(
            "  |closed - product| = {:.2e}, unitarity = {:.2e}, |det - 1| = {:.2e}",
            closed.max_abs_diff(&product_rep(&x, rep))?,
            closed.unitarity_residual(),
            (closed.determinant() - 1.0).norm()
        );
    }
    Ok(())
}
