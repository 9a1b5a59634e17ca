//! The 8×8 rotation R with U λi U† = Σj Rij λj.
//!
//! Run with `cargo run --example adjoint`.

use su3_euler::algebra::ComplexMatrix;
use su3_euler::euler::{adjoint_closed, adjoint_from_conjugation, adjoint_of, product_rep, EulerAngles, FundamentalRep};

fn main() {
    let x = EulerAngles::new(0.2, 0.5, 0.9, 1.1, -0.3, 0.4, 2.2, 0.8);
    let r = adjoint_closed(&x);
    for i in 1..=8 {
        let row: Vec<String> = (1..=8).map(|j| format!("{:+.4}", r.get(i, j))).collect();
        println!("{}", row.join(" "));
    }
    println!("|closed - conjugation| = {:.2e}", r.max_abs_diff(&adjoint_from_conjugation(&x)));
    println!("|RᵀR - I| = {:.2e}, det = {:.15}", r.orthogonality_residual(), r.determinant());

    // Composition reverses order: R(U1 U2) = R(U2) R(U1).
    let y = EulerAngles::new(1.0, 0.1, -0.4, 0.6, 0.3, 1.2, 0.0, -2.0);
    let lhs = adjoint_of(&product(&x, &y));
    let rhs = adjoint_closed(&y).compose(&adjoint_closed(&x));
    println!("|R(U1U2) - R(U2)R(U1)| = {:.2e}", lhs.max_abs_diff(&rhs));
}

// adjoint_closed is built from the conjugated triplet matrix, so compose those.
fn product(x: &EulerAngles, y: &EulerAngles) -> ComplexMatrix {
    let u = product_rep(x, FundamentalRep::Three).conjugate();
    let v = product_rep(y, FundamentalRep::Three).conjugate();
    u.checked_mul(&v).expect("3x3")
}
