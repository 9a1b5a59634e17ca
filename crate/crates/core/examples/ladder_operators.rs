//! Left and right ladder operators as differential operators in the angles.
//!
//! Run with `cargo run --example ladder_operators`.

use num_complex::Complex64;
use su3_euler::diffops::{apply, build_operator, commutator_residual, probe_points, DiffOperator, Ladder, LadderKind, ScalarField, Side, DEFAULT_STEP};
use su3_euler::euler::FundamentalRep;
use su3_euler::irreps::default_action_table;
use su3_euler::poly::FundamentalSymbol;

fn main() -> su3_euler::Result<()> {
    let x = probe_points(1, 11)[0];
    let f = ScalarField::fundamental(FundamentalRep::Three, 0, 0);
    for kind in [Ladder::T3, Ladder::Y] {
        for side in [Side::Left, Side::Right] {
            let op = build_operator(LadderKind { kind, side });
            let ratio = apply(&op, &f, &x, DEFAULT_STEP)? / f.eval(&x)?;
            println!("{:>4} on {}: eigenvalue {:+.8}", LadderKind { kind, side }.name(), f.descriptor(), ratio.re);
        }
    }

    let probes: Vec<_> = probe_points(8, 3)
        .into_iter()
        .map(|p| (ScalarField::fundamental(FundamentalRep::ThreeStar, 1, 2), p))
        .collect();
    for side in [Side::Left, Side::Right] {
        let t3 = build_operator(LadderKind { kind: Ladder::T3, side });
        let expected = DiffOperator::linear_combination("2T3", &[(Complex64::new(2.0, 0.0), &t3)]);
        let up = build_operator(LadderKind { kind: Ladder::TPlus, side });
        let down = build_operator(LadderKind { kind: Ladder::TMinus, side });
        println!("[T+, T-] - 2T3 ({side:?}): {:.2e}", commutator_residual(&up, &down, &expected, &probes, DEFAULT_STEP)?);
    }

    // The same operators, fitted once into an exact action on matrix-element symbols.
    let table = default_action_table()?;
    println!("action table fit residual {:.2e}", table.max_residual());
    let sym = FundamentalSymbol::new(FundamentalRep::Three, 0, 0);
    for kind in [Ladder::TMinus, Ladder::UMinus, Ladder::VMinus] {
        let image: Vec<String> = table
            .image(LadderKind::left(kind), sym)
            .iter()
            .map(|(i, c)| format!("{:+.3}·{}", c.re, FundamentalSymbol::from_index(*i)))
            .collect();
        println!("{} {} = {}", LadderKind::left(kind).name(), sym, image.join(" "));
    }
    Ok(())
}
