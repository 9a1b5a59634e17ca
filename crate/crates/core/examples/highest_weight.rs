//! Highest-weight functions and the lowering-operator construction of a basis.
//!
//! Run with `cargo run --example highest_weight -- 2 1`.

use su3_euler::diffops::{Ladder, LadderKind};
use su3_euler::irreps::{generate_irrep, highest_weight, ladder_action, IrrepLabel};

fn main() -> su3_euler::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let label = match args.as_slice() {
        [p, q] => IrrepLabel::new(*p, *q),
        _ => IrrepLabel::new(2, 1),
    };
    let hw = highest_weight(label);
    println!("{label}: dimension {}, highest weight {}", label.dim(), hw.state);
    for kind in [Ladder::TPlus, Ladder::UPlus, Ladder::VPlus] {
        let image = ladder_action(LadderKind::left(kind), &hw.state)?;
        println!("  {} annihilates it: {}", LadderKind::left(kind).name(), image.is_negligible(1e-12));
    }

    let irrep = generate_irrep(label)?;
    for st in &irrep.states {
        println!("  {}  ({} terms)", st.weight, st.state.len());
    }
    Ok(())
}
