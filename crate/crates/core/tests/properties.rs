use approx::assert_abs_diff_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use su3_euler::algebra::{gellmann_basis, unitary_exp, ComplexMatrix};
use su3_euler::cli::to_json;
use su3_euler::diffops::{Ladder, LadderKind, Side};
use su3_euler::euler::{adjoint_closed, adjoint_from_conjugation, adjoint_of, closed_rep, product_rep, EulerAngles, FundamentalRep};
use su3_euler::haar::{inner_product, translated_element, Integrand, QuadratureSpec, exact_volume};
use su3_euler::irreps::{default_action_table, generate_irrep, IrrepLabel};
use su3_euler::poly::{FundamentalSymbol, PolyState};

fn angles() -> impl Strategy<Value = EulerAngles> {
    prop::array::uniform8(-7.0f64..7.0).prop_map(EulerAngles::from_array)
}

fn symbol() -> impl Strategy<Value = FundamentalSymbol> {
    (0u8..18).prop_map(FundamentalSymbol::from_index)
}

fn rep() -> impl Strategy<Value = FundamentalRep> {
    prop_oneof![Just(FundamentalRep::Three), Just(FundamentalRep::ThreeStar)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_product(x in angles(), r in rep()) {
        let closed = closed_rep(&x, r);
        prop_assert!(closed.max_abs_diff(&product_rep(&x, r)).unwrap() < 1e-12);
        prop_assert!(closed.unitarity_residual() < 1e-12);
        prop_assert!((closed.determinant() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn three_star_is_literal_sign_flip(x in angles()) {
        let flipped = EulerAngles::from_array(x.to_array().map(|v| -v));
        let a = closed_rep(&x, FundamentalRep::ThreeStar);
        let b = closed_rep(&flipped, FundamentalRep::Three);
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }

    #[test]
    fn adjoint_routes_agree_and_are_rotations(x in angles()) {
        let r = adjoint_closed(&x);
        prop_assert!(r.max_abs_diff(&adjoint_from_conjugation(&x)) < 1e-10);
        prop_assert!(r.orthogonality_residual() < 1e-10);
        prop_assert!((r.determinant() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn adjoint_reverses_products(x in angles(), y in angles()) {
        let u = product_rep(&x, FundamentalRep::Three).conjugate();
        let v = product_rep(&y, FundamentalRep::Three).conjugate();
        let direct = adjoint_of(&u.checked_mul(&v).unwrap());
        prop_assert!(direct.max_abs_diff(&adjoint_closed(&y).compose(&adjoint_closed(&x))) < 1e-10);
    }

    #[test]
    fn exponential_of_traceless_hermitian_is_special_unitary(
        coeffs in prop::array::uniform8(-1.0f64..1.0),
        angle in -4.0f64..4.0,
    ) {
        let basis = gellmann_basis();
        let mut g = ComplexMatrix::zeros(3);
        for (k, c) in coeffs.iter().enumerate() {
            g = &g + &basis.lambda(k + 1).scale(Complex64::new(*c, 0.0));
        }
        let u = unitary_exp(&g, angle).unwrap();
        prop_assert!(u.unitarity_residual() < 1e-12);
        prop_assert!((u.determinant() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn monomial_weights_add(syms in prop::collection::vec(symbol(), 1..5)) {
        let state = PolyState::monomial(&syms);
        let row = syms.iter().map(|s| s.row_weight()).reduce(|a, b| a + b).unwrap();
        let col = syms.iter().map(|s| s.col_weight()).reduce(|a, b| a + b).unwrap();
        prop_assert_eq!(state.row_weight(), Some(row));
        prop_assert_eq!(state.col_weight(), Some(col));
    }

    #[test]
    fn ladders_shift_weights(syms in prop::collection::vec(symbol(), 1..4), k in 0usize..6, right in any::<bool>()) {
        let table = default_action_table().unwrap();
        let kind = [Ladder::TPlus, Ladder::TMinus, Ladder::UPlus, Ladder::UMinus, Ladder::VPlus, Ladder::VMinus][k];
        let side = if right { Side::Right } else { Side::Left };
        let state = PolyState::monomial(&syms);
        let image = table.apply(LadderKind { kind, side }, &state);
        if !image.is_empty() {
            let (before, after) = if right {
                (state.col_weight().unwrap(), image.col_weight().unwrap())
            } else {
                (state.row_weight().unwrap(), image.row_weight().unwrap())
            };
            prop_assert_eq!(after, before.shifted(kind.shift()));
        }
    }

    #[test]
    fn polynomial_evaluation_matches_matrices(syms in prop::collection::vec(symbol(), 1..4), x in angles()) {
        let value = PolyState::monomial(&syms).eval(&x);
        let direct: Complex64 = syms
            .iter()
            .map(|s| closed_rep(&x, s.rep).get(s.row as usize, s.col as usize))
            .product();
        prop_assert!((value - direct).norm() < 1e-12);
    }

    #[test]
    fn json_floats_round_trip(v in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..8)) {
        let text = to_json(&v).unwrap();
        // serde_json's default float parser is not correctly rounded, so parse the digits directly
        let back: Vec<f64> = text.trim().trim_matches(['[', ']']).split(',').map(|s| s.parse().unwrap()).collect();
        prop_assert_eq!(back, v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn haar_inner_products_are_translation_invariant(
        h in prop::array::uniform8(0.0f64..1.5).prop_map(EulerAngles::from_array),
        i in 0usize..9,
        j in 0usize..9,
        left in any::<bool>(),
    ) {
        let spec = QuadratureSpec::default();
        let f = translated_element(FundamentalRep::Three, i / 3, i % 3, &h, left);
        let g = translated_element(FundamentalRep::Three, j / 3, j % 3, &h, left);
        let value = inner_product(Integrand::from(&f), Integrand::from(&g), &spec).unwrap();
        let expected = if i == j { exact_volume() / 3.0 } else { 0.0 };
        prop_assert!((value - expected).norm() < 1e-10 * exact_volume());
    }

    #[test]
    fn octet_matrices_are_unitary(x in angles()) {
        let octet = generate_irrep(IrrepLabel::new(1, 1)).unwrap();
        let m = octet.full_matrix().unwrap();
        let d = nalgebra::DMatrix::from_fn(8, 8, |r, c| m[r][c].eval(&x));
        let residual = (&d * d.adjoint() - nalgebra::DMatrix::identity(8, 8)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(residual < 1e-12);
    }
}

#[test]
fn identity_gives_identity_matrices() {
    for r in FundamentalRep::ALL {
        let m = closed_rep(&EulerAngles::identity(), r);
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!(m.get(i, j).re, if i == j { 1.0 } else { 0.0 }, epsilon = 1e-15);
                assert_abs_diff_eq!(m.get(i, j).im, 0.0, epsilon = 1e-15);
            }
        }
    }
}
