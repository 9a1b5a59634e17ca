//! Hand-worked values checked against the library.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

use num_complex::Complex64;
use su3_euler::algebra::{commutator, gellmann_basis, structure_constants, unitary_exp, ComplexMatrix};
use su3_euler::cg::{tensor_decompose, wcg_coefficients};
use su3_euler::diffops::{apply, build_operator, ScalarField, Ladder, LadderKind, DEFAULT_STEP};
use su3_euler::euler::{adjoint_closed, adjoint_from_conjugation, closed_rep, product_rep, EulerAngles, FundamentalRep};
use su3_euler::haar::{exact_volume, group_volume, inner_product, Integrand, QuadratureSpec};
use su3_euler::irreps::{dimension, generate_irrep, highest_weight, isospin_components, ladder_action, IrrepLabel, WeightLabel};
use su3_euler::poly::{FundamentalSymbol, PolyState, Weight};

const THREE: FundamentalRep = FundamentalRep::Three;
const THREE_STAR: FundamentalRep = FundamentalRep::ThreeStar;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn e(row: u8, col: u8) -> FundamentalSymbol {
    FundamentalSymbol::new(THREE, row, col)
}

fn s(row: u8, col: u8) -> FundamentalSymbol {
    FundamentalSymbol::new(THREE_STAR, row, col)
}

fn at(theta: f64, phi: f64) -> EulerAngles {
    EulerAngles::new(0.0, 0.0, 0.0, theta, 0.0, 0.0, 0.0, phi)
}

#[test]
fn gell_mann_commutators() {
    let l = gellmann_basis();
    let lam = |k| l.lambda(k).clone();
    let c12 = commutator(&lam(1), &lam(2)).unwrap();
    assert!(c12.max_abs_diff(&lam(3).scale(c(0.0, 2.0))).unwrap() < 1e-15);
    let c45 = commutator(&lam(4), &lam(5)).unwrap();
    let expected = (&lam(3) + &lam(8).scale(c(3f64.sqrt(), 0.0))).scale(c(0.0, 1.0));
    assert!(c45.max_abs_diff(&expected).unwrap() < 1e-15);
    let f = structure_constants(&l);
    assert!((f.get(1, 2, 3) - 1.0).abs() < 1e-15);
    assert!(f.get(1, 2, 4).abs() < 1e-15);
    assert!((f.get(4, 5, 8) - 3f64.sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn exponentials_of_diagonal_and_real_generators() {
    let l = gellmann_basis();
    let u = unitary_exp(l.lambda(3), -FRAC_PI_3).unwrap();
    let expected = ComplexMatrix::from_fn(3, |i, j| match (i, j) {
        (0, 0) => Complex64::from_polar(1.0, -FRAC_PI_3),
        (1, 1) => Complex64::from_polar(1.0, FRAC_PI_3),
        (2, 2) => c(1.0, 0.0),
        _ => c(0.0, 0.0),
    });
    assert!(u.max_abs_diff(&expected).unwrap() < 1e-14);

    let r = unitary_exp(l.lambda(2), FRAC_PI_4).unwrap();
    let h = FRAC_PI_4.cos();
    let rot = ComplexMatrix::from_fn(3, |i, j| match (i, j) {
        (0, 0) | (1, 1) => c(h, 0.0),
        (0, 1) => c(h, 0.0),
        (1, 0) => c(-h, 0.0),
        (2, 2) => c(1.0, 0.0),
        _ => c(0.0, 0.0),
    });
    assert!(r.max_abs_diff(&rot).unwrap() < 1e-14);
    assert!(unitary_exp(&ComplexMatrix::zeros(3), 1.0).unwrap().max_abs_diff(&ComplexMatrix::identity(3)).unwrap() < 1e-15);
}

#[test]
fn fundamental_entries_at_special_points() {
    assert!(product_rep(&at(FRAC_PI_2, 0.0), THREE).get(2, 2).norm() < 1e-15);
    let z = closed_rep(&at(FRAC_PI_6, 3f64.sqrt() * FRAC_PI_4), THREE).get(0, 2);
    assert!((z - c(0.0, 0.5)).norm() < 1e-15);
    let z = closed_rep(&at(FRAC_PI_3, 0.0), THREE_STAR).get(2, 2);
    assert!((z - c(0.5, 0.0)).norm() < 1e-15);
}

#[test]
fn adjoint_bottom_row_at_right_angle() {
    let x = at(FRAC_PI_2, 0.0);
    let closed = adjoint_closed(&x);
    let conj = adjoint_from_conjugation(&x);
    assert!((closed.get(8, 8) + 0.5).abs() < 1e-15);
    for j in 1..=8 {
        assert!((closed.get(8, j) - conj.get(8, j)).abs() < 1e-14);
    }
    assert!(adjoint_closed(&EulerAngles::identity()).max_abs_diff(&adjoint_from_conjugation(&EulerAngles::identity())) < 1e-15);
}

#[test]
fn cartan_operators_read_off_weights() {
    let x = EulerAngles::new(0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0);
    let f = ScalarField::fundamental(THREE, 0, 0);
    let t3 = apply(&build_operator(LadderKind::left(Ladder::T3)), &f, &x, DEFAULT_STEP).unwrap();
    assert!((t3 - f.eval(&x).unwrap() * 0.5).norm() < 1e-8);
    let g = ScalarField::fundamental(THREE, 2, 2);
    let y = apply(&build_operator(LadderKind::left(Ladder::Y)), &g, &x, DEFAULT_STEP).unwrap();
    assert!((y - g.eval(&x).unwrap() * (-2.0 / 3.0)).norm() < 1e-8);
    let up = apply(&build_operator(LadderKind::left(Ladder::TPlus)), &f, &x, DEFAULT_STEP).unwrap();
    assert!(up.norm() < 1e-6);
}

#[test]
fn irrep_dimensions() {
    for ((p, q), d) in [((1, 0), 3), ((0, 0), 1), ((1, 1), 8), ((2, 0), 6), ((3, 0), 10), ((2, 2), 27)] {
        assert_eq!(dimension(IrrepLabel::new(p, q)), d);
    }
}

#[test]
fn highest_weights_of_small_irreps() {
    assert_eq!(highest_weight(IrrepLabel::new(1, 0)).state, PolyState::symbol(e(0, 0)));
    assert_eq!(highest_weight(IrrepLabel::new(0, 1)).state, PolyState::symbol(s(2, 2)).scale(c(-1.0, 0.0)));
    assert_eq!(highest_weight(IrrepLabel::new(1, 1)).state, PolyState::monomial(&[e(0, 0), s(2, 2)]));
}

#[test]
fn octet_lowering_chains() {
    let hw = highest_weight(IrrepLabel::new(1, 1)).state;
    let lower = |k, state: &PolyState| ladder_action(LadderKind::left(k), state).unwrap();
    // V- lands on the center weight as a two-term sum
    let v = lower(Ladder::VMinus, &hw);
    let expected = PolyState::monomial(&[e(0, 0), s(0, 2)]).add(&PolyState::monomial(&[e(2, 0), s(2, 2)]));
    assert!(v.max_abs_diff(&expected) < 1e-12);
    let tu = lower(Ladder::TMinus, &lower(Ladder::UMinus, &hw));
    let expected = PolyState::monomial(&[e(0, 0), s(0, 2)]).add(&PolyState::monomial(&[e(1, 0), s(1, 2)]));
    assert!(tu.max_abs_diff(&expected.scale(c(-1.0, 0.0))) < 1e-12);
    for (p, q) in [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (2, 2)] {
        let hw = highest_weight(IrrepLabel::new(p, q)).state;
        for k in [Ladder::TPlus, Ladder::UPlus, Ladder::VPlus] {
            assert!(lower(k, &hw).is_negligible(1e-12), "({p},{q}) {k:?}");
        }
    }
}

#[test]
fn triplet_generates_first_column() {
    let irrep = generate_irrep(IrrepLabel::new(1, 0)).unwrap();
    assert_eq!(irrep.dim(), 3);
    for (row, st) in irrep.states.iter().enumerate() {
        assert!(st.state.max_abs_diff(&PolyState::symbol(e(row as u8, 0))) < 1e-12);
    }
    let trivial = generate_irrep(IrrepLabel::new(0, 0)).unwrap();
    assert_eq!(trivial.states[0].state, PolyState::constant(c(1.0, 0.0)));
}

#[test]
fn isospin_split_of_single_state_is_identity() {
    let state = PolyState::symbol(e(2, 1));
    let out = isospin_components(std::slice::from_ref(&state)).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].0, 0.0);
    assert!(out[0].1.max_abs_diff(&state) < 1e-12);
}

#[test]
fn octet_center_singlet_is_monomial_difference() {
    let m1 = PolyState::monomial(&[e(1, 0), s(1, 2)]);
    let m2 = PolyState::monomial(&[e(0, 0), s(0, 2)]);
    let split = isospin_components(&[m1.clone(), m2.clone()]).unwrap();
    let singlet = split.iter().find(|(t, _)| *t == 0.0).expect("singlet").1.clone();
    let spec = QuadratureSpec::default();
    let overlap = |f: &PolyState, g: &PolyState| inner_product(Integrand::from(f), Integrand::from(g), &spec).unwrap();
    let diff = m1.sub(&m2);
    let cos = overlap(&singlet, &diff).norm() / (overlap(&singlet, &singlet).re * overlap(&diff, &diff).re).sqrt();
    assert!((cos - 1.0).abs() < 1e-10);
}

#[test]
fn haar_volume_and_norms() {
    let spec = QuadratureSpec::default();
    let v0 = exact_volume();
    assert!((v0 - 3f64.sqrt() / 2.0 * PI.powi(5)).abs() < 1e-10);
    assert!((group_volume(&spec).unwrap() - v0).abs() < 1e-10);
    let a = PolyState::symbol(e(0, 0));
    let b = PolyState::symbol(e(1, 2));
    assert!((inner_product(Integrand::from(&a), Integrand::from(&a), &spec).unwrap() - v0 / 3.0).norm() < 1e-10 * v0);
    assert!(inner_product(Integrand::from(&a), Integrand::from(&b), &spec).unwrap().norm() < 1e-10 * v0);
    let octet = generate_irrep(IrrepLabel::new(1, 1)).unwrap();
    for st in &octet.states {
        let n = inner_product(Integrand::from(&st.state), Integrand::from(&st.state), &spec).unwrap();
        assert!((n - v0 / 8.0).norm() < 1e-10 * v0);
    }
}

#[test]
fn small_products_decompose() {
    let l = IrrepLabel::new;
    assert_eq!(tensor_decompose(l(1, 0), l(0, 1)).unwrap(), vec![(l(1, 1), 1), (l(0, 0), 1)]);
    assert_eq!(tensor_decompose(l(1, 0), l(1, 0)).unwrap(), vec![(l(2, 0), 1), (l(0, 1), 1)]);
    assert_eq!(tensor_decompose(l(0, 0), l(2, 1)).unwrap(), vec![(l(2, 1), 1)]);
}

#[test]
fn singlet_in_three_times_antitriplet() {
    let table = wcg_coefficients(IrrepLabel::new(1, 0), IrrepLabel::new(0, 1), IrrepLabel::new(0, 0), 0).unwrap();
    let target = WeightLabel { t2: 0, weight: Weight::new(0, 0) };
    let rows: Vec<f64> = table.entries.iter().filter(|((_, _, w), _)| *w == target).map(|(_, v)| *v).collect();
    assert_eq!(rows.len(), 3);
    for v in rows {
        assert!((v.abs() - 1.0 / 3f64.sqrt()).abs() < 1e-10, "{v}");
    }
}
