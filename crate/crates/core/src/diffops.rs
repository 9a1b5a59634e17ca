//! Left and right ladder operators as first-order differential operators.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{closed_entries, EulerAngles, FundamentalRep};

/// Default finite-difference step in radians.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Points closer than this many steps to a coordinate singularity are rejected.
pub const GUARD_STEPS: f64 = 4.0;

type FieldFn = dyn Fn(&EulerAngles) -> Result<Complex64> + Send + Sync;

/// A complex-valued function on the group, with a human-readable descriptor.
#[derive(Clone)]
pub struct ScalarField {
    eval: Arc<FieldFn>,
    descriptor: String,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField").field("descriptor", &self.descriptor).finish()
    }
}

impl ScalarField {
    pub fn new(
        descriptor: impl Into<String>,
        eval: impl Fn(&EulerAngles) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        Self { eval: Arc::new(eval), descriptor: descriptor.into() }
    }

    /// Wraps an infallible closure.
    pub fn from_fn(
        descriptor: impl Into<String>,
        f: impl Fn(&EulerAngles) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(descriptor, move |x| Ok(f(x)))
    }

    pub fn constant(value: Complex64) -> Self {
        Self::from_fn(format!("constant {value}"), move |_| value)
    }

    /// Matrix element (row, col) of a fundamental representation.
    pub fn fundamental(rep: FundamentalRep, row: usize, col: usize) -> Self {
        Self::from_fn(format!("{} element ({row},{col})", rep.name()), move |x| {
            closed_entries(x, rep)[row][col]
        })
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Evaluates the field, rejecting non-finite values.
    pub fn eval(&self, at: &EulerAngles) -> Result<Complex64> {
        let v = (self.eval)(at)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { descriptor: self.descriptor.clone() })
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let inner = self.clone();
        Self::new(format!("{factor} * {}", self.descriptor), move |x| Ok(factor * inner.eval(x)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ladder {
    TPlus,
    TMinus,
    UPlus,
    UMinus,
    VPlus,
    VMinus,
    T3,
    Y,
}

impl Ladder {
    pub const ALL: [Ladder; 8] = [
        Ladder::TPlus,
        Ladder::TMinus,
        Ladder::UPlus,
        Ladder::UMinus,
        Ladder::VPlus,
        Ladder::VMinus,
        Ladder::T3,
        Ladder::Y,
    ];

    /// Weight shift (2·Δt3, 3·Δy) produced by the operator.
    pub fn shift(self) -> (i32, i32) {
        match self {
            Ladder::TPlus => (2, 0),
            Ladder::TMinus => (-2, 0),
            Ladder::UPlus => (-1, 3),
            Ladder::UMinus => (1, -3),
            Ladder::VPlus => (1, 3),
            Ladder::VMinus => (-1, -3),
            Ladder::T3 | Ladder::Y => (0, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ladder::TPlus => "T+",
            Ladder::TMinus => "T-",
            Ladder::UPlus => "U+",
            Ladder::UMinus => "U-",
            Ladder::VPlus => "V+",
            Ladder::VMinus => "V-",
            Ladder::T3 => "T3",
            Ladder::Y => "Y",
        }
    }
}

/// One of the sixteen operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LadderKind {
    pub kind: Ladder,
    pub side: Side,
}

impl LadderKind {
    pub const fn left(kind: Ladder) -> Self {
        Self { kind, side: Side::Left }
    }

    pub const fn right(kind: Ladder) -> Self {
        Self { kind, side: Side::Right }
    }

    pub fn all() -> impl Iterator<Item = LadderKind> {
        [Side::Left, Side::Right]
            .into_iter()
            .flat_map(|side| Ladder::ALL.into_iter().map(move |kind| LadderKind { kind, side }))
    }

    /// Dense index in 0..16.
    pub fn index(self) -> usize {
        let k = Ladder::ALL.iter().position(|&l| l == self.kind).unwrap_or(0);
        k + if self.side == Side::Right { 8 } else { 0 }
    }

    pub fn name(self) -> String {
        match self.side {
            Side::Left => self.kind.name().to_string(),
            Side::Right => format!("{}r", self.kind.name()),
        }
    }
}

/// A first-order term `coefficient * ∂axis`.
#[derive(Debug, Clone)]
pub struct Term {
    pub coefficient: ScalarField,
    /// 1..=8 for α, β, γ, θ, a, b, c, φ.
    pub axis: usize,
}

/// `coefficient * Y8` where Y8 is another operator applied to the same field.
#[derive(Debug, Clone)]
pub struct Y8Coupling {
    pub coefficient: ScalarField,
    pub operator: Arc<DiffOperator>,
}

#[derive(Debug, Clone)]
pub struct DiffOperator {
    pub name: String,
    pub first_order_terms: Vec<Term>,
    pub zeroth_order: Option<ScalarField>,
    pub y8_coupling: Vec<Y8Coupling>,
    /// Axes whose coordinate singularities (multiples of π/2) must be avoided.
    pub singular_axes: Vec<usize>,
}

impl DiffOperator {
    pub fn zero(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            first_order_terms: Vec::new(),
            zeroth_order: None,
            y8_coupling: Vec::new(),
            singular_axes: Vec::new(),
        }
    }

    /// Σ weight·operator.
    pub fn linear_combination(name: impl Into<String>, parts: &[(Complex64, &DiffOperator)]) -> Self {
        let mut out = Self::zero(name);
        for (w, op) in parts {
            out.first_order_terms.extend(op.first_order_terms.iter().map(|t| Term {
                coefficient: t.coefficient.scaled(*w),
                axis: t.axis,
            }));
            if let Some(z) = &op.zeroth_order {
                let z = z.scaled(*w);
                out.zeroth_order = Some(match out.zeroth_order.take() {
                    None => z,
                    Some(prev) => ScalarField::new("sum", move |x| Ok(prev.eval(x)? + z.eval(x)?)),
                });
            }
            out.y8_coupling.extend(op.y8_coupling.iter().map(|c| Y8Coupling {
                coefficient: c.coefficient.scaled(*w),
                operator: c.operator.clone(),
            }));
            for &a in &op.singular_axes {
                if !out.singular_axes.contains(&a) {
                    out.singular_axes.push(a);
                }
            }
        }
        out
    }

    fn check_regular(&self, at: &EulerAngles, step: f64) -> Result<()> {
        let v = at.to_array();
        for &axis in &self.singular_axes {
            let x = v[axis - 1];
            let dist = (x - (x / FRAC_PI_2).round() * FRAC_PI_2).abs();
            if dist < GUARD_STEPS * step {
                return Err(Error::Singularity {
                    operator: self.name.clone(),
                    detail: format!("axis {axis} at {x}"),
                });
            }
        }
        Ok(())
    }
}

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

struct Builder {
    name: String,
    terms: Vec<Term>,
}

impl Builder {
    fn new(name: String) -> Self {
        Self { name, terms: Vec::new() }
    }

    fn term(mut self, axis: usize, f: impl Fn(&EulerAngles) -> Complex64 + Send + Sync + 'static) -> Self {
        let descriptor = format!("{} coefficient of d{axis}", self.name);
        self.terms.push(Term { coefficient: ScalarField::from_fn(descriptor, f), axis });
        self
    }

    fn finish(self, singular_axes: &[usize]) -> DiffOperator {
        DiffOperator {
            name: self.name,
            first_order_terms: self.terms,
            zeroth_order: None,
            y8_coupling: Vec::new(),
            singular_axes: singular_axes.to_vec(),
        }
    }
}

fn with_y8(
    mut op: DiffOperator,
    side: Side,
    f: impl Fn(&EulerAngles) -> Complex64 + Send + Sync + 'static,
) -> DiffOperator {
    let descriptor = format!("{} Y8 coefficient", op.name);
    op.y8_coupling.push(Y8Coupling {
        coefficient: ScalarField::from_fn(descriptor, f),
        operator: Arc::new(build_operator(LadderKind { kind: Ladder::Y, side })),
    });
    op
}

/// Builds one of the sixteen operators with its coefficient fields.
pub fn build_operator(which: LadderKind) -> DiffOperator {
    let name = which.name();
    let b = Builder::new(name);
    let r3 = 3f64.sqrt();
    match (which.side, which.kind) {
        (Side::Left, Ladder::T3) => b.term(1, |_| 0.5 * I).finish(&[]),
        (Side::Left, Ladder::Y) => b
            .term(3, |_| I)
            .term(5, |_| -I)
            .term(8, move |_| I / r3)
            .finish(&[]),
        (Side::Left, Ladder::TPlus | Ladder::TMinus) => {
            let s = if which.kind == Ladder::TPlus { 1.0 } else { -1.0 };
            b.term(1, move |x| 0.5 * cis(-2.0 * s * x.alpha) * I * cot(2.0 * x.beta))
                .term(2, move |x| -0.5 * s * cis(-2.0 * s * x.alpha))
                .term(3, move |x| -0.5 * cis(-2.0 * s * x.alpha) * I / (2.0 * x.beta).sin())
                .finish(&[2])
        }
        (Side::Left, Ladder::VPlus | Ladder::VMinus) => {
            let s = if which.kind == Ladder::VPlus { 1.0 } else { -1.0 };
            let p = move |x: &EulerAngles| cis(-s * (x.alpha + x.gamma));
            let q = move |x: &EulerAngles| cis(-s * (x.alpha - x.gamma - 2.0 * x.a));
            let op = b
                .term(1, move |x| {
                    0.5 * I * p(x) * x.beta.sin() / (2.0 * x.beta).sin() * cot(x.theta)
                })
                .term(2, move |x| 0.5 * s * p(x) * x.beta.sin() * cot(x.theta))
                .term(3, move |x| {
                    -0.5 * I * p(x) * cot(2.0 * x.beta) * x.beta.sin() * cot(x.theta)
                        + 0.5 * I * p(x) * (2.0 - x.theta.sin().powi(2)) / (2.0 * x.theta).sin()
                            * x.beta.cos()
                })
                .term(4, move |x| -0.5 * s * p(x) * x.beta.cos())
                .term(5, move |x| {
                    -0.5 * I * p(x) * 2.0 * x.beta.cos() / (2.0 * x.theta).sin()
                        - 0.5 * I * q(x) * cot(2.0 * x.b) / x.theta.sin() * x.beta.sin()
                })
                .term(6, move |x| -0.5 * s * q(x) * x.beta.sin() / x.theta.sin())
                .term(7, move |x| {
                    0.5 * I * q(x) * x.beta.sin() / (x.theta.sin() * (2.0 * x.b).sin())
                })
                .finish(&[2, 4, 6]);
            with_y8(op, Side::Left, move |x| -0.75 * p(x) * x.theta.tan() * x.beta.cos())
        }
        (Side::Left, Ladder::UPlus | Ladder::UMinus) => {
            let s = if which.kind == Ladder::UPlus { 1.0 } else { -1.0 };
            let p = move |x: &EulerAngles| cis(s * (x.alpha - x.gamma));
            let q = move |x: &EulerAngles| cis(s * (x.alpha + x.gamma + 2.0 * x.a));
            let op = b
                .term(1, move |x| {
                    0.5 * I * p(x) * x.beta.cos() / (2.0 * x.beta).sin() * cot(x.theta)
                })
                .term(2, move |x| 0.5 * s * p(x) * x.beta.cos() * cot(x.theta))
                .term(3, move |x| {
                    -0.5 * I * p(x) * cot(2.0 * x.beta) * x.beta.cos() * cot(x.theta)
                        - 0.5 * I * p(x) * (2.0 - x.theta.sin().powi(2)) / (2.0 * x.theta).sin()
                            * x.beta.sin()
                })
                .term(4, move |x| 0.5 * s * p(x) * x.beta.sin())
                .term(5, move |x| {
                    0.5 * I * p(x) * 2.0 * x.beta.sin() / (2.0 * x.theta).sin()
                        - 0.5 * I * q(x) * cot(2.0 * x.b) / x.theta.sin() * x.beta.cos()
                })
                .term(6, move |x| -0.5 * s * q(x) * x.beta.cos() / x.theta.sin())
                .term(7, move |x| {
                    0.5 * I * q(x) * x.beta.cos() / (x.theta.sin() * (2.0 * x.b).sin())
                })
                .finish(&[2, 4, 6]);
            with_y8(op, Side::Left, move |x| 0.75 * p(x) * x.theta.tan() * x.beta.sin())
        }
        (Side::Right, Ladder::T3) => b.term(7, |_| 0.5 * I).finish(&[]),
        (Side::Right, Ladder::Y) => b.term(8, move |_| I / r3).finish(&[]),
        (Side::Right, Ladder::TPlus | Ladder::TMinus) => {
            // s = +1 for T-r, whose phase is e^{2ic}.
            let s = if which.kind == Ladder::TMinus { 1.0 } else { -1.0 };
            b.term(7, move |x| -0.5 * I * cis(2.0 * s * x.c) * cot(2.0 * x.b))
                .term(6, move |x| -0.5 * s * cis(2.0 * s * x.c))
                .term(5, move |x| 0.5 * I * cis(2.0 * s * x.c) / (2.0 * x.b).sin())
                .finish(&[6])
        }
        (Side::Right, Ladder::VPlus | Ladder::VMinus) => {
            // s = +1 for V-r.
            let s = if which.kind == Ladder::VMinus { 1.0 } else { -1.0 };
            let p = move |x: &EulerAngles| cis(s * (x.c + x.a + 3.0 * x.eta()));
            let q = move |x: &EulerAngles| cis(s * (x.c - x.a - 2.0 * x.gamma + 3.0 * x.eta()));
            let op = b
                .term(7, move |x| {
                    -0.5 * I * p(x) * x.b.sin() / (2.0 * x.b).sin() * cot(x.theta)
                })
                .term(6, move |x| 0.5 * s * p(x) * x.b.sin() * cot(x.theta))
                .term(5, move |x| {
                    0.5 * I * p(x) * cot(2.0 * x.b) * x.b.sin() * cot(x.theta)
                        - 0.5 * I * p(x) * (2.0 - x.theta.sin().powi(2)) / (2.0 * x.theta).sin()
                            * x.b.cos()
                })
                .term(4, move |x| -0.5 * s * p(x) * x.b.cos())
                .term(3, move |x| {
                    0.5 * I * p(x) * 2.0 * x.b.cos() / (2.0 * x.theta).sin()
                        + 0.5 * I * q(x) * cot(2.0 * x.beta) / x.theta.sin() * x.b.sin()
                })
                .term(2, move |x| -0.5 * s * q(x) * x.b.sin() / x.theta.sin())
                .term(1, move |x| {
                    -0.5 * I * q(x) * x.b.sin() / (x.theta.sin() * (2.0 * x.beta).sin())
                })
                .finish(&[2, 4, 6]);
            with_y8(op, Side::Right, move |x| 0.75 * p(x) * x.theta.tan() * x.b.cos())
        }
        (Side::Right, Ladder::UPlus | Ladder::UMinus) => {
            // s = +1 for U-r.
            let s = if which.kind == Ladder::UMinus { 1.0 } else { -1.0 };
            let p = move |x: &EulerAngles| cis(-s * (x.c - x.a - 3.0 * x.eta()));
            let q = move |x: &EulerAngles| cis(-s * (x.c + x.a + 2.0 * x.gamma - 3.0 * x.eta()));
            let op = b
                .term(7, move |x| {
                    0.5 * I * p(x) * x.b.cos() / (2.0 * x.b).sin() * cot(x.theta)
                })
                .term(6, move |x| -0.5 * s * p(x) * x.b.cos() * cot(x.theta))
                .term(5, move |x| {
                    -0.5 * I * p(x) * cot(2.0 * x.b) * x.b.cos() * cot(x.theta)
                        - 0.5 * I * p(x) * (2.0 - x.theta.sin().powi(2)) / (2.0 * x.theta).sin()
                            * x.b.sin()
                })
                .term(4, move |x| -0.5 * s * p(x) * x.b.sin())
                .term(3, move |x| {
                    0.5 * I * p(x) * 2.0 * x.b.sin() / (2.0 * x.theta).sin()
                        - 0.5 * I * q(x) * cot(2.0 * x.beta) / x.theta.sin() * x.b.cos()
                })
                .term(2, move |x| 0.5 * s * q(x) * x.b.cos() / x.theta.sin())
                .term(1, move |x| {
                    0.5 * I * q(x) * x.b.cos() / (x.theta.sin() * (2.0 * x.beta).sin())
                })
                .finish(&[2, 4, 6]);
            with_y8(op, Side::Right, move |x| 0.75 * p(x) * x.theta.tan() * x.b.sin())
        }
    }
}

/// Fourth-order central difference along `axis`, Richardson-extrapolated over h and h/2.
fn partial(f: &ScalarField, axis: usize, at: &EulerAngles, h: f64) -> Result<Complex64> {
    let stencil = |h: f64| -> Result<Complex64> {
        let fp2 = f.eval(&at.shifted(axis, 2.0 * h))?;
        let fp1 = f.eval(&at.shifted(axis, h))?;
        let fm1 = f.eval(&at.shifted(axis, -h))?;
        let fm2 = f.eval(&at.shifted(axis, -2.0 * h))?;
        Ok((-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h))
    };
    let coarse = stencil(h)?;
    let fine = stencil(0.5 * h)?;
    Ok((16.0 * fine - coarse) / 15.0)
}

/// Applies `op` to `f` at one point by finite differences.
pub fn apply(op: &DiffOperator, f: &ScalarField, at: &EulerAngles, step: f64) -> Result<Complex64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::Config(format!("finite-difference step must be positive, got {step}")));
    }
    op.check_regular(at, step)?;
    let mut cache: [Option<Complex64>; 8] = [None; 8];
    let mut total = Complex64::new(0.0, 0.0);
    for term in &op.first_order_terms {
        let d = match cache[term.axis - 1] {
            Some(d) => d,
            None => {
                let d = partial(f, term.axis, at, step)?;
                cache[term.axis - 1] = Some(d);
                d
            }
        };
        total += term.coefficient.eval(at)? * d;
    }
    if let Some(z) = &op.zeroth_order {
        total += z.eval(at)? * f.eval(at)?;
    }
    for y8 in &op.y8_coupling {
        total += y8.coefficient.eval(at)? * apply(&y8.operator, f, at, step)?;
    }
    if !(total.re.is_finite() && total.im.is_finite()) {
        return Err(Error::NonFinite { descriptor: format!("{} applied to {}", op.name, f.descriptor) });
    }
    Ok(total)
}

/// The field x ↦ (op f)(x), for nesting operator applications.
pub fn applied_field(op: &DiffOperator, f: &ScalarField, step: f64) -> ScalarField {
    let op = op.clone();
    let inner = f.clone();
    let descriptor = format!("{} ({})", op.name, f.descriptor);
    ScalarField::new(descriptor, move |x| apply(&op, &inner, x, step))
}

/// max over probes of |(op1 op2 - op2 op1 - expected) f| by nested differences.
pub fn commutator_residual(
    op1: &DiffOperator,
    op2: &DiffOperator,
    expected: &DiffOperator,
    probes: &[(ScalarField, EulerAngles)],
    step: f64,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (f, at) in probes {
        let a = apply(op1, &applied_field(op2, f, step), at, step)?;
        let b = apply(op2, &applied_field(op1, f, step), at, step)?;
        let e = apply(expected, f, at, step)?;
        worst = worst.max((a - b - e).norm());
    }
    Ok(worst)
}

/// Seeded probe points drawn from [0.2, hi - 0.2] on every canonical range.
pub fn probe_points(count: usize, seed: u64) -> Vec<EulerAngles> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut v = [0.0; 8];
            for (x, &(lo, hi)) in v.iter_mut().zip(EulerAngles::RANGES.iter()) {
                *x = rng.random_range(lo + 0.2..hi - 0.2);
            }
            EulerAngles::from_array(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn left(kind: Ladder) -> DiffOperator {
        build_operator(LadderKind::left(kind))
    }

    fn right(kind: Ladder) -> DiffOperator {
        build_operator(LadderKind::right(kind))
    }

    #[test]
    fn kinds_are_indexed_densely() {
        let idx: Vec<usize> = LadderKind::all().map(LadderKind::index).collect();
        assert_eq!(idx, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn simple_operator_shapes() {
        let t3 = left(Ladder::T3);
        assert_eq!(t3.first_order_terms.len(), 1);
        assert_eq!(t3.first_order_terms[0].axis, 1);
        let x = EulerAngles::identity();
        assert_eq!(t3.first_order_terms[0].coefficient.eval(&x).unwrap(), c(0.0, 0.5));

        let yr = right(Ladder::Y);
        assert_eq!(yr.first_order_terms.len(), 1);
        assert_eq!(yr.first_order_terms[0].axis, 8);
        let v = yr.first_order_terms[0].coefficient.eval(&x).unwrap();
        assert!((v - c(0.0, 1.0 / 3f64.sqrt())).norm() < 1e-15);
    }

    #[test]
    fn t_plus_coefficients() {
        let op = left(Ladder::TPlus);
        let x = probe_points(1, 3)[0];
        let ph = cis(-2.0 * x.alpha);
        let expected = [
            (1, 0.5 * I * ph * cot(2.0 * x.beta)),
            (2, -0.5 * ph),
            (3, -0.5 * I * ph / (2.0 * x.beta).sin()),
        ];
        assert_eq!(op.first_order_terms.len(), 3);
        for (term, (axis, v)) in op.first_order_terms.iter().zip(expected) {
            assert_eq!(term.axis, axis);
            assert!((term.coefficient.eval(&x).unwrap() - v).norm() < 1e-15);
        }
    }

    #[test]
    fn t3_and_y_eigenvalues_on_fundamental_elements() {
        let x = probe_points(1, 5)[0];
        let e = ScalarField::fundamental(FundamentalRep::Three, 0, 0);
        let v = apply(&left(Ladder::T3), &e, &x, DEFAULT_STEP).unwrap();
        assert!((v - 0.5 * e.eval(&x).unwrap()).norm() < 1e-9);
        let e = ScalarField::fundamental(FundamentalRep::Three, 2, 2);
        let v = apply(&left(Ladder::Y), &e, &x, DEFAULT_STEP).unwrap();
        assert!((v + 2.0 / 3.0 * e.eval(&x).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn highest_element_is_annihilated_by_t_plus() {
        let e = ScalarField::fundamental(FundamentalRep::Three, 0, 0);
        for x in probe_points(5, 6) {
            let v = apply(&left(Ladder::TPlus), &e, &x, DEFAULT_STEP).unwrap();
            assert!(v.norm() < 1e-9);
        }
    }

    #[test]
    fn singular_points_are_rejected() {
        let e = ScalarField::fundamental(FundamentalRep::Three, 0, 0);
        let mut x = probe_points(1, 7)[0];
        x.beta = 1e-3;
        let err = apply(&left(Ladder::TPlus), &e, &x, DEFAULT_STEP).unwrap_err();
        assert!(matches!(err, Error::Singularity { .. }));
        // T3 has constant coefficients and works anywhere.
        assert!(apply(&left(Ladder::T3), &e, &x, DEFAULT_STEP).is_ok());
    }

    #[test]
    fn non_finite_fields_are_reported() {
        let f = ScalarField::from_fn("nan", |_| c(f64::NAN, 0.0));
        let x = probe_points(1, 8)[0];
        let err = apply(&left(Ladder::T3), &f, &x, DEFAULT_STEP).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn su2_commutators_both_sides() {
        let pts = probe_points(3, 9);
        let probes: Vec<_> = pts
            .iter()
            .enumerate()
            .map(|(k, x)| (ScalarField::fundamental(FundamentalRep::Three, k % 3, (k + 1) % 3), *x))
            .collect();
        for side in [Side::Left, Side::Right] {
            let op = |k| build_operator(LadderKind { kind: k, side });
            let t3 = op(Ladder::T3);
            let two_t3 = DiffOperator::linear_combination("2T3", &[(c(2.0, 0.0), &t3)]);
            let r = commutator_residual(&op(Ladder::TPlus), &op(Ladder::TMinus), &two_t3, &probes, DEFAULT_STEP)
                .unwrap();
            assert!(r < 1e-5, "{side:?}: {r:e}");
        }
        let zero = DiffOperator::zero("0");
        let r = commutator_residual(&left(Ladder::T3), &right(Ladder::T3), &zero, &probes, DEFAULT_STEP).unwrap();
        assert!(r < 1e-5);
    }
}
