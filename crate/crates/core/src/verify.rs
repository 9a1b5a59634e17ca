//! Verification suites, one per module, each a list of measured residuals.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{commutator, gellmann_basis, structure_constants, unitary_exp, ComplexMatrix};
use crate::cg::{cg_suite, wcg_coefficients_with, CgConfig};
use crate::diffops::{apply, build_operator, commutator_residual, probe_points, DiffOperator, Ladder, LadderKind, ScalarField, Side, DEFAULT_STEP};
use crate::error::{Error, Result};
use crate::euler::{adjoint_closed, adjoint_from_conjugation, adjoint_of, closed_rep, product_rep, EulerAngles, FundamentalRep};
use crate::haar::{
    exact_volume, group_volume, group_volume_mc, inner_product, inner_product_mc, orthogonality_suite, poly_to_trig,
    translated_element, trig_inner_product, GramState, Integrand, QuadratureMode, QuadratureSpec,
};
use crate::irreps::{
    casimir, default_action_table, generate_irrep_with, highest_weight, isospin_components_with, GenerationConfig, Irrep,
    IrrepLabel,
};
use crate::poly::{FundamentalSymbol, PolyState, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fundamental,
    Adjoint,
    Diffops,
    Irreps,
    Haar,
    Cg,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Fundamental, Suite::Adjoint, Suite::Diffops, Suite::Irreps, Suite::Haar, Suite::Cg];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fundamental => "fundamental",
            Suite::Adjoint => "adjoint",
            Suite::Diffops => "diffops",
            Suite::Irreps => "irreps",
            Suite::Haar => "haar",
            Suite::Cg => "cg",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    One(Suite),
    All,
}

impl SuiteSelection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::One(s) => vec![s],
            SuiteSelection::All => Suite::ALL.to_vec(),
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(SuiteSelection::All);
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| SuiteSelection::One(x))
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// How a tolerance is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// residual < tolerance; replaced by a global override
    Residual,
    /// deviation in standard errors of a Monte Carlo estimate
    Sigma,
    /// count of mismatches, must be zero
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub gauss_order: usize,
    pub mc_samples: usize,
    pub tol_override: Option<f64>,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

/// Settings shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Replaces every residual tolerance when set.
    pub tol: Option<f64>,
    pub gauss_order: usize,
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        let q = QuadratureSpec::default();
        Self { tol: None, gauss_order: q.gauss_order, mc_samples: q.mc_samples, seed: 0 }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("tolerance must be positive, got {t}")));
            }
        }
        self.separable().validate()?;
        self.monte_carlo().validate()
    }

    pub fn separable(&self) -> QuadratureSpec {
        QuadratureSpec { mode: QuadratureMode::Separable, gauss_order: self.gauss_order, mc_samples: self.mc_samples, seed: self.seed }
    }

    pub fn monte_carlo(&self) -> QuadratureSpec {
        QuadratureSpec { mode: QuadratureMode::MonteCarlo, ..self.separable() }
    }

    fn generation(&self) -> GenerationConfig {
        GenerationConfig { spec: self.separable(), ..GenerationConfig::default() }
    }
}

struct Checks<'a> {
    cfg: &'a VerifyConfig,
    out: Vec<Check>,
}

impl<'a> Checks<'a> {
    fn new(cfg: &'a VerifyConfig) -> Self {
        Self { cfg, out: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, kind: CheckKind, value: Result<f64>, default_tol: f64) {
        let tolerance = match (kind, self.cfg.tol) {
            (CheckKind::Residual, Some(t)) => t,
            _ => default_tol,
        };
        let (residual, error) = match value {
            Ok(r) => (r, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        let passed = error.is_none()
            && match kind {
                CheckKind::Exact => residual == 0.0,
                _ => residual < tolerance,
            };
        self.out.push(Check { name: name.into(), kind, residual, tolerance, passed, error });
    }

    fn residual(&mut self, name: impl Into<String>, value: Result<f64>, tol: f64) {
        self.push(name, CheckKind::Residual, value, tol);
    }

    fn sigma(&mut self, name: impl Into<String>, value: Result<f64>, sigmas: f64) {
        self.push(name, CheckKind::Sigma, value, sigmas);
    }

    fn exact(&mut self, name: impl Into<String>, mismatches: Result<f64>) {
        self.push(name, CheckKind::Exact, mismatches, 0.0);
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport { suite, passed: self.out.iter().all(|c| c.passed), checks: self.out }
    }
}

fn cmax(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

/// Runs the selected suites in a fixed order.
pub fn run(selection: SuiteSelection, cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let suites: Vec<SuiteReport> = selection.suites().into_iter().map(|s| run_suite(s, cfg)).collect();
    Ok(Report {
        seed: cfg.seed,
        gauss_order: cfg.gauss_order,
        mc_samples: cfg.mc_samples,
        tol_override: cfg.tol,
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    match suite {
        Suite::Fundamental => fundamental_suite(cfg),
        Suite::Adjoint => adjoint_suite(cfg),
        Suite::Diffops => diffops_suite(cfg),
        Suite::Irreps => irreps_suite(cfg),
        Suite::Haar => haar_suite(cfg),
        Suite::Cg => cg_verify_suite(cfg),
    }
}

pub fn fundamental_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut c = Checks::new(cfg);
    let basis = gellmann_basis();
    let f = structure_constants(&basis);
    c.residual("structure constants antisymmetry", Ok(f.antisymmetry_residual()), 1e-14);
    let closure = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 1..=8 {
            for j in 1..=8 {
                let lhs = commutator(basis.lambda(i), basis.lambda(j))?;
                let mut rhs = ComplexMatrix::zeros(3);
                for k in 1..=8 {
                    rhs = &rhs + &basis.lambda(k).scale(Complex64::new(0.0, 2.0 * f.get(i, j, k)));
                }
                worst = worst.max(lhs.max_abs_diff(&rhs)?);
            }
        }
        Ok(worst)
    })();
    c.residual("commutators close on the structure constants", closure, 1e-12);
    let exp_check = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for t in [0.3, 1.1, -2.0] {
            let u = unitary_exp(basis.lambda(3), t)?;
            let expected = ComplexMatrix::from_fn(3, |r, col| match (r, col) {
                (0, 0) => Complex64::from_polar(1.0, t),
                (1, 1) => Complex64::from_polar(1.0, -t),
                (2, 2) => Complex64::new(1.0, 0.0),
                _ => Complex64::new(0.0, 0.0),
            });
            worst = worst.max(u.max_abs_diff(&expected)?);
        }
        Ok(worst)
    })();
    c.residual("exp(i t lambda3) is diagonal phases", exp_check, 1e-14);

    let points = EulerAngles::sample(1000, cfg.seed);
    for rep in FundamentalRep::ALL {
        let mut diff: f64 = 0.0;
        let mut unit: f64 = 0.0;
        let mut det: f64 = 0.0;
        let mut err = None;
        for x in &points {
            let closed = closed_rep(x, rep);
            match closed.max_abs_diff(&product_rep(x, rep)) {
                Ok(d) => diff = diff.max(d),
                Err(e) => err = Some(e),
            }
            unit = unit.max(closed.unitarity_residual());
            det = det.max((closed.determinant() - 1.0).norm());
        }
        let name = rep.name();
        c.residual(format!("{name}: closed form vs exponential product"), err.map_or(Ok(diff), Err), 1e-12);
        c.residual(format!("{name}: unitarity"), Ok(unit), 1e-12);
        c.residual(format!("{name}: determinant is one"), Ok(det), 1e-12);
    }
    c.finish(Suite::Fundamental)
}

pub fn adjoint_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut c = Checks::new(cfg);
    let points = EulerAngles::sample(500, cfg.seed.wrapping_add(1));
    let (mut diff, mut orth, mut det): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for x in &points {
        let r = adjoint_closed(x);
        diff = diff.max(r.max_abs_diff(&adjoint_from_conjugation(x)));
        orth = orth.max(r.orthogonality_residual());
        det = det.max((r.determinant() - 1.0).abs());
    }
    c.residual("closed form vs conjugation", Ok(diff), 1e-10);
    c.residual("orthogonality", Ok(orth), 1e-10);
    c.residual("determinant is one", Ok(det), 1e-10);
    // R(U1 U2) = R(U2) R(U1) under the row convention U λi U† = Σ Rij λj.
    let comp = (|| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for pair in points.chunks(2).take(50) {
            let u1 = product_rep(&pair[0], FundamentalRep::Three).conjugate();
            let u2 = product_rep(&pair[1], FundamentalRep::Three).conjugate();
            let r12 = adjoint_of(&u1.checked_mul(&u2)?);
            let composed = adjoint_closed(&pair[1]).compose(&adjoint_closed(&pair[0]));
            worst = worst.max(r12.max_abs_diff(&composed));
        }
        Ok(worst)
    })();
    c.residual("composition reverses order", comp, 1e-10);
    c.finish(Suite::Adjoint)
}

fn op(kind: Ladder, side: Side) -> DiffOperator {
    build_operator(LadderKind { kind, side })
}

pub fn diffops_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut c = Checks::new(cfg);
    let points = probe_points(3, cfg.seed.wrapping_add(2));
    for side in [Side::Left, Side::Right] {
        let side_name = if side == Side::Left { "left" } else { "right" };
        for (kind, label) in [(Ladder::T3, "T3"), (Ladder::Y, "Y")] {
            let o = op(kind, side);
            let value = (|| -> Result<f64> {
                let mut worst: f64 = 0.0;
                for sym in FundamentalSymbol::all() {
                    let w = if side == Side::Left { sym.row_weight() } else { sym.col_weight() };
                    let ev = if kind == Ladder::T3 { w.t3() } else { w.y() };
                    let f = ScalarField::fundamental(sym.rep, sym.row as usize, sym.col as usize);
                    for x in &points {
                        worst = worst.max((apply(&o, &f, x, DEFAULT_STEP)? - f.eval(x)? * ev).norm());
                    }
                }
                Ok(worst)
            })();
            c.residual(format!("{label} {side_name} eigenvalues on fundamental elements"), value, 1e-6);
        }
    }

    let pts = probe_points(20, cfg.seed.wrapping_add(3));
    let probes: Vec<(ScalarField, EulerAngles)> = pts
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let sym = FundamentalSymbol::from_index((k % FundamentalSymbol::COUNT) as u8);
            (ScalarField::fundamental(sym.rep, sym.row as usize, sym.col as usize), *x)
        })
        .collect();
    let cx = |re: f64| Complex64::new(re, 0.0);
    for side in [Side::Left, Side::Right] {
        let side_name = if side == Side::Left { "left" } else { "right" };
        let t3 = op(Ladder::T3, side);
        let y = op(Ladder::Y, side);
        let two_t3 = DiffOperator::linear_combination("2T3", &[(cx(2.0), &t3)]);
        let two_u3 = DiffOperator::linear_combination("2U3", &[(cx(1.5), &y), (cx(-1.0), &t3)]);
        let two_v3 = DiffOperator::linear_combination("2V3", &[(cx(1.5), &y), (cx(1.0), &t3)]);
        for (up, down, expected, label) in [
            (Ladder::TPlus, Ladder::TMinus, &two_t3, "[T+,T-] = 2T3"),
            (Ladder::UPlus, Ladder::UMinus, &two_u3, "[U+,U-] = 2U3"),
            (Ladder::VPlus, Ladder::VMinus, &two_v3, "[V+,V-] = 2V3"),
        ] {
            let r = commutator_residual(&op(up, side), &op(down, side), expected, &probes, DEFAULT_STEP);
            c.residual(format!("{label} ({side_name})"), r, 1e-5);
        }
    }
    let zero = DiffOperator::zero("0");
    let few = &probes[..5];
    for (kind, label) in [(Ladder::TPlus, "T+"), (Ladder::UMinus, "U-"), (Ladder::VPlus, "V+")] {
        let r = commutator_residual(&op(kind, Side::Left), &op(kind, Side::Right), &zero, few, DEFAULT_STEP);
        c.residual(format!("left {label} commutes with right {label}"), r, 1e-5);
    }
    c.finish(Suite::Diffops)
}

/// Labels generated by the irreps suite.
pub const SUITE_IRREPS: [(u32, u32); 15] =
    [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3), (4, 0), (3, 1), (2, 2), (1, 3), (0, 4)];

/// Labels whose highest weights are checked by finite differences.
pub const ANNIHILATION_LABELS: [(u32, u32); 5] = [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1)];

fn sym3(r: u8, c: u8) -> FundamentalSymbol {
    FundamentalSymbol::new(FundamentalRep::Three, r, c)
}

fn sym3b(r: u8, c: u8) -> FundamentalSymbol {
    FundamentalSymbol::new(FundamentalRep::ThreeStar, r, c)
}

/// Outer octet states as products of one Three and one ThreeStar element, with
/// the weight each sits at.
pub fn octet_hexagon() -> [(&'static str, Weight, PolyState); 6] {
    let m = |a: FundamentalSymbol, b: FundamentalSymbol| PolyState::monomial(&[a, b]);
    [
        ("highest weight", Weight::new(1, 3), m(sym3(0, 0), sym3b(2, 2))),
        ("U-", Weight::new(2, 0), m(sym3(0, 0), sym3b(1, 2))),
        ("V-U-", Weight::new(1, -3), m(sym3(2, 0), sym3b(1, 2))),
        ("T-V-U-", Weight::new(-1, -3), m(sym3(2, 0), sym3b(0, 2))),
        ("U+T-V-U-", Weight::new(-2, 0), m(sym3(1, 0), sym3b(0, 2))),
        ("V+U+T-V-U-", Weight::new(-1, 3), m(sym3(1, 0), sym3b(2, 2))),
    ]
}

/// Center octet combinations: (isospin triplet member, isospin singlet).
pub fn octet_center() -> (PolyState, PolyState) {
    let m1 = PolyState::monomial(&[sym3(1, 0), sym3b(1, 2)]);
    let m2 = PolyState::monomial(&[sym3(0, 0), sym3b(0, 2)]);
    (m1.clone(), m1.sub(&m2))
}

/// ||f - c g|| / ||f|| with the best scalar c, in the Haar norm.
pub fn functional_mismatch(f: &PolyState, g: &PolyState, gauss_order: usize) -> f64 {
    let (tf, tg) = (poly_to_trig(f), poly_to_trig(g));
    let gg = trig_inner_product(&tg, &tg, gauss_order);
    let ff = trig_inner_product(&tf, &tf, gauss_order).re;
    let gf = trig_inner_product(&tg, &tf, gauss_order);
    if gg.re <= 0.0 || ff <= 0.0 {
        return f64::INFINITY;
    }
    // ||f - c g||² = ff - |⟨g,f⟩|²/gg at the optimal c
    ((ff - gf.norm_sqr() / gg.re).max(0.0) / ff).sqrt()
}

fn generated(label: IrrepLabel, cfg: &VerifyConfig) -> Result<Irrep> {
    generate_irrep_with(label, &cfg.generation())
}

fn octet_state(octet: &Irrep, w: Weight, t2: u32) -> Result<&PolyState> {
    octet
        .states
        .iter()
        .find(|s| s.weight.weight == w && s.weight.t2 == t2)
        .map(|s| &s.state)
        .ok_or_else(|| Error::Generation { p: 1, q: 1, found: octet.dim(), expected: 8 })
}

pub fn irreps_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut c = Checks::new(cfg);
    let order = cfg.gauss_order;
    c.residual("action table fit", default_action_table().map(|t| t.max_residual()), 1e-6);

    let probes = probe_points(5, cfg.seed.wrapping_add(4));
    for (p, q) in ANNIHILATION_LABELS {
        let hw = highest_weight(IrrepLabel::new(p, q));
        for side in [Side::Left, Side::Right] {
            for kind in [Ladder::VPlus, Ladder::UPlus, Ladder::TPlus] {
                let o = build_operator(LadderKind { kind, side });
                let r = (|| -> Result<f64> {
                    let mut worst: f64 = 0.0;
                    for x in &probes {
                        worst = worst.max(apply(&o, &hw.field, x, DEFAULT_STEP)?.norm());
                    }
                    Ok(worst)
                })();
                c.residual(format!("({p},{q}) highest weight annihilated by {}", LadderKind { kind, side }.name()), r, 1e-5);
            }
        }
        let r = probes
            .iter()
            .map(|x| hw.field.eval(x).map(|f| (hw.state.eval(x) - f).norm()))
            .collect::<Result<Vec<f64>>>()
            .map(cmax);
        c.residual(format!("({p},{q}) highest weight closed form vs polynomial"), r, 1e-12);
    }

    let v0 = exact_volume();
    for (p, q) in SUITE_IRREPS {
        let label = IrrepLabel::new(p, q);
        let irrep = match generated(label, cfg) {
            Ok(i) => i,
            Err(e) => {
                c.exact(format!("{label} generation"), Err(e));
                continue;
            }
        };
        c.exact(format!("{label} state count"), Ok((irrep.dim() as f64 - label.dim() as f64).abs()));
        let trig: Vec<_> = irrep.states.iter().map(|s| poly_to_trig(&s.state)).collect();
        let target = v0 / label.dim() as f64;
        let (mut off, mut diag): (f64, f64) = (0.0, 0.0);
        for i in 0..trig.len() {
            for j in 0..trig.len() {
                let g = trig_inner_product(&trig[i], &trig[j], order);
                if i == j {
                    diag = diag.max((g - target).norm() / target);
                } else {
                    off = off.max(g.norm() / v0);
                }
            }
        }
        c.residual(format!("{label} Gram off-diagonal"), Ok(off), 1e-8);
        c.residual(format!("{label} norms equal V0/d"), Ok(diag), 1e-8);
        let table = match default_action_table() {
            Ok(t) => t,
            Err(e) => {
                c.exact(format!("{label} action table"), Err(e));
                continue;
            }
        };
        let closure = cmax(irrep.states.iter().flat_map(|s| {
            let t3 = table.apply(LadderKind::left(Ladder::T3), &s.state);
            let y = table.apply(LadderKind::left(Ladder::Y), &s.state);
            [
                t3.max_abs_diff(&s.state.scale(Complex64::new(s.weight.t3(), 0.0))),
                y.max_abs_diff(&s.state.scale(Complex64::new(s.weight.y(), 0.0))),
            ]
        }));
        c.residual(format!("{label} weight labels"), Ok(closure), 1e-12);
        let cas = cmax(irrep.states.iter().zip(trig.iter()).map(|(s, ts)| {
            let tc = poly_to_trig(&casimir(table, Side::Left, &s.state));
            let ev = trig_inner_product(ts, &tc, order) / trig_inner_product(ts, ts, order);
            (ev - label.casimir()).norm()
        }));
        c.residual(format!("{label} Casimir constant"), Ok(cas), 1e-10);
        let strings = (|| -> Result<f64> {
            let mut bad = 0.0;
            for k in 0..irrep.dim() {
                if irrep.isospin_string(k)? != irrep.states[k].weight.t2 {
                    bad += 1.0;
                }
            }
            Ok(bad)
        })();
        c.exact(format!("{label} isospin from T strings"), strings);
        if p + q <= 3 {
            let unit = (|| -> Result<f64> {
                let m = irrep.full_matrix()?;
                let d = irrep.dim();
                let mut worst: f64 = 0.0;
                for x in std::iter::once(EulerAngles::identity()).chain(probes.iter().copied()) {
                    let dm = nalgebra::DMatrix::from_fn(d, d, |r, col| m[r][col].eval(&x));
                    let u = &dm * dm.adjoint() - nalgebra::DMatrix::identity(d, d);
                    worst = worst.max(u.iter().map(|z| z.norm()).fold(0.0, f64::max));
                    if x == EulerAngles::identity() {
                        let e = dm - nalgebra::DMatrix::identity(d, d);
                        worst = worst.max(e.iter().map(|z| z.norm()).fold(0.0, f64::max));
                    }
                }
                Ok(worst)
            })();
            c.residual(format!("{label} full matrix unitary with D(identity) = I"), unit, 1e-12);
        }
    }

    octet_checks(&mut c, cfg);
    c.finish(Suite::Irreps)
}

fn octet_checks(c: &mut Checks<'_>, cfg: &VerifyConfig) {
    let order = cfg.gauss_order;
    let octet = match generated(IrrepLabel::new(1, 1), cfg) {
        Ok(o) => o,
        Err(e) => {
            c.exact("octet generation", Err(e));
            return;
        }
    };
    for (name, w, expected) in octet_hexagon() {
        let r = octet_state(&octet, w, if w.t3x2.abs() == 2 { 2 } else { 1 }).map(|s| s.max_abs_diff(&expected));
        c.residual(format!("octet {name} state equals its monomial"), r, 1e-12);
    }
    let (triplet, singlet) = octet_center();
    let center = Weight::new(0, 0);
    let r = octet_state(&octet, center, 2).map(|s| functional_mismatch(s, &triplet, order));
    c.residual("octet center triplet matches the single-monomial form", r, 1e-8);
    let r = octet_state(&octet, center, 0).map(|s| functional_mismatch(s, &singlet, order));
    c.residual("octet center singlet matches the two-monomial difference", r, 1e-8);

    let r = (|| -> Result<f64> {
        let s = octet_state(&octet, center, 0)?.field("octet singlet");
        let mut worst: f64 = 0.0;
        for x in probe_points(5, cfg.seed.wrapping_add(5)) {
            for k in [Ladder::TPlus, Ladder::TMinus] {
                worst = worst.max(apply(&build_operator(LadderKind::left(k)), &s, &x, DEFAULT_STEP)?.norm());
            }
        }
        Ok(worst)
    })();
    c.residual("octet singlet annihilated by T+ and T-", r, 1e-5);

    let r = (|| -> Result<f64> {
        let table = default_action_table()?;
        let (m1, m2) = (triplet.clone(), triplet.sub(&singlet));
        let parts = isospin_components_with(table, &[m1, m2], order)?;
        let labels: Vec<f64> = parts.iter().map(|(t, _)| *t).collect();
        if labels != [1.0, 0.0] {
            return Err(Error::Decomposition { found: labels.len(), expected: 2 });
        }
        Ok(functional_mismatch(&parts[1].1, &singlet, order))
    })();
    c.residual("isospin split of the two center monomials gives the singlet", r, 1e-8);

    let r = (|| -> Result<f64> {
        let table = default_action_table()?;
        let points = probe_points(10, cfg.seed.wrapping_add(6));
        let mut worst: f64 = 0.0;
        for s in &octet.states {
            let field = s.state.field("octet state");
            for kind in LadderKind::all() {
                let image = table.apply(kind, &s.state);
                let o = build_operator(kind);
                for x in &points {
                    worst = worst.max((apply(&o, &field, x, DEFAULT_STEP)? - image.eval(x)).norm());
                }
            }
        }
        Ok(worst)
    })();
    c.residual("octet algebraic ladder action matches finite differences", r, 1e-5);
}

pub fn haar_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut c = Checks::new(cfg);
    let sep = cfg.separable();
    let mc = cfg.monte_carlo();
    let v0 = exact_volume();
    c.residual("separable volume vs (sqrt3/2) pi^5", group_volume(&sep).map(|v| (v - v0).abs() / v0), 1e-12);
    let doubled = QuadratureSpec { gauss_order: 2 * sep.gauss_order, ..sep };
    let r = group_volume(&sep).and_then(|a| group_volume(&doubled).map(|b| (a - b).abs() / v0));
    c.residual("volume stable under doubled order", r, 1e-12);
    c.sigma(
        "Monte Carlo volume",
        group_volume_mc(&mc).map(|e| (e.value.re - v0).abs() / e.std_err),
        3.0,
    );

    let e = |r: u8, col: u8| PolyState::symbol(FundamentalSymbol::new(FundamentalRep::Three, r, col));
    let (e00, e11) = (e(0, 0), e(1, 1));
    c.residual(
        "element norm is V0/3",
        inner_product(Integrand::from(&e00), Integrand::from(&e00), &sep).map(|z| (z - v0 / 3.0).norm() / v0),
        1e-12,
    );
    c.residual(
        "distinct elements are orthogonal",
        inner_product(Integrand::from(&e00), Integrand::from(&e11), &sep).map(|z| z.norm() / v0),
        1e-10,
    );
    let opaque = ScalarField::fundamental(FundamentalRep::Three, 0, 0);
    let r = match inner_product(Integrand::from(&opaque), Integrand::from(&e00), &sep) {
        Err(Error::OpaqueField { .. }) => Ok(0.0),
        Err(e) => Err(e),
        Ok(_) => Ok(1.0),
    };
    c.exact("separable mode rejects opaque fields", r);

    let gen = GenerationConfig { spec: sep, ..GenerationConfig::default() };
    let mut states = Vec::new();
    let mut err = None;
    for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        match generate_irrep_with(IrrepLabel::new(p, q), &gen) {
            Ok(irrep) => states.extend(irrep.states.iter().enumerate().map(|(k, s)| GramState {
                label: format!("({p},{q})#{k}"),
                dim: irrep.dim(),
                state: s.state.clone(),
            })),
            Err(e) => err = Some(e),
        }
    }
    let report = match err {
        Some(e) => Err(e),
        None => orthogonality_suite(&states, &sep),
    };
    c.residual("Gram over 1, 3, 3*, 8 off-diagonal", report.as_ref().map(|r| r.gram_max_offdiag).map_err(Clone::clone), 1e-8);
    c.residual("Gram over 1, 3, 3*, 8 diagonal", report.as_ref().map(|r| r.gram_max_diag_err).map_err(Clone::clone), 1e-8);

    let sigma = |f: &PolyState, g: &PolyState, expected: f64| -> Result<f64> {
        let est = inner_product_mc(Integrand::from(f), Integrand::from(g), &mc)?;
        Ok((est.value - expected).norm() / est.std_err)
    };
    c.sigma("Monte Carlo element norm", sigma(&e00, &e00, v0 / 3.0), 3.0);
    c.sigma("Monte Carlo distinct elements", sigma(&e00, &e11, 0.0), 3.0);
    if let Some(s) = states.iter().find(|s| s.dim == 8) {
        c.sigma("Monte Carlo octet norm", sigma(&s.state, &s.state, v0 / 8.0), 3.0);
    }

    // Translation invariance: exact in separable mode, statistical in Monte Carlo.
    let h = probe_points(1, cfg.seed.wrapping_add(7))[0];
    for left in [true, false] {
        let side = if left { "left" } else { "right" };
        let r = (|| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for i in 0..9 {
                for j in 0..9 {
                    let (f, g) = (
                        translated_element(FundamentalRep::Three, i / 3, i % 3, &h, left),
                        translated_element(FundamentalRep::Three, j / 3, j % 3, &h, left),
                    );
                    let (f0, g0) = (e((i / 3) as u8, (i % 3) as u8), e((j / 3) as u8, (j % 3) as u8));
                    let moved = inner_product(Integrand::from(&f), Integrand::from(&g), &sep)?;
                    let fixed = inner_product(Integrand::from(&f0), Integrand::from(&g0), &sep)?;
                    worst = worst.max((moved - fixed).norm() / v0);
                }
            }
            Ok(worst)
        })();
        c.residual(format!("{side} translation invariance (separable)"), r, 1e-10);
        let f = translated_element(FundamentalRep::Three, 0, 1, &h, left);
        let g = translated_element(FundamentalRep::Three, 2, 1, &h, left);
        c.sigma(format!("{side} translation invariance, norm (Monte Carlo)"), sigma(&f, &f, v0 / 3.0), 3.0);
        c.sigma(format!("{side} translation invariance, overlap (Monte Carlo)"), sigma(&f, &g, 0.0), 3.0);
    }
    c.finish(Suite::Haar)
}

/// Products checked by the cg suite with their expected decompositions.
pub fn suite_products() -> Vec<(IrrepLabel, IrrepLabel, Vec<(IrrepLabel, usize)>)> {
    let l = IrrepLabel::new;
    vec![
        (l(1, 0), l(0, 1), vec![(l(1, 1), 1), (l(0, 0), 1)]),
        (l(1, 0), l(1, 0), vec![(l(2, 0), 1), (l(0, 1), 1)]),
        (l(0, 1), l(0, 1), vec![(l(0, 2), 1), (l(1, 0), 1)]),
        (l(0, 0), l(1, 1), vec![(l(1, 1), 1)]),
        (l(1, 0), l(1, 1), vec![(l(2, 1), 1), (l(0, 2), 1), (l(1, 0), 1)]),
        (l(1, 1), l(1, 1), vec![(l(2, 2), 1), (l(0, 3), 1), (l(3, 0), 1), (l(1, 1), 2), (l(0, 0), 1)]),
    ]
}

pub fn cg_verify_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut c = Checks::new(cfg);
    let cg_cfg = CgConfig { generation: cfg.generation(), ..CgConfig::default() };
    for (a, b, expected) in suite_products() {
        let name = format!("{a}x{b}");
        match cg_suite(a, b, &cg_cfg, cfg.seed.wrapping_add(8)) {
            Ok(r) => {
                c.exact(format!("{name} decomposition"), Ok(if r.decomposition == expected { 0.0 } else { 1.0 }));
                c.residual(format!("{name} stacked coefficients orthogonal"), Ok(r.unitarity_residual), 1e-8);
                c.residual(format!("{name} Haar route vs Casimir oracle"), Ok(r.oracle_max_diff), 1e-8);
                c.residual(format!("{name} equivariance"), Ok(r.equivariance_residual), 1e-10);
                c.residual(format!("{name} target state norms"), Ok(r.max_norm_error), 1e-10);
            }
            Err(e) => c.exact(format!("{name} coupling"), Err(e)),
        }
    }
    let l = IrrepLabel::new;
    let r = wcg_coefficients_with(l(1, 0), l(0, 1), l(0, 0), 0, &cg_cfg).map(|t| {
        let dev = cmax(t.entries.values().map(|v| (v.abs() - 1.0 / 3f64.sqrt()).abs()));
        if t.entries.len() == 3 { dev } else { f64::INFINITY }
    });
    c.residual("3x3* singlet couples diagonal pairs with 1/sqrt3", r, 1e-12);
    c.finish(Suite::Cg)
}
