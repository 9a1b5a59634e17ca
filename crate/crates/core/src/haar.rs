//! Invariant measure, group volume and inner products of representation functions.
//!
//! Separable mode expands polynomial states into phase exponentials times powers of
//! cos/sin of β, b, θ. Phase integrals become Kronecker deltas on the integer
//! exponents and the remaining three radial integrals use Gauss-Legendre nodes.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diffops::ScalarField;
use crate::error::{Error, Result};
use crate::euler::{closed_entries, EulerAngles, FundamentalRep};
use crate::poly::{FundamentalSymbol, PolyState};

/// Length of the φ range, √3·π.
pub const PHI_PERIOD: f64 = 5.441_398_092_702_653;

/// Product of the five phase-range lengths, π⁴·√3π.
pub fn phase_volume() -> f64 {
    PI.powi(4) * PHI_PERIOD
}

/// Exact group volume (√3/2)·π⁵.
pub fn exact_volume() -> f64 {
    3f64.sqrt() / 2.0 * PI.powi(5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadratureMode {
    Separable,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub mode: QuadratureMode,
    pub gauss_order: usize,
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { mode: QuadratureMode::Separable, gauss_order: 24, mc_samples: 100_000, seed: 0 }
    }
}

impl QuadratureSpec {
    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Self { mode: QuadratureMode::MonteCarlo, mc_samples: samples, seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.gauss_order < 8 {
            return Err(Error::Config(format!("gauss order must be at least 8, got {}", self.gauss_order)));
        }
        if self.mc_samples < 10_000 {
            return Err(Error::Config(format!(
                "Monte Carlo needs at least 10000 samples, got {}",
                self.mc_samples
            )));
        }
        Ok(())
    }
}

/// The volume element sin2β·sin2b·sin2θ·sin²θ.
#[derive(Debug, Clone, Copy, Default)]
pub struct HaarMeasure;

impl HaarMeasure {
    pub fn density(&self, x: &EulerAngles) -> f64 {
        (2.0 * x.beta).sin() * (2.0 * x.b).sin() * (2.0 * x.theta).sin() * x.theta.sin().powi(2)
    }

    pub fn ranges(&self) -> [(f64, f64); 8] {
        EulerAngles::RANGES
    }

    pub fn density_field(&self) -> ScalarField {
        ScalarField::from_fn("Haar density", |x| Complex64::new(HaarMeasure.density(x), 0.0))
    }
}

/// Phase exponents on (α, γ, a, c, η) and powers of (cosβ, sinβ, cos b, sin b, cosθ, sinθ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrigKey {
    pub phase: [i32; 5],
    pub pow: [u16; 6],
}

impl TrigKey {
    fn times(&self, other: &TrigKey) -> TrigKey {
        let mut k = *self;
        for i in 0..5 {
            k.phase[i] += other.phase[i];
        }
        for i in 0..6 {
            k.pow[i] += other.pow[i];
        }
        k
    }
}

/// Trigonometric polynomial in the eight angles.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPoly {
    terms: BTreeMap<TrigKey, Complex64>,
}

impl TrigPoly {
    pub fn one() -> Self {
        let mut t = Self::default();
        t.terms.insert(TrigKey { phase: [0; 5], pow: [0; 6] }, Complex64::new(1.0, 0.0));
        t
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: TrigKey, c: Complex64) {
        *self.terms.entry(k).or_default() += c;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term(k1.times(k2), c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, x: &EulerAngles) -> Complex64 {
        let ph = [x.alpha, x.gamma, x.a, x.c, x.eta()];
        let base = [x.beta.cos(), x.beta.sin(), x.b.cos(), x.b.sin(), x.theta.cos(), x.theta.sin()];
        self.terms
            .iter()
            .map(|(k, c)| {
                let t: f64 = k.phase.iter().zip(ph.iter()).map(|(&n, &a)| f64::from(n) * a).sum();
                let r: f64 = k.pow.iter().zip(base.iter()).map(|(&p, &v)| v.powi(i32::from(p))).product();
                c * Complex64::from_polar(r, t)
            })
            .sum()
    }
}

/// Expansion of one fundamental symbol: (sign, phase, powers) per term.
fn symbol_terms(sym: FundamentalSymbol) -> &'static [(f64, [i32; 5], [u16; 6])] {
    // Powers: cβ sβ cb sb cθ sθ.
    const P_CCC: [u16; 6] = [1, 0, 1, 0, 1, 0];
    const P_SS: [u16; 6] = [0, 1, 0, 1, 0, 0];
    const P_CSC: [u16; 6] = [1, 0, 0, 1, 1, 0];
    const P_SC: [u16; 6] = [0, 1, 1, 0, 0, 0];
    const P_CT: [u16; 6] = [1, 0, 0, 0, 0, 1];
    const P_SCC: [u16; 6] = [0, 1, 1, 0, 1, 0];
    const P_CS: [u16; 6] = [1, 0, 0, 1, 0, 0];
    const P_SSC: [u16; 6] = [0, 1, 0, 1, 1, 0];
    const P_CC: [u16; 6] = [1, 0, 1, 0, 0, 0];
    const P_ST: [u16; 6] = [0, 1, 0, 0, 0, 1];
    const P_BT: [u16; 6] = [0, 0, 1, 0, 0, 1];
    const P_SBT: [u16; 6] = [0, 0, 0, 1, 0, 1];
    const P_TH: [u16; 6] = [0, 0, 0, 0, 1, 0];
    static THREE: [&[(f64, [i32; 5], [u16; 6])]; 9] = [
        &[(1.0, [-1, -1, -1, -1, -1], P_CCC), (-1.0, [-1, 1, 1, -1, -1], P_SS)],
        &[(1.0, [-1, -1, -1, 1, -1], P_CSC), (1.0, [-1, 1, 1, 1, -1], P_SC)],
        &[(1.0, [-1, -1, 0, 0, 2], P_CT)],
        &[(-1.0, [1, -1, -1, -1, -1], P_SCC), (-1.0, [1, 1, 1, -1, -1], P_CS)],
        &[(-1.0, [1, -1, -1, 1, -1], P_SSC), (1.0, [1, 1, 1, 1, -1], P_CC)],
        &[(-1.0, [1, -1, 0, 0, 2], P_ST)],
        &[(-1.0, [0, 0, -1, -1, -1], P_BT)],
        &[(-1.0, [0, 0, -1, 1, -1], P_SBT)],
        &[(1.0, [0, 0, 0, 0, 2], P_TH)],
    ];
    static THREE_STAR: [&[(f64, [i32; 5], [u16; 6])]; 9] = [
        &[(1.0, [1, 1, 1, 1, 1], P_CCC), (-1.0, [1, -1, -1, 1, 1], P_SS)],
        &[(-1.0, [1, 1, 1, -1, 1], P_CSC), (-1.0, [1, -1, -1, -1, 1], P_SC)],
        &[(-1.0, [1, 1, 0, 0, -2], P_CT)],
        &[(1.0, [-1, 1, 1, 1, 1], P_SCC), (1.0, [-1, -1, -1, 1, 1], P_CS)],
        &[(-1.0, [-1, 1, 1, -1, 1], P_SSC), (1.0, [-1, -1, -1, -1, 1], P_CC)],
        &[(-1.0, [-1, 1, 0, 0, -2], P_ST)],
        &[(1.0, [0, 0, 1, 1, 1], P_BT)],
        &[(-1.0, [0, 0, 1, -1, 1], P_SBT)],
        &[(1.0, [0, 0, 0, 0, -2], P_TH)],
    ];
    let k = (sym.row * 3 + sym.col) as usize;
    match sym.rep {
        FundamentalRep::Three => THREE[k],
        FundamentalRep::ThreeStar => THREE_STAR[k],
    }
}

/// Trigonometric expansion of one fundamental symbol.
pub fn symbol_trig(sym: FundamentalSymbol) -> TrigPoly {
    let mut t = TrigPoly::default();
    for &(s, phase, pow) in symbol_terms(sym) {
        t.add_term(TrigKey { phase, pow }, Complex64::new(s, 0.0));
    }
    t
}

/// Trigonometric expansion of a polynomial state.
pub fn poly_to_trig(state: &PolyState) -> TrigPoly {
    let symbols: Vec<TrigPoly> = FundamentalSymbol::all().map(symbol_trig).collect();
    let mut out = TrigPoly::default();
    for (m, c) in state.terms() {
        let mut t = TrigPoly::one();
        for &i in m {
            t = t.mul(&symbols[i as usize]);
        }
        for (k, v) in t.terms {
            out.add_term(k, c * v);
        }
    }
    out.terms.retain(|_, v| v.norm() > 0.0);
    out
}

const TABLE_POWERS: usize = 40;

/// Gauss-Legendre values of the radial one-dimensional integrals.
#[derive(Debug)]
struct RadialTable {
    order: usize,
    // ∫ c^i s^j sin2x dx and ∫ c^i s^j sin2x sin²x dx over [0, π/2]
    beta: Vec<f64>,
    theta: Vec<f64>,
}

impl RadialTable {
    fn build(order: usize) -> Self {
        let n = NonZeroUsize::new(order).expect("gauss order is positive");
        let gl = GaussLegendre::new(n);
        let mut beta = vec![0.0; TABLE_POWERS * TABLE_POWERS];
        let mut theta = vec![0.0; TABLE_POWERS * TABLE_POWERS];
        for i in 0..TABLE_POWERS {
            for j in 0..TABLE_POWERS {
                beta[i * TABLE_POWERS + j] = radial(&gl, i, j, 0);
                theta[i * TABLE_POWERS + j] = radial(&gl, i, j, 2);
            }
        }
        Self { order, beta, theta }
    }

    fn get(order: usize) -> Arc<RadialTable> {
        static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<RadialTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry(order).or_insert_with(|| Arc::new(Self::build(order))).clone()
    }

    fn lookup(&self, table: &[f64], i: u16, j: u16, extra_sin: i32) -> f64 {
        let (i, j) = (usize::from(i), usize::from(j));
        if i < TABLE_POWERS && j < TABLE_POWERS {
            table[i * TABLE_POWERS + j]
        } else {
            let gl = GaussLegendre::new(NonZeroUsize::new(self.order).expect("positive order"));
            radial(&gl, i, j, extra_sin)
        }
    }

    /// ∫ over β, b, θ of the given powers times the density.
    fn integral(&self, pow: &[u16; 6]) -> f64 {
        self.lookup(&self.beta, pow[0], pow[1], 0)
            * self.lookup(&self.beta, pow[2], pow[3], 0)
            * self.lookup(&self.theta, pow[4], pow[5], 2)
    }
}

fn radial(gl: &GaussLegendre, i: usize, j: usize, extra_sin: i32) -> f64 {
    gl.integrate(0.0, FRAC_PI_2, |x| {
        let (s, c) = x.sin_cos();
        c.powi(i as i32) * s.powi(j as i32 + extra_sin) * (2.0 * x).sin()
    })
}

/// Either a polynomial state or an opaque field.
#[derive(Debug, Clone, Copy)]
pub enum Integrand<'a> {
    Poly(&'a PolyState),
    Field(&'a ScalarField),
}

impl<'a> From<&'a PolyState> for Integrand<'a> {
    fn from(p: &'a PolyState) -> Self {
        Integrand::Poly(p)
    }
}

impl<'a> From<&'a ScalarField> for Integrand<'a> {
    fn from(f: &'a ScalarField) -> Self {
        Integrand::Field(f)
    }
}

impl Integrand<'_> {
    fn eval(&self, x: &EulerAngles) -> Result<Complex64> {
        match self {
            Integrand::Poly(p) => Ok(p.eval(x)),
            Integrand::Field(f) => f.eval(x),
        }
    }
}

/// ∫ conj(f)·g dV from pre-expanded trigonometric polynomials.
pub fn trig_inner_product(f: &TrigPoly, g: &TrigPoly, gauss_order: usize) -> Complex64 {
    let table = RadialTable::get(gauss_order);
    let mut by_phase: BTreeMap<[i32; 5], Vec<(&[u16; 6], Complex64)>> = BTreeMap::new();
    for (k, c) in &f.terms {
        by_phase.entry(k.phase).or_default().push((&k.pow, c.conj()));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (k, cg) in &g.terms {
        if let Some(list) = by_phase.get(&k.phase) {
            for (pf, cf) in list {
                let mut pow = **pf;
                for (p, q) in pow.iter_mut().zip(k.pow.iter()) {
                    *p += q;
                }
                total += cf * cg * table.integral(&pow);
            }
        }
    }
    total * phase_volume()
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub value: Complex64,
    pub std_err: f64,
}

impl McEstimate {
    /// True when `reference` lies within `sigmas` standard errors.
    pub fn agrees_with(&self, reference: Complex64, sigmas: f64) -> bool {
        (self.value - reference).norm() <= sigmas * self.std_err
    }
}

/// Sum with a fixed binary tree so the result does not depend on evaluation order.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

/// Haar-distributed sample points; phases cover full periods.
pub fn haar_samples(count: usize, seed: u64) -> Vec<EulerAngles> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = 2.0 * PI;
    (0..count)
        .map(|_| {
            let alpha = rng.random_range(0.0..tau);
            let gamma = rng.random_range(0.0..tau);
            let a = rng.random_range(0.0..tau);
            let c = rng.random_range(0.0..tau);
            let phi = rng.random_range(0.0..2.0 * PHI_PERIOD);
            let beta = rng.random_range(-1.0f64..=1.0).acos() / 2.0;
            let b = rng.random_range(-1.0f64..=1.0).acos() / 2.0;
            let theta = rng.random_range(0.0f64..=1.0).powf(0.25).asin();
            EulerAngles::new(alpha, beta, gamma, theta, a, b, c, phi)
        })
        .collect()
}

fn mc_mean(values: &[Complex64]) -> (Complex64, f64) {
    let n = values.len() as f64;
    let mean = pairwise_sum(values) / n;
    let dev: Vec<Complex64> = values.iter().map(|v| Complex64::new((v - mean).norm_sqr(), 0.0)).collect();
    let var = pairwise_sum(&dev).re / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Monte Carlo estimate of ∫ conj(f)·g dV.
pub fn inner_product_mc(f: Integrand<'_>, g: Integrand<'_>, spec: &QuadratureSpec) -> Result<McEstimate> {
    spec.validate()?;
    let samples = haar_samples(spec.mc_samples, spec.seed);
    let values = samples
        .iter()
        .map(|x| Ok(f.eval(x)?.conj() * g.eval(x)?))
        .collect::<Result<Vec<_>>>()?;
    let (mean, err) = mc_mean(&values);
    let v0 = exact_volume();
    Ok(McEstimate { value: mean * v0, std_err: err * v0 })
}

/// ∫ conj(f)·g dV in the mode selected by `spec`.
pub fn inner_product(f: Integrand<'_>, g: Integrand<'_>, spec: &QuadratureSpec) -> Result<Complex64> {
    match spec.mode {
        QuadratureMode::MonteCarlo => Ok(inner_product_mc(f, g, spec)?.value),
        QuadratureMode::Separable => {
            spec.validate()?;
            let expand = |x: Integrand<'_>| match x {
                Integrand::Poly(p) => Ok(poly_to_trig(p)),
                Integrand::Field(field) => Err(Error::OpaqueField { descriptor: field.descriptor().to_string() }),
            };
            Ok(trig_inner_product(&expand(f)?, &expand(g)?, spec.gauss_order))
        }
    }
}

/// Monte Carlo estimate of the volume, sampling uniformly over the canonical box.
pub fn group_volume_mc(spec: &QuadratureSpec) -> Result<McEstimate> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let values: Vec<Complex64> = (0..spec.mc_samples)
        .map(|_| {
            let beta = rng.random_range(0.0..FRAC_PI_2);
            let b = rng.random_range(0.0..FRAC_PI_2);
            let theta = rng.random_range(0.0..FRAC_PI_2);
            let x = EulerAngles { beta, b, theta, ..Default::default() };
            Complex64::new(HaarMeasure.density(&x), 0.0)
        })
        .collect();
    let (mean, err) = mc_mean(&values);
    let box_volume = phase_volume() * FRAC_PI_2.powi(3);
    Ok(McEstimate { value: mean * box_volume, std_err: err * box_volume })
}

/// ∫ dV over the canonical ranges.
pub fn group_volume(spec: &QuadratureSpec) -> Result<f64> {
    match spec.mode {
        QuadratureMode::Separable => {
            spec.validate()?;
            let table = RadialTable::get(spec.gauss_order);
            Ok(phase_volume() * table.integral(&[0; 6]))
        }
        QuadratureMode::MonteCarlo => Ok(group_volume_mc(spec)?.value.re),
    }
}

/// Matrix element (row, col) of a fundamental representation composed with a fixed
/// translation: D(h·g) when `left`, D(g·h) otherwise, as a polynomial in g.
pub fn translated_element(rep: FundamentalRep, row: usize, col: usize, h: &EulerAngles, left: bool) -> PolyState {
    let dh = closed_entries(h, rep);
    let mut out = PolyState::zero();
    for k in 0..3 {
        let (sym, coef) = if left {
            (FundamentalSymbol::new(rep, k as u8, col as u8), dh[row][k])
        } else {
            (FundamentalSymbol::new(rep, row as u8, k as u8), dh[k][col])
        };
        out.axpy(coef, &PolyState::symbol(sym));
    }
    out
}

/// A state entering a Gram matrix, with the dimension of its irrep.
#[derive(Debug, Clone)]
pub struct GramState {
    pub label: String,
    pub dim: usize,
    pub state: PolyState,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairDetail {
    pub i: usize,
    pub j: usize,
    pub value: [f64; 2],
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub v0: f64,
    /// max |G_ij|/V0 over i ≠ j
    pub gram_max_offdiag: f64,
    /// max |G_ii - V0/d|/(V0/d)
    pub gram_max_diag_err: f64,
    pub labels: Vec<String>,
    pub per_pair: Vec<PairDetail>,
}

/// Full Gram matrix of the supplied states against the expected (V0/d)·I.
pub fn orthogonality_suite(states: &[GramState], spec: &QuadratureSpec) -> Result<OrthogonalityReport> {
    let v0 = group_volume(&QuadratureSpec { mode: QuadratureMode::Separable, ..*spec })?;
    let gram: Vec<Vec<Complex64>> = match spec.mode {
        QuadratureMode::Separable => {
            spec.validate()?;
            let trig: Vec<TrigPoly> = states.iter().map(|s| poly_to_trig(&s.state)).collect();
            (0..states.len())
                .map(|i| (0..states.len()).map(|j| trig_inner_product(&trig[i], &trig[j], spec.gauss_order)).collect())
                .collect()
        }
        QuadratureMode::MonteCarlo => {
            spec.validate()?;
            let samples = haar_samples(spec.mc_samples, spec.seed);
            let values: Vec<Vec<Complex64>> =
                states.iter().map(|s| samples.iter().map(|x| s.state.eval(x)).collect()).collect();
            let n = samples.len() as f64;
            (0..states.len())
                .map(|i| {
                    (0..states.len())
                        .map(|j| {
                            let prod: Vec<Complex64> =
                                values[i].iter().zip(values[j].iter()).map(|(a, b)| a.conj() * b).collect();
                            pairwise_sum(&prod) / n * v0
                        })
                        .collect()
                })
                .collect()
        }
    };
    let mut report = OrthogonalityReport {
        v0,
        gram_max_offdiag: 0.0,
        gram_max_diag_err: 0.0,
        labels: states.iter().map(|s| s.label.clone()).collect(),
        per_pair: Vec::new(),
    };
    for i in 0..states.len() {
        for j in i..states.len() {
            let g = gram[i][j];
            let expected = if i == j { v0 / states[i].dim as f64 } else { 0.0 };
            if i == j {
                report.gram_max_diag_err = report.gram_max_diag_err.max((g - expected).norm() / expected);
            } else {
                report.gram_max_offdiag = report.gram_max_offdiag.max(g.norm() / v0);
            }
            report.per_pair.push(PairDetail { i, j, value: [g.re, g.im], expected });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::probe_points;

    /// ∫₀^{π/2} cos^m sin^n by the reduction formulas.
    fn wallis(m: u32, n: u32) -> f64 {
        match (m, n) {
            (0, 0) => FRAC_PI_2,
            (1, 0) | (0, 1) => 1.0,
            (1, 1) => 0.5,
            _ if n >= 2 => f64::from(n - 1) / f64::from(m + n) * wallis(m, n - 2),
            _ => f64::from(m - 1) / f64::from(m + n) * wallis(m - 2, n),
        }
    }

    #[test]
    fn radial_integrals_match_reduction_formulas() {
        let table = RadialTable::get(24);
        for i in 0..14u16 {
            for j in 0..14u16 {
                let b = table.lookup(&table.beta, i, j, 0);
                let t = table.lookup(&table.theta, i, j, 2);
                let (iu, ju) = (u32::from(i), u32::from(j));
                assert!((b - 2.0 * wallis(iu + 1, ju + 1)).abs() < 1e-14, "beta {i} {j}");
                assert!((t - 2.0 * wallis(iu + 1, ju + 3)).abs() < 1e-14, "theta {i} {j}");
            }
        }
    }

    #[test]
    fn one_dimensional_factors() {
        let table = RadialTable::get(24);
        assert!((table.lookup(&table.beta, 0, 0, 0) - 1.0).abs() < 1e-15);
        assert!((table.lookup(&table.theta, 0, 0, 2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn symbol_expansions_match_closed_forms() {
        for x in probe_points(20, 31) {
            for sym in FundamentalSymbol::all() {
                let direct = closed_entries(&x, sym.rep)[sym.row as usize][sym.col as usize];
                assert!((symbol_trig(sym).eval(&x) - direct).norm() < 1e-14, "{sym}");
            }
        }
    }

    #[test]
    fn volume_is_exact_and_order_stable() {
        let v = group_volume(&QuadratureSpec::default()).unwrap();
        assert!((v - exact_volume()).abs() / exact_volume() < 1e-12);
        let v48 = group_volume(&QuadratureSpec { gauss_order: 48, ..Default::default() }).unwrap();
        assert!((v - v48).abs() / v < 1e-12);
    }

    #[test]
    fn fundamental_elements_are_orthogonal() {
        let spec = QuadratureSpec::default();
        let v0 = exact_volume();
        let syms: Vec<PolyState> = FundamentalSymbol::all().map(PolyState::symbol).collect();
        for (i, f) in syms.iter().enumerate() {
            for (j, g) in syms.iter().enumerate() {
                let v = inner_product(f.into(), g.into(), &spec).unwrap();
                let expected = if i == j { v0 / 3.0 } else { 0.0 };
                assert!((v - expected).norm() < 1e-12 * v0, "{i} {j}: {v}");
            }
        }
    }

    #[test]
    fn separable_mode_rejects_opaque_fields() {
        let f = ScalarField::constant(Complex64::new(1.0, 0.0));
        let p = PolyState::constant(Complex64::new(1.0, 0.0));
        let err = inner_product((&f).into(), (&p).into(), &QuadratureSpec::default()).unwrap_err();
        assert!(matches!(err, Error::OpaqueField { .. }));
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec { gauss_order: 4, ..Default::default() }.validate().is_err());
        assert!(QuadratureSpec { mc_samples: 10, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn monte_carlo_agrees_within_three_sigma() {
        let spec = QuadratureSpec::monte_carlo(40_000, 3);
        let e = PolyState::symbol(FundamentalSymbol::from_index(0));
        let est = inner_product_mc((&e).into(), (&e).into(), &spec).unwrap();
        assert!(est.agrees_with(Complex64::new(exact_volume() / 3.0, 0.0), 3.0), "{est:?}");
        let vol = group_volume_mc(&spec).unwrap();
        assert!(vol.agrees_with(Complex64::new(exact_volume(), 0.0), 3.0), "{vol:?}");
    }

    #[test]
    fn pairwise_sum_is_exact_on_small_integers() {
        let v: Vec<Complex64> = (0..1000).map(|k| Complex64::new(f64::from(k), 1.0)).collect();
        assert_eq!(pairwise_sum(&v), Complex64::new(499_500.0, 1000.0));
    }

    #[test]
    fn translation_preserves_inner_products() {
        let spec = QuadratureSpec::default();
        let h = probe_points(1, 40)[0];
        for left in [true, false] {
            for rep in FundamentalRep::ALL {
                let f = translated_element(rep, 0, 1, &h, left);
                let g = translated_element(rep, 2, 1, &h, left);
                let ff = inner_product((&f).into(), (&f).into(), &spec).unwrap();
                let fg = inner_product((&f).into(), (&g).into(), &spec).unwrap();
                assert!((ff.re - exact_volume() / 3.0).abs() < 1e-10 * exact_volume());
                assert!(fg.norm() < 1e-10 * exact_volume());
            }
        }
    }
}
