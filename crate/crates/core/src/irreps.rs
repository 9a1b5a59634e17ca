//! Irreducible representations as polynomial states in the fundamental symbols.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diffops::{apply, build_operator, probe_points, Ladder, LadderKind, ScalarField, Side, DEFAULT_STEP};
use crate::error::{Error, Result};
use crate::euler::EulerAngles;
use crate::haar::{exact_volume, poly_to_trig, trig_inner_product, QuadratureMode, QuadratureSpec, TrigPoly};
use crate::poly::{fraction, FundamentalSymbol, PolyState, Weight};

/// Default bound on p+q for generation.
pub const DEFAULT_BOUND: u32 = 4;

/// Irrep label (p, q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub p: u32,
    pub q: u32,
}

impl IrrepLabel {
    pub const fn new(p: u32, q: u32) -> Self {
        Self { p, q }
    }

    pub fn dim(self) -> usize {
        dimension(self)
    }

    /// Weight of the highest state: t3 = p/2, y = (2q+p)/3.
    pub fn highest_weight(self) -> Weight {
        Weight::new(self.p as i32, (2 * self.q + self.p) as i32)
    }

    /// Eigenvalue of the quadratic Casimir in the normalization where the
    /// fundamental gives 4/3.
    pub fn casimir(self) -> f64 {
        let (p, q) = (f64::from(self.p), f64::from(self.q));
        (p * p + q * q + p * q + 3.0 * p + 3.0 * q) / 3.0
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// (p+1)(q+1)(p+q+2)/2
pub fn dimension(label: IrrepLabel) -> usize {
    let (p, q) = (label.p as usize, label.q as usize);
    (p + 1) * (q + 1) * (p + q + 2) / 2
}

/// Isospin, its projection and hypercharge, stored exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightLabel {
    /// 2·t
    pub t2: u32,
    pub weight: Weight,
}

impl WeightLabel {
    pub fn t(self) -> f64 {
        f64::from(self.t2) / 2.0
    }

    pub fn t3(self) -> f64 {
        self.weight.t3()
    }

    pub fn y(self) -> f64 {
        self.weight.y()
    }

    /// (t, t3, y) as reduced fractions.
    pub fn fractions(self) -> [String; 3] {
        [fraction(self.t2 as i32, 2), fraction(self.weight.t3x2, 2), fraction(self.weight.yx3, 3)]
    }
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t, t3, y] = self.fractions();
        write!(f, "(t={t}, t3={t3}, y={y})")
    }
}

/// Per-symbol action of the sixteen operators, fitted from finite differences.
#[derive(Debug, Clone)]
pub struct ActionTable {
    entries: Vec<Vec<Vec<(u8, Complex64)>>>,
    max_residual: f64,
}

/// Settings for [`init_action_table_with`].
#[derive(Debug, Clone, Copy)]
pub struct ActionTableConfig {
    pub probes: usize,
    pub seed: u64,
    pub step: f64,
    pub tolerance: f64,
}

impl Default for ActionTableConfig {
    fn default() -> Self {
        Self { probes: 24, seed: 2024, step: DEFAULT_STEP, tolerance: 1e-6 }
    }
}

fn snap(x: f64) -> f64 {
    let k = (x * 6.0).round();
    if (x - k / 6.0).abs() < 1e-7 {
        k / 6.0
    } else {
        x
    }
}

/// Fits every operator on every symbol against the symbols sharing its column
/// (left operators) or row (right operators).
pub fn init_action_table_with(cfg: &ActionTableConfig) -> Result<ActionTable> {
    if cfg.probes < 20 {
        return Err(Error::Config(format!("action table needs at least 20 probes, got {}", cfg.probes)));
    }
    let points = probe_points(cfg.probes, cfg.seed);
    let mut entries = vec![vec![Vec::new(); FundamentalSymbol::COUNT]; 16];
    let mut max_residual: f64 = 0.0;
    for kind in LadderKind::all() {
        let op = build_operator(kind);
        for sym in FundamentalSymbol::all() {
            let candidates: Vec<FundamentalSymbol> = (0..3u8)
                .map(|k| match kind.side {
                    Side::Left => FundamentalSymbol::new(sym.rep, k, sym.col),
                    Side::Right => FundamentalSymbol::new(sym.rep, sym.row, k),
                })
                .collect();
            let field = ScalarField::fundamental(sym.rep, sym.row as usize, sym.col as usize);
            let fields: Vec<ScalarField> = candidates
                .iter()
                .map(|c| ScalarField::fundamental(c.rep, c.row as usize, c.col as usize))
                .collect();
            let n = points.len();
            let mut a = DMatrix::<Complex64>::zeros(n, 3);
            let mut b = DVector::<Complex64>::zeros(n);
            for (r, x) in points.iter().enumerate() {
                b[r] = apply(&op, &field, x, cfg.step)?;
                for (k, f) in fields.iter().enumerate() {
                    a[(r, k)] = f.eval(x)?;
                }
            }
            let coeffs = a
                .clone()
                .svd(true, true)
                .solve(&b, 1e-12)
                .map_err(|e| Error::Config(format!("least squares failed: {e}")))?;
            let snapped: Vec<Complex64> =
                coeffs.iter().map(|c| Complex64::new(snap(c.re), snap(c.im))).collect();
            let fitted = &a * DVector::from_vec(snapped.clone());
            let residual = (fitted - &b).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if residual > cfg.tolerance {
                return Err(Error::Convention { operator: kind.name(), symbol: sym.to_string(), residual });
            }
            max_residual = max_residual.max(residual);
            entries[kind.index()][sym.index() as usize] = candidates
                .iter()
                .zip(snapped)
                .filter(|(_, c)| c.norm() > 0.0)
                .map(|(s, c)| (s.index(), c))
                .collect();
        }
    }
    Ok(ActionTable { entries, max_residual })
}

pub fn init_action_table() -> Result<ActionTable> {
    init_action_table_with(&ActionTableConfig::default())
}

/// Shared table built with the default configuration.
pub fn default_action_table() -> Result<&'static ActionTable> {
    static TABLE: OnceLock<Result<ActionTable>> = OnceLock::new();
    TABLE.get_or_init(init_action_table).as_ref().map_err(Clone::clone)
}

impl ActionTable {
    /// Image of one symbol as (symbol index, coefficient) pairs.
    pub fn image(&self, which: LadderKind, sym: FundamentalSymbol) -> &[(u8, Complex64)] {
        &self.entries[which.index()][sym.index() as usize]
    }

    /// Largest pointwise fit residual seen while building the table.
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    /// Leibniz extension of the per-symbol action to a polynomial.
    pub fn apply(&self, which: LadderKind, state: &PolyState) -> PolyState {
        let mut out = PolyState::zero();
        for (m, c) in state.terms() {
            for pos in 0..m.len() {
                let sym = FundamentalSymbol::from_index(m[pos]);
                for &(img, k) in self.image(which, sym) {
                    let mut nm = m.clone();
                    nm[pos] = img;
                    nm.sort_unstable();
                    out.add_term(nm, c * k);
                }
            }
        }
        out
    }
}

/// Applies a ladder operator algebraically using the shared table.
pub fn ladder_action(which: LadderKind, state: &PolyState) -> Result<PolyState> {
    Ok(default_action_table()?.apply(which, state))
}

/// Quadratic Casimir applied algebraically.
pub fn casimir(table: &ActionTable, side: Side, state: &PolyState) -> PolyState {
    let op = |k: Ladder, s: &PolyState| table.apply(LadderKind { kind: k, side }, s);
    let half = Complex64::new(0.5, 0.0);
    let mut out = PolyState::zero();
    for (up, down) in [(Ladder::TPlus, Ladder::TMinus), (Ladder::UPlus, Ladder::UMinus), (Ladder::VPlus, Ladder::VMinus)] {
        out.axpy(half, &op(up, &op(down, state)));
        out.axpy(half, &op(down, &op(up, state)));
    }
    out.axpy(Complex64::new(1.0, 0.0), &op(Ladder::T3, &op(Ladder::T3, state)));
    out.axpy(Complex64::new(0.75, 0.0), &op(Ladder::Y, &op(Ladder::Y, state)));
    out
}

/// Highest-weight state as a polynomial and as a closed-form field.
#[derive(Debug, Clone)]
pub struct HighestWeight {
    pub label: IrrepLabel,
    pub state: PolyState,
    pub field: ScalarField,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

pub fn highest_weight(label: IrrepLabel) -> HighestWeight {
    let IrrepLabel { p, q } = label;
    let e00 = PolyState::symbol(FundamentalSymbol::new(crate::euler::FundamentalRep::Three, 0, 0));
    let s22 = PolyState::symbol(FundamentalSymbol::new(crate::euler::FundamentalRep::ThreeStar, 2, 2));
    let sign = if p % 2 == 0 { -1.0 } else { 1.0 };
    let state = e00.pow(p).mul(&s22.pow(q)).scale(Complex64::new(sign, 0.0));
    let field = ScalarField::from_fn(format!("highest weight {label}"), move |x: &EulerAngles| {
        let (pf, qf) = (f64::from(p), f64::from(q));
        let prefactor = Complex64::from_polar(1.0, -(2.0 * qf + pf) * x.eta() - pf * x.alpha - pf * x.c);
        let u = Complex64::from_polar(x.beta.cos() * x.b.cos() * x.theta.cos(), -x.gamma - x.a);
        let v = Complex64::from_polar(x.beta.sin() * x.b.sin(), x.gamma + x.a);
        let sum: Complex64 = (0..=p)
            .map(|n| {
                let s = if n % 2 == 0 { -1.0 } else { 1.0 };
                s * binomial(p, n) * u.powu(n) * v.powu(p - n)
            })
            .sum();
        prefactor * sum * x.theta.cos().powi(q as i32)
    });
    HighestWeight { label, state, field }
}

/// Settings for irrep generation.
#[derive(Debug, Clone, Copy)]
pub struct GenerationConfig {
    pub bound: u32,
    pub spec: QuadratureSpec,
    /// Relative squared norm below which a lowered state counts as dependent.
    pub rank_tol: f64,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        Self { bound: DEFAULT_BOUND, spec: QuadratureSpec::default(), rank_tol: 1e-10 }
    }
}

#[derive(Debug, Clone)]
struct Step {
    parent: usize,
    op: Ladder,
    projections: Vec<(usize, Complex64)>,
    scale: f64,
}

/// The sequence of lowering, projection and rotation steps that produced a basis.
#[derive(Debug, Clone)]
pub struct Recipe {
    hw_scale: f64,
    steps: Vec<Step>,
    rotations: Vec<(Vec<usize>, DMatrix<Complex64>)>,
}

impl Recipe {
    /// Replays the recipe from `seed` with operators acting on `side`.
    pub fn replay(&self, table: &ActionTable, seed: &PolyState, side: Side) -> Vec<PolyState> {
        let mut gs = vec![seed.scale(Complex64::new(self.hw_scale, 0.0))];
        for step in &self.steps {
            let mut r = table.apply(LadderKind { kind: step.op, side }, &gs[step.parent]);
            for &(m, g) in &step.projections {
                r.axpy(-g, &gs[m]);
            }
            gs.push(r.scale(Complex64::new(step.scale, 0.0)));
        }
        let mut out = gs.clone();
        for (idx, rot) in &self.rotations {
            for (i, &target) in idx.iter().enumerate() {
                let mut s = PolyState::zero();
                for (k, &src) in idx.iter().enumerate() {
                    s.axpy(rot[(i, k)], &gs[src]);
                }
                out[target] = s;
            }
        }
        out
    }
}

/// One basis state of a generated irrep.
#[derive(Debug, Clone)]
pub struct IrrepState {
    pub weight: WeightLabel,
    pub state: PolyState,
}

/// Orthogonal basis of an irrep, each state normalized to V0/d.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub states: Vec<IrrepState>,
    recipe: Recipe,
    gauss_order: usize,
}

fn inner(a: &TrigPoly, b: &TrigPoly, order: usize) -> Complex64 {
    trig_inner_product(a, b, order)
}

/// Orthonormalizes (in input order) and diagonalizes T² on states sharing one weight.
///
/// Returns (2t, rotation) where row i of the rotation gives output i in terms of the
/// Gram-Schmidt basis of the inputs, along with that basis.
fn isospin_rotation(
    table: &ActionTable,
    states: &[PolyState],
    t3x2: i32,
    order: usize,
) -> Result<(Vec<u32>, DMatrix<Complex64>, Vec<PolyState>)> {
    let n = states.len();
    // Gram-Schmidt to a basis with unit Haar norm.
    let mut basis: Vec<PolyState> = Vec::with_capacity(n);
    let mut trig: Vec<TrigPoly> = Vec::with_capacity(n);
    for s in states {
        let ts = poly_to_trig(s);
        let mut r = s.clone();
        for (b, tb) in basis.iter().zip(trig.iter()) {
            r.axpy(-inner(tb, &ts, order), b);
        }
        let tr = poly_to_trig(&r);
        let norm = inner(&tr, &tr, order).re.sqrt();
        if norm <= 0.0 {
            return Err(Error::Config("isospin analysis needs linearly independent states".into()));
        }
        let u = r.scale(Complex64::new(1.0 / norm, 0.0));
        trig.push(poly_to_trig(&u));
        basis.push(u);
    }
    let t3 = f64::from(t3x2) / 2.0;
    let t2_basis: Vec<TrigPoly> = basis
        .iter()
        .map(|u| {
            let lower = table.apply(LadderKind::left(Ladder::TMinus), &table.apply(LadderKind::left(Ladder::TPlus), u));
            let mut s = lower;
            s.axpy(Complex64::new(t3 * (t3 + 1.0), 0.0), u);
            poly_to_trig(&s)
        })
        .collect();
    let m = DMatrix::from_fn(n, n, |i, j| inner(&trig[i], &t2_basis[j], order));
    let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut order_idx: Vec<usize> = (0..n).collect();
    let t2_of = |lambda: f64| -> u32 { ((-1.0 + (1.0 + 4.0 * lambda.max(0.0)).sqrt()).round().max(0.0)) as u32 };
    order_idx.sort_by(|&a, &b| {
        eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b))
    });
    let mut rot = DMatrix::<Complex64>::zeros(n, n);
    let mut labels = Vec::with_capacity(n);
    for (row, &k) in order_idx.iter().enumerate() {
        let v = eig.eigenvectors.column(k);
        let lead = v.iter().find(|z| z.norm() > 1e-8).copied().unwrap_or(Complex64::new(1.0, 0.0));
        let phase = lead.conj() / lead.norm();
        for c in 0..n {
            rot[(row, c)] = v[c] * phase;
        }
        labels.push(t2_of(eig.eigenvalues[k]));
    }
    Ok((labels, rot, basis))
}

/// Splits states sharing one (t3, y) into total-isospin eigenstates, sorted by descending t.
///
/// Outputs carry the Haar norm of the first input.
pub fn isospin_components(states: &[PolyState]) -> Result<Vec<(f64, PolyState)>> {
    isospin_components_with(default_action_table()?, states, QuadratureSpec::default().gauss_order)
}

pub fn isospin_components_with(
    table: &ActionTable,
    states: &[PolyState],
    gauss_order: usize,
) -> Result<Vec<(f64, PolyState)>> {
    let Some(first) = states.first() else {
        return Ok(Vec::new());
    };
    let weights: Vec<Option<Weight>> = states.iter().map(PolyState::row_weight).collect();
    let w = weights[0].ok_or_else(|| Error::Config("state has no definite weight".into()))?;
    if weights.iter().any(|x| *x != Some(w)) {
        return Err(Error::Config("isospin components need states of one weight".into()));
    }
    let tf = poly_to_trig(first);
    let norm = inner(&tf, &tf, gauss_order).re.sqrt();
    let (labels, rot, basis) = isospin_rotation(table, states, w.t3x2, gauss_order)?;
    Ok(labels
        .iter()
        .enumerate()
        .map(|(i, &t2)| {
            let mut s = PolyState::zero();
            for (k, b) in basis.iter().enumerate() {
                s.axpy(rot[(i, k)] * norm, b);
            }
            (f64::from(t2) / 2.0, s)
        })
        .collect())
}

/// Generates the irrep with default settings.
pub fn generate_irrep(label: IrrepLabel) -> Result<Irrep> {
    generate_irrep_with(label, &GenerationConfig::default())
}

/// Breadth-first lowering from the highest weight with Haar Gram-Schmidt per weight space.
pub fn generate_irrep_with(label: IrrepLabel, cfg: &GenerationConfig) -> Result<Irrep> {
    if label.p + label.q > cfg.bound {
        return Err(Error::IrrepTooLarge { p: label.p, q: label.q, bound: cfg.bound });
    }
    if cfg.spec.mode != QuadratureMode::Separable {
        return Err(Error::Config("irrep generation needs separable quadrature".into()));
    }
    cfg.spec.validate()?;
    let table = default_action_table()?;
    let order = cfg.spec.gauss_order;
    let d = label.dim();
    let target = exact_volume() / d as f64;

    let hw = highest_weight(label).state;
    let thw = poly_to_trig(&hw);
    let hw_norm = inner(&thw, &thw, order).re;
    // Undo the (-1)^{p+1} of the highest-weight formula so the basis gives D(identity) = I.
    let sign = if label.p.is_multiple_of(2) { -1.0 } else { 1.0 };
    let hw_scale = sign * (target / hw_norm).sqrt();
    let mut states = vec![hw.scale(Complex64::new(hw_scale, 0.0))];
    let mut trig = vec![poly_to_trig(&states[0])];
    let mut weights = vec![label.highest_weight()];
    let mut steps = Vec::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(parent) = queue.pop_front() {
        for op in [Ladder::TMinus, Ladder::UMinus, Ladder::VMinus] {
            let cand = table.apply(LadderKind::left(op), &states[parent]);
            if cand.is_empty() {
                continue;
            }
            let w = weights[parent].shifted(op.shift());
            let tc = poly_to_trig(&cand);
            let cand_norm = inner(&tc, &tc, order).re;
            if cand_norm <= cfg.rank_tol * target {
                continue;
            }
            let mut r = cand.clone();
            let mut projections = Vec::new();
            for m in (0..states.len()).filter(|&m| weights[m] == w) {
                let g = inner(&trig[m], &tc, order) / target;
                r.axpy(-g, &states[m]);
                projections.push((m, g));
            }
            let tr = poly_to_trig(&r);
            let r_norm = inner(&tr, &tr, order).re;
            if r_norm <= cfg.rank_tol * cand_norm {
                continue;
            }
            let scale = (target / r_norm).sqrt();
            let s = r.scale(Complex64::new(scale, 0.0));
            trig.push(poly_to_trig(&s));
            states.push(s);
            weights.push(w);
            steps.push(Step { parent, op, projections, scale });
            queue.push_back(states.len() - 1);
        }
    }
    if states.len() != d {
        return Err(Error::Generation { p: label.p, q: label.q, found: states.len(), expected: d });
    }

    // Rotate every weight space into isospin eigenstates.
    let mut t2 = vec![0u32; d];
    let mut rotations = Vec::new();
    let mut seen: Vec<Weight> = Vec::new();
    let mut final_states = states.clone();
    for &w in &weights {
        if seen.contains(&w) {
            continue;
        }
        seen.push(w);
        let idx: Vec<usize> = (0..d).filter(|&k| weights[k] == w).collect();
        let group: Vec<PolyState> = idx.iter().map(|&k| states[k].clone()).collect();
        let (labels, rot, basis) = isospin_rotation(table, &group, w.t3x2, order)?;
        // `basis` is the same Gram-Schmidt basis up to the common factor sqrt(V0/d).
        let norm = target.sqrt();
        for (i, &k) in idx.iter().enumerate() {
            t2[k] = labels[i];
            if idx.len() > 1 {
                let mut s = PolyState::zero();
                for (j, b) in basis.iter().enumerate() {
                    s.axpy(rot[(i, j)] * norm, b);
                }
                final_states[k] = s;
            }
        }
        if idx.len() > 1 {
            rotations.push((idx, rot));
        }
    }

    let states = final_states
        .into_iter()
        .zip(weights.iter().zip(t2.iter()))
        .map(|(state, (&weight, &t2))| IrrepState { weight: WeightLabel { t2, weight }, state })
        .collect();
    Ok(Irrep { label, states, recipe: Recipe { hw_scale, steps, rotations }, gauss_order: order })
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    /// Index of the state with the given label, if any.
    pub fn index_of(&self, w: WeightLabel) -> Option<usize> {
        self.states.iter().position(|s| s.weight == w)
    }

    pub fn weights(&self) -> Vec<WeightLabel> {
        self.states.iter().map(|s| s.weight).collect()
    }

    /// Highest-weight row with every column: the functions D_{hw, c}.
    pub fn column_functions(&self) -> Result<Vec<PolyState>> {
        let table = default_action_table()?;
        let hw = highest_weight(self.label).state;
        Ok(self.recipe.replay(table, &hw, Side::Right))
    }

    /// Full matrix of representation functions, `[row][col]`.
    pub fn full_matrix(&self) -> Result<Vec<Vec<PolyState>>> {
        let table = default_action_table()?;
        let cols = self.column_functions()?;
        let inv = Complex64::new(1.0 / self.recipe.hw_scale, 0.0);
        let per_col: Vec<Vec<PolyState>> =
            cols.iter().map(|c| self.recipe.replay(table, &c.scale(inv), Side::Left)).collect();
        let d = self.dim();
        Ok((0..d).map(|r| (0..d).map(|c| per_col[c][r].clone()).collect()).collect())
    }

    /// Matrix of a ladder operator in this basis, from Haar projections.
    pub fn operator_matrix(&self, which: LadderKind) -> Result<DMatrix<Complex64>> {
        let table = default_action_table()?;
        let d = self.dim();
        let norm = exact_volume() / d as f64;
        let trig: Vec<TrigPoly> = self.states.iter().map(|s| poly_to_trig(&s.state)).collect();
        let images: Vec<TrigPoly> =
            self.states.iter().map(|s| poly_to_trig(&table.apply(which, &s.state))).collect();
        Ok(DMatrix::from_fn(d, d, |i, j| inner(&trig[i], &images[j], self.gauss_order) / norm))
    }

    /// Number of T+ and T- steps before a state vanishes, as 2t.
    pub fn isospin_string(&self, index: usize) -> Result<u32> {
        let table = default_action_table()?;
        let count = |op: Ladder| -> u32 {
            let mut s = self.states[index].state.clone();
            let mut n = 0;
            loop {
                let before = poly_to_trig(&s);
                let norm0 = inner(&before, &before, self.gauss_order).re;
                s = table.apply(LadderKind::left(op), &s);
                let after = poly_to_trig(&s);
                if s.is_empty() || inner(&after, &after, self.gauss_order).re <= 1e-18 * norm0 {
                    return n;
                }
                n += 1;
            }
        };
        Ok(count(Ladder::TPlus) + count(Ladder::TMinus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::FundamentalRep;

    fn sym(rep: FundamentalRep, r: u8, c: u8) -> FundamentalSymbol {
        FundamentalSymbol::new(rep, r, c)
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(IrrepLabel::new(1, 0)), 3);
        assert_eq!(dimension(IrrepLabel::new(0, 0)), 1);
        assert_eq!(dimension(IrrepLabel::new(1, 1)), 8);
        assert_eq!(dimension(IrrepLabel::new(2, 2)), 27);
        assert_eq!(dimension(IrrepLabel::new(3, 0)), 10);
    }

    #[test]
    fn action_table_basic_entries() {
        let t = default_action_table().unwrap();
        assert!(t.max_residual() < 1e-6);
        let e00 = sym(FundamentalRep::Three, 0, 0);
        assert_eq!(t.image(LadderKind::left(Ladder::TMinus), e00), &[(sym(FundamentalRep::Three, 1, 0).index(), Complex64::new(1.0, 0.0))]);
        for s in FundamentalSymbol::all() {
            let img = t.image(LadderKind::left(Ladder::T3), s);
            let t3 = s.row_weight().t3();
            if t3 == 0.0 {
                assert!(img.is_empty());
            } else {
                assert_eq!(img, &[(s.index(), Complex64::new(t3, 0.0))]);
            }
            let img = t.image(LadderKind::right(Ladder::Y), s);
            assert_eq!(img.len(), 1, "{s}");
            assert!((img[0].1.re - s.col_weight().y()).abs() < 1e-15);
        }
    }

    #[test]
    fn highest_weight_views_agree() {
        for (p, q) in [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (0, 2)] {
            let hw = highest_weight(IrrepLabel::new(p, q));
            for x in probe_points(5, 50) {
                assert!((hw.state.eval(&x) - hw.field.eval(&x).unwrap()).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn zero_one_highest_weight_is_minus_element() {
        let hw = highest_weight(IrrepLabel::new(0, 1));
        let expected = PolyState::symbol(sym(FundamentalRep::ThreeStar, 2, 2)).scale(Complex64::new(-1.0, 0.0));
        assert_eq!(hw.state, expected);
    }

    #[test]
    fn raising_kills_highest_weights() {
        let t = default_action_table().unwrap();
        for p in 0..=2 {
            for q in 0..=2 {
                let hw = highest_weight(IrrepLabel::new(p, q)).state;
                for k in [Ladder::TPlus, Ladder::UPlus, Ladder::VPlus] {
                    for side in [Side::Left, Side::Right] {
                        assert!(t.apply(LadderKind { kind: k, side }, &hw).is_empty(), "({p},{q}) {k:?} {side:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_and_fundamental_irreps() {
        let one = generate_irrep(IrrepLabel::new(0, 0)).unwrap();
        assert_eq!(one.dim(), 1);
        assert_eq!(one.states[0].state.len(), 1);
        assert_eq!(one.states[0].state.degrees(), Some((0, 0)));

        let three = generate_irrep(IrrepLabel::new(1, 0)).unwrap();
        assert_eq!(three.dim(), 3);
        // First column of the Three matrix, up to the highest-weight sign convention.
        for (k, s) in three.states.iter().enumerate() {
            let e = PolyState::symbol(sym(FundamentalRep::Three, k as u8, 0));
            assert!(s.state.max_abs_diff(&e) < 1e-12, "{k}: {}", s.state);
        }
    }

    #[test]
    fn full_matrices_are_unitary_and_unital() {
        for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1)] {
            let irrep = generate_irrep(IrrepLabel::new(p, q)).unwrap();
            let m = irrep.full_matrix().unwrap();
            let d = irrep.dim();
            let at = |x: &EulerAngles| DMatrix::from_fn(d, d, |r, c| m[r][c].eval(x));
            let id = at(&EulerAngles::identity()) - DMatrix::identity(d, d);
            assert!(id.iter().all(|z| z.norm() < 1e-12), "({p},{q}) D(e) != I");
            for x in probe_points(3, 17) {
                let u = at(&x);
                let r = &u * u.adjoint() - DMatrix::identity(d, d);
                assert!(r.iter().all(|z| z.norm() < 1e-12), "({p},{q})");
            }
        }
    }

    #[test]
    fn generation_respects_bound() {
        let err = generate_irrep(IrrepLabel::new(3, 2)).unwrap_err();
        assert!(matches!(err, Error::IrrepTooLarge { .. }));
    }

    #[test]
    fn octet_basis_is_orthonormal_and_labelled() {
        let oct = generate_irrep(IrrepLabel::new(1, 1)).unwrap();
        assert_eq!(oct.dim(), 8);
        let v = exact_volume() / 8.0;
        let trig: Vec<TrigPoly> = oct.states.iter().map(|s| poly_to_trig(&s.state)).collect();
        for i in 0..8 {
            for j in 0..8 {
                let g = inner(&trig[i], &trig[j], 24);
                let e = if i == j { v } else { 0.0 };
                assert!((g - e).norm() < 1e-10 * v, "{i} {j} {g}");
            }
            assert_eq!(oct.isospin_string(i).unwrap(), oct.states[i].weight.t2);
        }
        let center: Vec<u32> =
            oct.states.iter().filter(|s| s.weight.weight == Weight::new(0, 0)).map(|s| s.weight.t2).collect();
        assert_eq!(center, vec![2, 0]);
    }

    #[test]
    fn casimir_is_constant_on_irreps() {
        let t = default_action_table().unwrap();
        for label in [IrrepLabel::new(1, 0), IrrepLabel::new(0, 1), IrrepLabel::new(1, 1), IrrepLabel::new(2, 0)] {
            let irrep = generate_irrep(label).unwrap();
            for s in &irrep.states {
                let c = casimir(t, Side::Left, &s.state);
                let ts = poly_to_trig(&s.state);
                let tc = poly_to_trig(&c);
                let ev = inner(&ts, &tc, 24) / inner(&ts, &ts, 24);
                assert!((ev - label.casimir()).norm() < 1e-10, "{label} {ev}");
                let resid = c.sub(&s.state.scale(ev));
                let tr = poly_to_trig(&resid);
                assert!(inner(&tr, &tr, 24).re < 1e-20);
            }
        }
    }
}
