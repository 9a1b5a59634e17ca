//! Tensor-product decomposition and coupling coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::diffops::{probe_points, Ladder, LadderKind, Side};
use crate::error::{Error, Result};
use crate::haar::{exact_volume, poly_to_trig, trig_inner_product, TrigPoly};
use crate::irreps::{default_action_table, generate_irrep_with, GenerationConfig, Irrep, IrrepLabel, WeightLabel};
use crate::poly::{PolyState, Weight};

/// Default bound on d1·d2.
pub const DEFAULT_PRODUCT_BOUND: usize = 81;

/// Imaginary parts above this abort coefficient extraction.
pub const REALNESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct CgConfig {
    pub product_bound: usize,
    pub generation: GenerationConfig,
}

impl Default for CgConfig {
    fn default() -> Self {
        Self { product_bound: DEFAULT_PRODUCT_BOUND, generation: GenerationConfig::default() }
    }
}

/// Coupling coefficients of one target copy inside r1 ⊗ r2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingTable {
    pub factors: (IrrepLabel, IrrepLabel),
    pub target: IrrepLabel,
    pub multiplicity_index: usize,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(WeightLabel, WeightLabel, WeightLabel), f64>,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<(WeightLabel, WeightLabel, WeightLabel), f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(entries.len()))?;
    for ((w1, w2, w), c) in entries {
        seq.serialize_element(&EntryRow::new(*w1, *w2, *w, *c))?;
    }
    seq.end()
}

#[derive(Serialize)]
struct EntryRow {
    t1: f64,
    t31: f64,
    y1: f64,
    t2: f64,
    t32: f64,
    y2: f64,
    t: f64,
    t3: f64,
    y: f64,
    coeff: f64,
}

impl EntryRow {
    fn new(w1: WeightLabel, w2: WeightLabel, w: WeightLabel, coeff: f64) -> Self {
        Self {
            t1: w1.t(),
            t31: w1.t3(),
            y1: w1.y(),
            t2: w2.t(),
            t32: w2.t3(),
            y2: w2.y(),
            t: w.t(),
            t3: w.t3(),
            y: w.y(),
            coeff,
        }
    }
}

impl CouplingTable {
    pub fn coefficient(&self, w1: WeightLabel, w2: WeightLabel, w: WeightLabel) -> f64 {
        self.entries.get(&(w1, w2, w)).copied().unwrap_or(0.0)
    }

    /// Σ|coeff|² for each target state.
    pub fn target_norms(&self) -> BTreeMap<WeightLabel, f64> {
        let mut out = BTreeMap::new();
        for ((_, _, w), c) in &self.entries {
            *out.entry(*w).or_insert(0.0) += c * c;
        }
        out
    }

    /// CSV with exact fractions for the labels and 17 significant digits for coefficients.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t1,t31,y1,t2,t32,y2,T,T3,Y,coeff\n");
        for ((w1, w2, w), c) in &self.entries {
            let cols: Vec<String> = [w1, w2, w].iter().flat_map(|x| x.fractions()).collect();
            let _ = writeln!(out, "{},{c:.16e}", cols.join(","));
        }
        out
    }
}

/// Product basis of r1 ⊗ r2: index i·d2 + j.
struct ProductSpace {
    a: Irrep,
    b: Irrep,
    da: Vec<Vec<TrigPoly>>,
    db: Vec<Vec<TrigPoly>>,
    order: usize,
}

impl ProductSpace {
    fn new(r1: IrrepLabel, r2: IrrepLabel, cfg: &CgConfig) -> Result<Self> {
        let dim = r1.dim() * r2.dim();
        if dim > cfg.product_bound {
            return Err(Error::ProductTooLarge { dim, bound: cfg.product_bound });
        }
        let a = generate_irrep_with(r1, &cfg.generation)?;
        let b = generate_irrep_with(r2, &cfg.generation)?;
        let trig = |m: Vec<Vec<PolyState>>| -> Vec<Vec<TrigPoly>> {
            m.iter().map(|row| row.iter().map(poly_to_trig).collect()).collect()
        };
        let da = trig(a.full_matrix()?);
        let db = trig(b.full_matrix()?);
        Ok(Self { a, b, da, db, order: cfg.generation.spec.gauss_order })
    }

    fn dim(&self) -> usize {
        self.a.dim() * self.b.dim()
    }

    fn weight(&self, n: usize) -> Weight {
        let (i, j) = (n / self.b.dim(), n % self.b.dim());
        self.a.states[i].weight.weight + self.b.states[j].weight.weight
    }

    fn labels(&self, n: usize) -> (WeightLabel, WeightLabel) {
        (self.a.states[n / self.b.dim()].weight, self.b.states[n % self.b.dim()].weight)
    }

    fn pairs_of(&self, w: Weight) -> Vec<usize> {
        (0..self.dim()).filter(|&n| self.weight(n) == w).collect()
    }

    /// (d_c/V0)·∫ conj(D^c_{k,hw}) D^a_{i i'} D^b_{j j'} over rows × cols.
    fn projection(&self, target: &TrigPoly, d_c: usize, rows: &[usize], cols: &[usize]) -> DMatrix<Complex64> {
        let db = self.b.dim();
        let norm = d_c as f64 / exact_volume();
        DMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            let (i, j) = (rows[r] / db, rows[r] % db);
            let (ip, jp) = (cols[c] / db, cols[c] % db);
            let prod = self.da[i][ip].mul(&self.db[j][jp]);
            trig_inner_product(target, &prod, self.order) * norm
        })
    }

    /// Product-space matrix of a left operator: X_a ⊗ 1 + 1 ⊗ X_b.
    fn operator(&self, xa: &DMatrix<Complex64>, xb: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let (na, nb) = (self.a.dim(), self.b.dim());
        DMatrix::from_fn(na * nb, na * nb, |r, c| {
            let (i, j) = (r / nb, r % nb);
            let (k, l) = (c / nb, c % nb);
            let mut v = Complex64::new(0.0, 0.0);
            if j == l {
                v += xa[(i, k)];
            }
            if i == k {
                v += xb[(j, l)];
            }
            v
        })
    }
}

/// Candidate irreps whose highest weight is some weight of the product.
fn candidates(space: &ProductSpace) -> Vec<IrrepLabel> {
    let mut out: Vec<IrrepLabel> = (0..space.dim())
        .filter_map(|n| {
            let w = space.weight(n);
            let p = w.t3x2;
            let twice_q = w.yx3 - p;
            (p >= 0 && twice_q >= 0 && twice_q % 2 == 0).then(|| IrrepLabel::new(p as u32, (twice_q / 2) as u32))
        })
        .filter(|l| l.dim() <= space.dim())
        .collect();
    out.sort_by(|x, y| y.dim().cmp(&x.dim()).then(x.cmp(y)));
    out.dedup();
    out
}

fn multiplicity(space: &ProductSpace, target: &Irrep) -> Result<(usize, Vec<usize>, DMatrix<Complex64>)> {
    let hw = target.label.highest_weight();
    let cols = space.pairs_of(hw);
    let t0 = poly_to_trig(&target.states[0].state);
    let m0 = space.projection(&t0, target.dim(), &cols, &cols);
    let trace: f64 = m0.diagonal().iter().map(|z| z.re).sum();
    Ok((trace.round().max(0.0) as usize, cols, m0))
}

/// Decomposes r1 ⊗ r2 into irreps with multiplicities.
pub fn tensor_decompose(r1: IrrepLabel, r2: IrrepLabel) -> Result<Vec<(IrrepLabel, usize)>> {
    tensor_decompose_with(r1, r2, &CgConfig::default())
}

pub fn tensor_decompose_with(r1: IrrepLabel, r2: IrrepLabel, cfg: &CgConfig) -> Result<Vec<(IrrepLabel, usize)>> {
    let space = ProductSpace::new(r1, r2, cfg)?;
    decompose_space(&space, cfg)
}

fn decompose_space(space: &ProductSpace, cfg: &CgConfig) -> Result<Vec<(IrrepLabel, usize)>> {
    let mut out = Vec::new();
    let mut total = 0;
    for label in candidates(space) {
        let target = generate_irrep_with(label, &cfg.generation)?;
        let (m, _, _) = multiplicity(space, &target)?;
        if m > 0 {
            total += m * label.dim();
            out.push((label, m));
        }
    }
    if total != space.dim() {
        return Err(Error::Decomposition { found: total, expected: space.dim() });
    }
    Ok(out)
}

/// Dense coupling vectors: `vectors[k]` holds ⟨ij | target k⟩ over the product basis.
#[derive(Debug, Clone)]
pub struct CouplingVectors {
    pub target: IrrepLabel,
    pub multiplicity_index: usize,
    pub vectors: Vec<DVector<f64>>,
}

/// Fixes the phase so the first entry above `tol` is positive real.
fn phase_fix(v: &mut DVector<Complex64>, tol: f64) {
    if let Some(lead) = v.iter().find(|z| z.norm() > tol).copied() {
        let ph = lead.conj() / lead.norm();
        v.iter_mut().for_each(|z| *z *= ph);
    }
}

fn realify(v: &DVector<Complex64>) -> Result<DVector<f64>> {
    let imag = v.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > REALNESS_TOL {
        return Err(Error::NotReal { imag });
    }
    Ok(v.map(|z| z.re))
}

/// Orthonormal hw coupling vectors for one target, ordered by descending total
/// isospin of the seeding product state, then Gram-Schmidt.
fn hw_vectors(space: &ProductSpace, cols: &[usize], m0: &DMatrix<Complex64>, mult: usize) -> Vec<DVector<Complex64>> {
    let mut order: Vec<usize> = (0..cols.len()).collect();
    let t2 = |n: usize| {
        let (a, b) = space.labels(cols[n]);
        a.t2 + b.t2
    };
    order.sort_by(|&x, &y| t2(y).cmp(&t2(x)).then(x.cmp(&y)));
    let mut out: Vec<DVector<Complex64>> = Vec::new();
    for &n in &order {
        if out.len() == mult {
            break;
        }
        let mut v: DVector<Complex64> = m0.column(n).into_owned();
        for u in &out {
            let g = u.dotc(&v);
            v -= u * g;
        }
        let norm = v.norm();
        if norm > 1e-6 {
            v /= Complex64::new(norm, 0.0);
            out.push(v);
        }
    }
    for v in &mut out {
        phase_fix(v, 1e-9);
    }
    out
}

/// Coupling vectors from Haar projections for every state of the target.
fn haar_vectors(space: &ProductSpace, target: &Irrep, mult_index: usize) -> Result<CouplingVectors> {
    let (mult, cols, m0) = multiplicity(space, target)?;
    if mult_index >= mult {
        return Err(Error::MultiplicityIndex { index: mult_index, multiplicity: mult });
    }
    let hw = hw_vectors(space, &cols, &m0, mult);
    let u0 = &hw[mult_index];
    let mut vectors = Vec::with_capacity(target.dim());
    for s in &target.states {
        let rows = space.pairs_of(s.weight.weight);
        let mk = space.projection(&poly_to_trig(&s.state), target.dim(), &rows, &cols);
        let uk = &mk * u0;
        let mut full = DVector::<Complex64>::zeros(space.dim());
        for (r, &n) in rows.iter().enumerate() {
            full[n] = uk[r];
        }
        vectors.push(realify(&full)?);
    }
    Ok(CouplingVectors { target: target.label, multiplicity_index: mult_index, vectors })
}

fn table_from(space: &ProductSpace, target: &Irrep, cv: &CouplingVectors) -> CouplingTable {
    let mut entries = BTreeMap::new();
    for (k, v) in cv.vectors.iter().enumerate() {
        for (n, &c) in v.iter().enumerate() {
            if c.abs() > 1e-14 {
                let (w1, w2) = space.labels(n);
                entries.insert((w1, w2, target.states[k].weight), c);
            }
        }
    }
    CouplingTable {
        factors: (space.a.label, space.b.label),
        target: target.label,
        multiplicity_index: cv.multiplicity_index,
        entries,
    }
}

/// Coupling table of one target copy from Haar projections.
pub fn wcg_coefficients(r1: IrrepLabel, r2: IrrepLabel, target: IrrepLabel, mult_index: usize) -> Result<CouplingTable> {
    wcg_coefficients_with(r1, r2, target, mult_index, &CgConfig::default())
}

pub fn wcg_coefficients_with(
    r1: IrrepLabel,
    r2: IrrepLabel,
    target: IrrepLabel,
    mult_index: usize,
    cfg: &CgConfig,
) -> Result<CouplingTable> {
    let space = ProductSpace::new(r1, r2, cfg)?;
    let t = generate_irrep_with(target, &cfg.generation)?;
    let cv = haar_vectors(&space, &t, mult_index)?;
    Ok(table_from(&space, &t, &cv))
}

/// Ladder matrices of an irrep fitted pointwise: L ψ_k = Σ X_{k'k} ψ_{k'}.
pub fn ladder_matrix_pointwise(irrep: &Irrep, op: Ladder, seed: u64) -> Result<DMatrix<Complex64>> {
    let table = default_action_table()?;
    let d = irrep.dim();
    let points = probe_points(3 * d + 10, seed);
    let a = DMatrix::from_fn(points.len(), d, |r, k| irrep.states[k].state.eval(&points[r]));
    let svd = a.svd(true, true);
    let mut x = DMatrix::<Complex64>::zeros(d, d);
    for k in 0..d {
        let image = table.apply(LadderKind::left(op), &irrep.states[k].state);
        let b = DVector::from_fn(points.len(), |r, _| image.eval(&points[r]));
        let col = svd.solve(&b, 1e-12).map_err(|e| Error::Config(format!("least squares failed: {e}")))?;
        x.set_column(k, &col);
    }
    Ok(x)
}

/// Everything the Casimir oracle needs on the product space.
struct ProductOperators {
    ops: BTreeMap<Ladder, DMatrix<Complex64>>,
}

impl ProductOperators {
    fn new(space: &ProductSpace, seed: u64) -> Result<Self> {
        let mut ops = BTreeMap::new();
        for op in Ladder::ALL {
            let xa = ladder_matrix_pointwise(&space.a, op, seed)?;
            let xb = ladder_matrix_pointwise(&space.b, op, seed.wrapping_add(1))?;
            ops.insert(op, space.operator(&xa, &xb));
        }
        Ok(Self { ops })
    }

    fn get(&self, op: Ladder) -> &DMatrix<Complex64> {
        &self.ops[&op]
    }

    fn casimir(&self) -> DMatrix<Complex64> {
        let half = Complex64::new(0.5, 0.0);
        let mut c = self.get(Ladder::T3) * self.get(Ladder::T3)
            + self.get(Ladder::Y) * self.get(Ladder::Y) * Complex64::new(0.75, 0.0);
        for (up, down) in [(Ladder::TPlus, Ladder::TMinus), (Ladder::UPlus, Ladder::UMinus), (Ladder::VPlus, Ladder::VMinus)] {
            c += (self.get(up) * self.get(down) + self.get(down) * self.get(up)) * half;
        }
        c
    }
}

/// Orthonormal basis of the null space of `m` (singular values below `tol`).
fn null_space(m: &DMatrix<Complex64>, tol: f64) -> Vec<DVector<Complex64>> {
    let n = m.ncols();
    // Work with the Hermitian Gram matrix so the full right-singular basis is available.
    let gram = m.adjoint() * m;
    let eig = gram.symmetric_eigen();
    (0..n).filter(|&k| eig.eigenvalues[k].max(0.0).sqrt() < tol).map(|k| eig.eigenvectors.column(k).into_owned()).collect()
}

/// Rebuilds the target basis inside the product space from a hw vector, with
/// the same ordering, lowering-phase and isospin rules used for irrep generation.
fn lower_in_product(
    ops: &ProductOperators,
    space: &ProductSpace,
    target: &Irrep,
    hw: DVector<Complex64>,
) -> Result<Vec<DVector<Complex64>>> {
    let d = target.dim();
    let mut states = vec![hw];
    let mut weights = vec![target.label.highest_weight()];
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(parent) = queue.pop_front() {
        for op in [Ladder::TMinus, Ladder::UMinus, Ladder::VMinus] {
            let cand = ops.get(op) * &states[parent];
            let cn = cand.norm();
            if cn < 1e-9 {
                continue;
            }
            let w = weights[parent].shifted(op.shift());
            let mut r = cand.clone();
            for m in (0..states.len()).filter(|&m| weights[m] == w) {
                let g = states[m].dotc(&cand);
                r -= &states[m] * g;
            }
            let rn = r.norm();
            if rn * rn <= 1e-10 * cn * cn {
                continue;
            }
            states.push(r / Complex64::new(rn, 0.0));
            weights.push(w);
            queue.push_back(states.len() - 1);
        }
    }
    if states.len() != d {
        return Err(Error::Generation { p: target.label.p, q: target.label.q, found: states.len(), expected: d });
    }
    // Isospin rotation per weight space.
    let tp = ops.get(Ladder::TPlus);
    let tm = ops.get(Ladder::TMinus);
    let mut out = vec![DVector::zeros(space.dim()); d];
    let mut done = vec![false; d];
    for k in 0..d {
        if done[k] {
            continue;
        }
        let idx: Vec<usize> = (0..d).filter(|&m| weights[m] == weights[k]).collect();
        let t3 = weights[k].t3();
        let basis = DMatrix::from_columns(&idx.iter().map(|&m| states[m].clone()).collect::<Vec<_>>());
        let t2 = tm * tp + DMatrix::identity(space.dim(), space.dim()) * Complex64::new(t3 * (t3 + 1.0), 0.0);
        let small = basis.adjoint() * t2 * &basis;
        let small = (&small + small.adjoint()) * Complex64::new(0.5, 0.0);
        let eig = small.symmetric_eigen();
        let mut ord: Vec<usize> = (0..idx.len()).collect();
        ord.sort_by(|&a, &b| {
            eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b))
        });
        for (row, &e) in ord.iter().enumerate() {
            let mut v: DVector<Complex64> = eig.eigenvectors.column(e).into_owned();
            if idx.len() == 1 {
                v = DVector::from_element(1, Complex64::new(1.0, 0.0));
            } else {
                phase_fix(&mut v, 1e-8);
            }
            out[idx[row]] = &basis * v;
            done[idx[row]] = true;
        }
    }
    // Reorder to match the generated irrep's labels.
    let mut ordered = Vec::with_capacity(d);
    for s in &target.states {
        let pos = (0..d)
            .find(|&m| weights[m] == s.weight.weight && isospin_of(tp, tm, &out[m], weights[m].t3()) == s.weight.t2)
            .ok_or(Error::Generation { p: target.label.p, q: target.label.q, found: 0, expected: d })?;
        ordered.push(out[pos].clone());
    }
    Ok(ordered)
}

fn isospin_of(tp: &DMatrix<Complex64>, tm: &DMatrix<Complex64>, v: &DVector<Complex64>, t3: f64) -> u32 {
    let lambda = v.dotc(&(tm * (tp * v))).re + t3 * (t3 + 1.0);
    (-1.0 + (1.0 + 4.0 * lambda.max(0.0)).sqrt()).round().max(0.0) as u32
}

/// Agreement between the Haar route and the Casimir oracle for one product.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CgReport {
    pub factors: (IrrepLabel, IrrepLabel),
    pub decomposition: Vec<(IrrepLabel, usize)>,
    /// max |CᵀC - I| over the stacked coefficient matrix
    pub unitarity_residual: f64,
    /// max |C_haar - e^{iχ} C_oracle| per (target, multiplicity), projector distance for multiplicity > 1
    pub oracle_max_diff: f64,
    /// relative Haar norm of L(coupled) - coupled(L) over all targets and ladder operators
    pub equivariance_residual: f64,
    pub max_norm_error: f64,
    pub tables: Vec<CouplingTable>,
}

/// Runs both coupling routes on r1 ⊗ r2 and compares them.
pub fn cg_suite(r1: IrrepLabel, r2: IrrepLabel, cfg: &CgConfig, seed: u64) -> Result<CgReport> {
    let space = ProductSpace::new(r1, r2, cfg)?;
    let decomposition = decompose_space(&space, cfg)?;
    let ops = ProductOperators::new(&space, seed)?;
    let casimir = ops.casimir();
    let n = space.dim();

    let mut stacked: Vec<DVector<f64>> = Vec::new();
    let mut tables = Vec::new();
    let mut oracle_max_diff: f64 = 0.0;
    let mut equivariance_residual: f64 = 0.0;
    let mut max_norm_error: f64 = 0.0;
    for &(label, mult) in &decomposition {
        let target = generate_irrep_with(label, &cfg.generation)?;
        let haar: Vec<CouplingVectors> = (0..mult).map(|r| haar_vectors(&space, &target, r)).collect::<Result<_>>()?;

        // Oracle: hw null space of raising operators and (C - c) within the hw weight space.
        let cols = space.pairs_of(label.highest_weight());
        let restrict = |m: &DMatrix<Complex64>| DMatrix::from_fn(n, cols.len(), |r, c| m[(r, cols[c])]);
        let shift = &casimir - DMatrix::identity(n, n) * Complex64::new(label.casimir(), 0.0);
        let blocks = [restrict(ops.get(Ladder::TPlus)), restrict(ops.get(Ladder::UPlus)), restrict(ops.get(Ladder::VPlus)), restrict(&shift)];
        let stacked_ops = DMatrix::from_fn(4 * n, cols.len(), |r, c| blocks[r / n][(r % n, c)]);
        let null = null_space(&stacked_ops, 1e-6);
        if null.len() != mult {
            return Err(Error::Decomposition { found: null.len(), expected: mult });
        }
        let oracle: Vec<Vec<DVector<Complex64>>> = null
            .into_iter()
            .map(|v| {
                let mut full = DVector::<Complex64>::zeros(n);
                for (r, &c) in cols.iter().enumerate() {
                    full[c] = v[r];
                }
                phase_fix(&mut full, 1e-9);
                lower_in_product(&ops, &space, &target, full)
            })
            .collect::<Result<_>>()?;

        if mult == 1 {
            let h = haar[0].vectors[0].map(|x| Complex64::new(x, 0.0));
            let o = &oracle[0][0];
            let overlap = o.dotc(&h);
            let phase = overlap / overlap.norm();
            for (hk, ok) in haar[0].vectors.iter().zip(oracle[0].iter()) {
                let diff = hk.map(|x| Complex64::new(x, 0.0)) - ok * phase;
                oracle_max_diff = oracle_max_diff.max(diff.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        } else {
            for k in 0..target.dim() {
                let hk = DMatrix::from_columns(&haar.iter().map(|c| c.vectors[k].map(|x| Complex64::new(x, 0.0))).collect::<Vec<_>>());
                let ok = DMatrix::from_columns(&oracle.iter().map(|o| o[k].clone()).collect::<Vec<_>>());
                let diff = &hk * hk.adjoint() - &ok * ok.adjoint();
                oracle_max_diff = oracle_max_diff.max(diff.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }

        for cv in &haar {
            equivariance_residual = equivariance_residual.max(equivariance(&space, &target, cv)?);
            for v in &cv.vectors {
                max_norm_error = max_norm_error.max((v.norm_squared() - 1.0).abs());
            }
            stacked.extend(cv.vectors.iter().cloned());
            tables.push(table_from(&space, &target, cv));
        }
    }
    let c = DMatrix::from_columns(&stacked);
    let unitarity_residual = if c.ncols() == n {
        (c.transpose() * &c - DMatrix::<f64>::identity(n, n)).amax()
    } else {
        f64::INFINITY
    };
    Ok(CgReport {
        factors: (r1, r2),
        decomposition,
        unitarity_residual,
        oracle_max_diff,
        equivariance_residual,
        max_norm_error,
        tables,
    })
}

/// Compares L(Σ C ψ^a ψ^b) with Σ X^c_{k'k} (Σ C ψ^a ψ^b)_{k'} as functions, using
/// one column pair that couples to the target highest weight.
fn equivariance(space: &ProductSpace, target: &Irrep, cv: &CouplingVectors) -> Result<f64> {
    let table = default_action_table()?;
    let ma = space.a.full_matrix()?;
    let mb = space.b.full_matrix()?;
    let cols = space.pairs_of(target.label.highest_weight());
    let hw = &cv.vectors[0];
    // Column pair with the largest hw coupling.
    let col = cols
        .iter()
        .copied()
        .max_by(|&x, &y| hw[x].abs().partial_cmp(&hw[y].abs()).unwrap_or(std::cmp::Ordering::Equal).then(y.cmp(&x)))
        .unwrap_or(0);
    let db = space.b.dim();
    let (ip, jp) = (col / db, col % db);
    let coupled: Vec<PolyState> = cv
        .vectors
        .iter()
        .map(|v| {
            let mut s = PolyState::zero();
            for (n, &c) in v.iter().enumerate() {
                if c != 0.0 {
                    s.axpy(Complex64::new(c, 0.0), &ma[n / db][ip].mul(&mb[n % db][jp]));
                }
            }
            s
        })
        .collect();
    let scale = coupled.iter().map(|s| { let t = poly_to_trig(s); trig_inner_product(&t, &t, space.order).re }).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut worst: f64 = 0.0;
    for op in [Ladder::TPlus, Ladder::TMinus, Ladder::UPlus, Ladder::UMinus, Ladder::VPlus, Ladder::VMinus] {
        let x = target.operator_matrix(LadderKind { kind: op, side: Side::Left })?;
        for k in 0..target.dim() {
            let mut diff = table.apply(LadderKind::left(op), &coupled[k]);
            for kp in 0..target.dim() {
                if x[(kp, k)].norm() > 0.0 {
                    diff.axpy(-x[(kp, k)], &coupled[kp]);
                }
            }
            let t = poly_to_trig(&diff);
            worst = worst.max((trig_inner_product(&t, &t, space.order).re.max(0.0) / scale).sqrt());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE: IrrepLabel = IrrepLabel::new(1, 0);
    const THREE_BAR: IrrepLabel = IrrepLabel::new(0, 1);

    #[test]
    fn decompositions() {
        assert_eq!(tensor_decompose(THREE, THREE_BAR).unwrap(), vec![(IrrepLabel::new(1, 1), 1), (IrrepLabel::new(0, 0), 1)]);
        assert_eq!(tensor_decompose(THREE, THREE).unwrap(), vec![(IrrepLabel::new(2, 0), 1), (IrrepLabel::new(0, 1), 1)]);
        assert_eq!(tensor_decompose(IrrepLabel::new(0, 0), IrrepLabel::new(1, 1)).unwrap(), vec![(IrrepLabel::new(1, 1), 1)]);
    }

    #[test]
    fn product_bound_is_enforced() {
        let cfg = CgConfig { product_bound: 8, ..CgConfig::default() };
        assert!(matches!(tensor_decompose_with(THREE, THREE, &cfg), Err(Error::ProductTooLarge { .. })));
    }

    #[test]
    fn singlet_couples_diagonal_pairs() {
        let t = wcg_coefficients(THREE, THREE_BAR, IrrepLabel::new(0, 0), 0).unwrap();
        assert_eq!(t.entries.len(), 3);
        for ((w1, w2, _), c) in &t.entries {
            assert_eq!(w1.weight + w2.weight, Weight::new(0, 0));
            assert!((c.abs() - 1.0 / 3f64.sqrt()).abs() < 1e-12, "{c}");
        }
    }

    #[test]
    fn multiplicity_index_out_of_range() {
        let err = wcg_coefficients(THREE, THREE_BAR, IrrepLabel::new(1, 1), 1).unwrap_err();
        assert_eq!(err, Error::MultiplicityIndex { index: 1, multiplicity: 1 });
    }

    #[test]
    fn suite_on_small_products() {
        for (a, b) in [(THREE, THREE_BAR), (THREE, THREE), (THREE_BAR, THREE_BAR)] {
            let r = cg_suite(a, b, &CgConfig::default(), 11).unwrap();
            assert!(r.unitarity_residual < 1e-8, "{r:?}");
            assert!(r.oracle_max_diff < 1e-8, "{}", r.oracle_max_diff);
            assert!(r.equivariance_residual < 1e-10, "{}", r.equivariance_residual);
            assert!(r.max_norm_error < 1e-10);
        }
    }

    #[test]
    fn csv_has_header_and_rows() {
        let t = wcg_coefficients(THREE, THREE_BAR, IrrepLabel::new(1, 1), 0).unwrap();
        let csv = t.to_csv();
        assert!(csv.starts_with("t1,t31,y1,t2,t32,y2,T,T3,Y,coeff\n"));
        assert_eq!(csv.lines().count(), t.entries.len() + 1);
        for (_, n) in t.target_norms() {
            assert!((n - 1.0).abs() < 1e-12);
        }
    }
}
