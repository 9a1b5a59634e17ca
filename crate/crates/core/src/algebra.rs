//! Gell-Mann basis, commutators, structure constants and unitary exponentials.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for matrix comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(dim, dim, f))
    }

    /// Builds a matrix from row-major entries. Panics unless `rows` is square.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        Self::from_fn(n, |i, j| rows[i][j])
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.0[(row, col)] = value;
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn conjugate(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.clone().determinant()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(&self.0 * s)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_same_dim(self, other)?;
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d < tol)
    }

    /// max |A - A†|
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).unwrap_or(f64::INFINITY)
    }

    /// max |X†X - I|
    pub fn unitarity_residual(&self) -> f64 {
        let prod = &self.adjoint() * self;
        prod.max_abs_diff(&Self::identity(self.dim()))
            .unwrap_or(f64::INFINITY)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_same_dim(self, other)?;
        Ok(Self(&self.0 * &other.0))
    }
}

fn check_same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::Shape {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

/// The eight Gell-Mann matrices, stored in order λ1..λ8.
#[derive(Debug, Clone)]
pub struct GellMannBasis {
    lambdas: [ComplexMatrix; 8],
}

impl GellMannBasis {
    /// λ_index for index in 1..=8.
    pub fn lambda(&self, index: usize) -> &ComplexMatrix {
        assert!((1..=8).contains(&index), "Gell-Mann index must be in 1..=8");
        &self.lambdas[index - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = &ComplexMatrix> {
        self.lambdas.iter()
    }
}

pub fn gellmann_basis() -> GellMannBasis {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let r3 = 1.0 / 3f64.sqrt();
    let lambdas = [
        ComplexMatrix::from_rows(&[&[z, o, z], &[o, z, z], &[z, z, z]]),
        ComplexMatrix::from_rows(&[&[z, -I, z], &[I, z, z], &[z, z, z]]),
        ComplexMatrix::from_real_diagonal(&[1.0, -1.0, 0.0]),
        ComplexMatrix::from_rows(&[&[z, z, o], &[z, z, z], &[o, z, z]]),
        ComplexMatrix::from_rows(&[&[z, z, -I], &[z, z, z], &[I, z, z]]),
        ComplexMatrix::from_rows(&[&[z, z, z], &[z, z, o], &[z, o, z]]),
        ComplexMatrix::from_rows(&[&[z, z, z], &[z, z, -I], &[z, I, z]]),
        ComplexMatrix::from_real_diagonal(&[r3, r3, -2.0 * r3]),
    ];
    GellMannBasis { lambdas }
}

/// AB - BA
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ab = a.checked_mul(b)?;
    let ba = b.checked_mul(a)?;
    Ok(&ab - &ba)
}

/// Totally antisymmetric su(3) structure constants f_ijk.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    f: [[[f64; 8]; 8]; 8],
}

impl StructureConstants {
    /// f_ijk with 1-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.f[i - 1][j - 1][k - 1]
    }

    /// Largest deviation from total antisymmetry over all index swaps.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let v = self.f[i][j][k];
                    worst = worst
                        .max((v + self.f[j][i][k]).abs())
                        .max((v + self.f[i][k][j]).abs())
                        .max((v + self.f[k][j][i]).abs());
                }
            }
        }
        worst
    }
}

/// f_ijk = (1/4i) tr([λi, λj] λk)
pub fn structure_constants(basis: &GellMannBasis) -> StructureConstants {
    let mut f = [[[0.0; 8]; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let c = commutator(&basis.lambdas[i], &basis.lambdas[j])
                .expect("Gell-Mann matrices are 3x3");
            for k in 0..8 {
                let t = (&c * &basis.lambdas[k]).trace();
                f[i][j][k] = (t / (4.0 * I)).re;
            }
        }
    }
    StructureConstants { f }
}

/// exp(i * angle * generator) for a Hermitian generator, via its eigendecomposition.
///
/// A negative angle gives exp(-i * |angle| * generator), so e.g. exp(-iλ3 α) is
/// `unitary_exp(λ3, -α)`.
pub fn unitary_exp(generator: &ComplexMatrix, angle: f64) -> Result<ComplexMatrix> {
    let residual = generator.hermiticity_residual();
    let scale = generator.max_abs().max(1.0);
    if residual > DEFAULT_TOL * scale {
        return Err(Error::NotHermitian { residual });
    }
    let n = generator.dim();
    // Symmetrize so the eigensolver sees an exactly Hermitian input.
    let herm = (generator.as_matrix() + generator.as_matrix().adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let phases = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, angle * eig.eigenvalues[i])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let v = &eig.eigenvectors;
    Ok(ComplexMatrix(v * phases * v.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_is_trace_orthonormal() {
        let b = gellmann_basis();
        for i in 1..=8 {
            assert!(b.lambda(i).hermiticity_residual() < 1e-15);
            assert!(b.lambda(i).trace().norm() < 1e-15);
            for j in 1..=8 {
                let t = (b.lambda(i) * b.lambda(j)).trace();
                let expected = if i == j { 2.0 } else { 0.0 };
                assert_abs_diff_eq!(t.re, expected, epsilon = 1e-14);
                assert_abs_diff_eq!(t.im, 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn lambda8_is_normalized_diagonal() {
        let b = gellmann_basis();
        let r3 = 3f64.sqrt();
        let expected = ComplexMatrix::from_real_diagonal(&[1.0 / r3, 1.0 / r3, -2.0 / r3]);
        assert!(b.lambda(8).approx_eq(&expected, 1e-15));
    }

    #[test]
    fn commutator_examples() {
        let b = gellmann_basis();
        let c12 = commutator(b.lambda(1), b.lambda(2)).unwrap();
        assert!(c12.approx_eq(&b.lambda(3).scale(c(0.0, 2.0)), 1e-14));
        let c33 = commutator(b.lambda(3), b.lambda(3)).unwrap();
        assert!(c33.max_abs() == 0.0);
        // [λ4, λ5] by explicit entries
        let c45 = commutator(b.lambda(4), b.lambda(5)).unwrap();
        let expected = b.lambda(3) + &b.lambda(8).scale(c(3f64.sqrt(), 0.0));
        assert!(c45.approx_eq(&expected.scale(I), 1e-14));
    }

    #[test]
    fn commutator_rejects_mismatched_dims() {
        let err = commutator(&ComplexMatrix::identity(3), &ComplexMatrix::identity(2));
        assert_eq!(err, Err(Error::Shape { left: 3, right: 2 }));
    }

    #[test]
    fn structure_constants_match_fixture() {
        let f = structure_constants(&gellmann_basis());
        let h = 0.5;
        let s = 3f64.sqrt() / 2.0;
        let fixture = [
            ((1, 2, 3), 1.0),
            ((1, 4, 7), h),
            ((1, 5, 6), -h),
            ((2, 4, 6), h),
            ((2, 5, 7), h),
            ((3, 4, 5), h),
            ((3, 6, 7), -h),
            ((4, 5, 8), s),
            ((6, 7, 8), s),
        ];
        for ((i, j, k), v) in fixture {
            assert_abs_diff_eq!(f.get(i, j, k), v, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(f.get(1, 2, 4), 0.0, epsilon = 1e-15);
        assert!(f.antisymmetry_residual() < 1e-14);
    }

    #[test]
    fn commutators_close_on_structure_constants() {
        let b = gellmann_basis();
        let f = structure_constants(&b);
        for i in 1..=8 {
            for j in 1..=8 {
                let lhs = commutator(b.lambda(i), b.lambda(j)).unwrap();
                let mut rhs = ComplexMatrix::zeros(3);
                for k in 1..=8 {
                    rhs = &rhs + &b.lambda(k).scale(c(0.0, 2.0 * f.get(i, j, k)));
                }
                assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let x = unitary_exp(&ComplexMatrix::zeros(3), 1.3).unwrap();
        assert!(x.approx_eq(&ComplexMatrix::identity(3), 1e-15));
    }

    #[test]
    fn exp_diagonal_generator() {
        let b = gellmann_basis();
        let x = unitary_exp(b.lambda(3), -PI / 3.0).unwrap();
        let e = |t: f64| Complex64::from_polar(1.0, t);
        let z = c(0.0, 0.0);
        let expected = ComplexMatrix::from_rows(&[
            &[e(-PI / 3.0), z, z],
            &[z, e(PI / 3.0), z],
            &[z, z, c(1.0, 0.0)],
        ]);
        assert!(x.approx_eq(&expected, 1e-14));
    }

    #[test]
    fn exp_lambda2_matches_series() {
        let b = gellmann_basis();
        let beta = PI / 4.0;
        let x = unitary_exp(b.lambda(2), beta).unwrap();
        // Power series of exp(i β λ2), summed to convergence.
        let arg = b.lambda(2).scale(c(0.0, beta));
        let mut term = ComplexMatrix::identity(3);
        let mut sum = ComplexMatrix::identity(3);
        for n in 1..40 {
            term = (&term * &arg).scale(c(1.0 / n as f64, 0.0));
            sum = &sum + &term;
        }
        assert!(x.approx_eq(&sum, 1e-14));
        let (cb, sb) = (beta.cos(), beta.sin());
        assert_abs_diff_eq!(x.get(0, 0).re, cb, epsilon = 1e-14);
        assert_abs_diff_eq!(x.get(0, 1).re, sb, epsilon = 1e-14);
        assert_abs_diff_eq!(x.get(1, 0).re, -sb, epsilon = 1e-14);
        assert_abs_diff_eq!(x.get(2, 2).re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn exp_rejects_non_hermitian() {
        let mut g = ComplexMatrix::zeros(3);
        g.set(0, 1, c(1.0, 0.0));
        assert!(matches!(unitary_exp(&g, 0.3), Err(Error::NotHermitian { .. })));
    }
}
