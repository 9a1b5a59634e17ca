//! Euler-angle parameterization: fundamental matrices and the adjoint rotation.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::SMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{gellmann_basis, unitary_exp, ComplexMatrix};

/// The eight angles (α, β, γ, θ, a, b, c, φ).
///
/// Evaluation accepts any real values; only quadrature restricts them to
/// [`EulerAngles::RANGES`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phi: f64,
}

impl EulerAngles {
    /// Canonical integration ranges in axis order. Upper ends are open for the
    /// phase angles and closed for β, b, θ.
    pub const RANGES: [(f64, f64); 8] = [
        (0.0, PI),
        (0.0, FRAC_PI_2),
        (0.0, PI),
        (0.0, FRAC_PI_2),
        (0.0, PI),
        (0.0, FRAC_PI_2),
        (0.0, PI),
        (0.0, 5.441_398_092_702_653),
    ];

    pub fn new(alpha: f64, beta: f64, gamma: f64, theta: f64, a: f64, b: f64, c: f64, phi: f64) -> Self {
        Self { alpha, beta, gamma, theta, a, b, c, phi }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// Angles in axis order α, β, γ, θ, a, b, c, φ.
    pub fn to_array(&self) -> [f64; 8] {
        [self.alpha, self.beta, self.gamma, self.theta, self.a, self.b, self.c, self.phi]
    }

    pub fn from_array(v: [f64; 8]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7])
    }

    /// η = φ/√3
    pub fn eta(&self) -> f64 {
        self.phi / 3f64.sqrt()
    }

    /// Copy with `axis` (1..=8, α..φ) shifted by `delta`.
    pub fn shifted(&self, axis: usize, delta: f64) -> Self {
        let mut v = self.to_array();
        v[axis - 1] += delta;
        Self::from_array(v)
    }

    /// Seeded points drawn uniformly from the canonical ranges.
    pub fn sample(count: usize, seed: u64) -> Vec<Self> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mut v = [0.0; 8];
                for (x, &(lo, hi)) in v.iter_mut().zip(Self::RANGES.iter()) {
                    *x = rng.random_range(lo..hi);
                }
                Self::from_array(v)
            })
            .collect()
    }

    pub fn in_canonical_range(&self) -> bool {
        self.to_array().iter().zip(Self::RANGES.iter()).enumerate().all(|(k, (&x, &(lo, hi)))| {
            let closed = matches!(k, 1 | 3 | 5);
            x >= lo && if closed { x <= hi } else { x < hi }
        })
    }
}

/// The two inequivalent three-dimensional representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FundamentalRep {
    Three,
    ThreeStar,
}

impl FundamentalRep {
    pub const ALL: [FundamentalRep; 2] = [FundamentalRep::Three, FundamentalRep::ThreeStar];

    /// Row (and column) weights as (2·t3, 3·y), in matrix index order.
    pub fn weights(self) -> [(i32, i32); 3] {
        match self {
            FundamentalRep::Three => [(1, 1), (-1, 1), (0, -2)],
            FundamentalRep::ThreeStar => [(-1, -1), (1, -1), (0, 2)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FundamentalRep::Three => "3",
            FundamentalRep::ThreeStar => "3*",
        }
    }

    fn sign(self) -> f64 {
        match self {
            FundamentalRep::Three => 1.0,
            FundamentalRep::ThreeStar => -1.0,
        }
    }
}

/// Ordered product of the eight one-parameter exponentials.
pub fn product_rep(angles: &EulerAngles, rep: FundamentalRep) -> ComplexMatrix {
    let basis = gellmann_basis();
    let s = rep.sign();
    let factors = [
        (3, -s * angles.alpha),
        (2, s * angles.beta),
        (3, -s * angles.gamma),
        (5, s * angles.theta),
        (3, -s * angles.a),
        (2, s * angles.b),
        (3, -s * angles.c),
        (8, -s * angles.phi),
    ];
    factors.iter().fold(ComplexMatrix::identity(3), |acc, &(k, t)| {
        let e = unitary_exp(basis.lambda(k), t).expect("Gell-Mann matrices are Hermitian");
        &acc * &e
    })
}

fn cis(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, t)
}

/// Entries of the closed-form fundamental matrix, `[row][col]`.
pub fn closed_entries(angles: &EulerAngles, rep: FundamentalRep) -> [[Complex64; 3]; 3] {
    let EulerAngles { alpha: al, beta: be, gamma: ga, theta: th, a, b, c, .. } = *angles;
    let et = angles.eta();
    let (cbe, sbe) = (be.cos(), be.sin());
    let (cb, sb) = (b.cos(), b.sin());
    let (ct, st) = (th.cos(), th.sin());
    let r = |x: f64| Complex64::new(x, 0.0);
    match rep {
        FundamentalRep::Three => {
            let p = cis(-ga - a) * ct;
            let m = cis(ga + a);
            [
                [
                    cis(-al - c - et) * (p * (cbe * cb) - m * (sbe * sb)),
                    cis(-al + c - et) * (p * (cbe * sb) + m * (sbe * cb)),
                    cis(-al - ga + 2.0 * et) * (cbe * st),
                ],
                [
                    -cis(al - c - et) * (p * (sbe * cb) + m * (cbe * sb)),
                    -cis(al + c - et) * (p * (sbe * sb) - m * (cbe * cb)),
                    -cis(al - ga + 2.0 * et) * (sbe * st),
                ],
                [
                    -cis(-a - c - et) * (st * cb),
                    -cis(-a + c - et) * (sb * st),
                    cis(2.0 * et) * r(ct),
                ],
            ]
        }
        FundamentalRep::ThreeStar => {
            let p = cis(ga + a) * ct;
            let m = cis(-ga - a);
            [
                [
                    cis(al + c + et) * (p * (cbe * cb) - m * (sbe * sb)),
                    -cis(al - c + et) * (p * (cbe * sb) + m * (sbe * cb)),
                    -cis(al + ga - 2.0 * et) * (cbe * st),
                ],
                [
                    cis(-al + c + et) * (p * (sbe * cb) + m * (cbe * sb)),
                    -cis(-al - c + et) * (p * (sbe * sb) - m * (cbe * cb)),
                    -cis(-al + ga - 2.0 * et) * (sbe * st),
                ],
                [
                    cis(a + c + et) * (st * cb),
                    -cis(a - c + et) * (st * sb),
                    cis(-2.0 * et) * r(ct),
                ],
            ]
        }
    }
}

/// Fundamental matrix assembled from the nine closed-form elements.
pub fn closed_rep(angles: &EulerAngles, rep: FundamentalRep) -> ComplexMatrix {
    let e = closed_entries(angles, rep);
    ComplexMatrix::from_fn(3, |i, j| e[i][j])
}

/// Real 8×8 matrix R with U λi U† = Σj Rij λj.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjointMatrix(pub SMatrix<f64, 8, 8>);

impl AdjointMatrix {
    /// R_ij with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i - 1, j - 1)]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.0 - other.0).abs().max()
    }

    /// max |RᵀR - I|
    pub fn orthogonality_residual(&self) -> f64 {
        (self.0.transpose() * self.0 - SMatrix::<f64, 8, 8>::identity()).abs().max()
    }

    pub fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }
}

/// R_ij = ½ tr(U λi U† λj) for an arbitrary 3×3 unitary U.
pub fn adjoint_of(u: &ComplexMatrix) -> AdjointMatrix {
    let basis = gellmann_basis();
    let ud = u.adjoint();
    let conj: Vec<ComplexMatrix> = (1..=8).map(|i| &(u * basis.lambda(i)) * &ud).collect();
    AdjointMatrix(SMatrix::from_fn(|i, j| 0.5 * (&conj[i] * basis.lambda(j + 1)).trace().re))
}

/// Adjoint matrix by explicit conjugation of the Gell-Mann matrices.
///
/// The closed-form table corresponds to conjugating with the complex conjugate of
/// the product-form Three matrix, so that is the U used here.
pub fn adjoint_from_conjugation(angles: &EulerAngles) -> AdjointMatrix {
    adjoint_of(&product_rep(angles, FundamentalRep::Three).conjugate())
}

/// Adjoint matrix from its 64 closed-form entries.
pub fn adjoint_closed(angles: &EulerAngles) -> AdjointMatrix {
    let EulerAngles { alpha: al, beta: be, gamma: ga, theta: th, a, b, c, .. } = *angles;
    let et = angles.eta();
    let (s2al, c2al) = (2.0 * al).sin_cos();
    let (s2be, c2be) = (2.0 * be).sin_cos();
    let (s2b, c2b) = (2.0 * b).sin_cos();
    let (s2c, c2c) = (2.0 * c).sin_cos();
    let (sbe, cbe) = be.sin_cos();
    let (sb, cb) = b.sin_cos();
    let (st, ct) = th.sin_cos();
    let (s2t, c2t) = (2.0 * th).sin_cos();
    let h = 1.0 - 0.5 * st * st;
    let r3h = 3f64.sqrt() / 2.0;
    let (sag, cag) = (2.0 * a + 2.0 * ga).sin_cos();
    let (spg, cpg) = (al + ga).sin_cos();
    let (smg, cmg) = (al - ga).sin_cos();

    let x1 = cag * c2b * c2c - sag * s2c;
    let y1 = sag * c2b * c2c + cag * s2c;
    let x2 = sag * c2c + cag * c2b * s2c;
    let y2 = sag * c2b * s2c - cag * c2c;

    let mut r = [[0.0f64; 8]; 8];
    r[0] = [
        c2al * c2be * ct * x1 - s2al * ct * y1 - c2al * s2be * h * s2b * c2c,
        -s2al * c2be * ct * x1 - c2al * ct * y1 + s2al * s2be * h * s2b * c2c,
        s2be * ct * x1 + c2be * h * s2b * c2c,
        -0.5 * cpg * cbe * s2t * s2b * c2c - (al - ga - 2.0 * a).cos() * sbe * c2b * c2c * st
            + (-al + ga + 2.0 * a).sin() * sbe * s2c * st,
        0.5 * spg * cbe * s2t * s2b * c2c + (al - ga - 2.0 * a).sin() * sbe * c2b * c2c * st
            - (-al + ga + 2.0 * a).cos() * sbe * s2c * st,
        0.5 * cmg * sbe * s2t * s2b * c2c - (al + ga + 2.0 * a).cos() * cbe * c2b * c2c * st
            + (al + ga + 2.0 * a).sin() * cbe * s2c * st,
        0.5 * smg * sbe * s2t * s2b * c2c + (-al - ga - 2.0 * a).sin() * cbe * c2b * c2c * st
            - (al + ga + 2.0 * a).cos() * cbe * s2c * st,
        -r3h * st * st * s2b * c2c,
    ];
    r[1] = [
        c2al * c2be * ct * x2 - s2al * ct * y2 - c2al * s2be * h * s2b * s2c,
        -s2al * c2be * ct * x2 - c2al * ct * y2 + s2al * s2be * h * s2b * s2c,
        s2be * ct * x2 + c2be * h * s2b * s2c,
        -0.5 * cpg * cbe * s2t * s2b * s2c + (al - ga - 2.0 * a).sin() * sbe * st * c2c
            - (al - ga - 2.0 * a).cos() * sbe * st * c2b * s2c,
        0.5 * spg * cbe * s2t * s2b * s2c + (al - ga - 2.0 * a).cos() * sbe * st * c2c
            + (al - ga - 2.0 * a).sin() * sbe * st * c2b * s2c,
        0.5 * cmg * sbe * s2t * s2b * s2c - (al + ga + 2.0 * a).sin() * cbe * st * c2c
            - (al + ga + 2.0 * a).cos() * cbe * st * c2b * s2c,
        0.5 * smg * sbe * s2t * s2b * s2c + (al + ga + 2.0 * a).cos() * cbe * st * c2c
            - (al + ga + 2.0 * a).sin() * cbe * st * c2b * s2c,
        -r3h * st * st * s2b * s2c,
    ];
    r[2] = [
        -c2al * c2be * ct * s2b * cag + s2al * ct * s2b * sag - c2al * s2be * h * c2b,
        s2al * c2be * ct * s2b * cag + c2al * ct * s2b * sag + s2al * s2be * h * c2b,
        -s2be * ct * s2b * cag + c2be * h * c2b,
        -0.5 * cpg * cbe * s2t * c2b + (al - ga - 2.0 * a).cos() * sbe * st * s2b,
        0.5 * spg * cbe * s2t * c2b - (al - ga - 2.0 * a).sin() * sbe * st * s2b,
        0.5 * cmg * sbe * s2t * c2b + (al + ga + 2.0 * a).cos() * cbe * st * s2b,
        0.5 * smg * sbe * s2t * c2b + (al + ga + 2.0 * a).sin() * cbe * st * s2b,
        -r3h * st * st * c2b,
    ];

    let p4 = a - c + 2.0 * ga - 3.0 * et;
    let q4 = a + c + 3.0 * et;
    let u4 = a + ga - al - c - 3.0 * et;
    let v4 = a + ga + al - c - 3.0 * et;
    let (sp4, cp4) = p4.sin_cos();
    let (sq4, cq4) = q4.sin_cos();
    r[3] = [
        -c2al * c2be * st * sb * cp4 - 0.5 * c2al * s2be * s2t * cq4 * cb + s2al * st * sb * sp4,
        s2al * c2be * st * sb * cp4 + 0.5 * s2al * s2be * s2t * cq4 * cb + c2al * st * sb * sp4,
        -s2be * st * sb * cp4 + 0.5 * c2be * s2t * cq4 * cb,
        cpg * cbe * c2t * cq4 * cb - spg * cbe * sq4 * cb - sbe * ct * sb * u4.cos(),
        -spg * cbe * c2t * cq4 * cb - cpg * cbe * sq4 * cb - sbe * ct * sb * u4.sin(),
        -cmg * sbe * c2t * cq4 * cb - smg * sbe * sq4 * cb - cbe * ct * sb * v4.cos(),
        -smg * sbe * c2t * cq4 * cb + cmg * sbe * sq4 * cb - cbe * ct * sb * v4.sin(),
        r3h * s2t * cq4 * cb,
    ];
    r[4] = [
        c2al * c2be * st * sb * sp4 - 0.5 * c2al * s2be * s2t * sq4 * cb + s2al * st * sb * cp4,
        -s2al * c2be * st * sb * sp4 + 0.5 * s2al * s2be * s2t * sq4 * cb + c2al * st * sb * cp4,
        s2be * st * sb * sp4 + 0.5 * c2be * s2t * cb * sq4,
        cpg * cbe * c2t * sq4 * cb + spg * cbe * cq4 * cb + sbe * ct * sb * u4.sin(),
        -spg * cbe * c2t * sq4 * cb + cpg * cbe * cq4 * cb - sbe * ct * sb * u4.cos(),
        -cmg * sbe * c2t * sq4 * cb + smg * sbe * cq4 * cb + cbe * ct * sb * v4.sin(),
        -smg * sbe * c2t * sq4 * cb - cmg * sbe * cq4 * cb - cbe * ct * sb * v4.cos(),
        r3h * s2t * sq4 * cb,
    ];

    let p6 = a + c + 2.0 * ga - 3.0 * et;
    let q6 = a - c + 3.0 * et;
    let u6 = a + c + ga - al - 3.0 * et;
    let v6 = a + c + ga + al - 3.0 * et;
    let (sp6, cp6) = p6.sin_cos();
    let (sq6, cq6) = q6.sin_cos();
    r[5] = [
        c2al * c2be * st * cb * cp6 - 0.5 * c2al * s2be * s2t * cq6 * sb - s2al * st * cb * sp6,
        -s2al * c2be * st * cb * cp6 + 0.5 * s2al * s2be * s2t * cq6 * sb - c2al * st * cb * sp6,
        s2be * st * cb * cp6 + 0.5 * c2be * s2t * sb * cq6,
        cpg * cbe * c2t * cq6 * sb - spg * cbe * sq6 * sb + sbe * ct * cb * u6.cos(),
        -spg * cbe * c2t * cq6 * sb - cpg * cbe * sq6 * sb + sbe * ct * cb * u6.sin(),
        -cmg * sbe * c2t * cq6 * sb - smg * sbe * sq6 * sb + cbe * ct * cb * v6.cos(),
        -smg * sbe * c2t * cq6 * sb + cmg * sbe * sq6 * sb + cbe * ct * cb * v6.sin(),
        r3h * s2t * cq6 * sb,
    ];
    r[6] = [
        -c2al * c2be * st * cb * sp6 - 0.5 * c2al * s2be * s2t * sq6 * sb - s2al * st * cb * cp6,
        s2al * c2be * st * cb * sp6 + 0.5 * s2al * s2be * s2t * sq6 * sb - c2al * st * cb * cp6,
        -s2be * st * cb * sp6 + 0.5 * c2be * s2t * sb * sq6,
        cpg * cbe * c2t * sq6 * sb + spg * cbe * cq6 * sb - sbe * ct * cb * u6.sin(),
        -spg * cbe * c2t * sq6 * sb + cpg * cbe * cq6 * sb + sbe * ct * cb * u6.cos(),
        -cmg * sbe * c2t * sq6 * sb + smg * sbe * cq6 * sb - cbe * ct * cb * v6.sin(),
        -smg * sbe * c2t * sq6 * sb - cmg * sbe * cq6 * sb + cbe * ct * cb * v6.cos(),
        r3h * s2t * sq6 * sb,
    ];
    r[7] = [
        r3h * c2al * s2be * st * st,
        -r3h * s2al * s2be * st * st,
        -r3h * c2be * st * st,
        -r3h * cpg * cbe * s2t,
        r3h * spg * cbe * s2t,
        r3h * cmg * sbe * s2t,
        r3h * smg * sbe * s2t,
        1.0 - 1.5 * st * st,
    ];
    AdjointMatrix(SMatrix::from_fn(|i, j| r[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_angles(rng: &mut ChaCha8Rng) -> EulerAngles {
        let mut v = [0.0; 8];
        for (x, &(lo, hi)) in v.iter_mut().zip(EulerAngles::RANGES.iter()) {
            *x = rng.random_range(lo..hi);
        }
        EulerAngles::from_array(v)
    }

    #[test]
    fn phi_range_is_sqrt3_pi() {
        assert_abs_diff_eq!(EulerAngles::RANGES[7].1, 3f64.sqrt() * PI, epsilon = 1e-15);
    }

    #[test]
    fn identity_angles_give_identity() {
        let id = ComplexMatrix::identity(3);
        for rep in FundamentalRep::ALL {
            assert!(product_rep(&EulerAngles::identity(), rep).approx_eq(&id, 1e-15));
            assert!(closed_rep(&EulerAngles::identity(), rep).approx_eq(&id, 1e-15));
        }
        let adj = adjoint_closed(&EulerAngles::identity());
        assert!(adj.max_abs_diff(&AdjointMatrix(SMatrix::identity())) < 1e-15);
    }

    #[test]
    fn closed_form_spot_values() {
        let mut x = EulerAngles::identity();
        x.theta = FRAC_PI_2;
        assert!(product_rep(&x, FundamentalRep::Three).get(2, 2).norm() < 1e-15);

        let x = EulerAngles { phi: 3f64.sqrt() * PI / 4.0, theta: PI / 6.0, ..Default::default() };
        let e = closed_rep(&x, FundamentalRep::Three).get(0, 2);
        assert_abs_diff_eq!(e.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.im, 0.5, epsilon = 1e-15);

        let x = EulerAngles { theta: PI / 3.0, ..Default::default() };
        assert_abs_diff_eq!(closed_rep(&x, FundamentalRep::ThreeStar).get(2, 2).re, 0.5, epsilon = 1e-15);

        let x = EulerAngles { theta: FRAC_PI_2, ..Default::default() };
        assert_abs_diff_eq!(adjoint_closed(&x).get(8, 8), -0.5, epsilon = 1e-15);
    }

    #[test]
    fn closed_matches_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = random_angles(&mut rng);
            for rep in FundamentalRep::ALL {
                let d = product_rep(&x, rep).max_abs_diff(&closed_rep(&x, rep)).unwrap();
                assert!(d < 1e-12, "{rep:?}: {d:e}");
            }
        }
    }

    #[test]
    fn adjoint_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let x = random_angles(&mut rng);
            let rc = adjoint_closed(&x);
            let rg = adjoint_from_conjugation(&x);
            assert!(rc.max_abs_diff(&rg) < 1e-10);
            assert!(rc.orthogonality_residual() < 1e-10);
            assert_abs_diff_eq!(rc.determinant(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn adjoint_row8_at_theta_half_pi() {
        let x = EulerAngles { theta: FRAC_PI_2, ..Default::default() };
        let r = adjoint_from_conjugation(&x);
        let r3h = 3f64.sqrt() / 2.0;
        let expected = [r3h * 0.0, 0.0, -r3h, 0.0, 0.0, 0.0, 0.0, -0.5];
        for (j, v) in expected.iter().enumerate() {
            assert_abs_diff_eq!(r.get(8, j + 1), *v, epsilon = 1e-14);
        }
    }

    #[test]
    fn adjoint_reverses_products() {
        // With R_ij indexing rows by the conjugated generator, R(U1 U2) = R(U2) R(U1).
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let u1 = product_rep(&random_angles(&mut rng), FundamentalRep::Three);
            let u2 = product_rep(&random_angles(&mut rng), FundamentalRep::Three);
            let lhs = adjoint_of(&(&u1 * &u2));
            let rhs = adjoint_of(&u2).compose(&adjoint_of(&u1));
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn canonical_range_membership() {
        assert!(EulerAngles::identity().in_canonical_range());
        let x = EulerAngles { alpha: PI, ..Default::default() };
        assert!(!x.in_canonical_range());
        let x = EulerAngles { beta: FRAC_PI_2, ..Default::default() };
        assert!(x.in_canonical_range());
    }
}
