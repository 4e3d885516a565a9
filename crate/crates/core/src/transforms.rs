//! Preliminary normalizations and the unfolding family.
//!
//! `H₂` is already subtracted (`I₁` is treated as a parameter), so a system is
//! described by its quadratic part `H₄` (possibly with off-diagonal terms),
//! its cubic part `H₆`, and the five unfolding parameters. The quadratic part
//! is diagonalized by an `id × SO(3)` rotation acting on `(I₂,I₃,I₄)`, which
//! preserves `K` and the sphere; the cubic part is pushed through the same
//! rotation exactly (the rotation matrix entries, floats from the Jacobi
//! sweep, embed exactly into the rationals).

use crate::polyalg::{rat_from_f64, Mono, Poly3, Rat};
use num_traits::{Signed, Zero};

/// Eigenvalues closer than this (relative to the spectral scale) make the
/// rotation non-unique; the non-degeneracy condition already fails there.
pub const REPEATED_EIGENVALUE_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum TransformsError {
    #[error("repeated eigenvalue within tolerance {tol:e}: spectrum {spectrum:?}; the id x SO(3) rotation is not unique and (a_i - a_j) = 0 already violates non-degeneracy")]
    RepeatedEigenvalue { spectrum: [f64; 3], tol: f64 },
    #[error("coefficient set still has off-diagonal quadratic terms; run diagonalize_h4 first")]
    OffDiagonalPresent,
    #[error("non-finite value in quadratic form")]
    NonFinite,
}

/// Coefficients of `H₄ + H₆` before unfolding: diagonal quadratic `a`, cubic
/// `b`, optional off-diagonal quadratic terms `(a₂₃, a₂₄, a₃₄)` and any extra
/// cubic terms kept as a remainder.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSet {
    pub a: [Rat; 3],
    pub b: [Rat; 3],
    pub offdiag: [Rat; 3],
    pub cubic_remainder: Poly3,
}

impl CoeffSet {
    pub fn new_diagonal(a: [Rat; 3], b: [Rat; 3]) -> Self {
        CoeffSet {
            a,
            b,
            offdiag: [Rat::zero(), Rat::zero(), Rat::zero()],
            cubic_remainder: Poly3::zero(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.offdiag.iter().all(|c| c.is_zero())
    }

    /// `(a₁−a₂)(a₂−a₃)(a₃−a₁)·b₁b₂b₃`, evaluated exactly.
    pub fn nondegeneracy_product(&self) -> Rat {
        let [a1, a2, a3] = &self.a;
        let [b1, b2, b3] = &self.b;
        (a1 - a2) * (a2 - a3) * (a3 - a1) * b1 * b2 * b3
    }

    pub fn nondegenerate(&self) -> bool {
        !self.nondegeneracy_product().is_zero()
    }

    /// Quadratic part as a polynomial (diagonal plus off-diagonal terms).
    pub fn h4(&self) -> Poly3 {
        let mut h = Poly3::zero();
        h.add_term(Mono([2, 0, 0]), self.a[0].clone());
        h.add_term(Mono([0, 2, 0]), self.a[1].clone());
        h.add_term(Mono([0, 0, 2]), self.a[2].clone());
        h.add_term(Mono([1, 1, 0]), self.offdiag[0].clone());
        h.add_term(Mono([1, 0, 1]), self.offdiag[1].clone());
        h.add_term(Mono([0, 1, 1]), self.offdiag[2].clone());
        h
    }

    /// Cubic part including the remainder.
    pub fn h6(&self) -> Poly3 {
        let mut h = Poly3::zero();
        h.add_term(Mono([3, 0, 0]), self.b[0].clone());
        h.add_term(Mono([0, 3, 0]), self.b[1].clone());
        h.add_term(Mono([0, 0, 3]), self.b[2].clone());
        &h + &self.cubic_remainder
    }

    /// `H₄ + H₆` (the central singularity, `I₁` omitted).
    pub fn hamiltonian(&self) -> Poly3 {
        &self.h4() + &self.h6()
    }

    /// The symmetric matrix of the quadratic form, as floats.
    fn quadratic_matrix(&self) -> [[f64; 3]; 3] {
        let a: Vec<f64> = self.a.iter().map(crate::polyalg::rat_to_f64).collect();
        let o: Vec<f64> = self.offdiag.iter().map(crate::polyalg::rat_to_f64).collect();
        [
            [a[0], o[0] / 2.0, o[1] / 2.0],
            [o[0] / 2.0, a[1], o[2] / 2.0],
            [o[1] / 2.0, o[2] / 2.0, a[2]],
        ]
    }
}

/// The unfolding parameters `μ₁..μ₅` of the five-parameter family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnfoldingParams {
    pub mu: [f64; 5],
}

impl UnfoldingParams {
    pub fn zero() -> Self {
        UnfoldingParams { mu: [0.0; 5] }
    }

    pub fn new(mu: [f64; 5]) -> Self {
        UnfoldingParams { mu }
    }
}

/// A rotation of the reduced coordinates, columns = eigenvector basis.
#[derive(Debug, Clone, Copy)]
pub struct Rotation3 {
    pub m: [[f64; 3]; 3],
}

impl Rotation3 {
    pub fn identity() -> Self {
        Rotation3 { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Max deviation of `RᵀR` from the identity.
    pub fn orthogonality_residual(&self) -> f64 {
        let m = &self.m;
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Entries embedded exactly into the rationals.
    pub fn to_exact(&self) -> [[Rat; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| rat_from_f64(self.m[i][j]).unwrap()))
    }
}

/// Cyclic Jacobi eigen-decomposition of a symmetric 3x3 matrix.
/// Returns (eigenvalues, eigenvector columns), unsorted.
fn jacobi_eigen(mut a: [[f64; 3]; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
    let mut v = Rotation3::identity().m;
    for _sweep in 0..64 {
        let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if off < 1e-30 * (1.0 + a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2]) {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if a[p][q].abs() < 1e-300 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            // rotate rows/columns p and q of a
            let mut b = a;
            for k in 0..3 {
                b[p][k] = c * a[p][k] - s * a[q][k];
                b[q][k] = s * a[p][k] + c * a[q][k];
            }
            let mut a2 = b;
            for k in 0..3 {
                a2[k][p] = c * b[k][p] - s * b[k][q];
                a2[k][q] = s * b[k][p] + c * b[k][q];
            }
            a = a2;
            // accumulate V <- V J
            for k in 0..3 {
                let vp = v[k][p];
                let vq = v[k][q];
                v[k][p] = c * vp - s * vq;
                v[k][q] = s * vp + c * vq;
            }
        }
    }
    ([a[0][0], a[1][1], a[2][2]], v)
}

/// Diagonalizes the quadratic part by a rotation from `id × SO(3)` and pushes
/// the cubic part through the same rotation.
///
/// Convention: eigenvalues sorted ascending; determinant fixed to `+1` by
/// flipping the last column when necessary. Fails when the spectrum has a
/// repeated eigenvalue within `REPEATED_EIGENVALUE_TOL`.
pub fn diagonalize_h4(c: &CoeffSet) -> Result<(Rotation3, CoeffSet), TransformsError> {
    let q = c.quadratic_matrix();
    if q.iter().flatten().any(|x| !x.is_finite()) {
        return Err(TransformsError::NonFinite);
    }
    if c.is_diagonal() {
        // identity rotation, unchanged coefficients
        return Ok((Rotation3::identity(), c.clone()));
    }
    let (mut eig, mut vec) = jacobi_eigen(q);
    // sort ascending, permuting columns alongside
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| eig[i].partial_cmp(&eig[j]).unwrap());
    let eig_sorted = [eig[order[0]], eig[order[1]], eig[order[2]]];
    let mut v_sorted = [[0.0; 3]; 3];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..3 {
            v_sorted[row][new_col] = vec[row][old_col];
        }
    }
    eig = eig_sorted;
    vec = v_sorted;
    let scale = eig.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (eig[i] - eig[j]).abs() <= REPEATED_EIGENVALUE_TOL * scale {
                return Err(TransformsError::RepeatedEigenvalue {
                    spectrum: eig,
                    tol: REPEATED_EIGENVALUE_TOL,
                });
            }
        }
    }
    let mut rot = Rotation3 { m: vec };
    if rot.det() < 0.0 {
        for row in 0..3 {
            rot.m[row][2] = -rot.m[row][2];
        }
    }
    // push the cubic through: H6'(y) = H6(R y), exactly over the rationals
    let transformed = c.h6().substitute_linear(&rot.to_exact());
    let b_new: [Rat; 3] = [
        transformed.coeff(&Mono([3, 0, 0])),
        transformed.coeff(&Mono([0, 3, 0])),
        transformed.coeff(&Mono([0, 0, 3])),
    ];
    let mut remainder = transformed;
    remainder.add_term(Mono([3, 0, 0]), -b_new[0].clone());
    remainder.add_term(Mono([0, 3, 0]), -b_new[1].clone());
    remainder.add_term(Mono([0, 0, 3]), -b_new[2].clone());
    let a_new: [Rat; 3] = std::array::from_fn(|i| rat_from_f64(eig[i]).unwrap());
    Ok((
        rot,
        CoeffSet {
            a: a_new,
            b: b_new,
            offdiag: [Rat::zero(), Rat::zero(), Rat::zero()],
            cubic_remainder: remainder,
        },
    ))
}

/// Assembles the unfolding family
/// `H = Σ aᵢxᵢ² + Σ bᵢxᵢ³ + μ₁I₂ + μ₂I₃ + μ₃I₄ + μ₄I₂³ + μ₅I₃³`
/// together with `K = I₂² + I₃² + I₄²`. Requires a diagonal coefficient set.
pub fn build_unfolding(
    c: &CoeffSet,
    mu: &UnfoldingParams,
) -> Result<(Poly3, Poly3), TransformsError> {
    if !c.is_diagonal() {
        return Err(TransformsError::OffDiagonalPresent);
    }
    let mut h = c.hamiltonian();
    let unfold_monos = [
        Mono([1, 0, 0]),
        Mono([0, 1, 0]),
        Mono([0, 0, 1]),
        Mono([3, 0, 0]),
        Mono([0, 3, 0]),
    ];
    for (m, &mu_k) in unfold_monos.iter().zip(mu.mu.iter()) {
        if mu_k.is_finite() {
            h.add_term(*m, rat_from_f64(mu_k).unwrap());
        } else {
            return Err(TransformsError::NonFinite);
        }
    }
    Ok((h, crate::poisson::casimir()))
}

/// Exact sign/zero decision of the non-degeneracy product.
pub fn check_nondegeneracy(c: &CoeffSet) -> (bool, Rat) {
    let p = c.nondegeneracy_product();
    (!p.is_zero(), p)
}
