//! The Hopf invariants of the 1:1-resonance S¹ action on ℝ⁴.
//!
//! Coordinates are ordered `z = (q₁, p₁, q₂, p₂)` so the circle action is
//! block-diagonal: `s1_act` rotates the `(q₁,p₁)` and `(q₂,p₂)` planes by the
//! same angle. The four generators
//!
//! ```text
//!   I₁ = ½(q₁² + p₁² + q₂² + p₂²)      I₃ = q₁q₂ + p₁p₂
//!   I₂ = ½(q₁² + p₁² − q₂² − p₂²)      I₄ = q₁p₂ − q₂p₁
//! ```
//!
//! satisfy the syzygy `I₁² = I₂² + I₃² + I₄²`; `hopf_map` sends the energy
//! 3-sphere `I₁ = h₂` onto the reduced 2-sphere of radius `h₂`.

use crate::polyalg::Poly3;

/// Relative syzygy tolerance accepted by `hopf_lift` (inputs come from
/// floating-point reduced dynamics, not exact algebra).
pub const LIFT_SYZYGY_TOL: f64 = 1e-9;

/// Below `|I₁+I₂| < POLE_BRANCH_TOL · I₁` the lift switches to the
/// `z₁ = 0` branch of the Hopf bundle (no single global section exists).
pub const POLE_BRANCH_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum InvariantsError {
    #[error("syzygy violated: |I1^2 - (I2^2+I3^2+I4^2)| = {residual:e} exceeds {tolerance:e} (off-cone point has no fiber)")]
    SyzygyViolation { residual: f64, tolerance: f64 },
    #[error("I1 = {0} is negative; the invariant cone requires I1 >= 0")]
    NegativeI1(f64),
}

/// A point of the standard symplectic ℝ⁴, ordered `(q₁, p₁, q₂, p₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub q1: f64,
    pub p1: f64,
    pub q2: f64,
    pub p2: f64,
}

impl PhasePoint {
    pub fn new(q1: f64, p1: f64, q2: f64, p2: f64) -> Self {
        PhasePoint { q1, p1, q2, p2 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q1, self.p1, self.q2, self.p2]
    }

    pub fn from_array(z: [f64; 4]) -> Self {
        PhasePoint::new(z[0], z[1], z[2], z[3])
    }
}

/// Values of the four generators at a phase-space point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantVector {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
}

impl InvariantVector {
    pub fn new(i1: f64, i2: f64, i3: f64, i4: f64) -> Self {
        InvariantVector { i1, i2, i3, i4 }
    }

    /// `I₁² − (I₂² + I₃² + I₄²)`, zero on the invariant cone.
    pub fn syzygy_residual(&self) -> f64 {
        self.i1 * self.i1 - (self.i2 * self.i2 + self.i3 * self.i3 + self.i4 * self.i4)
    }

    /// Residual scaled by `max(I₁², 1e−300)` so it is meaningful near 0.
    pub fn syzygy_residual_relative(&self) -> f64 {
        self.syzygy_residual().abs() / (self.i1 * self.i1).max(1e-300)
    }
}

/// A point on the reduced sphere `x₂² + x₃² + x₄² = r²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedPoint {
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
    pub r: f64,
}

impl ReducedPoint {
    pub fn new(x2: f64, x3: f64, x4: f64, r: f64) -> Self {
        ReducedPoint { x2, x3, x4, r }
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x2, self.x3, self.x4]
    }

    /// `|x₂²+x₃²+x₄² − r²| / r²`.
    pub fn on_sphere_residual(&self) -> f64 {
        let n2 = self.x2 * self.x2 + self.x3 * self.x3 + self.x4 * self.x4;
        (n2 - self.r * self.r).abs() / (self.r * self.r).max(1e-300)
    }
}

/// The Hopf map: generator values at `z`.
pub fn hopf_map(z: PhasePoint) -> InvariantVector {
    let a = z.q1 * z.q1 + z.p1 * z.p1;
    let b = z.q2 * z.q2 + z.p2 * z.p2;
    InvariantVector {
        i1: 0.5 * (a + b),
        i2: 0.5 * (a - b),
        i3: z.q1 * z.q2 + z.p1 * z.p2,
        i4: z.q1 * z.p2 - z.q2 * z.p1,
    }
}

/// The S¹ action `z ↦ R_φ z`: simultaneous rotation of both symplectic planes.
pub fn s1_act(phi: f64, z: PhasePoint) -> PhasePoint {
    let (s, c) = phi.sin_cos();
    PhasePoint {
        q1: c * z.q1 - s * z.p1,
        p1: s * z.q1 + c * z.p1,
        q2: c * z.q2 - s * z.p2,
        p2: s * z.q2 + c * z.p2,
    }
}

/// Inverts the Hopf map on the fiber parametrized by `theta`.
///
/// With `z₁ = q₁+ip₁`, `z₂ = q₂+ip₂`: away from the pole `I₂ = −I₁` the phase
/// is attached to `z₁ = √(I₁+I₂)·e^{iθ}` and `z₂ = (I₃+iI₄)/z̄₁`; on the pole
/// branch `z₁ = 0`, `z₂ = √(2I₁)·e^{iθ}`. Rejects off-cone inputs.
pub fn hopf_lift(v: InvariantVector, theta: f64) -> Result<PhasePoint, InvariantsError> {
    if v.i1 < 0.0 {
        return Err(InvariantsError::NegativeI1(v.i1));
    }
    let rel = v.syzygy_residual_relative();
    if v.i1 > 0.0 && rel > LIFT_SYZYGY_TOL {
        return Err(InvariantsError::SyzygyViolation {
            residual: v.syzygy_residual().abs(),
            tolerance: LIFT_SYZYGY_TOL * v.i1 * v.i1,
        });
    }
    let (s, c) = theta.sin_cos();
    let z1_sq = v.i1 + v.i2;
    if z1_sq <= POLE_BRANCH_TOL * v.i1 {
        let rho = (2.0 * v.i1).max(0.0).sqrt();
        return Ok(PhasePoint::new(0.0, 0.0, rho * c, rho * s));
    }
    let rho = z1_sq.sqrt();
    let q1 = rho * c;
    let p1 = rho * s;
    // z2 = (I3 + i I4) / conj(z1) = (I3 + i I4) e^{i theta} / rho
    let q2 = (v.i3 * c - v.i4 * s) / rho;
    let p2 = (v.i3 * s + v.i4 * c) / rho;
    Ok(PhasePoint::new(q1, p1, q2, p2))
}

/// Hamiltonian vector fields of the four generators at `z`, in the `(q₁,p₁,q₂,p₂)`
/// ordering with the standard bracket `{f,g} = Σ ∂f/∂q ∂g/∂p − ∂f/∂p ∂g/∂q`.
fn generator_fields(z: PhasePoint) -> [[f64; 4]; 4] {
    [
        [z.p1, -z.q1, z.p2, -z.q2],  // X_{I1}
        [z.p1, -z.q1, -z.p2, z.q2],  // X_{I2}
        [z.p2, -z.q2, z.p1, -z.q1],  // X_{I3}
        [-z.q2, -z.p2, z.q1, z.p1],  // X_{I4}
    ]
}

/// The canonical vector field of `H(I₂,I₃,I₄)` (plus `I₁` when `include_h2`),
/// assembled by the chain rule: `X_H(z) = Σ_j (∂H/∂I_j)(I(z)) · X_{I_j}(z)`.
pub fn full_flow_field(z: PhasePoint, h: &Poly3, include_h2: bool) -> [f64; 4] {
    let v = hopf_map(z);
    let x = [v.i2, v.i3, v.i4];
    let fields = generator_fields(z);
    let mut out = [0.0; 4];
    if include_h2 {
        out = fields[0];
    }
    for axis in 0..3 {
        let w = h.partial(axis).eval_f64(x);
        if w != 0.0 {
            for k in 0..4 {
                out[k] += w * fields[axis + 1][k];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, ratio, Mono, Poly3};
    use proptest::prelude::*;

    #[test]
    fn hopf_map_unit_q1() {
        let v = hopf_map(PhasePoint::new(1.0, 0.0, 0.0, 0.0));
        assert_eq!((v.i1, v.i2, v.i3, v.i4), (0.5, 0.5, 0.0, 0.0));
    }

    #[test]
    fn hopf_map_mixed_point() {
        let v = hopf_map(PhasePoint::new(0.0, 1.0, 1.0, 0.0));
        assert_eq!((v.i1, v.i2, v.i3, v.i4), (1.0, 0.0, 0.0, -1.0));
    }

    #[test]
    fn s1_act_identity_and_quarter_turn() {
        let z = PhasePoint::new(0.3, -1.2, 0.7, 2.0);
        let same = s1_act(0.0, z);
        assert_eq!(same, z);
        let rot = s1_act(std::f64::consts::FRAC_PI_2, PhasePoint::new(1.0, 0.0, 0.0, 0.0));
        assert!((rot.q1 - 0.0).abs() < 1e-15);
        assert!((rot.p1 - 1.0).abs() < 1e-15);
        assert_eq!((rot.q2, rot.p2), (0.0, 0.0));
    }

    #[test]
    fn lift_round_trip_basic() {
        let v = InvariantVector::new(0.5, 0.5, 0.0, 0.0);
        let z = hopf_lift(v, 0.0).unwrap();
        assert!((z.q1 - 1.0).abs() < 1e-15);
        assert!(z.p1.abs() < 1e-15 && z.q2.abs() < 1e-15 && z.p2.abs() < 1e-15);
    }

    #[test]
    fn lift_pole_branch() {
        let v = InvariantVector::new(1.0, -1.0, 0.0, 0.0);
        let z = hopf_lift(v, 0.0).unwrap();
        assert!((z.q2 - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!((z.q1, z.p1, z.p2), (0.0, 0.0, 0.0));
    }

    #[test]
    fn lift_rejects_off_cone_points() {
        let v = InvariantVector::new(1.0, 0.5, 0.5, 0.5);
        assert!(matches!(
            hopf_lift(v, 0.0),
            Err(InvariantsError::SyzygyViolation { .. })
        ));
        assert!(matches!(
            hopf_lift(InvariantVector::new(-1.0, 0.0, 0.0, 0.0), 0.0),
            Err(InvariantsError::NegativeI1(_))
        ));
    }

    #[test]
    fn harmonic_oscillator_field() {
        let f = full_flow_field(PhasePoint::new(1.0, 0.0, 0.0, 0.0), &Poly3::zero(), true);
        assert_eq!(f, [0.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn field_vanishes_invariant_derivative_at_lifted_equilibrium() {
        // H = I2^2: the reduced field 2(x x grad H) vanishes at the pole
        // (r,0,0); its lift is a relative equilibrium, so d/dt I_j = 0 along
        // the full field for j = 2,3,4 (finite differences over a short run).
        let h = Poly3::monomial(Mono([2, 0, 0]), rat(1));
        let v = InvariantVector::new(1.0, 1.0, 0.0, 0.0);
        let mut z = hopf_lift(v, 0.0).unwrap();
        let dt = 1e-4;
        for _ in 0..200 {
            let k1 = full_flow_field(z, &h, true);
            let mid = PhasePoint::from_array(std::array::from_fn(|i| {
                z.to_array()[i] + 0.5 * dt * k1[i]
            }));
            let k2 = full_flow_field(mid, &h, true);
            z = PhasePoint::from_array(std::array::from_fn(|i| z.to_array()[i] + dt * k2[i]));
        }
        let w = hopf_map(z);
        assert!((w.i2 - 1.0).abs() < 1e-9);
        assert!(w.i3.abs() < 1e-9 && w.i4.abs() < 1e-9);
    }

    fn arb_phase() -> impl Strategy<Value = PhasePoint> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_map(|(q1, p1, q2, p2)| PhasePoint::new(q1, p1, q2, p2))
    }

    proptest! {
        #[test]
        fn syzygy_holds_on_hopf_image(z in arb_phase()) {
            let v = hopf_map(z);
            prop_assert!(v.syzygy_residual_relative() <= 1e-14 || v.syzygy_residual().abs() <= 1e-14);
            prop_assert!(v.i1 >= 0.0);
        }

        #[test]
        fn hopf_map_is_s1_invariant(z in arb_phase(), phi in -10.0..10.0f64) {
            let v = hopf_map(z);
            let w = hopf_map(s1_act(phi, z));
            prop_assert!((v.i1 - w.i1).abs() <= 1e-12);
            prop_assert!((v.i2 - w.i2).abs() <= 1e-12);
            prop_assert!((v.i3 - w.i3).abs() <= 1e-12);
            prop_assert!((v.i4 - w.i4).abs() <= 1e-12);
        }

        #[test]
        fn lift_round_trip(z in arb_phase(), theta in -5.0..5.0f64) {
            let v = hopf_map(z);
            prop_assume!(v.i1 > 1e-6);
            let lifted = hopf_lift(v, theta).unwrap();
            let w = hopf_map(lifted);
            let scale = v.i1.max(1.0);
            prop_assert!((v.i1 - w.i1).abs() <= 1e-10 * scale);
            prop_assert!((v.i2 - w.i2).abs() <= 1e-10 * scale);
            prop_assert!((v.i3 - w.i3).abs() <= 1e-10 * scale);
            prop_assert!((v.i4 - w.i4).abs() <= 1e-10 * scale);
        }

        #[test]
        fn fiber_phases_differ_by_the_action(z in arb_phase(), t1 in -3.0..3.0f64, t2 in -3.0..3.0f64) {
            let v = hopf_map(z);
            prop_assume!(v.i1 > 1e-6 && v.i1 + v.i2 > 1e-6 * v.i1);
            let a = hopf_lift(v, t1).unwrap();
            let b = s1_act(t1 - t2, hopf_lift(v, t2).unwrap());
            for (x, y) in a.to_array().iter().zip(b.to_array().iter()) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }

        #[test]
        fn hamiltonian_conserved_by_its_own_flow(z in arb_phase(), c2 in -2.0..2.0f64, c3 in -2.0..2.0f64) {
            // random cubic H: dH/dt = grad H . X_H = 0 up to rounding
            let mut h = Poly3::zero();
            h.add_term(Mono([2, 0, 0]), crate::polyalg::rat_from_f64(c2).unwrap());
            h.add_term(Mono([0, 1, 1]), crate::polyalg::rat_from_f64(c3).unwrap());
            h.add_term(Mono([0, 0, 3]), ratio(1, 2));
            let f = full_flow_field(z, &h, false);
            let v = hopf_map(z);
            let x = [v.i2, v.i3, v.i4];
            // chain rule: dH/dt = sum_j dH/dI_j * (grad_z I_j . X_H)
            let grads = [
                [z.q1, z.p1, -z.q2, -z.p2], // grad I2
                [z.q2, z.p2, z.q1, z.p1],   // grad I3
                [z.p2, -z.q2, -z.p1, z.q1], // grad I4
            ];
            let mut dh = 0.0;
            for axis in 0..3 {
                let didt: f64 = grads[axis].iter().zip(f.iter()).map(|(g, v)| g * v).sum();
                dh += h.partial(axis).eval_f64(x) * didt;
            }
            let scale = 1.0 + f.iter().map(|v| v * v).sum::<f64>();
            prop_assert!(dh.abs() <= 1e-10 * scale);
        }
    }
}
