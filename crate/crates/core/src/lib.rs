//! Exact certificates for the codimension-5 universal unfolding of the
//! S¹-symmetric 1:1-resonance Hamiltonian, plus a numerical toolkit for the
//! reduced dynamics on the 2-sphere.
//!
//! The library is organised around the Hopf invariants `I₂, I₃, I₄` of the
//! 1:1 resonance. Everything algebraic (polynomial arithmetic, Poisson
//! brackets, tangent-space ranks, determinant certificates) is carried out
//! over exact rationals; the dynamics layer (trajectories, equilibria, level
//! curves, bifurcation scans) works in floating point on the reduced sphere
//! `I₂² + I₃² + I₄² = r²` and lifts back to the 4-dimensional phase space
//! through the Hopf fibration.

pub mod config;
pub mod dynamics;
pub mod invariants;
pub mod poisson;
pub mod polyalg;
pub mod tangent;
pub mod transforms;

pub use polyalg::{Mono, Poly3, Rat};
