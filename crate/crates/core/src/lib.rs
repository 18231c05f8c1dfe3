//! Fourier analysis on bounded Vilenkin groups at a fixed finite resolution.
//!
//! A bounded Vilenkin group `G_m` is the direct product of cyclic groups
//! `Z_{m_k}`. At resolution `N` every object in this crate is a step function
//! on the `M_N = m_0 ⋯ m_{N−1}` cylinder cells of depth `N`, so integrals are
//! finite sums and every kernel, partial sum and Fejér mean below index `M_N`
//! is represented exactly.
//!
//! Module map:
//!
//! * [`group`]: digit expansions, group arithmetic, cylinders;
//! * [`characters`]: Rademacher functions, characters, Dirichlet/Fejér kernels, `q_A`;
//! * [`transform`]: the fast Vilenkin-Fourier transform, partial sums, Fejér
//!   means, conditional expectations and maximal functions;
//! * [`norms`]: `L_p`, weak-`L_p` and `H_p` quasinorms, modulus of continuity, atoms;
//! * [`counterexamples`]: the divergence constructions and their statistics.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix double precision.

pub mod characters;
pub mod counterexamples;
pub mod error;
pub mod group;
pub mod io;
pub mod norms;
pub mod rng;
pub mod scalar;
pub mod transform;

pub use error::{Result, VilenkinError};
pub use group::{CellIndex, Cylinder, GroupPoint, VilenkinStructure};
pub use scalar::Scalar;
pub use transform::{Spectrum, StepFunction};

pub use num_complex::Complex;

pub type StepFunction64 = StepFunction<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type StepFunction32 = StepFunction<f32>;
pub type Spectrum32 = Spectrum<f32>;
pub type Construction2a64 = counterexamples::Construction2a<f64>;
pub type Construction2b64 = counterexamples::Construction2b<f64>;
pub type AtomicDecomposition64 = norms::AtomicDecomposition<f64>;
