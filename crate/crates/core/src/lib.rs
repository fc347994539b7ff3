//! Simulation and verification toolkit for a quantum search circuit whose
//! diffusion step is a product of single-qubit x-rotations, alongside
//! Grover's circuit.
//!
//! Both circuits leave a small invariant subspace fixed: two dimensions for
//! Grover, the `n + 1` dimensional symmetric (collective-spin) sector for the
//! separable circuit with one marked item, and a product of two symmetric
//! sectors for two marked items. Everything here works inside those subspaces
//! except [`statevector`], which is the brute-force `2^n` oracle the reduced
//! engines are checked against.
//!
//! The numerical core is generic over the floating point type through
//! [`Real`]; the `*64` aliases at the crate root fix it to `f64`, which is
//! what every tolerance in the test suites assumes.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aqc;
pub mod error;
pub mod lemma;
pub mod linalg;
pub mod phase_solver;
pub mod reduced_sim;
pub mod spectral;
pub mod spin_space;
pub mod statevector;

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

pub use error::{Error, Result};
pub use num_complex::Complex;

/// Floating point scalar used throughout the crate: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count into `Self`.
    #[inline]
    fn count(x: usize) -> Self {
        Self::from_usize(x).expect("count representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type BinomialWeights64 = spin_space::BinomialWeights<f64>;
pub type OverlapBasis64 = spin_space::OverlapBasis<f64>;
pub type OmegaParam64 = phase_solver::OmegaParam<f64>;
pub type PhaseSolution64 = phase_solver::PhaseSolution<f64>;
pub type CircuitSpec64 = reduced_sim::CircuitSpec<f64>;
pub type ReducedOperator64 = reduced_sim::ReducedOperator<f64>;
pub type TableRow64 = reduced_sim::TableRow<f64>;
pub type FullState64 = statevector::FullState<f64>;
pub type SpectralReport64 = spectral::SpectralReport<f64>;
pub type MomentReport64 = lemma::MomentReport<f64>;
pub type HamiltonianFamily64 = aqc::HamiltonianFamily<f64>;
pub type GapScan64 = aqc::GapScan<f64>;
pub type EvolutionTrace64 = aqc::EvolutionTrace<f64>;
pub type ComplexMatrix64 = linalg::Matrix<Complex<f64>>;
pub type RealMatrix64 = linalg::Matrix<f64>;
