//! Numerical core for vacuum radiation-pressure fluctuation estimates:
//! compactly supported switching windows, their spectral tails, the
//! stretched-exponential probability-tail parameters, a finite-mode variance
//! oracle, and the Rydberg-atom recoil chain.

// negated comparisons are deliberate: they reject NaN along with the sign
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod quad;

pub mod distribution;
pub mod modesum;
pub mod rydberg;
pub mod sampling;
pub mod spectral;

pub use distribution::{DistributionError, DistributionParams, Regime};
pub use modesum::{CouplingMatrices, ModeSet, ModeSumError};
pub use quad::QuadError;
pub use rydberg::{
    AtomModel, Fig4Curve, Fig4Row, PhysicalConstants, ProbAtXstar, RydbergError, Speed, CONSTANTS,
};
pub use sampling::{SamplingError, SamplingFunction, SwitchProfile};
pub use spectral::{
    FitOptions, RelationPoint, SpectralError, SpectrumGrid, TailFit, TwoScaleReport,
};
