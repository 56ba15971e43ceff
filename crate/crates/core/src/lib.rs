//! Weight, triangle and tetrahedron spectra of linear block codes over prime
//! fields, computed by a trellis recursion, and the union-type bounds on the
//! ML frame-error probability over BPSK-AWGN that they support.
//!
//! The `parallel` feature (on by default) spreads trellis stages, bound
//! grids and Monte Carlo blocks over a rayon pool. Every parallel routine
//! also accepts [`Execution::Sequential`], and results are identical either
//! way.

#![allow(clippy::excessive_precision)]

pub mod bounds;
pub mod code;
pub mod error;
pub mod error_prob;
pub mod field;
pub mod geometry;
pub mod normal;
pub mod par;
pub mod poly;
pub mod simulator;
pub mod spectra;
pub mod stream;
pub mod trellis;

pub use bounds::{
    bound_curve, parse_grid, select_references, tetrahedron_bound, triangle_bound, union_bound,
    BoundCurve, BoundKind, BoundPoint, GridUnit, ReferenceChoice, ReferenceStrategy,
};
pub use code::{Codeword, LinearCode};
pub use error::{Error, Result};
pub use error_prob::{
    mc_event_prob, mvn_halfspace_prob, pairwise_error_prob, quadruple_error_prob,
    triplet_error_prob, HalfSpaceSystem, NoiseModel,
};
pub use field::{FieldMatrix, PrimeField};
pub use geometry::{TetrahedronConfig, TriangleConfig};
pub use normal::q_function;
pub use par::Execution;
pub use poly::{CountingPolynomial, Var};
pub use simulator::{estimate_fer, FerEstimate, SimConfig, TxPolicy};
pub use spectra::{
    brute_force_spectrum, check_identities, forward_spectrum, teef, tref, wef, Spectrum,
    TetrahedronSpectrum, TriangleSpectrum, WeightSpectrum,
};
pub use trellis::Trellis;
