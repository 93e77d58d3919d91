//! Rényi-α entanglement measures and tightened monogamy / polygamy bounds
//! for small multi-qubit systems.
//!
//! The crate is `no_std` (with `alloc`). It contains the numerics only:
//!
//! - [`linalg`]: dense complex matrices and a Hermitian Jacobi eigensolver.
//! - [`state`]: pure states, density matrices, partial traces, spectra and
//!   seeded Haar sampling.
//! - [`measures`]: Rényi-α entropy, `f_α`, concurrence, concurrence of
//!   assistance, analytic two-qubit Rényi-α entanglement and the
//!   decomposition-search oracles that check them.
//! - [`monogamy`]: weight ladders, ordering hypotheses and the lower bounds
//!   on `E_α^μ(A|B_1…B_{N-1})`.
//! - [`polygamy`]: generalized W-class states and the upper bounds on the
//!   Rényi-α entanglement of assistance.
//!
//! All entropies are in bits. Qubit `A` (index 0) is the leftmost tensor
//! factor and the most significant bit of a basis index.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod linalg;
pub mod measures;
pub mod monogamy;
pub mod polygamy;
pub mod seed;
pub mod state;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
pub use measures::{AlphaMu, Concurrence, Entanglement};
pub use monogamy::{BoundDirection, BoundReport, Hypothesis, OrderingProfile, WeightedTerm};
pub use polygamy::{PolygamyReport, WClassState};
pub use state::{DensityMatrix, Spectrum, StateVector};
