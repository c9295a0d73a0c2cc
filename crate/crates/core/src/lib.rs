//! Numerical laboratory for Gowers uniformity norms of band-limited measures
//! on the torus.
//!
//! The crate computes `U^k` norms, their frequency-split decompositions, and
//! higher-order Fourier dimensions of measures represented by finitely
//! supported Fourier coefficient maps. The cube objects `Δ^k` are evaluated
//! purely on the Fourier side through a recursive convolution identity, with
//! an FFT fast path, and everything is cross-checked against an independent
//! brute-force oracle on finite cyclic groups.
//!
//! Module layout:
//!
//! * [`measure`] — band-limited measures, generators, windows, JSON I/O.
//! * [`delta`] — `Δ̂^k` slices of measure tuples via the convolution recursion.
//! * [`norms`] — `U^k` norms, split norms, decay envelopes, rate predictions.
//! * [`oracle`] — exact combinatorial ground truth on `Z_q`.
//! * [`checks`] — executable verification of every identity and inequality,
//!   plus the mollification-convergence experiment.

pub mod checks;
pub mod delta;
pub mod error;
pub mod fit;
pub mod measure;
pub mod norms;
pub mod oracle;
pub mod rng;

mod fft;

pub use error::Error;
pub use measure::{FourierMeasure, Window, WindowKind};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Result alias for fallible laboratory operations.
pub type Result<T> = std::result::Result<T, Error>;
