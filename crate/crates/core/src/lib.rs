//! Exact finite-N model of qubits as bit strings.
//!
//! A qubit `cos(θ/2)|a⟩ + e^{iφ} sin(θ/2)|¬a⟩` is represented by an ordered string of
//! `2^N` labels, and only exists when `cos²(θ/2)` and `φ/2π` are dyadic rationals with at
//! most `N` bits. Everything here is exact rational arithmetic; floating point appears only
//! in display values and in the high-precision oracles used by the tests and the
//! experiment harnesses.
//!
//! Modules:
//! - [`exactmath`]: rationals, dyadics, angles, rational cosines and describability.
//! - [`padic`]: p-adic valuation, metric, truncated p-adic integers, Cantor sets.
//! - [`samplespace`]: the bit strings and the `ζ`, `i` operators.
//! - [`multiqubit`]: aligned string stacks for several qubits.
//! - [`dirac`]: four-string spinors evolved by formal permutation operators.
//! - [`experiments`]: CHSH, Mach-Zehnder and PBR harnesses.
//! - [`sweep`], [`checks`]: exhaustive parameter sweeps and invariant suites.

pub mod checks;
pub mod dirac;
pub mod error;
pub mod exactmath;
pub mod experiments;
pub mod multiqubit;
pub mod padic;
pub mod par;
pub mod samplespace;
pub mod sweep;

pub use error::{Error, Result};
pub use exactmath::{Angle, Dyadic, ExactAngle, Rational};
pub use samplespace::{BitString, Label};
