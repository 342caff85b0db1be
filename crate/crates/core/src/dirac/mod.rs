//! Four-string spinors evolved by formal generalized-permutation matrices whose entries
//! are powers of `ζ` and `i`.

mod operator;
mod spinor;

pub use operator::{
    build_e, conventions_diagnostic, gamma_matrices, skeleton_mul, FormalEntry, FormalOperatorMatrix, Skeleton,
};
pub use spinor::{
    apply, complex_action, dispersion_check, evolution_matrix, full_evolve, predicted_turns, rest_step, rest_trace,
    trace_csv, Dispersion, SpinorSample, TraceRow,
};
