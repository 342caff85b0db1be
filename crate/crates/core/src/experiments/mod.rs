//! Harnesses for the CHSH, Mach-Zehnder and PBR arguments. Each run is deterministic in
//! its config and reports exact statistics together with the number-theoretic verdict on
//! the counterfactual settings.

mod chsh;
mod mz;
mod pbr;
mod substitute;

pub use chsh::{
    chsh_admissibility, chsh_run, chsh_run_with, pair_label, Admissibility, ChshConfig, ChshReport, CounterfactualEntry,
    SubEnsemble, PAIRS,
};
pub use mz::{
    exclusivity_grid, interference_gate, mz_gates, mz_run, rational_turns, unitary_probabilities, which_way_gate,
    Detector, ExclusivityGrid, MzConfig, MzGates, MzMode, MzReport,
};
pub use pbr::{
    pbr_run, pbr_simultaneity, pbr_x, pbr_xz, pbr_xz_exact, pbr_xz_routes, pbr_z, pbr_z_root, PbrConfig, PbrReport,
    PbrRoot, PbrValue, Simultaneity,
};
pub use substitute::{default_window, nearest_admissible, sin_sign, Substitution};
