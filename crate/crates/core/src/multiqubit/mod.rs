//! Stacks of aligned bit strings for several qubits: the conditional composition rule,
//! joint frequency tables, the two-qubit `γ`/`χ` map and the `m`-qubit recursion.

mod build;
mod expander;
mod sample;
mod twoqubit;

pub use build::{exact_params, m_qubit_from_counts, m_qubit_sample, row_correlation, QubitSetting};
pub use expander::{
    amplitude_table, correspondence_gate, expand_amplitudes, param_count, qubits_for, AmplitudeTerm, HalfAngle,
    QubitParam,
};
pub use sample::{align_rows, compose_m, compose_pair, joint_counts, JointTable, MultiSample, MAX_QUBITS};
pub use twoqubit::{
    bell_agreement, bell_corr, bell_sample, two_qubit_predict, two_qubit_sample, TwoQubitParams,
    TwoQubitPrediction,
};
