//! Sylow branching coefficients for hooks: the restriction oracle, closed
//! formulas for the linear constituents, the box thresholds, and the
//! structural checks on the sets `ℋ_n^k`.

pub mod checks;
pub mod formulas;
pub mod oracle;
pub mod thresholds;

pub use checks::{
    conjugation_twist_check, h_membership, h_set, inclusion_check, max_threshold_check, three_constituent_check,
    CheckOutcome, Mode,
};
pub use formulas::{
    a_count, exponent_of, hook1_degrees, linear_profile, linear_sbc, sign_label, unique_linear_label, LinearEntry,
};
pub use oracle::{BranchingDecomposition, Constituent, DegreeProfile, Oracle};
pub use thresholds::{tau, tau_sum, ThresholdTable};
