//! A small Groebner-basis engine over `Q` and `F_p`, and the oracles built on
//! it: Hilbert functions, ideal quotients, regular sequences, quadric ranks,
//! the irreducibility criterion and the localization isomorphism.

mod engine;
mod hilbert;
mod localization;
mod order;
mod quadric;
mod reduction;
mod regseq;
mod report;

pub use engine::{buchberger, exact_divide, normal_form, GbOptions, GroebnerBasis};
pub use hilbert::{expected_ci_series, hilbert_function};
pub use localization::{localization_checks, localization_iso_verify, localization_witness, LocalizationChecks, LocalizationWitness};
pub use order::{MonomialOrder, OrderKind};
pub use quadric::quadric_rank;
pub use reduction::{
    apply_variable_reduction, case_targets, expected_case, irreducibility_instance, irreducibility_precheck,
    IrreducibilityVerdict, VariableReduction,
};
pub use regseq::{check_sequence, ideal_quotient, regular_sequence_check, universal_sequence, RegSeqMethod, StageResult};
pub use report::{format_seconds, Report, Verdict};
