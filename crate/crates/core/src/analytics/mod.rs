//! Closed-form moments, precisions and coefficients.

mod coefficients;
mod diagnostics;
mod moments;
mod precision;

pub use coefficients::{coefficient_b_tilde, coefficient_c_theta, coefficient_c_theta_oracle, CDenominator};
pub use diagnostics::{
    c_theta_diagnostic, derivative_factor_diagnostic, kminus1_phase_diagnostic, DiscrepancyReport, VerdictRow,
};
pub use moments::{cat_moments, ghz_moments, moments_with_derivative, scs_moments, CatMoments, LParity};
pub use precision::{
    coefficient_a_tilde, derivative_factor_corrected, derivative_factor_printed, k0_frequency_limit,
    kminus1_field_limit, phase_factor_derivative, precision_closed_form, printed_kminus1_phase, FormulaForm,
    Precision, PrecisionFormulaInput, PrecisionPair,
};
