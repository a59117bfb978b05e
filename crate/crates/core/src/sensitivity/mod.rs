//! D-sets, diameter series, window certificates and the two verifiers.

mod example1;
mod example2;
mod report;
mod series;
mod windows;

pub use example1::{
    covering_time, default_mixing_samples, strong_mixing_witness, verify_example1, Example1Config, MixingWitness,
};
pub use example2::{verify_example2, Example2Config, Example2Evidence};
pub use report::{ClaimReport, SensitivityReport, Verdict};
pub use series::{
    d_set, diam_series, diam_series_closed_form, diam_series_parallel, DSetResult, DiamSeries, System, TailStatus,
};
pub use windows::{tiling_holds_for_all_k, window_certificate, Phase, SymIndex, WindowCertificate};

/// `diam > ε` (strict) or `diam ≥ ε`.
pub fn exceeds(diam: &crate::Rational, epsilon: &crate::Rational, strict: bool) -> bool {
    if strict {
        diam > epsilon
    } else {
        diam >= epsilon
    }
}
