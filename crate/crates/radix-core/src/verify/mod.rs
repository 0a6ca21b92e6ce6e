//! Independent oracles: the Dedekind criterion, the round-2 maximal order and certificates.

mod certificate;
mod dedekind;
mod round2;

pub use certificate::{certified, certify, certify_with_budget, Certificate, TRACE_FORM_BUDGET};
pub use dedekind::{dedekind_check, dedekind_check_spec, enlarging_element, Dedekind};
pub use round2::{
    disc_drops, oracle_budget, round2_at, round2_maximal_order, round2_with_budget, trace_disc,
    DEFAULT_ORACLE_BUDGET,
};
