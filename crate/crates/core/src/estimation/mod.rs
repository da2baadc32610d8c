//! Channel estimation from the pilot phase.
//!
//! Two user-channel estimators are provided: the conventional LMMSE estimate,
//! which only knows the jammer's average power per pilot, and the
//! jamming-suppression estimate, which subtracts a scaled copy of an unused
//! pilot's projection to cancel the jammer term. The jammer's effective
//! channel is always estimated from the strongest unused pilot.
//!
//! The jamming-suppression estimators need the jammer's per-pilot energy and
//! the ratio `alpha_k / alpha_kbar`. These come either from the blind
//! large-array estimators in [`estimate_jamming_params`] or, for oracle
//! checks, straight from the jammer realization ([`genie_params`]).

mod blind;
mod lmmse;
mod mmse_js;

pub use blind::{assign_unused_pilots, estimate_jamming_params, genie_params};
pub use lmmse::{count_lmmse, lmmse_error_variance, lmmse_estimate, lmmse_scale};
pub use mmse_js::{count_mmse_js, mmse_js_error_variance, mmse_js_jammer, mmse_js_user};

use crate::config::SystemConfig;
use crate::linalg::stack_columns;
use crate::pilot_phase::PilotObservation;
use crate::sim::PilotBook;
use crate::{CMatrix, CVector};

/// Where the jamming parameters come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamMode {
    /// Copied from the jammer realization.
    Genie,
    /// Estimated blindly from the pilot projections.
    Estimated,
}

/// Jammer energy per unused pilot and per-user contamination ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct JammingParams {
    /// `J_i` for unused pilots, 0 for assigned ones. Indexed by pilot.
    pub j_hat: Vec<f64>,
    /// `delta_k`, indexed by user.
    pub delta_hat: Vec<f64>,
    /// `theta_k` in `(-pi, pi]`, indexed by user.
    pub theta_hat: Vec<f64>,
    /// Unused pilot used for the jammer-channel estimate.
    pub o_index: usize,
    /// Unused pilot paired with each user.
    pub bar_map: Vec<usize>,
    pub mode: ParamMode,
}

impl JammingParams {
    /// The jammer energy behind the jammer-channel estimate, `J_o`.
    pub fn j_o(&self) -> f64 {
        self.j_hat[self.o_index]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimatorKind {
    Lmmse,
    MmseJs,
}

impl EstimatorKind {
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::Lmmse => "lmmse",
            EstimatorKind::MmseJs => "mmse_js",
        }
    }
}

/// Channel estimates for one block.
#[derive(Debug, Clone)]
pub struct EstimateSet {
    pub kind: EstimatorKind,
    /// `h_hat_k` per user.
    pub h_hat_users: Vec<CVector>,
    /// Estimate of the jammer's effective channel `sqrt(tau q_t) alpha_o h_w`.
    pub h_hat_jammer_eff: CVector,
    /// Model error variance per entry of each user estimate.
    pub err_var_users: Vec<f64>,
    /// Model error variance per entry of the jammer estimate, `J_o / (1 + J_o)`.
    pub err_var_jammer: f64,
    pub params: JammingParams,
}

impl EstimateSet {
    pub fn antennas(&self) -> usize {
        self.h_hat_jammer_eff.len()
    }

    /// `[h_hat_1, ..., h_hat_K]`, optionally followed by the jammer estimate.
    pub fn stacked(&self, with_jammer: bool) -> CMatrix {
        let jam = with_jammer.then_some(&self.h_hat_jammer_eff);
        stack_columns(self.antennas(), self.h_hat_users.iter().chain(jam))
    }
}

/// Estimate every user channel with `kind` and the jammer channel from
/// `params.o_index`.
pub fn estimate_channels(
    obs: &PilotObservation,
    book: &PilotBook,
    config: &SystemConfig,
    kind: EstimatorKind,
    params: JammingParams,
) -> EstimateSet {
    let (h_hat_users, err_var_users) = (0..config.users)
        .map(|k| match kind {
            EstimatorKind::Lmmse => (lmmse_estimate(obs, book, k, config), lmmse_error_variance(config, k)),
            EstimatorKind::MmseJs => (
                mmse_js_user(obs, book, k, &params, config),
                mmse_js_error_variance(config, k, params.delta_hat[k]),
            ),
        })
        .unzip();
    let j_o = params.j_o();
    EstimateSet {
        kind,
        h_hat_users,
        h_hat_jammer_eff: mmse_js_jammer(obs, &params),
        err_var_users,
        err_var_jammer: j_o / (1.0 + j_o),
        params,
    }
}
