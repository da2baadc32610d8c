use crate::config::SystemConfig;
use crate::estimation::JammingParams;
use crate::pilot_phase::PilotObservation;
use crate::sim::PilotBook;
use crate::{CVector, C64};

/// `(J_o / (1 + J_o)) y_o`: MMSE estimate of the jammer's effective channel
/// seen on pilot `o`.
pub fn mmse_js_jammer(obs: &PilotObservation, params: &JammingParams) -> CVector {
    let j = params.j_o();
    obs.projection(params.o_index) * C64::from(j / (1.0 + j))
}

/// `c (y_k - delta_k e^{j theta_k} y_kbar)` with
/// `c = sqrt(tau p_t) beta_k / (1 + delta_k^2 + tau p_t beta_k)`.
///
/// With the true ratios the jammer term cancels exactly.
pub fn mmse_js_user(
    obs: &PilotObservation,
    book: &PilotBook,
    k: usize,
    params: &JammingParams,
    config: &SystemConfig,
) -> CVector {
    let tau = config.pilot_len as f64;
    let beta = config.beta_users[k];
    let delta = params.delta_hat[k];
    let scale = (tau * config.p_t).sqrt() * beta / (1.0 + delta * delta + tau * config.p_t * beta);
    let y_k = obs.projection(book.user_pilot(k));
    let y_bar = obs.projection(params.bar_map[k]);
    let rot = C64::from_polar(delta, params.theta_hat[k]);
    (y_k - y_bar * rot) * C64::from(scale)
}

/// `(1 + delta^2) beta_k / (1 + delta^2 + tau p_t beta_k)`.
pub fn mmse_js_error_variance(config: &SystemConfig, k: usize, delta: f64) -> f64 {
    let tau = config.pilot_len as f64;
    let beta = config.beta_users[k];
    let d2 = 1.0 + delta * delta;
    d2 * beta / (d2 + tau * config.p_t * beta)
}

/// Complex multiplications for one jamming-suppression user estimate,
/// including the blind parameter estimates it depends on.
pub fn count_mmse_js(antennas: u64, pilot_len: u64) -> u64 {
    antennas * (3 * pilot_len + 4) + 16
}
