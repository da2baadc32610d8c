use rand::Rng;

use crate::config::SystemConfig;
use crate::linalg::wrap_angle;
use crate::rng::complex_gaussian_vector;
use crate::sim::PilotBook;
use crate::{CVector, C64};

/// True per-user contamination ratios for a given choice of unused pilots:
/// `delta_k = |alpha_k / alpha_kbar|` and `theta_k = angle(alpha_k) - angle(alpha_kbar)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UserRatios {
    pub delta: Vec<f64>,
    pub theta: Vec<f64>,
}

/// The jammer's pilot-phase sequence and what it looks like through each
/// pilot of the book.
#[derive(Debug, Clone, PartialEq)]
pub struct JammerRealization {
    /// Length-`tau` sequence `psi_w`.
    pub psi: CVector,
    /// `alphas[i] = psi^T conj(phi_i)`, indexed by pilot.
    pub alphas: Vec<C64>,
    /// `J_i = tau q_t |alpha_i|^2 beta_w`, indexed by pilot.
    pub true_j: Vec<f64>,
    /// Filled by [`JammerRealization::fill_user_ratios`] once the unused
    /// pilot of every user is known.
    pub user_ratios: Option<UserRatios>,
}

impl JammerRealization {
    pub fn from_sequence(psi: CVector, book: &PilotBook, config: &SystemConfig) -> Self {
        let tau = book.len();
        let alphas: Vec<C64> = (book.pilots().adjoint() * &psi).iter().copied().collect();
        let scale = tau as f64 * config.q_t * config.beta_jammer;
        let true_j = alphas.iter().map(|a| scale * a.norm_sqr()).collect();
        Self {
            psi,
            alphas,
            true_j,
            user_ratios: None,
        }
    }

    /// Ratios for users whose unused partner pilots are `bar_map[k]`.
    pub fn ratios(&self, book: &PilotBook, bar_map: &[usize]) -> UserRatios {
        let (delta, theta) = bar_map
            .iter()
            .enumerate()
            .map(|(k, &bar)| {
                let a_k = self.alphas[book.user_pilot(k)];
                let a_bar = self.alphas[bar];
                let delta = if a_bar.norm() > 0.0 {
                    a_k.norm() / a_bar.norm()
                } else {
                    0.0
                };
                (delta, wrap_angle(a_k.arg() - a_bar.arg()))
            })
            .unzip();
        UserRatios { delta, theta }
    }

    pub fn fill_user_ratios(&mut self, book: &PilotBook, bar_map: &[usize]) {
        self.user_ratios = Some(self.ratios(book, bar_map));
    }
}

/// `psi_w ~ CN(0, I / tau)`, spreading the jammer's energy evenly over the book
/// on average.
pub fn draw_jammer_sequence<R: Rng + ?Sized>(
    config: &SystemConfig,
    book: &PilotBook,
    rng: &mut R,
) -> JammerRealization {
    let tau = book.len();
    let psi = complex_gaussian_vector(rng, tau, 1.0 / tau as f64);
    JammerRealization::from_sequence(psi, book, config)
}
