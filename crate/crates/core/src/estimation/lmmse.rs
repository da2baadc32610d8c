use crate::config::SystemConfig;
use crate::pilot_phase::PilotObservation;
use crate::sim::PilotBook;
use crate::{CVector, C64};

/// `sqrt(tau p_t) beta_k / (1 + tau q_t E|alpha|^2 beta_w + tau p_t beta_k)`
/// with `E|alpha|^2 = 1/tau`: the base station knows only that the jammer
/// spreads its power evenly over the book.
pub fn lmmse_scale(config: &SystemConfig, k: usize) -> f64 {
    let tau = config.pilot_len as f64;
    let beta = config.beta_users[k];
    let denom = 1.0 + config.q_t * config.beta_jammer + tau * config.p_t * beta;
    (tau * config.p_t).sqrt() * beta / denom
}

/// Per-entry error variance of [`lmmse_estimate`] averaged over the jammer
/// sequence.
pub fn lmmse_error_variance(config: &SystemConfig, k: usize) -> f64 {
    let tau = config.pilot_len as f64;
    let beta = config.beta_users[k];
    let interference = 1.0 + config.q_t * config.beta_jammer;
    beta * interference / (interference + tau * config.p_t * beta)
}

pub fn lmmse_estimate(obs: &PilotObservation, book: &PilotBook, k: usize, config: &SystemConfig) -> CVector {
    obs.projection(book.user_pilot(k)) * C64::from(lmmse_scale(config, k))
}

/// Complex multiplications for one LMMSE user estimate.
pub fn count_lmmse(antennas: u64, pilot_len: u64) -> u64 {
    antennas * pilot_len + 7
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pilot_phase::assemble_pilots;
    use crate::rng::{stream, StreamTag};
    use crate::sim::{draw_channels, draw_jammer_sequence};
    use crate::CMatrix;

    #[test]
    fn jam_free_noiseless_single_user() {
        let cfg = SystemConfig::symmetric(10, 1, 3, 2.0, 0.0);
        let book = PilotBook::dft(3).unwrap();
        let ch = draw_channels(&cfg, &mut stream(1, 0, 0, StreamTag::Channels));
        let jam = draw_jammer_sequence(&cfg, &book, &mut stream(1, 0, 0, StreamTag::JammerSequence));
        let obs = assemble_pilots(&ch, &jam, &book, &cfg, CMatrix::zeros(10, 3)).unwrap();
        let est = lmmse_estimate(&obs, &book, 0, &cfg);
        let expect = &ch.h_users[0] * C64::from(6.0 / 7.0);
        assert!((est - expect).camax() < 1e-12);
    }

    #[test]
    fn zero_prior_gives_zero_estimate() {
        let mut cfg = SystemConfig::symmetric(10, 1, 3, 2.0, 1.0);
        cfg.beta_users[0] = 0.0;
        assert_eq!(lmmse_scale(&cfg, 0), 0.0);
    }

    #[test]
    fn scale_by_hand() {
        let cfg = SystemConfig::symmetric(100, 1, 3, 1.0, 1.0);
        assert!((lmmse_scale(&cfg, 0) - 3f64.sqrt() / 5.0).abs() < 1e-15);
    }
}
