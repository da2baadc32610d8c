use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::estimation::genie_params;
use crate::performance::{AttackDraw, SeMethod, SeResult};

/// SINR of user `k` under ZFJS with jamming-suppression estimates and true
/// jamming parameters:
///
/// ```text
/// rho_k = [tau p_t p_d beta_k^2 / (1 + d_k^2 + tau p_t beta_k)] (M - K - 1)
///       / [sum_i p_d (1 + d_i^2) beta_i / (1 + d_i^2 + tau p_t beta_i)
///          + q_d beta_w / (1 + J_o) + 1]
/// ```
pub fn sinr_closed_form(config: &SystemConfig, delta: &[f64], j_o: f64, k: usize) -> Result<f64> {
    let m = config.antennas;
    let users = config.users;
    if m < users + 1 {
        return Err(Error::Domain(format!(
            "closed-form SINR needs M >= K + 1, got M = {m}, K = {users}"
        )));
    }
    if delta.len() != users || k >= users {
        return Err(Error::Dimension(format!(
            "expected {users} contamination ratios and k < {users}"
        )));
    }
    let tau = config.pilot_len as f64;
    let pt = config.p_t;
    let beta = &config.beta_users;
    let estimation_error: f64 = delta
        .iter()
        .zip(beta)
        .map(|(d, b)| {
            let d2 = 1.0 + d * d;
            config.p_d * d2 * b / (d2 + tau * pt * b)
        })
        .sum();
    let residual_jam = config.q_d * config.beta_jammer / (1.0 + j_o);
    let gain = tau * pt * config.p_d * beta[k] * beta[k] / (1.0 + delta[k] * delta[k] + tau * pt * beta[k]);
    Ok(gain * (m - users - 1) as f64 / (estimation_error + residual_jam + 1.0))
}

/// Average the closed-form SINR over attack draws.
pub fn se_closed_form(config: &SystemConfig, draws: &[AttackDraw]) -> Result<SeResult> {
    let logs = draws
        .iter()
        .map(|d| {
            let p = genie_params(&d.jammer, &d.book, config)?;
            (0..config.users)
                .map(|k| sinr_closed_form(config, &p.delta_hat, p.j_o(), k).map(|r| (1.0 + r).log2()))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut res = SeResult::from_log_terms(config, &logs, SeMethod::ClosedForm, 0, 0);
    if !config.has_distinct_unused() {
        res.validity_warning = Some(format!(
            "closed form assumes tau >= 2K + 1 (tau = {}, K = {})",
            config.pilot_len, config.users
        ));
    }
    Ok(res)
}

/// Large-array spectral efficiency. It is unbounded when the jammer is
/// silent in either phase or misses a user's pilot entirely.
#[derive(Debug, Clone, PartialEq)]
pub enum AsymptoticSe {
    Unbounded,
    Finite(SeResult),
}

impl AsymptoticSe {
    pub fn finite(&self) -> Option<&SeResult> {
        match self {
            AsymptoticSe::Finite(r) => Some(r),
            AsymptoticSe::Unbounded => None,
        }
    }
}

/// `(1 - tau/T) E log2(1 + p_t p_d beta_k^2 / (q_t q_d |alpha_k|^2 beta_w^2))`.
pub fn asymptotic_se(config: &SystemConfig, draws: &[AttackDraw]) -> AsymptoticSe {
    let jam = config.q_t * config.q_d * config.beta_jammer * config.beta_jammer;
    if jam == 0.0 || draws.is_empty() {
        return AsymptoticSe::Unbounded;
    }
    let mut logs = Vec::with_capacity(draws.len());
    for d in draws {
        let mut row = Vec::with_capacity(config.users);
        for k in 0..config.users {
            let a2 = d.jammer.alphas[d.book.user_pilot(k)].norm_sqr();
            if a2 == 0.0 {
                return AsymptoticSe::Unbounded;
            }
            let b = config.beta_users[k];
            row.push((1.0 + config.p_t * config.p_d * b * b / (jam * a2)).log2());
        }
        logs.push(row);
    }
    AsymptoticSe::Finite(SeResult::from_log_terms(config, &logs, SeMethod::Asymptotic, 0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::performance::draw_attacks;
    use crate::sim::{JammerRealization, PilotBook};
    use crate::{CVector, C64};

    #[test]
    fn hand_example() {
        let cfg = SystemConfig::symmetric(100, 1, 3, 1.0, 1.0);
        let rho = sinr_closed_form(&cfg, &[1.0], 1.0, 0).unwrap();
        assert!((rho - 58.8 / 1.9).abs() < 1e-12);
        assert!((rho - 30.947).abs() < 1e-3);
    }

    #[test]
    fn boundary_and_domain() {
        let mut cfg = SystemConfig::symmetric(3, 2, 5, 1.0, 1.0);
        assert_eq!(sinr_closed_form(&cfg, &[0.5, 0.5], 1.0, 0).unwrap(), 0.0);
        cfg.antennas = 2;
        assert!(matches!(
            sinr_closed_form(&cfg, &[0.5, 0.5], 1.0, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn strong_jammer_estimate_recovers_jam_free() {
        let mut cfg = SystemConfig::symmetric(50, 1, 3, 2.0, 0.0);
        let free = sinr_closed_form(&cfg, &[0.3], 0.0, 0).unwrap();
        cfg.q_d = 1e6;
        let jammed = sinr_closed_form(&cfg, &[0.3], 1e12, 0).unwrap();
        assert!((jammed - free).abs() / free < 1e-5);
    }

    #[test]
    fn monotone_in_inputs() {
        let cfg = SystemConfig::symmetric(64, 2, 5, 2.0, 3.0);
        let base = sinr_closed_form(&cfg, &[0.5, 0.7], 2.0, 0).unwrap();
        assert!(sinr_closed_form(&cfg, &[0.6, 0.7], 2.0, 0).unwrap() < base);
        assert!(sinr_closed_form(&cfg, &[0.5, 0.8], 2.0, 0).unwrap() < base);
        let mut more_jam = cfg.clone();
        more_jam.q_d = 4.0;
        assert!(sinr_closed_form(&more_jam, &[0.5, 0.7], 2.0, 0).unwrap() < base);
        let mut bigger = cfg.clone();
        bigger.antennas = 65;
        assert!(sinr_closed_form(&bigger, &[0.5, 0.7], 2.0, 0).unwrap() > base);
    }

    #[test]
    fn whole_block_of_pilots_gives_zero() {
        let mut cfg = SystemConfig::symmetric(20, 1, 3, 1.0, 1.0);
        cfg.coherence_len = 3;
        let draws = draw_attacks(&cfg, 4).unwrap();
        let r = se_closed_form(&cfg, &draws).unwrap();
        assert_eq!(r.sum_se, 0.0);
    }

    #[test]
    fn silent_jammer_matches_jam_free_formula() {
        let cfg = SystemConfig::symmetric(40, 2, 5, 1.5, 0.0);
        let draws = draw_attacks(&cfg, 20).unwrap();
        let r = se_closed_form(&cfg, &draws).unwrap();
        let mut free = cfg.clone();
        free.q_d = 0.0;
        let rho = sinr_closed_form(&free, &[0.0, 0.0], 0.0, 0).unwrap();
        let expect = 2.0 * cfg.data_fraction() * (1.0 + rho).log2();
        assert!((r.sum_se - expect).abs() < 1e-12);
        assert!(r.validity_warning.is_none());
    }

    #[test]
    fn shared_pilot_is_flagged() {
        let cfg = SystemConfig::symmetric(40, 2, 4, 1.5, 1.0);
        let draws = draw_attacks(&cfg, 2).unwrap();
        assert!(se_closed_form(&cfg, &draws).unwrap().validity_warning.is_some());
    }

    #[test]
    fn asymptote_sentinels_and_unit_ratio() {
        let cfg = SystemConfig::symmetric(40, 1, 3, 2.0, 0.0);
        let draws = draw_attacks(&cfg, 3).unwrap();
        assert_eq!(asymptotic_se(&cfg, &draws), AsymptoticSe::Unbounded);

        // Pick psi so |alpha_1|^2 = p_t p_d / (q_t q_d) = 0.25.
        let cfg = SystemConfig::symmetric(40, 1, 3, 1.0, 2.0);
        let book = PilotBook::dft(3).unwrap();
        let psi: CVector = book.pilots().column(0) * C64::from(0.5);
        let jammer = JammerRealization::from_sequence(psi, &book, &cfg);
        let r = asymptotic_se(&cfg, &[AttackDraw { book, jammer }]);
        let r = r.finite().unwrap();
        assert!((r.sum_se - cfg.data_fraction()).abs() < 1e-12);
    }
}
