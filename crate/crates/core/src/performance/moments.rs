use crate::config::SystemConfig;

/// Exact moments of the MF detector built from the LMMSE estimate of user
/// `k`, conditioned on `|alpha_k|^2`.
///
/// With `A' = 1 + q_t beta_w + tau p_t beta_k`,
/// `A = 1 + tau q_t |alpha_k|^2 beta_w + tau p_t beta_k` and
/// `B = tau p_t beta_k^2 / A'^2`:
///
/// * `E{h_hat_k^H h_k} = B M A'`
/// * `E|h_hat_k^H h_k|^2 = B M (tau p_t M beta_k^2 + beta_k A)`
/// * `E|h_hat_k^H h_i|^2 = B M beta_i A` for `i != k`
/// * `E|h_hat_k^H h_w|^2 = B M (tau q_t |alpha_k|^2 M beta_w^2 + beta_w A)`
/// * `E||h_hat_k||^2 = B M A`
#[derive(Debug, Clone, PartialEq)]
pub struct MfClosedFormMoments {
    pub b: f64,
    pub mean_desired: f64,
    /// Indexed by interfering user `i`; entry `k` is the desired user's term.
    pub second_moment_users: Vec<f64>,
    pub second_moment_jammer: f64,
    pub noise_gain: f64,
    /// Use-and-then-forget SINR built from the moments above.
    pub sinr: f64,
}

pub fn mf_conditional_moments(config: &SystemConfig, k: usize, alpha_abs_sq: f64) -> MfClosedFormMoments {
    let m = config.antennas as f64;
    let tau = config.pilot_len as f64;
    let (pt, qt) = (config.p_t, config.q_t);
    let bw = config.beta_jammer;
    let bk = config.beta_users[k];
    let a_prior = 1.0 + qt * bw + tau * pt * bk;
    let a = 1.0 + tau * qt * alpha_abs_sq * bw + tau * pt * bk;
    let b = tau * pt * bk * bk / (a_prior * a_prior);

    let mean_desired = b * m * a_prior;
    let second_moment_users: Vec<f64> = config
        .beta_users
        .iter()
        .enumerate()
        .map(|(i, &bi)| {
            if i == k {
                b * m * (tau * pt * m * bk * bk + bk * a)
            } else {
                b * m * bi * a
            }
        })
        .collect();
    let second_moment_jammer = b * m * (tau * qt * alpha_abs_sq * m * bw * bw + bw * a);
    let noise_gain = b * m * a;

    let signal = config.p_d * mean_desired * mean_desired;
    let interference =
        config.p_d * second_moment_users.iter().sum::<f64>() - signal + config.q_d * second_moment_jammer + noise_gain;
    MfClosedFormMoments {
        b,
        mean_desired,
        second_moment_users,
        second_moment_jammer,
        noise_gain,
        sinr: signal / interference,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jam_free_reduces() {
        let cfg = SystemConfig::symmetric(64, 2, 5, 2.0, 0.0);
        let mo = mf_conditional_moments(&cfg, 0, 0.37);
        let b = 5.0 * 2.0 / (11.0f64 * 11.0);
        assert!((mo.b - b).abs() < 1e-15);
        assert!((mo.mean_desired - b * 64.0 * 11.0).abs() < 1e-12);
        assert!((mo.noise_gain - b * 64.0 * 11.0).abs() < 1e-12);
    }

    #[test]
    fn jammer_moment_identity() {
        for (m, tau, pt, qt, a2) in [(50, 3, 1.3, 4.0, 0.2), (128, 7, 0.5, 9.0, 0.05), (10, 5, 3.0, 0.7, 0.9)] {
            let mut cfg = SystemConfig::symmetric(m, 2, tau, pt, qt);
            cfg.beta_jammer = 0.8;
            let mo = mf_conditional_moments(&cfg, 1, a2);
            let lhs = mo.second_moment_jammer / (mo.b * m as f64)
                - 0.8 * (1.0 + tau as f64 * qt * a2 * 0.8 + tau as f64 * pt);
            let rhs = tau as f64 * qt * a2 * m as f64 * 0.64;
            assert!((lhs - rhs).abs() < 1e-9 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn second_moment_dominates_mean() {
        let cfg = SystemConfig::symmetric(32, 3, 7, 1.0, 5.0);
        let mo = mf_conditional_moments(&cfg, 2, 0.1);
        assert!(mo.second_moment_users[2] >= mo.mean_desired * mo.mean_desired);
        assert!(mo.sinr > 0.0);
    }
}
