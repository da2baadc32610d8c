use rayon::prelude::*;

use crate::config::SystemConfig;
use crate::detection::{build_combiner, Combiner, DetectorKind};
use crate::error::{Error, Result};
use crate::estimation::{
    estimate_channels, estimate_jamming_params, genie_params, EstimatorKind, JammingParams, ParamMode,
};
use crate::performance::{draw_attack, AttackDraw, SeMethod, SeResult};
use crate::pilot_phase::receive_pilots;
use crate::rng::{stream, StreamTag};
use crate::sim::draw_channels;
use crate::{CVector, C64};

/// What to evaluate and how many trials to spend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McSpec {
    pub estimator: EstimatorKind,
    pub detector: DetectorKind,
    pub mode: ParamMode,
    /// Jammer draws.
    pub n_outer: usize,
    /// Channel and noise draws per jammer draw.
    pub n_inner: usize,
    pub parallel: bool,
}

impl McSpec {
    pub fn new(estimator: EstimatorKind, detector: DetectorKind) -> Self {
        McSpec {
            estimator,
            detector,
            mode: ParamMode::Estimated,
            n_outer: 2000,
            n_inner: 200,
            parallel: true,
        }
    }

    pub fn trials(mut self, n_outer: usize, n_inner: usize) -> Self {
        self.n_outer = n_outer;
        self.n_inner = n_inner;
        self
    }

    pub fn mode(mut self, mode: ParamMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }
}

/// Running sums for one user across inner trials.
#[derive(Debug, Clone, Default)]
struct UserAccumulator {
    n: usize,
    // Residual-error route.
    z_sum: C64,
    z_sq: f64,
    // Use-and-then-forget route.
    desired_sum: C64,
    users_sq: f64,
    jammer_sq: f64,
    // Shared.
    v_norm_sq: f64,
}

impl UserAccumulator {
    fn residual_sinr(&self, p_d: f64) -> f64 {
        let n = self.n as f64;
        let mean = self.z_sum / n;
        let var = ((self.z_sq - n * mean.norm_sqr()) / (n - 1.0)).max(0.0);
        p_d / (var + self.v_norm_sq / n)
    }

    fn uatf_sinr(&self, p_d: f64, q_d: f64) -> f64 {
        let n = self.n as f64;
        let signal = p_d * (self.desired_sum / n).norm_sqr();
        let denom = p_d * self.users_sq / n - signal + q_d * self.jammer_sq / n + self.v_norm_sq / n;
        signal / denom
    }
}

/// ZFJS needs a nonzero jammer estimate; with none it degenerates to ZF on
/// the users.
fn combiner_for(est: &crate::estimation::EstimateSet, kind: DetectorKind) -> Result<Combiner> {
    if kind == DetectorKind::Zfjs && est.params.j_o() == 0.0 {
        let mut c = Combiner::from_estimates(&est.stacked(false), DetectorKind::Zf)?;
        c.kind = DetectorKind::Zfjs;
        return Ok(c);
    }
    build_combiner(est, kind)
}

/// Per-user conditional SINR for attack `outer`, or `None` if fewer than two
/// inner trials produced a usable combiner.
///
/// ZFJS is scored by the residual-error form: `p_d` over the sample variance
/// of `sqrt(p_d) sum_i v_k^H e_i + sqrt(q_d beta_w / J_o) v_k^H e_w` plus
/// `E||v_k||^2`, where `e_i` and `e_w` are the estimation errors of the user
/// channels and the jammer's effective channel. MF and ZF are scored by the
/// use-and-then-forget bound with every moment sampled.
pub fn conditional_sinr(
    config: &SystemConfig,
    draw: &AttackDraw,
    outer: u64,
    spec: &McSpec,
) -> Result<Option<Vec<f64>>> {
    let users = config.users;
    let tau = config.pilot_len as f64;
    let genie: Option<JammingParams> = match spec.mode {
        ParamMode::Genie => Some(genie_params(&draw.jammer, &draw.book, config)?),
        ParamMode::Estimated => None,
    };
    let residual_route = spec.detector == DetectorKind::Zfjs;
    let mut acc = vec![UserAccumulator::default(); users];

    for inner in 0..spec.n_inner as u64 {
        let channels = draw_channels(config, &mut stream(config.seed, outer, inner, StreamTag::Channels));
        let obs = receive_pilots(
            &channels,
            &draw.jammer,
            &draw.book,
            config,
            &mut stream(config.seed, outer, inner, StreamTag::PilotNoise),
        )?;
        let params = match &genie {
            Some(p) => p.clone(),
            None => estimate_jamming_params(&obs, &draw.book, config)?,
        };
        let est = estimate_channels(&obs, &draw.book, config, spec.estimator, params);
        let combiner = match combiner_for(&est, spec.detector) {
            Ok(c) => c,
            Err(Error::SingularCombiner { .. }) => continue,
            Err(e) => return Err(e),
        };

        let o = est.params.o_index;
        let alpha_o = draw.jammer.alphas[o];
        let j_o = est.params.j_o();
        let jam_eff: CVector = &channels.h_jammer * (alpha_o * (tau * config.q_t).sqrt());
        let jam_err = &est.h_hat_jammer_eff - jam_eff;
        let errors: Vec<CVector> = est
            .h_hat_users
            .iter()
            .zip(&channels.h_users)
            .map(|(h_hat, h)| h_hat - h)
            .collect();

        for (k, a) in acc.iter_mut().enumerate() {
            let v = combiner.matrix.column(k);
            a.n += 1;
            a.v_norm_sq += v.norm_squared();
            if residual_route {
                let user_part: C64 = errors.iter().map(|e| v.dotc(e)).sum::<C64>() * config.p_d.sqrt();
                let jam_part = if j_o > 0.0 && config.q_t > 0.0 {
                    v.dotc(&jam_err) * (config.q_d * config.beta_jammer / j_o).sqrt()
                } else {
                    // Same term written with the true effective channel.
                    -v.dotc(&channels.h_jammer) * C64::from_polar(config.q_d.sqrt(), alpha_o.arg())
                };
                let z = user_part + jam_part;
                a.z_sum += z;
                a.z_sq += z.norm_sqr();
            } else {
                a.desired_sum += v.dotc(&channels.h_users[k]);
                a.users_sq += channels.h_users.iter().map(|h| v.dotc(h).norm_sqr()).sum::<f64>();
                a.jammer_sq += v.dotc(&channels.h_jammer).norm_sqr();
            }
        }
    }

    if acc[0].n < 2 {
        return Ok(None);
    }
    Ok(Some(
        acc.iter()
            .map(|a| {
                if residual_route {
                    a.residual_sinr(config.p_d)
                } else {
                    a.uatf_sinr(config.p_d, config.q_d)
                }
            })
            .collect(),
    ))
}

/// Nested Monte Carlo spectral efficiency. Attacks are drawn from the config
/// seed exactly as [`super::draw_attacks`] draws them. Results do not depend
/// on `spec.parallel`.
pub fn se_monte_carlo(config: &SystemConfig, spec: &McSpec) -> Result<SeResult> {
    config.validate()?;
    if spec.n_outer < 2 || spec.n_inner < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least 2 outer and 2 inner trials, got {} and {}",
            spec.n_outer, spec.n_inner
        )));
    }
    let run = |outer: u64| -> Result<Option<Vec<f64>>> {
        let draw = draw_attack(config, outer)?;
        conditional_sinr(config, &draw, outer, spec)
    };
    let outcomes: Vec<Result<Option<Vec<f64>>>> = if spec.parallel {
        (0..spec.n_outer as u64).into_par_iter().map(run).collect()
    } else {
        (0..spec.n_outer as u64).map(run).collect()
    };

    let mut logs = Vec::with_capacity(spec.n_outer);
    let mut excluded = 0;
    for outcome in outcomes {
        match outcome? {
            Some(rho) => logs.push(rho.iter().map(|r| (1.0 + r).log2()).collect()),
            None => excluded += 1,
        }
    }
    if excluded * 1000 > spec.n_outer {
        return Err(Error::ExcessiveExclusions {
            excluded,
            total: spec.n_outer,
        });
    }
    let mut res = SeResult::from_log_terms(config, &logs, SeMethod::MonteCarlo, spec.n_inner, excluded);
    if spec.estimator == EstimatorKind::MmseJs && !config.has_distinct_unused() {
        res.validity_warning = Some("users share unused pilots".into());
    }
    Ok(res)
}
