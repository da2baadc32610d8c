//! Spectral efficiency by three routes, MF moments, and cost counters.
//!
//! Every route averages over jammer draws. An [`AttackDraw`] fixes the pilot
//! assignment and the jammer sequence (and therefore every `alpha_i`); the
//! Monte Carlo route then averages channels and noise inside each draw.
//! Drawing the attacks from the config seed means all routes see the same
//! `alpha` values, which keeps cross-route comparisons tight.

mod closed_form;
mod moments;
mod monte_carlo;

pub use closed_form::{asymptotic_se, se_closed_form, sinr_closed_form, AsymptoticSe};
pub use moments::{mf_conditional_moments, MfClosedFormMoments};
pub use monte_carlo::{conditional_sinr, se_monte_carlo, McSpec};

use crate::config::SystemConfig;
use crate::detection::count_zfjs;
use crate::error::{Error, Result};
use crate::estimation::{count_lmmse, count_mmse_js};
use crate::rng::{stream, StreamTag};
use crate::sim::{build_pilot_book, draw_jammer_sequence, JammerRealization, PilotBook};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeMethod {
    Asymptotic,
    MonteCarlo,
    ClosedForm,
}

impl SeMethod {
    pub fn name(self) -> &'static str {
        match self {
            SeMethod::Asymptotic => "asymptotic",
            SeMethod::MonteCarlo => "monte_carlo",
            SeMethod::ClosedForm => "closed_form",
        }
    }
}

/// Spectral efficiency in bits/s/Hz with 95% confidence half-widths.
#[derive(Debug, Clone, PartialEq)]
pub struct SeResult {
    pub per_user_se: Vec<f64>,
    pub sum_se: f64,
    pub ci_halfwidth: Vec<f64>,
    pub sum_ci_halfwidth: f64,
    pub n_outer: usize,
    pub n_inner: usize,
    pub excluded_draws: usize,
    pub method: SeMethod,
    /// Set when the route was evaluated outside its stated validity range.
    pub validity_warning: Option<String>,
}

impl SeResult {
    /// Aggregate `log2(1 + rho_k)` values, one row per outer draw.
    pub(crate) fn from_log_terms(
        config: &SystemConfig,
        logs: &[Vec<f64>],
        method: SeMethod,
        n_inner: usize,
        excluded_draws: usize,
    ) -> Self {
        let frac = config.data_fraction();
        let n = logs.len();
        let users = config.users;
        let (per_user_se, ci_halfwidth) = (0..users)
            .map(|k| {
                let (mean, half) = mean_and_half_width(logs.iter().map(|row| row[k]), n);
                (frac * mean, frac * half)
            })
            .unzip::<_, _, Vec<_>, Vec<_>>();
        let (_, sum_half) = mean_and_half_width(logs.iter().map(|row| row.iter().sum()), n);
        SeResult {
            sum_se: per_user_se.iter().sum(),
            per_user_se,
            ci_halfwidth,
            sum_ci_halfwidth: frac * sum_half,
            n_outer: n + excluded_draws,
            n_inner,
            excluded_draws,
            method,
            validity_warning: None,
        }
    }
}

fn mean_and_half_width(values: impl Iterator<Item = f64> + Clone, n: usize) -> (f64, f64) {
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let nf = n as f64;
    let mean = values.clone().sum::<f64>() / nf;
    if n < 2 {
        return (mean, f64::INFINITY);
    }
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (nf - 1.0);
    (mean, Z95 * (var / nf).sqrt())
}

/// One jammer attack: the pilot assignment in force and the jammer sequence.
#[derive(Debug, Clone)]
pub struct AttackDraw {
    pub book: PilotBook,
    pub jammer: JammerRealization,
}

/// Draw attack `outer` from the config seed.
pub fn draw_attack(config: &SystemConfig, outer: u64) -> Result<AttackDraw> {
    let seed = config.seed;
    let book = build_pilot_book(
        config.pilot_len,
        config.pilot_hopping,
        &mut stream(seed, outer, 0, StreamTag::PilotAssignment),
    )?;
    let jammer = draw_jammer_sequence(config, &book, &mut stream(seed, outer, 0, StreamTag::JammerSequence));
    Ok(AttackDraw { book, jammer })
}

/// The first `n` attacks for the config seed.
pub fn draw_attacks(config: &SystemConfig, n: usize) -> Result<Vec<AttackDraw>> {
    (0..n as u64).map(|o| draw_attack(config, o)).collect()
}

/// Complex multiplication counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostCounts {
    pub lmmse: u64,
    pub mmse_js: u64,
    pub zfjs: u64,
}

pub fn complexity_counts(antennas: u64, users: u64, pilot_len: u64) -> Result<CostCounts> {
    if antennas == 0 || users == 0 || pilot_len == 0 {
        return Err(Error::Domain(format!(
            "cost counts need positive M, K, tau; got ({antennas}, {users}, {pilot_len})"
        )));
    }
    Ok(CostCounts {
        lmmse: count_lmmse(antennas, pilot_len),
        mmse_js: count_mmse_js(antennas, pilot_len),
        zfjs: count_zfjs(antennas, users),
    })
}
