//! Evaluate a scenario and write the results as CSV.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use jsmimo_core::performance::{asymptotic_se, draw_attacks, se_closed_form, se_monte_carlo, AsymptoticSe, McSpec};
use jsmimo_core::SeResult;

use crate::scenario::{Method, Scenario, SeRoute, SweepAxis};

pub const CSV_HEADER: &str = "sweep_value,tau,estimator,detector,se_route,sum_se,ci_halfwidth,\
n_outer,n_inner,seed,excluded_draws,validity_warning";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Omit the timestamp comment line.
    pub reproducible: bool,
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            reproducible: false,
            parallel: true,
        }
    }
}

/// One CSV row. `sum_se` is `None` when the route reports an unbounded value.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub sweep_value: f64,
    pub tau: usize,
    pub method: Method,
    pub sum_se: Option<f64>,
    pub ci_halfwidth: f64,
    pub n_outer: usize,
    pub n_inner: usize,
    pub seed: u64,
    pub excluded_draws: usize,
    pub validity_warning: Option<&'static str>,
}

impl Row {
    fn from_result(value: f64, tau: usize, method: Method, seed: u64, r: &SeResult) -> Self {
        Row {
            sweep_value: value,
            tau,
            method,
            sum_se: Some(r.sum_se),
            ci_halfwidth: r.sum_ci_halfwidth,
            n_outer: r.n_outer,
            n_inner: r.n_inner,
            seed,
            excluded_draws: r.excluded_draws,
            validity_warning: r.validity_warning.as_ref().map(|_| "tau_below_2k_plus_1"),
        }
    }

    pub fn to_csv(&self) -> String {
        let se = self
            .sum_se
            .map_or_else(|| "unbounded".to_string(), |v| format!("{v:.9}"));
        let value = if self.sweep_value.fract() == 0.0 {
            format!("{}", self.sweep_value as i64)
        } else {
            format!("{:.9}", self.sweep_value)
        };
        format!(
            "{value},{},{},{},{},{se},{:.9},{},{},{},{},{}",
            self.tau,
            self.method.estimator.name(),
            self.method.detector.name(),
            self.method.route.name(),
            self.ci_halfwidth,
            self.n_outer,
            self.n_inner,
            self.seed,
            self.excluded_draws,
            self.validity_warning.unwrap_or(""),
        )
    }
}

/// Evaluate every (sweep value, pilot length, method) combination in order.
pub fn run_scenario(sc: &Scenario, opts: RunOptions) -> anyhow::Result<Vec<Row>> {
    sc.validate()?;
    let mut rows = Vec::new();
    for &value in &sc.sweep_values {
        for tau in sc.taus() {
            let cfg = sc.config_at(value, tau);
            let tau = cfg.pilot_len;
            let needs_draws = sc.methods.iter().any(|m| m.route != SeRoute::MonteCarlo);
            let draws = if needs_draws {
                draw_attacks(&cfg, sc.n_outer)?
            } else {
                Vec::new()
            };
            for &method in &sc.methods {
                let row = match method.route {
                    SeRoute::MonteCarlo => {
                        let spec = McSpec::new(method.estimator, method.detector)
                            .trials(sc.n_outer, sc.n_inner)
                            .mode(sc.mode)
                            .parallel(opts.parallel);
                        Row::from_result(value, tau, method, cfg.seed, &se_monte_carlo(&cfg, &spec)?)
                    }
                    SeRoute::ClosedForm => {
                        Row::from_result(value, tau, method, cfg.seed, &se_closed_form(&cfg, &draws)?)
                    }
                    SeRoute::Asymptotic => match asymptotic_se(&cfg, &draws) {
                        AsymptoticSe::Finite(r) => Row::from_result(value, tau, method, cfg.seed, &r),
                        AsymptoticSe::Unbounded => Row {
                            sweep_value: value,
                            tau,
                            method,
                            sum_se: None,
                            ci_halfwidth: 0.0,
                            n_outer: sc.n_outer,
                            n_inner: 0,
                            seed: cfg.seed,
                            excluded_draws: 0,
                            validity_warning: None,
                        },
                    },
                };
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(out: &mut W, rows: &[Row], sc: &Scenario, opts: RunOptions) -> std::io::Result<()> {
    if !opts.reproducible {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        writeln!(out, "# generated_unix_time={secs}")?;
    }
    let axis = match sc.sweep_axis {
        SweepAxis::JamPowerDb => "jam_power_db",
        SweepAxis::Antennas => "antennas",
        SweepAxis::PilotLen => "pilot_len",
    };
    writeln!(out, "# sweep_axis={axis}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{parse_scenario, Preset};

    #[test]
    fn row_format() {
        let method: Method = "mmse_js+zfjs:cf".parse().unwrap();
        let row = Row {
            sweep_value: 4.0,
            tau: 3,
            method,
            sum_se: Some(1.0 / 3.0),
            ci_halfwidth: 0.01,
            n_outer: 10,
            n_inner: 0,
            seed: 7,
            excluded_draws: 0,
            validity_warning: None,
        };
        assert_eq!(
            row.to_csv(),
            "4,3,mmse_js,zfjs,closed_form,0.333333333,0.010000000,10,0,7,0,"
        );
        assert_eq!(CSV_HEADER.split(',').count(), row.to_csv().split(',').count());
    }

    #[test]
    fn small_run_produces_one_row_per_combination() {
        let mut sc = Scenario::preset(Preset::Fig3);
        sc.sweep_values = vec![20.0, 40.0];
        sc.n_outer = 3;
        sc.n_inner = 4;
        sc.methods.push("mmse_js+zfjs:cf".parse().unwrap());
        let rows = run_scenario(&sc, RunOptions::default()).unwrap();
        assert_eq!(rows.len(), 2 * 3 * 2);
        let warned: Vec<usize> = rows
            .iter()
            .filter(|r| r.validity_warning.is_some())
            .map(|r| r.tau)
            .collect();
        assert!(warned.iter().all(|&t| t < 5));
        assert!(warned.contains(&3) && warned.contains(&4));
    }

    #[test]
    fn unbounded_asymptote_is_labelled() {
        let mut sc = parse_scenario(
            "M = 20\nK = 1\ntau = 3\np_db = 5\nq_db = 0\nsweep = antennas\n\
             sweep_values = 20\nmethods = lmmse+mf:asy\nn_outer = 3\n",
        )
        .unwrap();
        sc.base.q_t = 0.0;
        let rows = run_scenario(&sc, RunOptions::default()).unwrap();
        assert_eq!(rows[0].sum_se, None);
        assert!(rows[0].to_csv().contains(",unbounded,"));
    }
}
