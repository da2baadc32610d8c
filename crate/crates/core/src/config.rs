//! Scalar scenario parameters.
//!
//! Powers are stored on a linear scale relative to the (unit) receiver noise
//! variance, so a transmit power doubles as an SNR. Conversion from dB happens
//! once, when a scenario is parsed.

use crate::error::{Error, Result};

/// Convert a power in dB to a linear ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Everything needed to simulate one cell: array size, user count, pilot
/// and block lengths, transmit powers and large-scale fading.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Base-station antennas `M`.
    pub antennas: usize,
    /// Single-antenna users `K`.
    pub users: usize,
    /// Pilot length, equal to the number of orthonormal pilots `tau`.
    pub pilot_len: usize,
    /// Coherence block length `T` in samples.
    pub coherence_len: usize,
    /// User pilot power.
    pub p_t: f64,
    /// User data power.
    pub p_d: f64,
    /// Jammer power during the pilot phase.
    pub q_t: f64,
    /// Jammer power during the data phase.
    pub q_d: f64,
    /// Large-scale fading per user.
    pub beta_users: Vec<f64>,
    /// Large-scale fading of the jammer.
    pub beta_jammer: f64,
    /// Base seed for every random stream.
    pub seed: u64,
    /// Draw a fresh random pilot assignment for every block.
    pub pilot_hopping: bool,
}

impl SystemConfig {
    /// Config with identical user powers/fading and `beta = 1` everywhere,
    /// the normalisation used by the reference experiments.
    pub fn symmetric(antennas: usize, users: usize, pilot_len: usize, p: f64, q: f64) -> Self {
        Self {
            antennas,
            users,
            pilot_len,
            coherence_len: 200,
            p_t: p,
            p_d: p,
            q_t: q,
            q_d: q,
            beta_users: vec![1.0; users],
            beta_jammer: 1.0,
            seed: 0,
            pilot_hopping: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.users < 1 {
            return bad("at least one user is required".into());
        }
        if self.pilot_len < self.users + 1 {
            return Err(Error::NoUnusedPilot {
                users: self.users,
                pilots: self.pilot_len,
            });
        }
        if self.pilot_len > self.coherence_len {
            return bad(format!(
                "pilot length {} exceeds coherence block {}",
                self.pilot_len, self.coherence_len
            ));
        }
        if self.antennas <= self.users + 1 {
            return bad(format!(
                "need more than K+1 = {} antennas, got {}",
                self.users + 1,
                self.antennas
            ));
        }
        if self.beta_users.len() != self.users {
            return bad(format!(
                "{} fading coefficients for {} users",
                self.beta_users.len(),
                self.users
            ));
        }
        let scalars = [
            ("p_t", self.p_t),
            ("p_d", self.p_d),
            ("q_t", self.q_t),
            ("q_d", self.q_d),
            ("beta_jammer", self.beta_jammer),
        ];
        for (name, v) in scalars
            .into_iter()
            .chain(self.beta_users.iter().map(|&b| ("beta_users", b)))
        {
            if !v.is_finite() || v < 0.0 {
                return bad(format!("{name} must be finite and non-negative, got {v}"));
            }
        }
        Ok(())
    }

    /// Fraction of the block left for data, `1 - tau/T`.
    pub fn data_fraction(&self) -> f64 {
        1.0 - self.pilot_len as f64 / self.coherence_len as f64
    }

    pub fn unused_pilots(&self) -> usize {
        self.pilot_len.saturating_sub(self.users)
    }

    /// Whether every user and the jammer can be given a distinct unused
    /// pilot (`tau >= 2K + 1`), the hypothesis of the closed-form SINR.
    pub fn has_distinct_unused(&self) -> bool {
        self.pilot_len > 2 * self.users
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_conversion() {
        assert!((db_to_linear(5.0) - 3.162_277_660_168_379_5).abs() < 1e-12);
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((db_to_linear(20.0) - 100.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_missing_unused_pilot() {
        let cfg = SystemConfig::symmetric(10, 2, 2, 1.0, 1.0);
        assert_eq!(cfg.validate(), Err(Error::NoUnusedPilot { users: 2, pilots: 2 }));
    }

    #[test]
    fn rejects_small_arrays_and_bad_powers() {
        assert!(SystemConfig::symmetric(2, 1, 3, 1.0, 1.0).validate().is_err());
        let mut cfg = SystemConfig::symmetric(8, 1, 3, 1.0, 1.0);
        assert!(cfg.validate().is_ok());
        cfg.q_d = -1.0;
        assert!(cfg.validate().is_err());
        cfg.q_d = f64::NAN;
        assert!(cfg.validate().is_err());
        let mut cfg = SystemConfig::symmetric(8, 1, 3, 1.0, 1.0);
        cfg.pilot_len = 300;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn zero_fading_is_allowed() {
        let mut cfg = SystemConfig::symmetric(8, 1, 3, 1.0, 1.0);
        cfg.beta_users[0] = 0.0;
        assert!(cfg.validate().is_ok());
    }
}
