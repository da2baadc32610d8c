//! Data phase: received vector, combiners and symbol estimates.

use rand::Rng;

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::estimation::EstimateSet;
use crate::linalg::zero_forcing;
use crate::rng::{complex_gaussian, complex_gaussian_vector};
use crate::sim::ChannelSet;
use crate::{CMatrix, CVector, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorKind {
    /// Matched filter on the user estimates.
    Mf,
    /// Zero forcing on the user estimates only.
    Zf,
    /// Zero forcing on the user estimates plus the jammer estimate.
    Zfjs,
}

impl DetectorKind {
    pub fn name(self) -> &'static str {
        match self {
            DetectorKind::Mf => "mf",
            DetectorKind::Zf => "zf",
            DetectorKind::Zfjs => "zfjs",
        }
    }
}

/// Unit-power symbol alphabet for the data phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymbolAlphabet {
    #[default]
    Qpsk,
    Gaussian,
}

impl SymbolAlphabet {
    pub fn draw<R: Rng + ?Sized>(self, rng: &mut R) -> C64 {
        match self {
            SymbolAlphabet::Qpsk => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let re = if rng.random::<bool>() { s } else { -s };
                let im = if rng.random::<bool>() { s } else { -s };
                C64::new(re, im)
            }
            SymbolAlphabet::Gaussian => complex_gaussian(rng, 1.0),
        }
    }
}

/// `y_d = sqrt(p_d) sum_i h_i x_i + sqrt(q_d) h_w x_w + n_d` and its parts.
#[derive(Debug, Clone)]
pub struct DataObservation {
    pub y_d: CVector,
    pub x_users: Vec<C64>,
    pub x_jammer: C64,
    pub noise: CVector,
}

pub fn receive_data<R: Rng + ?Sized>(
    channels: &ChannelSet,
    config: &SystemConfig,
    alphabet: SymbolAlphabet,
    rng: &mut R,
) -> DataObservation {
    let x_users = (0..config.users).map(|_| alphabet.draw(rng)).collect();
    let x_jammer = alphabet.draw(rng);
    let noise = complex_gaussian_vector(rng, config.antennas, 1.0);
    assemble_data(channels, config, x_users, x_jammer, noise).expect("drawn data phase has consistent dimensions")
}

/// Build the data observation from explicit symbols and noise.
pub fn assemble_data(
    channels: &ChannelSet,
    config: &SystemConfig,
    x_users: Vec<C64>,
    x_jammer: C64,
    noise: CVector,
) -> Result<DataObservation> {
    let m = channels.antennas();
    if noise.len() != m || x_users.len() != channels.h_users.len() {
        return Err(Error::Dimension(format!(
            "data phase expects {m} antennas and {} symbols",
            channels.h_users.len()
        )));
    }
    let mut y_d = noise.clone();
    let user_gain = config.p_d.sqrt();
    for (h, &x) in channels.h_users.iter().zip(&x_users) {
        y_d.axpy(x * user_gain, h, C64::from(1.0));
    }
    y_d.axpy(x_jammer * config.q_d.sqrt(), &channels.h_jammer, C64::from(1.0));
    Ok(DataObservation {
        y_d,
        x_users,
        x_jammer,
        noise,
    })
}

/// Combining matrix; column `k < K` detects user `k`.
#[derive(Debug, Clone)]
pub struct Combiner {
    pub matrix: CMatrix,
    pub kind: DetectorKind,
    /// Gram-matrix condition number for the zero-forcing kinds.
    pub condition: Option<f64>,
}

impl Combiner {
    pub fn from_estimates(h: &CMatrix, kind: DetectorKind) -> Result<Self> {
        match kind {
            DetectorKind::Mf => Ok(Combiner {
                matrix: h.clone(),
                kind,
                condition: None,
            }),
            DetectorKind::Zf | DetectorKind::Zfjs => {
                let (matrix, condition) = zero_forcing(h)?;
                Ok(Combiner {
                    matrix,
                    kind,
                    condition: Some(condition),
                })
            }
        }
    }

    pub fn user_column(&self, k: usize) -> CVector {
        self.matrix.column(k).into_owned()
    }
}

/// MF and ZF use `[h_1 .. h_K]`; ZFJS appends the jammer estimate.
pub fn build_combiner(estimates: &EstimateSet, kind: DetectorKind) -> Result<Combiner> {
    let h = estimates.stacked(kind == DetectorKind::Zfjs);
    Combiner::from_estimates(&h, kind)
}

/// First `K` entries of `V^H y_d`.
pub fn combine(combiner: &Combiner, obs: &DataObservation) -> Result<Vec<C64>> {
    let v = &combiner.matrix;
    if v.nrows() != obs.y_d.len() || v.ncols() < obs.x_users.len() {
        return Err(Error::Dimension(format!(
            "combiner is {}x{}, observation has {} antennas and {} users",
            v.nrows(),
            v.ncols(),
            obs.y_d.len(),
            obs.x_users.len()
        )));
    }
    let users = obs.x_users.len();
    Ok((0..users).map(|k| v.column(k).dotc(&obs.y_d)).collect())
}

/// Complex multiplications to form the ZFJS combiner.
pub fn count_zfjs(antennas: u64, users: u64) -> u64 {
    let n = users + 1;
    antennas * n * n + (n * n * n - n) / 3
}
