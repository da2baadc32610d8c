//! Received pilot matrix and its projections onto the pilot book.

use rand::Rng;

use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::rng::complex_gaussian_matrix;
use crate::sim::{ChannelSet, JammerRealization, PilotBook};
use crate::{CMatrix, CVector, C64};

/// `Y_t = sqrt(tau p_t) sum_k h_k phi_k^T + sqrt(tau q_t) h_w psi^T + N_t`
/// together with `Y_t conj(phi_i)` for every pilot `i`.
///
/// `noise` is kept so tests can split projections into their signal and
/// noise parts exactly; estimators never read it.
#[derive(Debug, Clone)]
pub struct PilotObservation {
    pub received: CMatrix,
    pub noise: CMatrix,
    projections: Vec<CVector>,
}

impl PilotObservation {
    pub fn antennas(&self) -> usize {
        self.received.nrows()
    }

    pub fn pilot_count(&self) -> usize {
        self.projections.len()
    }

    /// `Y_t conj(phi_i)`, precomputed.
    pub fn project(&self, pilot: usize) -> Result<&CVector> {
        self.projections.get(pilot).ok_or(Error::PilotIndex {
            index: pilot,
            len: self.projections.len(),
        })
    }

    /// Same as [`PilotObservation::project`] for indices known to be valid.
    pub(crate) fn projection(&self, pilot: usize) -> &CVector {
        &self.projections[pilot]
    }

    pub fn projections(&self) -> &[CVector] {
        &self.projections
    }

    /// Projected noise `N_t conj(phi_i)`.
    pub fn projected_noise(&self, book: &PilotBook, pilot: usize) -> CVector {
        let phi_conj = book.pilots().column(pilot).map(|z| z.conj());
        &self.noise * phi_conj
    }
}

/// Draw `N_t` with i.i.d. `CN(0, 1)` entries and assemble the observation.
pub fn receive_pilots<R: Rng + ?Sized>(
    channels: &ChannelSet,
    jam: &JammerRealization,
    book: &PilotBook,
    config: &SystemConfig,
    rng: &mut R,
) -> Result<PilotObservation> {
    let noise = complex_gaussian_matrix(rng, config.antennas, book.len(), 1.0);
    assemble_pilots(channels, jam, book, config, noise)
}

/// Assemble the observation from an explicit noise matrix (pass zeros for a
/// noiseless observation).
pub fn assemble_pilots(
    channels: &ChannelSet,
    jam: &JammerRealization,
    book: &PilotBook,
    config: &SystemConfig,
    noise: CMatrix,
) -> Result<PilotObservation> {
    let m = config.antennas;
    let tau = book.len();
    if noise.shape() != (m, tau)
        || channels.antennas() != m
        || channels.h_users.len() != config.users
        || channels.h_users.iter().any(|h| h.len() != m)
        || jam.psi.len() != tau
        || config.users > tau
    {
        return Err(Error::Dimension(format!(
            "pilot phase expects {m} antennas, {} users and {tau} pilots",
            config.users
        )));
    }
    let phi = book.pilots();
    let user_gain = C64::from((tau as f64 * config.p_t).sqrt());
    let jam_gain = C64::from((tau as f64 * config.q_t).sqrt());
    let mut received = noise.clone();
    for (k, h) in channels.h_users.iter().enumerate() {
        let pilot = phi.column(book.user_pilot(k));
        received.ger(user_gain, h, &pilot, C64::from(1.0));
    }
    received.ger(jam_gain, &channels.h_jammer, &jam.psi, C64::from(1.0));

    let projected = &received * phi.map(|z| z.conj());
    let projections = projected.column_iter().map(|c| c.into_owned()).collect();
    Ok(PilotObservation {
        received,
        noise,
        projections,
    })
}
