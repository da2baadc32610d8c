use rand::Rng;

use crate::config::SystemConfig;
use crate::rng::complex_gaussian_vector;
use crate::CVector;

/// Channel vectors for one coherence block: `h_k ~ CN(0, beta_k I_M)` and
/// `h_w ~ CN(0, beta_w I_M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    pub h_users: Vec<CVector>,
    pub h_jammer: CVector,
}

impl ChannelSet {
    pub fn antennas(&self) -> usize {
        self.h_jammer.len()
    }
}

/// Users first (in index order), then the jammer.
pub fn draw_channels<R: Rng + ?Sized>(config: &SystemConfig, rng: &mut R) -> ChannelSet {
    let m = config.antennas;
    let h_users = config
        .beta_users
        .iter()
        .map(|&beta| complex_gaussian_vector(rng, m, beta))
        .collect();
    let h_jammer = complex_gaussian_vector(rng, m, config.beta_jammer);
    ChannelSet { h_users, h_jammer }
}
