//! Shared fixtures for the benchmarks.

use jsmimo_core::performance::{draw_attack, AttackDraw};
use jsmimo_core::rng::{stream, StreamTag};
use jsmimo_core::{draw_channels, receive_pilots, ChannelSet, PilotObservation, SystemConfig};

/// One fully drawn pilot phase.
pub struct Fixture {
    pub config: SystemConfig,
    pub attack: AttackDraw,
    pub channels: ChannelSet,
    pub obs: PilotObservation,
}

pub fn fixture(antennas: usize, users: usize, pilot_len: usize) -> Fixture {
    let config = SystemConfig::symmetric(antennas, users, pilot_len, 3.0, 10.0).with_seed(7);
    let attack = draw_attack(&config, 0).expect("valid fixture");
    let channels = draw_channels(&config, &mut stream(7, 0, 0, StreamTag::Channels));
    let obs = receive_pilots(
        &channels,
        &attack.jammer,
        &attack.book,
        &config,
        &mut stream(7, 0, 0, StreamTag::PilotNoise),
    )
    .expect("valid fixture");
    Fixture {
        config,
        attack,
        channels,
        obs,
    }
}
