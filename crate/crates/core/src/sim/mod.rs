//! Random scenario generation: pilot book, fading channels, jammer sequence.

mod channels;
mod jammer;
mod pilots;

pub use channels::{draw_channels, ChannelSet};
pub use jammer::{draw_jammer_sequence, JammerRealization, UserRatios};
pub use pilots::{build_pilot_book, PilotBook};
