//! Uplink massive MIMO under a single-antenna jammer.
//!
//! The crate simulates one coherence block at a time: orthonormal pilots are
//! sent by the users while a jammer transmits a random sequence, the base
//! station projects the received pilot matrix onto every pilot (including the
//! ones no user owns), estimates both user and jammer channels, and then
//! filters the data phase with a combining matrix. Spectral efficiency is
//! evaluated three ways: the large-antenna limit, a closed form valid when
//! every estimate can use its own unused pilot, and a nested Monte Carlo
//! evaluation of the conditional SINR bound.
//!
//! Module map:
//!
//! * [`config`], [`rng`], [`sim`]: scenario parameters, seeded streams,
//!   pilots, channels and jammer sequences.
//! * [`pilot_phase`]: the received pilot matrix and its projections.
//! * [`estimation`]: LMMSE, blind jamming-parameter estimation, and the
//!   jamming-suppression estimators for user and jammer channels.
//! * [`detection`]: MF, ZF and jamming-suppression ZF combiners.
//! * [`performance`]: spectral efficiency, MF moments and cost counters.

pub mod config;
pub mod detection;
pub mod error;
pub mod estimation;
pub mod linalg;
pub mod performance;
pub mod pilot_phase;
pub mod rng;
pub mod sim;

pub use nalgebra::Complex;

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
/// Column vector of complex samples, one entry per antenna (or pilot sample).
pub type CVector = nalgebra::DVector<C64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;

pub use config::{db_to_linear, SystemConfig};
pub use detection::{build_combiner, combine, receive_data, Combiner, DataObservation, DetectorKind, SymbolAlphabet};
pub use error::{Error, Result};
pub use estimation::{
    assign_unused_pilots, estimate_channels, estimate_jamming_params, genie_params, lmmse_estimate, mmse_js_jammer,
    mmse_js_user, EstimateSet, EstimatorKind, JammingParams, ParamMode,
};
pub use performance::{
    asymptotic_se, complexity_counts, draw_attacks, mf_conditional_moments, se_closed_form, se_monte_carlo,
    sinr_closed_form, AsymptoticSe, AttackDraw, CostCounts, McSpec, MfClosedFormMoments, SeMethod, SeResult,
};
pub use pilot_phase::{receive_pilots, PilotObservation};
pub use sim::{
    build_pilot_book, draw_channels, draw_jammer_sequence, ChannelSet, JammerRealization, PilotBook, UserRatios,
};
