//! Seeded random streams and circularly-symmetric complex Gaussian draws.
//!
//! Every random quantity in a trial comes from its own ChaCha stream keyed by
//! `(seed, outer block, inner block, tag)`. The key is used verbatim as the
//! 256-bit ChaCha key, so distinct tuples never share a stream and a trial's
//! draws do not depend on which thread runs it or in what order.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{CMatrix, CVector, C64};

/// What a stream is used for. Part of the stream key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum StreamTag {
    PilotAssignment = 1,
    JammerSequence = 2,
    Channels = 3,
    PilotNoise = 4,
    DataSymbols = 5,
    DataNoise = 6,
}

/// Deterministic stream for one `(seed, outer, inner, tag)` tuple.
pub fn stream(seed: u64, outer: u64, inner: u64, tag: StreamTag) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    for (chunk, word) in key.chunks_exact_mut(8).zip([seed, outer, inner, tag as u64]) {
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// One draw from `CN(0, variance)`: real and imaginary parts are independent
/// `N(0, variance / 2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> C64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(s * re, s * im)
}

pub fn complex_gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, variance: f64) -> CVector {
    DVector::from_fn(len, |_, _| complex_gaussian(rng, variance))
}

/// Column-major fill, so column `j` uses draws `j*rows .. (j+1)*rows`.
pub fn complex_gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, variance: f64) -> CMatrix {
    DMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng, variance))
}
