use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::{CMatrix, C64};

/// Orthonormal pilot set and the block's user-to-pilot assignment.
///
/// Column `i` of [`PilotBook::pilots`] is pilot `i`. `assignment[k]` is the
/// pilot of user `k` for `k < K`; the tail of the permutation lists the
/// unused pilots.
#[derive(Debug, Clone, PartialEq)]
pub struct PilotBook {
    pilots: CMatrix,
    assignment: Vec<usize>,
}

impl PilotBook {
    /// Unit-norm DFT columns, `phi_i[n] = exp(-2 pi j n i / tau) / sqrt(tau)`,
    /// with the identity assignment.
    pub fn dft(tau: usize) -> Result<Self> {
        if tau < 1 {
            return Err(Error::InvalidConfig("pilot length must be at least 1".into()));
        }
        let scale = 1.0 / (tau as f64).sqrt();
        let pilots = DMatrix::from_fn(tau, tau, |n, i| {
            let phase = -2.0 * PI * ((n * i) % tau) as f64 / tau as f64;
            C64::from_polar(scale, phase)
        });
        Ok(Self {
            pilots,
            assignment: (0..tau).collect(),
        })
    }

    /// Book from an arbitrary unitary matrix (columns are pilots).
    pub fn from_unitary(pilots: CMatrix, assignment: Vec<usize>) -> Result<Self> {
        let tau = pilots.nrows();
        if pilots.ncols() != tau || assignment.len() != tau {
            return Err(Error::Dimension(format!(
                "pilot matrix {}x{} with {} assignments",
                tau,
                pilots.ncols(),
                assignment.len()
            )));
        }
        let mut seen = vec![false; tau];
        for &a in &assignment {
            if a >= tau || std::mem::replace(&mut seen[a], true) {
                return Err(Error::InvalidConfig("assignment is not a permutation".into()));
            }
        }
        let gram = pilots.adjoint() * &pilots;
        let off = (gram - CMatrix::identity(tau, tau)).camax();
        if off > 1e-10 {
            return Err(Error::InvalidConfig(format!(
                "pilots are not orthonormal (max Gram deviation {off:.2e})"
            )));
        }
        Ok(Self { pilots, assignment })
    }

    pub fn len(&self) -> usize {
        self.pilots.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `tau x tau` matrix whose columns are the pilots.
    pub fn pilots(&self) -> &CMatrix {
        &self.pilots
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Pilot index used by user `k`.
    pub fn user_pilot(&self, k: usize) -> usize {
        self.assignment[k]
    }

    /// Pilots left over when the first `users` entries are assigned.
    pub fn unused(&self, users: usize) -> &[usize] {
        &self.assignment[users..]
    }
}

/// DFT pilot book; the assignment is uniformly shuffled when `hopping` is set.
pub fn build_pilot_book<R: Rng + ?Sized>(tau: usize, hopping: bool, rng: &mut R) -> Result<PilotBook> {
    let mut book = PilotBook::dft(tau)?;
    if hopping {
        book.assignment.shuffle(rng);
    }
    Ok(book)
}
