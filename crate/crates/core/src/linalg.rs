//! Small dense helpers shared by the detectors and the evaluators.

use std::f64::consts::PI;

use nalgebra::Cholesky;

use crate::error::{Error, Result};
use crate::{CMatrix, CVector, C64};

/// Gram matrices above this condition number are treated as singular.
pub const SINGULAR_CONDITION: f64 = 1e14;

/// Condition numbers above this are worth reporting.
pub const ILL_CONDITIONED: f64 = 1e8;

/// Map an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Condition number of a Hermitian positive semi-definite matrix.
pub fn hermitian_condition(g: &CMatrix) -> f64 {
    let eig = g.clone().symmetric_eigenvalues();
    let max = eig.max();
    let min = eig.min();
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Zero-forcing combiner `H (H^H H)^{-1}` and the condition number of the Gram
/// matrix. The Gram matrix is factored, never inverted.
pub fn zero_forcing(h: &CMatrix) -> Result<(CMatrix, f64)> {
    if h.ncols() == 0 || h.nrows() < h.ncols() {
        return Err(Error::Dimension(format!(
            "zero forcing needs a tall matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let h_adj = h.adjoint();
    let gram = &h_adj * h;
    let condition = hermitian_condition(&gram);
    if condition.is_nan() || condition > SINGULAR_CONDITION {
        return Err(Error::SingularCombiner { condition });
    }
    let chol = Cholesky::new(gram).ok_or(Error::SingularCombiner { condition })?;
    Ok((chol.solve(&h_adj).adjoint(), condition))
}

/// `a^H b`.
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    a.dotc(b)
}

/// Stack column vectors into a matrix.
pub fn stack_columns<'a>(rows: usize, cols: impl IntoIterator<Item = &'a CVector>) -> CMatrix {
    let cols: Vec<&CVector> = cols.into_iter().collect();
    CMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_gaussian_matrix, stream, StreamTag};
    use proptest::prelude::*;

    #[test]
    fn wraps_into_half_open_interval() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-0.5) + 0.5).abs() < 1e-15);
        assert!((wrap_angle(2.0 * PI + 0.25) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn identity_column() {
        let mut h = CMatrix::zeros(4, 1);
        h[(0, 0)] = C64::new(1.0, 0.0);
        let (v, cond) = zero_forcing(&h).unwrap();
        assert_eq!(v, h);
        assert_eq!(cond, 1.0);
    }

    #[test]
    fn rank_deficient_is_reported() {
        let mut rng = stream(0, 0, 0, StreamTag::Channels);
        let a = complex_gaussian_matrix(&mut rng, 6, 1, 1.0);
        let h = CMatrix::from_fn(6, 2, |r, _| a[(r, 0)]);
        assert!(matches!(zero_forcing(&h), Err(Error::SingularCombiner { .. })));
        let z = CMatrix::zeros(6, 2);
        assert!(matches!(zero_forcing(&z), Err(Error::SingularCombiner { .. })));
    }

    proptest! {
        #[test]
        fn scaling_a_column_rescales_by_inverse_conjugate(seed in any::<u64>(), re in 0.2f64..3.0, im in -2.0f64..2.0) {
            let mut rng = stream(seed, 0, 0, StreamTag::Channels);
            let h = complex_gaussian_matrix(&mut rng, 12, 3, 1.0);
            let c = C64::new(re, im);
            let mut hs = h.clone();
            for r in 0..12 {
                hs[(r, 2)] *= c;
            }
            let (v, _) = zero_forcing(&h).unwrap();
            let (vs, _) = zero_forcing(&hs).unwrap();
            let expect = v.column(2) / c.conj();
            prop_assert!((vs.column(2) - expect).camax() < 1e-10);
            prop_assert!((vs.column(0) - v.column(0)).camax() < 1e-10);
            let prod = vs.adjoint() * &hs;
            prop_assert!((prod - CMatrix::identity(3, 3)).camax() < 1e-10);
        }
    }
}
