//! Finite frames in `C^m`: frame operator, bounds, dual and canonical tight
//! frames, and expansion/reconstruction.

use crate::error::{Error, Result};
use crate::matops::{self, CMatrix, CVector};
use crate::tolerance::Tolerance;

/// An `m x n` matrix whose columns span `C^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    phi: CMatrix,
    tol: Tolerance,
}

impl Frame {
    pub fn new(phi: CMatrix) -> Result<Self> {
        Self::with_tolerance(phi, Tolerance::default())
    }

    /// Validates the spanning condition (rank `m` with cutoff `tol.rank`).
    pub fn with_tolerance(phi: CMatrix, tol: Tolerance) -> Result<Self> {
        let (m, n) = phi.shape();
        if m == 0 {
            return Err(Error::InvalidParameter("frame dimension m must be positive".into()));
        }
        if phi.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::InvalidParameter("frame has non-finite entries".into()));
        }
        if n < m {
            return Err(Error::NotAFrame { rank: n, m });
        }
        let rank = matops::svd(&phi)?.rank(tol.rank);
        if rank < m {
            return Err(Error::NotAFrame { rank, m });
        }
        Ok(Frame { phi, tol })
    }

    pub fn from_columns(columns: &[CVector]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidParameter("frame needs at least one vector".into()));
        }
        let m = columns[0].len();
        if let Some(bad) = columns.iter().find(|c| c.len() != m) {
            return Err(Error::DimensionMismatch {
                context: "frame columns",
                expected: m,
                found: bad.len(),
            });
        }
        Self::new(CMatrix::from_columns(columns))
    }

    pub(crate) fn unchecked(phi: CMatrix, tol: Tolerance) -> Self {
        Frame { phi, tol }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.phi
    }

    pub fn into_matrix(self) -> CMatrix {
        self.phi
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn m(&self) -> usize {
        self.phi.nrows()
    }

    pub fn n(&self) -> usize {
        self.phi.ncols()
    }

    pub fn column(&self, i: usize) -> CVector {
        self.phi.column(i).into_owned()
    }

    pub fn columns(&self) -> Vec<CVector> {
        (0..self.n()).map(|i| self.column(i)).collect()
    }

    /// `S = Phi Phi*`.
    pub fn frame_operator(&self) -> CMatrix {
        &self.phi * self.phi.adjoint()
    }

    /// Gram matrix `Phi* Phi`, entry `(i, j) = <phi_i, phi_j>`.
    pub fn gram(&self) -> CMatrix {
        self.phi.adjoint() * &self.phi
    }

    /// Tightest bounds `(A, B)`: the extreme eigenvalues of `S`.
    pub fn frame_bounds(&self) -> Result<(f64, f64)> {
        let eig = matops::herm_eigenvalues(&self.frame_operator(), &self.tol)?;
        let upper = eig[0];
        let lower = eig[eig.len() - 1];
        if lower <= self.tol.rank * upper {
            return Err(Error::NotAFrame {
                rank: eig.iter().filter(|&&l| l > self.tol.rank * upper).count(),
                m: self.m(),
            });
        }
        Ok((lower, upper))
    }

    pub fn frame_operator_inverse(&self) -> Result<CMatrix> {
        matops::pseudo_inverse(&self.frame_operator(), &self.tol)
    }

    pub fn frame_operator_inv_sqrt(&self) -> Result<CMatrix> {
        matops::inv_sqrt(&self.frame_operator(), &self.tol)
    }

    /// Dual frame with columns `S^{-1} phi_i`.
    pub fn dual_frame(&self) -> Result<Frame> {
        let dual = self.frame_operator_inverse()? * &self.phi;
        Ok(Frame::unchecked(dual, self.tol))
    }

    /// Canonical tight frame `S^{-1/2} Phi`; the closest normalized tight frame.
    pub fn canonical_tight(&self) -> Result<Frame> {
        let m = self.frame_operator_inv_sqrt()? * &self.phi;
        Ok(Frame::unchecked(m, self.tol))
    }

    /// Minimum-norm expansion coefficients `a_i = <dual_i, x>`.
    pub fn expand(&self, x: &CVector) -> Result<CVector> {
        self.check_dim(x.len())?;
        Ok(self.dual_frame()?.phi.adjoint() * x)
    }

    /// `sum_i a_i phi_i`.
    pub fn reconstruct(&self, coefficients: &CVector) -> Result<CVector> {
        if coefficients.len() != self.n() {
            return Err(Error::DimensionMismatch {
                context: "expansion coefficients",
                expected: self.n(),
                found: coefficients.len(),
            });
        }
        Ok(&self.phi * coefficients)
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.m() {
            return Err(Error::DimensionMismatch {
                context: "signal vector",
                expected: self.m(),
                found: len,
            });
        }
        Ok(())
    }

    /// Max entrywise deviation of `Phi Phi*` from `I`.
    pub fn normalized_tight_deviation(&self) -> f64 {
        matops::max_abs_diff(&self.frame_operator(), &matops::identity(self.m()))
    }

    pub fn is_normalized_tight(&self) -> bool {
        self.normalized_tight_deviation() <= self.tol.abs.max(1e-8)
    }
}

/// `R = sum_i |<phi_i, mu_i>|^2` for a normalized tight frame `tight`.
pub fn r_phi_mu(frame: &Frame, tight: &Frame) -> Result<f64> {
    if frame.phi.shape() != tight.phi.shape() {
        return Err(Error::DimensionMismatch {
            context: "R_phi_mu frame pair",
            expected: frame.n(),
            found: tight.n(),
        });
    }
    let deviation = tight.normalized_tight_deviation();
    if deviation > frame.tol.abs.max(1e-8) {
        return Err(Error::NotNormalizedTight { deviation });
    }
    Ok((0..frame.n())
        .map(|i| frame.phi.column(i).dotc(&tight.phi.column(i)).norm_sqr())
        .sum())
}
