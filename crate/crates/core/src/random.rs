//! Seeded random instances for testing and benchmarking.

use num_complex::Complex64;
use rand::seq::index;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::abelian::GroupSpec;
use crate::cgu::CGUFrame;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::gu::{GUFrame, UnitaryRep};
use crate::matops::{CMatrix, CVector};

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> CVector {
    CVector::from_fn(m, |_, _| gaussian(rng))
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of
/// `diag(R)` moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(m: usize, rng: &mut R) -> CMatrix {
    let qr = gaussian_matrix(m, m, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..m {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Full-rank Gaussian frame of `n` vectors in `C^m` (rank is almost sure).
pub fn random_frame<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<Frame> {
    Frame::new(gaussian_matrix(m, n, rng))
}

/// `m` distinct characters, conjugated by a random unitary.
pub fn random_rep<R: Rng + ?Sized>(spec: &GroupSpec, m: usize, rng: &mut R) -> Result<UnitaryRep> {
    let n = spec.order();
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!("need 1 <= m <= {n} distinct characters, got {m}")));
    }
    let characters = index::sample(rng, n, m).into_vec();
    let rep = UnitaryRep::diagonal_characters(spec.clone(), &characters)?;
    rep.conjugated(&random_unitary(m, rng))
}

/// GU frame over `spec` in `C^m` with distinct characters and a Gaussian generator.
pub fn random_gu_frame<R: Rng + ?Sized>(spec: &GroupSpec, m: usize, rng: &mut R) -> Result<GUFrame> {
    let rep = random_rep(spec, m, rng)?;
    GUFrame::new(rep, gaussian_vector(m, rng))
}

/// CGU frame over `spec` in `C^m` with `r` Gaussian generators.
pub fn random_cgu_frame<R: Rng + ?Sized>(spec: &GroupSpec, m: usize, r: usize, rng: &mut R) -> Result<CGUFrame> {
    let rep = random_rep(spec, m, rng)?;
    CGUFrame::new(rep, (0..r).map(|_| gaussian_vector(m, rng)).collect())
}
