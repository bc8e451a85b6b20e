//! Least-squares construction of GU frames from arbitrary frames.
//!
//! The target Gram structure is `beta^2 R` where `R[q', q] = a(q - q')` is a
//! group-translation matrix over a fixed `GroupSpec`, hence `R = F A F*` with
//! `A = diag(alpha)`, `alpha = sqrt(n) * FT(a)`. Any GU frame with that Gram
//! matrix has the form `W Sigma F*` with `W` unitary and `Sigma` the `m x n`
//! matrix carrying `sqrt(alpha_h)` in row `k` at column `h_k`, where
//! `h_0 < h_1 < ...` are the indices with `alpha_h > 0`. The least-squares
//! problem then reduces to a unitary Procrustes problem for `W`.

use serde::Serialize;

use crate::abelian::GroupSpec;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::gu::ft_diagonalizes;
use crate::matops::{self, c64, CMatrix, CVector};
use crate::tolerance::Tolerance;

/// Prescribed Gram structure `R` with its Fourier eigenvalues.
#[derive(Debug, Clone)]
pub struct TargetGram {
    spec: GroupSpec,
    a: CVector,
    r: CMatrix,
    alpha: Vec<f64>,
    support: Vec<usize>,
}

impl TargetGram {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn sequence(&self) -> &CVector {
        &self.a
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.r
    }

    /// `alpha_h = sqrt(n) * FT(a)(h)`, the eigenvalues of `R`.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Indices `h` with non-zero `alpha_h`, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn rank(&self) -> usize {
        self.support.len()
    }

    pub fn trace(&self) -> f64 {
        self.r.trace().re
    }

    /// `m x n` matrix with `sqrt(alpha_{h_k})` at `(k, h_k)`.
    pub fn sigma_matrix(&self) -> CMatrix {
        let mut s = CMatrix::zeros(self.support.len(), self.spec.order());
        for (k, &h) in self.support.iter().enumerate() {
            s[(k, h)] = c64(self.alpha[h].sqrt());
        }
        s
    }
}

/// Assembles `R[q', q] = a(q - q')` and checks it is Hermitian and PSD.
pub fn build_target_gram(a: &CVector, spec: &GroupSpec, tol: &Tolerance) -> Result<TargetGram> {
    let n = spec.order();
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            context: "target sequence length",
            expected: n,
            found: a.len(),
        });
    }
    let r = CMatrix::from_fn(n, n, |row, col| a[spec.sub_index(col, row)]);
    let scale = a.iter().fold(1.0f64, |m, v| m.max(v.norm()));
    let deviation = matops::hermitian_deviation(&r);
    if deviation > tol.abs * scale {
        return Err(Error::NotHermitian { deviation });
    }
    let alpha_c = (spec.ft_matrix() * a).scale((n as f64).sqrt());
    let alpha_scale = alpha_c.iter().fold(1.0f64, |m, v| m.max(v.norm()));
    let mut alpha = Vec::with_capacity(n);
    for (h, v) in alpha_c.iter().enumerate() {
        if v.im.abs() > tol.abs * alpha_scale || v.re < -tol.abs * alpha_scale {
            return Err(Error::NegativeSpectrum { index: h, value: format!("{v}") });
        }
        alpha.push(v.re.max(0.0));
    }
    let diag = ft_diagonalizes(&r, spec, tol)?;
    if !diag.diagonalized {
        return Err(Error::NotFourierDiagonal { max_off_diagonal: diag.max_off_diagonal });
    }
    let top = alpha.iter().cloned().fold(0.0, f64::max);
    let support = (0..n).filter(|&h| alpha[h] > tol.rank * top).collect();
    Ok(TargetGram {
        spec: spec.clone(),
        a: a.clone(),
        r,
        alpha,
        support,
    })
}

fn check_compatible(f_in: &Frame, target: &TargetGram) -> Result<()> {
    if f_in.n() != target.spec.order() {
        return Err(Error::DimensionMismatch {
            context: "input frame size vs group order",
            expected: target.spec.order(),
            found: f_in.n(),
        });
    }
    if target.rank() != f_in.m() {
        return Err(Error::RankMismatch {
            rank: target.rank(),
            m: f_in.m(),
        });
    }
    Ok(())
}

/// `W Sigma F*` with `W = U V*` from the SVD `F_in F Sigma* = U D V*`:
/// the frame with Gram `R` closest to `F_in`.
fn shaped_unit(f_in: &Frame, target: &TargetGram) -> Result<CMatrix> {
    check_compatible(f_in, target)?;
    let fourier = target.spec.ft_matrix();
    let sigma = target.sigma_matrix();
    let cross = f_in.matrix() * &fourier * sigma.adjoint();
    let dec = matops::svd(&cross)?;
    let w = &dec.u * dec.v.adjoint();
    Ok(w * sigma * fourier.adjoint())
}

/// Closest GU frame with Gram matrix exactly `beta0^2 R`.
pub fn sc_lsguf(f_in: &Frame, target: &TargetGram, beta0: f64) -> Result<Frame> {
    if !(beta0 > 0.0) || !beta0.is_finite() {
        return Err(Error::InvalidParameter(format!("beta0 must be positive, got {beta0}")));
    }
    let unit = shaped_unit(f_in, target)?;
    Ok(Frame::unchecked(unit.scale(beta0), *f_in.tolerance()))
}

/// `beta0 (F R F*)^{-1/2} F R`; valid only when `F R F*` is invertible.
pub fn sc_lsguf_closed_form(f_in: &Frame, target: &TargetGram, beta0: f64) -> Result<CMatrix> {
    check_compatible(f_in, target)?;
    let fr = f_in.matrix() * target.matrix();
    let frf = &fr * f_in.matrix().adjoint();
    let tol = f_in.tolerance();
    let eig = matops::herm_eigenvalues(&frf, tol)?;
    let rank = eig.iter().filter(|&&l| l > tol.rank * eig[0]).count();
    if rank < f_in.m() {
        return Err(Error::NotAFrame { rank, m: f_in.m() });
    }
    Ok(matops::inv_sqrt(&frf, tol)? * fr * c64(beta0))
}

/// Closest GU frame with Gram `beta^2 R` for the best `beta > 0`.
/// Returns the frame and `beta_hat = Re Tr(F_in* U) / Tr(R)`.
pub fn c_lsguf(f_in: &Frame, target: &TargetGram) -> Result<(Frame, f64)> {
    let unit = shaped_unit(f_in, target)?;
    let beta = (f_in.matrix().adjoint() * &unit).trace().re / target.trace();
    if !(beta > 0.0) {
        return Err(Error::DegenerateAlignment { beta });
    }
    Ok((Frame::unchecked(unit.scale(beta), *f_in.tolerance()), beta))
}

/// `Tr((F R F*)^{1/2}) / Tr(R)`, the optimal scale when `F R F*` is invertible.
pub fn optimal_scale_closed_form(f_in: &Frame, target: &TargetGram) -> Result<f64> {
    check_compatible(f_in, target)?;
    let frf = f_in.matrix() * target.matrix() * f_in.matrix().adjoint();
    let root = matops::sqrt_psd(&frf, f_in.tolerance())?;
    Ok(root.trace().re / target.trace())
}

/// `Phi = Q Lambda Sigma F*` from the SVD `F_in = Q Lambda V*`, where
/// `Sigma F*` keeps the first `m` rows of `F*` scaled by `sigma`.
/// With `sigma = 1` the frame bounds of `F_in` are preserved.
pub fn naive_gu_projection(f_in: &Frame, spec: &GroupSpec, sigma: Option<&[f64]>) -> Result<Frame> {
    let (m, n) = (f_in.m(), f_in.n());
    if spec.order() != n {
        return Err(Error::DimensionMismatch {
            context: "input frame size vs group order",
            expected: n,
            found: spec.order(),
        });
    }
    let weights: Vec<f64> = match sigma {
        Some(s) if s.len() != m => {
            return Err(Error::DimensionMismatch {
                context: "sigma diagonal",
                expected: m,
                found: s.len(),
            })
        }
        Some(s) => {
            if let Some(bad) = s.iter().find(|&&v| !(v > 0.0)) {
                return Err(Error::InvalidParameter(format!("sigma entries must be positive, got {bad}")));
            }
            s.to_vec()
        }
        None => vec![1.0; m],
    };
    let dec = matops::svd(f_in.matrix())?;
    let f_adj = spec.ft_matrix().adjoint();
    let mut core = CMatrix::zeros(m, n);
    for k in 0..m {
        let w = c64(dec.singular_values[k] * weights[k]);
        for q in 0..n {
            core[(k, q)] = f_adj[(k, q)] * w;
        }
    }
    Ok(Frame::unchecked(&dec.u * core, *f_in.tolerance()))
}

/// `sum_i |phi_i - f_i|^2`.
pub fn ls_error(f_in: &Frame, phi: &Frame) -> Result<f64> {
    ls_error_matrix(f_in.matrix(), phi.matrix())
}

pub fn ls_error_matrix(f_in: &CMatrix, phi: &CMatrix) -> Result<f64> {
    if f_in.shape() != phi.shape() {
        return Err(Error::DimensionMismatch {
            context: "least-squares error shapes",
            expected: f_in.len(),
            found: phi.len(),
        });
    }
    Ok((phi - f_in).norm_squared())
}

/// Summary emitted alongside a constructed frame.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    #[serde(rename = "E")]
    pub error: f64,
    pub beta: Option<f64>,
    pub bounds: (f64, f64),
}
