//! Dense complex linear algebra: Hermitian eigendecomposition, full SVD,
//! spectral matrix functions, and the series expansions of `S^{-1}` and
//! `S^{-1/2}` that serve as independent cross-checks.
//!
//! Eigenvalue and SVD kernels are delegated to `nalgebra`; this module fixes
//! ordering, phase and rank conventions on top of them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const EIG_EPS: f64 = 1e-15;
const MAX_SWEEPS: usize = 0; // 0 = let nalgebra iterate until convergence

/// Hermitian eigendecomposition, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub eigenvectors: CMatrix,
}

/// Full singular value decomposition `A = U diag(s) V*`.
#[derive(Debug, Clone)]
pub struct SvdResult {
    /// `m x m` unitary.
    pub u: CMatrix,
    /// `min(m, n)` non-negative values, descending.
    pub singular_values: Vec<f64>,
    /// `n x n` unitary.
    pub v: CMatrix,
}

impl HermEig {
    pub fn reconstruct(&self) -> CMatrix {
        let d = DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&l| Complex64::new(l, 0.0)),
        );
        &self.eigenvectors * CMatrix::from_diagonal(&d) * self.eigenvectors.adjoint()
    }

    /// Number of eigenvalues above `rank_tol * max|lambda|`.
    pub fn rank(&self, rank_tol: f64) -> usize {
        count_above(&self.eigenvalues, rank_tol)
    }
}

impl SvdResult {
    pub fn rank(&self, rank_tol: f64) -> usize {
        count_above(&self.singular_values, rank_tol)
    }

    /// `m x n` matrix holding the singular values on its diagonal.
    pub fn sigma_matrix(&self) -> CMatrix {
        let (m, n) = (self.u.nrows(), self.v.nrows());
        let mut s = CMatrix::zeros(m, n);
        for (i, &v) in self.singular_values.iter().enumerate() {
            s[(i, i)] = Complex64::new(v, 0.0);
        }
        s
    }

    pub fn reconstruct(&self) -> CMatrix {
        &self.u * self.sigma_matrix() * self.v.adjoint()
    }
}

fn count_above(values: &[f64], rank_tol: f64) -> usize {
    let top = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if top == 0.0 {
        return 0;
    }
    values.iter().filter(|&&v| v > rank_tol * top).count()
}

pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(m: usize) -> CMatrix {
    CMatrix::identity(m, m)
}

/// Largest entrywise modulus of `a - b`. Shapes must agree.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter().zip(b.iter()).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.norm()))
}

pub fn hermitian_deviation(a: &CMatrix) -> f64 {
    max_abs_diff(a, &a.adjoint())
}

/// `max |U U* - I|` entrywise.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    max_abs_diff(&(u * u.adjoint()), &identity(u.nrows()))
}

fn check_square(a: &CMatrix, context: &'static str) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            context,
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    Ok(())
}

fn check_hermitian(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    check_square(a, "Hermitian matrix")?;
    let deviation = hermitian_deviation(a);
    if deviation > tol.abs * max_abs(a).max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok((a + a.adjoint()).scale(0.5))
}

/// Eigendecomposition of a Hermitian matrix.
pub fn herm_eig(a: &CMatrix, tol: &Tolerance) -> Result<HermEig> {
    let sym = check_hermitian(a, tol)?;
    let m = sym.nrows();
    if m == 0 {
        return Ok(HermEig {
            eigenvalues: vec![],
            eigenvectors: sym,
        });
    }
    let eig = nalgebra::SymmetricEigen::try_new(sym, EIG_EPS, MAX_SWEEPS)
        .ok_or(Error::NoConvergence)?;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = CMatrix::from_fn(m, m, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(HermEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, descending.
pub fn herm_eigenvalues(a: &CMatrix, tol: &Tolerance) -> Result<Vec<f64>> {
    Ok(herm_eig(a, tol)?.eigenvalues)
}

/// Full SVD with unitary `U` (`m x m`) and `V` (`n x n`).
///
/// Phase convention: the first entry of each column of `V` with modulus above
/// `1e-12` is real and non-negative; the matching column of `U` absorbs the phase.
pub fn svd(a: &CMatrix) -> Result<SvdResult> {
    let (m, n) = a.shape();
    let k = m.min(n);
    if k == 0 {
        return Ok(SvdResult {
            u: identity(m),
            singular_values: vec![],
            v: identity(n),
        });
    }
    let dec = nalgebra::SVD::try_new(a.clone(), true, true, EIG_EPS, MAX_SWEEPS)
        .ok_or(Error::NoConvergence)?;
    let u_thin = dec.u.ok_or(Error::NoConvergence)?;
    let v_thin = dec.v_t.ok_or(Error::NoConvergence)?.adjoint();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| dec.singular_values[j].total_cmp(&dec.singular_values[i]));
    let singular_values: Vec<f64> = order.iter().map(|&i| dec.singular_values[i]).collect();
    let u_sorted = CMatrix::from_fn(m, k, |r, c| u_thin[(r, order[c])]);
    let v_sorted = CMatrix::from_fn(n, k, |r, c| v_thin[(r, order[c])]);
    let mut u = complete_unitary(&u_sorted);
    let mut v = complete_unitary(&v_sorted);
    for j in 0..n {
        let phase = leading_phase(&v.column(j).into_owned());
        if phase == c64(1.0) {
            continue;
        }
        let fix = phase.conj();
        v.column_mut(j).iter_mut().for_each(|x| *x *= fix);
        if j < m {
            u.column_mut(j).iter_mut().for_each(|x| *x *= fix);
        }
    }
    Ok(SvdResult {
        u,
        singular_values,
        v,
    })
}

fn leading_phase(col: &CVector) -> Complex64 {
    col.iter()
        .find(|x| x.norm() > 1e-12)
        .map(|x| x / x.norm())
        .unwrap_or(c64(1.0))
}

/// Extends a matrix with orthonormal columns to a square unitary matrix.
pub fn complete_unitary(partial: &CMatrix) -> CMatrix {
    let (m, k) = partial.shape();
    let mut cols: Vec<CVector> = (0..k).map(|j| partial.column(j).into_owned()).collect();
    let mut used = vec![false; m];
    while cols.len() < m {
        let mut best: Option<(usize, CVector, f64)> = None;
        for (i, taken) in used.iter().enumerate() {
            if *taken {
                continue;
            }
            let mut v = CVector::zeros(m);
            v[i] = c64(1.0);
            for _ in 0..2 {
                for c in &cols {
                    let proj = c.dotc(&v);
                    v -= c * proj;
                }
            }
            let norm = v.norm();
            if best.as_ref().is_none_or(|b| norm > b.2) {
                best = Some((i, v, norm));
            }
        }
        let (i, v, norm) = best.expect("basis completion ran out of candidates");
        used[i] = true;
        cols.push(v.unscale(norm));
    }
    CMatrix::from_columns(&cols)
}

/// `V diag(f(lambda_i)) V*`, with `f` applied only to eigenvalues above
/// `rank_tol * lambda_max`; the rest map to zero. For `f = 1/x` this is the
/// Moore-Penrose pseudoinverse.
pub fn psd_fun(a: &CMatrix, f: impl Fn(f64) -> f64, tol: &Tolerance) -> Result<CMatrix> {
    let eig = herm_eig(a, tol)?;
    let top = eig.eigenvalues.first().copied().unwrap_or(0.0);
    let m = a.nrows();
    let mut out = CMatrix::zeros(m, m);
    if top <= 0.0 {
        return Ok(out);
    }
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= tol.rank * top {
            continue;
        }
        let w = f(lambda);
        let v = eig.eigenvectors.column(j);
        out += (v * v.adjoint()).scale(w);
    }
    Ok(out)
}

pub fn pseudo_inverse(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    psd_fun(a, |x| 1.0 / x, tol)
}

pub fn inv_sqrt(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    psd_fun(a, |x| 1.0 / x.sqrt(), tol)
}

pub fn sqrt_psd(a: &CMatrix, tol: &Tolerance) -> Result<CMatrix> {
    psd_fun(a, f64::sqrt, tol)
}

fn check_series_bounds(s: &CMatrix, lower: f64, upper: f64) -> Result<()> {
    check_square(s, "series expansion")?;
    if !(lower > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lower frame bound must be positive, got {lower}"
        )));
    }
    if !(upper >= lower) || !upper.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "upper bound {upper} must be finite and at least the lower bound {lower}"
        )));
    }
    Ok(())
}

/// Sums `sum_{l=0}^{terms} coeff(l) (I - 2S/(A+B))^l`.
fn power_series(s: &CMatrix, lower: f64, upper: f64, terms: usize, coeff: impl Fn(usize, f64) -> f64) -> CMatrix {
    let m = s.nrows();
    let step = identity(m) - s.scale(2.0 / (lower + upper));
    let mut power = identity(m);
    let mut sum = CMatrix::zeros(m, m);
    let mut c = 1.0;
    for l in 0..=terms {
        c = coeff(l, c);
        sum += power.scale(c);
        if l < terms {
            power = &power * &step;
        }
    }
    sum
}

/// Partial Neumann sum for `S^{-1}` given spectral bounds `0 < A <= B`.
///
/// The error in spectral norm is at most `rho^{terms+1} / A` with
/// `rho = (B - A)/(B + A)`.
pub fn neumann_inverse(s: &CMatrix, lower: f64, upper: f64, terms: usize) -> Result<CMatrix> {
    check_series_bounds(s, lower, upper)?;
    let sum = power_series(s, lower, upper, terms, |_, _| 1.0);
    Ok(sum.scale(2.0 / (lower + upper)))
}

/// Partial binomial series for `S^{-1/2}`, coefficients `(2l)! / (4^l (l!)^2)`.
pub fn series_invsqrt(s: &CMatrix, lower: f64, upper: f64, terms: usize) -> Result<CMatrix> {
    check_series_bounds(s, lower, upper)?;
    let sum = power_series(s, lower, upper, terms, |l, prev| {
        if l == 0 {
            1.0
        } else {
            prev * (2 * l - 1) as f64 / (2 * l) as f64
        }
    });
    Ok(sum.scale((2.0 / (lower + upper)).sqrt()))
}

/// Spectral-norm bound on the truncation error of [`neumann_inverse`].
pub fn neumann_tail_bound(lower: f64, upper: f64, terms: usize) -> f64 {
    let rho = (upper - lower) / (upper + lower);
    rho.powi(terms as i32 + 1) / lower
}

/// Spectral-norm bound on the truncation error of [`series_invsqrt`].
pub fn invsqrt_tail_bound(lower: f64, upper: f64, terms: usize) -> f64 {
    let rho = (upper - lower) / (upper + lower);
    let mut c = 1.0;
    for l in 1..=terms + 1 {
        c *= (2 * l - 1) as f64 / (2 * l) as f64;
    }
    (2.0 / (lower + upper)).sqrt() * c * rho.powi(terms as i32 + 1) / (1.0 - rho)
}
