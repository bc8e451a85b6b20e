//! Spectra of GU frames with one element, or a translated set of elements,
//! removed. For a GU frame these spectra do not depend on which translate is
//! removed, because `U_k* S(k) U_k` is the same matrix for every `k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gu::GUFrame;
use crate::matops::{self, CMatrix};

fn check_index(j: usize, n: usize) -> Result<()> {
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, len: n });
    }
    Ok(())
}

fn removed_operator(g: &GUFrame, removed: &[usize]) -> CMatrix {
    let f = g.synthesize();
    let mut s = f.frame_operator();
    for &i in removed {
        let c = f.matrix().column(i);
        s -= c * c.adjoint();
    }
    s
}

/// Eigenvalues (descending) of `S - phi_j phi_j*`.
pub fn prune_one_spectrum(g: &GUFrame, j: usize) -> Result<Vec<f64>> {
    check_index(j, g.n())?;
    matops::herm_eigenvalues(&removed_operator(g, &[j]), g.tolerance())
}

/// Common spectrum of all single-element prunings and how far they spread.
#[derive(Debug, Clone, Serialize)]
pub struct PruneReport {
    pub spectrum: Vec<f64>,
    /// Largest eigenvalue difference between any removal `j` and removal 0.
    pub deviation: f64,
    /// `B / A` of the pruned set; `None` when it no longer spans.
    pub frame_bound_ratio: Option<f64>,
}

fn bound_ratio(spectrum: &[f64], rank_tol: f64) -> Option<f64> {
    let hi = spectrum.first().copied()?;
    let lo = spectrum.last().copied()?;
    (hi > 0.0 && lo > rank_tol * hi).then(|| hi / lo)
}

/// Prunes every element in turn and reports the spread of the resulting spectra.
pub fn prune_invariance_check(g: &GUFrame) -> Result<PruneReport> {
    let spectrum = prune_one_spectrum(g, 0)?;
    let mut deviation = 0.0f64;
    for j in 1..g.n() {
        let other = prune_one_spectrum(g, j)?;
        for (a, b) in spectrum.iter().zip(&other) {
            deviation = deviation.max((a - b).abs());
        }
    }
    let frame_bound_ratio = bound_ratio(&spectrum, g.tolerance().rank);
    Ok(PruneReport {
        spectrum,
        deviation,
        frame_bound_ratio,
    })
}

/// Closed-form spectrum after removing one vector from a tight GU frame with a
/// unit-norm generator: `{n/m - 1}` followed by `n/m` repeated `m - 1` times,
/// sorted descending.
pub fn pruned_tight_spectrum(n: usize, m: usize) -> Result<Vec<f64>> {
    if m == 0 || n < m {
        return Err(Error::InvalidParameter(format!("need n >= m >= 1, got n={n}, m={m}")));
    }
    let r = n as f64 / m as f64;
    let mut out = vec![r; m - 1];
    out.push(r - 1.0);
    Ok(out)
}

/// Spectrum after removing the translate `{q_k + q_j : j in J}`.
#[derive(Debug, Clone, Serialize)]
pub struct CosetPruning {
    pub removed: Vec<usize>,
    pub spectrum: Vec<f64>,
    /// False when the remaining vectors no longer span `C^m`.
    pub is_frame: bool,
}

pub fn prune_coset_spectrum(g: &GUFrame, set: &[usize], k: usize) -> Result<CosetPruning> {
    let n = g.n();
    check_index(k, n)?;
    for &j in set {
        check_index(j, n)?;
    }
    let spec = g.spec();
    let mut removed: Vec<usize> = set.iter().map(|&j| spec.add_index(k, j)).collect();
    removed.sort_unstable();
    removed.dedup();
    let spectrum = matops::herm_eigenvalues(&removed_operator(g, &removed), g.tolerance())?;
    let top = spectrum.first().copied().unwrap_or(0.0).max(0.0);
    let scale = g.synthesize().frame_bounds().map(|(_, b)| b).unwrap_or(1.0);
    let floor = g.tolerance().rank.max(1e-12) * scale;
    let lowest = spectrum.last().copied().unwrap_or(0.0);
    let is_frame = top > 0.0 && lowest > floor;
    Ok(CosetPruning {
        removed,
        spectrum,
        is_frame,
    })
}
