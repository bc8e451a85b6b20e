//! Geometrically uniform frames `{U(q) phi : q in Q}` and the Fourier fast
//! path for their bounds, dual generator and canonical tight generator.

use rand::{rngs::StdRng, Rng, SeedableRng};
use serde::Serialize;

use crate::abelian::GroupSpec;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::io::serde_cvec;
use crate::matops::{self, c64, CMatrix, CVector};
use crate::tolerance::Tolerance;
use num_complex::Complex64;

/// Above this group order the homomorphism table is spot-checked instead of
/// verified exhaustively.
pub const FULL_TABLE_CHECK_LIMIT: usize = 512;
const SAMPLED_TRIPLES: usize = 256;

/// Unitary matrices `U(q)` indexed by the canonical enumeration of `spec`,
/// forming a homomorphic image of the group.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryRep {
    spec: GroupSpec,
    matrices: Vec<CMatrix>,
    tol: Tolerance,
}

impl UnitaryRep {
    pub fn new(spec: GroupSpec, matrices: Vec<CMatrix>) -> Result<Self> {
        Self::with_tolerance(spec, matrices, Tolerance::default())
    }

    pub fn with_tolerance(spec: GroupSpec, matrices: Vec<CMatrix>, tol: Tolerance) -> Result<Self> {
        if matrices.len() != spec.order() {
            return Err(Error::DimensionMismatch {
                context: "representation matrices",
                expected: spec.order(),
                found: matrices.len(),
            });
        }
        let m = matrices[0].nrows();
        if m == 0 {
            return Err(Error::InvalidParameter("representation dimension must be positive".into()));
        }
        for u in &matrices {
            if u.shape() != (m, m) {
                return Err(Error::DimensionMismatch {
                    context: "representation matrix shape",
                    expected: m,
                    found: if u.nrows() != m { u.nrows() } else { u.ncols() },
                });
            }
        }
        for (index, u) in matrices.iter().enumerate() {
            let deviation = matops::unitary_deviation(u);
            if deviation > tol.abs {
                return Err(Error::NotUnitary { index, deviation });
            }
        }
        let deviation = matops::max_abs_diff(&matrices[0], &matops::identity(m));
        if deviation > tol.abs {
            return Err(Error::IdentityMismatch { deviation });
        }
        let rep = UnitaryRep { spec, matrices, tol };
        rep.check_homomorphism()?;
        Ok(rep)
    }

    fn check_homomorphism(&self) -> Result<()> {
        let n = self.spec.order();
        let check = |a: usize, b: usize| -> Result<()> {
            let prod = &self.matrices[a] * &self.matrices[b];
            let deviation = matops::max_abs_diff(&prod, &self.matrices[self.spec.add_index(a, b)]);
            if deviation > self.tol.abs {
                return Err(Error::NotHomomorphism { a, b, deviation });
            }
            Ok(())
        };
        if n <= FULL_TABLE_CHECK_LIMIT {
            for a in 0..n {
                for b in a..n {
                    check(a, b)?;
                    check(b, a)?;
                }
            }
            return Ok(());
        }
        // generators: unit vectors of each cyclic factor
        let gens: Vec<usize> = (0..self.spec.factors().len())
            .map(|t| {
                let mut e = self.spec.identity();
                e.0[t] = 1 % self.spec.factors()[t];
                self.spec.index_of(&e).expect("unit element is in the group")
            })
            .collect();
        for &g in &gens {
            let mut acc = 0;
            for _ in 0..n.min(1 << 20) {
                check(acc, g)?;
                acc = self.spec.add_index(acc, g);
                if acc == 0 {
                    break;
                }
            }
            for &h in &gens {
                check(g, h)?;
            }
        }
        let mut rng = StdRng::seed_from_u64(0x5eed_f9e0);
        for _ in 0..SAMPLED_TRIPLES {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            check(a, b)?;
        }
        Ok(())
    }

    /// Diagonal representation `U(q) = diag_k(conj <h_k, q>)` built from
    /// characters `h_k` given as canonical indices.
    pub fn diagonal_characters(spec: GroupSpec, characters: &[usize]) -> Result<Self> {
        if characters.is_empty() {
            return Err(Error::InvalidParameter("at least one character is required".into()));
        }
        if let Some(&h) = characters.iter().find(|&&h| h >= spec.order()) {
            return Err(Error::IndexOutOfRange { index: h, len: spec.order() });
        }
        let matrices = (0..spec.order())
            .map(|q| {
                let d = CVector::from_iterator(
                    characters.len(),
                    characters.iter().map(|&h| spec.ft_kernel_index(h, q).conj()),
                );
                CMatrix::from_diagonal(&d)
            })
            .collect();
        Ok(UnitaryRep { spec, matrices, tol: Tolerance::default() })
    }

    /// `W U(q) W*` for a unitary change of basis `W`.
    pub fn conjugated(&self, w: &CMatrix) -> Result<Self> {
        if w.shape() != (self.dim(), self.dim()) {
            return Err(Error::DimensionMismatch {
                context: "change of basis",
                expected: self.dim(),
                found: w.nrows(),
            });
        }
        let deviation = matops::unitary_deviation(w);
        if deviation > self.tol.abs {
            return Err(Error::NotUnitary { index: 0, deviation });
        }
        let wa = w.adjoint();
        let matrices = self.matrices.iter().map(|u| w * u * &wa).collect();
        Ok(UnitaryRep { spec: self.spec.clone(), matrices, tol: self.tol })
    }

    pub(crate) fn unchecked(spec: GroupSpec, matrices: Vec<CMatrix>, tol: Tolerance) -> Self {
        UnitaryRep { spec, matrices, tol }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.spec.order()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, index: usize) -> &CMatrix {
        &self.matrices[index]
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn with_tol(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }
}

/// A GU frame: representation plus generating vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GUFrame {
    rep: UnitaryRep,
    generator: CVector,
}

impl GUFrame {
    /// Checks the generator dimension and that the orbit spans `C^m`.
    pub fn new(rep: UnitaryRep, generator: CVector) -> Result<Self> {
        let g = Self::with_generator(rep, generator)?;
        Frame::with_tolerance(g.synthesize_matrix(), g.rep.tol)?;
        Ok(g)
    }

    fn with_generator(rep: UnitaryRep, generator: CVector) -> Result<Self> {
        if generator.len() != rep.dim() {
            return Err(Error::DimensionMismatch {
                context: "generating vector",
                expected: rep.dim(),
                found: generator.len(),
            });
        }
        Ok(GUFrame { rep, generator })
    }

    pub fn rep(&self) -> &UnitaryRep {
        &self.rep
    }

    pub fn generator(&self) -> &CVector {
        &self.generator
    }

    pub fn spec(&self) -> &GroupSpec {
        self.rep.spec()
    }

    pub fn m(&self) -> usize {
        self.rep.dim()
    }

    pub fn n(&self) -> usize {
        self.rep.order()
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.rep.tol
    }

    fn synthesize_matrix(&self) -> CMatrix {
        let cols: Vec<CVector> = self.rep.matrices.iter().map(|u| u * &self.generator).collect();
        CMatrix::from_columns(&cols)
    }

    /// Column `q` is `U(q) phi`, in canonical group order.
    pub fn synthesize(&self) -> Frame {
        Frame::unchecked(self.synthesize_matrix(), self.rep.tol)
    }

    /// Same representation, different generator (frame condition re-checked).
    pub fn with_new_generator(&self, generator: CVector) -> Result<Self> {
        GUFrame::new(self.rep.clone(), generator)
    }
}

/// Result of the Fourier fast path for a GU frame.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    /// Inner-product sequence `s(q) = <phi(0), phi(q)>`.
    #[serde(with = "serde_cvec")]
    pub s: CVector,
    /// Fourier transform of `s` (real, non-negative).
    pub s_hat: Vec<f64>,
    /// Singular values `n^{1/4} sqrt(s_hat(h))`, indexed by `h`.
    pub sigma: Vec<f64>,
    /// Indices `h` with non-zero `sigma(h)`.
    pub index_set: Vec<usize>,
    pub lower_bound: f64,
    pub upper_bound: f64,
    #[serde(with = "serde_cvec")]
    pub dual_generator: CVector,
    #[serde(with = "serde_cvec")]
    pub canonical_generator: CVector,
}

/// Fourier fast path applied directly to frame columns ordered by `spec`.
///
/// The caller is responsible for the columns being GU under `spec`; use
/// [`ft_diagonalizes`] on the Gram matrix to check an arbitrary frame first.
pub fn spectral_from_columns(phi: &CMatrix, spec: &GroupSpec, tol: &Tolerance) -> Result<SpectralReport> {
    let n = spec.order();
    let m = phi.nrows();
    if phi.ncols() != n {
        return Err(Error::DimensionMismatch {
            context: "GU frame columns",
            expected: n,
            found: phi.ncols(),
        });
    }
    let first = phi.column(0);
    let raw: Vec<Complex64> = (0..n).map(|q| first.dotc(&phi.column(q))).collect();
    // Hermitian symmetrization: s(-q) = conj(s(q)) holds exactly for GU sets
    let s = CVector::from_fn(n, |q, _| (raw[q] + raw[spec.neg_index(q)].conj()) * 0.5);
    let f = spec.ft_matrix();
    let s_hat_c = &f * &s;
    let scale = s_hat_c.iter().fold(1.0f64, |a, v| a.max(v.norm()));
    let mut s_hat = Vec::with_capacity(n);
    for (h, v) in s_hat_c.iter().enumerate() {
        if v.im.abs() > tol.abs * scale || v.re < -tol.abs * scale {
            return Err(Error::NegativeSpectrum { index: h, value: format!("{v}") });
        }
        s_hat.push(v.re.max(0.0));
    }
    let top = s_hat.iter().cloned().fold(0.0, f64::max);
    let index_set: Vec<usize> = (0..n).filter(|&h| s_hat[h] > tol.rank * top).collect();
    if index_set.len() != m {
        return Err(Error::NotAFrame { rank: index_set.len(), m });
    }
    let root_n = (n as f64).sqrt();
    let sigma: Vec<f64> = s_hat.iter().map(|&v| (root_n * v).sqrt()).collect();
    let phi_hat = phi * &f;
    let mut dual_generator = CVector::zeros(m);
    let mut canonical_generator = CVector::zeros(m);
    for &h in &index_set {
        let u = phi_hat.column(h).unscale(sigma[h]);
        dual_generator += u.unscale(sigma[h]);
        canonical_generator += u;
    }
    dual_generator.unscale_mut(root_n);
    canonical_generator.unscale_mut(root_n);
    let (lower_bound, upper_bound) = index_set.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &h| {
        (lo.min(root_n * s_hat[h]), hi.max(root_n * s_hat[h]))
    });
    Ok(SpectralReport {
        s,
        s_hat,
        sigma,
        index_set,
        lower_bound,
        upper_bound,
        dual_generator,
        canonical_generator,
    })
}

/// Bounds and generators of a GU frame through the Fourier transform over its group.
pub fn gu_spectral(g: &GUFrame) -> Result<SpectralReport> {
    spectral_from_columns(&g.synthesize_matrix(), g.spec(), g.tolerance())
}

/// GU frame of dual vectors: same group, generator `S^{-1} phi`.
pub fn gu_dual(g: &GUFrame) -> Result<GUFrame> {
    let report = gu_spectral(g)?;
    GUFrame::with_generator(g.rep.clone(), report.dual_generator)
}

/// GU canonical tight frame: same group, generator `S^{-1/2} phi`.
pub fn gu_canonical(g: &GUFrame) -> Result<GUFrame> {
    let report = gu_spectral(g)?;
    GUFrame::with_generator(g.rep.clone(), report.canonical_generator)
}

/// Outcome of the permuted-matrix test.
#[derive(Debug, Clone, Serialize)]
pub struct PermutedGramCheck {
    /// Every row is a permutation of row 0 and every column of column 0.
    pub permuted: bool,
    /// `G = G^T`.
    pub symmetric: bool,
    /// `row_permutations[i][j]` is the position in row 0 matched by `G[i][j]`.
    pub row_permutations: Vec<Vec<usize>>,
    /// First offending row (`"row"`) or column (`"column"`), if any.
    pub failure: Option<(String, usize)>,
}

impl PermutedGramCheck {
    /// Sufficient condition for the vectors behind `G` to be GU.
    pub fn certifies_gu(&self) -> bool {
        self.permuted && self.symmetric
    }
}

fn match_permutation(reference: &[Complex64], values: &[Complex64], tol: f64) -> Option<Vec<usize>> {
    let mut used = vec![false; reference.len()];
    let mut perm = Vec::with_capacity(values.len());
    for v in values {
        let best = reference
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, r)| (k, (r - v).norm()))
            .filter(|&(_, d)| d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        used[best.0] = true;
        perm.push(best.0);
    }
    Some(perm)
}

/// Tests whether every row (column) of `G` is a permutation of its first row (column).
pub fn is_permuted_gram(g: &CMatrix, tol: &Tolerance) -> PermutedGramCheck {
    let n = g.nrows();
    let mut result = PermutedGramCheck {
        permuted: false,
        symmetric: false,
        row_permutations: vec![],
        failure: None,
    };
    if g.ncols() != n || n == 0 {
        result.failure = Some(("shape".into(), g.ncols()));
        return result;
    }
    let eps = tol.abs * matops::max_abs(g).max(1.0);
    result.symmetric = matops::max_abs_diff(g, &g.transpose()) <= eps;
    let row0: Vec<Complex64> = g.row(0).iter().copied().collect();
    for i in 0..n {
        let row: Vec<Complex64> = g.row(i).iter().copied().collect();
        match match_permutation(&row0, &row, eps) {
            Some(p) => result.row_permutations.push(p),
            None => {
                result.failure = Some(("row".into(), i));
                result.row_permutations.clear();
                return result;
            }
        }
    }
    let col0: Vec<Complex64> = g.column(0).iter().copied().collect();
    for j in 0..n {
        let col: Vec<Complex64> = g.column(j).iter().copied().collect();
        if match_permutation(&col0, &col, eps).is_none() {
            result.failure = Some(("column".into(), j));
            result.row_permutations.clear();
            return result;
        }
    }
    result.permuted = true;
    result
}

/// Outcome of the Fourier diagonalization test.
#[derive(Debug, Clone, Serialize)]
pub struct FtDiagonalization {
    pub diagonalized: bool,
    pub max_off_diagonal: f64,
    /// Diagonal of `F* G F`; for a GU Gram matrix this is `sqrt(n) s_hat(h)`.
    #[serde(with = "serde_cvec")]
    pub diagonal: CVector,
}

/// Whether the Fourier matrix over `spec` diagonalizes `G`.
///
/// `F G F*` and `F* G F` differ by the permutation `h -> -h`, so checking the
/// off-diagonal part of either is equivalent; the reported diagonal is the
/// one indexed by `h` directly.
pub fn ft_diagonalizes(g: &CMatrix, spec: &GroupSpec, tol: &Tolerance) -> Result<FtDiagonalization> {
    let n = spec.order();
    if g.nrows() != n || g.ncols() != n {
        return Err(Error::DimensionMismatch {
            context: "Gram matrix vs group order",
            expected: n,
            found: g.nrows(),
        });
    }
    let f = spec.ft_matrix();
    let d = f.adjoint() * g * &f;
    let mut max_off_diagonal = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                max_off_diagonal = max_off_diagonal.max(d[(i, j)].norm());
            }
        }
    }
    let eps = tol.abs * matops::max_abs(g).max(1.0);
    Ok(FtDiagonalization {
        diagonalized: max_off_diagonal <= eps,
        max_off_diagonal,
        diagonal: d.diagonal(),
    })
}

/// Builds a GU frame whose Gram matrix is `G`, with the free unitary factor
/// fixed to the identity: `Phi = Sigma F*`, `U(q) = diag_k(conj <h_k, q>)`.
pub fn gram_to_gu(g: &CMatrix, spec: &GroupSpec, tol: &Tolerance) -> Result<GUFrame> {
    let diag = ft_diagonalizes(g, spec, tol)?;
    if !diag.diagonalized {
        return Err(Error::NotFourierDiagonal { max_off_diagonal: diag.max_off_diagonal });
    }
    let deviation = matops::hermitian_deviation(g);
    if deviation > tol.abs * matops::max_abs(g).max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    let scale = diag.diagonal.iter().fold(1.0f64, |a, v| a.max(v.norm()));
    let mut alpha = Vec::with_capacity(spec.order());
    for (h, v) in diag.diagonal.iter().enumerate() {
        if v.im.abs() > tol.abs * scale || v.re < -tol.abs * scale {
            return Err(Error::NegativeSpectrum { index: h, value: format!("{v}") });
        }
        alpha.push(v.re.max(0.0));
    }
    let top = alpha.iter().cloned().fold(0.0, f64::max);
    let support: Vec<usize> = (0..alpha.len()).filter(|&h| alpha[h] > tol.rank * top).collect();
    if support.is_empty() {
        return Err(Error::NotAFrame { rank: 0, m: 0 });
    }
    let root_n = (spec.order() as f64).sqrt();
    let generator = CVector::from_iterator(support.len(), support.iter().map(|&h| c64(alpha[h].sqrt() / root_n)));
    let rep = UnitaryRep::diagonal_characters(spec.clone(), &support)?.with_tol(*tol);
    GUFrame::new(rep, generator)
}

/// Max over `q` of `|S U(q) - U(q) S|`.
pub fn commutation_defect(s: &CMatrix, rep: &UnitaryRep) -> f64 {
    rep.matrices()
        .iter()
        .map(|u| matops::max_abs_diff(&(s * u), &(u * s)))
        .fold(0.0, f64::max)
}
