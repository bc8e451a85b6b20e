//! Compound GU frames `{U_i phi_k}`: one abelian group acting on several
//! generators. Frame vectors are ordered with the group index outer and the
//! generator index inner, i.e. column `i * r + k` is `U_i phi_k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::gu::{GUFrame, UnitaryRep};
use crate::matops::{self, c64, CMatrix, CVector};
use crate::tolerance::Tolerance;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CGUFrame {
    rep: UnitaryRep,
    generators: Vec<CVector>,
}

impl CGUFrame {
    pub fn new(rep: UnitaryRep, generators: Vec<CVector>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidParameter("CGU frame needs at least one generator".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.len() != rep.dim()) {
            return Err(Error::DimensionMismatch {
                context: "CGU generating vector",
                expected: rep.dim(),
                found: bad.len(),
            });
        }
        let c = CGUFrame { rep, generators };
        Frame::with_tolerance(c.synthesize_matrix(), *c.rep.tolerance())?;
        Ok(c)
    }

    pub fn rep(&self) -> &UnitaryRep {
        &self.rep
    }

    pub fn generators(&self) -> &[CVector] {
        &self.generators
    }

    /// Group order `l`.
    pub fn l(&self) -> usize {
        self.rep.order()
    }

    /// Number of generators `r`.
    pub fn r(&self) -> usize {
        self.generators.len()
    }

    pub fn m(&self) -> usize {
        self.rep.dim()
    }

    fn synthesize_matrix(&self) -> CMatrix {
        let mut cols = Vec::with_capacity(self.l() * self.r());
        for u in self.rep.matrices() {
            for phi in &self.generators {
                cols.push(u * phi);
            }
        }
        CMatrix::from_columns(&cols)
    }

    pub fn synthesize(&self) -> Frame {
        Frame::unchecked(self.synthesize_matrix(), *self.rep.tolerance())
    }

    /// `S = sum_i U_i (sum_k phi_k phi_k*) U_i*`.
    pub fn frame_operator(&self) -> CMatrix {
        let mut inner = CMatrix::zeros(self.m(), self.m());
        for phi in &self.generators {
            inner += phi * phi.adjoint();
        }
        self.rep
            .matrices()
            .iter()
            .fold(CMatrix::zeros(self.m(), self.m()), |acc, u| acc + u * &inner * u.adjoint())
    }

    /// Same group with new generators; no frame check (used for dual/canonical sets).
    pub fn with_generators(&self, generators: Vec<CVector>) -> Result<Self> {
        if generators.len() != self.r() {
            return Err(Error::DimensionMismatch {
                context: "replacement generators",
                expected: self.r(),
                found: generators.len(),
            });
        }
        Ok(CGUFrame {
            rep: self.rep.clone(),
            generators,
        })
    }
}

/// Dual generators `S^{-1} phi_k`.
pub fn cgu_dual_generators(c: &CGUFrame) -> Result<Vec<CVector>> {
    let inv = matops::pseudo_inverse(&c.frame_operator(), c.rep.tolerance())?;
    Ok(c.generators.iter().map(|g| &inv * g).collect())
}

/// Canonical tight generators `S^{-1/2} phi_k`.
pub fn cgu_canonical_generators(c: &CGUFrame) -> Result<Vec<CVector>> {
    let root = matops::inv_sqrt(&c.frame_operator(), c.rep.tolerance())?;
    Ok(c.generators.iter().map(|g| &root * g).collect())
}

/// Frame bounds together with the average eigenvalue `t = (l/m) sum_k |phi_k|^2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundsEnvelope {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
}

impl BoundsEnvelope {
    pub fn is_tight(&self, tol: f64) -> bool {
        (self.upper - self.lower).abs() <= tol * self.upper.max(1.0)
    }
}

/// Computes `A <= t <= B`; a violation means the frame operator is inconsistent.
pub fn bounds_envelope(c: &CGUFrame) -> Result<BoundsEnvelope> {
    let (lower, upper) = c.synthesize().frame_bounds()?;
    let energy: f64 = c.generators.iter().map(|g| g.norm_squared()).sum();
    let value = c.l() as f64 / c.m() as f64 * energy;
    let slack = c.rep.tolerance().abs * upper.max(1.0);
    if value < lower - slack || value > upper + slack {
        return Err(Error::EnvelopeViolation { lower, value, upper });
    }
    Ok(BoundsEnvelope { lower, value, upper })
}

/// GU generating vectors `phi_k = V_k phi` under a second abelian group.
#[derive(Debug, Clone, PartialEq)]
pub struct GUGenerators {
    gen_rep: UnitaryRep,
    seed: CVector,
}

impl GUGenerators {
    pub fn new(gen_rep: UnitaryRep, seed: CVector) -> Result<Self> {
        if seed.len() != gen_rep.dim() {
            return Err(Error::DimensionMismatch {
                context: "GU generator seed",
                expected: gen_rep.dim(),
                found: seed.len(),
            });
        }
        Ok(GUGenerators { gen_rep, seed })
    }

    pub fn gen_rep(&self) -> &UnitaryRep {
        &self.gen_rep
    }

    pub fn seed(&self) -> &CVector {
        &self.seed
    }

    pub fn generators(&self) -> Vec<CVector> {
        self.gen_rep.matrices().iter().map(|v| v * &self.seed).collect()
    }
}

/// Phases `theta(p, t)` with `U_p V_t U_p* V_t* = exp(j theta) I`, in `(-pi, pi]`.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseTable {
    pub theta: Vec<Vec<f64>>,
}

impl PhaseTable {
    /// True when every phase is zero modulo `2 pi` within `tol`.
    pub fn all_zero(&self, tol: f64) -> bool {
        self.theta
            .iter()
            .flatten()
            .all(|&t| (Complex64::from_polar(1.0, t) - c64(1.0)).norm() <= tol)
    }

    fn first_nonzero(&self, tol: f64) -> Option<(usize, usize, f64)> {
        for (p, row) in self.theta.iter().enumerate() {
            for (t, &theta) in row.iter().enumerate() {
                if (Complex64::from_polar(1.0, theta) - c64(1.0)).norm() > tol {
                    return Some((p, t, theta));
                }
            }
        }
        None
    }
}

/// Tests whether the two groups commute up to scalar phases.
pub fn commutation_phases(q_rep: &UnitaryRep, g_rep: &UnitaryRep) -> Result<PhaseTable> {
    if q_rep.dim() != g_rep.dim() {
        return Err(Error::DimensionMismatch {
            context: "commuting representations",
            expected: q_rep.dim(),
            found: g_rep.dim(),
        });
    }
    let tol = q_rep.tolerance().abs;
    let m = q_rep.dim();
    let eye = matops::identity(m);
    let mut theta = Vec::with_capacity(q_rep.order());
    for (p, u) in q_rep.matrices().iter().enumerate() {
        let mut row = Vec::with_capacity(g_rep.order());
        for (t, v) in g_rep.matrices().iter().enumerate() {
            let comm = u * v * u.adjoint() * v.adjoint();
            let phase = comm[(0, 0)].arg();
            let deviation = matops::max_abs_diff(&comm, &(&eye * Complex64::from_polar(1.0, phase)));
            if deviation > tol {
                return Err(Error::NonScalarCommutator { p, t, deviation });
            }
            row.push(phase);
        }
        theta.push(row);
    }
    Ok(PhaseTable { theta })
}

/// For commuting groups, the product group `{U_i V_k}` over `Q x G` generates
/// a GU frame from `seed`. Element `(i, k)` has index `i * r + k`.
pub fn combined_gu(q_rep: &UnitaryRep, g_rep: &UnitaryRep, seed: CVector) -> Result<GUFrame> {
    let tol = *q_rep.tolerance();
    let phases = commutation_phases(q_rep, g_rep)?;
    if let Some((p, t, theta)) = phases.first_nonzero(tol.abs) {
        return Err(Error::NonzeroPhase { p, t, theta });
    }
    let spec = q_rep.spec().product(g_rep.spec());
    let mut matrices = Vec::with_capacity(spec.order());
    for u in q_rep.matrices() {
        for v in g_rep.matrices() {
            matrices.push(u * v);
        }
    }
    let rep = UnitaryRep::with_tolerance(spec, matrices, tol)?;
    GUFrame::new(rep, seed)
}

/// Single-seed dual and canonical generators for a CGU frame with GU generators.
#[derive(Debug, Clone, Serialize)]
pub struct FastGenerators {
    #[serde(with = "crate::io::serde_cvec")]
    pub dual: CVector,
    #[serde(with = "crate::io::serde_cvec")]
    pub canonical: CVector,
    pub phases: PhaseTable,
}

/// When `Q` and `G` commute up to phase, `S` commutes with every `U_i V_k`, so
/// the dual and canonical vectors are `U_i V_k S^{-1} phi` and `U_i V_k S^{-1/2} phi`.
pub fn cgu_fast_generators(q_rep: &UnitaryRep, gu_gens: &GUGenerators) -> Result<FastGenerators> {
    let phases = commutation_phases(q_rep, &gu_gens.gen_rep)?;
    let c = CGUFrame::new(q_rep.clone(), gu_gens.generators())?;
    let s = c.frame_operator();
    let tol: &Tolerance = q_rep.tolerance();
    let dual = matops::pseudo_inverse(&s, tol)? * &gu_gens.seed;
    let canonical = matops::inv_sqrt(&s, tol)? * &gu_gens.seed;
    Ok(FastGenerators { dual, canonical, phases })
}

/// Frame with columns `U_i V_k x`, ordered `(i outer, k inner)`.
pub fn synthesize_product(q_rep: &UnitaryRep, g_rep: &UnitaryRep, x: &CVector) -> CMatrix {
    let mut cols = Vec::with_capacity(q_rep.order() * g_rep.order());
    for u in q_rep.matrices() {
        for v in g_rep.matrices() {
            cols.push(u * (v * x));
        }
    }
    CMatrix::from_columns(&cols)
}
