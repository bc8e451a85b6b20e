//! JSON file formats.
//!
//! Complex scalars are `[re, im]` pairs and matrices are lists of columns, so
//! a frame file lists its frame vectors in order. Floats are written in
//! shortest round-trip form, so every emitted file re-parses to identical bits.

use serde::{Deserialize, Serialize};

use crate::abelian::GroupSpec;
use crate::cgu::{CGUFrame, GUGenerators};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::gu::{GUFrame, UnitaryRep};
use crate::matops::{CMatrix, CVector};
use crate::tolerance::Tolerance;
use num_complex::Complex64;

pub type ComplexPair = [f64; 2];

pub fn pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

pub fn unpair(p: ComplexPair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn vector_to_pairs(v: &CVector) -> Vec<ComplexPair> {
    v.iter().copied().map(pair).collect()
}

pub fn pairs_to_vector(v: &[ComplexPair]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().copied().map(unpair))
}

pub fn matrix_to_columns(a: &CMatrix) -> Vec<Vec<ComplexPair>> {
    (0..a.ncols()).map(|j| a.column(j).iter().copied().map(pair).collect()).collect()
}

pub fn columns_to_matrix(cols: &[Vec<ComplexPair>]) -> Result<CMatrix> {
    let n = cols.len();
    if n == 0 {
        return Err(Error::InvalidParameter("matrix has no columns".into()));
    }
    let m = cols[0].len();
    if let Some(bad) = cols.iter().find(|c| c.len() != m) {
        return Err(Error::DimensionMismatch {
            context: "matrix column length",
            expected: m,
            found: bad.len(),
        });
    }
    Ok(CMatrix::from_fn(m, n, |r, c| unpair(cols[c][r])))
}

/// `#[serde(with)]` adapter for a complex vector as a list of pairs.
pub mod serde_cvec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &CVector, s: S) -> std::result::Result<S::Ok, S::Error> {
        vector_to_pairs(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CVector, D::Error> {
        let pairs = Vec::<ComplexPair>::deserialize(d)?;
        Ok(pairs_to_vector(&pairs))
    }
}

/// `#[serde(with)]` adapter for a list of complex vectors.
pub mod serde_cvec_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[CVector], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(vector_to_pairs).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<CVector>, D::Error> {
        let lists = Vec::<Vec<ComplexPair>>::deserialize(d)?;
        Ok(lists.iter().map(|p| pairs_to_vector(p)).collect())
    }
}

/// `{"m": .., "n": .., "columns": [[[re, im], ..], ..]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    pub m: usize,
    pub n: usize,
    pub columns: Vec<Vec<ComplexPair>>,
}

impl FrameJson {
    pub fn from_frame(frame: &Frame) -> Self {
        Self::from_matrix(frame.matrix())
    }

    /// Serializes any `m x n` matrix of columns, frame or not.
    pub fn from_matrix(a: &CMatrix) -> Self {
        FrameJson {
            m: a.nrows(),
            n: a.ncols(),
            columns: matrix_to_columns(a),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.columns.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "frame JSON column count",
                expected: self.n,
                found: self.columns.len(),
            });
        }
        let a = columns_to_matrix(&self.columns)?;
        if a.nrows() != self.m {
            return Err(Error::DimensionMismatch {
                context: "frame JSON vector length",
                expected: self.m,
                found: a.nrows(),
            });
        }
        Ok(a)
    }

    pub fn to_frame(&self, tol: Tolerance) -> Result<Frame> {
        Frame::with_tolerance(self.to_matrix()?, tol)
    }
}

/// `{"spec": [..], "matrices": [matrix, ..], "generator": [..]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GUFrameJson {
    pub spec: GroupSpec,
    pub matrices: Vec<Vec<Vec<ComplexPair>>>,
    pub generator: Vec<ComplexPair>,
}

fn rep_from_json(spec: &GroupSpec, matrices: &[Vec<Vec<ComplexPair>>], tol: Tolerance) -> Result<UnitaryRep> {
    let mats = matrices
        .iter()
        .map(|m| columns_to_matrix(m))
        .collect::<Result<Vec<_>>>()?;
    if mats.is_empty() {
        return Err(Error::DimensionMismatch {
            context: "representation matrices",
            expected: spec.order(),
            found: 0,
        });
    }
    UnitaryRep::with_tolerance(spec.clone(), mats, tol)
}

fn rep_to_json(rep: &UnitaryRep) -> Vec<Vec<Vec<ComplexPair>>> {
    rep.matrices().iter().map(matrix_to_columns).collect()
}

impl GUFrameJson {
    pub fn from_gu(g: &GUFrame) -> Self {
        GUFrameJson {
            spec: g.spec().clone(),
            matrices: rep_to_json(g.rep()),
            generator: vector_to_pairs(g.generator()),
        }
    }

    pub fn to_gu(&self, tol: Tolerance) -> Result<GUFrame> {
        let rep = rep_from_json(&self.spec, &self.matrices, tol)?;
        GUFrame::new(rep, pairs_to_vector(&self.generator))
    }
}

/// GU frame JSON plus `"generators"`, or a seed `"generator"` together with
/// `"gen_spec"`/`"gen_matrices"` describing GU generators `V_k phi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CGUFrameJson {
    pub spec: GroupSpec,
    pub matrices: Vec<Vec<Vec<ComplexPair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<ComplexPair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<ComplexPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_spec: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_matrices: Option<Vec<Vec<Vec<ComplexPair>>>>,
}

/// Parsed CGU input: the frame plus its GU generator structure when given.
#[derive(Debug, Clone)]
pub struct CGUInput {
    pub frame: CGUFrame,
    pub gu_generators: Option<GUGenerators>,
}

impl CGUFrameJson {
    pub fn from_cgu(c: &CGUFrame) -> Self {
        CGUFrameJson {
            spec: c.rep().spec().clone(),
            matrices: rep_to_json(c.rep()),
            generators: Some(c.generators().iter().map(vector_to_pairs).collect()),
            generator: None,
            gen_spec: None,
            gen_matrices: None,
        }
    }

    pub fn to_cgu(&self, tol: Tolerance) -> Result<CGUInput> {
        let rep = rep_from_json(&self.spec, &self.matrices, tol)?;
        let gu_generators = match (&self.gen_spec, &self.gen_matrices, &self.generator) {
            (Some(gs), Some(gm), Some(seed)) => {
                let gen_rep = rep_from_json(gs, gm, tol)?;
                Some(GUGenerators::new(gen_rep, pairs_to_vector(seed))?)
            }
            (None, None, _) => None,
            _ => {
                return Err(Error::InvalidParameter(
                    "GU generators need all of \"generator\", \"gen_spec\" and \"gen_matrices\"".into(),
                ))
            }
        };
        let generators = match (&self.generators, &gu_generators) {
            (Some(list), _) => list.iter().map(|p| pairs_to_vector(p)).collect(),
            (None, Some(g)) => g.generators(),
            (None, None) => {
                return Err(Error::InvalidParameter(
                    "CGU frame needs \"generators\" or a seed with \"gen_spec\"/\"gen_matrices\"".into(),
                ))
            }
        };
        Ok(CGUInput {
            frame: CGUFrame::new(rep, generators)?,
            gu_generators,
        })
    }
}
