//! Geometrically uniform (GU) and compound GU frames over finite abelian groups.
//!
//! A GU frame is the orbit `{U_q phi}` of a single generator under a unitary
//! representation of a finite abelian group; its Gram matrix is diagonalized
//! by the group Fourier transform, which gives closed forms for the dual and
//! canonical tight frames, pruning spectra and least-squares constructions.

pub mod abelian;
pub mod cgu;
pub mod distance;
pub mod error;
pub mod frame;
pub mod gu;
pub mod io;
pub mod lsguf;
pub mod matops;
pub mod pruning;
pub mod random;
pub mod tolerance;

pub use abelian::{GroupElement, GroupSpec};
pub use cgu::{BoundsEnvelope, CGUFrame, FastGenerators, GUGenerators, PhaseTable};
pub use distance::{DistanceSearch, FixedPointCheck};
pub use error::{Error, ErrorKind, Result};
pub use frame::Frame;
pub use gu::{GUFrame, SpectralReport, UnitaryRep};
pub use lsguf::TargetGram;
pub use matops::{CMatrix, CVector};
pub use tolerance::Tolerance;
