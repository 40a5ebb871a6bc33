//! Exact arithmetic behind independence certificates for the satellites
//! `D_n(T_{p,q})` in the smooth concordance group.
//!
//! * [`exactmath`]: rationals, slopes, integer matrices, Smith normal form,
//!   definiteness of symmetric forms.
//! * [`fs_invariant`]: the Fintushel–Stern invariant `R(a₁, a₂, a₃)` with
//!   certified integrality.
//! * [`cs_invariants`]: Chern–Simons minima, Pontryagin numbers, reducible
//!   counts and the compactness predicate.
//! * [`covers`]: double branched covers of the satellites, gluing maps and
//!   surgery slopes.
//! * [`cobordisms`]: the definite cobordisms `Z`, `R`, `P`.
//! * [`obstruction`]: Furuta chains, the assembled manifold `X`, certificates
//!   and family generation.

pub mod cobordisms;
pub mod covers;
pub mod cs_invariants;
pub mod exactmath;
pub mod fs_invariant;
pub mod obstruction;
pub mod params;
pub mod serde_str;

use thiserror::Error;

pub use params::{FamilyTriple, InvalidParams, SatelliteParams};

/// Any error raised by the library, tagged with its module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] exactmath::MatrixError),
    #[error(transparent)]
    Slope(#[from] exactmath::SlopeError),
    #[error(transparent)]
    Fs(#[from] fs_invariant::FsError),
    #[error(transparent)]
    Cs(#[from] cs_invariants::CsError),
    #[error(transparent)]
    Cover(#[from] covers::CoverError),
    #[error(transparent)]
    Cobordism(#[from] cobordisms::CobordismError),
    #[error(transparent)]
    Obstruction(#[from] obstruction::ObstructionError),
}

impl Error {
    pub fn module(&self) -> &'static str {
        match self {
            Error::Matrix(_) | Error::Slope(_) => "exactmath",
            Error::Fs(_) => "fs_invariant",
            Error::Cs(_) => "cs_invariants",
            Error::Cover(_) => "covers",
            Error::Cobordism(_) => "cobordisms",
            Error::Obstruction(_) => "obstruction",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Error::Matrix(e) => match e {
                exactmath::MatrixError::Shape { .. } => "Shape",
                exactmath::MatrixError::Ragged => "Ragged",
                exactmath::MatrixError::NotSymmetric(..) => "NotSymmetric",
                exactmath::MatrixError::NotSquare(..) => "NotSquare",
                exactmath::MatrixError::Parse(_) => "Parse",
            },
            Error::Slope(e) => match e {
                exactmath::SlopeError::ZeroSlope => "ZeroSlope",
                exactmath::SlopeError::Parse(_) => "Parse",
            },
            Error::Fs(e) => e.name(),
            Error::Cs(e) => e.name(),
            Error::Cover(e) => e.name(),
            Error::Cobordism(e) => e.name(),
            Error::Obstruction(e) => e.name(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
