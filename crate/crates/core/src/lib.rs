//! Attractors of one-dimensional map families suspended into surface
//! dynamics.
//!
//! The crate turns a family of interval or circle endomorphisms (tent,
//! quadratic, Arnold standard) into injective self-maps of a disk or annulus
//! whose attractors carry the backward-orbit dynamics of the family, and
//! provides the measurement kit around that construction: truncated
//! backward-orbit threads with their product metric, attractor point clouds
//! and box covers, Hausdorff distances, periodic-point matching, rotation
//! numbers, rotation intervals, and Arnold-tongue rasters.

pub mod families;
pub mod geometry;
pub mod invlim;
mod numeric;
pub mod rotation;
pub mod suspension;

pub use families::{FamilyParam, IntervalBox, Symbol, SymbolWord};
pub use geometry::{AmbientPoint, BoundarySide, CollarCoord, ManifoldModel};
pub use invlim::{FatPoint, PreimagePolicy, Thread};
pub use rotation::{EnvelopeLift, RotationInterval, TongueRaster};
pub use suspension::{AttractorCloud, BoxCover, CarrierMap, CloudSettings, FattenedMap};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{name} = {value} outside {allowed}")]
    Domain {
        name: &'static str,
        value: f64,
        allowed: &'static str,
    },
    #[error("operation needs the {required} family")]
    WrongFamily { required: &'static str },
    #[error("operation needs the {required} model")]
    WrongModel { required: &'static str },
    #[error("thread lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("thread breaks backward consistency at index {index} (gap {gap:e})")]
    InvalidThread { index: usize, gap: f64 },
    #[error("stage {stage} needs a thread longer than {len}")]
    StageBeyondThread { stage: usize, len: usize },
    #[error("no preimage of {value} inside the stabilized interval")]
    NoPreimage { value: f64 },
    #[error("period depth {n} exceeds the branch enumeration cap {max}")]
    BranchCap { n: usize, max: usize },
    #[error("lift fails the sampled monotonicity/degree-one check near x = {at}")]
    NonMonotone { at: f64 },
    #[error("resolution {resolution} exceeds the cap {max}")]
    ResolutionCap { resolution: usize, max: usize },
    #[error("empty point set")]
    EmptySet,
    #[error("orbit escaped (seed {seed})")]
    OrbitEscape { seed: usize },
    #[error("{0}")]
    Unsupported(&'static str),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, allowed: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            allowed,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
