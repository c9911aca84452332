//! Sub-Lorentzian geometry of the Heisenberg group.

pub mod curvature;
pub mod error;
pub mod geodesic;
pub mod group;
pub mod iso;
pub mod mc;
pub mod measure;
pub mod special;
pub mod sr;

pub use curvature::*;
pub use error::{Error, Result};
pub use geodesic::*;
pub use group::*;
pub use iso::*;
pub use measure::*;
pub use sr::*;
