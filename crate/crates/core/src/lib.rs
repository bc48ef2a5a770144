//! Exact characteristic-number calculus for 4-manifolds built from complex
//! surfaces, Seiberg-Witten curvature bounds, Einstein-metric obstructions and
//! a search for homeomorphic pairs separated by those obstructions.

pub mod checklist;
pub mod error;
pub mod functionals;
pub mod homeo;
pub mod lattice;
pub mod obstructions;
pub mod rational;
pub mod surface;

pub use error::{Error, Result};
pub use rational::{Rat, RatInterval, RealValue};
pub use surface::{CharNumbers, ComplexTag, Family, KodairaDim, SpinStatus, SurfaceSpec};
