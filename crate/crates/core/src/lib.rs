//! Exact Khovanov, Bar-Natan and Lee cohomology of oriented link diagrams,
//! together with movie evaluation of closed surfaces in 4-space.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`]: polynomials in `t` and the rank-two Frobenius algebra family.
//! * [`diagram`]: PD-coded diagrams, resolutions and elementary string interactions.
//! * [`complex`]: the cube of modules and its signed differential.
//! * [`homology`]: Smith normal form, bigraded cohomology and a Jones oracle.
//! * [`cobordism`]: chain maps for movie events, and the surface invariants.

pub mod algebra;
pub mod cobordism;
pub mod complex;
pub mod corpus;
pub mod diagram;
mod error;
pub mod homology;

pub use algebra::{Label, TPoly, Theory};
pub use cobordism::{ChainMap, Movie, MovieEnd, Report};
pub use complex::{CochainElement, CubeComplex, Generator};
pub use diagram::{ArcId, Crossing, Esi, LinkDiagram, ResolvedDiagram, Sign, Vertex};
pub use error::{Error, Result};
pub use homology::{HomologyGroup, IntegerMatrix, LaurentPoly};
