//! Exact computations with the Goldman Lie algebra on surfaces: loop
//! brackets, the based action on group rings, Dehn twists on fatgraph
//! models, and the orientation double cover of a non-orientable surface.

pub mod cover;
pub mod error;
pub mod magnus;
pub mod par;
pub mod props;
pub mod ribbon;
pub mod twist;
pub mod word;

pub use cover::{forgetful_c, CoverPresentation, Parity};
pub use error::{Error, Result};
pub use magnus::{Monomial, TruncatedSeries};
pub use par::Execution;
pub use ribbon::{Endpoints, IntersectionDatum, RibbonSurface};
pub use word::{Coeff, Combination, CyclicWord, Generator, GroupRingElement, LoopSum, Word};
pub use twist::{Mutation, TwistProblem, TwistReport};
