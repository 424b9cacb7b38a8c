//! Exact-arithmetic toolkit for singular plane curves and their counts.
//!
//! * [`germ`]: local invariants of isolated plane curve germs.
//! * [`hyperelliptic`]: singular fibers of `y^2 = p(x)` and the cusp's versal family.
//! * [`strata`]: linear-system dimensions and expected dimensions of nodal/cuspidal strata.
//! * [`defmap`]: rank model of global-to-local deformation maps.
//! * [`tropical`]: tropical curves, Severi degrees by lattice paths and floor diagrams.

pub mod defmap;
pub mod exec;
pub mod germ;
pub mod hyperelliptic;
pub mod poly;
pub mod rational;
pub mod strata;
pub mod tropical;

pub use poly::{BivariatePoly, UniPoly};
pub use rational::Q;
