//! Computable synthetic Lorentzian geometry.
//!
//! The crate represents finite Lorentzian spaces, 1+1 Minkowski and strip
//! models, and conical Minkowski spacetimes over triangulated hyperbolic
//! domains. On top of those it evaluates the symmetrized sup distance `d_J`
//! between Cauchy sets, validates Cauchy sets of the cone through the
//! log-Lipschitz graph criterion, builds discrete Cauchy time functions and
//! checks completeness and compactness conditions on sampled data.
//!
//! Module map:
//!
//! * [`causal`]: finite spaces, extended time separations, boundaries, the
//!   maximal causal relation and chain lengths.
//! * [`model`]: Minkowski, strip and cone backends behind [`model::LorentzianModel`].
//! * [`cauchy`]: radius graphs over a mesh and their validators.
//! * [`dj`]: `d_J` on points and sets, axiom checks, limits and nets.
//! * [`curves`]: discrete causal curves, crossings, inextendibility and
//!   completeness conditions.
//! * [`timefn`]: the `ln(f/g)` Cauchy time function on finite spaces.

pub mod causal;
pub mod cauchy;
pub mod curves;
pub mod dj;
pub mod error;
pub mod extrapolate;
pub mod io;
pub mod model;
pub mod report;
pub mod timefn;

mod tolerance;

pub use error::{Error, ErrorClass, Result};
pub use tolerance::Tolerance;
