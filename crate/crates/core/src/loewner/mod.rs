//! Driving functions and the Loewner flows of chordal, radial, dipolar and
//! annular SLE.

pub mod annular;
pub mod coeffs;
pub mod driver;
pub(crate) mod maps;
pub mod point;
pub mod radius;
pub mod rk45;
pub mod trace;

pub use annular::{annular_boundary_motion, Boundary};
pub use coeffs::{coefficient_path, CoefficientPath};
pub use driver::{constant_driver, driver_from_rng, sample_driver, Driver};
pub use point::{evolve_point, Geometry, PointEvolution};
pub use radius::{conformal_radius_process, RadiusSample};
pub use trace::{min_distance_to_set, trace, trace_every, BoundarySet, Trace};
