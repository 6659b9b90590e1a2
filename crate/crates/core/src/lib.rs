//! Canonical models, rational points, Heegner labels and line/plane
//! incidences for Atkin-Lehner quotients X0+(N) of prime level.

pub mod arith;
pub mod error;
pub mod field;
pub mod geometry;
pub mod golden;
pub mod heegner;
pub mod incidence;
pub mod ingest;
pub mod linalg;
pub mod model;
pub mod numeric;
pub mod points;
pub mod poly;
pub mod qseries;
mod serde_int;
pub mod transform;

pub use arith::{class_number, enumerate_levels, genus_plus, sturm_bound, Discriminant, LevelProfile};
pub use error::{Error, Result};
pub use geometry::{Hyperplane, IntersectionDivisor, LinearSubspace};
pub use heegner::{label_points, LabelConfig, LabelTable, PointLabel};
pub use incidence::{collinear_subsets, configuration, rational_lines, rational_planes, IncidenceReport};
pub use ingest::{fixture_path, load_basis, BasisRecord};
pub use model::{build_model, verify_model, CanonicalModel, HomogeneousPoly};
pub use points::{search, ProjPoint};
pub use qseries::QSeries;
