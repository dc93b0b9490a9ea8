//! Exact integer linear algebra, exact couples, and the spectral sequence
//! of a cofiltration.

pub mod complex;
pub mod couple;
pub mod group;
pub mod presets;
pub mod report;
pub mod snf;
pub mod zmat;

pub use complex::{random_complex, FilteredComplex, Generator};
pub use couple::{higher_boundary_map, pages, CofiltrationData, CofiltrationSpec, ExactCouple, HigherBoundaryMap};
pub use group::{CanonicalForm, FGAbelianGroup, GroupMap, Subquotient};
pub use snf::{smith_normal_form, Lattice, Smith};
pub use zmat::ZMat;
