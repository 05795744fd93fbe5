//! Exact construction of multi-indexed orthogonal polynomials for the Meixner,
//! little q-Laguerre, little q-Jacobi, Racah, q-Racah, Wilson and Askey-Wilson
//! families, with cross-checks between the determinant representations.

pub mod det;
pub mod error;
pub mod eta;
pub mod families;
pub mod idqm;
pub mod laurent;
pub mod lattice;
pub mod method;
pub mod params;
pub mod presets;
pub mod query;
pub mod rdqm;
pub mod scalar;
pub mod shift;
pub mod special;
pub mod verify;
pub mod weight;

pub use error::{MiopError, Result};
pub use eta::{eta_expand, Eta, EtaPoly};
pub use families::{make_family, FamilyId, FamilySpec, Params, VType};
pub use lattice::{CoordKind, CoordModel, LatticeFun, LatticeRat};
pub use scalar::{GaussScalar, Rational, Scalar};
