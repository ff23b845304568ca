//! Exact arithmetic in F_p^d: elements, subspaces, flats and linear maps.

mod field;
mod map;
mod prime;
mod spec;
mod subspace;

pub use field::{Fp, Matrix};
pub use map::{apply_invertible_map, apply_map, general_linear_group, LinearMap};
pub use prime::is_prime;
pub use spec::{norm, GroupElement, GroupSpec, DEFAULT_UNIVERSE_CAP};
pub(crate) use spec::add_digits;
pub use subspace::{enumerate_hyperplanes, hyperplane_normals, is_affine_basis, project, AffineFlat, Subspace};
