//! Homology of finite digraphs viewed as closure spaces.
//!
//! A finite digraph with all loops added is an Alexandroff closure space,
//! and its singular homology agrees with the simplicial homology of its
//! directed Vietoris-Rips complex. This crate builds that complex, computes
//! its homology (integer, field and relative), and evaluates the explicit
//! comparison map from the realization back to the digraph.

pub mod complex;
pub mod digraph;
pub mod error;
pub mod fx;
pub mod generators;
pub mod homology;

pub use complex::{build_complex, check_cone, check_full_subcomplex, is_simplex, map_complex, Simplex, SimplicialComplex};
pub use digraph::{Digraph, VertexSet};
pub use error::{Error, Result};
pub use homology::field::Coefficients;
pub use homology::{homology_field, homology_integer, relative_homology, Homology, HomologyGroup};
