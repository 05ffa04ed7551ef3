//! Finitely generated free chain-complex algebra over the integers.

pub mod abelian;
pub mod complex;
pub mod construct;
pub mod exact;
pub mod homology;
pub mod map;
pub mod matrix;
pub mod snf;
pub mod uct;

pub use abelian::{AbelianGroup, GroupHom};
pub use complex::{ChainComplex, Grading};
pub use construct::{cone, cone_dual_iso, dual_hom_z, dual_map, shift, Cone};
pub use exact::{long_exact_sequence, LongExactSequence};
pub use homology::{all_homology, homology, HomologyGroup};
pub use map::{
    induced_map_on_homology, is_quasi_isomorphism, ChainMap, InducedMap, QuasiIsoReport,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, solve_integer, SmithDecomposition};
pub use uct::{uct_check, UctReport};
