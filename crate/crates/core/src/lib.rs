//! Exact computational topology at desk scale: integer homology of finite
//! simplicial objects by Smith normal form, cut-and-paste (SK/SKK)
//! invariants and equivalence deciders for triangulated closed manifolds,
//! K1(Z)-valued classes of simplicial automorphisms, mapping tori, edgewise
//! subdivision, and K0 presentations of finite squares categories.
//!
//! Everything is exact: all linear algebra runs over arbitrary-precision
//! integers, and every value is immutable once constructed, so the whole
//! API is safe to share across threads.

pub mod abgroup;
pub mod category;
pub mod chain;
pub mod error;
pub mod fixtures;
pub mod forms;
pub mod homology;
pub mod manifold;
pub mod matrix;
pub mod reduce;
pub mod simplicial;
pub mod skgroups;
pub mod squares;
pub mod snf;
pub mod triangulation;

pub use abgroup::FgAbGroup;
pub use chain::{ChainComplex, ChainMap};
pub use error::{Error, Result};
pub use homology::{free_determinant, homology, induced_map, HomologyMap, HomologyModel};
pub use matrix::IntMatrix;
pub use snf::smith_normal_form;
pub use triangulation::Triangulation;
