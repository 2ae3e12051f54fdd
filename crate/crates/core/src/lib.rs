//! Finite rings with identity and the geometry of pairs over them: unimodular,
//! admissible and free pairs, cyclic submodules of `R²`, outliers, and the
//! orbits of the right `GL₂(R)` action.
//!
//! ```
//! use ringlab::catalog::example31;
//! use ringlab::pair::{classify_all_pairs, AdmissibilityMode};
//!
//! let ring = example31(2).unwrap();
//! let summary = classify_all_pairs(&ring, AdmissibilityMode::Auto).summary;
//! assert_eq!((summary.outliers, summary.free_outliers), (30, 24));
//! ```

pub mod budget;
pub mod catalog;
pub mod checks;
pub mod construct;
pub mod error;
pub mod ideal;
pub mod orbit;
pub mod pair;
pub mod properties;
pub mod ring;
pub mod spec;
pub mod verify;

pub use budget::{Budget, VerifyError};
pub use error::{Error, Law, Result};
pub use ideal::RightIdealSet;
pub use orbit::{Mat2, OrbitMode, OrbitTable};
pub use pair::{AdmissibilityMode, Pair, PairSet, SubmodulePoints};
pub use ring::{direct_product, modint, Elem, FiniteRing, Origin};
pub use spec::{build_ring, parse_ring_spec, RingSpec};
