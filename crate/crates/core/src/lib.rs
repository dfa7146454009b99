//! Pogorelov polytopes, regular 4-colourings of their facets, and the
//! characteristic functions these colourings induce.
//!
//! The crate decides membership in the Pogorelov class (simple 3-polytopes
//! other than the tetrahedron without 3- and 4-belts), enumerates regular
//! 4-colourings of facets, builds characteristic functions over ℤ and 𝔽₂
//! from them and decides their equivalence. Over a Pogorelov polytope two
//! small covers (or 6-dimensional quasitoric manifolds) given by colourings
//! are diffeomorphic exactly when the colourings are equivalent, so
//! [`invariants::classify`] counts those manifolds.
//!
//! ```
//! use pogorelov::polytope::Polytope;
//! use pogorelov::belts::is_pogorelov;
//! use pogorelov::colouring::count_colourings;
//!
//! let cube = Polytope::from_face_list("0 1 2 3\n4 7 6 5\n0 4 5 1\n1 5 6 2\n2 6 7 3\n3 7 4 0\n").unwrap();
//! assert!(!is_pogorelov(&cube).is_pogorelov);
//! assert_eq!(count_colourings(&cube), 96);
//! ```

pub mod belts;
pub mod charfun;
pub mod cli;
pub mod colouring;
pub mod invariants;
pub mod polytope;

pub use belts::{find_belts, fullerene_status, is_pogorelov, Belt, FullereneStatus, Obstruction, PogorelovVerdict};
pub use charfun::{CharFun, CharacteristicPair, Ring, Transform};
pub use colouring::{ClassMode, ColourPermutation, Colouring, EquivalenceMode};
pub use invariants::{classify, Census};
pub use polytope::{CanonicalCode, FacetBijection, Format, Polytope, PolytopeError};
