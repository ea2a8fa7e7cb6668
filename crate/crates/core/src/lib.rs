//! Frieze patterns of type (k, n) built from Plücker coordinates of the
//! Grassmannian, with the combinatorics of weakly separated collections.

pub mod construct;
pub mod error;
pub mod frieze;
pub mod io;
pub mod plucker;
pub mod rat;
pub mod separation;
pub mod subset;

pub use error::{FriezeError, Result};
pub use plucker::{canonicalize, gp_relations, minors, three_term_relations, validate_assignment, PluckerIndex};
pub use rat::Rat;
pub use separation::{apply_square_move, enumerate_clusters, interval_subsets, is_weakly_separated, mutation_distance_path, WsCollection};
pub use subset::{Shape, Subset};
