//! The (k,n)-frieze model: value storage and validation, the higher Auslander
//! quiver and its bijection with k-subsets, underlying graphs, cross-sectional
//! triangles with generalized diamonds, and classical k = 2 arrays.

mod coxeter;
mod cross_section;
mod graph;
mod pattern;
mod quiver;

pub use coxeter::CoxeterArray;
pub use cross_section::{check_diamonds, cross_section, diamonds, CrossSection, DiamondViolation, GeneralizedDiamond};
pub use graph::{fundamental_domain_graph, underlying_graph_window, DomainEdge, LayeredGraph};
pub use pattern::{validate_frieze, validate_frieze_with, Checks, FriezePattern, ValidationReport};
pub use quiver::{build_quiver, phi, phi_inverse, quiver_vector, Arrow, AuslanderQuiver};
