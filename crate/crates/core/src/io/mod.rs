//! JSON documents, bundled fixtures and text/TikZ rendering.

mod documents;
pub mod fixtures;
mod render;

pub use documents::{
    ClusterDocument, CoxeterArrayDocument, CrossSectionDocument, Document, Entry, FriezeDocument,
    MatrixDocument, SlkDocument, FORMAT_VERSION,
};
pub use render::{render_cross_section, render_text, render_tikz};
