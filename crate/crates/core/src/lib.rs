//! Thompson-group elements as marked tree pairs, the signed graphs and link
//! diagrams they induce, link-invariant functions on the groups, and
//! positive-definiteness audits for those functions.

pub mod bicycle;
pub mod bracket;
pub mod diagram;
pub mod dsu;
pub mod element;
pub mod error;
pub mod gamma;
pub mod plmap;
pub mod tree;

pub mod enumeration;
pub mod fox;
pub mod laurent;
pub mod tutte;
pub mod positivity;
pub mod vertex;

pub use bracket::{bracket_function, jones_function, NormalizedBracket};
pub use diagram::{c_value, element_diagram, Diagram, SemiDiagram};
pub use laurent::LaurentPoly;
pub use element::{GroupElement, MarkedPair};
pub use error::{Error, Result};
pub use gamma::{gamma_graph, Sign, SignedEdge, SignedGraph};
pub use plmap::{as_pl_map, PLMap};
pub use tree::BinaryTree;
