pub mod chromatic;
pub mod enumerate;
pub mod families;
pub mod formats;
pub mod gluing;
pub mod graph;
pub mod iso;
pub mod products;
pub mod refine;
mod search;
pub mod squareness;
pub mod verify;

pub use graph::{Graph, GraphError, VertexPermutation, VertexSet};
pub use search::SearchCounters;
