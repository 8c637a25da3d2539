//! Happy colorings of partially precolored graphs: exact oracles,
//! parameterized solvers, kernels, cut reductions and hardness gadgets.

pub mod cluster;
pub mod cwexpr;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod matching;
pub mod multiway;
pub mod oracles;
pub mod par;
pub mod sample;
pub mod source;

pub use error::{Error, Result};
pub use graph::{
    happy_edge_count, happy_vertices, induced_square, potentially_happy_sets, Color, ColoredGraph,
    Coloring, Graph, HappySets, Vertex,
};
pub use par::Execution;
