//! NAE-3SAT to unit-distance lattice graphs: formulas, the logic engine they
//! compile to, the square-gadget reduction, and a recognizer for graphs that
//! embed in the integer lattice with unit edges.

pub mod embedder;
pub mod engine;
pub mod formula;
pub mod io;
pub mod lattice;
pub mod reduction;
pub mod render;
