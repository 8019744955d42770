//! Brushing directed graphs.
//!
//! A brush configuration places tokens on vertices; vertices then fire one
//! at a time, each sending at least one brush down every out-arc. The
//! brushing number `B(G)` is the fewest brushes with which some
//! configuration and firing order cleans every vertex and arc.

pub mod bounds;
pub mod engine;
pub mod error;
pub mod floworder;
pub mod graph;
pub mod solver;
pub mod strategies;
pub mod verify;

pub use engine::{run, ArcFlow, BrushPlan, CleaningTrace};
pub use error::{BrushError, Result};
pub use graph::{Digraph, FamilySpec};
