//! Exchange matrices, Y-seeds of 2-complete acyclic quivers, the universal
//! Coxeter group, and arcs on a punctured disc.

pub mod arcs;
pub mod coxeter;
pub mod dot;
pub mod embed;
pub mod error;
pub mod explore;
pub mod json;
pub mod quiver;
pub mod roots;
pub mod search;

pub use error::{Error, Result};
