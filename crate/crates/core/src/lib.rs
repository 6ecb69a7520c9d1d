//! List coloring of graphs of girth at least five embedded on surfaces.

pub mod choosability;
pub mod colorer;
pub mod cylinder;
pub mod dp;
pub mod embedding;
pub mod error;
pub mod flow;
pub mod generate;
pub mod lists;
pub mod oracle;
pub mod params;
pub mod profile;
pub mod solver;
pub mod treedec;
pub mod topology;

pub use error::{Error, Result};
