pub mod error;
pub mod exactla;
pub mod families;
pub mod graph;
pub mod pvt;
pub mod report;
pub mod reproduce;
pub mod scheme;
pub mod spectra;
pub mod terwilliger;
pub mod tmodules;

pub use error::{Error, Result};
pub use graph::{load_graph, save_graph, DistanceData, Graph};
