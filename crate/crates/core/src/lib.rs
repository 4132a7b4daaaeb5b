pub mod bridge;
pub mod cli;
pub mod cover;
pub mod credit;
pub mod error;
pub mod generate;
pub mod glue;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod reduce;

pub use error::{Error, Result};
