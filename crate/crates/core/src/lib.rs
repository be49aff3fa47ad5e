pub mod curvature;
pub mod error;
pub mod exact;
pub mod forms;
pub mod heis;
pub mod lie;
pub mod matrix_file;
pub mod oracle;
pub mod sampling;

pub use error::{Error, Result};
