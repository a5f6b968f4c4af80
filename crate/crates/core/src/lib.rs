pub mod ckclassical;
pub mod coeffring;
pub mod error;
pub mod export;
pub mod freealg;
pub mod matrix;
pub mod qdual;
pub mod qgroup;
pub mod rmatrix;
pub mod suites;

pub use error::{Error, Result};
