pub mod algebra;
pub mod corpus;
pub mod error;
pub mod implicit;
pub mod isometry;
pub mod mesh;
pub mod phi;
pub mod surface;

pub use error::{Error, Result};
