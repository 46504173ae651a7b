pub mod error;
pub mod exec;
pub mod finite_fields;
pub mod group_laws;
pub mod lang;
pub mod limits;
pub mod points;

pub use error::{Error, Result};
pub use exec::Execution;
pub use limits::Limits;
pub mod asai;
pub mod easiness;
