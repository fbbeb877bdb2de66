pub mod algebra;
pub mod boolfn;
pub mod decompose;
pub mod error;
pub mod format;
pub mod endo;
pub mod module;
pub mod orbit;
pub mod perm;
pub mod wfa;

pub use error::{Error, Result};
