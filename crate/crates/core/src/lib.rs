pub mod characters;
pub mod different;
pub mod error;
pub mod filtration;
pub mod gf2;
pub mod global;
pub mod json;
pub mod oracle;
pub mod padic;
pub mod verdict;

pub use error::{Error, Result};
