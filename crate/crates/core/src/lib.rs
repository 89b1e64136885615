pub mod chern;
pub mod chow;
pub mod error;
pub mod instanton;
pub mod ledger;
pub mod p2;
pub mod rational;
pub mod xcoh;

pub use error::{Error, Result};
