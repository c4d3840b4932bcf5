pub mod error;
pub mod harness;
pub mod hyperexp;
pub mod numkernel;
pub mod pade;
pub mod processes;
pub mod quadrature;
pub mod transforms;

pub use error::{Error, Result};
pub use numkernel::{BigReal, Precision};
