pub mod algebra;
pub mod charpoly;
pub mod corridor;
pub mod epn;
pub mod error;
pub mod hamiltonian;
pub mod reality;
pub mod spectra;

pub use dashu::integer::{IBig, UBig};
pub use dashu::rational::RBig;
pub use error::{Error, Result};
