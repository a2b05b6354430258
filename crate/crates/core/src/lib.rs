//! Projective measurement and detection of irreducible representations of
//! the symmetric group through its centre.

pub mod bruteforce;
pub mod centre;
pub mod characters;
pub mod classical;
pub mod combinat;
pub mod detection;
pub mod error;
pub mod exec;
pub mod holographic;
pub mod kronlr;
pub mod partition;
pub mod perm;
pub mod qpe;

pub use error::{Error, Result};
pub use exec::Exec;
pub use partition::Partition;
