pub mod bench;
pub mod bitset;
pub mod cli;
pub mod counting;
pub mod endo;
pub mod error;
pub mod glb;
pub mod latgen;
pub mod lattice;
pub mod morphology;

pub use endo::Endofunction;
pub use error::{Error, Result};
pub use glb::{Algorithm, MeetResult};
pub use lattice::{ElementId, Lattice, LatticeSpec};
