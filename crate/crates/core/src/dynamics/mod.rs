//! Markovian (Davies) dynamics of the three qubits and its steady state.
//!
//! The Lamb-shift Hamiltonian is not included. For a nondegenerate Bohr
//! spectrum it is diagonal in the energy basis and leaves the stationary
//! populations and the heat currents unchanged.

mod liouvillian;
mod ness;
mod state;

pub(crate) use liouvillian::{apply_dissipator, Basis};
pub use liouvillian::{build_liouvillian, dissipator, Liouvillian};
pub use ness::{propagate, solve_ness, SteadyState};
pub use state::{trace_distance, DensityMatrix};
