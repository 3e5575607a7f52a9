//! Entanglement bookkeeping for a qubit pair `S'–S` in which `S` interacts
//! with a third qubit `E` through an arbitrary two-outcome channel.
//!
//! Everything is expressed through the channel's Kraus pair `(K₀, K₁)`:
//!
//! - [`tangle`]: the 3-tangle by three independent routes
//! - [`bipartite`]: every bipartition tangle and pairwise squared concurrence
//!   in closed form, plus the dependence on the initial entanglement
//! - [`classify`]: GHZ / W / biseparable family from the Kraus pair alone
//! - [`fourqubit`]: the two-channel `S'SEE'` extension
//! - [`oracle`]: brute-force state-vector ground truth used to check all of
//!   the above
//!
//! Qubit order is fixed everywhere: `S'` is the most significant bit, then
//! `S`, then `E` (then `E'` for four qubits).

pub mod bipartite;
pub mod channels;
pub mod classify;
pub mod cli;
mod error;
pub mod fourqubit;
pub mod mat2;
pub mod oracle;
pub mod tangle;

pub use bipartite::{EntanglementReport, InitialReduced, Tangles};
pub use channels::{CMat4, KrausPair, TwoQubitPure};
pub use classify::{Classification, DecisionTier, FamilyLabel};
pub use error::{Error, Result};
pub use mat2::CMat2;
pub use num_complex::Complex64 as C64;
pub use tangle::ThreeQubitPure;
