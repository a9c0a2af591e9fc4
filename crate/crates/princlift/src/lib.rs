//! Finite lattices, principal congruences, and lifting poset-valued
//! functors to lattice-valued ones through the cometic functor.

pub mod caps;
pub mod cometic;
pub mod congruence;
pub mod dot;
pub mod fixtures;
pub mod gadget;
pub mod io;
pub mod labels;
pub mod lift;
pub mod nlattice;
pub mod order;
pub mod quasicolor;
pub mod suite;
