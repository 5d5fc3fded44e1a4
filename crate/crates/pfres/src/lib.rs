//! Exact computer algebra for free complexes attached to a matrix of linear
//! forms annihilated by the row vector of ring variables.
//!
//! The crate builds the complexes from seed data (a list of alternating
//! matrices), verifies their structural properties (d∘d = 0, chain maps,
//! split-exact quotients, probabilistic acyclicity), and measures Betti
//! tables, Hilbert numerators, h-vectors, and multiplicities.  A Buchberger
//! engine over a prime field backs the ideal-theoretic checks (membership,
//! grade, colon, saturation).

pub mod cli;
pub mod complexes;
pub mod groebner;
pub mod hilbert;
pub mod multilinear;
pub mod ring;
pub mod seed;
pub mod verify;
