//! Quantum error-correcting codes from cellulations of closed surfaces.
//!
//! Qubits sit on edges. Each face gives an X-type stabilizer on its boundary
//! edges and each vertex a Z-type stabilizer on its incident edges, both
//! counted with multiplicity mod 2. The code space is indexed by the first
//! Z2 homology of the surface, so the projective plane encodes one qubit.
//!
//! Modules, bottom up:
//! - [`gf2`]: bit-packed vectors and matrices over GF(2)
//! - [`surface`]: cellulations, validation, duality and the catalog
//! - [`homology`]: cycles, boundaries, essential cycles and systoles
//! - [`stabilizer`]: CSS codes, distances, puncturing and planar codes
//! - [`invariants`]: two-qubit reduced-rank profiles
//! - [`decoder`]: syndromes, minimum-weight correction and Monte Carlo
//! - [`search`]: exhaustive enumeration of small cellulations

pub mod gf2;
pub mod surface;
pub mod homology;
pub mod invariants;
pub mod search;
pub mod stabilizer;
pub mod decoder;
