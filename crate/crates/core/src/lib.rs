//! Exact operator algebra and numerical spectral checks for deformed
//! complex and quaternionic angular momentum.
//!
//! * [`qalg`]: rational polynomial scalars and quaternions over them.
//! * [`opcalc`]: normal-ordered differential operators with right units.
//! * [`angmom`]: deformed angular momentum builders and the identity suite.
//! * [`spectral`]: associated Legendre basis and the perturbation solver.
//! * [`expect`]: real-bracket expectation values.

pub mod qalg;
pub mod opcalc;
pub mod angmom;
pub mod spectral;
pub mod expect;
