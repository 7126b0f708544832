//! Exact-solver toolkit for an extended quantum Ising chain (anisotropic XY
//! couplings, a transverse field, and three-site XZX / YZY terms).
//!
//! Every parameter point maps to a closed loop in an auxiliary plane; the
//! ground-state energy is a curve integral over that loop and the phase is
//! labeled by how often the loop winds around the origin. The crate computes
//! energies and windings from the loop ([`freefermion`], [`loopgeo`]), scans
//! parameter lines and planes for transitions ([`scan`]), validates the
//! whole pipeline against a brute-force diagonalization oracle on small
//! chains ([`edoracle`]), and emits CSV/JSON/SVG artifacts ([`export`]).

pub mod edoracle;
pub mod error;
pub mod export;
pub mod freefermion;
pub mod loopgeo;
pub mod model;
pub(crate) mod quad;
pub mod scan;

pub use error::{Error, Result};
pub use model::{preset_lookup, presets, ModelParams, ParamName, Preset};
