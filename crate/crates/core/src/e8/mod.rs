//! The rank-three cubic system with `W(E8^(1))` symmetry.

pub mod action;
pub mod coxeter;
pub mod params;
pub mod spectral;
pub mod system;

pub use action::{find_conjugator, s0_action, S0Output};
pub use params::{sample_params, ParamSet};
pub use system::{build_system, from_fuchs, sample_system, solved_entries, to_fuchs, CubicSystem};
