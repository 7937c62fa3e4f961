//! Energies, dissipation and the other monitored functionals.

mod energy;
mod frank;
mod gn;

pub use energy::{
    averaged_energy, dissipation, energy_law_residual, helicity, record, total_energy,
    DiagnosticsRecord, Energy,
};
pub use frank::frank_energy;
pub use gn::{gn_probe, GnReport, RatioStats};
