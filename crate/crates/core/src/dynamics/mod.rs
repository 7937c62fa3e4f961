//! Right-hand sides of the liquid-crystal system and the time stepper.

mod init;
mod params;
mod stepper;
mod terms;

pub use init::{beltrami, random_seeded, taylor_green_uniform_d, vortex_pair};
pub use params::{Integrator, Model, SimParams, SimState};
pub use stepper::step;
pub use terms::{
    advect, director_rhs, elastic_stress_div, gl_force, gl_potential, lans_correction, momentum_rhs,
};
