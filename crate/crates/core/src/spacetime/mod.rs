//! Regge–Wheeler potential, tortoise coordinate and barrier-top data.

mod continuation;
mod lambert;
mod params;
mod taylor;
mod tortoise;

pub use continuation::{continue_on_ray, ComplexPoint};
pub use lambert::{lambert_w0, lambert_w0_exp};
pub use params::{alpha_squared, critical_data, horizon_roots, BlackHoleParams, CriticalData, HorizonData};
pub use taylor::{potential_taylor, shifted_potential_taylor, PotentialTaylor, MAX_TAYLOR_DEGREE};
pub use tortoise::{inverse_tortoise, inverse_tortoise_point, potential_parts, potential_w, tortoise, RealPoint};
