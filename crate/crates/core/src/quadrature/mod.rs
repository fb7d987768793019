//! Integration over the disk against `dΣ = dxdy/π`.

mod checks;
mod disk;
mod gauss;
mod potential;

pub use checks::{
    expansive_check, mvp_battery, mvp_check, reproducing_check, weighted_norm, HarmonicTest, Multiplier,
};
pub use disk::{build_disk_rule, integrate_disk, integrate_disk_many, integrate_disk_real, DiskRule, DiskRuleDoc};
pub use gauss::{gauss_legendre, log_gauss, GaussRule};
pub use potential::{integrate_centered, potential_via_green, PotentialRule, PreparedDensity};
