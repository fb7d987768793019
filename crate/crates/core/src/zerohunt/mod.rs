//! Search for extraneous zeros of `K_A^α(·, 0)` on the two-ray
//! configurations and the reference table of parameters.

mod config;
mod scan;
mod table;

pub use config::{generate_configuration, HuntConfig, HuntConfigDoc};
pub use scan::{
    bisect, boundary_value_scan, boundary_value_scan_with, classify, hunt, locate_extraneous_zero, scan_zero_set,
    HuntResult, HuntResultDoc, Verdict, ZeroLocation, DEFAULT_MARGIN,
};
pub use table::{
    alpha_sweep, level_grid_export, parse_rows, sign_changes, table1_reproduce, theta_d_sweep, ConfigPoint, LevelGrid,
    RowReport, SweepPoint, Table1Report, TableRow, Window, DESK_SCALE_MAX_N, TABLE1,
};
