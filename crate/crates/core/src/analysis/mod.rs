//! Point-set analysis of `S` and the counting quantities built on it.

mod checks;
mod counting;
mod pointset;
mod regions;
mod scale;
mod sets;

pub use checks::{
    check_b_lt_l, check_b_plus_2l, check_consistency, check_rowcol, check_rowcol2, check_xi0,
    halve_check, halve_check_set, phi_step_check, well_behaved_scan, HalveReport, PhiStep,
    PhiStepReport, SuiteReport, Verdict, WellBehavedReport,
};
pub use counting::{
    f_weight, g_in, g_value, h_in, h_value, identity_check, in_r, pi_nim_closed, GValue,
    IdentityReport,
};
pub use pointset::{Point, PointSet};
pub use regions::{build_sn, build_u, build_ubar};
pub use scale::{
    pi_lower_bound, region_count, region_series, row_periodicity_probe, zeta_from_table,
    zeta_h_series, zeta_series, RegionBox, ScaleKind, ScaleReport,
};
pub use sets::{b_count, is_hole, r_count, rb_diag, s_contains};
