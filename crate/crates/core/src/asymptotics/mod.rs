//! Closed forms, limits and concentration bounds for large voting bodies,
//! and convergence tables comparing exact finite-N values against them.

mod approx;
mod bounds;
mod closed_forms;
mod limits;
mod table;

pub use approx::{banzhaf_decisiveness_simple, efficiency_f64, MAX_APPROX_CELLS};
pub use bounds::{effb_bound, hoeffding, pweight, sbp_bound};
pub use closed_forms::{closed_forms, majority_closed_forms, ClosedForms, MajorityForms};
pub use limits::{db_approx, limits, sb_approx, CommonBeliefLimits, Limits};
pub use table::{
    convergence_table, convergence_table_with, LimitReport, LimitRow, SystemFamily, Value,
};
