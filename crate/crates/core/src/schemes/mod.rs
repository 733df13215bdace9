//! Iteration schemes over order-preserving semigroups, with per-step
//! traces.
//!
//! Both schemes share the trace format: row `k` holds the iterate `x^k`,
//! the schedule time `t_k` attached to that stage, the interpolation
//! weight, the step length from the previous iterate, an order flag, the
//! inner-solver iteration count, and the displacement residuals
//! `dist(x^k, T_s x^k)` for each probe time `s`. The order flag on row `k`
//! asserts `x^{k-1} <= x^k` (skipped at `k = 0`) together with
//! `x^k <= T_{t_k} x^k`.

pub mod browder;
pub mod km;
pub mod uar;

pub use browder::{browder_run, picard_fixed_point, BrowderConfig, LambdaRule};
pub use km::{km_run, km_schedule_witness, ArithmeticSchedule, KmConfig, ScheduleWitness};
pub use uar::{ar_fix_check, uar_estimate, UarProfile};

use crate::geometry::Point;

/// Terminal state of a scheme run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// The stopping rule fired (or every planned stage completed).
    Converged,
    /// The iteration budget ran out before the stopping rule fired.
    MaxIters,
    /// The time schedule could not be continued.
    ScheduleExhausted,
}

/// One stage of a scheme run.
#[derive(Debug, Clone)]
pub struct TraceRow {
    pub k: usize,
    pub t_k: f64,
    pub lambda: f64,
    pub iterate: Point,
    /// `dist(x^{k-1}, x^k)`; zero on row 0.
    pub step_dist: f64,
    pub monotone_ok: bool,
    /// Inner-solver iterations spent producing this row; zero when the
    /// stage needs no inner solve.
    pub inner_iters: usize,
    /// `dist(x^k, T_s x^k)` for each probe time `s`, in probe order.
    pub residuals: Vec<f64>,
}

/// Full record of a scheme run.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub probes: Vec<f64>,
    pub rows: Vec<TraceRow>,
    pub status: RunStatus,
}

impl IterationTrace {
    pub fn final_iterate(&self) -> &Point {
        &self.rows.last().expect("trace has at least the seed row").iterate
    }

    pub fn final_residuals(&self) -> &[f64] {
        &self.rows.last().expect("trace has at least the seed row").residuals
    }

    /// Whether every row kept the order contract.
    pub fn monotone_throughout(&self) -> bool {
        self.rows.iter().all(|r| r.monotone_ok)
    }
}
