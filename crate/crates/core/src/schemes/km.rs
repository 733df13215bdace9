//! Krasnoselskii-Mann iteration along an arithmetic time schedule.
//!
//! The update is `x^{k+1} = (1 - lambda) x^k + lambda T_{t_k} x^k` taken
//! along the geodesic, with `t_k = (k + 1) t0`. The run stops once every
//! probe residual `dist(x^k, T_s x^k)` falls to the stop tolerance, or
//! when the iteration budget runs out.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::numfmt::fmt_g17;
use crate::schemes::{IterationTrace, RunStatus, TraceRow};
use crate::semigroup::{IndexSet, SemigroupSpec};
use crate::tol;

/// The schedule `t_k = (k + 1) t0`.
#[derive(Debug, Clone, Copy)]
pub struct ArithmeticSchedule {
    t0: f64,
}

impl ArithmeticSchedule {
    pub fn new(t0: f64) -> Result<Self> {
        if !(t0 > 0.0) || !t0.is_finite() {
            return Err(Error::Config(format!("schedule step must be positive, got {t0}")));
        }
        Ok(ArithmeticSchedule { t0 })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn value(&self, k: usize) -> f64 {
        (k + 1) as f64 * self.t0
    }
}

/// Shift witness for an arithmetic schedule: with offset `m = s / t0`,
/// the index map `j_k = k + m` satisfies `t_{j_k} = t_k + s`, and the
/// index gap `j_k - k` stays at `m`.
#[derive(Debug, Clone, Copy)]
pub struct ScheduleWitness {
    pub offset: usize,
    pub sup_gap: f64,
}

/// Produces the shift witness for probe time `s`, or an error when `s` is
/// not a positive lattice multiple of the schedule step.
pub fn km_schedule_witness(schedule: &ArithmeticSchedule, s: f64) -> Result<ScheduleWitness> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::ScheduleIncompatible(format!(
            "probe time must be positive, got {s}"
        )));
    }
    let ratio = s / schedule.t0;
    let m = ratio.round();
    if (ratio - m).abs() > tol::DISCRETE_INDEX_EPS || m < 1.0 {
        return Err(Error::ScheduleIncompatible(format!(
            "probe time {} is not a positive multiple of the schedule step {}",
            fmt_g17(s),
            fmt_g17(schedule.t0)
        )));
    }
    Ok(ScheduleWitness { offset: m as usize, sup_gap: m })
}

/// Validated configuration of a KM run.
#[derive(Debug, Clone)]
pub struct KmConfig {
    sg: SemigroupSpec,
    x0: Point,
    lambda: f64,
    schedule: ArithmeticSchedule,
    probes: Vec<f64>,
    stop_tol: f64,
    max_iters: usize,
}

impl KmConfig {
    /// Checks the weight, tolerances, schedule/index compatibility, probe
    /// membership, and seed admissibility (`x0 <= T_s x0` for every
    /// probe).
    pub fn new(
        sg: SemigroupSpec,
        x0: Point,
        lambda: f64,
        schedule: ArithmeticSchedule,
        probes: Vec<f64>,
        stop_tol: f64,
        max_iters: usize,
    ) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::Config(format!(
                "interpolation weight must lie in (0, 1), got {lambda}"
            )));
        }
        if !(stop_tol > 0.0) || !stop_tol.is_finite() {
            return Err(Error::Config(format!("stop tolerance must be positive, got {stop_tol}")));
        }
        if max_iters == 0 {
            return Err(Error::Config("iteration budget must be at least 1".into()));
        }
        if x0.space() != sg.space() {
            return Err(Error::SpaceMismatch("seed does not belong to the flow's space".into()));
        }
        if let IndexSet::Discrete { .. } = sg.index() {
            if !sg.index().contains(schedule.t0) {
                return Err(Error::ScheduleIncompatible(format!(
                    "schedule step {} is not in the discrete index set",
                    fmt_g17(schedule.t0)
                )));
            }
        }
        if probes.is_empty() {
            return Err(Error::Config("at least one probe time is required".into()));
        }
        for &s in &probes {
            if !(s > 0.0) || !sg.index().contains(s) {
                return Err(Error::Config(format!(
                    "probe time {} must be positive and lie in the index set",
                    fmt_g17(s)
                )));
            }
        }
        if !sg.seed_admissible(&x0, &probes)? {
            return Err(Error::Precondition(
                "seed is not admissible: x0 <= T_s x0 fails for a probe time".into(),
            ));
        }
        Ok(KmConfig { sg, x0, lambda, schedule, probes, stop_tol, max_iters })
    }

    pub fn semigroup(&self) -> &SemigroupSpec {
        &self.sg
    }

    pub fn probes(&self) -> &[f64] {
        &self.probes
    }
}

/// Runs the KM iteration and records the full trace.
pub fn km_run(config: &KmConfig) -> Result<IterationTrace> {
    let sg = &config.sg;
    let space = sg.space();
    let order = sg.order();
    let mut rows: Vec<TraceRow> = Vec::with_capacity(config.max_iters + 1);
    let mut status = RunStatus::MaxIters;

    let mut x = config.x0.clone();
    // y holds T_{t_k} x^k; it feeds both the row-k order flag and the
    // step to x^{k+1}.
    let mut y = sg.apply(config.schedule.value(0), &x)?;

    for k in 0..=config.max_iters {
        let t_k = config.schedule.value(k);
        if k > 0 {
            let prev = rows[k - 1].iterate.clone();
            x = space.geodesic_point(&prev, &y, config.lambda)?;
            y = sg.apply(t_k, &x)?;
        }
        let step_dist =
            if k == 0 { 0.0 } else { space.dist(&rows[k - 1].iterate, &x)? };
        let backward_ok = if k == 0 { true } else { order.leq(&rows[k - 1].iterate, &x)? };
        let forward_ok = order.leq(&x, &y)?;
        let mut residuals = Vec::with_capacity(config.probes.len());
        for &s in &config.probes {
            residuals.push(sg.residual(s, &x)?);
        }
        let stop = residuals.iter().all(|r| *r <= config.stop_tol);
        rows.push(TraceRow {
            k,
            t_k,
            lambda: config.lambda,
            iterate: x.clone(),
            step_dist,
            monotone_ok: backward_ok && forward_ok,
            inner_iters: 0,
            residuals,
        });
        if stop {
            status = RunStatus::Converged;
            break;
        }
    }

    Ok(IterationTrace { probes: config.probes.clone(), rows, status })
}
