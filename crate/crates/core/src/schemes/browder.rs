//! Anchored resolvent iteration with a vanishing weight sequence.
//!
//! Stage `k` solves the fixed-point problem of the anchored map
//! `z -> (1 - lambda_k) T_{t_k} z + lambda_k x0` along geodesics, with
//! `t_k = t0 * 2^k` and `lambda_k` taken from a [`LambdaRule`]. The inner
//! solver is a Picard iteration from the anchor with an a posteriori
//! stopping rule; each inner step must preserve the order, so a
//! non-monotone step aborts the run.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::numfmt::fmt_g17;
use crate::schemes::{IterationTrace, RunStatus, TraceRow};
use crate::semigroup::SemigroupSpec;

const INNER_CAP: usize = 10_000_000;

/// Weight sequence for the outer iteration.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaRule {
    /// `lambda_k = lambda0 / (k + 1)`.
    Harmonic { lambda0: f64 },
    /// Explicit finite list; the run stops with `ScheduleExhausted` when
    /// the list runs out.
    Explicit(Vec<f64>),
}

impl LambdaRule {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            LambdaRule::Harmonic { lambda0 } => *lambda0 > 0.0 && *lambda0 < 1.0,
            LambdaRule::Explicit(v) => {
                !v.is_empty() && v.iter().all(|l| *l > 0.0 && *l < 1.0)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config("weights must be a nonempty sequence in (0, 1)".into()))
        }
    }

    pub fn value(&self, k: usize) -> Option<f64> {
        match self {
            LambdaRule::Harmonic { lambda0 } => Some(lambda0 / (k + 1) as f64),
            LambdaRule::Explicit(v) => v.get(k).copied(),
        }
    }
}

/// Solves `z = (1 - lambda) T_t z + lambda anchor` by Picard iteration
/// started at the anchor. Returns the iterate and the step count.
///
/// Stops when `d(z_n, z_{n+1}) (1 - lambda) / lambda <= tol`, which bounds
/// the distance to the true fixed point by `tol`, or when the step falls
/// to machine precision. Every accepted step must satisfy
/// `z_n <= z_{n+1}`.
pub fn picard_fixed_point(
    sg: &SemigroupSpec,
    t: f64,
    anchor: &Point,
    lambda: f64,
    tol: f64,
) -> Result<(Point, usize)> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::Config(format!("anchor weight must lie in (0, 1), got {lambda}")));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Config(format!("inner tolerance must be positive, got {tol}")));
    }
    if !(t > 0.0) || !sg.index().contains(t) {
        return Err(Error::Domain(format!("time {t} must be positive and lie in the index set")));
    }
    let space = sg.space();
    let order = sg.order();
    let mut z = anchor.clone();
    let mut cap = INNER_CAP;
    let mut n = 0usize;
    loop {
        n += 1;
        let mapped = sg.apply(t, &z)?;
        let z_next = space.geodesic_point(&mapped, anchor, lambda)?;
        let d_step = space.dist(&z, &z_next)?;
        if !order.leq(&z, &z_next)? {
            return Err(Error::OrderContract(format!(
                "inner step {n} broke monotonicity at t={}, lambda={}",
                fmt_g17(t),
                fmt_g17(lambda)
            )));
        }
        if n == 1 {
            cap = a_priori_cap(d_step, lambda, tol);
        }
        let scale =
            1.0 + z_next.coords().iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if d_step * (1.0 - lambda) / lambda <= tol
            || d_step <= 8.0 * f64::EPSILON * scale
        {
            return Ok((z_next, n));
        }
        if n >= cap {
            return Err(Error::Numerical(format!(
                "inner solver did not reach tolerance {} within {cap} steps",
                fmt_g17(tol)
            )));
        }
        z = z_next;
    }
}

/// Iteration count bound from the contraction factor `1 - lambda` and the
/// first step length.
fn a_priori_cap(d1: f64, lambda: f64, tol: f64) -> usize {
    if d1 <= 0.0 {
        return 8;
    }
    let n = ((tol * lambda / d1).ln() / (1.0 - lambda).ln()).ceil();
    if !n.is_finite() {
        return INNER_CAP;
    }
    let n = n.clamp(0.0, INNER_CAP as f64) as usize;
    n.max(8).saturating_add(8).min(INNER_CAP)
}

/// Validated configuration of an anchored-resolvent run.
#[derive(Debug, Clone)]
pub struct BrowderConfig {
    sg: SemigroupSpec,
    x0: Point,
    rule: LambdaRule,
    t0: f64,
    outer_iters: usize,
    inner_tol: f64,
    probes: Vec<f64>,
}

impl BrowderConfig {
    pub fn new(
        sg: SemigroupSpec,
        x0: Point,
        rule: LambdaRule,
        t0: f64,
        outer_iters: usize,
        inner_tol: f64,
        probes: Vec<f64>,
    ) -> Result<Self> {
        rule.validate()?;
        if !(t0 > 0.0) || !sg.index().contains(t0) {
            return Err(Error::ScheduleIncompatible(format!(
                "base time {} must be positive and lie in the index set",
                fmt_g17(t0)
            )));
        }
        if outer_iters == 0 {
            return Err(Error::Config("at least one outer stage is required".into()));
        }
        if !(inner_tol > 0.0) || !inner_tol.is_finite() {
            return Err(Error::Config(format!(
                "inner tolerance must be positive, got {inner_tol}"
            )));
        }
        if x0.space() != sg.space() {
            return Err(Error::SpaceMismatch("anchor does not belong to the flow's space".into()));
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
        Ok(BrowderConfig { sg, x0, rule, t0, outer_iters, inner_tol, probes })
    }

    pub fn semigroup(&self) -> &SemigroupSpec {
        &self.sg
    }

    pub fn probes(&self) -> &[f64] {
        &self.probes
    }
}

/// Runs the outer iteration. Row 0 is the anchor; row `k >= 1` holds the
/// stage-`k` resolvent iterate at weight `lambda_k` and time `t0 * 2^k`,
/// with the inner step count in `inner_iters`.
pub fn browder_run(config: &BrowderConfig) -> Result<IterationTrace> {
    let sg = &config.sg;
    let space = sg.space();
    let order = sg.order();
    let mut rows: Vec<TraceRow> = Vec::with_capacity(config.outer_iters + 1);
    let mut status = RunStatus::Converged;

    let residuals_at = |x: &Point| -> Result<Vec<f64>> {
        config.probes.iter().map(|&s| sg.residual(s, x)).collect()
    };

    let lambda0 = config.rule.value(0).expect("validated rule has a first weight");
    let forward0 = order.leq(&config.x0, &sg.apply(config.t0, &config.x0)?)?;
    rows.push(TraceRow {
        k: 0,
        t_k: config.t0,
        lambda: lambda0,
        iterate: config.x0.clone(),
        step_dist: 0.0,
        monotone_ok: forward0,
        inner_iters: 0,
        residuals: residuals_at(&config.x0)?,
    });

    for k in 1..=config.outer_iters {
        // Past 2^53 the doubling leaves the exactly-representable integer
        // scale, so lattice alignment can no longer be certified.
        if k > 53 {
            status = RunStatus::ScheduleExhausted;
            break;
        }
        let lambda_k = match config.rule.value(k) {
            Some(l) => l,
            None => {
                status = RunStatus::ScheduleExhausted;
                break;
            }
        };
        let t_k = config.t0 * 2.0_f64.powi(k as i32);
        let (z, inner_n) =
            picard_fixed_point(sg, t_k, &config.x0, lambda_k, lambda_k * config.inner_tol)?;
        let prev = rows[k - 1].iterate.clone();
        let step_dist = space.dist(&prev, &z)?;
        let backward_ok = order.leq(&prev, &z)?;
        let forward_ok = order.leq(&z, &sg.apply(t_k, &z)?)?;
        rows.push(TraceRow {
            k,
            t_k,
            lambda: lambda_k,
            iterate: z.clone(),
            step_dist,
            monotone_ok: backward_ok && forward_ok,
            inner_iters: inner_n,
            residuals: residuals_at(&z)?,
        });
    }

    Ok(IterationTrace { probes: config.probes.clone(), rows, status })
}
