//! CSV rendering for scheme traces and regularity profiles.
//!
//! The trace header is part of the output contract:
//! `k,t_k,lambda,coord_0,...,coord_{m-1},step_dist,monotone_ok,inner_iters,res_<s>,...`
//! with one `res_<s>` column per probe time, labeled by the probe's plain
//! decimal form. Floats are rendered with [`crate::numfmt::fmt_g17`] so
//! the file round-trips to the same bits.

use std::fmt::Write as _;

use crate::numfmt::fmt_g17;
use crate::schemes::{IterationTrace, UarProfile};

pub fn trace_csv_string(trace: &IterationTrace) -> String {
    let mut out = String::new();
    let dim = trace
        .rows
        .first()
        .map(|r| r.iterate.coords().len())
        .unwrap_or(0);
    out.push_str("k,t_k,lambda");
    for i in 0..dim {
        let _ = write!(out, ",coord_{i}");
    }
    out.push_str(",step_dist,monotone_ok,inner_iters");
    for s in &trace.probes {
        let _ = write!(out, ",res_{s}");
    }
    out.push('\n');
    for row in &trace.rows {
        let _ = write!(out, "{},{},{}", row.k, fmt_g17(row.t_k), fmt_g17(row.lambda));
        for c in row.iterate.coords() {
            let _ = write!(out, ",{}", fmt_g17(*c));
        }
        let _ = write!(
            out,
            ",{},{},{}",
            fmt_g17(row.step_dist),
            row.monotone_ok,
            row.inner_iters
        );
        for r in &row.residuals {
            let _ = write!(out, ",{}", fmt_g17(*r));
        }
        out.push('\n');
    }
    out
}

pub fn uar_csv_string(profile: &UarProfile) -> String {
    let mut out = String::from("t,sup_residual\n");
    for &(t, v) in &profile.rows {
        let _ = writeln!(out, "{},{}", fmt_g17(t), fmt_g17(v));
    }
    out
}
