//! Asymptotic centers, metric projection, and fixed-set convexity checks.

use crate::error::{Error, Result};
use crate::geometry::{angle_from_sides, Curvature, GeodesicSegment, Point, SpaceKind};
use crate::semigroup::SemigroupSpec;
use crate::tol;

/// Minimizer of the worst-case distance to a window of points, with the
/// attained radius.
#[derive(Debug, Clone)]
pub struct AsymptoticCenter {
    pub center: Point,
    pub radius: f64,
}

fn window_radius(window: &[Point], z: &Point) -> Result<f64> {
    let space = z.space();
    let mut r = 0.0f64;
    for x in window {
        r = r.max(space.dist(z, x)?);
    }
    Ok(r)
}

/// Minimizes `max_i d(z, x_i)` by geodesic descent toward the farthest
/// window point, restarted from several seeds. On positively curved
/// spaces the window must have diameter below half the model diameter so
/// that the objective is convex along the geodesics used.
pub fn asymptotic_center(window: &[Point], tol: f64, max_iters: usize) -> Result<AsymptoticCenter> {
    if window.is_empty() {
        return Err(Error::Precondition("the window must contain at least one point".into()));
    }
    if !(tol > 0.0) || max_iters == 0 {
        return Err(Error::Config("tolerance and iteration budget must be positive".into()));
    }
    let space = *window[0].space();
    for x in window {
        if x.space() != &space {
            return Err(Error::SpaceMismatch("window points lie in different spaces".into()));
        }
    }
    let mut diam = 0.0f64;
    for (i, x) in window.iter().enumerate() {
        for y in &window[i + 1..] {
            diam = diam.max(space.dist(x, y)?);
        }
    }
    if space.kind() == SpaceKind::Sphere && diam >= 0.5 * space.curvature().model_diameter() {
        return Err(Error::Precondition(format!(
            "window diameter {diam} reaches half the model diameter"
        )));
    }

    // Seeds: every window point plus midpoints of the widest pairs.
    let mut seeds: Vec<Point> = window.to_vec();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..window.len() {
        for j in (i + 1)..window.len() {
            pairs.push((space.dist(&window[i], &window[j])?, i, j));
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    for &(d, i, j) in pairs.iter().take(3) {
        if d > 0.0 {
            seeds.push(space.geodesic_point(&window[i], &window[j], 0.5)?);
        }
    }

    let mut best: Option<AsymptoticCenter> = None;
    for seed in seeds {
        let mut z = seed;
        let mut r = window_radius(window, &z)?;
        for _ in 0..max_iters {
            let mut far = &window[0];
            let mut far_d = 0.0f64;
            for x in window {
                let d = space.dist(&z, x)?;
                if d > far_d {
                    far_d = d;
                    far = x;
                }
            }
            if far_d == 0.0 {
                break;
            }
            // Ternary search of the objective along the geodesic toward
            // the farthest point.
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..90 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                let f1 = window_radius(window, &space.geodesic_point(&z, far, m1)?)?;
                let f2 = window_radius(window, &space.geodesic_point(&z, far, m2)?)?;
                if f1 <= f2 {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let cand = space.geodesic_point(&z, far, 0.5 * (lo + hi))?;
            let cand_r = window_radius(window, &cand)?;
            let gain = r - cand_r;
            if cand_r < r {
                z = cand;
                r = cand_r;
            }
            if gain < tol {
                break;
            }
        }
        match &best {
            Some(b) if b.radius <= r => {}
            _ => best = Some(AsymptoticCenter { center: z, radius: r }),
        }
    }
    Ok(best.expect("at least one seed was evaluated"))
}

/// Metric projection of `x` onto a geodesic segment: returns the segment
/// parameter, the foot point, and the distance. On positively curved
/// spaces the distance must stay below half the model diameter for the
/// projection to be single-valued.
pub fn project_to_segment(segment: &GeodesicSegment, x: &Point) -> Result<(f64, Point, f64)> {
    let (lambda, foot, d) = segment.nearest(x)?;
    let space = segment.space();
    if space.kind() == SpaceKind::Sphere && d >= 0.5 * space.curvature().model_diameter() {
        return Err(Error::Domain(format!(
            "projection is not single-valued: distance {d} reaches half the model diameter"
        )));
    }
    Ok((lambda, foot, d))
}

/// Verifies the obtuse-angle property of the projection foot: the angle
/// at the foot between the geodesic to `x` and the segment direction(s)
/// is at least `pi/2` (within tolerance). Points on the segment pass
/// trivially.
pub fn projection_angle_check(segment: &GeodesicSegment, x: &Point) -> Result<bool> {
    let space = segment.space();
    let curv = Curvature { kappa: space.kappa() };
    let (lambda, foot, m) = project_to_segment(segment, x)?;
    if m <= tol::CAT_SLACK_FLOOR {
        return Ok(true);
    }
    let margin = tol::PROJECTION_PARAM_EPS.sqrt();
    let mut directions: Vec<&Point> = Vec::new();
    if lambda > margin {
        directions.push(segment.a());
    }
    if lambda < 1.0 - margin {
        directions.push(segment.b());
    }
    for v in directions {
        let w = space.dist(&foot, v)?;
        if w <= tol::CAT_SLACK_FLOOR {
            continue;
        }
        let opp = space.dist(x, v)?;
        let gamma = angle_from_sides(curv, m, w, opp)?;
        if gamma < std::f64::consts::FRAC_PI_2 - tol::ANGLE_EPS {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the geodesic between two comparable fixed points stays
/// fixed: both endpoints must be fixed to `1e-10` at every probe time,
/// comparable in the order, and each interior interpolant must keep its
/// displacement residuals below `1e-8`.
pub fn fix_segment_check(
    sg: &SemigroupSpec,
    p: &Point,
    q: &Point,
    probes: &[f64],
    n_interp: usize,
) -> Result<bool> {
    if probes.is_empty() || n_interp == 0 {
        return Err(Error::Config("probe times and interpolant count must be nonempty".into()));
    }
    for &s in probes {
        if sg.residual(s, p)? > tol::FIX_RESIDUAL_EPS || sg.residual(s, q)? > tol::FIX_RESIDUAL_EPS
        {
            return Ok(false);
        }
    }
    if !sg.order().comparable(p, q)? {
        return Ok(false);
    }
    let space = sg.space();
    for i in 1..=n_interp {
        let lambda = i as f64 / (n_interp + 1) as f64;
        let z = space.geodesic_point(p, q, lambda)?;
        for &s in probes {
            if sg.residual(s, &z)? > tol::AR_FIX_EPS {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
