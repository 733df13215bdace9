//! Law of cosines, comparison triangles, and comparison-distance slack.
//!
//! Side/angle conversions use half-angle ("haversine") rearrangements of the
//! law of cosines in each curvature sign, which avoid cancellation for thin
//! triangles. The spherical branch works in rescaled arclength
//! `sqrt(kappa) * length`; the hyperbolic branch is the `sinh`/`cosh`
//! continuation of the same identity.
//!
//! Comparison triangles are placed canonically: vertex `V0` at the model
//! basepoint, `V1` along the first tangent direction, `V2` in the upper half
//! with respect to the second tangent direction. Side order is
//! `(a, b, c) = (d(V1,V2), d(V0,V2), d(V0,V1))`, so a Euclidean `(3,4,5)`
//! triple yields vertices `(0,0)`, `(5,0)`, `(16/5, 12/5)`.

use crate::error::{Error, Result};
use crate::tol;

use super::{Curvature, GeodesicSegment, Point, Space, SpaceKind};

/// Third side of a geodesic triangle with adjacent sides `a`, `b` enclosing
/// the angle `gamma`.
pub fn side_from_angle(curv: Curvature, a: f64, b: f64, gamma: f64) -> Result<f64> {
    if !(a >= 0.0) || !(b >= 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("side lengths must be >= 0, got a={a} b={b}")));
    }
    if !(0.0..=std::f64::consts::PI).contains(&gamma) {
        return Err(Error::Domain(format!("angle {gamma} outside [0, pi]")));
    }
    let kappa = curv.kappa;
    if kappa > 0.0 {
        let dk = curv.model_diameter();
        if a >= dk || b >= dk {
            return Err(Error::Domain(format!(
                "sides must be below the model diameter {dk}, got a={a} b={b}"
            )));
        }
        let sk = kappa.sqrt();
        let (ar, br) = (a * sk, b * sk);
        let sh = (0.5 * gamma).sin();
        let h = (0.5 * (ar - br)).sin().powi(2) + ar.sin() * br.sin() * sh * sh;
        if h >= 1.0 {
            return Err(Error::Domain(
                "resulting side reaches the model diameter".into(),
            ));
        }
        let h = h.max(0.0);
        let cr = 2.0 * h.sqrt().atan2((1.0 - h).sqrt());
        Ok(cr / sk)
    } else if kappa == 0.0 {
        let sh = (0.5 * gamma).sin();
        Ok(((a - b) * (a - b) + 4.0 * a * b * sh * sh).sqrt())
    } else {
        let sk = (-kappa).sqrt();
        let (ar, br) = (a * sk, b * sk);
        let sh = (0.5 * gamma).sin();
        let s2 = (0.5 * (ar - br)).sinh().powi(2) + ar.sinh() * br.sinh() * sh * sh;
        Ok(2.0 * s2.sqrt().asinh() / sk)
    }
}

/// Angle opposite side `c` in a geodesic triangle with sides `a`, `b`, `c`.
pub fn angle_from_sides(curv: Curvature, a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain(format!("adjacent sides must be positive, got a={a} b={b}")));
    }
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!("opposite side must be >= 0, got c={c}")));
    }
    let kappa = curv.kappa;
    let x = if kappa > 0.0 {
        let dk = curv.model_diameter();
        if a >= dk || b >= dk || c >= dk {
            return Err(Error::Domain(format!(
                "sides must be below the model diameter {dk}, got ({a}, {b}, {c})"
            )));
        }
        let sk = kappa.sqrt();
        let (ar, br, cr) = (a * sk, b * sk, c * sk);
        (cr.cos() - ar.cos() * br.cos()) / (ar.sin() * br.sin())
    } else if kappa == 0.0 {
        (a * a + b * b - c * c) / (2.0 * a * b)
    } else {
        let sk = (-kappa).sqrt();
        let (ar, br, cr) = (a * sk, b * sk, c * sk);
        (ar.cosh() * br.cosh() - cr.cosh()) / (ar.sinh() * br.sinh())
    };
    if x > 1.0 + tol::TRIG_CLAMP_EPS || x < -1.0 - tol::TRIG_CLAMP_EPS {
        return Err(Error::UnrealizableTriangle(format!(
            "sides ({a}, {b}, {c}) give cosine {x} at curvature {kappa}"
        )));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// A geodesic triangle realized in the two-dimensional model space of a
/// given curvature, with canonical vertex placement.
#[derive(Debug, Clone)]
pub struct ComparisonTriangle {
    curvature: Curvature,
    sides: [f64; 3],
    vertices: [Point; 3],
    space: Space,
}

impl ComparisonTriangle {
    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    /// Side lengths `(a, b, c)`.
    pub fn sides(&self) -> [f64; 3] {
        self.sides
    }

    pub fn vertices(&self) -> &[Point; 3] {
        &self.vertices
    }

    /// The model space hosting the vertices.
    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Length of side `i`, where side `i` joins `V_i` to `V_{(i+1)%3}`:
    /// side 0 has length `c`, side 1 length `a`, side 2 length `b`.
    pub fn side_length(&self, side: usize) -> Result<f64> {
        match side {
            0 => Ok(self.sides[2]),
            1 => Ok(self.sides[0]),
            2 => Ok(self.sides[1]),
            _ => Err(Error::Domain(format!("side index {side} outside 0..=2"))),
        }
    }

    fn side_endpoints(&self, side: usize) -> (&Point, &Point) {
        (&self.vertices[side], &self.vertices[(side + 1) % 3])
    }
}

/// A point on a triangle side, addressed by side index and arclength offset
/// from the side's first vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidePoint {
    pub side: usize,
    pub offset: f64,
}

impl SidePoint {
    pub fn new(side: usize, offset: f64) -> Self {
        SidePoint { side, offset }
    }
}

/// Builds the comparison triangle for side lengths `(a, b, c)` at the given
/// curvature.
pub fn build_comparison_triangle(
    curv: Curvature,
    a: f64,
    b: f64,
    c: f64,
) -> Result<ComparisonTriangle> {
    for s in [a, b, c] {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("side lengths must be >= 0, got ({a}, {b}, {c})")));
        }
    }
    let slack = tol::TRIG_CLAMP_EPS * (1.0 + a + b + c);
    if a > b + c + slack || b > a + c + slack || c > a + b + slack {
        return Err(Error::UnrealizableTriangle(format!(
            "sides ({a}, {b}, {c}) violate the triangle inequality"
        )));
    }
    let kappa = curv.kappa;
    if kappa > 0.0 && a + b + c >= 2.0 * curv.model_diameter() {
        return Err(Error::UnrealizableTriangle(format!(
            "perimeter {} reaches twice the model diameter",
            a + b + c
        )));
    }
    let space = match kappa {
        k if k > 0.0 => Space::sphere(k, 2)?,
        k if k < 0.0 => Space::hyperbolic(k, 2)?,
        _ => Space::euclidean(2)?,
    };
    // Angle at V0, between the sides of length c (toward V1) and b (toward
    // V2); zero when either adjacent side degenerates.
    let alpha = if b <= tol::POINT_EQ_EPS || c <= tol::POINT_EQ_EPS {
        0.0
    } else {
        angle_from_sides(curv, c, b, a)?
    };
    let v0 = space.basepoint();
    let (e1, e2) = tangent_frame(&space);
    let v1 = space.exp_point(&v0, &e1, c)?;
    let dir: Vec<f64> = e1
        .iter()
        .zip(&e2)
        .map(|(u, w)| alpha.cos() * u + alpha.sin() * w)
        .collect();
    let v2 = space.exp_point(&v0, &dir, b)?;

    let tri = ComparisonTriangle {
        curvature: curv,
        sides: [a, b, c],
        vertices: [v0, v1, v2],
        space,
    };
    let checks = [
        (space.dist(&tri.vertices[1], &tri.vertices[2])?, a),
        (space.dist(&tri.vertices[0], &tri.vertices[2])?, b),
        (space.dist(&tri.vertices[0], &tri.vertices[1])?, c),
    ];
    for (got, want) in checks {
        if (got - want).abs() > tol::TRIANGLE_SIDE_EPS * (1.0 + want) {
            return Err(Error::Numerical(format!(
                "comparison placement reproduced side {got} instead of {want}"
            )));
        }
    }
    Ok(tri)
}

/// First two tangent directions at the canonical basepoint.
fn tangent_frame(space: &Space) -> (Vec<f64>, Vec<f64>) {
    let m = space.ambient_dim();
    let mut e1 = vec![0.0; m];
    let mut e2 = vec![0.0; m];
    match space.kind() {
        SpaceKind::Euclidean => {
            e1[0] = 1.0;
            e2[1] = 1.0;
        }
        SpaceKind::Sphere | SpaceKind::Hyperbolic => {
            e1[1] = 1.0;
            e2[2] = 1.0;
        }
    }
    (e1, e2)
}

/// Point at arclength `offset` along a triangle side.
pub fn comparison_point(tri: &ComparisonTriangle, side: usize, offset: f64) -> Result<Point> {
    let len = tri.side_length(side)?;
    let slack = tol::SEGMENT_MEMBERSHIP_EPS * (1.0 + len);
    if offset < -slack || offset > len + slack {
        return Err(Error::Domain(format!("offset {offset} outside [0, {len}]")));
    }
    let (start, end) = tri.side_endpoints(side);
    if len <= tol::POINT_EQ_EPS {
        return Ok(start.clone());
    }
    let lambda = (offset / len).clamp(0.0, 1.0);
    tri.space.geodesic_point(start, end, lambda)
}

/// Comparison-distance slack for two points on the sides of the geodesic
/// triangle `(p, q, r)`, checked against the model of curvature `curv`.
///
/// Side 0 runs `p -> q`, side 1 runs `q -> r`, side 2 runs `r -> p`; `u` and
/// `v` give arclength offsets along their sides. The returned value is
/// `d_model(u_bar, v_bar) - d_space(u, v)`, which is nonnegative (up to
/// [`tol::CAT_SLACK_FLOOR`]) whenever the triangle satisfies the comparison
/// inequality at `curv`.
pub fn cat_inequality_slack(
    space: &Space,
    curv: Curvature,
    p: &Point,
    q: &Point,
    r: &Point,
    u: SidePoint,
    v: SidePoint,
) -> Result<f64> {
    let c = space.dist(p, q)?;
    let a = space.dist(q, r)?;
    let b = space.dist(r, p)?;
    let tri = build_comparison_triangle(curv, a, b, c)?;

    let real = |sp: SidePoint| -> Result<Point> {
        let (start, end, len) = match sp.side {
            0 => (p, q, c),
            1 => (q, r, a),
            2 => (r, p, b),
            _ => return Err(Error::Domain(format!("side index {} outside 0..=2", sp.side))),
        };
        let slack = tol::SEGMENT_MEMBERSHIP_EPS * (1.0 + len);
        if sp.offset < -slack || sp.offset > len + slack {
            return Err(Error::Domain(format!("offset {} outside [0, {len}]", sp.offset)));
        }
        if len <= tol::POINT_EQ_EPS {
            return Ok(start.clone());
        }
        space.geodesic_point(start, end, (sp.offset / len).clamp(0.0, 1.0))
    };

    let u_real = real(u)?;
    let v_real = real(v)?;
    let u_bar = comparison_point(&tri, u.side, u.offset)?;
    let v_bar = comparison_point(&tri, v.side, v.offset)?;

    let model_d = tri.space.dist(&u_bar, &v_bar)?;
    let real_d = space.dist(&u_real, &v_real)?;
    Ok(model_d - real_d)
}

/// Uniform convexity modulus for bounded sets of diameter `diam` in a model
/// of curvature `kappa > 0`, in rescaled arclength units:
/// `k = 2*delta*tan(pi/2 - delta)` with `delta = sqrt(kappa)*diam`.
///
/// Defined for `0 < diam < D_kappa/2`; the value lies in (0, 2), tends to 2
/// as `diam -> 0+`, and depends on `diam` only through `delta`.
pub fn convexity_modulus(diam: f64, curv: Curvature) -> Result<f64> {
    let kappa = curv.kappa;
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("curvature must be positive, got {kappa}")));
    }
    if !(diam > 0.0) || diam >= 0.5 * curv.model_diameter() {
        return Err(Error::Domain(format!(
            "diameter {diam} outside (0, {})",
            0.5 * curv.model_diameter()
        )));
    }
    let delta = kappa.sqrt() * diam;
    // Cotangent form of 2*delta*tan(pi/2 - delta); evaluating tan near
    // pi/2 would amplify the rounding of pi/2 by 1/delta^2.
    Ok(2.0 * delta / delta.tan())
}

/// The segment realizing side `i` of a comparison triangle.
pub fn comparison_side_segment(tri: &ComparisonTriangle, side: usize) -> Result<GeodesicSegment> {
    let (start, end) = tri.side_endpoints(side);
    GeodesicSegment::new(start.clone(), end.clone())
}
