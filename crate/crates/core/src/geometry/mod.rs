//! Constant-curvature model spaces.
//!
//! Three families are supported, each with an explicit coordinate model:
//!
//! * `euclidean(n)` — points are vectors in R^n;
//! * `sphere(kappa, n)`, kappa > 0 — points live on the radius-1/sqrt(kappa)
//!   sphere embedded in R^(n+1);
//! * `hyperbolic(kappa, n)`, kappa < 0 — points live on the upper sheet of
//!   the hyperboloid <x,x>_M = -1/|kappa| in R^(n+1) with the Minkowski
//!   form <x,y>_M = -x0*y0 + sum_i xi*yi.
//!
//! Distances use chord-based formulas (atan2 on the sphere, asinh of the
//! Minkowski chord on the hyperboloid) so that short and long geodesics are
//! both evaluated without cancellation. Interpolation renormalizes back onto
//! the model surface, keeping the point invariant within
//! [`tol::POINT_INVARIANT_EPS`].

use rand::Rng;

use crate::error::{Error, Result};
use crate::tol;

mod triangle;

pub use triangle::{
    angle_from_sides, build_comparison_triangle, cat_inequality_slack, comparison_point,
    comparison_side_segment, convexity_modulus, side_from_angle, ComparisonTriangle, SidePoint,
};

/// Sectional curvature of a model space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvature {
    pub kappa: f64,
}

impl Curvature {
    pub fn new(kappa: f64) -> Result<Self> {
        if !kappa.is_finite() {
            return Err(Error::Domain(format!("curvature must be finite, got {kappa}")));
        }
        Ok(Curvature { kappa })
    }

    /// Diameter of the model space: pi/sqrt(kappa) for kappa > 0, infinite
    /// otherwise.
    pub fn model_diameter(&self) -> f64 {
        if self.kappa > 0.0 {
            std::f64::consts::PI / self.kappa.sqrt()
        } else {
            f64::INFINITY
        }
    }
}

/// Convenience wrapper for the model diameter of a bare kappa value.
pub fn model_diameter(kappa: f64) -> f64 {
    if kappa > 0.0 {
        std::f64::consts::PI / kappa.sqrt()
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceKind {
    Euclidean,
    Sphere,
    Hyperbolic,
}

/// A model space: kind, curvature, and manifold dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Space {
    kind: SpaceKind,
    kappa: f64,
    dim: usize,
}

impl Space {
    pub fn euclidean(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(Space { kind: SpaceKind::Euclidean, kappa: 0.0, dim })
    }

    pub fn sphere(kappa: f64, dim: usize) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::Domain(format!("sphere curvature must be positive, got {kappa}")));
        }
        if dim == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(Space { kind: SpaceKind::Sphere, kappa, dim })
    }

    pub fn hyperbolic(kappa: f64, dim: usize) -> Result<Self> {
        if !(kappa < 0.0) || !kappa.is_finite() {
            return Err(Error::Domain(format!(
                "hyperbolic curvature must be negative, got {kappa}"
            )));
        }
        if dim == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(Space { kind: SpaceKind::Hyperbolic, kappa, dim })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn curvature(&self) -> Curvature {
        Curvature { kappa: self.kappa }
    }

    /// Manifold dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length of the coordinate vectors representing points.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceKind::Euclidean => self.dim,
            SpaceKind::Sphere | SpaceKind::Hyperbolic => self.dim + 1,
        }
    }

    /// Embedding radius 1/sqrt(|kappa|) for curved spaces.
    pub fn radius(&self) -> f64 {
        match self.kind {
            SpaceKind::Euclidean => f64::INFINITY,
            SpaceKind::Sphere | SpaceKind::Hyperbolic => 1.0 / self.kappa.abs().sqrt(),
        }
    }

    pub fn model_diameter(&self) -> f64 {
        model_diameter(self.kappa)
    }

    /// Validating point constructor.
    pub fn point(&self, coords: Vec<f64>) -> Result<Point> {
        if coords.len() != self.ambient_dim() {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.ambient_dim(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint("coordinates must be finite".into()));
        }
        match self.kind {
            SpaceKind::Euclidean => {}
            SpaceKind::Sphere => {
                let r = norm(&coords);
                if (r - self.radius()).abs() > tol::POINT_INVARIANT_EPS {
                    return Err(Error::InvalidPoint(format!(
                        "sphere norm {} differs from radius {}",
                        r,
                        self.radius()
                    )));
                }
            }
            SpaceKind::Hyperbolic => {
                let m = mink_inner(&coords, &coords);
                let r2 = self.radius() * self.radius();
                if (m + r2).abs() > tol::POINT_INVARIANT_EPS {
                    return Err(Error::InvalidPoint(format!(
                        "Minkowski norm {} differs from {}",
                        m, -r2
                    )));
                }
                if coords[0] <= 0.0 {
                    return Err(Error::InvalidPoint(
                        "hyperboloid point must have positive first coordinate".into(),
                    ));
                }
            }
        }
        Ok(Point { space: *self, coords })
    }

    fn point_unchecked(&self, coords: Vec<f64>) -> Point {
        Point { space: *self, coords }
    }

    /// Canonical basepoint: the origin, the first-axis pole, or the
    /// hyperboloid apex.
    pub fn basepoint(&self) -> Point {
        let m = self.ambient_dim();
        let mut coords = vec![0.0; m];
        match self.kind {
            SpaceKind::Euclidean => {}
            SpaceKind::Sphere | SpaceKind::Hyperbolic => coords[0] = self.radius(),
        }
        self.point_unchecked(coords)
    }

    /// Geodesic distance between two points of this space.
    pub fn dist(&self, p: &Point, q: &Point) -> Result<f64> {
        self.check_member(p)?;
        self.check_member(q)?;
        Ok(match self.kind {
            SpaceKind::Euclidean => {
                let mut s = 0.0;
                for (a, b) in p.coords.iter().zip(&q.coords) {
                    let d = a - b;
                    s += d * d;
                }
                s.sqrt()
            }
            SpaceKind::Sphere => self.radius() * sphere_angle(&p.coords, &q.coords),
            SpaceKind::Hyperbolic => {
                let r = self.radius();
                let diff: Vec<f64> =
                    p.coords.iter().zip(&q.coords).map(|(a, b)| a - b).collect();
                let chord2 = mink_inner(&diff, &diff).max(0.0);
                2.0 * r * (chord2.sqrt() / (2.0 * r)).asinh()
            }
        })
    }

    /// Point at parameter `lambda` on the unique geodesic from `p` to `q`.
    ///
    /// `lambda = 0` returns `p` exactly and `lambda = 1` returns `q` exactly.
    pub fn geodesic_point(&self, p: &Point, q: &Point, lambda: f64) -> Result<Point> {
        self.check_member(p)?;
        self.check_member(q)?;
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Domain(format!(
                "interpolation parameter {lambda} outside [0, 1]"
            )));
        }
        if lambda == 0.0 {
            return Ok(p.clone());
        }
        if lambda == 1.0 {
            return Ok(q.clone());
        }
        match self.kind {
            SpaceKind::Euclidean => {
                let coords = p
                    .coords
                    .iter()
                    .zip(&q.coords)
                    .map(|(a, b)| (1.0 - lambda) * a + lambda * b)
                    .collect();
                Ok(self.point_unchecked(coords))
            }
            SpaceKind::Sphere => {
                let theta = sphere_angle(&p.coords, &q.coords);
                if theta >= std::f64::consts::PI - tol::ANTIPODAL_MARGIN {
                    return Err(Error::NonUniqueGeodesic(format!(
                        "sphere points at angle {theta} are antipodal"
                    )));
                }
                if theta < 1e-15 {
                    return Ok(p.clone());
                }
                let s = theta.sin();
                let ca = ((1.0 - lambda) * theta).sin() / s;
                let cb = (lambda * theta).sin() / s;
                let mut coords: Vec<f64> =
                    p.coords.iter().zip(&q.coords).map(|(a, b)| ca * a + cb * b).collect();
                let scale = self.radius() / norm(&coords);
                for c in &mut coords {
                    *c *= scale;
                }
                Ok(self.point_unchecked(coords))
            }
            SpaceKind::Hyperbolic => {
                let d = self.dist(p, q)?;
                let rho = d / self.radius();
                if rho < 1e-15 {
                    return Ok(p.clone());
                }
                let s = rho.sinh();
                let ca = ((1.0 - lambda) * rho).sinh() / s;
                let cb = (lambda * rho).sinh() / s;
                let mut coords: Vec<f64> =
                    p.coords.iter().zip(&q.coords).map(|(a, b)| ca * a + cb * b).collect();
                let m = mink_inner(&coords, &coords);
                if !(m < 0.0) {
                    return Err(Error::Numerical(
                        "hyperbolic interpolation left the hyperboloid".into(),
                    ));
                }
                let scale = self.radius() / (-m).sqrt();
                for c in &mut coords {
                    *c *= scale;
                }
                Ok(self.point_unchecked(coords))
            }
        }
    }

    /// Exponential map: walk `arclen` from `base` along the unit tangent
    /// `dir`. The direction must be tangent at `base` (orthogonal in the
    /// ambient form) and of unit length.
    pub fn exp_point(&self, base: &Point, dir: &[f64], arclen: f64) -> Result<Point> {
        self.check_member(base)?;
        if dir.len() != self.ambient_dim() {
            return Err(Error::Domain("tangent dimension mismatch".into()));
        }
        if arclen < 0.0 || !arclen.is_finite() {
            return Err(Error::Domain(format!("arclength must be finite and >= 0, got {arclen}")));
        }
        match self.kind {
            SpaceKind::Euclidean => {
                let coords =
                    base.coords.iter().zip(dir).map(|(b, u)| b + arclen * u).collect();
                Ok(self.point_unchecked(coords))
            }
            SpaceKind::Sphere => {
                let r = self.radius();
                let t = arclen / r;
                let (ct, st) = (t.cos(), t.sin());
                let mut coords: Vec<f64> = base
                    .coords
                    .iter()
                    .zip(dir)
                    .map(|(b, u)| ct * b + r * st * u)
                    .collect();
                let scale = r / norm(&coords);
                for c in &mut coords {
                    *c *= scale;
                }
                Ok(self.point_unchecked(coords))
            }
            SpaceKind::Hyperbolic => {
                let r = self.radius();
                let t = arclen / r;
                let (ct, st) = (t.cosh(), t.sinh());
                let mut coords: Vec<f64> = base
                    .coords
                    .iter()
                    .zip(dir)
                    .map(|(b, u)| ct * b + r * st * u)
                    .collect();
                let m = mink_inner(&coords, &coords);
                let scale = r / (-m).sqrt();
                for c in &mut coords {
                    *c *= scale;
                }
                Ok(self.point_unchecked(coords))
            }
        }
    }

    /// Draws a unit tangent vector at `base`, uniformly in direction.
    pub fn random_unit_tangent<R: Rng>(&self, base: &Point, rng: &mut R) -> Vec<f64> {
        let m = self.ambient_dim();
        loop {
            let mut v: Vec<f64> = (0..m).map(|_| standard_normal(rng)).collect();
            match self.kind {
                SpaceKind::Euclidean => {}
                SpaceKind::Sphere => {
                    let r2 = self.radius() * self.radius();
                    let c = dot(&v, &base.coords) / r2;
                    for (vi, bi) in v.iter_mut().zip(&base.coords) {
                        *vi -= c * bi;
                    }
                }
                SpaceKind::Hyperbolic => {
                    let r2 = self.radius() * self.radius();
                    let c = mink_inner(&v, &base.coords) / r2;
                    for (vi, bi) in v.iter_mut().zip(&base.coords) {
                        *vi += c * bi;
                    }
                }
            }
            let n = match self.kind {
                SpaceKind::Hyperbolic => mink_inner(&v, &v).max(0.0).sqrt(),
                _ => norm(&v),
            };
            if n > 1e-6 {
                for vi in &mut v {
                    *vi /= n;
                }
                return v;
            }
        }
    }

    /// Draws a point in the closed geodesic ball around `center`.
    pub fn sample_ball<R: Rng>(&self, center: &Point, radius: f64, rng: &mut R) -> Result<Point> {
        let dir = self.random_unit_tangent(center, rng);
        let u: f64 = rng.gen();
        let s = radius * u.powf(1.0 / self.dim as f64);
        self.exp_point(center, &dir, s)
    }

    fn check_member(&self, p: &Point) -> Result<()> {
        if p.space != *self {
            return Err(Error::SpaceMismatch(format!(
                "point belongs to {:?}, expected {:?}",
                p.space, self
            )));
        }
        Ok(())
    }
}

/// A point of a model space, carrying its space descriptor.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    space: Space,
    coords: Vec<f64>,
}

impl Point {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// An oriented geodesic segment with cached length.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSegment {
    a: Point,
    b: Point,
    length: f64,
}

impl GeodesicSegment {
    /// Builds the segment from `a` to `b`. Endpoints must be distinct and,
    /// on the sphere, strictly closer than the model diameter.
    pub fn new(a: Point, b: Point) -> Result<Self> {
        let space = *a.space();
        let length = space.dist(&a, &b)?;
        if length <= tol::POINT_EQ_EPS {
            return Err(Error::Domain("segment endpoints coincide".into()));
        }
        if space.kind() == SpaceKind::Sphere {
            let theta = length / space.radius();
            if theta >= std::f64::consts::PI - tol::ANTIPODAL_MARGIN {
                return Err(Error::NonUniqueGeodesic(
                    "segment endpoints are antipodal".into(),
                ));
            }
        }
        Ok(GeodesicSegment { a, b, length })
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn space(&self) -> &Space {
        self.a.space()
    }

    /// Point at parameter `lambda` in [0, 1].
    pub fn point_at(&self, lambda: f64) -> Result<Point> {
        self.space().geodesic_point(&self.a, &self.b, lambda)
    }

    /// Point at arclength `u` in [0, length].
    pub fn point_at_arclength(&self, u: f64) -> Result<Point> {
        if u < -tol::SEGMENT_MEMBERSHIP_EPS || u > self.length + tol::SEGMENT_MEMBERSHIP_EPS {
            return Err(Error::Domain(format!(
                "arclength {u} outside [0, {}]",
                self.length
            )));
        }
        let lambda = (u / self.length).clamp(0.0, 1.0);
        self.point_at(lambda)
    }

    /// Arc coordinate of `x`: its distance from the start endpoint.
    pub fn arc_coordinate(&self, x: &Point) -> Result<f64> {
        self.space().dist(&self.a, x)
    }

    /// Distance from `x` to this segment together with the nearest
    /// parameter and foot point. The minimizer is computed in closed form
    /// in each model space and clamped to the segment.
    pub fn nearest(&self, x: &Point) -> Result<(f64, Point, f64)> {
        let space = self.space();
        if x.space() != space {
            return Err(Error::SpaceMismatch(
                "point does not belong to the segment's space".into(),
            ));
        }
        let lam = match space.kind() {
            SpaceKind::Euclidean => {
                let a = self.a.coords();
                let b = self.b.coords();
                let mut num = 0.0;
                let mut den = 0.0;
                for ((ai, bi), xi) in a.iter().zip(b).zip(x.coords()) {
                    let e = bi - ai;
                    num += (xi - ai) * e;
                    den += e * e;
                }
                (num / den).clamp(0.0, 1.0)
            }
            SpaceKind::Sphere => {
                let (e0, w, theta) = self.circle_frame();
                // Along the great circle, cos d(t) = alpha cos t + beta
                // sin t; the free maximizer is the phase atan2(beta,
                // alpha). The circle wraps, so an out-of-range phase is
                // resolved by comparing the endpoints directly.
                let r = space.radius();
                let alpha = dot(x.coords(), &e0) / r;
                let beta = dot(x.coords(), &w) / r;
                let t_free = beta.atan2(alpha);
                let t = if (0.0..=theta).contains(&t_free) {
                    t_free
                } else {
                    let at_a = alpha;
                    let at_b = alpha * theta.cos() + beta * theta.sin();
                    if at_a >= at_b {
                        0.0
                    } else {
                        theta
                    }
                };
                t / theta
            }
            SpaceKind::Hyperbolic => {
                let (e0, w, theta) = self.circle_frame();
                // cosh d(s) = alpha cosh s - beta sinh s with alpha >= 1
                // and |beta| < alpha; the minimizer is atanh(beta/alpha).
                let r = space.radius();
                let alpha = -mink_inner(x.coords(), &e0) / r;
                let beta = mink_inner(x.coords(), &w) / r;
                let s = (beta / alpha).atanh().clamp(0.0, theta);
                s / theta
            }
        };
        let foot = self.point_at(lam)?;
        let d = space.dist(&foot, x)?;
        Ok((lam, foot, d))
    }

    /// Orthonormal frame of the geodesic's plane in the embedding, scaled
    /// to the unit model, together with the segment's subtended angle.
    /// `new()` rejects coincident and antipodal endpoints, so the frame is
    /// well defined.
    fn circle_frame(&self) -> (Vec<f64>, Vec<f64>, f64) {
        let space = self.space();
        let r = space.radius();
        let e0: Vec<f64> = self.a.coords().iter().map(|c| c / r).collect();
        let bu: Vec<f64> = self.b.coords().iter().map(|c| c / r).collect();
        let theta = self.length / r;
        let w: Vec<f64> = match space.kind() {
            SpaceKind::Sphere => {
                let c = dot(&bu, &e0);
                let raw: Vec<f64> = bu.iter().zip(&e0).map(|(bi, ei)| bi - c * ei).collect();
                let n = norm(&raw);
                raw.iter().map(|v| v / n).collect()
            }
            SpaceKind::Hyperbolic => {
                let ch = -mink_inner(&bu, &e0);
                let sh = theta.sinh();
                bu.iter().zip(&e0).map(|(bi, ei)| (bi - ch * ei) / sh).collect()
            }
            SpaceKind::Euclidean => unreachable!("frames exist only in curved models"),
        };
        (e0, w, theta)
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Minkowski form -u0*v0 + sum_{i>=1} ui*vi.
pub(crate) fn mink_inner(u: &[f64], v: &[f64]) -> f64 {
    let mut s = -u[0] * v[0];
    for i in 1..u.len() {
        s += u[i] * v[i];
    }
    s
}

/// Angle between two sphere points of equal norm, stable at both ends of
/// [0, pi]: 2*atan2(|p - q|, |p + q|).
fn sphere_angle(p: &[f64], q: &[f64]) -> f64 {
    let mut diff2 = 0.0;
    let mut sum2 = 0.0;
    for (a, b) in p.iter().zip(q) {
        diff2 += (a - b) * (a - b);
        sum2 += (a + b) * (a + b);
    }
    2.0 * diff2.sqrt().atan2(sum2.sqrt())
}

/// Standard normal deviate via Box-Muller.
pub(crate) fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    const EPS: f64 = 1e-12;

    fn sphere2() -> Space {
        Space::sphere(1.0, 2).unwrap()
    }

    fn hyp2() -> Space {
        Space::hyperbolic(-1.0, 2).unwrap()
    }

    #[test]
    fn model_diameters() {
        assert!((Curvature::new(1.0).unwrap().model_diameter() - PI).abs() < EPS);
        assert!((Curvature::new(4.0).unwrap().model_diameter() - FRAC_PI_2).abs() < EPS);
        assert_eq!(Curvature::new(0.0).unwrap().model_diameter(), f64::INFINITY);
        assert_eq!(Curvature::new(-1.0).unwrap().model_diameter(), f64::INFINITY);
    }

    #[test]
    fn euclidean_distance() {
        let e2 = Space::euclidean(2).unwrap();
        let p = e2.point(vec![0.0, 0.0]).unwrap();
        let q = e2.point(vec![3.0, 4.0]).unwrap();
        assert!((e2.dist(&p, &q).unwrap() - 5.0).abs() < EPS);
        assert_eq!(e2.dist(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn sphere_distance_quarter_turn() {
        let s = sphere2();
        let pole = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let eq = s.point(vec![0.0, 1.0, 0.0]).unwrap();
        assert!((s.dist(&pole, &eq).unwrap() - FRAC_PI_2).abs() < EPS);
    }

    #[test]
    fn hyperbolic_distance_along_ray() {
        let h = hyp2();
        let base = h.basepoint();
        for r in [0.25_f64, 1.0, 3.0] {
            let p = h.point(vec![r.cosh(), r.sinh(), 0.0]).unwrap();
            assert!((h.dist(&base, &p).unwrap() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_endpoints_exact() {
        let s = sphere2();
        let p = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let q = s.point(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(s.geodesic_point(&p, &q, 0.0).unwrap(), p);
        assert_eq!(s.geodesic_point(&p, &q, 1.0).unwrap(), q);
    }

    #[test]
    fn sphere_midpoint_of_quarter_arc() {
        let s = sphere2();
        let p = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let q = s.point(vec![0.0, 1.0, 0.0]).unwrap();
        let m = s.geodesic_point(&p, &q, 0.5).unwrap();
        let c = 0.5_f64.sqrt();
        assert!((m.coords()[0] - c).abs() < EPS);
        assert!((m.coords()[1] - c).abs() < EPS);
        assert!(m.coords()[2].abs() < EPS);
    }

    #[test]
    fn degenerate_interpolation_returns_endpoint() {
        let s = sphere2();
        let p = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        for lam in [0.0, 0.3, 1.0] {
            assert_eq!(s.geodesic_point(&p, &p, lam).unwrap(), p);
        }
    }

    #[test]
    fn antipodal_interpolation_fails() {
        let s = sphere2();
        let p = s.point(vec![1.0, 0.0, 0.0]).unwrap();
        let q = s.point(vec![-1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            s.geodesic_point(&p, &q, 0.5),
            Err(Error::NonUniqueGeodesic(_))
        ));
    }

    #[test]
    fn space_mismatch_is_rejected() {
        let e2 = Space::euclidean(2).unwrap();
        let e3 = Space::euclidean(3).unwrap();
        let p = e2.point(vec![0.0, 0.0]).unwrap();
        let q = e3.point(vec![0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(e2.dist(&p, &q), Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn invalid_points_are_rejected() {
        let s = sphere2();
        assert!(matches!(s.point(vec![1.0, 1.0, 0.0]), Err(Error::InvalidPoint(_))));
        let h = hyp2();
        assert!(matches!(h.point(vec![-1.0, 0.0, 0.0]), Err(Error::InvalidPoint(_))));
        assert!(matches!(h.point(vec![1.0, 1.0, 0.0]), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn interpolation_parameter_outside_unit_interval_fails() {
        let e1 = Space::euclidean(1).unwrap();
        let p = e1.point(vec![0.0]).unwrap();
        let q = e1.point(vec![1.0]).unwrap();
        assert!(matches!(e1.geodesic_point(&p, &q, 1.5), Err(Error::Domain(_))));
        assert!(matches!(e1.geodesic_point(&p, &q, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn segment_arclength_and_nearest() {
        let e2 = Space::euclidean(2).unwrap();
        let a = e2.point(vec![0.0, 0.0]).unwrap();
        let b = e2.point(vec![4.0, 0.0]).unwrap();
        let seg = GeodesicSegment::new(a, b).unwrap();
        assert!((seg.length() - 4.0).abs() < EPS);
        let mid = seg.point_at_arclength(2.0).unwrap();
        assert!((mid.coords()[0] - 2.0).abs() < EPS);

        let x = e2.point(vec![1.0, 3.0]).unwrap();
        let (lam, foot, d) = seg.nearest(&x).unwrap();
        assert!((lam - 0.25).abs() < 1e-9);
        assert!((foot.coords()[0] - 1.0).abs() < 1e-9);
        assert!((d - 3.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_segment_is_rejected() {
        let e2 = Space::euclidean(2).unwrap();
        let a = e2.point(vec![1.0, 1.0]).unwrap();
        assert!(GeodesicSegment::new(a.clone(), a).is_err());
    }

    #[test]
    fn exp_map_inverts_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for space in [Space::euclidean(3).unwrap(), sphere2(), hyp2()] {
            let base = space.basepoint();
            for _ in 0..50 {
                let dir = space.random_unit_tangent(&base, &mut rng);
                let s = rng.gen_range(0.0..1.3);
                let p = space.exp_point(&base, &dir, s).unwrap();
                assert!((space.dist(&base, &p).unwrap() - s).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn sampled_ball_points_stay_in_ball() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for space in [Space::euclidean(2).unwrap(), sphere2(), hyp2()] {
            let center = space.basepoint();
            for _ in 0..100 {
                let p = space.sample_ball(&center, 0.8, &mut rng).unwrap();
                assert!(space.dist(&center, &p).unwrap() <= 0.8 + 1e-9);
            }
        }
    }
}
