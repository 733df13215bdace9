//! One-parameter families of order-preserving maps with sampled axiom
//! validation.
//!
//! A [`SemigroupSpec`] bundles a space, an order, an index set (continuous
//! half-line or a discrete lattice `{0, t0, 2*t0, ...}`), an invariant
//! domain, and a closed-form flow from the instance gallery:
//!
//! * `diagonal_flow` — per-coordinate exponential decay toward an attractor
//!   on a Euclidean space;
//! * `arc_drift` — constant-speed drift along a geodesic segment, clamped
//!   at the far endpoint;
//! * `translation` — the shift `x + t` on a Euclidean space; passes every
//!   axiom yet has no fixed point;
//! * `expansive_flow` — the dilation `(1 + t) x`, kept as a negative
//!   fixture: it breaks the nonexpansiveness axiom (S5).
//!
//! `validate_semigroup` samples five axioms: identity at `t = 0` (S1), the
//! flow property (S2), orbit continuity (S3, continuous index sets only),
//! order preservation on comparable pairs (S4), and L-nonexpansiveness on
//! comparable pairs (S5).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{GeodesicSegment, Point, Space, SpaceKind};
use crate::numfmt::{fmt_coords, fmt_g17};
use crate::order::{OrderKind, OrderStructure};
use crate::report::{CheckAccumulator, ValidationReport};
use crate::tol;

/// The time domain of a semigroup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexSet {
    /// The lattice `{0, t0, 2*t0, ...}`.
    Discrete { t0: f64 },
    /// The half-line `[0, inf)`.
    Continuous,
}

impl IndexSet {
    pub fn discrete(t0: f64) -> Result<Self> {
        if !(t0 > 0.0) || !t0.is_finite() {
            return Err(Error::Domain(format!("lattice step must be positive, got {t0}")));
        }
        Ok(IndexSet::Discrete { t0 })
    }

    /// Whether `t` belongs to the index set. Lattice membership is decided
    /// relative to the step: `|t - round(t/t0)*t0| <= 1e-9 * t0`.
    pub fn contains(&self, t: f64) -> bool {
        if !t.is_finite() || t < 0.0 {
            return false;
        }
        match self {
            IndexSet::Continuous => true,
            IndexSet::Discrete { t0 } => {
                let k = (t / t0).round();
                (t - k * t0).abs() <= tol::DISCRETE_INDEX_EPS * t0
            }
        }
    }
}

/// Invariant domain descriptor for a semigroup.
#[derive(Debug, Clone)]
pub enum Domain {
    Ball { center: Point, radius: f64 },
    Segment(GeodesicSegment),
    /// The whole space; used by the translation and dilation fixtures,
    /// which preserve no bounded set.
    Unbounded,
}

impl Domain {
    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Ball { radius, .. } => 2.0 * radius,
            Domain::Segment(seg) => seg.length(),
            Domain::Unbounded => f64::INFINITY,
        }
    }

    /// Draws a point of the domain. Unbounded domains sample a reference
    /// ball of radius 3 around the basepoint.
    pub fn sample<R: Rng>(&self, space: &Space, rng: &mut R) -> Result<Point> {
        match self {
            Domain::Ball { center, radius } => space.sample_ball(center, *radius, rng),
            Domain::Segment(seg) => seg.point_at(rng.gen()),
            Domain::Unbounded => space.sample_ball(&space.basepoint(), 3.0, rng),
        }
    }

    /// Ball parameters used when sampling comparable pairs.
    fn pair_region(&self, space: &Space) -> (Point, f64) {
        match self {
            Domain::Ball { center, radius } => (center.clone(), *radius),
            Domain::Segment(seg) => (seg.a().clone(), seg.length()),
            Domain::Unbounded => (space.basepoint(), 3.0),
        }
    }
}

/// Closed-form instance gallery.
#[derive(Debug, Clone)]
pub enum Flow {
    Diagonal { rates: Vec<f64>, attractor: Point },
    ArcDrift { segment: GeodesicSegment, speed: f64 },
    Translation,
    Expansive,
}

impl Flow {
    pub fn name(&self) -> &'static str {
        match self {
            Flow::Diagonal { .. } => "diagonal_flow",
            Flow::ArcDrift { .. } => "arc_drift",
            Flow::Translation => "translation",
            Flow::Expansive => "expansive_flow",
        }
    }
}

/// Description of the common fixed-point set of a flow.
#[derive(Debug, Clone)]
pub enum FixDescriptor {
    /// Coordinates with positive rate are pinned to the attractor; the
    /// remaining coordinates are free.
    Affine { base: Point, free: Vec<bool> },
    /// A single fixed point.
    Point(Point),
    /// No fixed point exists.
    Empty,
}

impl FixDescriptor {
    /// Draws a fixed point inside the domain, or `None` when the set is
    /// empty.
    pub fn sample_fixed<R: Rng>(&self, sg: &SemigroupSpec, rng: &mut R) -> Result<Option<Point>> {
        match self {
            FixDescriptor::Empty => Ok(None),
            FixDescriptor::Point(p) => Ok(Some(p.clone())),
            FixDescriptor::Affine { base, free } => {
                for _ in 0..32 {
                    let z = sg.domain.sample(&sg.space, rng)?;
                    let coords: Vec<f64> = base
                        .coords()
                        .iter()
                        .zip(z.coords())
                        .zip(free)
                        .map(|((b, zi), f)| if *f { *zi } else { *b })
                        .collect();
                    let candidate = sg.space.point(coords)?;
                    if let Domain::Ball { center, radius } = &sg.domain {
                        if sg.space.dist(center, &candidate)? <= *radius + tol::SEGMENT_MEMBERSHIP_EPS
                        {
                            return Ok(Some(candidate));
                        }
                    } else {
                        return Ok(Some(candidate));
                    }
                }
                Ok(Some(base.clone()))
            }
        }
    }
}

/// A validated semigroup instance: space, order, index set, flow, invariant
/// domain, and the Lipschitz constant promised on comparable pairs.
#[derive(Debug, Clone)]
pub struct SemigroupSpec {
    space: Space,
    order: OrderStructure,
    index: IndexSet,
    flow: Flow,
    domain: Domain,
    lipschitz: f64,
}

impl SemigroupSpec {
    /// Per-coordinate exponential decay toward `attractor` with the given
    /// nonnegative rates, on a Euclidean space.
    pub fn diagonal_flow(
        order: OrderStructure,
        index: IndexSet,
        rates: Vec<f64>,
        attractor: Point,
        domain: Domain,
    ) -> Result<Self> {
        let space = *order.space();
        if space.kind() != SpaceKind::Euclidean {
            return Err(Error::Config("diagonal_flow requires a euclidean space".into()));
        }
        if attractor.space() != &space {
            return Err(Error::SpaceMismatch("attractor space mismatch".into()));
        }
        if rates.len() != space.dim() {
            return Err(Error::Config(format!(
                "expected {} rates, got {}",
                space.dim(),
                rates.len()
            )));
        }
        if rates.iter().any(|r| !(*r >= 0.0) || !r.is_finite()) {
            return Err(Error::Config("rates must be finite and >= 0".into()));
        }
        if let Domain::Ball { center, radius } = &domain {
            if space.dist(center, &attractor)? > *radius + tol::SEGMENT_MEMBERSHIP_EPS {
                return Err(Error::Config("attractor must lie inside the domain ball".into()));
            }
        }
        Ok(SemigroupSpec {
            space,
            order,
            index,
            flow: Flow::Diagonal { rates, attractor },
            domain,
            lipschitz: 1.0,
        })
    }

    /// Constant-speed drift along `segment` toward its far endpoint. The
    /// order must be the arc order on the same oriented segment.
    pub fn arc_drift(
        order: OrderStructure,
        index: IndexSet,
        segment: GeodesicSegment,
        speed: f64,
    ) -> Result<Self> {
        if !(speed > 0.0) || !speed.is_finite() {
            return Err(Error::Config(format!("drift speed must be positive, got {speed}")));
        }
        let space = *segment.space();
        match order.kind() {
            OrderKind::ArcOrder(oseg) => {
                let same = space.dist(oseg.a(), segment.a())? <= tol::POINT_EQ_EPS
                    && space.dist(oseg.b(), segment.b())? <= tol::POINT_EQ_EPS;
                if !same {
                    return Err(Error::Config(
                        "arc_drift requires the arc order on its own segment".into(),
                    ));
                }
            }
            _ => {
                return Err(Error::Config("arc_drift requires an arc order".into()));
            }
        }
        Ok(SemigroupSpec {
            space,
            order,
            index,
            domain: Domain::Segment(segment.clone()),
            flow: Flow::ArcDrift { segment, speed },
            lipschitz: 1.0,
        })
    }

    /// The shift `x + t` in every coordinate on a Euclidean space.
    pub fn translation(order: OrderStructure, index: IndexSet) -> Result<Self> {
        let space = *order.space();
        if space.kind() != SpaceKind::Euclidean {
            return Err(Error::Config("translation requires a euclidean space".into()));
        }
        Ok(SemigroupSpec {
            space,
            order,
            index,
            flow: Flow::Translation,
            domain: Domain::Unbounded,
            lipschitz: 1.0,
        })
    }

    /// The dilation `(1 + t) x` on a Euclidean space. Negative fixture: the
    /// claimed Lipschitz constant 1 fails on comparable pairs.
    pub fn expansive_flow(order: OrderStructure, index: IndexSet) -> Result<Self> {
        let space = *order.space();
        if space.kind() != SpaceKind::Euclidean {
            return Err(Error::Config("expansive_flow requires a euclidean space".into()));
        }
        Ok(SemigroupSpec {
            space,
            order,
            index,
            flow: Flow::Expansive,
            domain: Domain::Unbounded,
            lipschitz: 1.0,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn order(&self) -> &OrderStructure {
        &self.order
    }

    pub fn index(&self) -> &IndexSet {
        &self.index
    }

    pub fn flow(&self) -> &Flow {
        &self.flow
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Applies `T_t` to `x`. `t` must belong to the index set; `t = 0`
    /// returns `x` unchanged.
    pub fn apply(&self, t: f64, x: &Point) -> Result<Point> {
        if !self.index.contains(t) {
            return Err(Error::Domain(format!("time {t} is not in the index set")));
        }
        if x.space() != &self.space {
            return Err(Error::SpaceMismatch("point does not belong to the flow's space".into()));
        }
        if t == 0.0 {
            return Ok(x.clone());
        }
        match &self.flow {
            Flow::Diagonal { rates, attractor } => {
                let coords: Vec<f64> = x
                    .coords()
                    .iter()
                    .zip(attractor.coords())
                    .zip(rates)
                    .map(|((xi, ci), ai)| {
                        let w = (-ai * t).exp();
                        w * xi + (1.0 - w) * ci
                    })
                    .collect();
                self.space.point(coords)
            }
            Flow::ArcDrift { segment, speed } => {
                let (_, _, d) = segment.nearest(x)?;
                if d > tol::SEGMENT_MEMBERSHIP_EPS {
                    return Err(Error::OffSegment(format!(
                        "point {} lies {d} from the drift segment",
                        fmt_coords(x.coords())
                    )));
                }
                let u = segment.arc_coordinate(x)?;
                let shifted = (u + speed * t).min(segment.length());
                segment.point_at_arclength(shifted.min(segment.length()))
            }
            Flow::Translation => {
                let coords = x.coords().iter().map(|c| c + t).collect();
                self.space.point(coords)
            }
            Flow::Expansive => {
                let coords = x.coords().iter().map(|c| (1.0 + t) * c).collect();
                self.space.point(coords)
            }
        }
    }

    /// Displacement `dist(x, T_s x)`.
    pub fn residual(&self, s: f64, x: &Point) -> Result<f64> {
        let moved = self.apply(s, x)?;
        self.space.dist(x, &moved)
    }

    /// Whether `x0 <= T_t x0` for every probe time.
    pub fn seed_admissible(&self, x0: &Point, probes: &[f64]) -> Result<bool> {
        for &t in probes {
            let moved = self.apply(t, x0)?;
            if !self.order.leq(x0, &moved)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closed-form description of the common fixed-point set.
    pub fn fix_descriptor(&self) -> FixDescriptor {
        match &self.flow {
            Flow::Diagonal { rates, attractor } => FixDescriptor::Affine {
                base: attractor.clone(),
                free: rates.iter().map(|r| *r == 0.0).collect(),
            },
            Flow::ArcDrift { segment, .. } => FixDescriptor::Point(segment.b().clone()),
            Flow::Translation => FixDescriptor::Empty,
            Flow::Expansive => FixDescriptor::Point(
                self.space.basepoint(),
            ),
        }
    }

    fn sample_time<R: Rng>(&self, rng: &mut R) -> f64 {
        match self.index {
            IndexSet::Continuous => rng.gen_range(0.0..4.0),
            IndexSet::Discrete { t0 } => rng.gen_range(0..=8) as f64 * t0,
        }
    }
}

/// Samples the five semigroup axioms and reports per-axiom outcomes.
pub fn validate_semigroup(
    sg: &SemigroupSpec,
    n_samples: usize,
    seed: u64,
) -> Result<ValidationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ValidationReport::new(format!("semigroup axioms: {}", sg.flow().name()));
    let space = &sg.space;

    // S1: T_0 is the identity, exactly.
    let mut acc = CheckAccumulator::new();
    for _ in 0..n_samples {
        let x = sg.domain.sample(space, &mut rng)?;
        let y = sg.apply(0.0, &x)?;
        let ok = x.coords() == y.coords();
        acc.record(ok, || format!("x={}", fmt_coords(x.coords())));
    }
    acc.finish(&mut report, "S1 identity at t=0");

    // S2: T_{s+t} = T_s . T_t on sampled times.
    let mut acc = CheckAccumulator::new();
    for _ in 0..n_samples {
        let x = sg.domain.sample(space, &mut rng)?;
        let (s, t, st) = match sg.index {
            IndexSet::Continuous => {
                let s = rng.gen_range(0.0..2.0);
                let t = rng.gen_range(0.0..2.0);
                (s, t, s + t)
            }
            IndexSet::Discrete { t0 } => {
                let i: u32 = rng.gen_range(0..=6);
                let j: u32 = rng.gen_range(0..=6);
                (i as f64 * t0, j as f64 * t0, (i + j) as f64 * t0)
            }
        };
        let joint = sg.apply(st, &x)?;
        let composed = sg.apply(s, &sg.apply(t, &x)?)?;
        let gap = space.dist(&joint, &composed)?;
        acc.record(gap <= tol::AXIOM_EPS, || {
            format!(
                "s={}, t={}, x={}, gap={}",
                fmt_g17(s),
                fmt_g17(t),
                fmt_coords(x.coords()),
                fmt_g17(gap)
            )
        });
    }
    acc.finish(&mut report, "S2 flow property");

    // S3: orbit continuity. On a dyadic step grid the orbit displacement
    // must shrink toward zero; vacuous for discrete index sets.
    match sg.index {
        IndexSet::Discrete { .. } => {
            report.push("S3 orbit continuity (vacuous on discrete index)", 0, 0, None);
        }
        IndexSet::Continuous => {
            let mut acc = CheckAccumulator::new();
            let per_probe = n_samples.clamp(1, 64);
            for _ in 0..per_probe {
                let x = sg.domain.sample(space, &mut rng)?;
                let t = rng.gen_range(0.0..2.0);
                let at_t = sg.apply(t, &x)?;
                let v0 = space.dist(&sg.apply(t + 1.0, &x)?, &at_t)?;
                let v_last = space.dist(&sg.apply(t + 2.0_f64.powi(-30), &x)?, &at_t)?;
                let ok = v_last <= (0.02 * v0).max(1e-8);
                acc.record(ok, || {
                    format!(
                        "t={}, x={}, v0={}, v_last={}",
                        fmt_g17(t),
                        fmt_coords(x.coords()),
                        fmt_g17(v0),
                        fmt_g17(v_last)
                    )
                });
            }
            acc.finish(&mut report, "S3 orbit continuity");
        }
    }

    // S4: order preservation on comparable pairs.
    let (pair_center, pair_radius) = sg.domain.pair_region(space);
    let mut acc = CheckAccumulator::new();
    for _ in 0..n_samples {
        let (x, y) = sg.order.sample_ordered_pair(&pair_center, pair_radius, &mut rng)?;
        let t = sg.sample_time(&mut rng);
        let tx = sg.apply(t, &x)?;
        let ty = sg.apply(t, &y)?;
        let ok = sg.order.leq(&tx, &ty)?;
        acc.record(ok, || {
            format!(
                "t={}, x={}, y={}",
                fmt_g17(t),
                fmt_coords(x.coords()),
                fmt_coords(y.coords())
            )
        });
    }
    acc.finish(&mut report, "S4 order preservation");

    // S5: L-nonexpansiveness on comparable pairs.
    let mut acc = CheckAccumulator::new();
    for _ in 0..n_samples {
        let (x, y) = sg.order.sample_ordered_pair(&pair_center, pair_radius, &mut rng)?;
        let t = sg.sample_time(&mut rng);
        let lhs = space.dist(&sg.apply(t, &x)?, &sg.apply(t, &y)?)?;
        let rhs = sg.lipschitz * space.dist(&x, &y)? + tol::AXIOM_EPS;
        acc.record(lhs <= rhs, || {
            format!(
                "t={}, x={}, y={}, lhs={}, rhs={}",
                fmt_g17(t),
                fmt_coords(x.coords()),
                fmt_coords(y.coords()),
                fmt_g17(lhs),
                fmt_g17(rhs)
            )
        });
    }
    acc.finish(&mut report, "S5 nonexpansive on comparable pairs");

    Ok(report)
}
