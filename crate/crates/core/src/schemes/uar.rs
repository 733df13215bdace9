//! Sampled asymptotic-regularity diagnostics.
//!
//! For a step `h` and a grid of times `t`, the profile records the sampled
//! supremum of `dist(T_t y, T_h T_t y)` over domain points `y`. A profile
//! that decays along the grid indicates uniform asymptotic regularity; a
//! flat positive profile rules it out.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::semigroup::SemigroupSpec;
use crate::tol;

/// Sampled regularity profile: `rows[i] = (t_i, sup_residual_i)`.
#[derive(Debug, Clone)]
pub struct UarProfile {
    pub h: f64,
    pub rows: Vec<(f64, f64)>,
}

impl UarProfile {
    /// Decay verdict: the tail supremum must fall to 5% of the head (or
    /// to the absolute floor 1e-9).
    pub fn indicates_uniform_regularity(&self) -> bool {
        match (self.rows.first(), self.rows.last()) {
            (Some((_, v0)), Some((_, v1))) => *v1 <= (0.05 * v0).max(1e-9),
            _ => false,
        }
    }

    pub fn sup_at(&self, t: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|(ti, _)| (ti - t).abs() <= tol::DISCRETE_INDEX_EPS * (1.0 + t.abs()))
            .map(|(_, v)| *v)
    }
}

/// Estimates the regularity profile of `sg` for step `h` over `t_grid`,
/// sampling `n_points` domain points per grid time.
pub fn uar_estimate(
    sg: &SemigroupSpec,
    h: f64,
    t_grid: &[f64],
    n_points: usize,
    seed: u64,
) -> Result<UarProfile> {
    if !(h > 0.0) || !sg.index().contains(h) {
        return Err(Error::Domain(format!(
            "step {h} must be positive and lie in the index set"
        )));
    }
    if t_grid.is_empty() || n_points == 0 {
        return Err(Error::Config("the time grid and sample count must be nonempty".into()));
    }
    for &t in t_grid {
        if !sg.index().contains(t) {
            return Err(Error::Domain(format!("grid time {t} is not in the index set")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = sg.space();
    let mut rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let mut sup = 0.0f64;
        for _ in 0..n_points {
            let y = sg.domain().sample(space, &mut rng)?;
            let at_t = sg.apply(t, &y)?;
            let stepped = sg.apply(h, &at_t)?;
            sup = sup.max(space.dist(&at_t, &stepped)?);
        }
        rows.push((t, sup));
    }
    Ok(UarProfile { h, rows })
}

/// Whether `q` is fixed to within the displacement tolerance at every
/// probe time.
pub fn ar_fix_check(sg: &SemigroupSpec, q: &Point, probes: &[f64]) -> Result<bool> {
    for &s in probes {
        if sg.residual(s, q)? > tol::AR_FIX_EPS {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Space;
    use crate::order::OrderStructure;
    use crate::semigroup::{Domain, IndexSet};

    fn decay_on_interval() -> SemigroupSpec {
        let space = Space::euclidean(1).unwrap();
        let order = OrderStructure::coordinatewise_cone(space).unwrap();
        SemigroupSpec::diagonal_flow(
            order,
            IndexSet::Continuous,
            vec![1.0],
            space.point(vec![0.0]).unwrap(),
            Domain::Ball { center: space.point(vec![-0.5]).unwrap(), radius: 0.5 },
        )
        .unwrap()
    }

    #[test]
    fn decay_profile_shrinks_and_stays_below_envelope() {
        let sg = decay_on_interval();
        let grid = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        let profile = uar_estimate(&sg, 1.0, &grid, 800, 11).unwrap();
        assert!(profile.indicates_uniform_regularity());
        // Exact envelope: sup over [-1, 0] of e^{-t} (1 - e^{-h}) |y|.
        for &(t, v) in &profile.rows {
            let envelope = (-t).exp() * (1.0 - (-1.0_f64).exp());
            assert!(v <= envelope + 1e-12, "t={t}");
            assert!(v >= 0.9 * envelope, "t={t}");
        }
    }

    #[test]
    fn translation_profile_is_flat() {
        let space = Space::euclidean(1).unwrap();
        let order = OrderStructure::coordinatewise_cone(space).unwrap();
        let sg = SemigroupSpec::translation(order, IndexSet::Continuous).unwrap();
        let grid = [0.0, 2.0, 4.0, 8.0];
        let profile = uar_estimate(&sg, 0.5, &grid, 50, 12).unwrap();
        assert!(!profile.indicates_uniform_regularity());
        for &(_, v) in &profile.rows {
            assert!((v - 0.5).abs() <= 1e-12);
        }
    }

    #[test]
    fn fix_check_accepts_only_fixed_points() {
        let sg = decay_on_interval();
        let space = sg.space();
        let fixed = space.point(vec![0.0]).unwrap();
        let moving = space.point(vec![-0.3]).unwrap();
        assert!(ar_fix_check(&sg, &fixed, &[0.5, 1.0, 2.0]).unwrap());
        assert!(!ar_fix_check(&sg, &moving, &[0.5, 1.0, 2.0]).unwrap());
    }

    #[test]
    fn grid_times_must_lie_in_the_index_set() {
        let space = Space::euclidean(1).unwrap();
        let order = OrderStructure::coordinatewise_cone(space).unwrap();
        let sg = SemigroupSpec::diagonal_flow(
            order,
            IndexSet::discrete(1.0).unwrap(),
            vec![1.0],
            space.point(vec![0.0]).unwrap(),
            Domain::Ball { center: space.point(vec![-0.5]).unwrap(), radius: 0.5 },
        )
        .unwrap();
        assert!(uar_estimate(&sg, 1.0, &[0.0, 1.5], 10, 1).is_err());
        assert!(uar_estimate(&sg, 0.5, &[0.0, 1.0], 10, 1).is_err());
    }
}
