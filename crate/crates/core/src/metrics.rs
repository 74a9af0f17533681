//! Quality indicators for a final archive, measured against a per-instance
//! reference front.
//!
//! Hypervolume, spread and the IGD+ column of [`MetricsRow`] work in
//! normalized objective space: each objective is mapped through
//! `(v - ideal) / (nadir - ideal)` using the reference front's bounds, with a
//! degenerate range mapped to 0.

use crate::error::{Error, Result};
use crate::hypervolume::{hypervolume_run, ReferencePoint};
use crate::objective::{componentwise, pareto_filter, ObjectiveVector};

/// Reference-point coordinate of the normalized hypervolume.
pub const HV_REFERENCE: f64 = 1.1;

#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceSet {
    pub points: Vec<ObjectiveVector>,
    pub ideal: ObjectiveVector,
    pub nadir_pt: ObjectiveVector,
}

impl ReferenceSet {
    /// Filters `points` to their non-dominated subset.
    pub fn new(points: &[ObjectiveVector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let points = pareto_filter(points)?;
        let ideal = componentwise(&points, f64::min);
        let nadir_pt = componentwise(&points, f64::max);
        Ok(ReferenceSet {
            points,
            ideal,
            nadir_pt,
        })
    }

    pub fn num_objectives(&self) -> usize {
        self.ideal.len()
    }

    pub fn normalize(&self, v: &ObjectiveVector) -> Vec<f64> {
        v.values()
            .iter()
            .zip(self.ideal.values().iter().zip(self.nadir_pt.values()))
            .map(|(&x, (&lo, &hi))| if hi > lo { (x - lo) / (hi - lo) } else { 0.0 })
            .collect()
    }

    fn check_front(&self, front: &[ObjectiveVector]) -> Result<()> {
        if front.is_empty() {
            return Err(Error::EmptySet);
        }
        for p in front {
            if p.len() != self.num_objectives() {
                return Err(Error::Dimension {
                    expected: self.num_objectives(),
                    found: p.len(),
                });
            }
        }
        Ok(())
    }
}

/// Union of every run's front on one instance, filtered.
pub fn build_reference_set<'a, I>(fronts: I) -> Result<ReferenceSet>
where
    I: IntoIterator<Item = &'a [ObjectiveVector]>,
{
    let all: Vec<ObjectiveVector> = fronts.into_iter().flat_map(|f| f.iter().cloned()).collect();
    ReferenceSet::new(&all)
}

/// Final archive size as a percentage of capacity.
pub fn fullness(size: usize, capacity: usize) -> Result<f64> {
    if capacity == 0 {
        return Err(Error::Config("capacity must be positive".into()));
    }
    Ok(100.0 * size as f64 / capacity as f64)
}

fn d_plus(a: &[f64], r: &[f64]) -> f64 {
    a.iter()
        .zip(r)
        .map(|(x, y)| (x - y).max(0.0).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn igd_plus_raw(front: &[Vec<f64>], reference: &[Vec<f64>]) -> f64 {
    let total: f64 = reference
        .iter()
        .map(|r| front.iter().map(|a| d_plus(a, r)).fold(f64::INFINITY, f64::min))
        .sum();
    total / reference.len() as f64
}

/// Mean over reference points of the clamped distance to the nearest front
/// point, in raw objective space.
pub fn igd_plus(front: &[ObjectiveVector], reference: &ReferenceSet) -> Result<f64> {
    reference.check_front(front)?;
    let f: Vec<Vec<f64>> = front.iter().map(|p| p.values().to_vec()).collect();
    let r: Vec<Vec<f64>> = reference.points.iter().map(|p| p.values().to_vec()).collect();
    Ok(igd_plus_raw(&f, &r))
}

/// IGD+ after normalizing front and reference with the reference bounds.
pub fn normalized_igd_plus(front: &[ObjectiveVector], reference: &ReferenceSet) -> Result<f64> {
    reference.check_front(front)?;
    let f: Vec<Vec<f64>> = front.iter().map(|p| reference.normalize(p)).collect();
    let r: Vec<Vec<f64>> = reference.points.iter().map(|p| reference.normalize(p)).collect();
    Ok(igd_plus_raw(&f, &r))
}

/// Hypervolume of the normalized front (clamped to `[0, 1.1]`) against the
/// point `(1.1, ..., 1.1)`, divided by `1.1^m`.
pub fn normalized_hypervolume(front: &[ObjectiveVector], reference: &ReferenceSet) -> Result<f64> {
    reference.check_front(front)?;
    let m = reference.num_objectives();
    let points: Vec<Vec<f64>> = front
        .iter()
        .map(|p| {
            reference
                .normalize(p)
                .into_iter()
                .map(|x| x.clamp(0.0, HV_REFERENCE))
                .collect::<Vec<f64>>()
        })
        .filter(|p: &Vec<f64>| p.iter().all(|&x| x < HV_REFERENCE))
        .collect();
    if points.is_empty() {
        return Ok(0.0);
    }
    let slices: Vec<&[f64]> = points.iter().map(|p| p.as_slice()).collect();
    let r = ReferencePoint::new(vec![HV_REFERENCE; m]);
    let volume = hypervolume_run(&slices, &r)?.volume;
    Ok(volume / HV_REFERENCE.powi(m as i32))
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Two-objective spread
/// `(d_f + d_l + Σ|d_i - mean(d)|) / (d_f + d_l + (N - 1) mean(d))` in
/// normalized space, with `d_i` the gaps between consecutive front points
/// sorted on the first objective and `d_f`, `d_l` the distances from the
/// front's ends to the reference front's ends.
///
/// A single-point front scores 1. A zero denominator (every point and both
/// ends coincide) scores 0.
pub fn spread(front: &[ObjectiveVector], reference: &ReferenceSet) -> Result<f64> {
    reference.check_front(front)?;
    if reference.num_objectives() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: reference.num_objectives(),
        });
    }
    if front.len() == 1 {
        return Ok(1.0);
    }
    let by_first = |a: &Vec<f64>, b: &Vec<f64>| a[0].total_cmp(&b[0]).then(b[1].total_cmp(&a[1]));
    let mut pts: Vec<Vec<f64>> = front.iter().map(|p| reference.normalize(p)).collect();
    pts.sort_by(by_first);
    let mut refs: Vec<Vec<f64>> = reference.points.iter().map(|p| reference.normalize(p)).collect();
    refs.sort_by(by_first);

    let d_f = euclid(&pts[0], &refs[0]);
    let d_l = euclid(&pts[pts.len() - 1], &refs[refs.len() - 1]);
    let gaps: Vec<f64> = pts.windows(2).map(|w| euclid(&w[0], &w[1])).collect();
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let deviation: f64 = gaps.iter().map(|d| (d - mean).abs()).sum();
    let denominator = d_f + d_l + gaps.len() as f64 * mean;
    if denominator == 0.0 {
        return Ok(0.0);
    }
    Ok((d_f + d_l + deviation) / denominator)
}

/// One run's indicator values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricsRow {
    pub fullness_pct: f64,
    pub spread: f64,
    pub hv_norm: f64,
    pub igd_plus: f64,
}

impl MetricsRow {
    pub fn compute(front: &[ObjectiveVector], capacity: usize, reference: &ReferenceSet) -> Result<Self> {
        Ok(MetricsRow {
            fullness_pct: fullness(front.len(), capacity)?,
            spread: spread(front, reference)?,
            hv_norm: normalized_hypervolume(front, reference)?,
            igd_plus: normalized_igd_plus(front, reference)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ovs(points: &[[f64; 2]]) -> Vec<ObjectiveVector> {
        points.iter().map(|p| ObjectiveVector::from(*p)).collect()
    }

    #[test]
    fn fullness_examples() {
        assert_eq!(fullness(50, 50).unwrap(), 100.0);
        assert_eq!(fullness(0, 50).unwrap(), 0.0);
        assert_eq!(fullness(35, 50).unwrap(), 70.0);
        assert!(fullness(1, 0).is_err());
    }

    #[test]
    fn igd_plus_examples() {
        let r = ReferenceSet::new(&ovs(&[[0., 2.], [1., 1.], [2., 0.]])).unwrap();
        assert_eq!(igd_plus(&r.points, &r).unwrap(), 0.0);
        let single = ReferenceSet::new(&ovs(&[[0., 0.]])).unwrap();
        assert!((igd_plus(&ovs(&[[1., 1.]]), &single).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let one = ReferenceSet::new(&ovs(&[[1., 1.]])).unwrap();
        assert_eq!(igd_plus(&ovs(&[[0., 2.]]), &one).unwrap(), 1.0);
        assert!(matches!(igd_plus(&[], &one), Err(Error::EmptySet)));
    }

    #[test]
    fn normalized_hypervolume_examples() {
        let r = ReferenceSet::new(&ovs(&[[0., 10.], [4., 4.], [10., 0.]])).unwrap();
        // a point at the ideal covers the whole reference box
        assert!((normalized_hypervolume(&ovs(&[[0., 0.]]), &r).unwrap() - 1.0).abs() < 1e-12);
        let at_nadir = normalized_hypervolume(&ovs(&[[10., 10.]]), &r).unwrap();
        assert!((at_nadir - (0.1f64 / 1.1).powi(2)).abs() < 1e-12);
        assert!((at_nadir - 0.008264462809917).abs() < 1e-12);
        // beyond the clamp contributes nothing
        assert_eq!(normalized_hypervolume(&ovs(&[[20., 20.]]), &r).unwrap(), 0.0);
    }

    #[test]
    fn spread_examples() {
        let even = ovs(&[[0., 3.], [1., 2.], [2., 1.], [3., 0.]]);
        let r = ReferenceSet::new(&even).unwrap();
        assert!(spread(&even, &r).unwrap().abs() < 1e-12);
        let ends = ovs(&[[0., 3.], [3., 0.]]);
        assert_eq!(spread(&ends, &r).unwrap(), 0.0);
        assert_eq!(spread(&ovs(&[[1., 2.]]), &r).unwrap(), 1.0);
        // normalized gaps sqrt(.02), sqrt(.98), sqrt(.08)
        let uneven = ovs(&[[0., 3.], [0.3, 2.7], [2.4, 0.6], [3., 0.]]);
        let s = spread(&uneven, &r).unwrap();
        assert!((s - 0.733_333_333_333_333).abs() < 1e-9, "{s}");
    }

    #[test]
    fn reference_set_from_runs() {
        let a = ovs(&[[0., 5.], [5., 0.], [3., 3.]]);
        let b = ovs(&[[2., 2.], [6., 6.]]);
        let r = build_reference_set([a.as_slice(), b.as_slice()]).unwrap();
        assert_eq!(r.points, ovs(&[[0., 5.], [5., 0.], [2., 2.]]));
        assert_eq!(r.ideal, ObjectiveVector::from([0., 0.]));
        assert_eq!(r.nadir_pt, ObjectiveVector::from([5., 5.]));
        let alone = build_reference_set([a.as_slice()]).unwrap();
        assert_eq!(alone.points, a);
    }

    fn front_strategy() -> impl Strategy<Value = Vec<ObjectiveVector>> {
        prop::collection::vec((0.0f64..10.0, 0.0f64..10.0), 1..12)
            .prop_map(|v| v.into_iter().map(|(a, b)| ObjectiveVector::from([a, b])).collect())
    }

    proptest! {
        #[test]
        fn metrics_are_order_invariant_and_monotone(front in front_strategy(), extra in (0.0f64..10.0, 0.0f64..10.0), refpts in front_strategy()) {
            let r = ReferenceSet::new(&refpts).unwrap();
            let mut rev = front.clone();
            rev.reverse();
            prop_assert_eq!(igd_plus(&front, &r).unwrap(), igd_plus(&rev, &r).unwrap());
            let hv = normalized_hypervolume(&front, &r).unwrap();
            prop_assert!((hv - normalized_hypervolume(&rev, &r).unwrap()).abs() < 1e-12);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&hv));
            prop_assert!((spread(&front, &r).unwrap() - spread(&rev, &r).unwrap()).abs() < 1e-12);

            let mut more = front.clone();
            more.push(ObjectiveVector::from([extra.0, extra.1]));
            prop_assert!(igd_plus(&more, &r).unwrap() <= igd_plus(&front, &r).unwrap());
            prop_assert!(normalized_igd_plus(&more, &r).unwrap() <= normalized_igd_plus(&front, &r).unwrap());
            prop_assert!(normalized_hypervolume(&more, &r).unwrap() >= hv - 1e-12);
        }
    }
}
