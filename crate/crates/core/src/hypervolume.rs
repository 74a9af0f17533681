//! Exact hypervolume by Fleischer's stack algorithm.
//!
//! The dominated region of a point set is peeled off one hyper-rectangle at a
//! time. The point on top of a last-in-first-out stack is popped; the box
//! between it and the next-worse coordinate value in every axis is dominated
//! by that point alone, so its volume is added to the running total. The rest
//! of the popped point's region is covered by `m` spawned points, each a copy
//! with one coordinate moved to that next-worse value. A spawn is pushed only
//! if no stacked point weakly dominates it and it does not touch the
//! reference point in the moved coordinate.
//!
//! Running until the stack is empty yields the hypervolume. Pushing one extra
//! point on top of the others and stopping as soon as the depth falls back to
//! its initial value yields that point's exclusive contribution.

use crate::error::{Error, Result};
use crate::objective::{nondominated_indices, weakly_dominates_slice, ObjectiveVector};

/// Bounding point of a hypervolume computation. Every measured point must be
/// strictly better than it in every objective.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferencePoint(pub ObjectiveVector);

impl ReferencePoint {
    pub fn new(values: Vec<f64>) -> Self {
        ReferencePoint(ObjectiveVector::new(values))
    }

    pub fn values(&self) -> &[f64] {
        self.0.values()
    }

    /// Componentwise maximum of `points`, pushed outward by `margin` times the
    /// per-objective range. A degenerate range is pushed out by 1.
    pub fn offset_nadir(points: &[&[f64]], margin: f64) -> Self {
        let m = points[0].len();
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for p in points {
            for i in 0..m {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        let values = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| {
                let range = h - l;
                if range > 0.0 {
                    h + margin * range
                } else {
                    h + 1.0
                }
            })
            .collect();
        ReferencePoint::new(values)
    }
}

/// The LIFO stack together with the volume removed so far.
#[derive(Clone, Debug)]
pub struct HvStack {
    points: Vec<Vec<f64>>,
    reference: Vec<f64>,
    accumulated_volume: f64,
    initial_depth: usize,
    max_depth: usize,
}

impl HvStack {
    /// `points` must be strictly below `reference`, and no point may be weakly
    /// dominated by a point beneath it. Bottom of the stack is index 0.
    fn new(points: Vec<Vec<f64>>, reference: Vec<f64>) -> Self {
        let depth = points.len();
        HvStack {
            points,
            reference,
            accumulated_volume: 0.0,
            initial_depth: depth,
            max_depth: depth,
        }
    }

    pub fn depth(&self) -> usize {
        self.points.len()
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn initial_depth(&self) -> usize {
        self.initial_depth
    }

    pub fn accumulated_volume(&self) -> f64 {
        self.accumulated_volume
    }

    /// Upper bound on the depth reached during a run.
    pub fn depth_bound(&self) -> usize {
        self.initial_depth + self.reference.len() - 1
    }

    fn pop_one(&mut self) {
        let top = self.points.pop().expect("pop on empty stack");
        let m = top.len();

        let mut upper = self.reference.clone();
        for q in &self.points {
            for j in 0..m {
                if q[j] > top[j] && q[j] < upper[j] {
                    upper[j] = q[j];
                }
            }
        }

        let volume: f64 = top.iter().zip(&upper).map(|(lo, hi)| hi - lo).product();
        self.accumulated_volume += volume;

        for j in 0..m {
            if upper[j] == self.reference[j] {
                continue;
            }
            let mut spawn = top.clone();
            spawn[j] = upper[j];
            if self
                .points
                .iter()
                .any(|q| weakly_dominates_slice(q, &spawn))
            {
                continue;
            }
            self.points.push(spawn);
        }

        self.max_depth = self.max_depth.max(self.points.len());
        debug_assert!(
            self.max_depth <= self.depth_bound(),
            "stack depth {} exceeds bound {}",
            self.max_depth,
            self.depth_bound()
        );
    }

    fn run_until_depth(&mut self, depth: usize) {
        while self.points.len() > depth {
            self.pop_one();
        }
    }
}

/// Outcome of a stack run, kept for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StackRun {
    pub volume: f64,
    pub initial_depth: usize,
    pub max_depth: usize,
    pub depth_bound: usize,
}

fn check_points(points: &[&[f64]], reference: &ReferencePoint) -> Result<()> {
    let r = reference.values();
    for (index, p) in points.iter().enumerate() {
        if p.len() != r.len() {
            return Err(Error::Dimension {
                expected: r.len(),
                found: p.len(),
            });
        }
        if p.iter().zip(r).any(|(a, b)| !(a < b)) {
            return Err(Error::OutsideReference { index });
        }
    }
    Ok(())
}

/// Non-dominated points with exact duplicates removed, in input order.
fn reduced(points: &[&[f64]]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for i in nondominated_indices(points) {
        if !out.iter().any(|q| q.as_slice() == points[i]) {
            out.push(points[i].to_vec());
        }
    }
    out
}

/// Full stack run over `points`, returning the volume and depth statistics.
pub fn hypervolume_run(points: &[&[f64]], reference: &ReferencePoint) -> Result<StackRun> {
    check_points(points, reference)?;
    let mut stack = HvStack::new(reduced(points), reference.values().to_vec());
    stack.run_until_depth(0);
    Ok(StackRun {
        volume: stack.accumulated_volume(),
        initial_depth: stack.initial_depth(),
        max_depth: stack.max_depth(),
        depth_bound: stack.depth_bound(),
    })
}

/// Lebesgue measure of the union of boxes `[p, reference]`.
pub fn hypervolume(points: &[ObjectiveVector], reference: &ReferencePoint) -> Result<f64> {
    let slices: Vec<&[f64]> = points.iter().map(|p| p.values()).collect();
    Ok(hypervolume_run(&slices, reference)?.volume)
}

/// Two-objective hypervolume by sorting on the first objective and summing
/// rectangles.
pub fn hypervolume_2d(points: &[&[f64]], reference: &ReferencePoint) -> Result<f64> {
    check_points(points, reference)?;
    let r = reference.values();
    if r.len() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: r.len(),
        });
    }
    let mut sorted: Vec<&[f64]> = points.to_vec();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut volume = 0.0;
    let mut ceiling = r[1];
    for p in sorted {
        if p[1] < ceiling {
            volume += (r[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    Ok(volume)
}

/// Exclusive contribution of `points[index]` computed with an early-stopping
/// stack run: the other points form the base of the stack, the queried point
/// sits on top, and the run ends once the depth is back to the base size.
pub fn contribution_run(index: usize, points: &[&[f64]], reference: &ReferencePoint) -> Result<StackRun> {
    check_points(points, reference)?;
    let target = points[index];
    let others: Vec<&[f64]> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, p)| *p)
        .collect();
    let base = reduced(&others);
    if base.iter().any(|q| weakly_dominates_slice(q, target)) {
        return Ok(StackRun {
            volume: 0.0,
            initial_depth: base.len(),
            max_depth: base.len(),
            depth_bound: base.len() + reference.values().len() - 1,
        });
    }
    let base_depth = base.len();
    let mut stacked = base;
    stacked.push(target.to_vec());
    let mut stack = HvStack::new(stacked, reference.values().to_vec());
    stack.run_until_depth(base_depth);
    Ok(StackRun {
        volume: stack.accumulated_volume(),
        initial_depth: stack.initial_depth(),
        max_depth: stack.max_depth(),
        depth_bound: stack.depth_bound(),
    })
}

pub fn hv_contribution(index: usize, points: &[ObjectiveVector], reference: &ReferencePoint) -> Result<f64> {
    if index >= points.len() {
        return Err(Error::Config(format!(
            "index {index} out of range for {} points",
            points.len()
        )));
    }
    let slices: Vec<&[f64]> = points.iter().map(|p| p.values()).collect();
    Ok(contribution_run(index, &slices, reference)?.volume)
}

/// Same quantity as [`hv_contribution`] via two full evaluations.
pub fn hv_contribution_by_difference(
    index: usize,
    points: &[ObjectiveVector],
    reference: &ReferencePoint,
) -> Result<f64> {
    if index >= points.len() {
        return Err(Error::Config(format!(
            "index {index} out of range for {} points",
            points.len()
        )));
    }
    let all = hypervolume(points, reference)?;
    let rest: Vec<ObjectiveVector> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, p)| p.clone())
        .collect();
    Ok((all - hypervolume(&rest, reference)?).max(0.0))
}
