//! Objective vectors and Pareto dominance.
//!
//! All objectives are costs: smaller is better. Comparisons are exact, there
//! is no epsilon-dominance anywhere in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// A point in objective space.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| v.is_finite()), "non-finite objective");
        ObjectiveVector(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(values: Vec<f64>) -> Self {
        ObjectiveVector::new(values)
    }
}

impl<const N: usize> From<[f64; N]> for ObjectiveVector {
    fn from(values: [f64; N]) -> Self {
        ObjectiveVector::new(values.to_vec())
    }
}

impl Index<usize> for ObjectiveVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// How an ordered pair of objective vectors relates under Pareto dominance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    Dominates,
    DominatedBy,
    Incomparable,
    Equal,
}

fn check_dims(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

/// Relation of `a` to `b` on raw slices. Lengths must already agree.
pub(crate) fn compare_slices(a: &[f64], b: &[f64]) -> Dominance {
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(Ordering::Less) => a_better = true,
            Some(Ordering::Greater) => b_better = true,
            _ => {}
        }
        if a_better && b_better {
            return Dominance::Incomparable;
        }
    }
    match (a_better, b_better) {
        (true, false) => Dominance::Dominates,
        (false, true) => Dominance::DominatedBy,
        (false, false) => Dominance::Equal,
        (true, true) => Dominance::Incomparable,
    }
}

/// `a` is no worse than `b` everywhere and strictly better somewhere.
pub(crate) fn dominates_slice(a: &[f64], b: &[f64]) -> bool {
    compare_slices(a, b) == Dominance::Dominates
}

/// `a` is no worse than `b` in every objective.
pub(crate) fn weakly_dominates_slice(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<bool> {
    check_dims(&a.0, &b.0)?;
    Ok(dominates_slice(&a.0, &b.0))
}

pub fn compare(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<Dominance> {
    check_dims(&a.0, &b.0)?;
    Ok(compare_slices(&a.0, &b.0))
}

fn uniform_dimension(points: &[ObjectiveVector]) -> Result<()> {
    if let Some(first) = points.first() {
        for p in points {
            check_dims(&first.0, &p.0)?;
        }
    }
    Ok(())
}

/// Indices of the non-dominated points, in input order.
///
/// Points with equal objective vectors are all kept; callers that want one
/// representative per image collapse them afterwards. Two objectives use a
/// sort-and-sweep, anything else the quadratic pairwise scan.
pub fn nondominated_indices(points: &[&[f64]]) -> Vec<usize> {
    if points.is_empty() {
        return Vec::new();
    }
    if points[0].len() == 2 {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (points[i], points[j]);
            a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
        });
        let mut keep = vec![false; points.len()];
        let mut best_second = f64::INFINITY;
        // best (first, second) seen so far, used to keep exact duplicates
        let mut last_kept: Option<(f64, f64)> = None;
        for &i in &order {
            let p = points[i];
            if p[1] < best_second {
                keep[i] = true;
                best_second = p[1];
                last_kept = Some((p[0], p[1]));
            } else if last_kept == Some((p[0], p[1])) {
                keep[i] = true;
            }
        }
        return (0..points.len()).filter(|&i| keep[i]).collect();
    }
    (0..points.len())
        .filter(|&i| {
            !points
                .iter()
                .any(|q| dominates_slice(q, points[i]))
        })
        .collect()
}

/// Maximal mutually non-dominated subset, duplicates collapsed to their
/// first occurrence, survivors in input order.
pub fn pareto_filter(points: &[ObjectiveVector]) -> Result<Vec<ObjectiveVector>> {
    uniform_dimension(points)?;
    let slices: Vec<&[f64]> = points.iter().map(|p| p.values()).collect();
    let mut out: Vec<ObjectiveVector> = Vec::new();
    for i in nondominated_indices(&slices) {
        if !out.iter().any(|q| q == &points[i]) {
            out.push(points[i].clone());
        }
    }
    Ok(out)
}

/// Componentwise worst value over the non-dominated subset.
pub fn nadir(points: &[ObjectiveVector]) -> Result<ObjectiveVector> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let front = pareto_filter(points)?;
    Ok(componentwise(&front, f64::max))
}

/// Componentwise best value over the whole set.
pub fn ideal(points: &[ObjectiveVector]) -> Result<ObjectiveVector> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    uniform_dimension(points)?;
    Ok(componentwise(points, f64::min))
}

pub(crate) fn componentwise(points: &[ObjectiveVector], fold: fn(f64, f64) -> f64) -> ObjectiveVector {
    let mut acc = points[0].0.clone();
    for p in &points[1..] {
        for (a, v) in acc.iter_mut().zip(&p.0) {
            *a = fold(*a, *v);
        }
    }
    ObjectiveVector(acc)
}
