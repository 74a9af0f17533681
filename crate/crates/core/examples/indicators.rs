//! Quality indicators of two fronts against their joint reference set, and
//! Demšar-style average ranks over a handful of cases.

use pals::metrics::{build_reference_set, MetricsRow};
use pals::ranking::{nemenyi_critical_difference, Direction, RankMatrix};
use pals::ObjectiveVector;

fn front(points: &[[f64; 2]]) -> Vec<ObjectiveVector> {
    points.iter().map(|&p| p.into()).collect()
}

fn main() -> pals::Result<()> {
    let even = front(&[[0.0, 10.0], [2.5, 7.5], [5.0, 5.0], [7.5, 2.5], [10.0, 0.0]]);
    let clumped = front(&[[0.5, 9.8], [1.0, 9.0], [1.5, 8.6], [9.0, 1.5]]);
    let reference = build_reference_set([even.as_slice(), clumped.as_slice()])?;
    println!("reference set: {} points", reference.points.len());
    for (name, f) in [("even", &even), ("clumped", &clumped)] {
        let m = MetricsRow::compute(f, 5, &reference)?;
        println!(
            "{name:<8} fullness {:>5.1}%  spread {:.3}  hv {:.3}  igd+ {:.4}",
            m.fullness_pct, m.spread, m.hv_norm, m.igd_plus
        );
    }

    // IGD+ of three methods on four cases
    let scores = vec![
        vec![0.12, 0.08, 0.10],
        vec![0.30, 0.21, 0.25],
        vec![0.05, 0.05, 0.09],
        vec![0.44, 0.40, 0.41],
    ];
    let ranks = RankMatrix::from_scores(&scores, Direction::LowerBetter)?;
    println!("average ranks {:?}", ranks.average_ranks()?);
    println!(
        "friedman {:.3}, critical difference {:.3}",
        ranks.friedman_statistic()?,
        nemenyi_critical_difference(3, ranks.cases())?
    );
    Ok(())
}
