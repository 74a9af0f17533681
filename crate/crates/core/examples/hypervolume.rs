//! Hypervolume of a small front and the exclusive contribution of each point.

use pals::hypervolume::{hv_contribution, hv_contribution_by_difference, hypervolume, ReferencePoint};
use pals::ObjectiveVector;

fn main() -> pals::Result<()> {
    let front: Vec<ObjectiveVector> = vec![
        [1.0, 8.0, 3.0].into(),
        [2.0, 4.0, 5.0].into(),
        [5.0, 2.0, 4.0].into(),
        [7.0, 1.0, 1.0].into(),
    ];
    let reference = ReferencePoint::new(vec![10.0, 10.0, 10.0]);
    println!("hypervolume: {}", hypervolume(&front, &reference)?);
    for (i, p) in front.iter().enumerate() {
        let direct = hv_contribution(i, &front, &reference)?;
        let diff = hv_contribution_by_difference(i, &front, &reference)?;
        println!("  {p}: contribution {direct} (by difference {diff})");
    }
    Ok(())
}
