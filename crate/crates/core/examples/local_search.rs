//! Runs the local search on a generated instance with one policy.
//!
//! cargo run --release --example local_search -- [policy] [n] [seconds] [capacity]

use std::time::Duration;

use pals::dmols::{run_dmols, SearchConfig};
use pals::tsp::{make_instance, InstanceKind, Tour};
use pals::{BoundedArchive, PolicyKind};

fn main() -> pals::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let policy: PolicyKind = args.first().map_or(Ok(PolicyKind::Hdaa), |s| s.parse())?;
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let secs: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2.0);
    let capacity: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(50);

    let inst = make_instance(InstanceKind::Random, n, 1, 2)?;
    let mut archive = BoundedArchive::<Tour>::new(capacity, policy.build(capacity, 2, 7)?)?;
    let cfg = SearchConfig {
        time_limit: Some(Duration::from_secs_f64(secs)),
        seed: 7,
        ..SearchConfig::default()
    };
    let rec = run_dmols(&inst, &mut archive, &cfg)?;
    println!(
        "{} on {}: {} iterations, {} evaluations, {} restarts, stopped by {}",
        rec.policy, rec.instance, rec.iterations, rec.evaluations, rec.restarts, rec.termination
    );
    let mut front = rec.front();
    front.sort_by(|a, b| a[0].total_cmp(&b[0]));
    println!("archive holds {} of {capacity}", front.len());
    for p in front.iter().take(5) {
        println!("  {p}");
    }
    if front.len() > 5 {
        println!("  ...");
    }
    Ok(())
}
