//! The four-node instance: its three tours, and the archive the local search
//! ends with under each policy.

use pals::dmols::{run_dmols, SearchConfig};
use pals::tsp::{evaluate, four_node_instance, two_opt_neighbors, Tour};
use pals::{BoundedArchive, PolicyKind};

fn main() -> pals::Result<()> {
    let inst = four_node_instance();
    let start = Tour::identity(4)?;
    let mut tours = vec![start.clone()];
    tours.extend(two_opt_neighbors(&start));
    for t in &tours {
        println!("tour {t}: {}", evaluate(t, &inst)?);
    }
    for kind in PolicyKind::ALL {
        let mut archive = BoundedArchive::<Tour>::new(10, kind.build(10, 2, 0)?)?;
        let rec = run_dmols(&inst, &mut archive, &SearchConfig::default())?;
        let front: Vec<String> = rec.front().iter().map(|p| p.to_string()).collect();
        println!("{:<6} {} after {} iterations", kind.as_str(), front.join(" "), rec.iterations);
    }
    Ok(())
}
