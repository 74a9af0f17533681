//! Generates one instance of each kind, writes it out and reads it back.

use pals::tsp::{evaluate, greedy_weights, make_instance, nearest_neighbor_tour, BiObjInstance, InstanceKind};

fn main() -> pals::Result<()> {
    let dir = std::env::temp_dir().join("pals-instances");
    std::fs::create_dir_all(&dir).map_err(|e| pals::Error::Config(e.to_string()))?;
    for kind in InstanceKind::ALL {
        let inst = make_instance(kind, 60, 1, 2)?;
        let path = dir.join(format!("{}.inst", inst.name));
        inst.save(&path)?;
        let back = BiObjInstance::load(&path)?;
        assert_eq!(back, inst);
        print!("{:<24} {}", inst.name, path.display());
        for lambda in greedy_weights(3) {
            let tour = nearest_neighbor_tour(&inst, lambda, 0);
            print!("  nn({lambda}) = {}", evaluate(&tour, &inst)?);
        }
        println!();
    }
    Ok(())
}
