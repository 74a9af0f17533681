//! Feeds the same stream of binary solutions to a small archive under each
//! replacement policy and shows what survives.

use pals::objective::ObjectiveVector;
use pals::policy::BinaryVector;
use pals::{ArchiveEntry, BoundedArchive, InsertOutcome, PolicyKind};

fn main() -> pals::Result<()> {
    // bits, (f1, f2): all mutually non-dominated
    let stream = [
        ("110000", [1.0, 9.0]),
        ("111000", [2.0, 7.0]),
        ("111100", [3.0, 6.0]),
        ("000011", [4.0, 4.0]),
        ("000111", [6.0, 3.0]),
        ("001111", [7.0, 2.0]),
        ("011111", [9.0, 1.0]),
        ("110001", [5.0, 3.5]),
        ("100001", [1.5, 8.0]),
        ("000001", [8.0, 1.5]),
        ("010101", [4.5, 3.8]),
    ];
    for kind in PolicyKind::ALL {
        let mut archive = BoundedArchive::<BinaryVector>::new(6, kind.build(6, 2, 11)?)?;
        let mut evicted = Vec::new();
        for (bits, obj) in stream {
            let cand = ArchiveEntry::new(BinaryVector::parse(bits)?, ObjectiveVector::from(obj));
            match archive.try_insert(cand)? {
                InsertOutcome::AcceptedReplacing(e) => evicted.push(e.objectives.to_string()),
                InsertOutcome::RejectedByPolicy => {
                    evicted.push(format!("{} (rejected)", ObjectiveVector::from(obj)))
                }
                _ => {}
            }
        }
        let kept: Vec<String> = archive.entries().iter().map(|e| e.objectives.to_string()).collect();
        println!("{:<6} kept {}", kind.as_str(), kept.join(" "));
        println!("       evicted {}", evicted.join(" "));
    }
    Ok(())
}
