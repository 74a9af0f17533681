//! A tiny seeded campaign: two instances, three policies, two runs per cell,
//! followed by the summary and rank reports.

use std::path::Path;

use pals::campaign::{cmd_stats, run_campaign, CampaignConfig};

fn main() -> pals::Result<()> {
    let out = std::env::temp_dir().join("pals-campaign");
    let text = format!(
        "instance_specs: random:30:1:2, euclidean:30:3:4\n\
         policies: random, ha, hdaa\n\
         capacities: 10\n\
         runs_per_cell: 2\n\
         max_iterations: 200\n\
         master_seed: 5\n\
         output: {}\n",
        out.display()
    );
    let cfg = CampaignConfig::parse(&text, Path::new("."))?;
    let result = run_campaign(&cfg, 2)?;
    for m in &result.metrics {
        println!(
            "{:<22} {:<6} seed {:>20}  hv {:.3}  igd+ {:.4}",
            m.instance, m.policy, m.seed, m.metrics.hv_norm, m.metrics.igd_plus
        );
    }
    let report = cmd_stats(&out.join("metrics.csv"), &out.join("stats"))?;
    for r in report.ranks.iter().filter(|r| r.metric.as_str() == "igdplus") {
        println!("{} {:<8} {:?}", r.subset, r.group, r.ranks);
    }
    println!("files under {}", out.display());
    Ok(())
}
