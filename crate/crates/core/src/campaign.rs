//! Experiment harness: instance generation, seeded policy-comparison
//! campaigns run on a worker pool, and summary/rank reports.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::archive::BoundedArchive;
use crate::dmols::{run_dmols, RunRecord, SearchConfig};
use crate::error::{Error, Result};
use crate::metrics::{build_reference_set, MetricsRow};
use crate::objective::ObjectiveVector;
use crate::policy::{GridConfig, PolicyKind};
use crate::ranking::{Direction, RankMatrix};
use crate::tsp::{make_instance, BiObjInstance, InstanceKind, Tour};

/// Environment variable that overrides the worker count.
pub const JOBS_ENV: &str = "PA_JOBS";

pub const METRICS_HEADER: [&str; 10] = [
    "instance",
    "policy",
    "capacity",
    "seed",
    "fullness",
    "spread",
    "hv",
    "igdplus",
    "elapsed_s",
    "iterations",
];

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    File(PathBuf),
    Generated {
        kind: InstanceKind,
        n: usize,
        seed_a: u64,
        seed_b: u64,
    },
}

impl InstanceSource {
    pub fn load(&self) -> Result<BiObjInstance> {
        match self {
            InstanceSource::File(p) => BiObjInstance::load(p),
            InstanceSource::Generated { kind, n, seed_a, seed_b } => make_instance(*kind, *n, *seed_a, *seed_b),
        }
    }
}

/// A campaign read from a flat `key: value` file. `#` starts a comment and
/// lists are comma separated.
///
/// ```text
/// instance_specs: random:100:1:2, euclidean:100:3:4
/// instances: data/my.inst
/// policies: random, aga, ha, hdaa, jdaa
/// capacities: 20, 50
/// runs_per_cell: 10
/// time_limit_s: 10
/// max_iterations: 500
/// master_seed: 42
/// output: out
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    pub instances: Vec<InstanceSource>,
    pub policies: Vec<PolicyKind>,
    pub capacities: Vec<usize>,
    pub runs_per_cell: usize,
    pub time_limit: Option<Duration>,
    pub max_iterations: Option<u64>,
    pub current_set_size: usize,
    pub init_count: usize,
    pub master_seed: u64,
    pub output: PathBuf,
}

fn list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("bad value for `{key}`: {v:?}")))
}

fn parse_spec(s: &str, line: usize) -> Result<InstanceSource> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::parse(line, format!("instance spec must be kind:n:seed_a:seed_b, got {s:?}")));
    }
    Ok(InstanceSource::Generated {
        kind: parts[0].parse()?,
        n: parse_num("instance_specs", parts[1], line)?,
        seed_a: parse_num("instance_specs", parts[2], line)?,
        seed_b: parse_num("instance_specs", parts[3], line)?,
    })
}

impl CampaignConfig {
    /// Relative instance paths and the output directory resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut instances = Vec::new();
        let mut policies = PolicyKind::ALL.to_vec();
        let mut capacities = vec![20, 50];
        let mut runs_per_cell = 10;
        let mut time_limit_s: Option<f64> = None;
        let mut max_iterations = None;
        let mut current_set_size = 1;
        let mut init_count = 2;
        let mut master_seed = 0;
        let mut output = PathBuf::from("out");

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, format!("expected `key: value`, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "instances" => instances.extend(list(value).map(|p| InstanceSource::File(base.join(p)))),
                "instance_specs" => {
                    for s in list(value) {
                        instances.push(parse_spec(s, line_no)?);
                    }
                }
                "policies" => policies = list(value).map(str::parse).collect::<Result<_>>()?,
                "capacities" => {
                    capacities = list(value)
                        .map(|c| parse_num(key, c, line_no))
                        .collect::<Result<_>>()?
                }
                "runs_per_cell" => runs_per_cell = parse_num(key, value, line_no)?,
                "time_limit_s" => time_limit_s = Some(parse_num(key, value, line_no)?),
                "max_iterations" => max_iterations = Some(parse_num(key, value, line_no)?),
                "current_set_size" => current_set_size = parse_num(key, value, line_no)?,
                "init_count" => init_count = parse_num(key, value, line_no)?,
                "master_seed" => master_seed = parse_num(key, value, line_no)?,
                "output" => output = base.join(value),
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
        }

        let time_limit = match (time_limit_s, max_iterations) {
            (Some(t), _) if !(t > 0.0 && t.is_finite()) => {
                return Err(Error::Config(format!("time_limit_s must be positive, got {t}")))
            }
            (Some(t), _) => Some(Duration::from_secs_f64(t)),
            (None, Some(_)) => None,
            (None, None) => Some(Duration::from_secs(10)),
        };
        let cfg = CampaignConfig {
            instances,
            policies,
            capacities,
            runs_per_cell,
            time_limit,
            max_iterations,
            current_set_size,
            init_count,
            master_seed,
            output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::Config("no instances".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("no policies".into()));
        }
        if self.capacities.is_empty() || self.capacities.iter().any(|&c| c < 2) {
            return Err(Error::Config("capacities must be a non-empty list of values >= 2".into()));
        }
        if self.policies.contains(&PolicyKind::Aga) {
            for &c in &self.capacities {
                GridConfig::for_capacity(c, 2)?;
            }
        }
        if self.runs_per_cell == 0 {
            return Err(Error::Config("runs_per_cell must be at least 1".into()));
        }
        self.search_config(0).validate()
    }

    fn search_config(&self, seed: u64) -> SearchConfig {
        SearchConfig {
            time_limit: self.time_limit,
            max_iterations: self.max_iterations,
            current_set_size: self.current_set_size,
            init_count: self.init_count,
            seed,
        }
    }
}

/// Search and policy seeds of one run: the first and second 8 bytes of
/// `sha256("{master}/{instance}/{capacity}/{run}")`. The policy is left out
/// so that every policy sees the same seeds in a given cell.
pub fn cell_seeds(master_seed: u64, instance: &str, capacity: usize, run: usize) -> (u64, u64) {
    let digest = Sha256::digest(format!("{master_seed}/{instance}/{capacity}/{run}").as_bytes());
    let word = |k: usize| u64::from_le_bytes(digest[8 * k..8 * k + 8].try_into().expect("8 bytes"));
    (word(0), word(1))
}

/// `PA_JOBS` if set, else `cli`, else the available parallelism.
pub fn effective_jobs(cli: Option<usize>) -> Result<usize> {
    let jobs = match std::env::var(JOBS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("{JOBS_ENV} must be a positive integer, got {v:?}")))?,
        Err(_) => cli.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
    };
    if jobs == 0 {
        return Err(Error::Config("job count must be at least 1".into()));
    }
    Ok(jobs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRecord {
    pub instance: String,
    pub policy: String,
    pub capacity: usize,
    pub seed: u64,
    pub metrics: MetricsRow,
    pub elapsed_s: f64,
    pub iterations: u64,
}

impl MetricsRecord {
    fn fields(&self) -> [String; 10] {
        [
            self.instance.clone(),
            self.policy.clone(),
            self.capacity.to_string(),
            self.seed.to_string(),
            self.metrics.fullness_pct.to_string(),
            self.metrics.spread.to_string(),
            self.metrics.hv_norm.to_string(),
            self.metrics.igd_plus.to_string(),
            format!("{:.3}", self.elapsed_s),
            self.iterations.to_string(),
        ]
    }
}

pub fn write_metrics_csv(rows: &[MetricsRecord], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(METRICS_HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_metrics_csv(path: &Path) -> Result<Vec<MetricsRecord>> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.clone();
    if header.iter().map(str::trim).ne(METRICS_HEADER) {
        return Err(Error::parse(1, format!("unexpected metrics header {:?}", header.iter().collect::<Vec<_>>())));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let f = |k: usize| rec.get(k).unwrap_or("").trim();
        rows.push(MetricsRecord {
            instance: f(0).to_string(),
            policy: f(1).to_string(),
            capacity: parse_num("capacity", f(2), line)?,
            seed: parse_num("seed", f(3), line)?,
            metrics: MetricsRow {
                fullness_pct: parse_num("fullness", f(4), line)?,
                spread: parse_num("spread", f(5), line)?,
                hv_norm: parse_num("hv", f(6), line)?,
                igd_plus: parse_num("igdplus", f(7), line)?,
            },
            elapsed_s: parse_num("elapsed_s", f(8), line)?,
            iterations: parse_num("iterations", f(9), line)?,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug)]
struct Cell {
    instance: usize,
    policy: PolicyKind,
    capacity: usize,
    run: usize,
}

impl Cell {
    fn file_stem(&self, instance: &str) -> String {
        format!("{instance}_{}_c{}_r{}", self.policy, self.capacity, self.run)
    }
}

#[derive(Debug)]
pub struct CampaignOutput {
    pub records: Vec<RunRecord>,
    pub metrics: Vec<MetricsRecord>,
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    f(&mut out).and_then(|_| out.flush()).map_err(|e| Error::io(path, e))
}

fn write_front(out: &mut impl Write, rec: &RunRecord) -> std::io::Result<()> {
    writeln!(out, "# {} {} capacity {} seed {}", rec.instance, rec.policy, rec.capacity, rec.seed)?;
    let mut front = rec.front();
    front.sort_by(|a, b| a.values().partial_cmp(b.values()).expect("finite objectives"));
    for p in &front {
        let v: Vec<String> = p.values().iter().map(f64::to_string).collect();
        writeln!(out, "{}", v.join(" "))?;
    }
    Ok(())
}

/// Runs every (instance, policy, capacity, run) cell on `jobs` workers and
/// writes `runs/*.txt`, `fronts/*.dat` and `metrics.csv` under the output
/// directory. Metrics use one reference set per instance, built from every
/// run on that instance.
pub fn run_campaign(cfg: &CampaignConfig, jobs: usize) -> Result<CampaignOutput> {
    cfg.validate()?;
    let instances = cfg.instances.iter().map(InstanceSource::load).collect::<Result<Vec<_>>>()?;
    let mut cells = Vec::new();
    for instance in 0..instances.len() {
        for &policy in &cfg.policies {
            for &capacity in &cfg.capacities {
                for run in 0..cfg.runs_per_cell {
                    cells.push(Cell { instance, policy, capacity, run });
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let records: Vec<RunRecord> = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| {
                let inst = &instances[cell.instance];
                let (seed, policy_seed) = cell_seeds(cfg.master_seed, &inst.name, cell.capacity, cell.run);
                let policy = cell.policy.build::<Tour>(cell.capacity, 2, policy_seed)?;
                let mut archive = BoundedArchive::new(cell.capacity, policy)?;
                run_dmols(inst, &mut archive, &cfg.search_config(seed))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let runs_dir = cfg.output.join("runs");
    let fronts_dir = cfg.output.join("fronts");
    create_dir(&runs_dir)?;
    create_dir(&fronts_dir)?;
    for (cell, rec) in cells.iter().zip(&records) {
        let stem = cell.file_stem(&rec.instance);
        write_file(&runs_dir.join(format!("{stem}.txt")), |w| rec.write_to(w))?;
        write_file(&fronts_dir.join(format!("{stem}.dat")), |w| write_front(w, rec))?;
    }

    let mut metrics = Vec::with_capacity(records.len());
    for i in 0..instances.len() {
        let on_instance: Vec<(&Cell, &RunRecord)> =
            cells.iter().zip(&records).filter(|(c, _)| c.instance == i).collect();
        let fronts: Vec<Vec<ObjectiveVector>> = on_instance.iter().map(|(_, r)| r.front()).collect();
        let reference = build_reference_set(fronts.iter().map(Vec::as_slice))?;
        for ((_, rec), front) in on_instance.iter().zip(&fronts) {
            metrics.push(MetricsRecord {
                instance: rec.instance.clone(),
                policy: rec.policy.clone(),
                capacity: rec.capacity,
                seed: rec.seed,
                metrics: MetricsRow::compute(front, rec.capacity, &reference)?,
                elapsed_s: rec.elapsed_s,
                iterations: rec.iterations,
            });
        }
    }
    write_metrics_csv(&metrics, &cfg.output.join("metrics.csv"))?;
    Ok(CampaignOutput { records, metrics })
}

/// Generates one instance and saves it. An existing directory `out` gets a
/// file named after the instance; any other path is used as the file name.
pub fn cmd_generate(kind: InstanceKind, n: usize, seed_a: u64, seed_b: u64, out: &Path) -> Result<PathBuf> {
    let inst = make_instance(kind, n, seed_a, seed_b)?;
    let path = if out.is_dir() {
        out.join(format!("{}.inst", inst.name))
    } else {
        if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
            create_dir(parent)?;
        }
        out.to_path_buf()
    };
    inst.save(&path)?;
    Ok(path)
}

/// Mean, median and sample standard deviation. A single value has deviation 0.
pub fn describe(values: &[f64]) -> Result<(f64, f64, f64)> {
    if values.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let dev = if n < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    };
    Ok((mean, median, dev))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Fullness,
    Spread,
    Hv,
    IgdPlus,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Fullness, Metric::Spread, Metric::Hv, Metric::IgdPlus];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Fullness => "fullness",
            Metric::Spread => "spread",
            Metric::Hv => "hv",
            Metric::IgdPlus => "igdplus",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            Metric::Fullness | Metric::Hv => Direction::HigherBetter,
            Metric::Spread | Metric::IgdPlus => Direction::LowerBetter,
        }
    }

    pub fn of(self, row: &MetricsRow) -> f64 {
        match self {
            Metric::Fullness => row.fullness_pct,
            Metric::Spread => row.spread,
            Metric::Hv => row.hv_norm,
            Metric::IgdPlus => row.igd_plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub instance: String,
    pub policy: String,
    pub capacity: usize,
    pub runs: usize,
    /// `(avg, med, dev)` per metric, in [`Metric::ALL`] order.
    pub stats: [(f64, f64, f64); 4],
}

impl SummaryRow {
    pub fn single_run(&self) -> bool {
        self.runs == 1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankRow {
    pub subset: String,
    pub metric: Metric,
    pub group: String,
    pub cases: usize,
    pub ranks: Vec<f64>,
    pub friedman: Option<f64>,
    pub nemenyi_cd: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatsReport {
    pub policies: Vec<String>,
    pub summary: Vec<SummaryRow>,
    pub ranks: Vec<RankRow>,
}

/// Splits `{kind}-n{size}-...` into `(kind, "n{size}", size)`; other names
/// form a subset `all` with the name as its group.
pub fn subset_and_group(instance: &str) -> (String, String, usize) {
    let mut parts = instance.splitn(3, '-');
    if let (Some(kind), Some(size)) = (parts.next(), parts.next()) {
        if let Some(n) = size.strip_prefix('n').and_then(|d| d.parse::<usize>().ok()) {
            return (kind.to_string(), size.to_string(), n);
        }
    }
    ("all".to_string(), instance.to_string(), usize::MAX)
}

pub fn summarize(rows: &[MetricsRecord]) -> Result<Vec<SummaryRow>> {
    let mut order: Vec<(String, String, usize)> = Vec::new();
    let mut cells: HashMap<(String, String, usize), Vec<&MetricsRecord>> = HashMap::new();
    for r in rows {
        let key = (r.instance.clone(), r.policy.clone(), r.capacity);
        cells
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let members = &cells[&key];
            let mut stats = [(0.0, 0.0, 0.0); 4];
            for (slot, metric) in stats.iter_mut().zip(Metric::ALL) {
                let values: Vec<f64> = members.iter().map(|r| metric.of(&r.metrics)).collect();
                *slot = describe(&values)?;
            }
            Ok(SummaryRow {
                instance: key.0,
                policy: key.1,
                capacity: key.2,
                runs: members.len(),
                stats,
            })
        })
        .collect()
}

/// Ranks the policies on every (instance, capacity, seed) case that has a
/// value for each of them, then averages per instance-size group and over
/// each subset.
pub fn rank_report(rows: &[MetricsRecord]) -> Result<(Vec<String>, Vec<RankRow>)> {
    let mut policies: Vec<String> = Vec::new();
    for r in rows {
        if !policies.contains(&r.policy) {
            policies.push(r.policy.clone());
        }
    }
    let k = policies.len();
    let mut out = Vec::new();
    for metric in Metric::ALL {
        // subset -> (size, group) -> case -> per-policy value
        type Cases = BTreeMap<(String, usize, u64), Vec<Option<f64>>>;
        let mut subsets: BTreeMap<String, BTreeMap<(usize, String), Cases>> = BTreeMap::new();
        for r in rows {
            let (subset, group, n) = subset_and_group(&r.instance);
            let slot = subsets
                .entry(subset)
                .or_default()
                .entry((n, group))
                .or_default()
                .entry((r.instance.clone(), r.capacity, r.seed))
                .or_insert_with(|| vec![None; k]);
            let p = policies.iter().position(|q| *q == r.policy).expect("policy listed");
            slot[p] = Some(metric.of(&r.metrics));
        }
        for (subset, groups) in subsets {
            let mut all = RankMatrix::new(k);
            for ((_, group), cases) in groups {
                let mut m = RankMatrix::new(k);
                for values in cases.values() {
                    if let Some(v) = values.iter().copied().collect::<Option<Vec<f64>>>() {
                        m.push_scores(&v, metric.direction())?;
                        all.push_scores(&v, metric.direction())?;
                    }
                }
                if m.cases() > 0 {
                    out.push(rank_row_for(&subset, metric, group, &m)?);
                }
            }
            if all.cases() > 0 {
                out.push(rank_row_for(&subset, metric, "Average".to_string(), &all)?);
            }
        }
    }
    Ok((policies, out))
}

fn rank_row_for(subset: &str, metric: Metric, group: String, m: &RankMatrix) -> Result<RankRow> {
    Ok(RankRow {
        subset: subset.to_string(),
        metric,
        group,
        cases: m.cases(),
        ranks: m.average_ranks()?,
        friedman: m.friedman_statistic().ok(),
        nemenyi_cd: crate::ranking::nemenyi_critical_difference(m.methods(), m.cases()).ok(),
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4}")).unwrap_or_default()
}

/// Reads a metrics CSV and writes `summary.csv` and `ranks.csv` into `out`.
pub fn cmd_stats(input: &Path, out: &Path) -> Result<StatsReport> {
    let rows = read_metrics_csv(input)?;
    if rows.is_empty() {
        return Err(Error::EmptySet);
    }
    let summary = summarize(&rows)?;
    let (policies, ranks) = rank_report(&rows)?;
    create_dir(out)?;

    let path = out.join("summary.csv");
    let mut w = csv::Writer::from_path(&path)?;
    let mut header = vec!["instance".to_string(), "policy".into(), "capacity".into(), "runs".into()];
    for m in Metric::ALL {
        for s in ["avg", "med", "dev"] {
            header.push(format!("{}_{s}", m.as_str()));
        }
    }
    header.push("single_run".into());
    w.write_record(&header)?;
    for s in &summary {
        let mut rec = vec![s.instance.clone(), s.policy.clone(), s.capacity.to_string(), s.runs.to_string()];
        for (a, m, d) in s.stats {
            rec.extend([a, m, d].map(|x| x.to_string()));
        }
        rec.push(s.single_run().to_string());
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;

    let path = out.join("ranks.csv");
    let mut w = csv::Writer::from_path(&path)?;
    let mut header = vec!["subset".to_string(), "metric".into(), "group".into(), "cases".into()];
    header.extend(policies.iter().cloned());
    header.extend(["friedman".to_string(), "nemenyi_cd".into()]);
    w.write_record(&header)?;
    for r in &ranks {
        let mut rec = vec![r.subset.clone(), r.metric.as_str().to_string(), r.group.clone(), r.cases.to_string()];
        rec.extend(r.ranks.iter().map(|x| format!("{x:.4}")));
        rec.push(opt(r.friedman));
        rec.push(opt(r.nemenyi_cd));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;

    Ok(StatsReport { policies, summary, ranks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let text = "# demo\ninstance_specs: random:10:1:2, cluster:12:3:4\ninstances: a.inst\npolicies: random, hdaa\ncapacities: 5\nruns_per_cell: 3\nmax_iterations: 20\nmaster_seed: 7\noutput: res\n";
        let cfg = CampaignConfig::parse(text, Path::new("/tmp/x")).unwrap();
        assert_eq!(cfg.instances.len(), 3);
        assert_eq!(cfg.instances[2], InstanceSource::File(PathBuf::from("/tmp/x/a.inst")));
        assert_eq!(cfg.policies, vec![PolicyKind::Random, PolicyKind::Hdaa]);
        assert_eq!(cfg.time_limit, None);
        assert_eq!(cfg.max_iterations, Some(20));
        assert_eq!(cfg.output, PathBuf::from("/tmp/x/res"));

        let bad = |t: &str| CampaignConfig::parse(t, Path::new(".")).is_err();
        assert!(bad("policies: random\n"));
        assert!(bad("instance_specs: random:10:1:2\ntime_limit_s: 0\n"));
        assert!(bad("instance_specs: random:10:1:2\nruns_per_cell: 0\n"));
        assert!(bad("instance_specs: random:10:1:2\nbogus: 1\n"));
        assert!(bad("instance_specs: random:10:1\n"));
        assert!(bad("instance_specs: random:10:1:2\npolicies: best\n"));
        assert!(bad("instance_specs: random:10:1:2\npolicies: aga\ncapacities: 5\n"));
    }

    #[test]
    fn seeds_ignore_policy_and_differ_by_cell() {
        let a = cell_seeds(1, "random-n10-1-2", 20, 0);
        assert_eq!(a, cell_seeds(1, "random-n10-1-2", 20, 0));
        assert_ne!(a, cell_seeds(1, "random-n10-1-2", 20, 1));
        assert_ne!(a, cell_seeds(1, "random-n10-1-2", 50, 0));
        assert_ne!(a, cell_seeds(2, "random-n10-1-2", 20, 0));
        assert_ne!(a.0, a.1);
    }

    #[test]
    fn describe_examples() {
        assert_eq!(describe(&[1.0, 2.0, 3.0]).unwrap(), (2.0, 2.0, 1.0));
        assert_eq!(describe(&[5.0]).unwrap(), (5.0, 5.0, 0.0));
        assert_eq!(describe(&[4.0, 1.0, 3.0, 2.0]).unwrap().1, 2.5);
        assert!(describe(&[]).is_err());
    }

    #[test]
    fn instance_names() {
        assert_eq!(subset_and_group("cluster-n500-1-2"), ("cluster".into(), "n500".into(), 500));
        assert_eq!(subset_and_group("four-node").0, "all");
    }

    fn rec(instance: &str, policy: &str, seed: u64, hv: f64) -> MetricsRecord {
        MetricsRecord {
            instance: instance.into(),
            policy: policy.into(),
            capacity: 10,
            seed,
            metrics: MetricsRow {
                fullness_pct: 100.0,
                spread: 0.5,
                hv_norm: hv,
                igd_plus: 1.0 - hv,
            },
            elapsed_s: 0.0,
            iterations: 1,
        }
    }

    #[test]
    fn rank_report_groups_by_size() {
        let rows = vec![
            rec("random-n10-1-2", "a", 1, 0.9),
            rec("random-n10-1-2", "b", 1, 0.8),
            rec("random-n20-1-2", "a", 1, 0.1),
            rec("random-n20-1-2", "b", 1, 0.8),
            rec("random-n20-1-2", "a", 2, 0.7),
            // incomplete case is skipped
            rec("random-n20-1-2", "a", 3, 0.7),
        ];
        let (policies, ranks) = rank_report(&rows).unwrap();
        assert_eq!(policies, vec!["a", "b"]);
        let hv: Vec<&RankRow> = ranks.iter().filter(|r| r.metric == Metric::Hv).collect();
        assert_eq!(hv.len(), 3);
        assert_eq!((hv[0].group.as_str(), hv[0].ranks.clone()), ("n10", vec![1.0, 2.0]));
        assert_eq!((hv[1].group.as_str(), hv[1].ranks.clone()), ("n20", vec![2.0, 1.0]));
        assert_eq!(hv[2].group, "Average");
        assert_eq!(hv[2].cases, 2);
        assert_eq!(hv[2].ranks, vec![1.5, 1.5]);
        let full: Vec<&RankRow> = ranks.iter().filter(|r| r.metric == Metric::Fullness).collect();
        assert_eq!(full[0].ranks, vec![1.5, 1.5]);
    }
}
