//! Benchmark harness: multi-seed replicates, deviation statistics, CSV
//! reports, an exhaustive oracle for small instances, and the batch config
//! loader used by the CLI.

use std::collections::BTreeMap;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Deserialize;

use crate::colony::{run, Algorithm, ColonyParams};
use crate::error::{LopError, Result};
use crate::io::load_instance;
use crate::problem::{Instance, Permutation, Weight};

/// Relative shortfall of `found` against a known optimum:
/// `(optimal - found) / optimal`. Requires a positive optimum.
pub fn deviation(found: Weight, optimal: Weight) -> Result<f64> {
    if optimal.is_nan() || optimal <= 0.0 {
        return Err(LopError::InvalidArgument(format!(
            "deviation needs a positive optimum, got {optimal}"
        )));
    }
    Ok((optimal - found) / optimal)
}

/// One deviation measurement, tagged with enough identity to group it.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationEntry {
    /// Instance name; its leading digit run is the size group key.
    pub name: Option<String>,
    /// Node count, the grouping fallback for unnamed instances.
    pub n: usize,
    /// Deviation as a fraction, not a percentage.
    pub deviation: f64,
}

/// Mean deviation of one size group, in percent.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub size: String,
    pub count: usize,
    pub mean_percent: f64,
}

/// Per-size means plus their unweighted grand mean.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AggregateReport {
    /// Sorted by size, numerically where the key is numeric.
    pub rows: Vec<AggregateRow>,
    /// Mean of the per-size means; `None` for an empty report.
    pub overall_percent: Option<f64>,
}

fn size_key(entry: &DeviationEntry) -> String {
    if let Some(name) = &entry.name {
        let digits: String = name
            .chars()
            .skip_while(|c| !c.is_ascii_digit())
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if !digits.is_empty() {
            return digits;
        }
    }
    entry.n.to_string()
}

/// Groups deviations by instance size and reports each group's mean in
/// percent. The size is the first digit run of the instance name, so
/// "r100a2" and "r100b1" both land in group "100"; unnamed instances fall
/// back to their node count. The overall figure averages the group means
/// without weighting by group size.
pub fn aggregate(entries: &[DeviationEntry]) -> AggregateReport {
    let mut groups: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for entry in entries {
        groups.entry(size_key(entry)).or_default().push(entry.deviation);
    }
    let mut rows: Vec<AggregateRow> = groups
        .into_iter()
        .map(|(size, devs)| AggregateRow {
            count: devs.len(),
            mean_percent: 100.0 * devs.iter().sum::<f64>() / devs.len() as f64,
            size,
        })
        .collect();
    rows.sort_by(|a, b| {
        let num = |s: &str| s.parse::<u64>().ok();
        match (num(&a.size), num(&b.size)) {
            (Some(x), Some(y)) => x.cmp(&y),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.size.cmp(&b.size),
        }
    });
    let overall_percent = if rows.is_empty() {
        None
    } else {
        Some(rows.iter().map(|r| r.mean_percent).sum::<f64>() / rows.len() as f64)
    };
    AggregateReport {
        rows,
        overall_percent,
    }
}

fn next_permutation(order: &mut [usize]) -> bool {
    let n = order.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && order[i - 1] >= order[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while order[j] <= order[i - 1] {
        j -= 1;
    }
    order.swap(i - 1, j);
    order[i..].reverse();
    true
}

/// Exhaustively evaluates every ordering of a small instance and returns a
/// maximizer with its value. Ties go to the lexicographically smallest
/// ordering. Refuses instances with more than 10 nodes.
pub fn brute_force_optimal(instance: &Instance) -> Result<(Weight, Permutation)> {
    const LIMIT: usize = 10;
    let n = instance.n();
    if n > LIMIT {
        return Err(LopError::SizeLimit { n, limit: LIMIT });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = Permutation::from_order(order.clone())?;
    let mut best_value = instance.objective(&best)?;
    while next_permutation(&mut order) {
        let perm = Permutation::from_order(order.clone())?;
        let value = instance.objective(&perm)?;
        if value > best_value {
            best_value = value;
            best = perm;
        }
    }
    Ok((best_value, best))
}

/// What to run: instances, algorithms, replicate count and shared knobs.
///
/// `params.algorithm` and `params.iterations` are placeholders here; the
/// runner overrides them per row from `algorithms` and `iterations`.
#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    pub instance_paths: Vec<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    pub iterations: usize,
    pub params: ColonyParams,
    /// Run `k` of every row uses seed `base_seed + k`.
    pub base_seed: u64,
    /// Known optima keyed by instance name.
    pub optima: Option<BTreeMap<String, Weight>>,
}

/// One replicate of one algorithm on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Zero-based; the CSV prints it one-based.
    pub run_index: usize,
    pub seed: u64,
    pub best_value: Weight,
    /// Present only when a usable optimum was supplied.
    pub deviation: Option<f64>,
    /// Wall-clock duration of the run, full resolution.
    pub seconds: f64,
}

/// All replicates of one `(instance, algorithm)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub instance: String,
    pub n: usize,
    pub algorithm: Algorithm,
    pub iterations: usize,
    pub optimum: Option<Weight>,
    pub records: Vec<RunRecord>,
    pub mean_deviation: Option<f64>,
    pub mean_seconds: f64,
}

/// Everything a benchmark produced, including per-file failures.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchmarkReport {
    /// Ordered by (instance position, algorithm position) in the config.
    pub rows: Vec<ReportRow>,
    /// Instance files that could not be loaded, with the reason.
    pub errors: Vec<(PathBuf, String)>,
}

impl BenchmarkReport {
    /// Per-size deviation means for one algorithm's rows. Rows without a
    /// mean deviation are skipped.
    pub fn aggregate(&self, algorithm: Algorithm) -> AggregateReport {
        let entries: Vec<DeviationEntry> = self
            .rows
            .iter()
            .filter(|r| r.algorithm == algorithm)
            .filter_map(|r| {
                r.mean_deviation.map(|deviation| DeviationEntry {
                    name: Some(r.instance.clone()),
                    n: r.n,
                    deviation,
                })
            })
            .collect();
        aggregate(&entries)
    }
}

/// Runs `runs` seeded replicates of one algorithm on one instance.
/// Replicate `k` uses seed `base_seed + k`. When an optimum is supplied,
/// each replicate gets a deviation: exact hits count as zero even for a
/// zero optimum, and a negative or zero optimum that was not hit is
/// unusable, so those deviations are omitted with a warning.
pub fn benchmark_instance(
    instance: &Instance,
    algorithm: Algorithm,
    base: &ColonyParams,
    runs: usize,
    iterations: usize,
    base_seed: u64,
    optimum: Option<Weight>,
) -> Result<ReportRow> {
    if runs == 0 {
        return Err(LopError::InvalidArgument(
            "at least one run is required".to_string(),
        ));
    }
    let name = instance
        .name()
        .map(str::to_string)
        .unwrap_or_else(|| format!("n{}", instance.n()));
    let mut params = base.clone();
    params.algorithm = algorithm;
    params.iterations = iterations;
    if matches!(optimum, Some(o) if o.is_nan() || o <= 0.0) {
        log::warn!(
            "optimum {} for {name} is not positive, deviations reported only for exact hits",
            optimum.unwrap()
        );
    }
    let mut records = Vec::with_capacity(runs);
    for run_index in 0..runs {
        let seed = base_seed.wrapping_add(run_index as u64);
        let started = Instant::now();
        let result = run(instance, &params, seed)?;
        let seconds = started.elapsed().as_secs_f64();
        let dev = match optimum {
            Some(o) if result.best_value == o => Some(0.0),
            Some(o) if o > 0.0 => Some(deviation(result.best_value, o)?),
            _ => None,
        };
        records.push(RunRecord {
            run_index,
            seed,
            best_value: result.best_value,
            deviation: dev,
            seconds,
        });
    }
    let mean_deviation = if records.iter().all(|r| r.deviation.is_some()) {
        Some(records.iter().filter_map(|r| r.deviation).sum::<f64>() / runs as f64)
    } else {
        None
    };
    let mean_seconds = records.iter().map(|r| r.seconds).sum::<f64>() / runs as f64;
    Ok(ReportRow {
        instance: name,
        n: instance.n(),
        algorithm,
        iterations,
        optimum,
        records,
        mean_deviation,
        mean_seconds,
    })
}

/// Runs the whole benchmark. Instance files that fail to load are recorded
/// in the report's error list and the remaining instances still run. Rows
/// appear in config order: instances outermost, then algorithms, then the
/// seeded replicates inside each row.
pub fn run_benchmark(config: &BenchmarkConfig) -> Result<BenchmarkReport> {
    if config.runs == 0 || config.iterations == 0 {
        return Err(LopError::InvalidArgument(
            "runs and iterations must both be at least 1".to_string(),
        ));
    }
    let mut report = BenchmarkReport::default();
    for path in &config.instance_paths {
        let instance = match load_instance(path) {
            Ok(instance) => instance,
            Err(err) => {
                log::warn!("skipping {}: {err}", path.display());
                report.errors.push((path.clone(), err.to_string()));
                continue;
            }
        };
        let optimum = config.optima.as_ref().and_then(|m| {
            instance.name().and_then(|name| m.get(name)).copied()
        });
        for &algorithm in &config.algorithms {
            report.rows.push(benchmark_instance(
                &instance,
                algorithm,
                &config.params,
                config.runs,
                config.iterations,
                config.base_seed,
                optimum,
            )?);
        }
    }
    Ok(report)
}

/// Writes the report as CSV: one line per replicate, mandatory header,
/// columns `instance,algorithm,run,seed,best_value,optimum,deviation,
/// iterations,seconds`. Deviations use six decimal places; unknown optima
/// leave both fields empty. The run column is one-based and the seconds
/// column is wall time rounded down to whole seconds, so reruns of a
/// deterministic config produce identical bytes.
pub fn write_csv<W: io::Write>(report: &BenchmarkReport, out: &mut W) -> io::Result<()> {
    writeln!(
        out,
        "instance,algorithm,run,seed,best_value,optimum,deviation,iterations,seconds"
    )?;
    for row in &report.rows {
        for record in &row.records {
            let optimum = row.optimum.map(|o| o.to_string()).unwrap_or_default();
            let dev = record
                .deviation
                .map(|d| format!("{d:.6}"))
                .unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                row.instance,
                row.algorithm,
                record.run_index + 1,
                record.seed,
                record.best_value,
                optimum,
                dev,
                row.iterations,
                record.seconds as u64
            )?;
        }
    }
    Ok(())
}

/// Parses an optima sidecar: one `name value` pair per line, blank lines
/// skipped, lines starting with '#' ignored.
pub fn parse_optima(text: &str) -> Result<BTreeMap<String, Weight>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [name, value] = fields[..] else {
            return Err(LopError::Config(format!(
                "optima line {}: expected \"name value\", got {line:?}",
                idx + 1
            )));
        };
        let value: f64 = value.parse().map_err(|_| {
            LopError::Config(format!(
                "optima line {}: bad value {value:?} for {name}",
                idx + 1
            ))
        })?;
        if !value.is_finite() {
            return Err(LopError::Config(format!(
                "optima line {}: value for {name} is not finite",
                idx + 1
            )));
        }
        map.insert(name.to_string(), value);
    }
    Ok(map)
}

/// Loads an optima sidecar file.
pub fn load_optima(path: &Path) -> Result<BTreeMap<String, Weight>> {
    parse_optima(&std::fs::read_to_string(path)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBenchConfig {
    instances: Vec<String>,
    algorithms: Option<Vec<String>>,
    runs: Option<usize>,
    iterations: Option<usize>,
    base_seed: Option<u64>,
    optima: Option<String>,
    out: Option<String>,
    params: Option<RawParams>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    alpha: Option<f64>,
    beta: Option<f64>,
    tau0: Option<f64>,
    rho: Option<f64>,
    q0: Option<f64>,
    ants: Option<usize>,
    tau_min: Option<f64>,
    fixed_psl: Option<f64>,
}

fn resolve(dir: &Path, raw: &str) -> PathBuf {
    let p = PathBuf::from(raw);
    if p.is_absolute() {
        p
    } else {
        dir.join(p)
    }
}

/// Loads a TOML benchmark config. Relative paths inside the file (instances,
/// the optima sidecar, the output CSV) resolve against the config file's
/// directory. Omitted fields default to both algorithms, 5 runs, 200
/// iterations, base seed 1 and the standard knobs. Returns the config and
/// the optional output path.
///
/// ```toml
/// instances = ["r100a2.mat"]
/// algorithms = ["acs-im", "sb-sam"]
/// runs = 5
/// iterations = 200
/// base_seed = 1
/// optima = "optima.txt"
/// out = "report.csv"
///
/// [params]
/// alpha = 1.0
/// beta = 2.0
/// tau0 = 0.1
/// rho = 0.1
/// q0 = 0.5
/// ants = 10
/// tau_min = 0.001
/// ```
pub fn load_bench_config(path: &Path) -> Result<(BenchmarkConfig, Option<PathBuf>)> {
    let text = std::fs::read_to_string(path)?;
    let raw: RawBenchConfig = toml::from_str(&text).map_err(|e| {
        LopError::Config(format!("{}: {}", path.display(), e.message()))
    })?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    if raw.instances.is_empty() {
        return Err(LopError::Config(format!(
            "{}: no instances listed",
            path.display()
        )));
    }
    let algorithms = match raw.algorithms {
        None => vec![Algorithm::AcsIm, Algorithm::SbSam],
        Some(names) if names.is_empty() => {
            return Err(LopError::Config(format!(
                "{}: algorithm list is empty",
                path.display()
            )));
        }
        Some(names) => names
            .iter()
            .map(|s| {
                s.parse::<Algorithm>().map_err(|_| {
                    LopError::Config(format!(
                        "{}: unknown algorithm {s:?}",
                        path.display()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let mut params = ColonyParams::new(algorithms[0]);
    if let Some(p) = raw.params {
        if let Some(v) = p.alpha {
            params.alpha = v;
        }
        if let Some(v) = p.beta {
            params.beta = v;
        }
        if let Some(v) = p.tau0 {
            params.tau0 = v;
        }
        if let Some(v) = p.rho {
            params.rho = v;
        }
        if let Some(v) = p.q0 {
            params.q0 = v;
        }
        if let Some(v) = p.ants {
            params.m = v;
        }
        if let Some(v) = p.tau_min {
            params.tau_min = v;
        }
        params.fixed_psl = p.fixed_psl;
    }
    let iterations = raw.iterations.unwrap_or(200);
    params.iterations = iterations;
    params.validate()?;
    let optima = match raw.optima {
        Some(rel) => Some(load_optima(&resolve(dir, &rel))?),
        None => None,
    };
    let config = BenchmarkConfig {
        instance_paths: raw.instances.iter().map(|s| resolve(dir, s)).collect(),
        algorithms,
        runs: raw.runs.unwrap_or(5),
        iterations,
        params,
        base_seed: raw.base_seed.unwrap_or(1),
        optima,
    };
    Ok((config, raw.out.map(|s| resolve(dir, &s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{generate_random_instance, write_instance};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // ===== deviation =====

    #[test]
    fn exact_hit_deviates_by_zero() {
        assert_eq!(deviation(197652.0, 197652.0).unwrap(), 0.0);
    }

    #[test]
    fn total_miss_deviates_by_one() {
        assert_eq!(deviation(0.0, 123.0).unwrap(), 1.0);
    }

    #[test]
    fn non_positive_optimum_is_rejected() {
        assert!(deviation(1.0, 0.0).is_err());
        assert!(deviation(1.0, -5.0).is_err());
        assert!(deviation(1.0, f64::NAN).is_err());
    }

    #[test]
    fn five_run_mean_matches_the_published_size_100_figure() {
        let devs = [0.0023, 0.0046, 0.0032, 0.0047, 0.0024];
        let mean = devs.iter().sum::<f64>() / devs.len() as f64;
        assert!((mean - 0.00344).abs() < 1e-12);
        assert!((100.0 * mean - 0.344).abs() < 1e-9);
    }

    // ===== aggregate =====

    fn entry(name: &str, n: usize, deviation: f64) -> DeviationEntry {
        DeviationEntry {
            name: Some(name.to_string()),
            n,
            deviation,
        }
    }

    #[test]
    fn single_row_aggregate_is_the_row_times_100() {
        let report = aggregate(&[entry("r100a2", 100, 0.003448)]);
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].size, "100");
        assert_eq!(report.rows[0].count, 1);
        assert!((report.rows[0].mean_percent - 0.3448).abs() < 1e-9);
        assert!((report.overall_percent.unwrap() - 0.3448).abs() < 1e-9);
    }

    #[test]
    fn size_200_group_mean_reproduces_the_published_value() {
        let devs = [
            0.0011, 0.0015, 0.0012, 0.0001, 0.0012, 0.0001, 0.0015, 0.0014, 0.0007, 0.0010,
        ];
        let entries: Vec<DeviationEntry> = devs
            .iter()
            .enumerate()
            .map(|(k, &d)| entry(&format!("r200x{k}"), 200, d))
            .collect();
        let report = aggregate(&entries);
        assert_eq!(report.rows.len(), 1);
        assert!((report.rows[0].mean_percent - 0.098).abs() < 1e-9);
    }

    #[test]
    fn groups_form_by_leading_digit_run_with_numeric_order() {
        let entries = vec![
            entry("r100a2", 100, 0.002),
            entry("r100b1", 100, 0.004),
            entry("small8x", 8, 0.1),
            DeviationEntry {
                name: None,
                n: 50,
                deviation: 0.05,
            },
        ];
        let report = aggregate(&entries);
        let sizes: Vec<&str> = report.rows.iter().map(|r| r.size.as_str()).collect();
        assert_eq!(sizes, vec!["8", "50", "100"]);
        let hundred = &report.rows[2];
        assert_eq!(hundred.count, 2);
        assert!((hundred.mean_percent - 0.3).abs() < 1e-9);
    }

    #[test]
    fn empty_aggregate_is_empty() {
        let report = aggregate(&[]);
        assert!(report.rows.is_empty());
        assert_eq!(report.overall_percent, None);
    }

    #[test]
    fn overall_mean_averages_group_means_not_rows() {
        // two rows in one group, one in the other: the overall mean weights
        // the groups equally
        let entries = vec![
            entry("a10x", 10, 0.0),
            entry("b10x", 10, 0.002),
            entry("c20x", 20, 0.003),
        ];
        let report = aggregate(&entries);
        assert!((report.overall_percent.unwrap() - 0.2).abs() < 1e-9);
    }

    // ===== brute force oracle =====

    #[test]
    fn two_node_oracle() {
        let inst = Instance::new(vec![vec![0.0, 5.0], vec![3.0, 0.0]]).unwrap();
        let (value, perm) = brute_force_optimal(&inst).unwrap();
        assert_eq!(value, 5.0);
        assert_eq!(perm.as_slice(), &[0, 1]);
    }

    #[test]
    fn single_node_oracle() {
        let inst = Instance::new(vec![vec![0.0]]).unwrap();
        let (value, perm) = brute_force_optimal(&inst).unwrap();
        assert_eq!(value, 0.0);
        assert_eq!(perm.as_slice(), &[0]);
    }

    #[test]
    fn oracle_refuses_large_instances() {
        let inst = generate_random_instance(11, 0, 9, 1).unwrap();
        assert!(matches!(
            brute_force_optimal(&inst),
            Err(LopError::SizeLimit { n: 11, limit: 10 })
        ));
    }

    #[test]
    fn oracle_ties_break_to_the_lexicographically_smallest_ordering() {
        let inst = Instance::new(vec![vec![0.0; 3]; 3]).unwrap();
        let (value, perm) = brute_force_optimal(&inst).unwrap();
        assert_eq!(value, 0.0);
        assert_eq!(perm.as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn oracle_dominates_random_sampling() {
        let inst = generate_random_instance(6, 0, 99, 3).unwrap();
        let (value, _) = brute_force_optimal(&inst).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut order: Vec<usize> = (0..6).collect();
        for _ in 0..1000 {
            order.shuffle(&mut rng);
            let perm = Permutation::from_order(order.clone()).unwrap();
            assert!(inst.objective(&perm).unwrap() <= value);
        }
    }

    // ===== optima sidecar =====

    #[test]
    fn sidecar_parses_pairs_and_skips_comments() {
        let text = "# known optima\n\nr100a2 197652\nr150b1   397423\n";
        let map = parse_optima(text).unwrap();
        assert_eq!(map.len(), 2);
        assert_eq!(map["r100a2"], 197652.0);
        assert_eq!(map["r150b1"], 397423.0);
    }

    #[test]
    fn sidecar_rejects_malformed_lines() {
        assert!(matches!(
            parse_optima("r100a2\n"),
            Err(LopError::Config(_))
        ));
        assert!(matches!(
            parse_optima("r100a2 one\n"),
            Err(LopError::Config(_))
        ));
        assert!(matches!(
            parse_optima("r100a2 1 2\n"),
            Err(LopError::Config(_))
        ));
        assert!(matches!(
            parse_optima("r100a2 inf\n"),
            Err(LopError::Config(_))
        ));
    }

    // ===== benchmark runner =====

    fn quick_params() -> ColonyParams {
        let mut p = ColonyParams::new(Algorithm::AcsIm);
        p.m = 4;
        p
    }

    #[test]
    fn single_run_on_a_single_node_instance_deviates_by_zero() {
        let inst = Instance::new(vec![vec![0.0]]).unwrap();
        let row = benchmark_instance(
            &inst,
            Algorithm::SbSam,
            &quick_params(),
            1,
            5,
            0,
            Some(0.0),
        )
        .unwrap();
        assert_eq!(row.records.len(), 1);
        assert_eq!(row.records[0].deviation, Some(0.0));
        assert_eq!(row.mean_deviation, Some(0.0));
    }

    #[test]
    fn replicates_use_consecutive_seeds() {
        let inst = generate_random_instance(6, 0, 9, 5).unwrap();
        let row = benchmark_instance(
            &inst,
            Algorithm::AcsIm,
            &quick_params(),
            3,
            10,
            100,
            None,
        )
        .unwrap();
        let seeds: Vec<u64> = row.records.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, vec![100, 101, 102]);
        assert_eq!(row.mean_deviation, None);
        assert!(row.records.iter().all(|r| r.deviation.is_none()));
    }

    #[test]
    fn zero_runs_is_rejected() {
        let inst = generate_random_instance(4, 0, 9, 5).unwrap();
        assert!(
            benchmark_instance(&inst, Algorithm::AcsIm, &quick_params(), 0, 10, 1, None).is_err()
        );
    }

    fn write_temp_instance(dir: &Path, name: &str, n: usize, seed: u64) -> PathBuf {
        let inst = generate_random_instance(n, 0, 99, seed).unwrap();
        let path = dir.join(format!("{name}.mat"));
        std::fs::write(&path, write_instance(&inst)).unwrap();
        path
    }

    #[test]
    fn benchmark_records_file_errors_and_keeps_going() {
        let dir = tempfile::tempdir().unwrap();
        let good = write_temp_instance(dir.path(), "good6", 6, 1);
        let config = BenchmarkConfig {
            instance_paths: vec![dir.path().join("missing.mat"), good],
            algorithms: vec![Algorithm::AcsIm],
            runs: 1,
            iterations: 5,
            params: quick_params(),
            base_seed: 1,
            optima: None,
        };
        let report = run_benchmark(&config).unwrap();
        assert_eq!(report.errors.len(), 1);
        assert!(report.errors[0].0.ends_with("missing.mat"));
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.rows[0].instance, "good6");
    }

    #[test]
    fn benchmark_is_deterministic_apart_from_wall_time() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_temp_instance(dir.path(), "det8", 8, 2);
        let config = BenchmarkConfig {
            instance_paths: vec![path],
            algorithms: vec![Algorithm::AcsIm, Algorithm::SbSam],
            runs: 2,
            iterations: 20,
            params: quick_params(),
            base_seed: 7,
            optima: None,
        };
        let a = run_benchmark(&config).unwrap();
        let b = run_benchmark(&config).unwrap();
        type Stripped = Vec<(String, Algorithm, Vec<(u64, f64)>)>;
        let strip = |r: &BenchmarkReport| -> Stripped {
            r.rows
                .iter()
                .map(|row| {
                    (
                        row.instance.clone(),
                        row.algorithm,
                        row.records
                            .iter()
                            .map(|rec| (rec.seed, rec.best_value))
                            .collect(),
                    )
                })
                .collect()
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn small_instances_with_oracle_optima_stay_near_the_optimum() {
        let dir = tempfile::tempdir().unwrap();
        let mut paths = Vec::new();
        let mut optima = BTreeMap::new();
        for k in 0..5u64 {
            let name = format!("mini{k}");
            let path = write_temp_instance(dir.path(), &name, 8, 40 + k);
            let inst = crate::io::load_instance(&path).unwrap();
            let (opt, _) = brute_force_optimal(&inst).unwrap();
            optima.insert(name, opt);
            paths.push(path);
        }
        let mut params = quick_params();
        params.m = 10;
        let config = BenchmarkConfig {
            instance_paths: paths,
            algorithms: vec![Algorithm::AcsIm, Algorithm::SbSam],
            runs: 2,
            iterations: 200,
            params,
            base_seed: 1,
            optima: Some(optima),
        };
        let report = run_benchmark(&config).unwrap();
        assert!(report.errors.is_empty());
        assert_eq!(report.rows.len(), 10);
        let devs: Vec<f64> = report.rows.iter().map(|r| r.mean_deviation.unwrap()).collect();
        let mean = devs.iter().sum::<f64>() / devs.len() as f64;
        assert!(mean <= 0.01, "mean deviation {mean} above 0.01");
        for d in devs {
            assert!((0.0..=1.0).contains(&d));
        }
    }

    #[test]
    fn report_aggregation_filters_by_algorithm() {
        let row = |alg: Algorithm, name: &str, dev: f64| ReportRow {
            instance: name.to_string(),
            n: 8,
            algorithm: alg,
            iterations: 10,
            optimum: Some(100.0),
            records: Vec::new(),
            mean_deviation: Some(dev),
            mean_seconds: 0.0,
        };
        let report = BenchmarkReport {
            rows: vec![
                row(Algorithm::AcsIm, "x100a", 0.002),
                row(Algorithm::SbSam, "x100a", 0.004),
            ],
            errors: Vec::new(),
        };
        let acs = report.aggregate(Algorithm::AcsIm);
        assert_eq!(acs.rows.len(), 1);
        assert!((acs.rows[0].mean_percent - 0.2).abs() < 1e-9);
        let sam = report.aggregate(Algorithm::SbSam);
        assert!((sam.rows[0].mean_percent - 0.4).abs() < 1e-9);
    }

    // ===== CSV =====

    #[test]
    fn csv_layout_is_exact() {
        let report = BenchmarkReport {
            rows: vec![ReportRow {
                instance: "r100a2".to_string(),
                n: 100,
                algorithm: Algorithm::AcsIm,
                iterations: 200,
                optimum: Some(197652.0),
                records: vec![
                    RunRecord {
                        run_index: 0,
                        seed: 1,
                        best_value: 197652.0,
                        deviation: Some(0.0),
                        seconds: 0.4,
                    },
                    RunRecord {
                        run_index: 1,
                        seed: 2,
                        best_value: 197000.0,
                        deviation: Some(0.0032991),
                        seconds: 1.6,
                    },
                ],
                mean_deviation: Some(0.00164955),
                mean_seconds: 1.0,
            }],
            errors: Vec::new(),
        };
        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        let expected = "instance,algorithm,run,seed,best_value,optimum,deviation,iterations,seconds\n\
                        r100a2,acs-im,1,1,197652,197652,0.000000,200,0\n\
                        r100a2,acs-im,2,2,197000,197652,0.003299,200,1\n";
        assert_eq!(String::from_utf8(buf).unwrap(), expected);
    }

    #[test]
    fn csv_leaves_unknown_optima_empty() {
        let report = BenchmarkReport {
            rows: vec![ReportRow {
                instance: "mystery".to_string(),
                n: 5,
                algorithm: Algorithm::SbSam,
                iterations: 50,
                optimum: None,
                records: vec![RunRecord {
                    run_index: 0,
                    seed: 9,
                    best_value: 42.0,
                    deviation: None,
                    seconds: 0.01,
                }],
                mean_deviation: None,
                mean_seconds: 0.01,
            }],
            errors: Vec::new(),
        };
        let mut buf = Vec::new();
        write_csv(&report, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.ends_with("mystery,sb-sam,1,9,42,,,50,0\n"));
    }

    // ===== config loader =====

    #[test]
    fn config_defaults_and_relative_paths() {
        let dir = tempfile::tempdir().unwrap();
        write_temp_instance(dir.path(), "c6", 6, 1);
        std::fs::write(dir.path().join("optima.txt"), "c6 10\n").unwrap();
        let config_path = dir.path().join("bench.toml");
        std::fs::write(
            &config_path,
            "instances = [\"c6.mat\"]\noptima = \"optima.txt\"\nout = \"report.csv\"\n",
        )
        .unwrap();
        let (config, out) = load_bench_config(&config_path).unwrap();
        assert_eq!(config.instance_paths, vec![dir.path().join("c6.mat")]);
        assert_eq!(
            config.algorithms,
            vec![Algorithm::AcsIm, Algorithm::SbSam]
        );
        assert_eq!(config.runs, 5);
        assert_eq!(config.iterations, 200);
        assert_eq!(config.base_seed, 1);
        assert_eq!(config.params.alpha, 1.0);
        assert_eq!(config.params.m, 10);
        assert_eq!(config.optima.unwrap()["c6"], 10.0);
        assert_eq!(out, Some(dir.path().join("report.csv")));
    }

    #[test]
    fn config_overrides_apply() {
        let dir = tempfile::tempdir().unwrap();
        let config_path = dir.path().join("bench.toml");
        std::fs::write(
            &config_path,
            "instances = [\"/abs/x.mat\"]\nalgorithms = [\"sb-sam\"]\nruns = 2\n\
             iterations = 50\nbase_seed = 99\n\n[params]\nbeta = 3.0\nants = 7\nfixed_psl = 0.4\n",
        )
        .unwrap();
        let (config, out) = load_bench_config(&config_path).unwrap();
        assert_eq!(config.instance_paths, vec![PathBuf::from("/abs/x.mat")]);
        assert_eq!(config.algorithms, vec![Algorithm::SbSam]);
        assert_eq!(config.runs, 2);
        assert_eq!(config.iterations, 50);
        assert_eq!(config.base_seed, 99);
        assert_eq!(config.params.beta, 3.0);
        assert_eq!(config.params.m, 7);
        assert_eq!(config.params.fixed_psl, Some(0.4));
        assert_eq!(out, None);
    }

    #[test]
    fn config_rejects_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let write = |name: &str, body: &str| {
            let p = dir.path().join(name);
            std::fs::write(&p, body).unwrap();
            p
        };
        let bad_toml = write("a.toml", "instances = [\n");
        assert!(matches!(
            load_bench_config(&bad_toml),
            Err(LopError::Config(_))
        ));
        let no_instances = write("b.toml", "instances = []\n");
        assert!(matches!(
            load_bench_config(&no_instances),
            Err(LopError::Config(_))
        ));
        let bad_algo = write(
            "c.toml",
            "instances = [\"x.mat\"]\nalgorithms = [\"genetic\"]\n",
        );
        assert!(matches!(
            load_bench_config(&bad_algo),
            Err(LopError::Config(_))
        ));
        let unknown_key = write("d.toml", "instances = [\"x.mat\"]\nbogus = 1\n");
        assert!(matches!(
            load_bench_config(&unknown_key),
            Err(LopError::Config(_))
        ));
        assert!(load_bench_config(&dir.path().join("missing.toml")).is_err());
    }
}
