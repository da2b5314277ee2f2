//! Replicated ensemble experiments behind the simulation studies: parameter
//! sweeps over the ER, BA and SBM generators and the rewiring pipeline, with
//! long-format records and per-cell summary statistics for boxplot
//! reconstruction.
//!
//! Replicate r of any design is seeded `base_seed + r`, so a single replicate
//! can be reproduced in isolation. Replicates run in parallel; record order
//! is deterministic regardless of scheduling.

use crate::assort::{assortativity_profile, undirected_assortativity, DIRECTION_PAIRS};
use crate::error::{Degeneracy, Result};
use crate::gen::{gen_ba, gen_er, gen_sbm, BaConfig, ErConfig, SbmConfig};
use crate::graph::WeightedDigraph;
use crate::rewire::{rewire_to_target, EdgeSelection, RewireConfig, StrengthDistribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// A metric observation: a value, or the reason it is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricValue {
    Value(f64),
    Missing(Degeneracy),
}

impl MetricValue {
    pub fn value(self) -> Option<f64> {
        match self {
            MetricValue::Value(v) => Some(v),
            MetricValue::Missing(_) => None,
        }
    }
}

/// One long-format record: replicate x parameter x metric.
#[derive(Debug, Clone)]
pub struct Record {
    pub replicate: usize,
    pub parameter_name: String,
    pub parameter_value: f64,
    pub metric: String,
    pub value: MetricValue,
}

/// Per-cell summary statistic (computed over non-missing replicate values).
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub parameter_name: String,
    pub parameter_value: f64,
    pub metric: String,
    pub stat: String,
    pub value: f64,
}

/// The eight profile metrics in emission order.
pub fn profile_metric_names() -> Vec<String> {
    let mut names = Vec::with_capacity(8);
    for measure in ["weighted", "unweighted"] {
        for (alpha, beta) in DIRECTION_PAIRS {
            names.push(format!("{measure}_{}_{}", alpha.label(), beta.label()));
        }
    }
    names
}

fn profile_metrics(g: &WeightedDigraph) -> Vec<(String, MetricValue)> {
    let profile = assortativity_profile(g);
    let mut out = Vec::with_capacity(8);
    for (i, (alpha, beta)) in DIRECTION_PAIRS.iter().enumerate() {
        let value = match profile.weighted[i] {
            Ok(v) => MetricValue::Value(v),
            Err(d) => MetricValue::Missing(d),
        };
        out.push((format!("weighted_{}_{}", alpha.label(), beta.label()), value));
    }
    for (i, (alpha, beta)) in DIRECTION_PAIRS.iter().enumerate() {
        let value = match profile.unweighted[i] {
            Ok(v) => MetricValue::Value(v),
            Err(d) => MetricValue::Missing(d),
        };
        out.push((format!("unweighted_{}_{}", alpha.label(), beta.label()), value));
    }
    out
}

/// Run one parameter cell: `replicates` seeded runs of `body`, in parallel,
/// flattened into records in (replicate, metric) order.
fn run_cell<F>(
    parameter_name: &str,
    parameter_value: f64,
    replicates: usize,
    base_seed: u64,
    body: F,
) -> Result<Vec<Record>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Vec<(String, MetricValue)>> + Sync,
{
    let per_replicate: Vec<Result<Vec<(String, MetricValue)>>> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(base_seed + r as u64);
            body(&mut rng)
        })
        .collect();
    let mut records = Vec::new();
    for (r, metrics) in per_replicate.into_iter().enumerate() {
        for (metric, value) in metrics? {
            records.push(Record {
                replicate: r,
                parameter_name: parameter_name.to_string(),
                parameter_value,
                metric,
                value,
            });
        }
    }
    Ok(records)
}

/// ER sweep over network order (Figure-1-style design).
#[derive(Debug, Clone)]
pub struct ErSweep {
    pub n_values: Vec<usize>,
    pub p: f64,
    pub theta: u32,
    pub replicates: usize,
    pub base_seed: u64,
}

impl Default for ErSweep {
    fn default() -> Self {
        Self {
            n_values: (1..=15).map(|k| k * 10).collect(),
            p: 0.2,
            theta: 10,
            replicates: 100,
            base_seed: 1,
        }
    }
}

pub fn run_er_sweep(cfg: &ErSweep) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    for &n in &cfg.n_values {
        let er = ErConfig {
            n,
            p: cfg.p,
            theta: cfg.theta,
        };
        records.extend(run_cell("n", n as f64, cfg.replicates, cfg.base_seed, |rng| {
            Ok(profile_metrics(&gen_er(&er, rng)?))
        })?);
    }
    Ok(records)
}

/// BA sweep over network order (Figure-2-style design).
#[derive(Debug, Clone)]
pub struct BaSweep {
    pub n_values: Vec<usize>,
    pub alpha: f64,
    pub delta_in: f64,
    pub delta_out: f64,
    pub theta: u32,
    pub replicates: usize,
    pub base_seed: u64,
}

impl Default for BaSweep {
    fn default() -> Self {
        Self {
            n_values: (4..=10).map(|k| 1usize << k).collect(),
            alpha: 0.6,
            delta_in: 1.0,
            delta_out: 1.0,
            theta: 10,
            replicates: 100,
            base_seed: 1,
        }
    }
}

pub fn run_ba_sweep(cfg: &BaSweep) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    for &n in &cfg.n_values {
        let ba = BaConfig {
            steps: n.saturating_sub(2),
            alpha: cfg.alpha,
            gamma: 1.0 - cfg.alpha,
            delta_in: cfg.delta_in,
            delta_out: cfg.delta_out,
            theta: cfg.theta,
            big_edge: None,
        };
        records.extend(run_cell("n", n as f64, cfg.replicates, cfg.base_seed, |rng| {
            Ok(profile_metrics(&gen_ba(&ba, rng)?))
        })?);
    }
    Ok(records)
}

/// Fixed-size BA networks with one big-weight edge arriving at varying times
/// (Figure-3-style design).
#[derive(Debug, Clone)]
pub struct BaBigEdge {
    pub steps: usize,
    pub arrival_steps: Vec<usize>,
    pub big_weight: f64,
    pub alpha: f64,
    pub delta_in: f64,
    pub delta_out: f64,
    pub theta: u32,
    pub replicates: usize,
    pub base_seed: u64,
}

impl Default for BaBigEdge {
    fn default() -> Self {
        Self {
            steps: 500,
            arrival_steps: vec![10, 100, 250, 400, 500],
            big_weight: 1000.0,
            alpha: 0.6,
            delta_in: 1.0,
            delta_out: 1.0,
            theta: 10,
            replicates: 100,
            base_seed: 1,
        }
    }
}

pub fn run_ba_big_edge(cfg: &BaBigEdge) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    for &arrival in &cfg.arrival_steps {
        let ba = BaConfig {
            steps: cfg.steps,
            alpha: cfg.alpha,
            gamma: 1.0 - cfg.alpha,
            delta_in: cfg.delta_in,
            delta_out: cfg.delta_out,
            theta: cfg.theta,
            big_edge: Some((arrival, cfg.big_weight)),
        };
        records.extend(run_cell(
            "arrival_step",
            arrival as f64,
            cfg.replicates,
            cfg.base_seed,
            |rng| Ok(profile_metrics(&gen_ba(&ba, rng)?)),
        )?);
    }
    Ok(records)
}

/// SBM sweep over community size (Figure-4-style design).
#[derive(Debug, Clone)]
pub struct SbmSize {
    pub sizes: Vec<usize>,
    pub p_within: f64,
    pub p_between: f64,
    pub weight_range_1: (f64, f64),
    pub weight_range_2: (f64, f64),
    pub between_weight: f64,
    pub replicates: usize,
    pub base_seed: u64,
}

impl Default for SbmSize {
    fn default() -> Self {
        Self {
            sizes: (1..=10).map(|k| k * 50).collect(),
            p_within: 0.2,
            p_between: 0.02,
            weight_range_1: (0.0, 5.0),
            weight_range_2: (5.0, 10.0),
            between_weight: 5.0,
            replicates: 100,
            base_seed: 1,
        }
    }
}

pub fn run_sbm_size(cfg: &SbmSize) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    for &size in &cfg.sizes {
        let sbm = SbmConfig {
            community_size: size,
            p_within: cfg.p_within,
            p_between: cfg.p_between,
            weight_range_1: cfg.weight_range_1,
            weight_range_2: cfg.weight_range_2,
            between_weight: cfg.between_weight,
        };
        records.extend(run_cell(
            "community_size",
            size as f64,
            cfg.replicates,
            cfg.base_seed,
            |rng| Ok(profile_metrics(&gen_sbm(&sbm, rng)?)),
        )?);
    }
    Ok(records)
}

/// SBM sensitivity over between-community density and weight factor
/// (Figure-5-style design): weights `5k` for `k` in `weight_factors`, cells
/// labelled `p_between[k=<factor>]`.
#[derive(Debug, Clone)]
pub struct SbmSensitivity {
    pub community_size: usize,
    pub p_within: f64,
    pub p_between_values: Vec<f64>,
    pub weight_factors: Vec<f64>,
    pub base_between_weight: f64,
    pub weight_range_1: (f64, f64),
    pub weight_range_2: (f64, f64),
    pub replicates: usize,
    pub base_seed: u64,
}

impl Default for SbmSensitivity {
    fn default() -> Self {
        Self {
            community_size: 500,
            p_within: 0.2,
            p_between_values: (2..=10).map(|k| k as f64 / 100.0).collect(),
            weight_factors: vec![1.0, 0.5, 0.25, 0.125],
            base_between_weight: 5.0,
            weight_range_1: (0.0, 5.0),
            weight_range_2: (5.0, 10.0),
            replicates: 100,
            base_seed: 1,
        }
    }
}

pub fn run_sbm_sensitivity(cfg: &SbmSensitivity) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    for &factor in &cfg.weight_factors {
        let name = format!("p_between[k={factor}]");
        for &p_between in &cfg.p_between_values {
            let sbm = SbmConfig {
                community_size: cfg.community_size,
                p_within: cfg.p_within,
                p_between,
                weight_range_1: cfg.weight_range_1,
                weight_range_2: cfg.weight_range_2,
                between_weight: cfg.base_between_weight * factor,
            };
            records.extend(run_cell(&name, p_between, cfg.replicates, cfg.base_seed, |rng| {
                Ok(profile_metrics(&gen_sbm(&sbm, rng)?))
            })?);
        }
    }
    Ok(records)
}

/// Rewiring toward a grid of target assortativities (Figure-6-style design).
#[derive(Debug, Clone)]
pub struct RewireTargets {
    pub xi_values: Vec<f64>,
    pub n: usize,
    pub steps_per_vertex: usize,
    pub distribution: StrengthDistribution,
    pub selection: EdgeSelection,
    pub replicates: usize,
    pub base_seed: u64,
}

impl Default for RewireTargets {
    fn default() -> Self {
        Self {
            xi_values: vec![0.2, 0.5, 0.8],
            n: 500,
            steps_per_vertex: 1000,
            distribution: StrengthDistribution::power_law_with_cutoff(10, 100, 2.5, 100.0)
                .expect("baseline distribution is valid"),
            selection: EdgeSelection::WeightProportional,
            replicates: 20,
            base_seed: 1,
        }
    }
}

pub fn run_rewire_targets(cfg: &RewireTargets) -> Result<Vec<Record>> {
    let mut records = Vec::new();
    for &xi in &cfg.xi_values {
        let rewire_cfg = RewireConfig {
            n: cfg.n,
            xi,
            steps: cfg.steps_per_vertex * cfg.n,
            selection: cfg.selection,
        };
        let d = cfg.distribution.clone();
        records.extend(run_cell("xi", xi, cfg.replicates, cfg.base_seed, |rng| {
            let result = rewire_to_target(&d, &rewire_cfg, rng)?;
            let weighted = match undirected_assortativity(&result.graph, true) {
                Ok(v) => MetricValue::Value(v),
                Err(e) => MetricValue::Missing(degeneracy_of(e)?),
            };
            let unweighted = match undirected_assortativity(&result.graph, false) {
                Ok(v) => MetricValue::Value(v),
                Err(e) => MetricValue::Missing(degeneracy_of(e)?),
            };
            Ok(vec![
                ("achieved_weighted".to_string(), weighted),
                ("achieved_unweighted".to_string(), unweighted),
            ])
        })?);
    }
    Ok(records)
}

fn degeneracy_of(e: crate::error::Error) -> Result<Degeneracy> {
    use crate::error::{Error, Side};
    match e {
        Error::EdgelessGraph => Ok(Degeneracy::NoEdges),
        Error::DegenerateVariance { side: Side::Source } => Ok(Degeneracy::ZeroSourceVariance),
        Error::DegenerateVariance { side: Side::Target } => Ok(Degeneracy::ZeroTargetVariance),
        other => Err(other),
    }
}

/// Summaries of every (parameter, metric) cell: n, mean, sd, quartiles.
/// Missing values are excluded from the statistics and counted separately.
pub fn summarize(records: &[Record]) -> Vec<SummaryRow> {
    use std::collections::BTreeMap;
    let mut cells: BTreeMap<(String, u64, String), (Vec<f64>, usize)> = BTreeMap::new();
    let mut order: Vec<(String, u64, String)> = Vec::new();
    for record in records {
        let key = (
            record.parameter_name.clone(),
            record.parameter_value.to_bits(),
            record.metric.clone(),
        );
        if !cells.contains_key(&key) {
            order.push(key.clone());
        }
        let entry = cells.entry(key).or_default();
        match record.value {
            MetricValue::Value(v) => entry.0.push(v),
            MetricValue::Missing(_) => entry.1 += 1,
        }
    }

    let mut rows = Vec::new();
    for key in order {
        let (values, missing) = &cells[&key];
        let (name, bits, metric) = &key;
        let parameter_value = f64::from_bits(*bits);
        let mut push = |stat: &str, value: f64| {
            rows.push(SummaryRow {
                parameter_name: name.clone(),
                parameter_value,
                metric: metric.clone(),
                stat: stat.to_string(),
                value,
            });
        };
        push("n", values.len() as f64);
        push("n_missing", *missing as f64);
        if values.is_empty() {
            continue;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
            / if values.len() > 1 { n - 1.0 } else { 1.0 };
        push("mean", mean);
        push("sd", variance.sqrt());
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        push("q25", quantile(&sorted, 0.25));
        push("median", quantile(&sorted, 0.5));
        push("q75", quantile(&sorted, 0.75));
    }
    rows
}

/// Linear-interpolation quantile of a sorted sample.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = lo + 1;
    if hi >= n {
        return sorted[n - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Mean of the non-missing values of one metric at one parameter value.
pub fn cell_mean(records: &[Record], parameter_value: f64, metric: &str) -> Option<f64> {
    let values: Vec<f64> = records
        .iter()
        .filter(|r| r.parameter_value == parameter_value && r.metric == metric)
        .filter_map(|r| r.value.value())
        .collect();
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_sweep_cardinality() {
        let cfg = ErSweep {
            n_values: vec![10, 20],
            replicates: 3,
            ..Default::default()
        };
        let records = run_er_sweep(&cfg).unwrap();
        // 8 metrics x 2 cells x 3 replicates
        assert_eq!(records.len(), 8 * 2 * 3);
        assert!(records.iter().all(|r| r.parameter_name == "n"));
    }

    #[test]
    fn records_are_deterministic() {
        let cfg = ErSweep {
            n_values: vec![15],
            replicates: 4,
            base_seed: 7,
            ..Default::default()
        };
        let a = run_er_sweep(&cfg).unwrap();
        let b = run_er_sweep(&cfg).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.replicate, y.replicate);
            assert_eq!(x.metric, y.metric);
            assert_eq!(x.value, y.value);
        }
    }

    #[test]
    fn summaries_match_direct_recomputation() {
        let cfg = ErSweep {
            n_values: vec![30],
            replicates: 11,
            base_seed: 3,
            ..Default::default()
        };
        let records = run_er_sweep(&cfg).unwrap();
        let rows = summarize(&records);
        let metric = "weighted_out_in";
        let values: Vec<f64> = records
            .iter()
            .filter(|r| r.metric == metric)
            .filter_map(|r| r.value.value())
            .collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let row = rows
            .iter()
            .find(|r| r.metric == metric && r.stat == "mean")
            .unwrap();
        assert!((row.value - mean).abs() < 1e-12);

        let count = rows
            .iter()
            .find(|r| r.metric == metric && r.stat == "n")
            .unwrap();
        assert_eq!(count.value, values.len() as f64);
    }

    #[test]
    fn quantiles_interpolate_linearly() {
        let sorted = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&sorted, 0.0), 1.0);
        assert_eq!(quantile(&sorted, 1.0), 4.0);
        assert_eq!(quantile(&sorted, 0.5), 2.5);
        assert_eq!(quantile(&sorted, 0.25), 1.75);
        assert_eq!(quantile(&[5.0], 0.75), 5.0);
    }

    #[test]
    fn ba_big_edge_records_use_arrival_parameter() {
        let cfg = BaBigEdge {
            steps: 40,
            arrival_steps: vec![5, 40],
            replicates: 2,
            ..Default::default()
        };
        let records = run_ba_big_edge(&cfg).unwrap();
        assert_eq!(records.len(), 8 * 2 * 2);
        assert!(records.iter().all(|r| r.parameter_name == "arrival_step"));
    }

    #[test]
    fn sbm_sensitivity_cells_encode_the_factor() {
        let cfg = SbmSensitivity {
            community_size: 10,
            p_between_values: vec![0.02, 0.05],
            weight_factors: vec![1.0, 0.5],
            replicates: 2,
            ..Default::default()
        };
        let records = run_sbm_sensitivity(&cfg).unwrap();
        assert_eq!(records.len(), 8 * 2 * 2 * 2);
        assert!(records.iter().any(|r| r.parameter_name == "p_between[k=1]"));
        assert!(records.iter().any(|r| r.parameter_name == "p_between[k=0.5]"));
    }
}
