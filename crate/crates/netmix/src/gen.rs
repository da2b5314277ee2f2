//! Seeded random-network generators: directed weighted Erdos-Renyi,
//! strength-based preferential attachment with an optional big-weight edge,
//! and a two-community stochastic block model.
//!
//! Every generator takes an explicit random source; identical config and
//! seed produce a bit-identical graph.

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use rand::Rng;

/// Directed ER model: each ordered pair is linked independently with
/// probability `p`, weights drawn uniformly from `{1..theta}`.
#[derive(Debug, Clone)]
pub struct ErConfig {
    pub n: usize,
    pub p: f64,
    pub theta: u32,
}

impl ErConfig {
    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig("ER model needs n >= 2".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidConfig(format!(
                "edge probability p = {} outside [0, 1]",
                self.p
            )));
        }
        if self.theta < 1 {
            return Err(Error::InvalidConfig("weight support theta >= 1 required".into()));
        }
        Ok(())
    }
}

pub fn gen_er<R: Rng>(cfg: &ErConfig, rng: &mut R) -> Result<WeightedDigraph> {
    cfg.validate()?;
    let mut edges = Vec::new();
    for i in 0..cfg.n {
        for j in 0..cfg.n {
            if i != j && rng.gen_bool(cfg.p) {
                let w = rng.gen_range(1..=cfg.theta) as f64;
                edges.push((i, j, w));
            }
        }
    }
    WeightedDigraph::from_edges(cfg.n, edges)
}

/// Preferential-attachment model grown from a two-vertex seed edge. At each
/// step a newcomer either points to an existing vertex sampled proportionally
/// to in-strength + delta_in (probability `alpha`), or receives an edge from
/// one sampled proportionally to out-strength + delta_out (probability
/// `gamma = 1 - alpha`). Weights are uniform on `{1..theta}` except for the
/// optional big edge, which arrives at a fixed step with a fixed weight.
#[derive(Debug, Clone)]
pub struct BaConfig {
    pub steps: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub delta_in: f64,
    pub delta_out: f64,
    pub theta: u32,
    /// `(arrival_step, weight)`, with `1 <= arrival_step <= steps`.
    pub big_edge: Option<(usize, f64)>,
}

impl BaConfig {
    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) || !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::InvalidConfig("alpha and gamma must lie in [0, 1]".into()));
        }
        if (self.alpha + self.gamma - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "alpha + gamma must equal 1, got {}",
                self.alpha + self.gamma
            )));
        }
        if self.delta_in < 0.0 || self.delta_out < 0.0 {
            return Err(Error::InvalidConfig("delta_in and delta_out must be >= 0".into()));
        }
        if self.theta < 1 {
            return Err(Error::InvalidConfig("weight support theta >= 1 required".into()));
        }
        if let Some((step, weight)) = self.big_edge {
            if step == 0 || step > self.steps {
                return Err(Error::InvalidConfig(format!(
                    "big-edge arrival step {step} outside 1..={}",
                    self.steps
                )));
            }
            if !(weight > 0.0) {
                return Err(Error::InvalidConfig("big-edge weight must be positive".into()));
            }
        }
        Ok(())
    }
}

pub fn gen_ba<R: Rng>(cfg: &BaConfig, rng: &mut R) -> Result<WeightedDigraph> {
    cfg.validate()?;
    let n_final = cfg.steps + 2;
    let mut out_strength = vec![0.0f64; n_final];
    let mut in_strength = vec![0.0f64; n_final];
    let mut out_total = 0.0;
    let mut in_total = 0.0;
    let mut edges = Vec::with_capacity(cfg.steps + 1);

    let add_edge = |edges: &mut Vec<(usize, usize, f64)>,
                        out_strength: &mut [f64],
                        in_strength: &mut [f64],
                        out_total: &mut f64,
                        in_total: &mut f64,
                        source: usize,
                        target: usize,
                        weight: f64| {
        edges.push((source, target, weight));
        out_strength[source] += weight;
        in_strength[target] += weight;
        *out_total += weight;
        *in_total += weight;
    };

    // seed graph: vertices 0 and 1 joined by one directed edge
    let seed_weight = rng.gen_range(1..=cfg.theta) as f64;
    add_edge(
        &mut edges,
        &mut out_strength,
        &mut in_strength,
        &mut out_total,
        &mut in_total,
        0,
        1,
        seed_weight,
    );

    for step in 1..=cfg.steps {
        let n_existing = step + 1;
        let newcomer = n_existing;
        // weight draw happens every step so the random stream is aligned
        // across configs that differ only in the big-edge arrival time
        let uniform_weight = rng.gen_range(1..=cfg.theta) as f64;
        let weight = match cfg.big_edge {
            Some((arrival, big)) if arrival == step => big,
            _ => uniform_weight,
        };
        if rng.gen_bool(cfg.alpha) {
            // newcomer -> existing vertex sampled by in-strength + delta_in
            let target = sample_smoothed(&in_strength[..n_existing], in_total, cfg.delta_in, rng);
            add_edge(
                &mut edges,
                &mut out_strength,
                &mut in_strength,
                &mut out_total,
                &mut in_total,
                newcomer,
                target,
                weight,
            );
        } else {
            // existing vertex sampled by out-strength + delta_out -> newcomer
            let source = sample_smoothed(&out_strength[..n_existing], out_total, cfg.delta_out, rng);
            add_edge(
                &mut edges,
                &mut out_strength,
                &mut in_strength,
                &mut out_total,
                &mut in_total,
                source,
                newcomer,
                weight,
            );
        }
    }

    WeightedDigraph::from_edges(n_final, edges)
}

/// Sample an index with probability proportional to `strengths[i] + delta`
/// by cumulative-weight inversion.
fn sample_smoothed<R: Rng>(strengths: &[f64], total: f64, delta: f64, rng: &mut R) -> usize {
    let grand_total = total + delta * strengths.len() as f64;
    let mut u = rng.gen_range(0.0..grand_total);
    for (i, s) in strengths.iter().enumerate() {
        u -= s + delta;
        if u < 0.0 {
            return i;
        }
    }
    strengths.len() - 1
}

/// Two equal communities; within-community pairs link with `p_within` and
/// draw weights uniformly from that community's range, between-community
/// pairs link with `p_between` at the fixed `between_weight`. Every realized
/// link gets an independent uniformly random direction.
#[derive(Debug, Clone)]
pub struct SbmConfig {
    pub community_size: usize,
    pub p_within: f64,
    pub p_between: f64,
    pub weight_range_1: (f64, f64),
    pub weight_range_2: (f64, f64),
    pub between_weight: f64,
}

impl SbmConfig {
    fn validate(&self) -> Result<()> {
        if self.community_size < 1 {
            return Err(Error::InvalidConfig("community size >= 1 required".into()));
        }
        for (name, p) in [("p_within", self.p_within), ("p_between", self.p_between)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} = {p} outside [0, 1]")));
            }
        }
        for (name, (lo, hi)) in [
            ("weight_range_1", self.weight_range_1),
            ("weight_range_2", self.weight_range_2),
        ] {
            if lo > hi || hi <= 0.0 || lo < 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{name} = ({lo}, {hi}) must satisfy 0 <= lo <= hi, hi > 0"
                )));
            }
        }
        if !(self.between_weight > 0.0) {
            return Err(Error::InvalidConfig("between-community weight must be positive".into()));
        }
        Ok(())
    }
}

pub fn gen_sbm<R: Rng>(cfg: &SbmConfig, rng: &mut R) -> Result<WeightedDigraph> {
    cfg.validate()?;
    let m = cfg.community_size;
    let n = 2 * m;
    let mut edges = Vec::new();

    let place = |edges: &mut Vec<(usize, usize, f64)>, rng: &mut R, a: usize, b: usize, w: f64| {
        if rng.gen_bool(0.5) {
            edges.push((a, b, w));
        } else {
            edges.push((b, a, w));
        }
    };

    for (offset, range) in [(0, cfg.weight_range_1), (m, cfg.weight_range_2)] {
        for i in 0..m {
            for j in (i + 1)..m {
                if rng.gen_bool(cfg.p_within) {
                    let w = draw_in_range(range, rng);
                    place(&mut edges, rng, offset + i, offset + j, w);
                }
            }
        }
    }
    for i in 0..m {
        for j in m..n {
            if rng.gen_bool(cfg.p_between) {
                place(&mut edges, rng, i, j, cfg.between_weight);
            }
        }
    }

    WeightedDigraph::from_edges(n, edges)
}

/// Uniform draw from a weight interval, retrying the zero-probability event
/// of landing exactly on a zero lower endpoint (weights must stay positive).
fn draw_in_range<R: Rng>((lo, hi): (f64, f64), rng: &mut R) -> f64 {
    if lo == hi {
        return lo;
    }
    loop {
        let w = rng.gen_range(lo..hi);
        if w > 0.0 {
            return w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assort::{strength_assortativity, unweighted_strength_assortativity};
    use crate::graph::{Direction, StrengthKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn er_complete_limit() {
        let cfg = ErConfig { n: 3, p: 1.0, theta: 1 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = gen_er(&cfg, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.total_weight(), 6.0);
    }

    #[test]
    fn er_empty_limit() {
        let cfg = ErConfig { n: 5, p: 0.0, theta: 10 };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = gen_er(&cfg, &mut rng).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn er_mean_in_strength_matches_model() {
        // mean in-strength is (n-1) * p * E[Uniform{1..theta}] = 149 * 0.2 * 5.5
        let cfg = ErConfig { n: 150, p: 0.2, theta: 10 };
        let mut total = 0.0;
        let mut count = 0usize;
        for rep in 0..500 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + rep);
            let g = gen_er(&cfg, &mut rng).unwrap();
            total += g.in_strengths().iter().sum::<f64>();
            count += g.vertex_count();
        }
        let mean = total / count as f64;
        assert!((mean - 163.9).abs() < 2.0, "mean in-strength {mean}");
    }

    #[test]
    fn er_edge_count_within_four_sd() {
        let cfg = ErConfig { n: 60, p: 0.1, theta: 5 };
        let pairs = (cfg.n * (cfg.n - 1)) as f64;
        let reps = 500;
        let mut total_edges = 0usize;
        for rep in 0..reps {
            let mut rng = ChaCha8Rng::seed_from_u64(7 + rep as u64);
            total_edges += gen_er(&cfg, &mut rng).unwrap().edge_count();
        }
        let mean = total_edges as f64 / reps as f64;
        let expected = pairs * cfg.p;
        let sd_of_mean = (pairs * cfg.p * (1.0 - cfg.p) / reps as f64).sqrt();
        assert!(
            (mean - expected).abs() < 4.0 * sd_of_mean,
            "mean edge count {mean} vs expected {expected}"
        );
    }

    #[test]
    fn determinism_same_seed_same_graph() {
        let cfg = ErConfig { n: 40, p: 0.3, theta: 7 };
        let g1 = gen_er(&cfg, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let g2 = gen_er(&cfg, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(g1, g2);

        let ba = BaConfig {
            steps: 50,
            alpha: 0.6,
            gamma: 0.4,
            delta_in: 1.0,
            delta_out: 1.0,
            theta: 10,
            big_edge: None,
        };
        let g1 = gen_ba(&ba, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let g2 = gen_ba(&ba, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(g1, g2);

        let sbm = SbmConfig {
            community_size: 20,
            p_within: 0.2,
            p_between: 0.05,
            weight_range_1: (0.0, 5.0),
            weight_range_2: (5.0, 10.0),
            between_weight: 5.0,
        };
        let g1 = gen_sbm(&sbm, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        let g2 = gen_sbm(&sbm, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn ba_zero_steps_is_the_seed_graph() {
        let cfg = BaConfig {
            steps: 0,
            alpha: 0.6,
            gamma: 0.4,
            delta_in: 1.0,
            delta_out: 1.0,
            theta: 10,
            big_edge: None,
        };
        let g = gen_ba(&cfg, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn ba_counts_are_deterministic_in_steps() {
        for steps in [1usize, 10, 123] {
            let cfg = BaConfig {
                steps,
                alpha: 0.6,
                gamma: 0.4,
                delta_in: 1.0,
                delta_out: 1.0,
                theta: 10,
                big_edge: None,
            };
            let g = gen_ba(&cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
            assert_eq!(g.vertex_count(), steps + 2);
            assert_eq!(g.edge_count(), steps + 1);
        }
    }

    #[test]
    fn ba_mean_out_in_signs() {
        let cfg = BaConfig {
            steps: 300,
            alpha: 0.6,
            gamma: 0.4,
            delta_in: 1.0,
            delta_out: 1.0,
            theta: 10,
            big_edge: None,
        };
        let reps = 60;
        let mut weighted = 0.0;
        let mut unweighted = 0.0;
        for rep in 0..reps {
            let mut rng = ChaCha8Rng::seed_from_u64(40 + rep as u64);
            let g = gen_ba(&cfg, &mut rng).unwrap();
            weighted += strength_assortativity(&g, Direction::Out, Direction::In).unwrap();
            unweighted += unweighted_strength_assortativity(&g, Direction::Out, Direction::In).unwrap();
        }
        weighted /= reps as f64;
        unweighted /= reps as f64;
        assert!(weighted < 0.0, "weighted mean {weighted}");
        assert!(unweighted < 0.0, "unweighted mean {unweighted}");
        assert!(
            weighted.abs() < unweighted.abs(),
            "weighted {weighted} should sit closer to zero than unweighted {unweighted}"
        );
    }

    #[test]
    fn ba_big_edge_flips_weighted_sign() {
        let cfg = BaConfig {
            steps: 500,
            alpha: 0.6,
            gamma: 0.4,
            delta_in: 1.0,
            delta_out: 1.0,
            theta: 10,
            big_edge: Some((500, 1000.0)),
        };
        let reps = 60;
        let mut weighted = 0.0;
        let mut unweighted = 0.0;
        for rep in 0..reps {
            let mut rng = ChaCha8Rng::seed_from_u64(90 + rep as u64);
            let g = gen_ba(&cfg, &mut rng).unwrap();
            weighted += strength_assortativity(&g, Direction::Out, Direction::In).unwrap();
            unweighted += unweighted_strength_assortativity(&g, Direction::Out, Direction::In).unwrap();
        }
        weighted /= reps as f64;
        unweighted /= reps as f64;
        assert!(weighted > 0.0, "weighted mean {weighted}");
        assert!(unweighted < 0.0, "unweighted mean {unweighted}");
    }

    #[test]
    fn sbm_single_between_pair() {
        let cfg = SbmConfig {
            community_size: 1,
            p_within: 0.5,
            p_between: 1.0,
            weight_range_1: (0.0, 5.0),
            weight_range_2: (5.0, 10.0),
            between_weight: 5.0,
        };
        let g = gen_sbm(&cfg, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].weight, 5.0);
    }

    #[test]
    fn sbm_weight_placement_rules() {
        let cfg = SbmConfig {
            community_size: 30,
            p_within: 0.3,
            p_between: 0.1,
            weight_range_1: (0.0, 5.0),
            weight_range_2: (5.0, 10.0),
            between_weight: 5.0,
        };
        let g = gen_sbm(&cfg, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
        let m = cfg.community_size;
        let mut saw_between = false;
        for e in g.edges() {
            let c_src = e.source / m;
            let c_dst = e.target / m;
            if c_src != c_dst {
                assert_eq!(e.weight, 5.0);
                saw_between = true;
            } else if c_src == 0 {
                assert!(e.weight > 0.0 && e.weight < 5.0);
            } else {
                assert!((5.0..10.0).contains(&e.weight));
            }
        }
        assert!(saw_between);
    }

    #[test]
    fn sbm_strength_totals_balance() {
        let cfg = SbmConfig {
            community_size: 25,
            p_within: 0.2,
            p_between: 0.02,
            weight_range_1: (0.0, 5.0),
            weight_range_2: (5.0, 10.0),
            between_weight: 5.0,
        };
        let g = gen_sbm(&cfg, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let total_in: f64 = (0..g.vertex_count())
            .map(|v| g.strength(v, StrengthKind::In).unwrap())
            .sum();
        assert!((total_in - g.total_weight()).abs() < 1e-9);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(gen_er(&ErConfig { n: 1, p: 0.5, theta: 1 }, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        assert!(gen_er(&ErConfig { n: 5, p: 1.5, theta: 1 }, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        let bad_ba = BaConfig {
            steps: 10,
            alpha: 0.6,
            gamma: 0.6,
            delta_in: 1.0,
            delta_out: 1.0,
            theta: 10,
            big_edge: None,
        };
        assert!(gen_ba(&bad_ba, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        let bad_big = BaConfig {
            steps: 10,
            alpha: 0.5,
            gamma: 0.5,
            delta_in: 1.0,
            delta_out: 1.0,
            theta: 10,
            big_edge: Some((11, 1000.0)),
        };
        assert!(gen_ba(&bad_big, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }
}
