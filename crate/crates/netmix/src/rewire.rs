//! Rewiring of weighted undirected networks toward a target assortativity.
//!
//! The pipeline: sample a vertex strength sequence from a finite integer
//! support, realize it as a random network by uniform stub pairing, derive
//! the strength-weighted distribution q and a transition matrix M, form the
//! target link distribution `l_jk = q_j q_k + xi sigma_q^2 m_jk`, and run an
//! acceptance-ratio chain that moves unit weights between edge pairs.
//! Vertex strengths are conserved exactly at every step.
//!
//! Undirected networks use the split convention of [`WeightedDigraph::from_undirected_edges`],
//! so the resulting graphs plug directly into the assortativity module
//! (all four direction pairs coincide).

mod qp;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use rand::Rng;
use std::collections::{BTreeMap, HashMap};

/// Distribution of admissible vertex strengths over a finite integer support.
#[derive(Debug, Clone)]
pub struct StrengthDistribution {
    support: Vec<u64>,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl StrengthDistribution {
    /// `support` must be strictly increasing positive integers; `probs` must
    /// be strictly positive and is normalized to sum to one.
    pub fn new(support: Vec<u64>, probs: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != probs.len() {
            return Err(Error::InvalidConfig(
                "support and probabilities must be non-empty and of equal length".into(),
            ));
        }
        if support[0] == 0 || support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "support must be strictly increasing positive integers".into(),
            ));
        }
        if probs.iter().any(|&p| !(p > 0.0) || !p.is_finite()) {
            return Err(Error::InvalidConfig(
                "strength probabilities must be strictly positive".into(),
            ));
        }
        let total: f64 = probs.iter().sum();
        let probs: Vec<f64> = probs.iter().map(|p| p / total).collect();
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for &p in &probs {
            acc += p;
            cumulative.push(acc);
        }
        *cumulative.last_mut().unwrap() = 1.0;
        Ok(Self {
            support,
            probs,
            cumulative,
        })
    }

    /// Truncated power law with exponential cutoff:
    /// `p_k proportional to z_k^-exponent * exp(-z_k / cutoff)` over
    /// `z_min..=z_max`.
    pub fn power_law_with_cutoff(z_min: u64, z_max: u64, exponent: f64, cutoff: f64) -> Result<Self> {
        if z_min == 0 || z_max < z_min {
            return Err(Error::InvalidConfig(
                "support bounds must satisfy 1 <= z_min <= z_max".into(),
            ));
        }
        if !(cutoff > 0.0) {
            return Err(Error::InvalidConfig("cutoff must be positive".into()));
        }
        let support: Vec<u64> = (z_min..=z_max).collect();
        let probs: Vec<f64> = support
            .iter()
            .map(|&z| (z as f64).powf(-exponent) * (-(z as f64) / cutoff).exp())
            .collect();
        Self::new(support, probs)
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn contains(&self, strength: u64) -> bool {
        self.support.binary_search(&strength).is_ok()
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.gen();
        let idx = self.cumulative.partition_point(|&c| c <= u);
        self.support[idx.min(self.support.len() - 1)]
    }
}

/// The strength-weighted distribution `q_k = z_k p_k / sum_h z_h p_h` and the
/// variance of the support values under it.
#[derive(Debug, Clone)]
pub struct StrengthWeighted {
    pub q: Vec<f64>,
    pub sigma_q_sq: f64,
}

pub fn strength_weighted_dist(d: &StrengthDistribution) -> StrengthWeighted {
    let weighted: Vec<f64> = d
        .support
        .iter()
        .zip(&d.probs)
        .map(|(&z, &p)| z as f64 * p)
        .collect();
    let total: f64 = weighted.iter().sum();
    let q: Vec<f64> = weighted.iter().map(|w| w / total).collect();
    let mean: f64 = d
        .support
        .iter()
        .zip(&q)
        .map(|(&z, &qk)| z as f64 * qk)
        .sum();
    let second: f64 = d
        .support
        .iter()
        .zip(&q)
        .map(|(&z, &qk)| (z as f64) * (z as f64) * qk)
        .sum();
    StrengthWeighted {
        q,
        sigma_q_sq: second - mean * mean,
    }
}

/// Smallest correlation attainable by any joint distribution on the support
/// with both marginals `q`: the antitone (countermonotonic) coupling. The
/// largest attainable is +1 (the diagonal coupling), so a target is feasible
/// exactly when it lies in `[min, 1]`.
pub fn min_attainable_correlation(support: &[u64], q: &[f64]) -> f64 {
    let k = support.len();
    let z: Vec<f64> = support.iter().map(|&v| v as f64).collect();
    let mean: f64 = z.iter().zip(q).map(|(zi, qi)| zi * qi).sum();
    let var: f64 = z.iter().zip(q).map(|(zi, qi)| zi * zi * qi).sum::<f64>() - mean * mean;
    if var <= 0.0 {
        return 1.0;
    }
    let mut exy = 0.0;
    let mut i = 0usize;
    let mut j = k - 1;
    let mut mass_i = q[i];
    let mut mass_j = q[j];
    loop {
        let m = mass_i.min(mass_j);
        exy += m * z[i] * z[j];
        mass_i -= m;
        mass_j -= m;
        if mass_i <= 1e-15 {
            i += 1;
            if i == k {
                break;
            }
            mass_i = q[i];
        }
        if mass_j <= 1e-15 {
            if j == 0 {
                break;
            }
            j -= 1;
            mass_j = q[j];
        }
    }
    (exy - mean * mean) / var
}

/// Transition matrix of minimum Frobenius norm: zero row and column sums,
/// `sum_jk z_j z_k m_jk = 1`, and every `q_j q_k + xi sigma_q^2 m_jk` in
/// `[0, 1]`.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    k: usize,
    data: Vec<f64>,
    residual: f64,
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, j: usize, l: usize) -> f64 {
        self.data[j * self.k + l]
    }

    /// Max-norm residual of the equality constraints at the solution.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

const QP_TOLERANCE: f64 = 1e-10;
const QP_MAX_ITER: usize = 500;

pub fn solve_transition_matrix(support: &[u64], q: &[f64], xi: f64) -> Result<TransitionMatrix> {
    if support.len() < 2 {
        return Err(Error::InvalidConfig(
            "transition matrix needs a support of at least two strengths".into(),
        ));
    }
    if support.len() != q.len() {
        return Err(Error::InvalidConfig(
            "support and q must have equal length".into(),
        ));
    }
    if !(-1.0..1.0).contains(&xi) {
        return Err(Error::InvalidConfig(format!(
            "target assortativity {xi} outside (-1, 1)"
        )));
    }
    let minimum = min_attainable_correlation(support, q);
    if xi < minimum - 1e-12 {
        return Err(Error::InfeasibleTarget { xi, min: minimum });
    }
    let z: Vec<f64> = support.iter().map(|&v| v as f64).collect();
    let mean: f64 = z.iter().zip(q).map(|(zi, qi)| zi * qi).sum();
    let sigma_sq: f64 = z.iter().zip(q).map(|(zi, qi)| zi * zi * qi).sum::<f64>() - mean * mean;

    match qp::solve_projection(&z, q, xi * sigma_sq, QP_TOLERANCE, QP_MAX_ITER) {
        Ok(solution) => Ok(TransitionMatrix {
            k: support.len(),
            data: solution.m,
            residual: solution.residual,
        }),
        Err(qp::QpFailure::Stalled { residual }) => Err(Error::SolverPrecision {
            xi,
            residual,
            tolerance: QP_TOLERANCE,
        }),
    }
}

/// Constraint residuals of a link distribution, re-assertable at any time.
#[derive(Debug, Clone, Copy)]
pub struct LinkResiduals {
    pub m_row_sum_max: f64,
    pub m_col_sum_max: f64,
    pub m_normalization: f64,
    pub l_min: f64,
    pub l_max: f64,
    pub l_sum_error: f64,
}

/// The chain's target: joint probability `l_jk` that one unit of edge weight
/// connects vertices of strengths `z_j` and `z_k`.
#[derive(Debug, Clone)]
pub struct LinkDistribution {
    support: Vec<u64>,
    q: Vec<f64>,
    sigma_q_sq: f64,
    xi: f64,
    transition: TransitionMatrix,
    link: Vec<f64>,
}

impl LinkDistribution {
    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn sigma_q_sq(&self) -> f64 {
        self.sigma_q_sq
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn transition(&self) -> &TransitionMatrix {
        &self.transition
    }

    pub fn dim(&self) -> usize {
        self.support.len()
    }

    pub fn l(&self, j: usize, k: usize) -> f64 {
        self.link[j * self.support.len() + k]
    }

    pub fn index_of(&self, strength: u64) -> Option<usize> {
        self.support.binary_search(&strength).ok()
    }

    pub fn verify(&self) -> LinkResiduals {
        let k = self.support.len();
        let m = &self.transition;
        let mut row_max: f64 = 0.0;
        let mut col_max: f64 = 0.0;
        let mut norm = 0.0;
        for j in 0..k {
            let mut row = 0.0;
            let mut col = 0.0;
            for l in 0..k {
                row += m.get(j, l);
                col += m.get(l, j);
                norm += self.support[j] as f64 * self.support[l] as f64 * m.get(j, l);
            }
            row_max = row_max.max(row.abs());
            col_max = col_max.max(col.abs());
        }
        let mut l_min = f64::INFINITY;
        let mut l_max = f64::NEG_INFINITY;
        let mut l_sum = 0.0;
        for &v in &self.link {
            l_min = l_min.min(v);
            l_max = l_max.max(v);
            l_sum += v;
        }
        LinkResiduals {
            m_row_sum_max: row_max,
            m_col_sum_max: col_max,
            m_normalization: (norm - 1.0).abs(),
            l_min,
            l_max,
            l_sum_error: (l_sum - 1.0).abs(),
        }
    }
}

/// Build the link distribution for a strength distribution and target `xi`.
pub fn link_distribution(d: &StrengthDistribution, xi: f64) -> Result<LinkDistribution> {
    let weighted = strength_weighted_dist(d);
    let transition = solve_transition_matrix(&d.support, &weighted.q, xi)?;
    let k = d.support.len();
    let c = xi * weighted.sigma_q_sq;
    let mut link = vec![0.0; k * k];
    for j in 0..k {
        for l in 0..k {
            let value = weighted.q[j] * weighted.q[l] + c * transition.get(j, l);
            // entries pinned at a bound land within one rounding of it
            link[j * k + l] = value.clamp(0.0, 1.0);
            debug_assert!(value > -1e-9 && value < 1.0 + 1e-9);
        }
    }
    Ok(LinkDistribution {
        support: d.support.clone(),
        q: weighted.q,
        sigma_q_sq: weighted.sigma_q_sq,
        xi,
        transition,
        link,
    })
}

/// Realize a sampled strength sequence as a weighted undirected network by
/// pairing unit half-edges uniformly at random (self-pairings rejected);
/// pair multiplicities become integer edge weights. An odd strength total is
/// fixed by moving one vertex a single unit along the support. Returned in
/// the split convention.
pub fn initial_network<R: Rng>(
    d: &StrengthDistribution,
    n: usize,
    rng: &mut R,
) -> Result<WeightedDigraph> {
    if n < 2 {
        return Err(Error::InvalidConfig("initial network needs n >= 2".into()));
    }
    let mut strengths: Vec<u64> = (0..n).map(|_| d.sample(rng)).collect();
    let total: u64 = strengths.iter().sum();
    if total % 2 == 1 {
        if let Some(i) = strengths.iter().position(|&s| d.contains(s - 1)) {
            strengths[i] -= 1;
        } else if let Some(i) = strengths.iter().position(|&s| d.contains(s + 1)) {
            strengths[i] += 1;
        } else {
            return Err(Error::InvalidConfig(
                "cannot repair an odd strength total within the support".into(),
            ));
        }
    }

    // uniform pairing can strand a tail of same-vertex stubs; restart when it does
    const MAX_RESTARTS: usize = 100;
    for _ in 0..MAX_RESTARTS {
        if let Some(pairs) = try_pair_stubs(&strengths, rng) {
            let edges: Vec<(usize, usize, f64)> = pairs
                .iter()
                .map(|(&(u, v), &w)| (u, v, w as f64))
                .collect();
            return WeightedDigraph::from_undirected_edges(n, edges);
        }
    }
    Err(Error::StubPairing)
}

/// One attempt at pairing all stubs uniformly at random without self-pairs.
/// Returns None when the leftover stubs all belong to one vertex.
fn try_pair_stubs<R: Rng>(
    strengths: &[u64],
    rng: &mut R,
) -> Option<BTreeMap<(usize, usize), u64>> {
    let total: u64 = strengths.iter().sum();
    let mut stubs: Vec<usize> = Vec::with_capacity(total as usize);
    for (vertex, &s) in strengths.iter().enumerate() {
        stubs.extend(std::iter::repeat(vertex).take(s as usize));
    }

    let mut pairs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    while stubs.len() >= 2 {
        let a = stubs.swap_remove(rng.gen_range(0..stubs.len()));
        let mut partner = None;
        for _ in 0..64 {
            let j = rng.gen_range(0..stubs.len());
            if stubs[j] != a {
                partner = Some(stubs.swap_remove(j));
                break;
            }
        }
        let b = match partner {
            Some(b) => b,
            None => {
                // exact draw over the stubs of other vertices
                let others: Vec<usize> = (0..stubs.len()).filter(|&j| stubs[j] != a).collect();
                if others.is_empty() {
                    return None;
                }
                stubs.swap_remove(others[rng.gen_range(0..others.len())])
            }
        };
        *pairs.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    Some(pairs)
}

/// How the chain picks an edge pair at each step. The derivation of q assumes
/// edges are sampled proportionally to weight; uniform selection is provided
/// for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSelection {
    WeightProportional,
    Uniform,
}

/// Run the acceptance-ratio rewiring chain for `steps` proposals, with
/// weight-proportional edge selection. See [`rewire_chain_with`].
pub fn rewire_chain<R: Rng>(
    g: &WeightedDigraph,
    link: &LinkDistribution,
    steps: usize,
    rng: &mut R,
) -> Result<WeightedDigraph> {
    rewire_chain_with(g, link, steps, EdgeSelection::WeightProportional, rng)
}

/// Each step selects two distinct edges (v_a, v_b), (v_c, v_d), random
/// endpoint orientation, and moves one unit of weight onto (v_a, v_c) and
/// (v_b, v_d) with probability
/// `min(1, l(s_a,s_c) l(s_b,s_d) / (l(s_a,s_b) l(s_c,s_d)))`, creating and
/// deleting edges as weights cross zero. Proposals that would create a
/// self-loop are rejected. The input must use the undirected split
/// convention with integer undirected weights, and every positive vertex
/// strength must lie in the link distribution's support.
pub fn rewire_chain_with<R: Rng>(
    g: &WeightedDigraph,
    link: &LinkDistribution,
    steps: usize,
    selection: EdgeSelection,
    rng: &mut R,
) -> Result<WeightedDigraph> {
    let n = g.vertex_count();
    let (pair_weights, strengths) = undirected_integer_view(g)?;

    const UNUSED: usize = usize::MAX;
    let mut strength_index = vec![UNUSED; n];
    for v in 0..n {
        if strengths[v] > 0 {
            strength_index[v] = link
                .index_of(strengths[v])
                .ok_or(Error::OffSupportStrength(strengths[v]))?;
        }
    }

    if pair_weights.len() < 2 || steps == 0 {
        return Ok(g.clone());
    }

    let total_weight: u64 = pair_weights.values().sum();
    let capacity = (pair_weights.len() + 2 * steps).min(total_weight as usize);

    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(capacity);
    let mut weights: Vec<u64> = Vec::with_capacity(capacity);
    let mut fenwick = Fenwick::new(capacity);
    let mut slot_of: HashMap<(usize, usize), usize> = HashMap::with_capacity(capacity);
    let mut free: Vec<usize> = Vec::new();
    let mut active: Vec<usize> = Vec::new(); // slots with positive weight
    let mut active_pos: Vec<usize> = Vec::with_capacity(capacity);

    for (&pair, &w) in &pair_weights {
        let slot = pairs.len();
        pairs.push(pair);
        weights.push(w);
        fenwick.add(slot, w as i64);
        slot_of.insert(pair, slot);
        active_pos.push(active.len());
        active.push(slot);
    }

    let k = link.dim();
    let l_table = |a: usize, b: usize| link.l(a, b);
    debug_assert!(k > 0);

    for _ in 0..steps {
        if active.len() < 2 {
            break;
        }
        let first = match selection {
            EdgeSelection::WeightProportional => fenwick.find(rng.gen_range(0..fenwick.total())),
            EdgeSelection::Uniform => active[rng.gen_range(0..active.len())],
        };
        let mut second = first;
        for _ in 0..1024 {
            let slot = match selection {
                EdgeSelection::WeightProportional => {
                    fenwick.find(rng.gen_range(0..fenwick.total()))
                }
                EdgeSelection::Uniform => active[rng.gen_range(0..active.len())],
            };
            if slot != first {
                second = slot;
                break;
            }
        }
        if second == first {
            continue; // one edge dominates the weight; treat as a rejected proposal
        }

        let (mut a, mut b) = pairs[first];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut a, &mut b);
        }
        let (mut c, mut d) = pairs[second];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if a == c || b == d {
            continue; // the move would create a self-loop
        }

        let (ia, ib, ic, id) = (
            strength_index[a],
            strength_index[b],
            strength_index[c],
            strength_index[d],
        );
        let numerator = l_table(ia, ic) * l_table(ib, id);
        let denominator = l_table(ia, ib) * l_table(ic, id);
        let accept =
            numerator >= denominator || rng.gen::<f64>() * denominator < numerator;
        if !accept {
            continue;
        }

        for pair in [ordered(a, b), ordered(c, d)] {
            let slot = slot_of[&pair];
            weights[slot] -= 1;
            fenwick.add(slot, -1);
            if weights[slot] == 0 {
                slot_of.remove(&pair);
                free.push(slot);
                let pos = active_pos[slot];
                let moved = *active.last().unwrap();
                active.swap_remove(pos);
                if pos < active.len() {
                    active_pos[moved] = pos;
                }
            }
        }
        for pair in [ordered(a, c), ordered(b, d)] {
            match slot_of.get(&pair) {
                Some(&slot) => {
                    weights[slot] += 1;
                    fenwick.add(slot, 1);
                }
                None => {
                    let slot = free.pop().unwrap_or_else(|| {
                        pairs.push((0, 0));
                        weights.push(0);
                        active_pos.push(0);
                        pairs.len() - 1
                    });
                    pairs[slot] = pair;
                    weights[slot] = 1;
                    fenwick.add(slot, 1);
                    slot_of.insert(pair, slot);
                    active_pos[slot] = active.len();
                    active.push(slot);
                }
            }
        }
    }

    let mut edges = Vec::with_capacity(2 * active.len());
    for &slot in &active {
        let (u, v) = pairs[slot];
        edges.push((u, v, weights[slot] as f64));
    }
    WeightedDigraph::from_undirected_edges(n, edges)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Recover integer undirected pair weights and vertex strengths from a graph
/// in the split convention.
fn undirected_integer_view(
    g: &WeightedDigraph,
) -> Result<(BTreeMap<(usize, usize), u64>, Vec<u64>)> {
    let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for e in g.edges() {
        *acc.entry(ordered(e.source, e.target)).or_insert(0.0) += e.weight;
    }
    let mut pairs = BTreeMap::new();
    let mut strengths = vec![0u64; g.vertex_count()];
    for (&(u, v), &w) in &acc {
        let rounded = w.round();
        if (w - rounded).abs() > 1e-6 || rounded <= 0.0 {
            return Err(Error::NonIntegerUndirectedWeight {
                from: u,
                to: v,
                weight: w,
            });
        }
        let w = rounded as u64;
        pairs.insert((u, v), w);
        strengths[u] += w;
        strengths[v] += w;
    }
    Ok((pairs, strengths))
}

/// Fenwick tree over slot weights for weight-proportional edge sampling.
struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Self {
            tree: vec![0; n + 1],
        }
    }

    fn len(&self) -> usize {
        self.tree.len() - 1
    }

    fn add(&mut self, index: usize, delta: i64) {
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn total(&self) -> i64 {
        let mut i = self.len();
        let mut sum = 0;
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }

    /// Index of the slot whose cumulative weight range contains `target`.
    fn find(&self, target: i64) -> usize {
        let n = self.len();
        let mut step = 1usize;
        while step * 2 <= n {
            step *= 2;
        }
        let mut pos = 0usize;
        let mut remaining = target;
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= remaining {
                remaining -= self.tree[next];
                pos = next;
            }
            step /= 2;
        }
        pos
    }
}

/// Full rewiring configuration: network size, target, and proposal budget.
#[derive(Debug, Clone)]
pub struct RewireConfig {
    pub n: usize,
    pub xi: f64,
    pub steps: usize,
    pub selection: EdgeSelection,
}

/// Result of the full pipeline: the rewired network (split convention) and
/// the link distribution it was driven toward.
#[derive(Debug)]
pub struct RewiredNetwork {
    pub graph: WeightedDigraph,
    pub link: LinkDistribution,
}

/// Run the whole pipeline: link distribution, initial network, chain.
pub fn rewire_to_target<R: Rng>(
    d: &StrengthDistribution,
    cfg: &RewireConfig,
    rng: &mut R,
) -> Result<RewiredNetwork> {
    if cfg.n < 2 {
        return Err(Error::InvalidConfig("rewiring needs n >= 2".into()));
    }
    let link = link_distribution(d, cfg.xi)?;
    let start = initial_network(d, cfg.n, rng)?;
    let graph = rewire_chain_with(&start, &link, cfg.steps, cfg.selection, rng)?;
    Ok(RewiredNetwork { graph, link })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assort::undirected_assortativity;
    use crate::graph::StrengthKind;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_point() -> StrengthDistribution {
        StrengthDistribution::new(vec![1, 2], vec![0.5, 0.5]).unwrap()
    }

    fn paper_distribution() -> StrengthDistribution {
        StrengthDistribution::power_law_with_cutoff(10, 100, 2.5, 100.0).unwrap()
    }

    #[test]
    fn strength_weighted_two_point() {
        let w = strength_weighted_dist(&two_point());
        assert!((w.q[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((w.q[1] - 2.0 / 3.0).abs() < 1e-15);
        assert!((w.sigma_q_sq - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn strength_weighted_single_point() {
        let d = StrengthDistribution::new(vec![5], vec![1.0]).unwrap();
        let w = strength_weighted_dist(&d);
        assert_eq!(w.q, vec![1.0]);
        assert_eq!(w.sigma_q_sq, 0.0);
    }

    #[test]
    fn paper_distribution_q_normalizes() {
        let w = strength_weighted_dist(&paper_distribution());
        let sum: f64 = w.q.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_point_transition_matrix_is_forced() {
        let w = strength_weighted_dist(&two_point());
        let m = solve_transition_matrix(&[1, 2], &w.q, 0.5).unwrap();
        let expected = [1.0, -1.0, -1.0, 1.0];
        for (got, want) in m.as_slice().iter().zip(expected) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn paper_design_solution_meets_tolerances() {
        let d = paper_distribution();
        let link = link_distribution(&d, 0.5).unwrap();
        let res = link.verify();
        assert!(res.m_row_sum_max < 1e-8);
        assert!(res.m_col_sum_max < 1e-8);
        assert!(res.m_normalization < 1e-8);
        assert!(res.l_min >= 0.0 && res.l_max <= 1.0);
        assert!(res.l_sum_error < 1e-8);
        // the constraint set and objective are transpose-symmetric
        let m = link.transition();
        let k = m.dim();
        for j in 0..k {
            for l in 0..k {
                assert!((m.get(j, l) - m.get(l, j)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn two_point_link_distribution_closed_form() {
        let link = link_distribution(&two_point(), 0.5).unwrap();
        let expected = [2.0 / 9.0, 1.0 / 9.0, 1.0 / 9.0, 5.0 / 9.0];
        for (idx, want) in expected.iter().enumerate() {
            let got = link.l(idx / 2, idx % 2);
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn zero_target_gives_product_distribution() {
        let d = paper_distribution();
        let link = link_distribution(&d, 0.0).unwrap();
        for j in 0..link.dim() {
            for l in 0..link.dim() {
                assert!((link.l(j, l) - link.q()[j] * link.q()[l]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn infeasible_target_is_typed() {
        // q = (1/3, 2/3) can reach no correlation below -1/2
        let err = link_distribution(&two_point(), -0.9).unwrap_err();
        match err {
            Error::InfeasibleTarget { min, .. } => {
                assert!((min - (-0.5)).abs() < 1e-9);
            }
            other => panic!("expected InfeasibleTarget, got {other:?}"),
        }
        assert!(link_distribution(&two_point(), -0.45).is_ok());
    }

    #[test]
    fn initial_network_forced_pairing() {
        let d = StrengthDistribution::new(vec![10], vec![1.0]).unwrap();
        let g = initial_network(&d, 2, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
        // one undirected edge of weight 10, split into 5 + 5
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.total_weight(), 10.0);
        assert_eq!(g.strength(0, StrengthKind::Total).unwrap(), 10.0);
    }

    #[test]
    fn initial_network_realizes_sampled_strengths() {
        let d = paper_distribution();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = initial_network(&d, 400, &mut rng).unwrap();
        let total: f64 = (0..400)
            .map(|v| g.strength(v, StrengthKind::Total).unwrap())
            .sum();
        assert_eq!(total as u64 % 2, 0);
        for v in 0..400 {
            let s = g.strength(v, StrengthKind::Total).unwrap();
            assert_eq!(s.fract(), 0.0);
            assert!(d.contains(s as u64), "vertex {v} strength {s} off support");
        }
    }

    #[test]
    fn initial_network_mixing_is_neutral() {
        let d = paper_distribution();
        let mut sum = 0.0;
        let reps = 30;
        for rep in 0..reps {
            let mut rng = ChaCha8Rng::seed_from_u64(100 + rep);
            let g = initial_network(&d, 300, &mut rng).unwrap();
            sum += undirected_assortativity(&g, true).unwrap();
        }
        let mean = sum / reps as f64;
        assert!(mean.abs() < 0.05, "mean initial assortativity {mean}");
    }

    #[test]
    fn chain_zero_steps_returns_graph_unchanged() {
        let d = paper_distribution();
        let link = link_distribution(&d, 0.3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let g = initial_network(&d, 50, &mut rng).unwrap();
        let out = rewire_chain(&g, &link, 0, &mut rng).unwrap();
        assert_eq!(g, out);
    }

    #[test]
    fn chain_conserves_strengths_exactly() {
        let d = paper_distribution();
        let link = link_distribution(&d, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let g = initial_network(&d, 120, &mut rng).unwrap();
        let before: Vec<f64> = (0..120)
            .map(|v| g.strength(v, StrengthKind::Total).unwrap())
            .collect();
        let out = rewire_chain(&g, &link, 20_000, &mut rng).unwrap();
        let after: Vec<f64> = (0..120)
            .map(|v| out.strength(v, StrengthKind::Total).unwrap())
            .collect();
        assert_eq!(before, after);
        assert_eq!(g.total_weight(), out.total_weight());
    }

    #[test]
    fn chain_skips_degenerate_graphs() {
        let d = StrengthDistribution::new(vec![10], vec![1.0]).unwrap();
        let link = link_distribution(&paper_distribution(), 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // single-edge graph: fewer than two edges, returned unchanged
        let g = initial_network(&d, 2, &mut rng).unwrap();
        let out = rewire_chain(&g, &link, 100, &mut rng).unwrap();
        assert_eq!(g, out);
    }

    #[test]
    fn chain_moves_toward_target() {
        let d = paper_distribution();
        let cfg = RewireConfig {
            n: 200,
            xi: 0.5,
            steps: 200 * 400,
            selection: EdgeSelection::WeightProportional,
        };
        let mut sum = 0.0;
        let reps = 5;
        for rep in 0..reps {
            let mut rng = ChaCha8Rng::seed_from_u64(500 + rep);
            let result = rewire_to_target(&d, &cfg, &mut rng).unwrap();
            sum += undirected_assortativity(&result.graph, true).unwrap();
        }
        let mean = sum / reps as f64;
        assert!(
            (mean - 0.5).abs() < 0.1,
            "mean achieved assortativity {mean} too far from 0.5"
        );
    }

    #[test]
    fn fenwick_sampling_ranges() {
        let mut f = Fenwick::new(5);
        f.add(0, 3);
        f.add(2, 2);
        f.add(4, 1);
        assert_eq!(f.total(), 6);
        assert_eq!(f.find(0), 0);
        assert_eq!(f.find(2), 0);
        assert_eq!(f.find(3), 2);
        assert_eq!(f.find(4), 2);
        assert_eq!(f.find(5), 4);
        f.add(0, -3);
        assert_eq!(f.total(), 3);
        assert_eq!(f.find(0), 2);
    }

    #[test]
    fn rejects_bad_distributions() {
        assert!(StrengthDistribution::new(vec![], vec![]).is_err());
        assert!(StrengthDistribution::new(vec![2, 1], vec![0.5, 0.5]).is_err());
        assert!(StrengthDistribution::new(vec![0, 1], vec![0.5, 0.5]).is_err());
        assert!(StrengthDistribution::new(vec![1, 2], vec![0.5, 0.0]).is_err());
        assert!(StrengthDistribution::power_law_with_cutoff(10, 5, 2.5, 100.0).is_err());
    }
}
