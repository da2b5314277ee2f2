//! Assortativity coefficients for weighted directed networks.
//!
//! The central quantity is an edge-weighted Pearson correlation between a
//! feature of the source vertex and a feature of the target vertex:
//!
//! ```text
//! rho(x, y) = sum_edges w_ij (x_i - mean_sou) (y_j - mean_tar) / (W sd_sou sd_tar)
//! ```
//!
//! where the source moments are weighted by out-strength and the target
//! moments by in-strength. Everything else in this module - the four
//! (alpha, beta) strength-strength coefficients, their unweighted (degree)
//! reductions, and the undirected case - is a thin wrapper selecting feature
//! columns for this one kernel.

use crate::error::{Degeneracy, Error, Result};
use crate::graph::{Direction, WeightedDigraph};

/// Edge-weighted means and standard deviations of a source/target feature pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedMoments {
    pub mean_source: f64,
    pub mean_target: f64,
    pub sd_source: f64,
    pub sd_target: f64,
}

/// The four (alpha, beta) direction pairs in profile order.
pub const DIRECTION_PAIRS: [(Direction, Direction); 4] = [
    (Direction::In, Direction::In),
    (Direction::In, Direction::Out),
    (Direction::Out, Direction::In),
    (Direction::Out, Direction::Out),
];

/// One coefficient, or the reason it is undefined.
pub type Coefficient = std::result::Result<f64, Degeneracy>;

/// The four weighted and four unweighted strength coefficients of one graph,
/// indexed by [`DIRECTION_PAIRS`]. Degenerate entries carry their reason
/// instead of failing the whole profile.
#[derive(Debug, Clone, PartialEq)]
pub struct AssortProfile {
    pub weighted: [Coefficient; 4],
    pub unweighted: [Coefficient; 4],
}

impl AssortProfile {
    pub fn weighted_entry(&self, alpha: Direction, beta: Direction) -> Coefficient {
        self.weighted[pair_index(alpha, beta)]
    }

    pub fn unweighted_entry(&self, alpha: Direction, beta: Direction) -> Coefficient {
        self.unweighted[pair_index(alpha, beta)]
    }
}

fn pair_index(alpha: Direction, beta: Direction) -> usize {
    DIRECTION_PAIRS
        .iter()
        .position(|&p| p == (alpha, beta))
        .unwrap()
}

fn moments_kernel(g: &WeightedDigraph, x: &[f64], y: &[f64]) -> Option<WeightedMoments> {
    let w = g.total_weight();
    if g.edge_count() == 0 {
        return None;
    }
    let out_s = g.out_strengths();
    let in_s = g.in_strengths();

    let mut mean_source = 0.0;
    let mut mean_target = 0.0;
    for i in 0..g.vertex_count() {
        mean_source += out_s[i] * x[i];
        mean_target += in_s[i] * y[i];
    }
    mean_source /= w;
    mean_target /= w;

    let mut var_source = 0.0;
    let mut var_target = 0.0;
    for i in 0..g.vertex_count() {
        var_source += out_s[i] * (x[i] - mean_source).powi(2);
        var_target += in_s[i] * (y[i] - mean_target).powi(2);
    }
    Some(WeightedMoments {
        mean_source,
        mean_target,
        sd_source: (var_source / w).sqrt(),
        sd_target: (var_target / w).sqrt(),
    })
}

/// The single audited correlation kernel; all public coefficients route here.
fn assort_kernel(g: &WeightedDigraph, x: &[f64], y: &[f64]) -> Coefficient {
    let moments = moments_kernel(g, x, y).ok_or(Degeneracy::NoEdges)?;
    if moments.sd_source <= 0.0 {
        return Err(Degeneracy::ZeroSourceVariance);
    }
    if moments.sd_target <= 0.0 {
        return Err(Degeneracy::ZeroTargetVariance);
    }
    let mut covariance = 0.0;
    for e in g.edges() {
        covariance +=
            e.weight * (x[e.source] - moments.mean_source) * (y[e.target] - moments.mean_target);
    }
    Ok(covariance / (g.total_weight() * moments.sd_source * moments.sd_target))
}

/// Edge-weighted means and standard deviations of two feature columns.
/// Source moments weight by out-strength, target moments by in-strength.
pub fn weighted_moments(g: &WeightedDigraph, x: &[f64], y: &[f64]) -> Result<WeightedMoments> {
    g.check_feature(x)?;
    g.check_feature(y)?;
    moments_kernel(g, x, y).ok_or(Error::EdgelessGraph)
}

/// Assortativity between feature `x` of the source vertex and feature `y` of
/// the target vertex. Degenerate variance is a typed error rather than a
/// silent 0 or NaN.
pub fn feature_assortativity(g: &WeightedDigraph, x: &[f64], y: &[f64]) -> Result<f64> {
    g.check_feature(x)?;
    g.check_feature(y)?;
    assort_kernel(g, x, y).map_err(Error::from)
}

/// The (alpha, beta)-type strength assortativity: alpha-strength of the
/// source vertex against beta-strength of the target vertex.
pub fn strength_assortativity(g: &WeightedDigraph, alpha: Direction, beta: Direction) -> Result<f64> {
    assort_kernel(g, g.strength_column(alpha), g.strength_column(beta)).map_err(Error::from)
}

/// Unweighted reduction: every weight replaced by 1 and strengths by degrees,
/// which recovers the four directed degree-degree correlations.
pub fn unweighted_strength_assortativity(
    g: &WeightedDigraph,
    alpha: Direction,
    beta: Direction,
) -> Result<f64> {
    let view = g.unit_weight_view();
    // In the unit-weight view, strengths equal the original degrees.
    assort_kernel(&view, view.strength_column(alpha), view.strength_column(beta))
        .map_err(Error::from)
}

/// Assortativity for a graph built by the undirected split convention
/// (each undirected edge stored as two opposite directed edges of half
/// weight). All four direction pairs coincide there, so the out-out entry is
/// returned; with `weighted == false` degrees are used instead of strengths.
pub fn undirected_assortativity(g: &WeightedDigraph, weighted: bool) -> Result<f64> {
    if weighted {
        strength_assortativity(g, Direction::Out, Direction::Out)
    } else {
        unweighted_strength_assortativity(g, Direction::Out, Direction::Out)
    }
}

/// All eight coefficients of a graph. Entries that are undefined carry the
/// degeneracy reason; the profile itself always succeeds.
pub fn assortativity_profile(g: &WeightedDigraph) -> AssortProfile {
    let view = g.unit_weight_view();
    let weighted = DIRECTION_PAIRS
        .map(|(a, b)| assort_kernel(g, g.strength_column(a), g.strength_column(b)));
    let unweighted = DIRECTION_PAIRS
        .map(|(a, b)| assort_kernel(&view, view.strength_column(a), view.strength_column(b)));
    AssortProfile {
        weighted,
        unweighted,
    }
}
