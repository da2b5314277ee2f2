//! Disparity-filter backbone extraction.
//!
//! Each edge weight is normalized by the source's out-strength and by the
//! target's in-strength. Under the null that a vertex spreads its strength
//! as uniform spacings over its d incident edges, a normalized weight has
//! density `(d - 1)(1 - x)^(d - 2)`, so the tail p-value is
//! `(1 - x)^(d - 1)`. An edge survives at level `alpha` if either side
//! rejects the null.

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

/// Per-edge significance record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSignificance {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
    /// Tail p-value against the source's outgoing spacings null.
    pub p_out: f64,
    /// Tail p-value against the target's incoming spacings null.
    pub p_in: f64,
    /// Both endpoint degrees relevant to this edge are 1, so neither side
    /// can ever reject; such edges carry no heterogeneity signal.
    pub terminal: bool,
    pub keep: bool,
}

/// Extraction result: the filtered subgraph on the same vertex set plus the
/// full significance table (one row per original edge, in stored order).
#[derive(Debug, Clone)]
pub struct Backbone {
    pub graph: WeightedDigraph,
    pub significance: Vec<EdgeSignificance>,
}

/// Tail p-value of a normalized weight under the uniform-spacings null with
/// `d` incident edges: `(1 - w)^(d - 1)` for `d > 1`. A vertex with a single
/// edge has no spacing distribution, so `d = 1` reports 1 and is never
/// significant on its own.
pub fn disparity_pvalue(w_norm: f64, d: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&w_norm) {
        return Err(Error::InvalidConfig(format!(
            "normalized weight {w_norm} outside [0, 1]"
        )));
    }
    if d < 1 {
        return Err(Error::InvalidConfig("degree must be >= 1".into()));
    }
    if d == 1 {
        return Ok(1.0);
    }
    Ok((1.0 - w_norm).powi((d - 1) as i32))
}

/// Disparity-filter backbone at level `alpha`, preserving edges whose both
/// relevant degrees are 1 (the connectivity-conservative default).
pub fn extract_backbone(g: &WeightedDigraph, alpha: f64) -> Result<Backbone> {
    extract_backbone_opts(g, alpha, true)
}

/// As [`extract_backbone`], with the policy for `d = 1` edges explicit:
/// `preserve_terminal` keeps edges where the source out-degree and target
/// in-degree are both 1 even though neither test can fire.
pub fn extract_backbone_opts(
    g: &WeightedDigraph,
    alpha: f64,
    preserve_terminal: bool,
) -> Result<Backbone> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let out_s = g.out_strengths();
    let in_s = g.in_strengths();
    let out_d = g.out_degrees();
    let in_d = g.in_degrees();

    let mut significance = Vec::with_capacity(g.edge_count());
    let mut kept = Vec::new();
    for e in g.edges() {
        let d_out = out_d[e.source];
        let d_in = in_d[e.target];
        let p_out = disparity_pvalue(e.weight / out_s[e.source], d_out)?;
        let p_in = disparity_pvalue(e.weight / in_s[e.target], d_in)?;
        let terminal = d_out == 1 && d_in == 1;
        let keep = p_out < alpha || p_in < alpha || (terminal && preserve_terminal);
        significance.push(EdgeSignificance {
            source: e.source,
            target: e.target,
            weight: e.weight,
            p_out,
            p_in,
            terminal,
            keep,
        });
        if keep {
            kept.push((e.source, e.target, e.weight));
        }
    }
    Ok(Backbone {
        graph: WeightedDigraph::from_edges(g.vertex_count(), kept)?,
        significance,
    })
}
