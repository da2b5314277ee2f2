//! Immutable weighted directed graphs with cached strengths and degrees.
//!
//! Vertices are dense integer ids `0..n`. Edge weights are strictly positive
//! reals, self-loops are rejected, and parallel input edges are merged by
//! weight summation at construction. Everything downstream consumes the graph
//! read-only, so strengths, degrees and the total weight are computed once.

use crate::error::{Error, Result};

/// Edge direction selector for strengths and degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::In => "in",
            Direction::Out => "out",
        }
    }
}

/// Strength/degree accessor kind; `Total` is the sum of both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrengthKind {
    In,
    Out,
    Total,
}

/// A single stored (merged) directed edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: f64,
}

/// Immutable directed graph with strictly positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    out_strength: Vec<f64>,
    in_strength: Vec<f64>,
    out_degree: Vec<usize>,
    in_degree: Vec<usize>,
    total_weight: f64,
}

impl WeightedDigraph {
    /// Build a graph from an edge list. Duplicate ordered pairs are merged by
    /// summing their weights; the input order does not affect the result
    /// (edges are canonically sorted before merging).
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut list: Vec<(usize, usize, f64)> = Vec::new();
        for (source, target, weight) in edges {
            if source >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    id: source,
                    count: vertex_count,
                });
            }
            if target >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    id: target,
                    count: vertex_count,
                });
            }
            if source == target {
                return Err(Error::SelfLoop(source));
            }
            if !(weight > 0.0) || !weight.is_finite() {
                return Err(Error::NonPositiveWeight {
                    from: source,
                    to: target,
                    weight,
                });
            }
            list.push((source, target, weight));
        }
        list.sort_by(|a, b| {
            (a.0, a.1)
                .cmp(&(b.0, b.1))
                .then_with(|| a.2.total_cmp(&b.2))
        });

        let mut merged: Vec<Edge> = Vec::with_capacity(list.len());
        for (source, target, weight) in list {
            match merged.last_mut() {
                Some(last) if last.source == source && last.target == target => {
                    last.weight += weight;
                }
                _ => merged.push(Edge {
                    source,
                    target,
                    weight,
                }),
            }
        }

        let mut out_strength = vec![0.0; vertex_count];
        let mut in_strength = vec![0.0; vertex_count];
        let mut out_degree = vec![0usize; vertex_count];
        let mut in_degree = vec![0usize; vertex_count];
        let mut total_weight = 0.0;
        for e in &merged {
            out_strength[e.source] += e.weight;
            in_strength[e.target] += e.weight;
            out_degree[e.source] += 1;
            in_degree[e.target] += 1;
            total_weight += e.weight;
        }

        Ok(Self {
            vertex_count,
            edges: merged,
            out_strength,
            in_strength,
            out_degree,
            in_degree,
            total_weight,
        })
    }

    /// Build a graph from an undirected edge list using the split convention:
    /// each undirected edge `{i, j}` of weight `w` is stored as both `i -> j`
    /// and `j -> i` with weight `w / 2`. Under this convention all four
    /// directed strength assortativities coincide.
    pub fn from_undirected_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut split: Vec<(usize, usize, f64)> = Vec::new();
        for (a, b, weight) in edges {
            split.push((a, b, weight / 2.0));
            split.push((b, a, weight / 2.0));
        }
        Self::from_edges(vertex_count, split)
    }

    /// A graph with the same edge set and every weight replaced by 1.
    /// Strengths of the view equal degrees of the original graph.
    pub fn unit_weight_view(&self) -> WeightedDigraph {
        let mut out_strength = vec![0.0; self.vertex_count];
        let mut in_strength = vec![0.0; self.vertex_count];
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                out_strength[e.source] += 1.0;
                in_strength[e.target] += 1.0;
                Edge {
                    source: e.source,
                    target: e.target,
                    weight: 1.0,
                }
            })
            .collect();
        WeightedDigraph {
            vertex_count: self.vertex_count,
            total_weight: edges.len() as f64,
            out_degree: self.out_degree.clone(),
            in_degree: self.in_degree.clone(),
            edges,
            out_strength,
            in_strength,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sum of all edge weights, `W`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn strength(&self, vertex: usize, kind: StrengthKind) -> Result<f64> {
        self.check_vertex(vertex)?;
        Ok(match kind {
            StrengthKind::In => self.in_strength[vertex],
            StrengthKind::Out => self.out_strength[vertex],
            StrengthKind::Total => self.in_strength[vertex] + self.out_strength[vertex],
        })
    }

    pub fn degree(&self, vertex: usize, kind: StrengthKind) -> Result<usize> {
        self.check_vertex(vertex)?;
        Ok(match kind {
            StrengthKind::In => self.in_degree[vertex],
            StrengthKind::Out => self.out_degree[vertex],
            StrengthKind::Total => self.in_degree[vertex] + self.out_degree[vertex],
        })
    }

    pub fn in_strengths(&self) -> &[f64] {
        &self.in_strength
    }

    pub fn out_strengths(&self) -> &[f64] {
        &self.out_strength
    }

    pub fn in_degrees(&self) -> &[usize] {
        &self.in_degree
    }

    pub fn out_degrees(&self) -> &[usize] {
        &self.out_degree
    }

    /// Strength column for one direction, usable as a feature column.
    pub fn strength_column(&self, direction: Direction) -> &[f64] {
        match direction {
            Direction::In => &self.in_strength,
            Direction::Out => &self.out_strength,
        }
    }

    /// One `(x_source, y_target, weight)` record per stored edge. Feeding the
    /// records into a plain weighted Pearson correlation reproduces the
    /// feature assortativity; the expansion is the oracle for that identity.
    pub fn expand_to_endpoint_list(&self, x: &[f64], y: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
        self.check_feature(x)?;
        self.check_feature(y)?;
        Ok(self
            .edges
            .iter()
            .map(|e| (x[e.source], y[e.target], e.weight))
            .collect())
    }

    fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                id: vertex,
                count: self.vertex_count,
            });
        }
        Ok(())
    }

    pub(crate) fn check_feature(&self, column: &[f64]) -> Result<()> {
        if column.len() != self.vertex_count {
            return Err(Error::FeatureLengthMismatch {
                expected: self.vertex_count,
                got: column.len(),
            });
        }
        if let Some(vertex) = column.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteFeature { vertex });
        }
        Ok(())
    }
}

/// Named per-vertex real-valued feature columns aligned to a graph.
#[derive(Debug, Clone)]
pub struct FeatureTable {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
    vertex_count: usize,
}

impl FeatureTable {
    pub fn new(vertex_count: usize, names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::InvalidConfig(format!(
                "{} feature names but {} columns",
                names.len(),
                columns.len()
            )));
        }
        for column in &columns {
            if column.len() != vertex_count {
                return Err(Error::FeatureLengthMismatch {
                    expected: vertex_count,
                    got: column.len(),
                });
            }
            if let Some(vertex) = column.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFiniteFeature { vertex });
            }
        }
        Ok(Self {
            names,
            columns,
            vertex_count,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::toy_graph;

    #[test]
    fn toy_graph_total_weight_and_strengths() {
        let g = toy_graph();
        assert_eq!(g.total_weight(), 31.0);
        assert_eq!(g.strength(0, StrengthKind::In).unwrap(), 3.0);
        assert_eq!(g.strength(0, StrengthKind::Out).unwrap(), 13.0);
        assert_eq!(g.strength(1, StrengthKind::In).unwrap(), 16.0);
        assert_eq!(g.strength(1, StrengthKind::Out).unwrap(), 9.0);
        assert_eq!(g.strength(0, StrengthKind::Total).unwrap(), 16.0);
    }

    #[test]
    fn toy_graph_degrees() {
        let g = toy_graph();
        assert_eq!(g.degree(0, StrengthKind::In).unwrap(), 2);
        assert_eq!(g.degree(0, StrengthKind::Out).unwrap(), 2);
        assert_eq!(g.degree(4, StrengthKind::Out).unwrap(), 0);
        assert_eq!(g.degree(4, StrengthKind::In).unwrap(), 1);
    }

    #[test]
    fn empty_graph_is_all_zero() {
        let g = WeightedDigraph::from_edges(3, Vec::new()).unwrap();
        assert_eq!(g.total_weight(), 0.0);
        assert_eq!(g.edge_count(), 0);
        for v in 0..3 {
            assert_eq!(g.strength(v, StrengthKind::Total).unwrap(), 0.0);
            assert_eq!(g.degree(v, StrengthKind::Total).unwrap(), 0);
        }
    }

    #[test]
    fn duplicate_edges_merge_by_weight_sum() {
        let g = WeightedDigraph::from_edges(2, vec![(0, 1, 2.0), (0, 1, 2.0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].weight, 4.0);
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(matches!(
            WeightedDigraph::from_edges(3, vec![(1, 1, 1.0)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            WeightedDigraph::from_edges(3, vec![(0, 1, 0.0)]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            WeightedDigraph::from_edges(3, vec![(0, 1, -2.0)]),
            Err(Error::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            WeightedDigraph::from_edges(3, vec![(0, 3, 1.0)]),
            Err(Error::VertexOutOfRange { id: 3, count: 3 })
        ));
    }

    #[test]
    fn strength_sums_match_total_weight() {
        let g = toy_graph();
        let in_sum: f64 = g.in_strengths().iter().sum();
        let out_sum: f64 = g.out_strengths().iter().sum();
        assert_eq!(in_sum, g.total_weight());
        assert_eq!(out_sum, g.total_weight());
    }

    #[test]
    fn endpoint_list_expansion() {
        let g = toy_graph();
        let x = g.strength_column(Direction::Out).to_vec();
        let y = g.strength_column(Direction::In).to_vec();
        let list = g.expand_to_endpoint_list(&x, &y).unwrap();
        assert_eq!(list.len(), 7);
        // edge A->B carries (s_out(A), s_in(B), w) = (13, 16, 10)
        assert!(list.contains(&(13.0, 16.0, 10.0)));
        let w_sum: f64 = list.iter().map(|r| r.2).sum();
        assert_eq!(w_sum, g.total_weight());

        let empty = WeightedDigraph::from_edges(2, Vec::new()).unwrap();
        assert!(empty
            .expand_to_endpoint_list(&[0.0, 0.0], &[0.0, 0.0])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn undirected_split_convention() {
        // path 1-2-3 with unit weights, as vertices 0-1-2
        let g = WeightedDigraph::from_undirected_edges(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.total_weight(), 2.0);
        assert_eq!(g.strength(1, StrengthKind::In).unwrap(), 1.0);
        assert_eq!(g.strength(1, StrengthKind::Out).unwrap(), 1.0);
    }

    #[test]
    fn feature_table_alignment() {
        let t = FeatureTable::new(
            3,
            vec!["a".into(), "b".into()],
            vec![vec![1.0, 2.0, 3.0], vec![0.5, 0.5, 0.5]],
        )
        .unwrap();
        assert_eq!(t.column("a").unwrap(), &[1.0, 2.0, 3.0]);
        assert!(t.column("missing").is_none());

        assert!(FeatureTable::new(3, vec!["a".into()], vec![vec![1.0, 2.0]]).is_err());
        assert!(FeatureTable::new(1, vec!["a".into()], vec![vec![f64::NAN]]).is_err());
    }
}
