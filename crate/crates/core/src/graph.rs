//! Finite weighted graphs `(V, b, m)` with exact data.
//!
//! A [`WeightedGraph`] is always valid once constructed: measures are
//! positive, weights symmetric and positive on stored edges, no self-loops,
//! and the graph is connected. Vertices are kept in [`VertexId`] order so
//! every iteration (and every report built on top of it) is deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Vertex label.
///
/// Labels that read as integers sort numerically and come before all other
/// labels, which sort as plain strings. Chains (`"0"`, `"1"`, ...) and mirror
/// models (`"-2"`, ..., `"2"`) therefore iterate in their natural order.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Self {
        VertexId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn numeric(&self) -> Option<i64> {
        let body = self.0.strip_prefix('-').unwrap_or(&self.0);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        self.0.parse().ok()
    }
}

impl Ord for VertexId {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for VertexId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::new(s)
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<i64> for VertexId {
    fn from(n: i64) -> Self {
        VertexId(n.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexRecord {
    pub id: VertexId,
    pub measure: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Rational,
}

#[derive(Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    measure: Vec<Rational>,
    // sorted by neighbour index
    adj: Vec<Vec<(usize, Rational)>>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("vertices", &self.labels.len())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl WeightedGraph {
    /// Builds a graph from raw records, enforcing every graph axiom.
    ///
    /// Zero-weight edge records are dropped, so adjacency is exactly
    /// `b(x, y) > 0`. A pair listed twice is accepted only if both records
    /// carry the same weight.
    pub fn from_records(vertices: Vec<VertexRecord>, edges: Vec<EdgeRecord>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut sorted: BTreeMap<VertexId, Rational> = BTreeMap::new();
        for VertexRecord { id, measure } in vertices {
            if !measure.is_positive() {
                return Err(Error::NonPositiveMeasure(id.0));
            }
            if sorted.contains_key(&id) {
                return Err(Error::DuplicateVertex(id.0));
            }
            sorted.insert(id, measure);
        }
        let labels: Vec<VertexId> = sorted.keys().cloned().collect();
        let measure: Vec<Rational> = sorted.into_values().collect();
        let index: HashMap<VertexId, usize> =
            labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();

        let mut pairs: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for EdgeRecord { u, v, weight } in edges {
            let iu = *index.get(&u).ok_or_else(|| Error::UnknownVertex(u.0.clone()))?;
            let iv = *index.get(&v).ok_or_else(|| Error::UnknownVertex(v.0.clone()))?;
            if iu == iv {
                return Err(Error::SelfLoop(u.0));
            }
            if weight.is_negative() {
                return Err(Error::NonPositiveEdgeWeight { u: u.0, v: v.0 });
            }
            let key = (iu.min(iv), iu.max(iv));
            match pairs.get(&key) {
                Some(existing) if *existing != weight => {
                    return Err(Error::AsymmetricDuplicateEdge { u: u.0, v: v.0 });
                }
                Some(_) => {}
                None => {
                    pairs.insert(key, weight);
                }
            }
        }

        let mut adj = vec![Vec::new(); labels.len()];
        for ((a, b), w) in pairs {
            if w.is_zero() {
                continue;
            }
            adj[a].push((b, w.clone()));
            adj[b].push((a, w));
        }
        for list in &mut adj {
            list.sort_by_key(|(j, _)| *j);
        }

        let g = WeightedGraph { labels, index, measure, adj };
        let dist = g.bfs(0);
        if let Some(far) = dist.iter().position(Option::is_none) {
            return Err(Error::DisconnectedGraph {
                from: g.labels[0].0.clone(),
                unreachable: g.labels[far].0.clone(),
            });
        }
        Ok(g)
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &VertexId {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(&VertexId::new(label))
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn measure_at(&self, i: usize) -> &Rational {
        &self.measure[i]
    }

    pub fn measure(&self, label: &str) -> Result<&Rational> {
        Ok(&self.measure[self.index_of(label)?])
    }

    pub fn total_measure(&self) -> Rational {
        self.measure.iter().sum()
    }

    /// Neighbours of vertex `i` with their edge weights, in vertex order.
    pub fn neighbors(&self, i: usize) -> &[(usize, Rational)] {
        &self.adj[i]
    }

    /// `b(i, j)`, zero when the vertices are not adjacent.
    pub fn weight_at(&self, i: usize, j: usize) -> Rational {
        match self.adj[i].binary_search_by_key(&j, |(k, _)| *k) {
            Ok(p) => self.adj[i][p].1.clone(),
            Err(_) => rational::zero(),
        }
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search_by_key(&j, |(k, _)| *k).is_ok()
    }

    /// Every edge once, as `(i, j, b)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |(j, _)| *j > i).map(move |(j, w)| (i, *j, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertex_records(&self) -> Vec<VertexRecord> {
        self.labels
            .iter()
            .zip(&self.measure)
            .map(|(id, m)| VertexRecord { id: id.clone(), measure: m.clone() })
            .collect()
    }

    pub fn edge_records(&self) -> Vec<EdgeRecord> {
        self.edges()
            .map(|(i, j, w)| EdgeRecord {
                u: self.labels[i].clone(),
                v: self.labels[j].clone(),
                weight: w.clone(),
            })
            .collect()
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &(v, _) in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Distances from `source` to every vertex. Valid graphs are connected.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        self.bfs(source).into_iter().map(|d| d.expect("graph is connected")).collect()
    }

    pub fn distance_at(&self, i: usize, j: usize) -> usize {
        self.distances_from(i)[j]
    }

    /// Combinatorial distance: the least number of edges on a path.
    pub fn distance(&self, x: &str, y: &str) -> Result<usize> {
        let (i, j) = (self.index_of(x)?, self.index_of(y)?);
        Ok(self.distance_at(i, j))
    }

    pub fn degree_at(&self, i: usize) -> Rational {
        let total: Rational = self.adj[i].iter().map(|(_, w)| w).sum();
        total / &self.measure[i]
    }

    /// `Deg(x) = (1/m(x)) Σ_y b(x, y)`.
    pub fn degree(&self, x: &str) -> Result<Rational> {
        Ok(self.degree_at(self.index_of(x)?))
    }

    /// `Δf(x)` evaluated from per-index values; every neighbour must have one.
    pub(crate) fn laplacian_with<'a>(
        &self,
        i: usize,
        value: impl Fn(usize) -> Option<&'a Rational>,
    ) -> Result<Rational> {
        let missing = |k: usize| Error::PartialFunction(self.labels[k].0.clone());
        let fx = value(i).ok_or_else(|| missing(i))?;
        let mut acc = rational::zero();
        for (j, w) in &self.adj[i] {
            let fy = value(*j).ok_or_else(|| missing(*j))?;
            acc += w * (fx - fy);
        }
        Ok(acc / &self.measure[i])
    }

    /// Formal Laplacian `Δf(x) = (1/m(x)) Σ_y b(x, y) (f(x) − f(y))`.
    ///
    /// Only the values at `x` and its neighbours are read; a missing one is a
    /// [`Error::PartialFunction`].
    pub fn laplacian(&self, f: &GraphFunction, x: &str) -> Result<Rational> {
        let i = self.index_of(x)?;
        self.laplacian_with(i, |k| f.get(self.labels[k].as_str()))
    }

    /// Same graph with every measure and every weight multiplied by `factor`.
    pub fn scaled(&self, factor: &Rational) -> WeightedGraph {
        assert!(factor.is_positive(), "scale factor must be positive");
        WeightedGraph {
            labels: self.labels.clone(),
            index: self.index.clone(),
            measure: self.measure.iter().map(|m| m * factor).collect(),
            adj: self
                .adj
                .iter()
                .map(|l| l.iter().map(|(j, w)| (*j, w * factor)).collect())
                .collect(),
        }
    }
}

/// Incremental construction used by tests, generators and constructors.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
}

impl GraphBuilder {
    pub fn vertex(mut self, id: impl Into<VertexId>, measure: Rational) -> Self {
        self.vertices.push(VertexRecord { id: id.into(), measure });
        self
    }

    pub fn edge(mut self, u: impl Into<VertexId>, v: impl Into<VertexId>, weight: Rational) -> Self {
        self.edges.push(EdgeRecord { u: u.into(), v: v.into(), weight });
        self
    }

    pub fn build(self) -> Result<WeightedGraph> {
        WeightedGraph::from_records(self.vertices, self.edges)
    }
}

/// A function `V → ℚ`, possibly given only on part of a graph.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GraphFunction {
    values: BTreeMap<VertexId, Rational>,
}

impl GraphFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(g: &WeightedGraph, c: Rational) -> Self {
        g.labels().iter().map(|l| (l.clone(), c.clone())).collect()
    }

    pub fn set(&mut self, x: impl Into<VertexId>, value: Rational) {
        self.values.insert(x.into(), value);
    }

    pub fn get(&self, x: &str) -> Option<&Rational> {
        self.values.get(&VertexId::new(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when every vertex of `g` has a value.
    pub fn is_total_on(&self, g: &WeightedGraph) -> bool {
        g.labels().iter().all(|l| self.values.contains_key(l))
    }
}

impl FromIterator<(VertexId, Rational)> for GraphFunction {
    fn from_iter<I: IntoIterator<Item = (VertexId, Rational)>>(iter: I) -> Self {
        GraphFunction { values: iter.into_iter().collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn path(n: usize) -> WeightedGraph {
        let mut b = WeightedGraph::builder();
        for i in 0..=n as i64 {
            b = b.vertex(i, int(1));
        }
        for i in 0..n as i64 {
            b = b.edge(i, i + 1, int(1));
        }
        b.build().unwrap()
    }

    #[test]
    fn single_vertex_is_a_graph() {
        let g = WeightedGraph::builder().vertex("a", int(1)).build().unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.degree("a").unwrap(), int(0));
        assert_eq!(g.distance("a", "a").unwrap(), 0);
    }

    #[test]
    fn rejects_axiom_violations() {
        let two = || WeightedGraph::builder().vertex("a", int(1)).vertex("b", int(1));
        assert!(matches!(two().build(), Err(Error::DisconnectedGraph { .. })));
        assert!(matches!(
            two().edge("a", "b", int(0)).build(),
            Err(Error::DisconnectedGraph { .. })
        ));
        assert!(matches!(
            two().edge("a", "b", int(-1)).build(),
            Err(Error::NonPositiveEdgeWeight { .. })
        ));
        assert!(matches!(two().edge("a", "a", int(1)).build(), Err(Error::SelfLoop(_))));
        assert!(matches!(
            two().edge("a", "b", int(1)).edge("b", "a", int(2)).build(),
            Err(Error::AsymmetricDuplicateEdge { .. })
        ));
        assert!(two().edge("a", "b", int(1)).edge("b", "a", int(1)).build().is_ok());
        assert!(matches!(
            two().vertex("a", int(2)).edge("a", "b", int(1)).build(),
            Err(Error::DuplicateVertex(_))
        ));
        assert!(matches!(
            WeightedGraph::builder().vertex("a", int(0)).build(),
            Err(Error::NonPositiveMeasure(_))
        ));
        assert!(matches!(two().edge("a", "c", int(1)).build(), Err(Error::UnknownVertex(_))));
        assert!(matches!(WeightedGraph::builder().build(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn zero_weight_edges_are_dropped() {
        let g = WeightedGraph::builder()
            .vertex("a", int(1))
            .vertex("b", int(1))
            .vertex("c", int(1))
            .edge("a", "b", int(1))
            .edge("b", "c", int(1))
            .edge("a", "c", int(0))
            .build()
            .unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.distance("a", "c").unwrap(), 2);
    }

    #[test]
    fn numeric_labels_sort_numerically() {
        let mut ids: Vec<VertexId> = ["10", "2", "-1", "b", "a", "0"].into_iter().map(VertexId::new).collect();
        ids.sort();
        let got: Vec<&str> = ids.iter().map(VertexId::as_str).collect();
        assert_eq!(got, ["-1", "0", "2", "10", "a", "b"]);
    }

    #[test]
    fn path_distances_and_degree() {
        let g = path(6);
        for r in 0..=6i64 {
            assert_eq!(g.distance("0", &r.to_string()).unwrap(), r as usize);
        }
        assert_eq!(g.degree("3").unwrap(), int(2));
        assert!(matches!(g.distance("0", "9"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn laplacian_of_distance_on_path() {
        let g = path(5);
        let f: GraphFunction = (0..=5i64).map(|r| (VertexId::from(r), int(r))).collect();
        assert_eq!(g.laplacian(&f, "0").unwrap(), int(-1));
        for r in 1..5 {
            assert_eq!(g.laplacian(&f, &r.to_string()).unwrap(), int(0));
        }
    }

    #[test]
    fn laplacian_needs_local_values() {
        let g = path(3);
        let mut f = GraphFunction::new();
        f.set("1", int(0));
        f.set("2", int(1));
        assert_eq!(g.laplacian(&f, "1"), Err(Error::PartialFunction("0".into())));
        f.set("0", q(1, 2));
        assert_eq!(g.laplacian(&f, "1").unwrap(), q(-3, 2));
    }
}
