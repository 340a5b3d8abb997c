//! Brute-force reference for the Ollivier curvature.
//!
//! Enumerates every integer assignment on the support inside the box
//! `|f(u)| ≤ d(u, x)` (further cut by `|f(u) − f(y)| ≤ d(u, y)`), keeps those
//! that are 1-Lipschitz on every pair, and evaluates `∇_{xy}Δf` directly with
//! the graph Laplacian. Exponential in the support size; meant for supports
//! of about ten vertices. It shares nothing with the flow solver beyond the
//! graph itself.

use std::collections::BTreeMap;

use crate::curvature::Support;
use crate::error::{Error, Result};
use crate::graph::{GraphFunction, VertexId, WeightedGraph};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct Enumerated {
    pub value: Rational,
    /// First optimum in lexicographic order (vertex order, ascending values).
    pub witness: BTreeMap<VertexId, i64>,
    /// Number of feasible assignments visited.
    pub feasible: u64,
}

pub fn enumerate_ollivier(g: &WeightedGraph, x: &str, y: &str) -> Result<Enumerated> {
    let (xi, yi) = (g.index_of(x)?, g.index_of(y)?);
    if xi == yi {
        return Err(Error::SameVertex(x.to_string()));
    }
    let support = Support::new(g, xi, yi);
    let (px, py) = (support.position(xi).unwrap(), support.position(yi).unwrap());
    let d = support.dist[px][py] as i64;

    let n = support.len();
    let mut search = Search {
        g,
        support: &support,
        px,
        py,
        d,
        assigned: vec![None; n],
        best: None,
        feasible: 0,
    };
    search.assigned[px] = Some(0);
    search.assigned[py] = Some(d);
    search.descend(0);

    let (value, values) = search.best.expect("d(x, ·) itself is feasible");
    Ok(Enumerated {
        value,
        witness: support.vertices.iter().zip(values).map(|(&v, f)| (g.label(v).clone(), f)).collect(),
        feasible: search.feasible,
    })
}

struct Search<'a> {
    g: &'a WeightedGraph,
    support: &'a Support,
    px: usize,
    py: usize,
    d: i64,
    assigned: Vec<Option<i64>>,
    best: Option<(Rational, Vec<i64>)>,
    feasible: u64,
}

impl Search<'_> {
    fn descend(&mut self, pos: usize) {
        if pos == self.assigned.len() {
            self.leaf();
            return;
        }
        if pos == self.px || pos == self.py {
            if self.consistent(pos) {
                self.descend(pos + 1);
            }
            return;
        }
        let dx = self.support.dist[pos][self.px] as i64;
        let dy = self.support.dist[pos][self.py] as i64;
        let lo = (-dx).max(self.d - dy);
        let hi = dx.min(self.d + dy);
        for v in lo..=hi {
            self.assigned[pos] = Some(v);
            if self.consistent(pos) {
                self.descend(pos + 1);
            }
        }
        self.assigned[pos] = None;
    }

    /// Lipschitz check of `pos` against every vertex before it.
    fn consistent(&self, pos: usize) -> bool {
        let fv = self.assigned[pos].unwrap();
        (0..pos).all(|k| match self.assigned[k] {
            Some(fk) => (fv - fk).abs() <= self.support.dist[pos][k] as i64,
            None => true,
        })
    }

    fn leaf(&mut self) {
        self.feasible += 1;
        let values: Vec<i64> = self.assigned.iter().map(|v| v.unwrap()).collect();
        let f: GraphFunction = self
            .support
            .vertices
            .iter()
            .zip(&values)
            .map(|(&v, &fv)| (self.g.label(v).clone(), rational::int(fv)))
            .collect();
        let x = self.g.label(self.support.vertices[self.px]).as_str();
        let y = self.g.label(self.support.vertices[self.py]).as_str();
        let grad = (self.g.laplacian(&f, y).unwrap() - self.g.laplacian(&f, x).unwrap()) / rational::int(self.d);
        if self.best.as_ref().is_none_or(|(b, _)| grad < *b) {
            self.best = Some((grad, values));
        }
    }
}
