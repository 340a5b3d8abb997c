//! Ollivier-Ricci curvature through its Laplacian (Lipschitz-dual) form
//!
//! ```text
//! k(x, y) = inf { ∇_{xy} Δf : f ∈ Lip(1), ∇_{xy} f = 1 },   ∇_{xy} f = (f(y) − f(x)) / d(x, y).
//! ```
//!
//! `∇_{xy}Δf` only reads `f` on `S = {x, y} ∪ N(x) ∪ N(y)`, and a function
//! that is 1-Lipschitz on `S` for the full-graph metric extends to a global
//! one, so the infimum is a finite linear program over `S`. Its constraints
//! are differences with integer bounds, hence an integer optimum exists.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::flow;
use crate::chains::BirthDeathChain;
use crate::error::{Error, Result};
use crate::graph::{GraphFunction, VertexId, WeightedGraph};
use crate::rational::{self, Rational};
use crate::spheres::RootedDecomposition;

/// The vertices the curvature of a pair depends on, with their pairwise
/// distances in the whole graph.
#[derive(Debug, Clone)]
pub struct Support {
    /// Graph indices, ascending.
    pub vertices: Vec<usize>,
    /// `dist[a][b]` between `vertices[a]` and `vertices[b]`.
    pub dist: Vec<Vec<usize>>,
}

impl Support {
    pub fn new(g: &WeightedGraph, x: usize, y: usize) -> Self {
        let mut vertices: Vec<usize> = [x, y]
            .into_iter()
            .chain(g.neighbors(x).iter().map(|(j, _)| *j))
            .chain(g.neighbors(y).iter().map(|(j, _)| *j))
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let dist = vertices
            .iter()
            .map(|&u| {
                let from_u = g.distances_from(u);
                vertices.iter().map(|&v| from_u[v]).collect()
            })
            .collect();
        Support { vertices, dist }
    }

    pub fn position(&self, i: usize) -> Option<usize> {
        self.vertices.binary_search(&i).ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Exact `k(x, y)` together with an optimal integer-valued witness.
#[derive(Debug, Clone, PartialEq)]
pub struct OllivierResult {
    pub x: VertexId,
    pub y: VertexId,
    pub distance: usize,
    pub value: Rational,
    /// Lexicographically smallest optimal function on [`Self::support`].
    pub witness: BTreeMap<VertexId, i64>,
    pub support: Vec<VertexId>,
}

impl OllivierResult {
    pub fn witness_function(&self) -> GraphFunction {
        self.witness.iter().map(|(v, &f)| (v.clone(), rational::int(f))).collect()
    }

    /// Checks that the witness is 1-Lipschitz on the support, attains the
    /// required gradient along `(x, y)`, and reproduces [`Self::value`].
    pub fn check_invariants(&self, g: &WeightedGraph) -> std::result::Result<(), String> {
        let w = |v: &VertexId| self.witness.get(v).copied().ok_or_else(|| format!("no witness value at {v}"));
        for a in &self.support {
            for b in &self.support {
                let d = g.distance(a.as_str(), b.as_str()).map_err(|e| e.to_string())? as i64;
                if (w(a)? - w(b)?).abs() > d {
                    return Err(format!("witness is not 1-Lipschitz on ({a}, {b})"));
                }
            }
        }
        if w(&self.y)? - w(&self.x)? != self.distance as i64 {
            return Err("witness does not have unit gradient along (x, y)".into());
        }
        let f = self.witness_function();
        let lx = g.laplacian(&f, self.x.as_str()).map_err(|e| e.to_string())?;
        let ly = g.laplacian(&f, self.y.as_str()).map_err(|e| e.to_string())?;
        let recomputed = (ly - lx) / rational::int(self.distance as i64);
        if recomputed != self.value {
            return Err(format!(
                "witness gives {} but value is {}",
                rational::fmt(&recomputed),
                rational::fmt(&self.value)
            ));
        }
        Ok(())
    }
}

/// `k(x, y)` for any two distinct vertices.
pub fn ollivier_pair(g: &WeightedGraph, x: &str, y: &str) -> Result<OllivierResult> {
    ollivier_pair_at(g, g.index_of(x)?, g.index_of(y)?)
}

pub fn ollivier_pair_at(g: &WeightedGraph, x: usize, y: usize) -> Result<OllivierResult> {
    if x == y {
        return Err(Error::SameVertex(g.label(x).to_string()));
    }
    let support = Support::new(g, x, y);
    let n = support.len();
    let (px, py) = (support.position(x).unwrap(), support.position(y).unwrap());
    let d = support.dist[px][py] as i64;

    // ∇_{xy}Δf · d = Δf(y) − Δf(x) = Σ_u c_u f(u)
    let mut coeffs = vec![Rational::zero(); n];
    coeffs[py] += g.degree_at(y);
    for (z, w) in g.neighbors(y) {
        coeffs[support.position(*z).unwrap()] -= w / g.measure_at(y);
    }
    coeffs[px] -= g.degree_at(x);
    for (z, w) in g.neighbors(x) {
        coeffs[support.position(*z).unwrap()] += w / g.measure_at(x);
    }

    let mut arcs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            // f(b) ≤ f(a) + d(a, b); from y to x this tightens to f(x) ≤ f(y) − d.
            let w = if (a, b) == (py, px) { -d } else { support.dist[a][b] as i64 };
            arcs.push((a, b, w));
        }
    }

    let potential = flow::solve(n, &arcs, &coeffs, px);

    let mut values: Vec<Option<Rational>> = vec![None; g.len()];
    for (&v, &p) in support.vertices.iter().zip(&potential) {
        values[v] = Some(rational::int(p));
    }
    let lx = g.laplacian_with(x, |k| values[k].as_ref())?;
    let ly = g.laplacian_with(y, |k| values[k].as_ref())?;
    let value = (ly - lx) / rational::int(d);

    Ok(OllivierResult {
        x: g.label(x).clone(),
        y: g.label(y).clone(),
        distance: d as usize,
        value,
        witness: support.vertices.iter().zip(&potential).map(|(&v, &p)| (g.label(v).clone(), p)).collect(),
        support: support.vertices.iter().map(|&v| g.label(v).clone()).collect(),
    })
}

/// `k(r) = min_{y ∈ S_r} max_{x ∈ S_{r−1}, x ∼ y} k(x, y)` for `1 ≤ r ≤ horizon`.
pub fn sphere_curvature(g: &WeightedGraph, decomp: &RootedDecomposition, r: usize) -> Result<Rational> {
    if r == 0 {
        return Err(Error::EmptySphere(0));
    }
    decomp.check_radius(r)?;
    let mut best: Option<Rational> = None;
    for &y in decomp.sphere(r) {
        let mut worst: Option<Rational> = None;
        for &(x, _) in g.neighbors(y) {
            if decomp.radius_of(x) + 1 != r {
                continue;
            }
            let k = ollivier_pair_at(g, x, y)?.value;
            if worst.as_ref().is_none_or(|w| k > *w) {
                worst = Some(k);
            }
        }
        let worst = worst.expect("every vertex of S_r has a neighbour in S_{r-1}");
        if best.as_ref().is_none_or(|b| worst < *b) {
            best = Some(worst);
        }
    }
    best.ok_or(Error::EmptySphere(r))
}

/// `[k(1), …, k(up_to)]`.
pub fn sphere_curvatures(g: &WeightedGraph, decomp: &RootedDecomposition, up_to: usize) -> Result<Vec<Rational>> {
    (1..=up_to).map(|r| sphere_curvature(g, decomp, r)).collect()
}

/// Ollivier curvature `k(r, R)` of a birth-death chain from the chain data
/// alone:
///
/// ```text
/// [b(R,R−1) − b(R,R+1)] / ((R−r) m(R)) − [b(r,r−1) − b(r,r+1)] / ((R−r) m(r)),   b(0,−1) = 0.
/// ```
///
/// Needs `b(R, R+1)`, so `R ≤ horizon − 1`.
pub fn bdc_ollivier_closed_form(chain: &BirthDeathChain, r: usize, big_r: usize) -> Result<Rational> {
    if r >= big_r {
        return Err(Error::BadRadiusOrder { r, big_r });
    }
    chain.check_outer(big_r)?;
    let inward = |s: usize| if s == 0 { rational::zero() } else { chain.weight(s - 1).clone() };
    let span = rational::int((big_r - r) as i64);
    let far = (inward(big_r) - chain.weight(big_r)) / (&span * chain.measure(big_r));
    let near = (inward(r) - chain.weight(r)) / (&span * chain.measure(r));
    Ok(far - near)
}

/// Sphere curvature of a chain, `k̃(r) = k̃(r − 1, r)`.
pub fn bdc_sphere_curvature(chain: &BirthDeathChain, r: usize) -> Result<Rational> {
    if r == 0 {
        return Err(Error::EmptySphere(0));
    }
    bdc_ollivier_closed_form(chain, r - 1, r)
}
