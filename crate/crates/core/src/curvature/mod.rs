//! Inner/outer curvatures, sphere averages, and Ollivier-Ricci curvature.
//!
//! For `x ∈ S_r`,
//!
//! ```text
//! k_±(x) = (1/m(x)) Σ_{y ∈ S_{r±1}} b(x, y),      k_−(root) = 0,
//! ```
//!
//! so edges inside a sphere count for neither side. The averaging operator
//! replaces a function on `S_r` by its `m`-weighted mean, and the averages of
//! `k_±` are exactly the curvatures of the associated birth-death chain.

mod flow;
mod ollivier;

pub use ollivier::{
    bdc_ollivier_closed_form, bdc_sphere_curvature, ollivier_pair, ollivier_pair_at, sphere_curvature,
    sphere_curvatures, OllivierResult, Support,
};

use serde::Serialize;

use crate::error::Result;
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::{self, Rational};
use crate::spheres::RootedDecomposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inner,
    Outer,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Inner => "inner",
            Side::Outer => "outer",
        })
    }
}

fn sum_into(g: &WeightedGraph, decomp: &RootedDecomposition, i: usize, target: usize) -> Rational {
    let total: Rational = g
        .neighbors(i)
        .iter()
        .filter(|(j, _)| decomp.radius_of(*j) == target)
        .map(|(_, w)| w)
        .sum();
    total / g.measure_at(i)
}

/// `k_−` at vertex index `i`; always defined.
pub fn k_minus_at(g: &WeightedGraph, decomp: &RootedDecomposition, i: usize) -> Rational {
    match decomp.radius_of(i) {
        0 => rational::zero(),
        r => sum_into(g, decomp, i, r - 1),
    }
}

/// `k_+` at vertex index `i`; not defined on the outermost sphere.
pub fn k_plus_at(g: &WeightedGraph, decomp: &RootedDecomposition, i: usize) -> Result<Rational> {
    let r = decomp.radius_of(i);
    decomp.check_outer(r)?;
    Ok(sum_into(g, decomp, i, r + 1))
}

/// `(k_−(x), k_+(x))`.
pub fn inner_outer(g: &WeightedGraph, decomp: &RootedDecomposition, x: &str) -> Result<(Rational, Rational)> {
    let i = g.index_of(x)?;
    Ok((k_minus_at(g, decomp, i), k_plus_at(g, decomp, i)?))
}

/// `𝒜k_±(r)`: the `m`-weighted mean of `k_±` over `S_r`.
pub fn average_curvature(g: &WeightedGraph, decomp: &RootedDecomposition, r: usize, side: Side) -> Result<Rational> {
    match side {
        Side::Inner => decomp.check_radius(r)?,
        Side::Outer => decomp.check_outer(r)?,
    }
    let mut weighted = rational::zero();
    for &i in decomp.sphere(r) {
        let k = match side {
            Side::Inner => k_minus_at(g, decomp, i),
            Side::Outer => k_plus_at(g, decomp, i)?,
        };
        weighted += k * g.measure_at(i);
    }
    Ok(weighted / decomp.sphere_volume(g, r))
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexCurvature {
    pub vertex: VertexId,
    pub radius: usize,
    pub k_minus: Rational,
    /// `None` on the outermost sphere.
    pub k_plus: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusCurvature {
    pub radius: usize,
    pub avg_k_minus: Rational,
    pub avg_k_plus: Option<Rational>,
    pub sphere_volume: Rational,
    /// `b̄(r, r+1)`, the total weight between `S_r` and `S_{r+1}`.
    pub boundary: Option<Rational>,
}

impl RadiusCurvature {
    /// `t(r) = 𝒜k_+(r) − 𝒜k_−(r)`.
    pub fn t(&self) -> Option<Rational> {
        self.avg_k_plus.as_ref().map(|p| p - &self.avg_k_minus)
    }
}

/// All inner/outer data of a rooted graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    pub vertices: Vec<VertexCurvature>,
    pub radii: Vec<RadiusCurvature>,
    /// Last radius with outer data, `None` for a single-vertex graph.
    pub valid_radius: Option<usize>,
}

impl CurvatureProfile {
    pub fn new(g: &WeightedGraph, decomp: &RootedDecomposition) -> Self {
        let mut vertices = Vec::with_capacity(g.len());
        for r in 0..=decomp.horizon() {
            for &i in decomp.sphere(r) {
                vertices.push(VertexCurvature {
                    vertex: g.label(i).clone(),
                    radius: r,
                    k_minus: k_minus_at(g, decomp, i),
                    k_plus: k_plus_at(g, decomp, i).ok(),
                });
            }
        }
        let radii = (0..=decomp.horizon())
            .map(|r| {
                let boundary = decomp.check_outer(r).ok().map(|_| {
                    decomp
                        .sphere(r)
                        .iter()
                        .flat_map(|&i| g.neighbors(i).iter())
                        .filter(|(j, _)| decomp.radius_of(*j) == r + 1)
                        .map(|(_, w)| w)
                        .sum()
                });
                RadiusCurvature {
                    radius: r,
                    avg_k_minus: average_curvature(g, decomp, r, Side::Inner).expect("radius within horizon"),
                    avg_k_plus: average_curvature(g, decomp, r, Side::Outer).ok(),
                    sphere_volume: decomp.sphere_volume(g, r),
                    boundary,
                }
            })
            .collect();
        CurvatureProfile { vertices, radii, valid_radius: decomp.outer_limit() }
    }
}
