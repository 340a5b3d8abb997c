//! Spheres `S_r` around a root and the Laplacian of the distance function.

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::{self, Rational};

/// Breadth-first partition of a graph into spheres around a root.
///
/// The outermost sphere `S_horizon` is where a finite graph stops. Anything
/// that looks one sphere further out (`k_+`, `S_{r+1}`) is only defined for
/// `r <= horizon - 1`; see [`RootedDecomposition::outer_limit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedDecomposition {
    root: usize,
    dist: Vec<usize>,
    spheres: Vec<Vec<usize>>,
}

impl RootedDecomposition {
    pub fn new(g: &WeightedGraph, root: &str) -> Result<Self> {
        Ok(Self::at(g, g.index_of(root)?))
    }

    pub fn at(g: &WeightedGraph, root: usize) -> Self {
        let dist = g.distances_from(root);
        let horizon = dist.iter().copied().max().unwrap_or(0);
        let mut spheres = vec![Vec::new(); horizon + 1];
        for (v, &d) in dist.iter().enumerate() {
            spheres[d].push(v);
        }
        RootedDecomposition { root, dist, spheres }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Eccentricity of the root.
    pub fn horizon(&self) -> usize {
        self.spheres.len() - 1
    }

    /// Last radius at which outer quantities are meaningful, if any.
    pub fn outer_limit(&self) -> Option<usize> {
        self.horizon().checked_sub(1)
    }

    pub fn check_outer(&self, r: usize) -> Result<()> {
        match self.outer_limit() {
            Some(limit) if r <= limit => Ok(()),
            limit => Err(Error::HorizonExceeded { radius: r, limit }),
        }
    }

    pub fn check_radius(&self, r: usize) -> Result<()> {
        if r <= self.horizon() {
            Ok(())
        } else {
            Err(Error::HorizonExceeded { radius: r, limit: Some(self.horizon()) })
        }
    }

    pub fn radius_of(&self, i: usize) -> usize {
        self.dist[i]
    }

    pub fn distances(&self) -> &[usize] {
        &self.dist
    }

    /// Vertex indices of `S_r`, in vertex order. Empty beyond the horizon.
    pub fn sphere(&self, r: usize) -> &[usize] {
        self.spheres.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn spheres(&self) -> &[Vec<usize>] {
        &self.spheres
    }

    pub fn sphere_labels(&self, g: &WeightedGraph, r: usize) -> Vec<VertexId> {
        self.sphere(r).iter().map(|&i| g.label(i).clone()).collect()
    }

    /// `m(S_r)`.
    pub fn sphere_volume(&self, g: &WeightedGraph, r: usize) -> Rational {
        self.sphere(r).iter().map(|&i| g.measure_at(i)).sum()
    }

    /// `m(B_r) = m(S_0) + … + m(S_r)`.
    pub fn ball_volume(&self, g: &WeightedGraph, r: usize) -> Rational {
        (0..=r.min(self.horizon())).map(|s| self.sphere_volume(g, s)).sum()
    }
}

/// `Δd(x_0, ·)(x)`, which equals `k_−(x) − k_+(x)`.
///
/// Not available on the outermost sphere, where the truncation hides the
/// outward edges.
pub fn laplacian_of_distance(g: &WeightedGraph, decomp: &RootedDecomposition, x: &str) -> Result<Rational> {
    let i = g.index_of(x)?;
    laplacian_of_distance_at(g, decomp, i)
}

pub fn laplacian_of_distance_at(g: &WeightedGraph, decomp: &RootedDecomposition, i: usize) -> Result<Rational> {
    decomp.check_outer(decomp.radius_of(i))?;
    let values: Vec<Rational> = decomp.distances().iter().map(|&d| rational::int(d as i64)).collect();
    g.laplacian_with(i, |k| values.get(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::make_figure1;
    use crate::rational::int;

    #[test]
    fn figure1_spheres_around_w() {
        let g = make_figure1();
        let d = RootedDecomposition::new(&g, "w").unwrap();
        let names = |r| d.sphere_labels(&g, r).iter().map(|v| v.to_string()).collect::<Vec<_>>();
        assert_eq!(d.horizon(), 3);
        assert_eq!(names(0), ["w"]);
        assert_eq!(names(1), ["x", "x'"]);
        assert_eq!(names(2), ["y", "y'"]);
        assert_eq!(names(3), ["z", "z'"]);
        assert_eq!(g.distance("x", "w").unwrap(), 1);
        assert_eq!(g.distance("x", "x'").unwrap(), 2);
        assert_eq!(g.distance("w", "z").unwrap(), 3);
    }

    #[test]
    fn single_vertex_has_one_sphere() {
        let g = WeightedGraph::builder().vertex("a", int(1)).build().unwrap();
        let d = RootedDecomposition::new(&g, "a").unwrap();
        assert_eq!(d.horizon(), 0);
        assert_eq!(d.outer_limit(), None);
        assert!(matches!(
            laplacian_of_distance(&g, &d, "a"),
            Err(Error::HorizonExceeded { radius: 0, limit: None })
        ));
    }

    #[test]
    fn laplacian_of_distance_on_figure1() {
        let g = make_figure1();
        let d = RootedDecomposition::new(&g, "w").unwrap();
        assert_eq!(laplacian_of_distance(&g, &d, "y").unwrap(), int(0));
        assert_eq!(laplacian_of_distance(&g, &d, "w").unwrap(), int(-2));
        assert!(matches!(laplacian_of_distance(&g, &d, "z"), Err(Error::HorizonExceeded { .. })));
    }

    #[test]
    fn volumes_add_up() {
        let g = make_figure1();
        let d = RootedDecomposition::new(&g, "w").unwrap();
        let vols: Vec<_> = (0..=3).map(|r| d.sphere_volume(&g, r)).collect();
        assert_eq!(vols, [int(1), int(2), int(4), int(4)]);
        assert_eq!(d.ball_volume(&g, 3), g.total_measure());
    }
}
