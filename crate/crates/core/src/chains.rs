//! Birth-death chains and the reduction of a rooted graph to one.
//!
//! A birth-death chain lives on `{0, …, R}` with edges only between
//! consecutive integers. Aggregating a rooted graph sphere by sphere,
//! `m̄(r) = m(S_r)` and `b̄(r, r+1) = Σ_{x ∈ S_r, y ∈ S_{r+1}} b(x, y)`, gives
//! its associated chain: same sphere volumes, and inner/outer curvatures
//! equal to the sphere averages of the graph's.

use num_traits::Signed;

use crate::curvature::{average_curvature, k_minus_at, k_plus_at, Side};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::rational::{self, Rational};
use crate::spheres::RootedDecomposition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirthDeathChain {
    measures: Vec<Rational>,
    weights: Vec<Rational>,
}

impl BirthDeathChain {
    /// `measures` is `m̄(0..=R)`, `weights` is `b̄(r, r+1)` for `r < R`.
    pub fn new(measures: Vec<Rational>, weights: Vec<Rational>) -> Result<Self> {
        if measures.is_empty() {
            return Err(Error::InvalidChain("no measures".into()));
        }
        if weights.len() + 1 != measures.len() {
            return Err(Error::InvalidChain(format!(
                "{} measures need {} weights, got {}",
                measures.len(),
                measures.len() - 1,
                weights.len()
            )));
        }
        if let Some(r) = measures.iter().position(|m| !m.is_positive()) {
            return Err(Error::InvalidChain(format!("measure at {r} is not positive")));
        }
        if let Some(r) = weights.iter().position(|b| !b.is_positive()) {
            return Err(Error::InvalidChain(format!("weight between {r} and {} is not positive", r + 1)));
        }
        Ok(BirthDeathChain { measures, weights })
    }

    /// Chain with `m̄(0) = m0`, outer curvatures `k_plus[r]` for `r < R` and
    /// inner curvatures `k_minus[r − 1]` at `r = 1..=R`:
    /// `b̄(r, r+1) = k_+(r) m̄(r)` and `m̄(r+1) = b̄(r, r+1) / k_−(r+1)`.
    pub fn from_curvatures(m0: Rational, k_plus: &[Rational], k_minus: &[Rational]) -> Result<Self> {
        if k_plus.len() != k_minus.len() {
            return Err(Error::InvalidChain("curvature sequences differ in length".into()));
        }
        if let Some(r) = k_minus.iter().position(|k| !k.is_positive()) {
            return Err(Error::InvalidChain(format!("inner curvature at {} is not positive", r + 1)));
        }
        let mut measures = vec![m0];
        let mut weights = Vec::with_capacity(k_plus.len());
        for (kp, km) in k_plus.iter().zip(k_minus) {
            let b = kp * measures.last().unwrap();
            measures.push(&b / km);
            weights.push(b);
        }
        Self::new(measures, weights)
    }

    pub fn horizon(&self) -> usize {
        self.measures.len() - 1
    }

    pub fn measures(&self) -> &[Rational] {
        &self.measures
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `m̄(r)`.
    pub fn measure(&self, r: usize) -> &Rational {
        &self.measures[r]
    }

    /// `b̄(r, r+1)`.
    pub fn weight(&self, r: usize) -> &Rational {
        &self.weights[r]
    }

    pub fn check_outer(&self, r: usize) -> Result<()> {
        if r < self.horizon() {
            Ok(())
        } else {
            Err(Error::HorizonExceeded { radius: r, limit: self.horizon().checked_sub(1) })
        }
    }

    pub fn check_radius(&self, r: usize) -> Result<()> {
        if r <= self.horizon() {
            Ok(())
        } else {
            Err(Error::HorizonExceeded { radius: r, limit: Some(self.horizon()) })
        }
    }

    pub fn k_plus(&self, r: usize) -> Result<Rational> {
        self.check_outer(r)?;
        Ok(&self.weights[r] / &self.measures[r])
    }

    pub fn k_minus(&self, r: usize) -> Result<Rational> {
        self.check_radius(r)?;
        Ok(match r {
            0 => rational::zero(),
            _ => &self.weights[r - 1] / &self.measures[r],
        })
    }

    /// `t(r) = k_+(r) − k_−(r)`.
    pub fn t(&self, r: usize) -> Result<Rational> {
        Ok(self.k_plus(r)? - self.k_minus(r)?)
    }

    /// `m̄(0) + … + m̄(r)`.
    pub fn ball_volume(&self, r: usize) -> Rational {
        self.measures[..=r.min(self.horizon())].iter().sum()
    }

    pub fn truncated(&self, horizon: usize) -> BirthDeathChain {
        let h = horizon.min(self.horizon());
        BirthDeathChain { measures: self.measures[..=h].to_vec(), weights: self.weights[..h].to_vec() }
    }

    pub fn scaled(&self, factor: &Rational) -> BirthDeathChain {
        assert!(factor.is_positive(), "scale factor must be positive");
        BirthDeathChain {
            measures: self.measures.iter().map(|m| m * factor).collect(),
            weights: self.weights.iter().map(|b| b * factor).collect(),
        }
    }
}

/// The chain `(m̄, b̄)` of a rooted graph.
pub fn associated_bdc(g: &WeightedGraph, root: &str) -> Result<BirthDeathChain> {
    Ok(associated_bdc_of(g, &RootedDecomposition::new(g, root)?))
}

pub fn associated_bdc_of(g: &WeightedGraph, decomp: &RootedDecomposition) -> BirthDeathChain {
    let horizon = decomp.horizon();
    let measures = (0..=horizon).map(|r| decomp.sphere_volume(g, r)).collect();
    let mut weights = vec![rational::zero(); horizon];
    for (i, j, b) in g.edges() {
        let (ri, rj) = (decomp.radius_of(i), decomp.radius_of(j));
        if ri.abs_diff(rj) == 1 {
            weights[ri.min(rj)] += b;
        }
    }
    BirthDeathChain::new(measures, weights).expect("spheres of a connected graph are linked")
}

/// Embeds a chain as the path graph `0 ∼ 1 ∼ … ∼ R`.
pub fn bdc_as_graph(chain: &BirthDeathChain) -> WeightedGraph {
    let mut b = WeightedGraph::builder();
    for (r, m) in chain.measures().iter().enumerate() {
        b = b.vertex(r as i64, m.clone());
    }
    for (r, w) in chain.weights().iter().enumerate() {
        b = b.edge(r as i64, r as i64 + 1, w.clone());
    }
    b.build().expect("a valid chain is a valid graph")
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelFailure {
    pub radius: usize,
    pub side: Side,
    pub first: VertexId,
    pub first_value: Rational,
    pub second: VertexId,
    pub second_value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelVerdict {
    pub is_model: bool,
    pub failures: Vec<ModelFailure>,
}

/// Checks that `k_−` and `k_+` are constant on every sphere around `root`.
///
/// `k_+` is only checked up to the last sphere that has an outer neighbour.
/// Each failing (radius, side) is reported once, with the first vertex of the
/// sphere and the first vertex that disagrees with it.
pub fn is_model(g: &WeightedGraph, root: &str) -> Result<ModelVerdict> {
    Ok(is_model_of(g, &RootedDecomposition::new(g, root)?))
}

pub fn is_model_of(g: &WeightedGraph, decomp: &RootedDecomposition) -> ModelVerdict {
    let mut failures = Vec::new();
    for r in 0..=decomp.horizon() {
        let sphere = decomp.sphere(r);
        for side in [Side::Inner, Side::Outer] {
            if side == Side::Outer && decomp.check_outer(r).is_err() {
                continue;
            }
            let value = |i: usize| match side {
                Side::Inner => k_minus_at(g, decomp, i),
                Side::Outer => k_plus_at(g, decomp, i).expect("checked radius"),
            };
            let first = sphere[0];
            let first_value = value(first);
            if let Some((second, second_value)) =
                sphere[1..].iter().map(|&i| (i, value(i))).find(|(_, v)| *v != first_value)
            {
                failures.push(ModelFailure {
                    radius: r,
                    side,
                    first: g.label(first).clone(),
                    first_value,
                    second: g.label(second).clone(),
                    second_value,
                });
            }
        }
    }
    ModelVerdict { is_model: failures.is_empty(), failures }
}

/// Both sides of `m(S_{r+1}) 𝒜k_−(r+1) = m(S_r) 𝒜k_+(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeStep {
    pub r: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl VolumeStep {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn chain_volume_step(chain: &BirthDeathChain, r: usize) -> Result<VolumeStep> {
    chain.check_outer(r)?;
    Ok(VolumeStep {
        r,
        lhs: chain.measure(r + 1) * chain.k_minus(r + 1)?,
        rhs: chain.measure(r) * chain.k_plus(r)?,
    })
}

/// Graph version, with both averages taken from per-vertex curvatures.
pub fn graph_volume_step(g: &WeightedGraph, decomp: &RootedDecomposition, r: usize) -> Result<VolumeStep> {
    decomp.check_outer(r)?;
    Ok(VolumeStep {
        r,
        lhs: decomp.sphere_volume(g, r + 1) * average_curvature(g, decomp, r + 1, Side::Inner)?,
        rhs: decomp.sphere_volume(g, r) * average_curvature(g, decomp, r, Side::Outer)?,
    })
}

/// `m ≡ 1`, `b ≡ 1` on `{0, …, n}`.
pub fn make_unweighted_chain(n: usize) -> BirthDeathChain {
    BirthDeathChain::new(vec![rational::one(); n + 1], vec![rational::one(); n]).unwrap()
}

/// `m′(r) = r + 1`, `b′(r, r+1) = (r + 1)^−2` on `{0, …, n}`.
pub fn make_example_gprime(n: usize) -> BirthDeathChain {
    let measures = (0..=n as i64).map(|r| rational::int(r + 1)).collect();
    let weights = (0..n as i64).map(|r| rational::q(1, (r + 1) * (r + 1))).collect();
    BirthDeathChain::new(measures, weights).unwrap()
}

/// Two copies of a chain glued at the root, on `{−R, …, R}`.
///
/// `m̃(x) = m̄(|x|)` and `b̃(x, y) = b̄(r, r+1)` when `|x| = r`, `|y| = r + 1`
/// and `|x − y| = 1`. Vertex labels are the signed integers; the root is `"0"`.
pub fn make_mirror_model(chain: &BirthDeathChain) -> WeightedGraph {
    let big_r = chain.horizon() as i64;
    let mut b = WeightedGraph::builder();
    for x in -big_r..=big_r {
        b = b.vertex(x, chain.measure(x.unsigned_abs() as usize).clone());
    }
    for r in 0..big_r {
        let w = chain.weight(r as usize);
        b = b.edge(r, r + 1, w.clone());
        b = b.edge(-r, -r - 1, w.clone());
    }
    b.build().unwrap()
}

/// A chain whose sphere curvatures agree with the unweighted chain's while
/// its volume grows at least as fast.
///
/// `a` must start at 1, be positive and nonincreasing. The chain has
/// `m′(0) = 1`, `k′_+(0) = 1` and `k′_+(r) = k′_−(r) = a_r` for `r ≥ 1`, and
/// horizon `a.len() − 1`.
pub fn make_ollivier_matching_chain(a: &[Rational]) -> Result<BirthDeathChain> {
    if let Some(index) = a.iter().position(|x| !x.is_positive()) {
        return Err(Error::NonPositiveEntry { index });
    }
    if a.first() != Some(&rational::one()) {
        return Err(Error::SequenceStart);
    }
    if let Some(index) = (1..a.len()).find(|&i| a[i] > a[i - 1]) {
        return Err(Error::SequenceNotNonincreasing { index });
    }
    let big_r = a.len() - 1;
    BirthDeathChain::from_curvatures(rational::one(), &a[..big_r], &a[1..])
}

/// The seven-vertex model graph that is not spherically symmetric.
///
/// ```text
///        1     2     3
///    w ── x' ── y' ── z'          m(y') = m(z') = 3, all other m = 1
///    │         /
///  1 │     1 /
///    x ──────┘
///    │ 1
///    y ── z
///       1
/// ```
pub fn make_figure1() -> WeightedGraph {
    let one = rational::one;
    WeightedGraph::builder()
        .vertex("w", one())
        .vertex("x", one())
        .vertex("x'", one())
        .vertex("y", one())
        .vertex("y'", rational::int(3))
        .vertex("z", one())
        .vertex("z'", rational::int(3))
        .edge("w", "x'", one())
        .edge("w", "x", one())
        .edge("x'", "y'", rational::int(2))
        .edge("x", "y", one())
        .edge("y", "z", one())
        .edge("y'", "z'", rational::int(3))
        .edge("x", "y'", one())
        .build()
        .unwrap()
}
