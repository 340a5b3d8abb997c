//! Seeded random instances for property checks.
//!
//! Every generator takes the RNG explicitly; with a fixed seed the output is
//! reproducible across runs and platforms.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chains::BirthDeathChain;
use crate::graph::{EdgeRecord, VertexId, VertexRecord, WeightedGraph};
use crate::rational::{q, Rational};
use crate::spheres::RootedDecomposition;

/// RNG for stream `stream` of `seed`. Distinct streams are independent.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Positive rational `p/q` with `1 ≤ p ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn positive_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    q(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// Rational in `[1, 3]`.
fn at_least_one<R: Rng>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.3) {
        return q(1, 1);
    }
    let den = rng.gen_range(1..=4);
    q(rng.gen_range(den..=3 * den), den)
}

/// Rational in `(0, 1]`.
fn at_most_one<R: Rng>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.3) {
        return q(1, 1);
    }
    let den = rng.gen_range(1..=4);
    q(rng.gen_range(1..=den), den)
}

/// Connected graph on `1..=max_vertices` vertices labelled `0..n`.
///
/// A random recursive tree guarantees connectivity; extra edges are then
/// added between random pairs.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> WeightedGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    random_graph_with(rng, n, n)
}

fn random_graph_with<R: Rng>(rng: &mut R, n: usize, max_extra: usize) -> WeightedGraph {
    let vertices =
        (0..n).map(|i| VertexRecord { id: VertexId::from(i as i64), measure: positive_rational(rng, 6, 3) }).collect();
    let mut pairs = BTreeSet::new();
    for i in 1..n {
        pairs.insert((rng.gen_range(0..i), i));
    }
    if n > 2 {
        for _ in 0..rng.gen_range(0..=max_extra) {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    let edges = pairs
        .into_iter()
        .map(|(a, b)| EdgeRecord {
            u: VertexId::from(a as i64),
            v: VertexId::from(b as i64),
            weight: positive_rational(rng, 6, 4),
        })
        .collect();
    WeightedGraph::from_records(vertices, edges).expect("generated graph is valid")
}

/// Random graph with a random root.
pub fn random_rooted_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> (WeightedGraph, String) {
    let g = random_graph(rng, max_vertices);
    let root = g.labels().choose(rng).expect("nonempty").to_string();
    (g, root)
}

/// Random rooted graph whose root has eccentricity at least `min_horizon`.
pub fn random_deep_graph<R: Rng>(rng: &mut R, max_vertices: usize, min_horizon: usize) -> (WeightedGraph, String) {
    loop {
        let (g, root) = random_rooted_graph(rng, max_vertices);
        if RootedDecomposition::new(&g, &root).expect("root exists").horizon() >= min_horizon {
            return (g, root);
        }
    }
}

/// Adjacent pair `(x, y)` in a random graph of at most `max_support`
/// vertices, so the curvature support is at most that large too.
pub fn random_adjacent_pair<R: Rng>(rng: &mut R, max_support: usize) -> (WeightedGraph, String, String) {
    let n = rng.gen_range(2..=max_support.max(2));
    let g = random_graph_with(rng, n, 2 * n);
    let edges: Vec<(usize, usize)> = g.edges().map(|(i, j, _)| (i, j)).collect();
    let &(i, j) = edges.choose(rng).expect("connected graph with two vertices has an edge");
    let (x, y) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
    (g.clone(), g.label(x).to_string(), g.label(y).to_string())
}

/// Chain with horizon in `min_horizon..=max_horizon`.
pub fn random_chain<R: Rng>(rng: &mut R, min_horizon: usize, max_horizon: usize) -> BirthDeathChain {
    let h = rng.gen_range(min_horizon.max(1)..=max_horizon.max(min_horizon.max(1)));
    let measures = (0..=h).map(|_| positive_rational(rng, 6, 3)).collect();
    let weights = (0..h).map(|_| positive_rational(rng, 6, 4)).collect();
    BirthDeathChain::new(measures, weights).expect("generated chain is valid")
}

/// `(c1, c2)` with `c1` of stronger average curvature growth than `c2`.
///
/// `c2` is random; `c1` starts from the same root measure and scales the
/// curvatures of `c2` by factors `≥ 1` on the outer side and `≤ 1` on the
/// inner side.
pub fn stronger_chain_pair<R: Rng>(rng: &mut R, max_horizon: usize) -> (BirthDeathChain, BirthDeathChain) {
    let c2 = random_chain(rng, 1, max_horizon);
    let h = c2.horizon();
    let k_plus: Vec<Rational> = (0..h).map(|r| c2.k_plus(r).unwrap() * at_least_one(rng)).collect();
    let k_minus: Vec<Rational> = (1..=h).map(|r| c2.k_minus(r).unwrap() * at_most_one(rng)).collect();
    let c1 = BirthDeathChain::from_curvatures(c2.measure(0).clone(), &k_plus, &k_minus).expect("positive curvatures");
    (c1, c2)
}

/// `(c1, c2, R)` with the growth inequalities enforced only for `r ≥ R`.
/// Below `R` the curvatures of `c1` and its root measure are arbitrary.
pub fn outside_finite_pair<R: Rng>(rng: &mut R, max_horizon: usize) -> (BirthDeathChain, BirthDeathChain, usize) {
    let c2 = random_chain(rng, 1, max_horizon);
    let h = c2.horizon();
    let threshold = rng.gen_range(1..=h);
    let k_plus: Vec<Rational> = (0..h)
        .map(|r| if r < threshold { positive_rational(rng, 6, 4) } else { c2.k_plus(r).unwrap() * at_least_one(rng) })
        .collect();
    let k_minus: Vec<Rational> = (1..=h)
        .map(|r| if r < threshold { positive_rational(rng, 6, 4) } else { c2.k_minus(r).unwrap() * at_most_one(rng) })
        .collect();
    let c1 = BirthDeathChain::from_curvatures(positive_rational(rng, 6, 3), &k_plus, &k_minus)
        .expect("positive curvatures");
    (c1, c2, threshold)
}

/// Two random chains of horizon at least 2 sharing `k_+(0)`.
pub fn matched_root_pair<R: Rng>(rng: &mut R, max_horizon: usize) -> (BirthDeathChain, BirthDeathChain) {
    let model = random_chain(rng, 2, max_horizon);
    let other = if rng.gen_bool(0.5) {
        random_chain(rng, 2, max_horizon)
    } else {
        // small perturbation of the model, so both outcomes of the partial-sum test occur
        let k_plus: Vec<Rational> = (0..model.horizon())
            .map(|r| model.k_plus(r).unwrap() * if r == 0 { q(1, 1) } else { near_one(rng) })
            .collect();
        let k_minus: Vec<Rational> = (1..=model.horizon()).map(|r| model.k_minus(r).unwrap() * near_one(rng)).collect();
        BirthDeathChain::from_curvatures(model.measure(0).clone(), &k_plus, &k_minus).expect("positive curvatures")
    };
    let k0 = model.k_plus(0).unwrap();
    let mut weights = other.weights().to_vec();
    weights[0] = k0 * other.measure(0);
    let other = BirthDeathChain::new(other.measures().to_vec(), weights).expect("positive weights");
    (model, other)
}

fn near_one<R: Rng>(rng: &mut R) -> Rational {
    q(rng.gen_range(3..=5), 4)
}

/// Nonincreasing positive sequence of length `len ≥ 1` starting at 1.
pub fn admissible_sequence<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    let mut a = vec![q(1, 1)];
    while a.len() < len.max(1) {
        let next = a.last().unwrap() * at_most_one(rng);
        a.push(next);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comparison::{chain_stronger_average, chain_stronger_outside};

    #[test]
    fn deterministic_streams() {
        let a = random_graph(&mut rng_for(7, 3), 40);
        let b = random_graph(&mut rng_for(7, 3), 40);
        assert_eq!(a, b);
    }

    #[test]
    fn pairs_satisfy_their_hypotheses() {
        let mut rng = rng_for(1, 0);
        for _ in 0..50 {
            let (c1, c2) = stronger_chain_pair(&mut rng, 8);
            assert!(chain_stronger_average(&c1, &c2).unwrap().holds);
            let (c1, c2, r) = outside_finite_pair(&mut rng, 8);
            assert!(chain_stronger_outside(&c1, &c2, r).unwrap().holds);
            let (m, o) = matched_root_pair(&mut rng, 8);
            assert_eq!(m.k_plus(0).unwrap(), o.k_plus(0).unwrap());
        }
    }

    #[test]
    fn adjacent_pairs_are_adjacent() {
        let mut rng = rng_for(2, 0);
        for _ in 0..30 {
            let (g, x, y) = random_adjacent_pair(&mut rng, 10);
            assert!(g.len() <= 10);
            assert_eq!(g.distance(&x, &y).unwrap(), 1);
        }
    }

    #[test]
    fn sequences_are_admissible() {
        let mut rng = rng_for(3, 0);
        let a = admissible_sequence(&mut rng, 8);
        assert_eq!(a[0], q(1, 1));
        assert!(a.windows(2).all(|w| w[1] <= w[0] && w[1] > q(0, 1)));
    }
}
