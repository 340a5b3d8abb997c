//! Exact solver for linear programs over difference constraints.
//!
//! Solves
//!
//! ```text
//! minimize   Σ_u c_u p_u
//! subject to p_v − p_u ≤ w     for every arc (u, v, w)
//!            p_anchor = 0
//! ```
//!
//! with integer `w` and rational `c` summing to zero. The dual is an
//! uncapacitated min-cost flow in which `c_u > 0` is supply at `u`; it is
//! solved by successive shortest paths with rational flow values. Optimal
//! potentials are then exactly the solutions of the difference system
//! tightened by complementary slackness (arcs carrying flow become
//! equalities), and the pointwise smallest of those is read off as minus the
//! shortest distance to the anchor. All arc lengths are integers, so the
//! returned potential is integral.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone)]
enum Cap {
    Infinite,
    Finite(Rational),
}

type Pred = Option<(usize, usize)>;

impl Cap {
    fn usable(&self) -> bool {
        match self {
            Cap::Infinite => true,
            Cap::Finite(c) => c.is_positive(),
        }
    }
}

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cost: i64,
    cap: Cap,
    rev: usize,
}

struct Residual {
    adj: Vec<Vec<Edge>>,
}

impl Residual {
    fn add(&mut self, u: usize, v: usize, cost: i64, cap: Cap) -> (usize, usize) {
        let fwd = self.adj[u].len();
        debug_assert_ne!(u, v);
        let back = self.adj[v].len();
        self.adj[u].push(Edge { to: v, cost, cap, rev: back });
        self.adj[v].push(Edge { to: u, cost: -cost, cap: Cap::Finite(Rational::zero()), rev: fwd });
        (u, fwd)
    }

    /// Bellman-Ford over usable residual edges. Deterministic: edges are
    /// scanned in insertion order and only strict improvements are taken.
    fn shortest_from(&self, s: usize) -> (Vec<Option<i64>>, Vec<Pred>) {
        let n = self.adj.len();
        let mut dist: Vec<Option<i64>> = vec![None; n];
        let mut pred = vec![None; n];
        dist[s] = Some(0);
        for round in 0..=n {
            let mut changed = false;
            for u in 0..n {
                let Some(du) = dist[u] else { continue };
                for (k, e) in self.adj[u].iter().enumerate() {
                    if !e.cap.usable() {
                        continue;
                    }
                    let nd = du + e.cost;
                    if dist[e.to].is_none_or(|d| nd < d) {
                        dist[e.to] = Some(nd);
                        pred[e.to] = Some((u, k));
                        changed = true;
                    }
                }
            }
            if !changed {
                return (dist, pred);
            }
            assert!(round < n, "negative cycle in residual network");
        }
        unreachable!()
    }
}

/// Pointwise-minimal optimal potential. See the module docs for the problem.
pub(crate) fn solve(n: usize, arcs: &[(usize, usize, i64)], coeffs: &[Rational], anchor: usize) -> Vec<i64> {
    assert_eq!(coeffs.len(), n);
    debug_assert!(coeffs.iter().sum::<Rational>().is_zero(), "objective must be shift invariant");

    let (s, t) = (n, n + 1);
    let mut net = Residual { adj: vec![Vec::new(); n + 2] };
    let arc_edges: Vec<(usize, usize)> =
        arcs.iter().map(|&(u, v, w)| net.add(u, v, w, Cap::Infinite)).collect();
    let mut source_edges = Vec::new();
    for (u, c) in coeffs.iter().enumerate() {
        if c.is_positive() {
            source_edges.push(net.add(s, u, 0, Cap::Finite(c.clone())));
        } else if c.is_negative() {
            net.add(u, t, 0, Cap::Finite(-c));
        }
    }

    loop {
        let (dist, pred) = net.shortest_from(s);
        if dist[t].is_none() {
            break;
        }
        let mut path = Vec::new();
        let mut v = t;
        while v != s {
            let (u, k) = pred[v].expect("path to sink");
            path.push((u, k));
            v = u;
        }
        let bottleneck = path
            .iter()
            .filter_map(|&(u, k)| match &net.adj[u][k].cap {
                Cap::Finite(c) => Some(c.clone()),
                Cap::Infinite => None,
            })
            .min()
            .expect("source edges are finite");
        for &(u, k) in &path {
            let (to, rev) = (net.adj[u][k].to, net.adj[u][k].rev);
            if let Cap::Finite(c) = &mut net.adj[u][k].cap {
                *c -= &bottleneck;
            }
            if let Cap::Finite(c) = &mut net.adj[to][rev].cap {
                *c += &bottleneck;
            }
        }
    }
    debug_assert!(source_edges
        .iter()
        .all(|&(u, k)| matches!(&net.adj[u][k].cap, Cap::Finite(c) if c.is_zero())));

    // Constraint graph of the optimal face: p_v ≤ p_u + w always, and
    // p_u ≤ p_v − w where the arc carries flow.
    let mut tight: Vec<(usize, usize, i64)> = arcs.to_vec();
    for (&(u, v, w), &(eu, ek)) in arcs.iter().zip(&arc_edges) {
        let e = &net.adj[eu][ek];
        if let Cap::Finite(flow) = &net.adj[e.to][e.rev].cap {
            if flow.is_positive() {
                tight.push((v, u, -w));
            }
        }
    }

    // Shortest distance from every node to the anchor; p_u = −dist(u → anchor).
    let mut to_anchor: Vec<Option<i64>> = vec![None; n];
    to_anchor[anchor] = Some(0);
    for round in 0..=n {
        let mut changed = false;
        for &(u, v, w) in &tight {
            if let Some(dv) = to_anchor[v] {
                let nd = w + dv;
                if to_anchor[u].is_none_or(|d| nd < d) {
                    to_anchor[u] = Some(nd);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        assert!(round < n, "optimal face is empty");
    }
    to_anchor.into_iter().map(|d| -d.expect("every node reaches the anchor")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn all_pairs(dist: &[Vec<i64>]) -> Vec<(usize, usize, i64)> {
        let n = dist.len();
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    arcs.push((u, v, dist[u][v]));
                }
            }
        }
        arcs
    }

    #[test]
    fn two_points_push_apart() {
        // minimize p_0 − p_1 with |p_0 − p_1| ≤ 1 → p_1 = 1.
        let arcs = all_pairs(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(solve(2, &arcs, &[int(1), int(-1)], 0), [0, 1]);
    }

    #[test]
    fn zero_objective_gives_minimal_feasible_point() {
        let d = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
        let arcs = all_pairs(&d);
        assert_eq!(solve(3, &arcs, &[int(0), int(0), int(0)], 1), [-1, 0, -1]);
    }

    #[test]
    fn ties_resolve_to_pointwise_minimum() {
        // Triangle with unit sides, minimize p_0 − p_2: p_2 = p_0 + 1 and
        // p_1 may sit anywhere in [p_0, p_0 + 1].
        let d = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        let arcs = all_pairs(&d);
        assert_eq!(solve(3, &arcs, &[int(1), int(0), int(-1)], 0), [0, 0, 1]);
        assert_eq!(solve(3, &arcs, &[int(1), int(0), int(-1)], 2), [-1, -1, 0]);
        assert_eq!(solve(3, &arcs, &[q(1, 3), q(-1, 3), int(0)], 0), [0, 1, 0]);
    }
}
