use proptest::prelude::*;

use curvegraph::chains::{
    associated_bdc_of, bdc_as_graph, is_model, make_mirror_model, make_ollivier_matching_chain, make_unweighted_chain,
    BirthDeathChain,
};
use curvegraph::comparison::{
    chain_asymptotic_constant, chain_sc_series_partial_sums, chain_stronger_average, chain_volume_comparison,
    laplacian_distance_compare, partial_sum_equiv_check, stronger_average_growth, stronger_curvature_growth,
};
use curvegraph::curvature::{
    average_curvature, bdc_ollivier_closed_form, bdc_sphere_curvature, k_minus_at, k_plus_at, ollivier_pair,
    ollivier_pair_at, Side,
};
use curvegraph::generate::{self, rng_for};
use curvegraph::io;
use curvegraph::oracle::enumerate_ollivier;
use curvegraph::rational::{int, q, zero, Rational};
use curvegraph::spheres::{laplacian_of_distance_at, RootedDecomposition};
use curvegraph::{GraphFunction, WeightedGraph};

fn rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn signed_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn chain(min_horizon: usize, max_horizon: usize) -> impl Strategy<Value = BirthDeathChain> {
    (min_horizon..=max_horizon).prop_flat_map(|h| {
        (prop::collection::vec(rational(), h + 1), prop::collection::vec(rational(), h))
            .prop_map(|(m, b)| BirthDeathChain::new(m, b).unwrap())
    })
}

fn rooted_graph(max_vertices: usize) -> impl Strategy<Value = (WeightedGraph, String)> {
    any::<u64>().prop_map(move |seed| generate::random_rooted_graph(&mut rng_for(seed, 0), max_vertices))
}

fn functions(g: &WeightedGraph, values: &[Rational]) -> GraphFunction {
    g.labels().iter().cloned().zip(values.iter().cloned()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spheres_partition_vertices((g, root) in rooted_graph(30)) {
        let d = RootedDecomposition::new(&g, &root).unwrap();
        let count: usize = d.spheres().iter().map(Vec::len).sum();
        prop_assert_eq!(count, g.len());
        let total: Rational = (0..=d.horizon()).map(|r| d.sphere_volume(&g, r)).sum();
        prop_assert_eq!(total, g.total_measure());
        for r in 1..=d.horizon() {
            for &i in d.sphere(r) {
                prop_assert!(g.neighbors(i).iter().any(|&(j, _)| d.radius_of(j) == r - 1));
            }
        }
    }

    #[test]
    fn laplacian_of_constants_vanishes((g, _) in rooted_graph(20), c in signed_rational()) {
        let f = GraphFunction::constant(&g, c);
        for x in g.labels() {
            prop_assert_eq!(g.laplacian(&f, x.as_str()).unwrap(), zero());
        }
    }

    #[test]
    fn green_identity(
        (g, _) in rooted_graph(15),
        fs in prop::collection::vec(signed_rational(), 15),
        hs in prop::collection::vec(signed_rational(), 15),
    ) {
        let (f, h) = (functions(&g, &fs), functions(&g, &hs));
        let pair = |a: &GraphFunction, b: &GraphFunction| -> Rational {
            g.labels()
                .iter()
                .enumerate()
                .map(|(i, x)| g.measure_at(i) * a.get(x.as_str()).unwrap() * g.laplacian(b, x.as_str()).unwrap())
                .sum()
        };
        prop_assert_eq!(pair(&f, &h), pair(&h, &f));
    }

    #[test]
    fn laplacian_of_distance_is_curvature_difference((g, root) in rooted_graph(30)) {
        let d = RootedDecomposition::new(&g, &root).unwrap();
        for r in 0..d.horizon() {
            for &i in d.sphere(r) {
                let expected = k_minus_at(&g, &d, i) - k_plus_at(&g, &d, i).unwrap();
                prop_assert_eq!(laplacian_of_distance_at(&g, &d, i).unwrap(), expected);
            }
        }
    }

    #[test]
    fn distance_is_a_metric((g, _) in rooted_graph(12)) {
        let n = g.len();
        for a in 0..n {
            prop_assert_eq!(g.distance_at(a, a), 0);
            for b in 0..n {
                prop_assert_eq!(g.distance_at(a, b), g.distance_at(b, a));
                for c in 0..n {
                    prop_assert!(g.distance_at(a, c) <= g.distance_at(a, b) + g.distance_at(b, c));
                }
            }
        }
    }

    #[test]
    fn solver_matches_enumeration(seed in any::<u64>()) {
        let (g, x, y) = generate::random_adjacent_pair(&mut rng_for(seed, 0), 9);
        let lp = ollivier_pair(&g, &x, &y).unwrap();
        prop_assert_eq!(lp.check_invariants(&g), Ok(()));
        let brute = enumerate_ollivier(&g, &x, &y).unwrap();
        prop_assert_eq!(&lp.value, &brute.value);
        prop_assert_eq!(&lp.witness, &brute.witness);
    }

    #[test]
    fn distant_pairs_satisfy_invariants((g, root) in rooted_graph(16), pick in any::<prop::sample::Index>()) {
        let xi = g.index_of(&root).unwrap();
        let yi = pick.index(g.len());
        prop_assume!(xi != yi);
        let result = ollivier_pair_at(&g, xi, yi).unwrap();
        prop_assert_eq!(result.check_invariants(&g), Ok(()));
        prop_assert_eq!(result.distance, g.distance_at(xi, yi));
    }

    #[test]
    fn closed_form_matches_solver(c in chain(3, 7)) {
        let g = bdc_as_graph(&c);
        for big_r in 1..c.horizon() {
            for r in 0..big_r {
                let lp = ollivier_pair(&g, &r.to_string(), &big_r.to_string()).unwrap();
                prop_assert_eq!(lp.value, bdc_ollivier_closed_form(&c, r, big_r).unwrap());
            }
        }
    }

    #[test]
    fn curvatures_are_scale_invariant((g, root) in rooted_graph(14), factor in rational()) {
        let s = g.scaled(&factor);
        let (d, ds) = (RootedDecomposition::new(&g, &root).unwrap(), RootedDecomposition::new(&s, &root).unwrap());
        for r in 0..d.horizon() {
            prop_assert_eq!(
                average_curvature(&g, &d, r, Side::Outer).unwrap(),
                average_curvature(&s, &ds, r, Side::Outer).unwrap()
            );
            for &i in d.sphere(r) {
                prop_assert_eq!(k_minus_at(&g, &d, i), k_minus_at(&s, &ds, i));
                prop_assert_eq!(k_plus_at(&g, &d, i).unwrap(), k_plus_at(&s, &ds, i).unwrap());
            }
        }
        for (i, j, _) in g.edges().take(6) {
            prop_assert_eq!(ollivier_pair_at(&g, i, j).unwrap().value, ollivier_pair_at(&s, i, j).unwrap().value);
        }
    }

    #[test]
    fn chain_sphere_curvatures_telescope(c in chain(2, 12)) {
        let mut sum = zero();
        for big_r in 1..c.horizon() {
            sum += bdc_sphere_curvature(&c, big_r).unwrap();
            prop_assert_eq!(&sum, &(c.k_plus(0).unwrap() - c.t(big_r).unwrap()));
        }
    }

    #[test]
    fn associated_chain_keeps_volumes_and_averages((g, root) in rooted_graph(40)) {
        let d = RootedDecomposition::new(&g, &root).unwrap();
        let c = associated_bdc_of(&g, &d);
        prop_assert_eq!(c.horizon(), d.horizon());
        for r in 0..=d.horizon() {
            prop_assert_eq!(c.measure(r), &d.sphere_volume(&g, r));
            prop_assert_eq!(c.k_minus(r).unwrap(), average_curvature(&g, &d, r, Side::Inner).unwrap());
            if r < d.horizon() {
                prop_assert_eq!(c.k_plus(r).unwrap(), average_curvature(&g, &d, r, Side::Outer).unwrap());
            }
        }
    }

    #[test]
    fn chain_graph_round_trip(c in chain(1, 12)) {
        let g = bdc_as_graph(&c);
        let d = RootedDecomposition::new(&g, "0").unwrap();
        prop_assert_eq!(associated_bdc_of(&g, &d), c);
    }

    #[test]
    fn matching_chain_properties(seed in any::<u64>(), len in 2usize..12) {
        let a = generate::admissible_sequence(&mut rng_for(seed, 0), len);
        let c = make_ollivier_matching_chain(&a).unwrap();
        prop_assert!(c.measures().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(c.measures().iter().all(|m| *m >= int(1)));
        let line = make_unweighted_chain(c.horizon());
        for r in 1..c.horizon() {
            prop_assert_eq!(bdc_sphere_curvature(&c, r).unwrap(), bdc_sphere_curvature(&line, r).unwrap());
            prop_assert_eq!(c.k_minus(r).unwrap(), a[r].clone());
        }
    }

    #[test]
    fn mirror_is_model_with_chain_averages(c in chain(1, 8)) {
        let g = make_mirror_model(&c);
        prop_assert!(is_model(&g, "0").unwrap().is_model);
        let d = RootedDecomposition::new(&g, "0").unwrap();
        for r in 1..=c.horizon() {
            prop_assert_eq!(average_curvature(&g, &d, r, Side::Inner).unwrap(), c.k_minus(r).unwrap());
            prop_assert_eq!(d.sphere_volume(&g, r), c.measure(r) * int(2));
            if r < c.horizon() {
                prop_assert_eq!(average_curvature(&g, &d, r, Side::Outer).unwrap(), c.k_plus(r).unwrap());
            }
        }
    }

    #[test]
    fn stronger_average_growth_gives_faster_volume(seed in any::<u64>()) {
        let (c1, c2) = generate::stronger_chain_pair(&mut rng_for(seed, 0), 12);
        prop_assert!(chain_stronger_average(&c1, &c2).unwrap().holds);
        let report = chain_volume_comparison(&c1, &c2);
        prop_assert!(report.conclusion, "{}", report);
    }

    #[test]
    fn volume_comparison_is_never_contradicted(c1 in chain(1, 8), c2 in chain(1, 8)) {
        prop_assert!(chain_volume_comparison(&c1, &c2).consistent);
    }

    #[test]
    fn partial_sum_equivalence(seed in any::<u64>()) {
        let (model, other) = generate::matched_root_pair(&mut rng_for(seed, 0), 10);
        let report = partial_sum_equiv_check(&model, &other).unwrap();
        prop_assert!(report.consistent, "{}", report);
    }

    #[test]
    fn pointwise_growth_implies_average_growth((g, root) in rooted_graph(30), seed in any::<u64>()) {
        let d = RootedDecomposition::new(&g, &root).unwrap();
        prop_assume!(d.horizon() >= 1);
        let mut rng = rng_for(seed, 1);
        let shrink = |rng: &mut _| generate::positive_rational(rng, 4, 4).min(int(1));
        let min_plus: Vec<Rational> = (0..d.horizon())
            .map(|r| d.sphere(r).iter().map(|&i| k_plus_at(&g, &d, i).unwrap()).min().unwrap())
            .collect();
        // a dead end on S_r forces k̃_+(r) = 0, so the model stops there
        let h = min_plus.iter().position(|k| *k == zero()).unwrap_or(d.horizon());
        let k_plus: Vec<Rational> = min_plus[..h].iter().map(|k| k * shrink(&mut rng)).collect();
        let k_minus: Vec<Rational> = (1..=h)
            .map(|r| d.sphere(r).iter().map(|&i| k_minus_at(&g, &d, i)).max().unwrap() / shrink(&mut rng))
            .collect();
        let model = BirthDeathChain::from_curvatures(g.measure_at(d.root()).clone(), &k_plus, &k_minus).unwrap();
        prop_assert!(stronger_curvature_growth(&g, &root, &model).unwrap().holds);
        prop_assert!(stronger_average_growth(&g, &root, &bdc_as_graph(&model), "0").unwrap().holds);
    }

    #[test]
    fn laplacian_formulations_agree((g, root) in rooted_graph(30), c in chain(1, 8)) {
        prop_assume!(RootedDecomposition::new(&g, &root).unwrap().horizon() >= 1);
        let report = laplacian_distance_compare(&g, &root, &c).unwrap();
        prop_assert!(report.consistent, "{}", report);
    }

    #[test]
    fn asymptotic_constant_bounds_volumes(seed in any::<u64>()) {
        let (c1, c2, threshold) = generate::outside_finite_pair(&mut rng_for(seed, 0), 12);
        let (c, report) = chain_asymptotic_constant(&c1, &c2, threshold).unwrap();
        prop_assert!(c > zero());
        prop_assert!(report.conclusion, "{}", report);
    }

    #[test]
    fn full_growth_gives_unit_constant(seed in any::<u64>(), threshold in 1usize..6) {
        let (c1, c2) = generate::stronger_chain_pair(&mut rng_for(seed, 0), 8);
        prop_assert_eq!(chain_asymptotic_constant(&c1, &c2, threshold).unwrap().0, int(1));
    }

    #[test]
    fn sc_series_is_nondecreasing(c in chain(1, 12)) {
        let sums = chain_sc_series_partial_sums(&c, c.horizon() - 1).unwrap();
        prop_assert!(sums.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn canonical_form_round_trips((g, _) in rooted_graph(20), c in chain(1, 8)) {
        let text = io::graph_to_json(&g);
        prop_assert_eq!(io::parse_graph(&text).unwrap(), g);
        prop_assert_eq!(io::parse_chain(&io::chain_to_json(&c)).unwrap(), c);
    }
}
