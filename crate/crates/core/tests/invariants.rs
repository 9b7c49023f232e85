//! Property tests for the algebra and the file format.

use proptest::prelude::*;

use qroute_core::algebra::{
    cut, DimKind, Frontier, Metric, MultiCost, Rational, SemiringSpec, WeightProfile,
};
use qroute_core::graph::{parse_network, serialize_network};
use qroute_core::CostOrdering;

fn weighted2() -> SemiringSpec {
    SemiringSpec::from_kinds(&[DimKind::Weighted, DimKind::Weighted])
}

prop_compose! {
    fn arb_cost()(a in 0i64..30, b in 0i64..30) -> MultiCost {
        MultiCost::from_ints(&[a, b])
    }
}

proptest! {
    #[test]
    fn frontier_is_insertion_order_insensitive(costs in prop::collection::vec(arb_cost(), 0..12)) {
        let spec = weighted2();
        let mut forward = Frontier::new();
        for (i, c) in costs.iter().enumerate() {
            forward.insert(&spec, c.clone(), i);
        }
        let mut backward = Frontier::new();
        for (i, c) in costs.iter().enumerate().rev() {
            backward.insert(&spec, c.clone(), i);
        }
        prop_assert!(forward.same_costs(&backward));
    }

    #[test]
    fn frontier_elements_stay_pairwise_incomparable(costs in prop::collection::vec(arb_cost(), 0..12)) {
        let spec = weighted2();
        let mut f = Frontier::new();
        for c in &costs {
            f.insert(&spec, c.clone(), ());
        }
        let elems: Vec<&MultiCost> = f.costs().collect();
        for (i, a) in elems.iter().enumerate() {
            for b in &elems[i + 1..] {
                prop_assert_eq!(spec.compare(a, b), CostOrdering::Incomparable);
            }
        }
    }

    #[test]
    fn frontier_insert_matches_brute_force_filter(costs in prop::collection::vec(arb_cost(), 1..12)) {
        let spec = weighted2();
        let mut f = Frontier::new();
        for c in &costs {
            f.insert(&spec, c.clone(), ());
        }
        let mut want: Vec<MultiCost> = Vec::new();
        for c in &costs {
            let dominated = costs
                .iter()
                .any(|d| spec.compare(d, c) == CostOrdering::Better);
            if !dominated && !want.contains(c) {
                want.push(c.clone());
            }
        }
        want.sort_by(|a, b| a.value_cmp(b));
        let got: Vec<MultiCost> = f.costs().cloned().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn frontier_combine_matches_all_pairs_product(
        xs in prop::collection::vec(arb_cost(), 1..6),
        ys in prop::collection::vec(arb_cost(), 1..6),
    ) {
        let spec = weighted2();
        let mut fx = Frontier::new();
        for c in &xs { fx.insert(&spec, c.clone(), ()); }
        let mut fy = Frontier::new();
        for c in &ys { fy.insert(&spec, c.clone(), ()); }
        let combined = Frontier::combine(&spec, &fx, &fy);

        let mut products: Vec<MultiCost> = Vec::new();
        for a in fx.costs() {
            for b in fy.costs() {
                products.push(spec.combine(a, b));
            }
        }
        let mut want: Vec<MultiCost> = Vec::new();
        for c in &products {
            let dominated = products
                .iter()
                .any(|d| spec.compare(d, c) == CostOrdering::Better);
            if !dominated && !want.contains(c) {
                want.push(c.clone());
            }
        }
        want.sort_by(|a, b| a.value_cmp(b));
        let got: Vec<MultiCost> = combined.costs().cloned().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn parallel_composition_is_permutation_invariant(
        costs in prop::collection::vec(arb_cost(), 1..8),
        swap in any::<u64>(),
    ) {
        let spec = SemiringSpec::from_kinds(&[DimKind::Bandwidth, DimKind::Weighted]);
        let costs: Vec<MultiCost> = costs
            .iter()
            .map(|c| MultiCost::new(vec![*c.get(0), *c.get(1)]))
            .collect();
        let mut shuffled = costs.clone();
        let n = shuffled.len();
        for i in 0..n {
            let j = ((swap.rotate_left(i as u32)) % n as u64) as usize;
            shuffled.swap(i, j);
        }
        prop_assert_eq!(
            spec.compose_parallel(&costs).unwrap(),
            spec.compose_parallel(&shuffled).unwrap()
        );
    }

    #[test]
    fn scalar_order_totally_orders_distinct_scalars(a in arb_cost(), b in arb_cost()) {
        let spec = weighted2().ordered_weighted(WeightProfile::uniform(2)).unwrap();
        let sa = spec.scalarize(&a);
        let sb = spec.scalarize(&b);
        let cmp = spec.compare(&a, &b);
        if sa.num_cmp(&sb) != std::cmp::Ordering::Equal {
            prop_assert_ne!(cmp, CostOrdering::Incomparable);
            prop_assert_ne!(cmp, CostOrdering::Equal);
        }
    }

    #[test]
    fn cut_is_a_shrinking_idempotent_superset_of_the_best(
        costs in prop::collection::vec(arb_cost(), 1..10),
        k1 in 1i64..4, k2 in 1i64..4,
    ) {
        let spec = weighted2();
        let mut f = Frontier::new();
        for c in &costs { f.insert(&spec, c.clone(), ()); }
        let profile = WeightProfile::new(
            vec![Rational::from_integer(k1), Rational::from_integer(k2)],
            vec![Rational::from_integer(0), Rational::from_integer(0)],
        ).unwrap();
        let once = cut(&spec, &f, &profile, 5).unwrap();
        let twice = cut(&spec, &once, &profile, 5).unwrap();

        // cut(f) is a subset of f and idempotent.
        for c in once.costs() {
            prop_assert!(f.costs().any(|x| x == c));
        }
        prop_assert!(twice.same_costs(&once));

        // Every scalar-optimal tuple survives the cut.
        let ordered = spec.ordered_weighted(profile.clone()).unwrap();
        let scal = |c: &MultiCost| -> Metric { ordered.scalarize(c) };
        let best = f
            .costs()
            .map(&scal)
            .min_by(|x, y| x.num_cmp(y))
            .unwrap();
        for c in f.costs() {
            if scal(c).num_cmp(&best) == std::cmp::Ordering::Equal {
                prop_assert!(once.costs().any(|x| x == c), "scalar-best {c} was cut");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_networks_round_trip(seed in 0u64..500, nodes in 2usize..14) {
        let dims = vec![
            qroute_core::DimSpec::new("bw", DimKind::Bandwidth),
            qroute_core::DimSpec::new("money", DimKind::Weighted),
        ];
        let edges = nodes.saturating_sub(1).max(1);
        let p = qroute_core::netgen::GenParams::new(
            nodes,
            qroute_core::netgen::EdgeTarget::Total(edges),
            seed,
            dims,
        );
        let net = qroute_core::netgen::generate(&p).unwrap();
        let text = serialize_network(&net);
        let again = parse_network(&text).unwrap();
        prop_assert_eq!(&net, &again);
        prop_assert_eq!(serialize_network(&again), text);
    }
}

#[test]
fn fixture_files_round_trip_byte_identically() {
    for (name, text) in qroute_core::fixtures::ALL {
        let net = parse_network(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let canonical = serialize_network(&net);
        let reparsed = parse_network(&canonical).unwrap();
        assert_eq!(&net, &reparsed, "{name}");
        assert_eq!(serialize_network(&reparsed), canonical, "{name}");
    }
}
