use onlinecover::allocation::AllocationFunction;
use onlinecover::engine::{
    check_invariants, parse_trace_csv, run_stream, run_stream_with, water_level, write_trace_csv,
    Algorithm, NeighborPotential, RunOptions,
};
use onlinecover::instance::{
    gen_random, parse_instance, reduce_ski_rental, serialize_instance, ski_rental_offline_optimum,
    InstanceStream, RandomMode, SkiRentalSpec, VertexEvent,
};
use onlinecover::oracle::{
    brute_force_half_integral, final_optimum, fractional_optima_general, max_matching_bipartite,
    StaticGraph,
};
use proptest::prelude::*;

fn mode() -> impl Strategy<Value = RandomMode> {
    prop_oneof![
        Just(RandomMode::General),
        Just(RandomMode::BipartiteOneSided),
        Just(RandomMode::BipartiteAlternating),
    ]
}

fn reweight(stream: &InstanceStream, weights: &[f64]) -> InstanceStream {
    let events = stream
        .events
        .iter()
        .zip(weights.iter().cycle())
        .map(|(e, &w)| VertexEvent::new(e.id, w, e.side, e.neighbors.clone()))
        .collect();
    InstanceStream::new(events, stream.offline_count, "reweighted").unwrap()
}

fn weighted_stream() -> impl Strategy<Value = InstanceStream> {
    (1usize..40, 0.0..1.0f64, any::<u64>(), mode(), prop::collection::vec(0.0..5.0f64, 1..8))
        .prop_map(|(n, p, seed, m, w)| reweight(&gen_random(n, p, seed, m).unwrap(), &w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instance_text_round_trips(stream in weighted_stream()) {
        let text = serialize_instance(&stream);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back.len(), stream.len());
        for (a, b) in back.events.iter().zip(&stream.events) {
            prop_assert_eq!(a.weight.to_bits(), b.weight.to_bits());
            prop_assert_eq!(&a.neighbors, &b.neighbors);
            prop_assert_eq!(a.side, b.side);
        }
    }

    #[test]
    fn potentials_only_rise_and_cover_every_edge(
        stream in weighted_stream(),
        k in 1.0..2.5f64,
        pd in any::<bool>(),
    ) {
        let f = AllocationFunction::closed_form(k).unwrap();
        let algo = if pd { Algorithm::PrimalDual } else { Algorithm::WaterFill };
        let options = RunOptions { record_history: true, ..RunOptions::default() };
        let trace = run_stream_with(&stream, algo, Some(&f), options).unwrap();
        prop_assert!(trace.history.as_ref().unwrap().is_monotone());
        for e in &stream.events {
            for &u in &e.neighbors {
                let (yu, yv) = (trace.cover.y[u], trace.cover.y[e.id]);
                // zero-weight endpoints may leave an edge to the other side
                if stream.events[u].weight > 0.0 && e.weight > 0.0 {
                    prop_assert!(yu + yv >= 1.0 - 1e-9, "edge ({}, {}) {} + {}", u, e.id, yu, yv);
                }
            }
        }
        prop_assert!(trace.cover.y.iter().all(|&y| (0.0..=1.0).contains(&y)));
    }

    #[test]
    fn primal_dual_invariants_hold_at_the_end(stream in weighted_stream()) {
        let f = AllocationFunction::optimal().unwrap();
        let trace = run_stream(&stream, Algorithm::PrimalDual, Some(&f), 1e-10, false).unwrap();
        let report = check_invariants(&trace.cover, &trace.matching, &f, trace.beta.unwrap(), &stream);
        prop_assert!(report.inv1_slack < 1e-8, "{:?}", report);
        prop_assert!(report.inv2_slack < 1e-8, "{:?}", report);
        prop_assert!(report.primal_slack < 1e-9, "{:?}", report);
    }

    #[test]
    fn water_level_is_maximal(
        pots in prop::collection::vec((0.0..1.0f64, 0.0..3.0f64), 1..12),
        w in 0.01..3.0f64,
        k in 1.0..2.0f64,
    ) {
        let f = AllocationFunction::closed_form(k).unwrap();
        let nbrs: Vec<NeighborPotential> = pots
            .iter()
            .enumerate()
            .map(|(i, &(p, wt))| NeighborPotential { vertex: i, potential: p, weight: wt })
            .collect();
        let out = water_level(&nbrs, w, &f, 1e-10).unwrap();
        let h = |t: f64| -> f64 {
            nbrs.iter().map(|n| n.weight * (t - n.potential).max(0.0)).sum::<f64>() - w * f.value(t)
        };
        prop_assert!(h(out.level) <= 1e-9);
        if out.level < 1.0 {
            prop_assert!(h((out.level + 1e-7).min(1.0)) > 0.0);
        }
    }

    #[test]
    fn double_cover_matches_brute_force(
        n in 1usize..9,
        p in 0.0..1.0f64,
        seed in any::<u64>(),
        w in prop::collection::vec(0u8..4, 1..9),
    ) {
        // half-integer weights keep every optimum exactly representable
        let weights: Vec<f64> = w.iter().map(|&x| f64::from(x) / 2.0).collect();
        let s = reweight(&gen_random(n, p, seed, RandomMode::General).unwrap(), &weights);
        let g = StaticGraph::from_stream(&s);
        let frac = fractional_optima_general(&g);
        let brute = brute_force_half_integral(&g).unwrap();
        prop_assert!((frac.min_cover_value - brute).abs() < 1e-9);
        prop_assert!((frac.max_matching_value - brute).abs() < 1e-9);
        prop_assert!(frac.cover_witness.iter().all(|&y| y == 0.0 || y == 0.5 || y == 1.0));
    }

    #[test]
    fn oracle_values_survive_relabeling(
        n in 2usize..30,
        p in 0.0..0.6f64,
        seed in any::<u64>(),
        rot in 0usize..30,
    ) {
        let g = StaticGraph::from_stream(&gen_random(n, p, seed, RandomMode::General).unwrap());
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).rev().collect();
        let a = fractional_optima_general(&g);
        let b = fractional_optima_general(&g.relabeled(&perm));
        prop_assert_eq!(a.max_matching_value, b.max_matching_value);
        prop_assert!(a.max_matching_value <= a.min_cover_value + 1e-9);
    }

    #[test]
    fn bipartite_fractional_equals_integral(
        n in 2usize..40,
        p in 0.0..0.5f64,
        seed in any::<u64>(),
        alternating in any::<bool>(),
    ) {
        let m = if alternating { RandomMode::BipartiteAlternating } else { RandomMode::BipartiteOneSided };
        let g = StaticGraph::from_stream(&gen_random(n, p, seed, m).unwrap());
        let integral = max_matching_bipartite(&g).unwrap();
        let frac = fractional_optima_general(&g);
        prop_assert_eq!(integral.max_matching_value, integral.min_cover_value);
        prop_assert_eq!(integral.max_matching_value, frac.max_matching_value);
    }

    #[test]
    fn ski_reduction_optimum(
        steps in prop::collection::vec((1u8..20, 0u8..4), 1..4),
        start_rate in 4u8..12,
        eps in 1u8..3,
        q in 1u8..8,
    ) {
        let mut states = vec![(0.0, f64::from(start_rate))];
        for (db, dr) in steps {
            let (b, r) = *states.last().unwrap();
            states.push((b + f64::from(db), (r - f64::from(dr)).max(0.0)));
        }
        let spec = SkiRentalSpec {
            states,
            epsilon: f64::from(eps),
            t_end: f64::from(eps) * f64::from(q),
        };
        let reduced = reduce_ski_rental(&spec).unwrap();
        prop_assert!(reduced.is_labeled_bipartite());
        prop_assert_eq!(reduced.len(), spec.states.len() * (1 + usize::from(q)));
        let closed = spec
            .states
            .iter()
            .map(|&(b, r)| b + r * spec.epsilon * f64::from(q))
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(final_optimum(&reduced), closed);
        prop_assert_eq!(ski_rental_offline_optimum(&spec).unwrap(), closed);
    }

    #[test]
    fn trace_csv_round_trips(stream in weighted_stream()) {
        let f = AllocationFunction::linear_alpha();
        let trace = run_stream(&stream, Algorithm::WaterFill, Some(&f), 1e-10, true).unwrap();
        let summary = vec![("cover_cost".to_string(), "1".to_string())];
        let text = write_trace_csv(&trace.rows, &summary);
        let parsed = parse_trace_csv(&text).unwrap();
        prop_assert_eq!(parsed.rows.len(), trace.rows.len());
        for (a, b) in parsed.rows.iter().zip(&trace.rows) {
            prop_assert_eq!(a.level.to_bits(), b.level.to_bits());
            prop_assert_eq!(a.cover_cost.to_bits(), b.cover_cost.to_bits());
            prop_assert_eq!(a.matching_value.to_bits(), b.matching_value.to_bits());
        }
        prop_assert_eq!(parsed.summary, summary);
    }
}
