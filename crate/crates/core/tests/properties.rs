use kedp_core::flow::max_flow_value;
use kedp_core::generators::{random_instance, EdgeModel};
use kedp_core::graphcore::{
    activated_edges, assignment_from_edges, parse_instance, power_cost, serialize_instance,
    total_cost, EdgeSet, Instance,
};
use kedp_core::minimal::{is_feasible, is_minimal, prune_to_minimal};
use proptest::prelude::*;

fn instance_strategy() -> impl Strategy<Value = Instance> {
    (
        any::<u64>(),
        2usize..10,
        0.0f64..=1.0,
        0u64..1000,
        1usize..4,
    )
        .prop_map(|(seed, n, p, hi, k)| {
            random_instance(seed, n, EdgeModel::Probability(p), (0, hi), k).unwrap()
        })
}

fn with_subset() -> impl Strategy<Value = (Instance, EdgeSet)> {
    instance_strategy().prop_flat_map(|inst| {
        let m = inst.m();
        (Just(inst), proptest::collection::vec(any::<bool>(), m)).prop_map(|(inst, picks)| {
            let f =
                EdgeSet::from_indices(picks.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
            (inst, f)
        })
    })
}

proptest! {
    #[test]
    fn power_at_most_twice_cost((inst, f) in with_subset()) {
        prop_assert!(power_cost(&inst, &f) <= 2 * total_cost(&inst, &f));
    }

    #[test]
    fn assignment_view_agrees((inst, f) in with_subset()) {
        let a = assignment_from_edges(&inst, &f);
        prop_assert_eq!(a.total(), power_cost(&inst, &f));
        prop_assert!(f.is_subset(&activated_edges(&inst, &a)));
    }

    #[test]
    fn cost_and_power_are_monotone((inst, f) in with_subset(), drop in any::<prop::sample::Index>()) {
        prop_assume!(!f.is_empty());
        let e = f.indices()[drop.index(f.len())];
        let g = f.without(e);
        prop_assert!(power_cost(&inst, &g) <= power_cost(&inst, &f));
        prop_assert!(total_cost(&inst, &g) <= total_cost(&inst, &f));
    }

    #[test]
    fn text_round_trip(inst in instance_strategy()) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn pruning_is_idempotent_and_minimal(inst in instance_strategy()) {
        let full = inst.full_edge_set();
        prop_assume!(is_feasible(&inst, &full));
        let once = prune_to_minimal(&inst, &full).unwrap();
        prop_assert!(once.is_subset(&full));
        prop_assert!(is_minimal(&inst, &once));
        prop_assert_eq!(prune_to_minimal(&inst, &once).unwrap(), once.clone());
        for e in once.iter() {
            prop_assert_eq!(max_flow_value(&inst, &once.without(e)), inst.k() - 1);
        }
    }
}
