use kedp_core::extremal::{
    compute_ordering, length_budget, orient_minimal, verify_ordering, CutExpectation,
};
use kedp_core::flow::{max_flow_value, min_cost_k_flow};
use kedp_core::generators::{build_tight_example, TightCosts, TightParams};
use kedp_core::minimal::{deletion_flows, is_feasible, is_minimal};

fn tight(ell: usize, q: usize) -> kedp_core::generators::TightExample {
    build_tight_example(TightParams::new(ell, q).unwrap(), TightCosts::Unit).unwrap()
}

#[test]
fn max_flow_is_triangular_number() {
    for ell in 1..=5 {
        let ex = tight(ell, 2 * ell + 4);
        let inst = &ex.instance;
        assert_eq!(
            max_flow_value(inst, &inst.full_edge_set()),
            ell * (ell + 1) / 2,
            "ell={ell}"
        );
    }
    assert_eq!(
        max_flow_value(
            &tight(2, 12).instance,
            &tight(2, 12).instance.full_edge_set()
        ),
        3
    );
}

#[test]
fn small_tight_examples_are_minimal() {
    for (ell, q) in [(1, 4), (2, 4), (2, 12), (3, 6), (3, 20), (3, 72)] {
        let ex = tight(ell, q);
        let inst = &ex.instance;
        assert!(is_minimal(inst, &inst.full_edge_set()), "ell={ell} q={q}");
        let k = ex.k();
        assert!(deletion_flows(inst, &inst.full_edge_set())
            .iter()
            .all(|&(_, f)| f == k - 1));
    }
}

#[test]
fn deleting_any_edge_of_g2_breaks_feasibility() {
    let ex = tight(2, 12);
    let inst = &ex.instance;
    let full = inst.full_edge_set();
    assert!(is_feasible(inst, &full));
    for e in full.iter() {
        assert!(!is_feasible(inst, &full.without(e)), "edge {e}");
    }
}

#[test]
fn density_beats_target() {
    let ex = tight(2, 12);
    assert_eq!((ex.realized_m(), ex.realized_n()), (29, 16));
    assert!(ex.density_exceeds_target());
    let ex = tight(3, 72);
    assert_eq!((ex.realized_m(), ex.realized_n()), (228, 80));
    assert!(ex.density_exceeds_target());
}

#[test]
fn ordering_of_oriented_g2() {
    let ex = tight(2, 12);
    let inst = &ex.instance;
    let full = inst.full_edge_set();
    let paths = min_cost_k_flow(inst).unwrap();
    assert_eq!(paths.edge_union(), full);
    let dg = orient_minimal(inst, &full, &paths).unwrap();
    for v in 0..dg.n() {
        if v == dg.s() || v == dg.t() {
            continue;
        }
        let d_in = dg.edges().iter().filter(|e| e.v == v).count();
        let d_out = dg.edges().iter().filter(|e| e.u == v).count();
        assert_eq!(d_in, d_out);
        assert!(d_in >= 1);
    }
    let ord = compute_ordering(&dg).unwrap();
    let report = verify_ordering(&dg, &ord, CutExpectation::Exact);
    assert!(report.passed());
    assert!(report.prefixes.iter().all(|p| p.d_out == 3 && p.d_in == 0));
    let lp = length_budget(&ord, &dg).unwrap();
    assert!(lp.total <= 3 * (dg.n() as u128 - 1));
}

#[test]
fn decomposition_of_g3_has_six_paths() {
    let ex = tight(3, 12);
    let paths = min_cost_k_flow(&ex.instance).unwrap();
    assert_eq!(paths.value(), 6);
    paths.validate(&ex.instance).unwrap();
}
