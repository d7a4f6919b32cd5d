//! Plain-text renderings of solver and pipeline results.

use std::fmt::Write;

use kedp_core::approx::{PowerRatio, Solution};
use kedp_core::extremal::{Ordering, OrderingReport, SubsetSweep};
use kedp_core::flow::PathSet;
use kedp_core::graphcore::{EdgeSet, Instance};
use kedp_core::pipeline::PipelineReport;

fn flag(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn instance_line(inst: &Instance) -> String {
    format!(
        "instance n={} m={} k={} s={} t={}",
        inst.n(),
        inst.m(),
        inst.k(),
        inst.s(),
        inst.t()
    )
}

pub fn edge_lines(out: &mut String, inst: &Instance, f: &EdgeSet) {
    for e in f.iter() {
        let edge = inst.edge(e);
        let _ = writeln!(out, "{} {} {}", edge.u, edge.v, edge.cost);
    }
}

pub fn edge_csv(inst: &Instance, f: &EdgeSet) -> String {
    let mut out = String::from("u,v,cost\n");
    for e in f.iter() {
        let edge = inst.edge(e);
        let _ = writeln!(out, "{},{},{}", edge.u, edge.v, edge.cost);
    }
    out
}

fn path_lines(out: &mut String, paths: &PathSet) {
    let _ = writeln!(out, "paths {}", paths.value());
    for (i, p) in paths.paths().iter().enumerate() {
        let _ = writeln!(out, "path {i}: {}", join(&p.nodes));
    }
}

/// `title` is the report header, e.g. `solve`.
pub fn solution_text(title: &str, inst: &Instance, sol: &Solution) -> String {
    let mut out = format!("# kedp {title}\n{}\n", instance_line(inst));
    path_lines(&mut out, &sol.witness);
    let _ = writeln!(out, "edges {}", sol.edges.len());
    edge_lines(&mut out, inst, &sol.edges);
    let _ = writeln!(out, "cost {}", sol.cost);
    let _ = writeln!(out, "power {}", sol.power);
    let _ = writeln!(
        out,
        "guarantee 8k={} power^2={}",
        8 * inst.k(),
        sol.power * sol.power
    );
    out
}

pub fn ratio_line(k: usize, ratio: &PowerRatio, ok: bool) -> String {
    let (a, b) = ratio.reduced();
    format!(
        "oracle opt_power={} alg_power={} ratio={a}/{b} guarantee alg^2<=8k*opt^2 (k={k}) {}",
        ratio.opt_power,
        ratio.alg_power,
        flag(ok)
    )
}

fn ordering_lines(out: &mut String, ord: &Ordering, report: &OrderingReport) {
    let _ = writeln!(out, "ordering {}", join(ord.nodes()));
    let _ = writeln!(
        out,
        "prefix d_out {}",
        join(report.prefixes.iter().map(|p| p.d_out))
    );
    let _ = writeln!(
        out,
        "prefix d_in {}",
        join(report.prefixes.iter().map(|p| p.d_in))
    );
    let _ = writeln!(
        out,
        "ordering check d_in=0 d_out={} on {} prefixes {}",
        report.k,
        report.prefixes.len(),
        flag(report.passed())
    );
}

pub fn ordering_text(inst: &Instance, ord: &Ordering, report: &OrderingReport) -> String {
    let mut out = format!("# kedp order\n{}\n", instance_line(inst));
    ordering_lines(&mut out, ord, report);
    out
}

fn sweep_line(name: &str, s: &SubsetSweep) -> String {
    let mode = match s.seed {
        None => "exhaustive".to_string(),
        Some(seed) => format!("sampled seed={seed}"),
    };
    format!(
        "subsets {name} {mode} ground={} checked={} failures={} {}",
        s.ground_set,
        s.checked,
        s.failures,
        flag(s.passed())
    )
}

pub fn pipeline_text(inst: &Instance, r: &PipelineReport, oracle: Option<String>) -> String {
    let mut out = format!("# kedp verify\n{}\n", instance_line(inst));
    let sol = &r.solution;
    let _ = writeln!(
        out,
        "solution edges={} cost={} power={} power<=2cost {}",
        sol.edges.len(),
        sol.cost,
        sol.power,
        flag(r.power_twice_cost_ok)
    );
    let _ = writeln!(
        out,
        "pruned edges={} nodes={} cost={} power={} minimal {}",
        r.pruned.len(),
        r.pruned_nodes,
        r.pruned_cost,
        r.pruned_power,
        flag(r.minimal_ok)
    );
    for e in &r.structure_errors {
        let _ = writeln!(out, "structure FAIL {e}");
    }
    if let (Some(ord), Some(rep)) = (&r.ordering, &r.ordering_report) {
        ordering_lines(&mut out, ord, rep);
    }
    if let Some(l) = &r.length {
        let _ = writeln!(
            out,
            "length total={} prefix_total={} budget={} ok",
            l.total, l.prefix_total, l.budget
        );
    }
    let k2 = 2 * r.k as u128;
    let _ = writeln!(
        out,
        "power bound c^2<=2k*p^2: {}<={} {}",
        r.pruned_cost * r.pruned_cost,
        k2 * r.pruned_power * r.pruned_power,
        flag(r.power_bound_ok)
    );
    let (e, v) = (r.pruned.len() as u128, r.pruned_nodes as u128);
    let _ = writeln!(
        out,
        "density bound |E|^2<=2k*|V|^2: {}<={} {}",
        e * e,
        k2 * v * v,
        flag(r.density_bound_ok)
    );
    if let Some(s) = &r.subsets {
        let _ = writeln!(out, "{}", sweep_line("undirected", &s.undirected));
        let _ = writeln!(out, "{}", sweep_line("directed", &s.directed));
        let _ = writeln!(out, "subsets agree {}", flag(s.agree()));
    }
    let _ = writeln!(
        out,
        "induced subsequences checked={} {}",
        r.induced_checked,
        flag(r.induced_ok)
    );
    let _ = writeln!(
        out,
        "weighted inequality trials={} {}",
        r.weighted_trials,
        flag(r.weighted_ok)
    );
    let _ = writeln!(out, "leveling identity {}", flag(r.leveling_ok));
    let _ = writeln!(out, "cost<=min-sum {}", flag(r.cost_below_min_sum_ok));
    if let Some(line) = oracle {
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(
        out,
        "result {}",
        if r.all_passed() { "PASS" } else { "FAIL" }
    );
    out
}
