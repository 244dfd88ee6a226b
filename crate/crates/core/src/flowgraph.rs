//! Information flow graphs for rack-based storage systems: construction for
//! arbitrary failure/repair sequences and data-collector choices, exact
//! min-cut via max-flow on integer-scaled capacities, the adversarial
//! sequence that meets the capacity bound, and a certification harness.

use crate::error::{Error, Result};
use crate::params::CodeParams;
use crate::rat::Rat;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(Rat),
    Infinite,
}

/// A capacitated DAG with a single source S and sink T.
#[derive(Debug, Clone)]
pub struct FlowGraph {
    labels: Vec<String>,
    edges: Vec<(usize, usize, Capacity)>,
    source: usize,
    sink: usize,
}

/// One failure round: the node (rack, slot) that fails and the d helper
/// racks its replacement contacts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureEvent {
    pub rack: usize,
    pub slot: usize,
    pub helpers: Vec<usize>,
}

/// A failure sequence plus the data collector's choice of k nodes
/// (identified by (rack, slot), current version).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub failures: Vec<FailureEvent>,
    pub collector: Vec<(usize, usize)>,
}

impl Scenario {
    /// Check the scenario against the graph-construction rules: helpers are
    /// d distinct racks excluding the host, the collector has exactly k
    /// distinct nodes, and a selected relayer brings its whole rack.
    pub fn validate(&self, p: &CodeParams) -> Result<()> {
        let nr = p.nodes_per_rack();
        for ev in &self.failures {
            if ev.rack >= p.r() || ev.slot >= nr {
                return Err(Error::InvalidScenario(format!(
                    "failed node ({}, {}) out of range",
                    ev.rack, ev.slot
                )));
            }
            let set: BTreeSet<usize> = ev.helpers.iter().copied().collect();
            if set.len() != p.d() || ev.helpers.len() != p.d() {
                return Err(Error::InvalidScenario(format!(
                    "need {} distinct helper racks, got {:?}",
                    p.d(),
                    ev.helpers
                )));
            }
            if set.contains(&ev.rack) {
                return Err(Error::InvalidScenario(format!(
                    "helper set {:?} touches host rack {}",
                    ev.helpers, ev.rack
                )));
            }
            if set.iter().any(|&h| h >= p.r()) {
                return Err(Error::InvalidScenario("helper rack out of range".into()));
            }
        }
        let chosen: BTreeSet<(usize, usize)> = self.collector.iter().copied().collect();
        if chosen.len() != p.k() || self.collector.len() != p.k() {
            return Err(Error::InvalidScenario(format!(
                "collector must pick exactly k = {} distinct nodes",
                p.k()
            )));
        }
        for &(rack, slot) in &chosen {
            if rack >= p.r() || slot >= nr {
                return Err(Error::InvalidScenario("collector node out of range".into()));
            }
            if slot == 0 {
                for s in 1..nr {
                    if !chosen.contains(&(rack, s)) {
                        return Err(Error::InvalidScenario(format!(
                            "collector takes the relayer of rack {rack} but not slot {s}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build the information flow graph of a validated scenario.
pub fn build_graph(p: &CodeParams, alpha: &Rat, beta: &Rat, s: &Scenario) -> Result<FlowGraph> {
    s.validate(p)?;
    Ok(build_graph_unchecked(p, alpha, beta, s))
}

/// Graph construction without scenario validation. Used by tests that probe
/// collector choices outside the relayer convention.
pub fn build_graph_unchecked(p: &CodeParams, alpha: &Rat, beta: &Rat, s: &Scenario) -> FlowGraph {
    let nr = p.nodes_per_rack();
    let mut labels = Vec::new();
    let mut edges: Vec<(usize, usize, Capacity)> = Vec::new();
    let add_vertex = |labels: &mut Vec<String>, name: String| -> usize {
        labels.push(name);
        labels.len() - 1
    };

    let source = add_vertex(&mut labels, "S".into());
    let sink = add_vertex(&mut labels, "T".into());

    // current (in, out) vertex pair of every node, plus epoch counters
    let mut cur: Vec<Vec<(usize, usize)>> = Vec::with_capacity(p.r());
    let mut epoch = vec![0usize; p.r()];
    for h in 0..p.r() {
        let mut rack = Vec::with_capacity(nr);
        for i in 0..nr {
            let vin = add_vertex(&mut labels, format!("In_{}_{}", h + 1, i + 1));
            let vout = add_vertex(&mut labels, format!("Out_{}_{}", h + 1, i + 1));
            edges.push((source, vin, Capacity::Infinite));
            edges.push((vin, vout, Capacity::Finite(*alpha)));
            rack.push((vin, vout));
        }
        cur.push(rack);
    }
    // relayer aggregation: every other node's out-vertex feeds Out_{h,1}
    for h in 0..p.r() {
        for i in 1..nr {
            edges.push((cur[h][i].1, cur[h][0].1, Capacity::Infinite));
        }
    }

    for ev in &s.failures {
        let h = ev.rack;
        epoch[h] += 1;
        let e = epoch[h];
        let old: Vec<(usize, usize)> = cur[h].clone();
        let mut fresh = Vec::with_capacity(nr);
        for i in 0..nr {
            let vin = add_vertex(&mut labels, format!("In'{}_{}_{}", e, h + 1, i + 1));
            let vout = add_vertex(&mut labels, format!("Out'{}_{}_{}", e, h + 1, i + 1));
            fresh.push((vin, vout));
        }
        for i in 0..nr {
            if i == ev.slot {
                // the new node: host-rack access plus d helper downloads
                for (j, node) in old.iter().enumerate() {
                    if j != ev.slot {
                        edges.push((node.1, fresh[i].0, Capacity::Infinite));
                    }
                }
                for &hr in &ev.helpers {
                    edges.push((cur[hr][0].1, fresh[i].0, Capacity::Finite(*beta)));
                }
                edges.push((fresh[i].0, fresh[i].1, Capacity::Finite(*alpha)));
            } else {
                // surviving node: content carried over unchanged
                edges.push((old[i].1, fresh[i].0, Capacity::Infinite));
                edges.push((fresh[i].0, fresh[i].1, Capacity::Infinite));
            }
        }
        for i in 1..nr {
            edges.push((fresh[i].1, fresh[0].1, Capacity::Infinite));
        }
        cur[h] = fresh;
    }

    for &(rack, slot) in &s.collector {
        edges.push((cur[rack][slot].1, sink, Capacity::Infinite));
    }

    FlowGraph {
        labels,
        edges,
        source,
        sink,
    }
}

impl FlowGraph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Smallest capacity of an (S, T)-cut, computed as a max-flow after
    /// clearing all finite capacities to a common denominator. The infinite
    /// sentinel becomes (sum of finite capacities) + 1, which can never sit
    /// in a minimum cut.
    pub fn min_cut(&self) -> Rat {
        let mut denom_lcm: i64 = 1;
        for (_, _, c) in &self.edges {
            if let Capacity::Finite(v) = c {
                denom_lcm = denom_lcm.lcm(v.denom());
            }
        }
        let scale = |v: &Rat| -> i128 {
            (v.numer() * (denom_lcm / v.denom())) as i128
        };
        let finite_sum: i128 = self
            .edges
            .iter()
            .filter_map(|(_, _, c)| match c {
                Capacity::Finite(v) => Some(scale(v)),
                Capacity::Infinite => None,
            })
            .sum();
        let inf = finite_sum + 1;
        let mut dinic = Dinic::new(self.labels.len());
        for &(u, v, c) in &self.edges {
            let cap = match c {
                Capacity::Finite(ref v) => scale(v),
                Capacity::Infinite => inf,
            };
            dinic.add_edge(u, v, cap);
        }
        let flow = dinic.max_flow(self.source, self.sink);
        Rat::new(flow as i64, denom_lcm)
    }

    /// Textual DAG dump (Graphviz digraph) for external inspection.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph flowgraph {\n  rankdir=LR;\n");
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  v{} [label=\"{}\"];\n", i, l));
        }
        for (u, v, c) in &self.edges {
            let lab = match c {
                Capacity::Finite(x) => crate::rat::exact_str(x),
                Capacity::Infinite => "inf".into(),
            };
            out.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", u, v, lab));
        }
        out.push_str("}\n");
        out
    }
}

struct DinicEdge {
    to: usize,
    cap: i128,
    rev: usize,
}

struct Dinic {
    graph: Vec<Vec<DinicEdge>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            graph: (0..n).map(|_| Vec::new()).collect(),
            level: vec![-1; n],
            iter: vec![0; n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i128) {
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(DinicEdge { to, cap, rev: rev_from });
        self.graph[to].push(DinicEdge { to: from, cap: 0, rev: rev_to });
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        let mut queue = std::collections::VecDeque::new();
        self.level[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for e in &self.graph[u] {
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, t: usize, f: i128) -> i128 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.graph[u].len() {
            let i = self.iter[u];
            let (to, cap, rev) = {
                let e = &self.graph[u][i];
                (e.to, e.cap, e.rev)
            };
            if cap > 0 && self.level[u] < self.level[to] {
                let d = self.dfs(to, t, f.min(cap));
                if d > 0 {
                    self.graph[u][i].cap -= d;
                    self.graph[to][rev].cap += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut flow = 0i128;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return flow;
            }
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, i128::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }
}

/// The capacity-meeting scenario: the first m relayers fail in order, each
/// replacement contacts the first d other relayers, and the collector takes
/// the first m racks whole plus k - m*n/r non-relayer nodes of rack m + 1.
pub fn adversarial_scenario(p: &CodeParams) -> Scenario {
    let nr = p.nodes_per_rack();
    let m = p.m();
    let mut failures = Vec::new();
    for l in 0..m {
        let helpers: Vec<usize> = (0..p.r()).filter(|&h| h != l).take(p.d()).collect();
        failures.push(FailureEvent {
            rack: l,
            slot: 0,
            helpers,
        });
    }
    let mut collector = Vec::new();
    for h in 0..m {
        for s in 0..nr {
            collector.push((h, s));
        }
    }
    let rest = p.k() - m * nr;
    for s in 0..rest {
        collector.push((m, s + 1));
    }
    Scenario { failures, collector }
}

pub fn adversarial_graph(p: &CodeParams, alpha: &Rat, beta: &Rat) -> FlowGraph {
    build_graph_unchecked(p, alpha, beta, &adversarial_scenario(p))
}

/// Every collector choice of k current nodes that honors the relayer
/// convention. Per rack the options are "whole rack" or any non-relayer
/// subset.
pub fn enumerate_collectors(p: &CodeParams) -> Vec<Vec<(usize, usize)>> {
    let nr = p.nodes_per_rack();
    let mut out = Vec::new();
    let mut acc: Vec<(usize, usize)> = Vec::new();
    fn recurse(
        p: &CodeParams,
        nr: usize,
        rack: usize,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if acc.len() > p.k() {
            return;
        }
        if rack == p.r() {
            if acc.len() == p.k() {
                out.push(acc.clone());
            }
            return;
        }
        // whole rack
        for s in 0..nr {
            acc.push((rack, s));
        }
        recurse(p, nr, rack + 1, acc, out);
        acc.truncate(acc.len() - nr);
        // non-relayer subsets, by bitmask over slots 1..nr
        for mask in 0..(1u32 << (nr - 1)) {
            let picked: Vec<usize> = (1..nr).filter(|&s| mask >> (s - 1) & 1 == 1).collect();
            if picked.len() == nr - 1 && nr >= 1 {
                // taking all non-relayers but not the relayer is allowed
            }
            let before = acc.len();
            for &s in &picked {
                acc.push((rack, s));
            }
            recurse(p, nr, rack + 1, acc, out);
            acc.truncate(before);
        }
        // note: "whole rack" duplicates no bitmask case because every
        // bitmask case omits the relayer
    }
    recurse(p, nr, 0, &mut acc, &mut out);
    out
}

/// All d-subsets of racks excluding `host`.
fn helper_sets(p: &CodeParams, host: usize) -> Vec<Vec<usize>> {
    let racks: Vec<usize> = (0..p.r()).filter(|&h| h != host).collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..p.d()).collect();
    if p.d() > racks.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| racks[i]).collect());
        // next combination
        let mut i = p.d();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + racks.len() - p.d() {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..p.d() {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub bound: Rat,
    pub adversarial_cut: Rat,
    pub adversarial_ok: bool,
    pub scenarios_checked: usize,
    pub exhaustive: bool,
    pub min_scenario_cut: Option<Rat>,
    pub violations: Vec<String>,
}

impl CertifyReport {
    pub fn certified(&self) -> bool {
        self.adversarial_ok && self.violations.is_empty()
    }
}

/// Certify the capacity bound on one parameter set: the adversarial graph
/// must cut exactly at the bound, and no single-failure scenario may cut
/// below it. Scenarios are enumerated exhaustively when their count fits the
/// budget, otherwise sampled with the seeded generator.
pub fn certify_bound(
    p: &CodeParams,
    alpha: &Rat,
    beta: &Rat,
    budget: usize,
    seed: u64,
) -> CertifyReport {
    let bound = p.capacity(alpha, beta);
    let adversarial_cut = adversarial_graph(p, alpha, beta).min_cut();
    let adversarial_ok = adversarial_cut == bound;
    let mut violations = Vec::new();
    if !adversarial_ok {
        violations.push(format!(
            "adversarial min-cut {} != bound {}",
            crate::rat::exact_str(&adversarial_cut),
            crate::rat::exact_str(&bound)
        ));
    }

    let collectors = enumerate_collectors(p);
    let nr = p.nodes_per_rack();
    let all_failures: Vec<FailureEvent> = (0..p.r())
        .flat_map(|rack| {
            let sets = helper_sets(p, rack);
            (0..nr).flat_map(move |slot| {
                sets.clone().into_iter().map(move |helpers| FailureEvent {
                    rack,
                    slot,
                    helpers,
                })
            })
        })
        .collect();

    let total = all_failures.len() * collectors.len();
    let mut checked = 0usize;
    let mut min_cut_seen: Option<Rat> = None;
    let mut check = |scenario: Scenario, violations: &mut Vec<String>| {
        let cut = build_graph_unchecked(p, alpha, beta, &scenario).min_cut();
        if min_cut_seen.map_or(true, |m| cut < m) {
            min_cut_seen = Some(cut);
        }
        if cut < bound {
            violations.push(format!(
                "scenario {:?} cuts at {} < bound {}",
                scenario,
                crate::rat::exact_str(&cut),
                crate::rat::exact_str(&bound)
            ));
        }
    };

    let exhaustive = total <= budget;
    if exhaustive {
        for ev in &all_failures {
            for coll in &collectors {
                check(
                    Scenario {
                        failures: vec![ev.clone()],
                        collector: coll.clone(),
                    },
                    &mut violations,
                );
                checked += 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let ev = all_failures[rng.gen_range(0..all_failures.len())].clone();
            let coll = collectors
                .choose(&mut rng)
                .expect("at least one collector")
                .clone();
            check(
                Scenario {
                    failures: vec![ev],
                    collector: coll,
                },
                &mut violations,
            );
            checked += 1;
        }
    }

    CertifyReport {
        bound,
        adversarial_cut,
        adversarial_ok,
        scenarios_checked: checked,
        exhaustive,
        min_scenario_cut: min_cut_seen,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn params(n: usize, k: usize, r: usize, d: usize) -> CodeParams {
        CodeParams::new(n, k, r, Some(d)).unwrap()
    }

    #[test]
    fn fig2_structure() {
        // (9,5,3,2): one relayer failure, collector = rack 1 + 2 nodes of rack 2
        let p = params(9, 5, 3, 2);
        let s = adversarial_scenario(&p);
        assert_eq!(s.failures.len(), 1);
        assert_eq!(s.failures[0], FailureEvent { rack: 0, slot: 0, helpers: vec![1, 2] });
        assert_eq!(
            s.collector,
            vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)]
        );
        let g = adversarial_graph(&p, &int(1), &int(1));
        // S, T, 9 In/Out pairs, 3 primed pairs
        assert_eq!(g.vertex_count(), 2 + 18 + 6);
        // 9 source + 9 storage + 6 aggregation + 2 carry-in + 2 carry-through
        // + 2 host-access + 2 helper + 1 new storage + 2 new aggregation + 5 collector
        assert_eq!(g.edge_count(), 40);
    }

    #[test]
    fn mincut_golden_values() {
        let p = params(9, 5, 3, 2);
        // consistent with the capacity formula: 5*1 + min(2-1, 0) = 5
        assert_eq!(adversarial_graph(&p, &int(1), &int(1)).min_cut(), int(5));
        // 5(1/5) + min(2/10 - 1/5, 0) = 1
        assert_eq!(
            adversarial_graph(&p, &rat(1, 5), &rat(1, 10)).min_cut(),
            int(1)
        );
        let p = params(12, 8, 4, 3);
        assert_eq!(adversarial_graph(&p, &int(2), &int(1)).min_cut(), int(16));
    }

    #[test]
    fn no_failure_mincut_is_k_alpha() {
        let p = params(9, 5, 3, 2);
        let s = Scenario {
            failures: vec![],
            collector: vec![(0, 1), (0, 2), (1, 1), (1, 2), (2, 1)],
        };
        let g = build_graph(&p, &int(1), &int(1), &s).unwrap();
        assert_eq!(g.min_cut(), int(5));
    }

    #[test]
    fn single_failure_collector_avoiding_new_node() {
        let p = params(9, 5, 3, 2);
        let s = Scenario {
            failures: vec![FailureEvent { rack: 2, slot: 1, helpers: vec![0, 1] }],
            collector: vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2)],
        };
        let g = build_graph(&p, &int(1), &int(1), &s).unwrap();
        assert_eq!(g.min_cut(), int(5));
    }

    #[test]
    fn m_zero_needs_no_failures() {
        let p = params(9, 2, 3, 2);
        assert_eq!(p.m(), 0);
        let s = adversarial_scenario(&p);
        assert!(s.failures.is_empty());
        let g = adversarial_graph(&p, &int(1), &int(1));
        assert_eq!(g.min_cut(), int(2));
    }

    #[test]
    fn scenario_validation() {
        let p = params(9, 5, 3, 2);
        let bad_helpers = Scenario {
            failures: vec![FailureEvent { rack: 0, slot: 0, helpers: vec![0, 1] }],
            collector: adversarial_scenario(&p).collector,
        };
        assert!(matches!(
            build_graph(&p, &int(1), &int(1), &bad_helpers),
            Err(Error::InvalidScenario(_))
        ));
        let bad_collector = Scenario {
            failures: vec![],
            // includes relayer (0,0) without the rest of rack 0
            collector: vec![(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)],
        };
        assert!(bad_collector.validate(&p).is_err());
    }

    #[test]
    fn infinite_sentinel_insensitive() {
        // replacing Infinite by any value >= finite-sum + 1 leaves the cut
        // unchanged; min_cut already uses finite-sum + 1, so compare with a
        // much larger sentinel
        let p = params(9, 5, 3, 2);
        let g = adversarial_graph(&p, &int(1), &int(1));
        let mut dinic = Dinic::new(g.vertex_count());
        for &(u, v, c) in &g.edges {
            let cap = match c {
                Capacity::Finite(x) => *x.numer() as i128,
                Capacity::Infinite => 1_000_000_007,
            };
            dinic.add_edge(u, v, cap);
        }
        assert_eq!(dinic.max_flow(g.source, g.sink), 5);
    }

    #[test]
    fn collector_enumeration_counts() {
        let p = params(9, 5, 3, 2);
        assert_eq!(enumerate_collectors(&p).len(), 24);
        let p = params(6, 3, 3, 2);
        assert_eq!(enumerate_collectors(&p).len(), 7);
    }

    #[test]
    fn certify_small_exhaustive() {
        let p = params(6, 3, 3, 2);
        let report = certify_bound(&p, &int(1), &int(1), 10_000, 1);
        assert!(report.exhaustive);
        assert!(report.certified(), "{:?}", report.violations);
        assert_eq!(report.bound, int(3));
        assert_eq!(report.min_scenario_cut, Some(int(3)));
    }

    #[test]
    fn certify_sampled() {
        let p = params(12, 8, 4, 3);
        let report = certify_bound(&p, &int(2), &int(1), 60, 7);
        assert!(!report.exhaustive);
        assert!(report.certified(), "{:?}", report.violations);
        assert_eq!(report.bound, int(16));
    }

    #[test]
    fn relayer_convention_lemma() {
        // among k-subsets containing a given relayer, taking the whole rack
        // cuts no deeper than any choice that leaves part of it out
        let p = params(9, 5, 3, 2);
        let s = adversarial_scenario(&p);
        let all: Vec<(usize, usize)> = (0..3).flat_map(|h| (0..3).map(move |s| (h, s))).collect();
        let mut honoring = Vec::new();
        let mut violating = Vec::new();
        for mask in 0u32..(1 << 9) {
            if mask.count_ones() != 5 {
                continue;
            }
            let coll: Vec<(usize, usize)> =
                (0..9).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
            if !coll.contains(&(0, 0)) {
                continue;
            }
            let whole = (0..3).all(|slot| coll.contains(&(0, slot)));
            let scenario = Scenario { failures: s.failures.clone(), collector: coll };
            let cut = build_graph_unchecked(&p, &int(1), &int(1), &scenario).min_cut();
            if whole {
                honoring.push(cut);
            } else {
                violating.push(cut);
            }
        }
        let best_honoring = honoring.iter().min().unwrap();
        for v in &violating {
            assert!(best_honoring <= v);
        }
    }

    #[test]
    fn dot_dump_mentions_all_vertices() {
        let p = params(6, 3, 3, 2);
        let g = adversarial_graph(&p, &int(1), &int(1));
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("label=\"S\""));
        assert!(dot.contains("label=\"T\""));
        assert_eq!(dot.matches(" -> ").count(), g.edge_count());
    }
}
