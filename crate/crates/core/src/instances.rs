//! Instance generators: the terminal cycle family, its explicit
//! fractional routing scheme, a scheme verifier, and seeded random
//! instances for property tests.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::connectivity::terminal_connectivity;
use crate::error::{Error, Result};
use crate::multigraph::{prune_to_core, EdgeId, Instance, Multigraph, TerminalSet, VertexId};
use crate::packing::Verdict;
use crate::rate::Rate;

/// A unit-capacity cycle through terminals `v0 … v{a-1}` in order, with
/// one relay inserted per entry of `relay_slots`. Slot `i` is the gap
/// between `v{i}` and `v{(i+1) mod a}`; relays are named `x1, x2, …` in
/// cycle order and vertex ids follow the cycle starting at `v0`.
pub fn cycle_instance(a: usize, relay_slots: &[usize]) -> Result<Instance> {
    if a < 3 {
        return Err(Error::InvalidTerminals(format!("cycle family needs at least 3 terminals, got {a}")));
    }
    if let Some(&slot) = relay_slots.iter().find(|&&s| s >= a) {
        return Err(Error::BadSlot { slot, terminals: a });
    }
    let mut per_gap = vec![0usize; a];
    for &s in relay_slots {
        per_gap[s] += 1;
    }
    let mut g = Multigraph::new();
    let mut order = Vec::new();
    let mut terminals = Vec::new();
    let mut relay = 0;
    for (i, &count) in per_gap.iter().enumerate() {
        let v = g.add_vertex(&format!("v{i}"))?;
        terminals.push(v);
        order.push(v);
        for _ in 0..count {
            relay += 1;
            order.push(g.add_vertex(&format!("x{relay}"))?);
        }
    }
    for i in 0..order.len() {
        g.add_edge(order[i], order[(i + 1) % order.len()], 1);
    }
    let sinks = terminals[1..].to_vec();
    Ok(Instance::new(g, TerminalSet::new(terminals[0], sinks)))
}

/// One edge traversed in a fixed direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub edge: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
}

/// Static symbol-to-edge routing: over `n` time units the source sends `h`
/// symbols, symbol `i` travelling along the arcs in `assignment[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingScheme {
    pub h: u64,
    pub n: u64,
    pub assignment: BTreeMap<usize, BTreeSet<Arc>>,
}

impl RoutingScheme {
    pub fn rate(&self) -> Rate {
        Rate::new(self.h as i64, self.n as i64)
    }

    /// Symbols carried by each edge, both directions together.
    pub fn edge_loads(&self) -> BTreeMap<EdgeId, u64> {
        let mut loads = BTreeMap::new();
        for arcs in self.assignment.values() {
            for arc in arcs {
                *loads.entry(arc.edge).or_insert(0) += 1;
            }
        }
        loads
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scheme serializes")
    }
}

/// The rate `a/(a−1)` scheme on [`cycle_instance`]: `a` symbols over
/// `a − 1` time units. Terminal `v_i` forwards `a_0 … a_{a−2−i}` to
/// `v_{i+1}`; the source also sends `a_1 … a_{a−1}` to `v_{a−1}`, which
/// are passed back so that `v_{i+1}` hands `a_{a−i} … a_{a−1}` to `v_i`.
/// Relays forward whatever enters them.
pub fn cycle_routing_scheme(inst: &Instance) -> Result<RoutingScheme> {
    let g = &inst.graph;
    let terms = inst.terminals.members();
    let a = terms.len();
    let segments = cycle_segments(g, &terms)?;
    let mut assignment: BTreeMap<usize, BTreeSet<Arc>> = (0..a).map(|s| (s, BTreeSet::new())).collect();
    let mut route = |symbols: std::ops::Range<usize>, path: &[Arc]| {
        for s in symbols {
            assignment.get_mut(&s).expect("symbol").extend(path.iter().copied());
        }
    };
    for (i, seg) in segments.iter().enumerate().take(a - 1) {
        route(0..a - 1 - i, seg);
        if i >= 1 {
            route(a - i..a, &reversed(seg));
        }
    }
    route(1..a, &reversed(&segments[a - 1]));
    Ok(RoutingScheme { h: a as u64, n: a as u64 - 1, assignment })
}

fn reversed(path: &[Arc]) -> Vec<Arc> {
    path.iter().rev().map(|arc| Arc { edge: arc.edge, from: arc.to, to: arc.from }).collect()
}

/// Splits a cycle into the arc paths `v_i → v_{(i+1) mod a}`.
fn cycle_segments(g: &Multigraph, terms: &[VertexId]) -> Result<Vec<Vec<Arc>>> {
    let not_cycle = || Error::InvalidGraph("not a cycle through the terminals in order".into());
    if g.vertices().any(|v| g.incident(v).count() != 2) || !g.is_connected() {
        return Err(not_cycle());
    }
    for first in g.incident(terms[0]) {
        // walk once around the cycle starting along `first`
        let mut arcs = Vec::with_capacity(g.edge_count());
        let (mut at, mut via) = (terms[0], first.id);
        loop {
            let e = g.edge(via)?;
            let next = e.other(at);
            arcs.push(Arc { edge: via, from: at, to: next });
            at = next;
            if at == terms[0] {
                break;
            }
            via = g.incident(at).find(|f| f.id != via).ok_or_else(not_cycle)?.id;
        }
        let mut segments = vec![Vec::new()];
        let mut seen = vec![terms[0]];
        for arc in arcs {
            segments.last_mut().expect("open segment").push(arc);
            if terms.contains(&arc.to) {
                seen.push(arc.to);
                segments.push(Vec::new());
            }
        }
        segments.pop();
        seen.pop();
        if seen == terms {
            return Ok(segments);
        }
    }
    Err(not_cycle())
}

/// Checks the per-edge budget `n · capacity` and that every symbol's arcs
/// reach every sink from the source.
pub fn verify_routing_scheme(g: &Multigraph, a: &TerminalSet, s: &RoutingScheme) -> Verdict {
    let mut v = Verdict::default();
    if s.n == 0 {
        v.fail("zero time units".into());
        return v;
    }
    for (sym, arcs) in &s.assignment {
        for arc in arcs {
            match g.edge(arc.edge) {
                Err(_) => v.fail(format!("symbol {sym}: unknown edge {}", arc.edge.0)),
                Ok(e) if !(e.touches(arc.from) && e.other(arc.from) == arc.to && arc.from != arc.to) => {
                    v.fail(format!("symbol {sym}: arc does not match edge {}", arc.edge.0))
                }
                Ok(_) => {}
            }
        }
    }
    if !v.ok() {
        return v;
    }
    for (edge, load) in s.edge_loads() {
        let cap = g.edge(edge).expect("checked").capacity;
        if load > s.n * cap {
            v.fail(format!("edge {} carries {load} symbols, budget {}", edge.0, s.n * cap));
        }
    }
    for sym in 0..s.h as usize {
        let Some(arcs) = s.assignment.get(&sym) else {
            v.fail(format!("symbol {sym} is never sent"));
            continue;
        };
        let reached = reach(a.source, arcs);
        for t in &a.sinks {
            if !reached.contains(t) {
                v.fail(format!("symbol {sym} does not reach {}", g.name(*t)));
            }
        }
    }
    v
}

fn reach(source: VertexId, arcs: &BTreeSet<Arc>) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([source]);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for arc in arcs.iter().filter(|arc| arc.from == x) {
            if seen.insert(arc.to) {
                queue.push_back(arc.to);
            }
        }
    }
    seen
}

/// Seeded random instance: a random spanning tree on `vertices` vertices
/// plus `extra` random unit edges (parallel edges allowed), terminals
/// drawn uniformly, then pruned to its core. Returns the instance and its
/// terminal connectivity, which is at least 2.
pub fn random_instance(vertices: usize, extra: usize, terminals: usize, seed: u64) -> Result<(Instance, u64)> {
    if terminals < 2 || terminals > vertices {
        return Err(Error::InvalidTerminals(format!("{terminals} terminals on {vertices} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Multigraph::new();
    let vs: Vec<VertexId> = (0..vertices).map(|i| g.add_vertex(&format!("n{i}"))).collect::<Result<_>>()?;
    for i in 1..vertices {
        let j = rng.gen_range(0..i);
        g.add_edge(vs[j], vs[i], 1);
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..vertices);
        let mut w = rng.gen_range(0..vertices - 1);
        if w >= u {
            w += 1;
        }
        g.add_edge(vs[u], vs[w], 1);
    }
    let mut picks = vs.clone();
    picks.shuffle(&mut rng);
    let a = TerminalSet::new(picks[0], picks[1..terminals].to_vec());
    let core = match prune_to_core(&g, &a) {
        Ok(core) => core,
        Err(Error::BridgeBetweenTerminals { .. }) => return Err(Error::Underconnected { lambda: 1 }),
        Err(e) => return Err(e),
    };
    let lambda = terminal_connectivity(&core, &a)?;
    if lambda < 2 {
        return Err(Error::Underconnected { lambda });
    }
    Ok((Instance::new(core, a), lambda))
}

/// Draws instances from consecutive seeds starting at `seed`, skipping
/// underconnected ones, until `count` are collected.
pub fn random_instances(count: usize, vertices: usize, extra: usize, terminals: usize, seed: u64) -> Vec<(u64, Instance, u64)> {
    let mut out = Vec::with_capacity(count);
    let mut s = seed;
    while out.len() < count {
        match random_instance(vertices, extra, terminals, s) {
            Ok((inst, lambda)) => out.push((s, inst, lambda)),
            Err(Error::Underconnected { .. }) => {}
            Err(e) => panic!("generator failed: {e}"),
        }
        s += 1;
    }
    out
}

/// A small hand-made demo network with terminal connectivity 2, three
/// sinks and fractional routing capacity at least 4/3. It is an
/// illustration only, not a reconstruction of any published figure.
pub fn demo_instance() -> Instance {
    let g = Multigraph::from_named(
        &["s", "t1", "t2", "t3", "x"],
        &[("s", "t1", 1), ("s", "t3", 1), ("t1", "x", 1), ("t1", "t2", 1), ("x", "t2", 1), ("x", "t3", 1), ("t2", "t3", 1)],
    )
    .expect("demo graph is well formed");
    let id = |n: &str| g.vertex_by_name(n).expect("demo vertex");
    let a = TerminalSet::new(id("s"), vec![id("t1"), id("t2"), id("t3")]);
    Instance::new(g, a)
}
