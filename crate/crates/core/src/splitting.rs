//! Splitting off pairs of edges at a vertex while preserving pairwise edge
//! connectivity, and lifting tree packings back through the splits.
//!
//! Everything here works on the unit-edge view: splitting `e = rx` and
//! `f = xt` consumes one unit of each and adds a fresh unit edge `rt`. When
//! `r = t` the would-be loop is dropped.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::{is_cut_edge, pairwise_connectivity};
use crate::error::{Error, Result};
use crate::multigraph::{validate, DegreeMode, EdgeId, Instance, Multigraph, TerminalSet, VertexId};
use crate::packing::{verify_packing, SteinerPacking, SteinerTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitEvent {
    pub pivot: VertexId,
    /// The split pair `(rx, xt)`; equal ids mean two units of one edge.
    pub split: (EdgeId, EdgeId),
    /// The new edge `rt`, absent when `r = t`.
    pub splitting: Option<EdgeId>,
}

/// Ordered log of splits applied to `base`, followed by deletion of the
/// isolated pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitHistory {
    pub base: Multigraph,
    pub events: Vec<SplitEvent>,
    pub deleted: Vec<VertexId>,
}

impl SplitHistory {
    pub fn empty(base: Multigraph) -> SplitHistory {
        SplitHistory { base, events: Vec::new(), deleted: Vec::new() }
    }

    /// Replays every event on the base graph.
    pub fn replay(&self) -> Result<Multigraph> {
        let mut g = self.base.clone();
        for ev in &self.events {
            let (next, replayed) = split_off_at(&g, ev.pivot, ev.split.0, ev.split.1)?;
            if replayed != *ev {
                return Err(Error::InvalidGraph(format!("history diverges at {ev:?}")));
            }
            g = next;
        }
        for &x in &self.deleted {
            if g.degree(x, DegreeMode::Raw)? != 0 {
                return Err(Error::InvalidGraph(format!("pivot {} is not isolated", g.name(x))));
            }
            g.remove_vertex(x);
        }
        Ok(g)
    }

    /// Endpoints of every edge that ever existed in the history.
    fn endpoints(&self) -> Result<BTreeMap<EdgeId, (VertexId, VertexId)>> {
        let mut ends: BTreeMap<EdgeId, (VertexId, VertexId)> = self.base.edges().map(|e| (e.id, (e.u, e.v))).collect();
        for ev in &self.events {
            let other = |id: EdgeId| -> Result<VertexId> {
                let (u, v) = *ends.get(&id).ok_or(Error::UnknownEdge(id.0))?;
                Ok(if u == ev.pivot { v } else { u })
            };
            let (r, t) = (other(ev.split.0)?, other(ev.split.1)?);
            if let Some(w) = ev.splitting {
                ends.insert(w, (r, t));
            }
        }
        Ok(ends)
    }

    pub fn to_json(&self) -> String {
        let g = &self.base;
        let file = HistoryFile {
            events: self
                .events
                .iter()
                .map(|ev| EventFile {
                    pivot: g.name(ev.pivot).to_string(),
                    split: [ev.split.0 .0, ev.split.1 .0],
                    splitting_edge: ev.splitting.map(|w| w.0),
                })
                .collect(),
            deleted_pivots: self.deleted.iter().map(|x| g.name(*x).to_string()).collect(),
        };
        serde_json::to_string(&file).expect("history serializes")
    }

    /// Reads events written by [`SplitHistory::to_json`] against `base`.
    pub fn from_json(base: Multigraph, text: &str) -> Result<SplitHistory> {
        let file: HistoryFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let events = file
            .events
            .iter()
            .map(|ev| {
                Ok(SplitEvent {
                    pivot: base.vertex_by_name(&ev.pivot)?,
                    split: (EdgeId(ev.split[0]), EdgeId(ev.split[1])),
                    splitting: ev.splitting_edge.map(EdgeId),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let deleted = file.deleted_pivots.iter().map(|n| base.vertex_by_name(n)).collect::<Result<Vec<_>>>()?;
        Ok(SplitHistory { base, events, deleted })
    }
}

#[derive(Serialize, Deserialize)]
struct HistoryFile {
    events: Vec<EventFile>,
    deleted_pivots: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct EventFile {
    pivot: String,
    split: [u64; 2],
    splitting_edge: Option<u64>,
}

/// Splits one unit of `e` and one unit of `f` at pivot `x`.
pub fn split_off_at(g: &Multigraph, x: VertexId, e: EdgeId, f: EdgeId) -> Result<(Multigraph, SplitEvent)> {
    let (ee, fe) = (*g.edge(e)?, *g.edge(f)?);
    if !ee.touches(x) || !fe.touches(x) || ee.u == ee.v || fe.u == fe.v {
        return Err(Error::NotIncident(e.0, f.0));
    }
    if e == f && ee.capacity < 2 {
        return Err(Error::SameEdge(e.0));
    }
    let (r, t) = (ee.other(x), fe.other(x));
    let mut h = g.clone();
    h.set_capacity(e, ee.capacity - 1);
    let fcap = h.edge(f).map(|x| x.capacity).unwrap_or(0);
    h.set_capacity(f, fcap - 1);
    let splitting = (r != t).then(|| {
        let w = h.next_edge_id();
        h.insert_edge_with_id(w, r, t, 1);
        w
    });
    Ok((h, SplitEvent { pivot: x, split: (e, f), splitting }))
}

/// Splits `e` and `f` at their common endpoint. For two parallel edges
/// either endpoint gives the same graph; the smaller vertex id is used.
pub fn split_off(g: &Multigraph, e: EdgeId, f: EdgeId) -> Result<(Multigraph, SplitEvent)> {
    let (ee, fe) = (g.edge(e)?, g.edge(f)?);
    let pivot = [ee.u.min(ee.v), ee.u.max(ee.v)]
        .into_iter()
        .find(|x| fe.touches(*x))
        .ok_or(Error::NotIncident(e.0, f.0))?;
    split_off_at(g, pivot, e, f)
}

fn others(g: &Multigraph, x: VertexId) -> Vec<VertexId> {
    g.vertices().filter(|v| *v != x).collect()
}

/// True iff splitting `e`, `f` at `x` keeps `λ(u, v)` for every pair of
/// vertices other than `x`.
pub fn is_admissible(g: &Multigraph, x: VertexId, e: EdgeId, f: EdgeId) -> Result<bool> {
    let (h, _) = split_off_at(g, x, e, f)?;
    let rest = others(g, x);
    Ok(pairwise_connectivity(g, &rest) == pairwise_connectivity(&h, &rest))
}

fn check_pivot(g: &Multigraph, x: VertexId) -> Result<u64> {
    let d = g.degree(x, DegreeMode::Unit)?;
    if d == 0 {
        return Ok(0);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    for e in g.incident(x) {
        if is_cut_edge(g, e.id)? {
            return Err(Error::CutEdgeAtPivot { pivot: g.name(x).to_string(), edge: e.id.0 });
        }
    }
    if d == 3 {
        return Err(Error::DegreeThree(g.name(x).to_string()));
    }
    Ok(d)
}

/// Depth-first search for a sequence of admissible splits at `x`, each
/// admissible in the graph left by the previous ones.
fn admissible_sequence(g: &Multigraph, x: VertexId, pairs: usize) -> Option<(Multigraph, Vec<SplitEvent>)> {
    if pairs == 0 {
        return Some((g.clone(), Vec::new()));
    }
    let incident: Vec<(EdgeId, u64)> = g.incident(x).map(|e| (e.id, e.capacity)).collect();
    let (first, cap) = *incident.first()?;
    let rest = others(g, x);
    let before = pairwise_connectivity(g, &rest);
    for &(partner, _) in &incident {
        if partner == first && cap < 2 {
            continue;
        }
        let (h, ev) = split_off_at(g, x, first, partner).ok()?;
        if pairwise_connectivity(&h, &rest) != before {
            continue;
        }
        if let Some((done, mut tail)) = admissible_sequence(&h, x, pairs - 1) {
            tail.insert(0, ev);
            return Some((done, tail));
        }
    }
    None
}

fn dump(g: &Multigraph, x: VertexId) -> String {
    let edges: Vec<String> = g.edges().map(|e| format!("{}-{}:{}", g.name(e.u), g.name(e.v), e.capacity)).collect();
    format!("pivot {} in graph [{}]", g.name(x), edges.join(", "))
}

/// `⌊d(x)/2⌋` disjoint admissible pairs at `x`, found by backtracking.
/// Splitting theory guarantees they exist when no cut-edge is incident to
/// `x` and `d(x) ≠ 3`, so `SearchExhausted` means a bug.
pub fn find_disjoint_admissible_pairs(g: &Multigraph, x: VertexId) -> Result<Vec<(EdgeId, EdgeId)>> {
    let d = check_pivot(g, x)?;
    let (_, events) =
        admissible_sequence(g, x, (d / 2) as usize).ok_or_else(|| Error::SearchExhausted(dump(g, x)))?;
    Ok(events.iter().map(|ev| ev.split).collect())
}

/// Isolates `x` by admissible splits and deletes it.
pub fn suitable_complete_splitting(g: &Multigraph, x: VertexId) -> Result<(Multigraph, SplitHistory)> {
    let d = g.degree(x, DegreeMode::Unit)?;
    if d % 2 == 1 {
        return Err(Error::OddDegree(g.name(x).to_string()));
    }
    check_pivot(g, x)?;
    let (mut h, events) =
        admissible_sequence(g, x, (d / 2) as usize).ok_or_else(|| Error::SearchExhausted(dump(g, x)))?;
    h.remove_vertex(x);
    Ok((h, SplitHistory { base: g.clone(), events, deleted: vec![x] }))
}

/// Outcome of [`eliminate_relays`]: a graph on the terminals only, the
/// history from the (possibly doubled) input, and the scale applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub graph: Multigraph,
    pub history: SplitHistory,
    pub scale: u64,
}

/// Removes every non-terminal vertex by suitable complete splittings, in
/// ascending vertex id order. If any relay has odd degree, all capacities
/// are doubled first. Pairwise terminal connectivities of the result equal
/// `scale` times those of `g`.
pub fn eliminate_relays(g: &Multigraph, a: &TerminalSet) -> Result<Elimination> {
    validate(g, a)?;
    let relays: Vec<VertexId> = g.vertices().filter(|v| !a.contains(*v)).collect();
    let odd = relays.iter().any(|&x| g.degree(x, DegreeMode::Unit).map(|d| d % 2 == 1).unwrap_or(false));
    let scale = if odd { 2 } else { 1 };
    let base = g.scale_capacities(scale);
    let mut history = SplitHistory::empty(base.clone());
    let mut current = base;
    for x in relays {
        let (next, step) = suitable_complete_splitting(&current, x)?;
        history.events.extend(step.events);
        history.deleted.extend(step.deleted);
        current = next;
    }
    Ok(Elimination { graph: current, history, scale })
}

/// Lifts a packing on the history's final graph to one on its base graph
/// with the same trees count and weights.
///
/// Pivots are undone in reverse. A tree `T` using splitting edges `W` at
/// pivot `x` becomes a spanning tree of `(T − W) ∪ {e(w), f(w)} ∪ {x}`
/// that keeps every edge of `T − W`, so each `w` is replaced by a subset
/// of its split pair. Non-terminal leaves are then trimmed.
pub fn lift_packing(history: &SplitHistory, a: &TerminalSet, packing: &SteinerPacking) -> Result<SteinerPacking> {
    let last = history.replay()?;
    let check = verify_packing(&last, a, packing);
    if !check.ok() {
        return Err(Error::InvalidPacking(check.problems.join("; ")));
    }
    let ends = history.endpoints()?;
    let terminals: BTreeSet<VertexId> = a.members().into_iter().collect();
    let mut trees: Vec<(BTreeSet<EdgeId>, crate::Rate)> =
        packing.trees.iter().map(|(t, w)| (t.edges.clone(), *w)).collect();

    let mut by_pivot: Vec<(VertexId, Vec<&SplitEvent>)> = Vec::new();
    for ev in &history.events {
        match by_pivot.last_mut() {
            Some((x, evs)) if *x == ev.pivot => evs.push(ev),
            _ => by_pivot.push((ev.pivot, vec![ev])),
        }
    }
    for (_, events) in by_pivot.iter().rev() {
        let split_of: BTreeMap<EdgeId, (EdgeId, EdgeId)> =
            events.iter().filter_map(|ev| ev.splitting.map(|w| (w, ev.split))).collect();
        for (edges, _) in trees.iter_mut() {
            if !edges.iter().any(|e| split_of.contains_key(e)) {
                continue;
            }
            let kept: Vec<EdgeId> = edges.iter().copied().filter(|e| !split_of.contains_key(e)).collect();
            let mut candidates = kept.clone();
            for w in edges.iter().filter(|e| split_of.contains_key(e)) {
                let (e, f) = split_of[w];
                candidates.push(e);
                candidates.push(f);
            }
            *edges = trim(&spanning_forest(&candidates, &ends), &ends, &terminals);
        }
    }
    let lifted = SteinerPacking::from_weighted(
        trees
            .into_iter()
            .map(|(edges, w)| Ok((SteinerTree::from_edges(&history.base, edges)?, w)))
            .collect::<Result<Vec<_>>>()?,
    );
    let check = verify_packing(&history.base, a, &lifted);
    if !check.ok() {
        return Err(Error::InvalidPacking(format!("lifted packing rejected: {}", check.problems.join("; "))));
    }
    Ok(lifted)
}

/// Kruskal in the given edge order; duplicate ids are taken once.
fn spanning_forest(order: &[EdgeId], ends: &BTreeMap<EdgeId, (VertexId, VertexId)>) -> BTreeSet<EdgeId> {
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let p = *parent.entry(v).or_insert(v);
        if p == v {
            return v;
        }
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
    let mut out = BTreeSet::new();
    for &e in order {
        if out.contains(&e) {
            continue;
        }
        let (u, v) = ends[&e];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent.insert(ru, rv);
            out.insert(e);
        }
    }
    out
}

/// Repeatedly removes leaves that are not terminals.
fn trim(
    edges: &BTreeSet<EdgeId>,
    ends: &BTreeMap<EdgeId, (VertexId, VertexId)>,
    terminals: &BTreeSet<VertexId>,
) -> BTreeSet<EdgeId> {
    let mut edges = edges.clone();
    loop {
        let mut degree: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for e in &edges {
            let (u, v) = ends[e];
            degree.entry(u).or_default().push(*e);
            degree.entry(v).or_default().push(*e);
        }
        let leaf = degree.iter().find(|(v, es)| es.len() == 1 && !terminals.contains(v)).map(|(_, es)| es[0]);
        match leaf {
            Some(e) => {
                edges.remove(&e);
            }
            None => return edges,
        }
    }
}

/// Relay-free instance produced by splitting, for reporting.
pub fn split_instance(inst: &Instance) -> Result<(Instance, Elimination)> {
    let elim = eliminate_relays(&inst.graph, &inst.terminals)?;
    Ok((Instance::new(elim.graph.clone(), inst.terminals.clone()), elim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::local_connectivity;
    use crate::multigraph::fixtures::instance;
    use crate::packing::{enumerate_steiner_trees, max_integer_packing};
    use crate::Rate;

    fn v(g: &Multigraph, n: &str) -> VertexId {
        g.vertex_by_name(n).unwrap()
    }

    fn edge_between(g: &Multigraph, a: &str, b: &str) -> EdgeId {
        let (a, b) = (v(g, a), v(g, b));
        g.edges().find(|e| e.key() == (a.min(b), a.max(b))).unwrap().id
    }

    /// Min cut by enumerating every vertex bipartition.
    fn brute_cut(g: &Multigraph, s: VertexId, t: VertexId) -> u64 {
        let vs: Vec<VertexId> = g.vertices().collect();
        (0u32..1 << vs.len())
            .map(|m| vs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| *v).collect::<BTreeSet<_>>())
            .filter(|side| side.contains(&s) && !side.contains(&t))
            .map(|side| g.edges().filter(|e| side.contains(&e.u) != side.contains(&e.v)).map(|e| e.capacity).sum())
            .min()
            .unwrap()
    }

    fn theta() -> Multigraph {
        Multigraph::from_named(&["s", "x", "t"], &[("s", "x", 2), ("x", "t", 2)]).unwrap()
    }

    #[test]
    fn path_split_gives_single_edge() {
        let g = Multigraph::from_named(&["r", "x", "t"], &[("r", "x", 1), ("x", "t", 1)]).unwrap();
        let (h, ev) = split_off(&g, EdgeId(0), EdgeId(1)).unwrap();
        assert_eq!(ev.pivot, v(&g, "x"));
        assert_eq!(h.edge_count(), 1);
        let w = h.edge(ev.splitting.unwrap()).unwrap();
        assert_eq!(w.key(), (v(&g, "r"), v(&g, "t")));
        assert_eq!(local_connectivity(&h, v(&g, "r"), v(&g, "t")), Ok(1));
    }

    #[test]
    fn theta_split_keeps_cuts() {
        let g = theta();
        let (s, x, t) = (v(&g, "s"), v(&g, "x"), v(&g, "t"));
        let (h, ev) = split_off_at(&g, x, EdgeId(0), EdgeId(1)).unwrap();
        assert_eq!(h.edge(EdgeId(0)).unwrap().capacity, 1);
        assert_eq!(h.edge(EdgeId(1)).unwrap().capacity, 1);
        assert_eq!(h.edge(ev.splitting.unwrap()).unwrap().key(), (s, t));
        assert_eq!(brute_cut(&g, s, t), 2);
        assert_eq!(brute_cut(&h, s, t), 2);
        assert_eq!(is_admissible(&g, x, EdgeId(0), EdgeId(1)), Ok(true));
    }

    #[test]
    fn parallel_pair_drops_loop() {
        let g = Multigraph::from_named(&["u", "x", "v"], &[("u", "x", 1), ("u", "x", 1), ("x", "v", 2)]).unwrap();
        let (h, ev) = split_off(&g, EdgeId(0), EdgeId(1)).unwrap();
        assert_eq!(ev.splitting, None);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(split_off(&g, EdgeId(0), EdgeId(0)), Err(Error::SameEdge(0)));
        let far = Multigraph::from_named(&["a", "b", "c", "d"], &[("a", "b", 1), ("c", "d", 1)]).unwrap();
        assert_eq!(split_off(&far, EdgeId(0), EdgeId(1)), Err(Error::NotIncident(0, 1)));
    }

    #[test]
    fn degree_two_relay_is_admissible() {
        let g = Multigraph::from_named(
            &["s", "a", "x", "b"],
            &[("s", "a", 1), ("a", "x", 1), ("x", "b", 1), ("b", "s", 1)],
        )
        .unwrap();
        assert_eq!(is_admissible(&g, v(&g, "x"), EdgeId(1), EdgeId(2)), Ok(true));
    }

    #[test]
    fn splitting_a_parallel_pair_can_be_inadmissible() {
        let g = Multigraph::from_named(
            &["u", "x", "v", "w"],
            &[("u", "x", 2), ("x", "v", 1), ("x", "w", 1), ("v", "w", 1)],
        )
        .unwrap();
        let (u, x, vv) = (v(&g, "u"), v(&g, "x"), v(&g, "v"));
        assert_eq!(brute_cut(&g, u, vv), 2);
        let (h, _) = split_off_at(&g, x, EdgeId(0), EdgeId(0)).unwrap();
        assert!(brute_cut(&h, u, vv) < 2);
        assert_eq!(is_admissible(&g, x, EdgeId(0), EdgeId(0)), Ok(false));
    }

    #[test]
    fn find_pairs_examples() {
        let g = Multigraph::from_named(
            &["s", "a", "x", "b"],
            &[("s", "a", 1), ("a", "x", 1), ("x", "b", 1), ("b", "s", 1)],
        )
        .unwrap();
        assert_eq!(find_disjoint_admissible_pairs(&g, v(&g, "x")), Ok(vec![(EdgeId(1), EdgeId(2))]));
        let t = theta();
        let x = v(&t, "x");
        let pairs = find_disjoint_admissible_pairs(&t, x).unwrap();
        assert_eq!(pairs, vec![(EdgeId(0), EdgeId(1)), (EdgeId(0), EdgeId(1))]);
        let pendant = Multigraph::from_named(
            &["a", "b", "c", "x", "y"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("a", "x", 2), ("x", "y", 1)],
        )
        .unwrap();
        assert!(matches!(
            find_disjoint_admissible_pairs(&pendant, v(&pendant, "x")),
            Err(Error::CutEdgeAtPivot { .. })
        ));
        let k4 = crate::multigraph::fixtures::k4().graph;
        assert!(matches!(find_disjoint_admissible_pairs(&k4, VertexId(0)), Err(Error::DegreeThree(_))));
    }

    #[test]
    fn complete_splitting_of_four_cycle() {
        let g = Multigraph::from_named(
            &["s", "a", "x", "b"],
            &[("s", "a", 1), ("a", "x", 1), ("x", "b", 1), ("b", "s", 1)],
        )
        .unwrap();
        let (h, hist) = suitable_complete_splitting(&g, v(&g, "x")).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
        let rest: Vec<VertexId> = h.vertices().collect();
        assert!(pairwise_connectivity(&h, &rest).values().all(|&c| c == 2));
        assert_eq!(hist.replay().unwrap(), h);
    }

    #[test]
    fn complete_splitting_of_theta() {
        let g = theta();
        let (h, _) = suitable_complete_splitting(&g, v(&g, "x")).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.total_capacity(), 2);
        assert_eq!(local_connectivity(&h, v(&g, "s"), v(&g, "t")), Ok(2));
    }

    #[test]
    fn odd_degree_is_rejected() {
        let g = Multigraph::from_named(
            &["a", "b", "c", "x"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("x", "a", 1), ("x", "b", 1), ("x", "c", 1)],
        )
        .unwrap();
        assert!(matches!(suitable_complete_splitting(&g, v(&g, "x")), Err(Error::OddDegree(_))));
    }

    #[test]
    fn eliminate_on_cycle_with_relays() {
        // v0 x1 v1 v2 x2 v3 v4
        let inst = instance(
            &["v0", "v1", "v2", "v3", "v4", "x1", "x2"],
            &[("v0", "x1", 1), ("x1", "v1", 1), ("v1", "v2", 1), ("v2", "x2", 1), ("x2", "v3", 1), ("v3", "v4", 1), ("v4", "v0", 1)],
            "v0",
            &["v1", "v2", "v3", "v4"],
        );
        let elim = eliminate_relays(&inst.graph, &inst.terminals).unwrap();
        assert_eq!(elim.scale, 1);
        assert_eq!(elim.graph.vertex_count(), 5);
        assert_eq!(elim.graph.edge_count(), 5);
        assert!(elim.graph.vertices().all(|x| elim.graph.degree(x, DegreeMode::Unit) == Ok(2)));
        assert_eq!(elim.history.replay().unwrap(), elim.graph);

        let (k, packing) = max_integer_packing(&elim.graph, &inst.terminals).unwrap();
        assert_eq!(k, 1);
        let lifted = lift_packing(&elim.history, &inst.terminals, &packing).unwrap();
        assert_eq!(lifted.rate(), Rate::ONE);
        assert!(verify_packing(&inst.graph, &inst.terminals, &lifted).ok());
    }

    #[test]
    fn eliminate_identity_when_relay_free() {
        let inst = crate::multigraph::fixtures::triangle();
        let elim = eliminate_relays(&inst.graph, &inst.terminals).unwrap();
        assert_eq!(elim.graph, inst.graph);
        assert!(elim.history.events.is_empty());
        assert_eq!(elim.scale, 1);
    }

    #[test]
    fn eliminate_doubles_for_degree_three_relay() {
        let inst = instance(
            &["a", "b", "c", "x"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("x", "a", 1), ("x", "b", 1), ("x", "c", 1)],
            "a",
            &["b", "c"],
        );
        let elim = eliminate_relays(&inst.graph, &inst.terminals).unwrap();
        assert_eq!(elim.scale, 2);
        let ts = inst.terminals.members();
        let before = pairwise_connectivity(&inst.graph, &ts);
        let after = pairwise_connectivity(&elim.graph, &ts);
        for (pair, c) in before {
            assert_eq!(after[&pair], 2 * c);
        }
    }

    #[test]
    fn lift_through_four_cycle() {
        let inst = instance(
            &["s", "a", "x", "b"],
            &[("s", "a", 1), ("a", "x", 1), ("x", "b", 1), ("b", "s", 1)],
            "s",
            &["a", "b"],
        );
        let (h, hist) = suitable_complete_splitting(&inst.graph, v(&inst.graph, "x")).unwrap();
        let w = hist.events[0].splitting.unwrap();
        let trees = enumerate_steiner_trees(&h, &inst.terminals, 10).unwrap();
        let through_w = trees.iter().find(|t| t.edges.contains(&w)).unwrap().clone();
        let lifted = lift_packing(&hist, &inst.terminals, &SteinerPacking::from_weighted([(through_w, Rate::ONE)])).unwrap();
        let tree = &lifted.trees[0].0;
        assert!(tree.edges.contains(&edge_between(&inst.graph, "a", "x")));
        assert!(tree.edges.contains(&edge_between(&inst.graph, "x", "b")));

        let avoiding = trees.iter().find(|t| !t.edges.contains(&w)).unwrap().clone();
        let p = SteinerPacking::from_weighted([(avoiding, Rate::ONE)]);
        assert_eq!(lift_packing(&hist, &inst.terminals, &p).unwrap(), p);
    }

    #[test]
    fn lift_rejects_invalid_input() {
        let inst = crate::multigraph::fixtures::triangle();
        let hist = SplitHistory::empty(inst.graph.clone());
        let trees = enumerate_steiner_trees(&inst.graph, &inst.terminals, 10).unwrap();
        let p = SteinerPacking::from_weighted([(trees[0].clone(), Rate::ONE), (trees[1].clone(), Rate::ONE)]);
        assert!(matches!(lift_packing(&hist, &inst.terminals, &p), Err(Error::InvalidPacking(_))));
    }

    #[test]
    fn history_json_round_trip() {
        let g = theta();
        let (_, hist) = suitable_complete_splitting(&g, v(&g, "x")).unwrap();
        assert_eq!(SplitHistory::from_json(g.clone(), &hist.to_json()).unwrap(), hist);
    }
}
