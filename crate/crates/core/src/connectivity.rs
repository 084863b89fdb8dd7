//! Exact max-flow / min-cut on undirected multigraphs.
//!
//! Each undirected edge of capacity `c` becomes a pair of opposite arcs of
//! capacity `c` that are each other's residual, which admits up to `c` units
//! in either direction. All arithmetic is on integers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, TerminalSet, VertexId};

/// A `u`-`v` cut: `side` contains `u` but not `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub value: u64,
    pub side: BTreeSet<VertexId>,
    pub crossing: Vec<EdgeId>,
}

impl CutCertificate {
    /// Recomputes the crossing capacity from the graph.
    pub fn check(&self, g: &Multigraph) -> bool {
        let crossing: Vec<EdgeId> = g
            .edges()
            .filter(|e| self.side.contains(&e.u) != self.side.contains(&e.v))
            .map(|e| e.id)
            .collect();
        let value: u64 = crossing.iter().map(|id| g.edge(*id).map(|e| e.capacity).unwrap_or(0)).sum();
        !self.side.is_empty() && self.side.len() < g.vertex_count() && crossing == self.crossing && value == self.value
    }
}

struct Arc {
    to: usize,
    cap: u64,
    edge: EdgeId,
}

struct FlowNetwork {
    index: BTreeMap<VertexId, usize>,
    vertices: Vec<VertexId>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    original: Vec<u64>,
}

impl FlowNetwork {
    fn new(g: &Multigraph) -> FlowNetwork {
        let vertices: Vec<VertexId> = g.vertices().collect();
        let index = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect::<BTreeMap<_, _>>();
        let mut net = FlowNetwork { out: vec![Vec::new(); vertices.len()], index, vertices, arcs: Vec::new(), original: Vec::new() };
        for e in g.edges() {
            if e.u == e.v {
                continue;
            }
            let (a, b) = (net.index[&e.u], net.index[&e.v]);
            net.out[a].push(net.arcs.len());
            net.arcs.push(Arc { to: b, cap: e.capacity, edge: e.id });
            net.out[b].push(net.arcs.len());
            net.arcs.push(Arc { to: a, cap: e.capacity, edge: e.id });
            net.original.push(e.capacity);
            net.original.push(e.capacity);
        }
        net
    }

    fn levels(&self, s: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.vertices.len()];
        level[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && level[arc.to].is_none() {
                    level[arc.to] = Some(level[x].unwrap() + 1);
                    queue.push_back(arc.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, x: usize, t: usize, limit: u64, level: &[Option<usize>], next: &mut [usize]) -> u64 {
        if x == t {
            return limit;
        }
        while next[x] < self.out[x].len() {
            let a = self.out[x][next[x]];
            let (to, cap) = (self.arcs[a].to, self.arcs[a].cap);
            if cap > 0 && level[to] == level[x].map(|l| l + 1) {
                let pushed = self.augment(to, t, limit.min(cap), level, next);
                if pushed > 0 {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[x] += 1;
        }
        0
    }

    /// Dinic's algorithm.
    fn run(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t].is_none() {
                return total;
            }
            let mut next = vec![0; self.vertices.len()];
            loop {
                let f = self.augment(s, t, u64::MAX, &level, &mut next);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    /// Net flow on each undirected edge, oriented from `u` to `v` of the
    /// arc pair's first arc.
    fn net_flow(&self, a: usize) -> i64 {
        self.original[a] as i64 - self.arcs[a].cap as i64
    }
}

fn endpoints(g: &Multigraph, u: VertexId, v: VertexId) -> Result<()> {
    for x in [u, v] {
        if !g.contains_vertex(x) {
            return Err(Error::UnknownVertex(x.to_string()));
        }
    }
    if u == v {
        return Err(Error::SameVertex(g.name(u).to_string()));
    }
    Ok(())
}

/// Maximum `u`-`v` flow with a minimum-cut certificate.
pub fn max_flow(g: &Multigraph, u: VertexId, v: VertexId) -> Result<(u64, CutCertificate)> {
    endpoints(g, u, v)?;
    let mut net = FlowNetwork::new(g);
    let value = net.run(net.index[&u], net.index[&v]);
    let level = net.levels(net.index[&u]);
    let side: BTreeSet<VertexId> =
        net.vertices.iter().enumerate().filter(|(i, _)| level[*i].is_some()).map(|(_, x)| *x).collect();
    let crossing = g.edges().filter(|e| side.contains(&e.u) != side.contains(&e.v)).map(|e| e.id).collect();
    Ok((value, CutCertificate { value, side, crossing }))
}

/// Pairwise edge connectivity `λ(u, v)`.
pub fn local_connectivity(g: &Multigraph, u: VertexId, v: VertexId) -> Result<u64> {
    endpoints(g, u, v)?;
    let mut net = FlowNetwork::new(g);
    Ok(net.run(net.index[&u], net.index[&v]))
}

/// A maximum set of `u`-`v` paths, each a list of edge ids, such that no
/// edge is used more often than its capacity.
pub fn edge_disjoint_paths(g: &Multigraph, u: VertexId, v: VertexId) -> Result<Vec<Vec<EdgeId>>> {
    endpoints(g, u, v)?;
    let mut net = FlowNetwork::new(g);
    let (s, t) = (net.index[&u], net.index[&v]);
    net.run(s, t);
    // remaining[a] = flow still to route along arc a (positive direction only)
    let mut remaining: Vec<u64> = (0..net.arcs.len()).map(|a| net.net_flow(a).max(0) as u64).collect();
    let mut paths = Vec::new();
    loop {
        let mut path = Vec::new();
        let mut x = s;
        let mut seen = vec![false; net.vertices.len()];
        while x != t {
            seen[x] = true;
            let Some(&a) = net.out[x].iter().find(|&&a| remaining[a] > 0) else { break };
            remaining[a] -= 1;
            path.push(a);
            x = net.arcs[a].to;
            if seen[x] && x != t {
                // drop the cycle just closed
                while let Some(b) = path.pop() {
                    let from = net.arcs[b ^ 1].to;
                    if from == x {
                        break;
                    }
                    seen[from] = false;
                }
            }
        }
        if x != t {
            return Ok(paths);
        }
        paths.push(path.iter().map(|&a| net.arcs[a].edge).collect());
    }
}

/// Terminal connectivity `λ(A)`: the minimum pairwise min-cut over `A`.
pub fn terminal_connectivity(g: &Multigraph, a: &TerminalSet) -> Result<u64> {
    let members = a.members();
    if members.len() < 2 {
        return Err(Error::InvalidTerminals("need at least two terminals".into()));
    }
    // a minimum cut separating A separates the source from some other terminal
    let mut best = u64::MAX;
    for &t in &members[1..] {
        best = best.min(local_connectivity(g, a.source, t)?);
    }
    Ok(best)
}

/// Terminal connectivity computed over every unordered pair.
pub fn terminal_connectivity_all_pairs(g: &Multigraph, a: &TerminalSet) -> Result<u64> {
    let members = a.members();
    let mut best = u64::MAX;
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            best = best.min(local_connectivity(g, x, y)?);
        }
    }
    Ok(best)
}

/// Global edge connectivity `λ(G)`.
///
/// Uses a fixed root: a global minimum edge cut has the root on one side and
/// some vertex `v` on the other, so it is also a minimum root-`v` cut.
pub fn edge_connectivity(g: &Multigraph) -> Result<u64> {
    let mut vs = g.vertices();
    let root = vs.next().ok_or(Error::Disconnected)?;
    if g.vertex_count() < 2 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut best = u64::MAX;
    for v in vs {
        best = best.min(local_connectivity(g, root, v)?);
    }
    Ok(best)
}

/// True iff removing one unit of `e` disconnects its endpoints.
pub fn is_cut_edge(g: &Multigraph, e: EdgeId) -> Result<bool> {
    let edge = g.edge(e)?;
    if edge.capacity >= 2 || edge.u == edge.v {
        return Ok(false);
    }
    let parallel = g.edges().any(|f| f.id != e && f.key() == edge.key());
    Ok(!parallel && !g.reachable(edge.u, Some(e)).contains(&edge.v))
}

/// `λ(u, v)` for every unordered pair drawn from `vertices`, keyed with the
/// smaller id first.
pub fn pairwise_connectivity(g: &Multigraph, vertices: &[VertexId]) -> BTreeMap<(VertexId, VertexId), u64> {
    let mut out = BTreeMap::new();
    for (i, &x) in vertices.iter().enumerate() {
        for &y in &vertices[i + 1..] {
            let value = local_connectivity(g, x, y).expect("distinct known vertices");
            out.insert((x.min(y), x.max(y)), value);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::fixtures::*;
    use proptest::prelude::*;

    fn v(g: &Multigraph, n: &str) -> VertexId {
        g.vertex_by_name(n).unwrap()
    }

    /// Minimum cut by trying every subset of unit edges in increasing size.
    fn brute_min_cut(g: &Multigraph, s: VertexId, t: VertexId) -> u64 {
        let units: Vec<EdgeId> = g.edges().flat_map(|e| std::iter::repeat(e.id).take(e.capacity as usize)).collect();
        let n = units.len();
        let mut best = n as u64;
        for mask in 0u32..(1 << n) {
            let removed = mask.count_ones() as u64;
            if removed >= best {
                continue;
            }
            let mut h = g.clone();
            for (i, id) in units.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    let c = h.edge(*id).unwrap().capacity;
                    h.set_capacity(*id, c - 1);
                }
            }
            if !h.reachable(s, None).contains(&t) {
                best = removed;
            }
        }
        best
    }

    #[test]
    fn parallel_edges() {
        let g = Multigraph::from_named(&["u", "v"], &[("u", "v", 1), ("u", "v", 1), ("u", "v", 1)]).unwrap();
        let (value, cert) = max_flow(&g, v(&g, "u"), v(&g, "v")).unwrap();
        assert_eq!(value, 3);
        assert!(cert.check(&g));
    }

    #[test]
    fn four_cycle_opposite() {
        let g = Multigraph::from_named(&["a", "b", "c", "d"], &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)])
            .unwrap();
        assert_eq!(max_flow(&g, v(&g, "a"), v(&g, "c")).unwrap().0, 2);
    }

    #[test]
    fn errors() {
        let t = triangle();
        let s = t.terminals.source;
        assert!(matches!(max_flow(&t.graph, s, s), Err(Error::SameVertex(_))));
        assert!(matches!(max_flow(&t.graph, s, VertexId(42)), Err(Error::UnknownVertex(_))));
        assert!(matches!(is_cut_edge(&t.graph, EdgeId(42)), Err(Error::UnknownEdge(42))));
    }

    #[test]
    fn terminal_connectivity_examples() {
        let t = triangle();
        assert_eq!(terminal_connectivity(&t.graph, &t.terminals), Ok(2));
        let g = Multigraph::from_named(&["s", "t"], &[("s", "t", 5)]).unwrap();
        let a = TerminalSet::new(v(&g, "s"), vec![v(&g, "t")]);
        assert_eq!(terminal_connectivity(&g, &a), Ok(5));
    }

    #[test]
    fn edge_connectivity_examples() {
        let c5 = Multigraph::from_named(
            &["a", "b", "c", "d", "e"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "e", 1), ("e", "a", 1)],
        )
        .unwrap();
        assert_eq!(edge_connectivity(&c5), Ok(2));
        let tree = Multigraph::from_named(&["a", "b", "c", "d"], &[("a", "b", 1), ("b", "c", 1), ("b", "d", 1)]).unwrap();
        assert_eq!(edge_connectivity(&tree), Ok(1));
        let k4 = k4().graph;
        assert_eq!(edge_connectivity(&k4), Ok(3));
        // oracle: no two unit edges disconnect K4, some three do
        let vs: Vec<VertexId> = k4.vertices().collect();
        let brute = vs.iter().skip(1).map(|&x| brute_min_cut(&k4, vs[0], x)).min().unwrap();
        assert_eq!(brute, 3);
        let mut split = k4.clone();
        let x = split.add_vertex("x").unwrap();
        let _ = x;
        assert_eq!(edge_connectivity(&split), Err(Error::Disconnected));
    }

    #[test]
    fn cut_edges() {
        let path = Multigraph::from_named(&["a", "b", "c", "d"], &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1)]).unwrap();
        assert_eq!(is_cut_edge(&path, EdgeId(1)), Ok(true));
        let t = triangle();
        assert!(t.graph.edges().all(|e| !is_cut_edge(&t.graph, e.id).unwrap()));
        let two_triangles = Multigraph::from_named(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("d", "e", 1), ("e", "f", 1), ("f", "d", 1), ("c", "d", 2)],
        )
        .unwrap();
        assert_eq!(is_cut_edge(&two_triangles, EdgeId(6)), Ok(false));
    }

    #[test]
    fn paths_match_flow_value() {
        let g = k4().graph.scale_capacities(2);
        let vs: Vec<VertexId> = g.vertices().collect();
        let paths = edge_disjoint_paths(&g, vs[0], vs[3]).unwrap();
        assert_eq!(paths.len(), 6);
        let mut load: BTreeMap<EdgeId, u64> = BTreeMap::new();
        for p in &paths {
            for e in p {
                *load.entry(*e).or_default() += 1;
            }
        }
        assert!(load.iter().all(|(e, l)| *l <= g.edge(*e).unwrap().capacity));
    }

    fn small_multigraph() -> impl Strategy<Value = Multigraph> {
        (2usize..=6, prop::collection::vec((0usize..6, 0usize..6, 1u64..=2), 1..7)).prop_map(|(n, raw)| {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut g = Multigraph::new();
            let ids: Vec<VertexId> = names.iter().map(|s| g.add_vertex(s).unwrap()).collect();
            for (a, b, c) in raw {
                let (a, b) = (a % n, b % n);
                if a != b {
                    g.add_edge(ids[a], ids[b], c);
                }
            }
            g
        })
    }

    proptest! {
        #[test]
        fn flow_matches_brute_force(g in small_multigraph()) {
            prop_assume!(g.total_capacity() <= 10);
            let vs: Vec<VertexId> = g.vertices().collect();
            for (i, &x) in vs.iter().enumerate() {
                for &y in &vs[i + 1..] {
                    let (value, cert) = max_flow(&g, x, y).unwrap();
                    prop_assert!(cert.check(&g));
                    prop_assert_eq!(value, brute_min_cut(&g, x, y));
                    prop_assert_eq!(value, max_flow(&g, y, x).unwrap().0);
                    prop_assert_eq!(edge_disjoint_paths(&g, x, y).unwrap().len() as u64, value);
                }
            }
        }
    }
}
