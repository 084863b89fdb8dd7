//! Undirected capacitated multigraphs, terminal sets and the JSON
//! interchange format.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An undirected edge with an integer capacity. A capacity-`c` edge stands
/// for `c` parallel unit edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub capacity: u64,
}

impl Edge {
    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            assert_eq!(self.v, x, "{x} is not an endpoint of {}", self.id);
            self.u
        }
    }

    /// Endpoints as an ordered pair, used to group parallel edges.
    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// How [`Multigraph::degree`] counts incident edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    /// Capacity-`c` edges contribute `c`.
    Unit,
    /// Every stored edge contributes 1.
    Raw,
}

/// Undirected multigraph with stable vertex and edge identities.
///
/// Edge ids are handed out monotonically and never reused, so a
/// [`crate::splitting::SplitHistory`] can refer to them after deletions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    names: BTreeMap<VertexId, String>,
    edges: BTreeMap<EdgeId, Edge>,
    next_vertex: u32,
    next_edge: u64,
}

impl Multigraph {
    pub fn new() -> Multigraph {
        Multigraph::default()
    }

    /// Builds a graph from vertex names and `(u, v, capacity)` triples over
    /// those names. Edge ids follow list order.
    pub fn from_named(vertices: &[&str], edges: &[(&str, &str, u64)]) -> Result<Multigraph> {
        let mut g = Multigraph::new();
        for name in vertices {
            g.add_vertex(name)?;
        }
        for (u, v, c) in edges {
            let u = g.vertex_by_name(u)?;
            let v = g.vertex_by_name(v)?;
            g.add_edge(u, v, *c);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId> {
        if self.names.values().any(|n| n == name) {
            return Err(Error::InvalidGraph(format!("duplicate vertex {name:?}")));
        }
        let id = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.names.insert(id, name.to_string());
        Ok(id)
    }

    /// Adds an edge with a fresh id. No validation happens here; see
    /// [`validate`].
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, capacity: u64) -> EdgeId {
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(id, Edge { id, u, v, capacity });
        id
    }

    /// Inserts an edge under a caller-chosen id; the id counter moves past it.
    pub(crate) fn insert_edge_with_id(&mut self, id: EdgeId, u: VertexId, v: VertexId, capacity: u64) {
        assert!(!self.edges.contains_key(&id), "edge id {id} reused");
        self.next_edge = self.next_edge.max(id.0 + 1);
        self.edges.insert(id, Edge { id, u, v, capacity });
    }

    pub(crate) fn set_capacity(&mut self, id: EdgeId, capacity: u64) {
        if capacity == 0 {
            self.edges.remove(&id);
        } else if let Some(e) = self.edges.get_mut(&id) {
            e.capacity = capacity;
        }
    }

    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        self.names.remove(&v);
        self.edges.retain(|_, e| !e.touches(v));
    }

    pub fn remove_edge(&mut self, id: EdgeId) {
        self.edges.remove(&id);
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.next_edge)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.names.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.names.contains_key(&v)
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.names.get(&v).map(String::as_str).unwrap_or("?")
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        self.names
            .iter()
            .find(|(_, n)| *n == name)
            .map(|(id, _)| *id)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges.get(&id).ok_or(Error::UnknownEdge(id.0))
    }

    pub fn incident(&self, x: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.values().filter(move |e| e.touches(x))
    }

    /// Sum of capacities, i.e. the number of unit edges.
    pub fn total_capacity(&self) -> u64 {
        self.edges.values().map(|e| e.capacity).sum()
    }

    pub fn degree(&self, v: VertexId, mode: DegreeMode) -> Result<u64> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        Ok(self
            .incident(v)
            .map(|e| match mode {
                DegreeMode::Unit => e.capacity,
                DegreeMode::Raw => 1,
            })
            .sum())
    }

    /// Multiplies every capacity by `n`.
    pub fn scale_capacities(&self, n: u64) -> Multigraph {
        assert!(n >= 1, "scale factor must be positive");
        let mut g = self.clone();
        for e in g.edges.values_mut() {
            e.capacity *= n;
        }
        g
    }

    /// Vertices reachable from `start`, ignoring edge `skip`.
    pub fn reachable(&self, start: VertexId, skip: Option<EdgeId>) -> BTreeSet<VertexId> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in self.edges.values() {
            if Some(e.id) == skip {
                continue;
            }
            adj.entry(e.u).or_default().push(e.v);
            adj.entry(e.v).or_default().push(e.u);
        }
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(&x).into_iter().flatten() {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(v) => self.reachable(v, None).len() == self.vertex_count(),
        }
    }

    /// Subgraph induced by `keep`; edge ids are preserved.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Multigraph {
        let mut g = self.clone();
        g.names.retain(|v, _| keep.contains(v));
        g.edges.retain(|_, e| keep.contains(&e.u) && keep.contains(&e.v));
        g
    }

    /// Merges parallel edges; returns the merged graph and, for every new
    /// edge, the original edges it aggregates.
    pub fn merge_parallel(&self) -> (Multigraph, BTreeMap<EdgeId, Vec<EdgeId>>) {
        let mut groups: BTreeMap<(VertexId, VertexId), Vec<&Edge>> = BTreeMap::new();
        for e in self.edges.values() {
            groups.entry(e.key()).or_default().push(e);
        }
        let mut g = Multigraph { names: self.names.clone(), next_vertex: self.next_vertex, ..Default::default() };
        let mut origin = BTreeMap::new();
        for ((u, v), members) in groups {
            let cap = members.iter().map(|e| e.capacity).sum();
            let id = g.add_edge(u, v, cap);
            origin.insert(id, members.iter().map(|e| e.id).collect());
        }
        (g, origin)
    }
}

/// Checks the graph and terminal invariants, and that all terminals lie in
/// one connected component.
pub fn validate(g: &Multigraph, a: &TerminalSet) -> Result<()> {
    for e in g.edges() {
        if !g.contains_vertex(e.u) || !g.contains_vertex(e.v) {
            return Err(Error::InvalidGraph(format!("edge {} has a dangling endpoint", e.id)));
        }
        if e.capacity == 0 {
            return Err(Error::InvalidGraph(format!("edge {} has zero capacity", e.id)));
        }
        if e.u == e.v {
            return Err(Error::InvalidGraph(format!("edge {} is a self-loop", e.id)));
        }
    }
    a.check_against(g)?;
    let reach = g.reachable(a.source, None);
    if let Some(t) = a.sinks.iter().find(|t| !reach.contains(t)) {
        return Err(Error::DisconnectedTerminals(g.name(a.source).into(), g.name(*t).into()));
    }
    Ok(())
}

/// Removes every terminal-free part of the graph: components not containing
/// the terminals, and pieces hanging off a cut-edge on the far side from the
/// terminals. Pairwise terminal connectivities are unchanged.
pub fn prune_to_core(g: &Multigraph, a: &TerminalSet) -> Result<Multigraph> {
    validate(g, a)?;
    let mut core = g.induced(&g.reachable(a.source, None));
    loop {
        let mut changed = false;
        let candidates: Vec<Edge> = core.edges().filter(|e| e.capacity == 1).copied().collect();
        for e in candidates {
            if core.edge(e.id).is_err() {
                continue;
            }
            let side = core.reachable(e.u, Some(e.id));
            if side.contains(&e.v) {
                continue;
            }
            let u_terms = a.members().iter().filter(|t| side.contains(t)).count();
            let far = match u_terms {
                0 => side,
                n if n == a.len() => core.reachable(e.v, Some(e.id)),
                _ => return Err(Error::BridgeBetweenTerminals { edge: e.id.0 }),
            };
            let keep: BTreeSet<VertexId> = core.vertices().filter(|v| !far.contains(v)).collect();
            core = core.induced(&keep);
            changed = true;
        }
        if !changed {
            return Ok(core);
        }
    }
}

/// The multicast terminals: a source and an ordered list of sinks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TerminalSet {
    pub source: VertexId,
    pub sinks: Vec<VertexId>,
}

impl TerminalSet {
    pub fn new(source: VertexId, sinks: Vec<VertexId>) -> TerminalSet {
        TerminalSet { source, sinks }
    }

    /// Source first, then sinks in order.
    pub fn members(&self) -> Vec<VertexId> {
        std::iter::once(self.source).chain(self.sinks.iter().copied()).collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.source == v || self.sinks.contains(&v)
    }

    pub fn len(&self) -> usize {
        1 + self.sinks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn check_against(&self, g: &Multigraph) -> Result<()> {
        if self.sinks.is_empty() {
            return Err(Error::InvalidTerminals("need at least one sink".into()));
        }
        let members = self.members();
        let distinct: BTreeSet<_> = members.iter().collect();
        if distinct.len() != members.len() {
            return Err(Error::InvalidTerminals("repeated terminal".into()));
        }
        if let Some(v) = members.iter().find(|v| !g.contains_vertex(**v)) {
            return Err(Error::InvalidTerminals(format!("terminal {v} is not a vertex")));
        }
        Ok(())
    }
}

/// A graph together with its terminals, as read from or written to the
/// interchange format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Multigraph,
    pub terminals: TerminalSet,
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    vertices: Vec<String>,
    edges: Vec<(String, String, i64)>,
    source: String,
    sinks: Vec<String>,
    /// Explicit edge ids, parallel to `edges`. Absent means list order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_ids: Option<Vec<u64>>,
}

impl Instance {
    pub fn new(graph: Multigraph, terminals: TerminalSet) -> Instance {
        Instance { graph, terminals }
    }

    /// Parses the interchange format. Rejects self-loops, nonpositive
    /// capacities, unknown names and disconnected terminals.
    pub fn from_json(text: &str) -> Result<Instance> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut g = Multigraph::new();
        for name in &file.vertices {
            g.add_vertex(name)?;
        }
        if let Some(ids) = &file.edge_ids {
            if ids.len() != file.edges.len() {
                return Err(Error::Parse("edge_ids length differs from edges".into()));
            }
            if ids.iter().collect::<BTreeSet<_>>().len() != ids.len() {
                return Err(Error::Parse("duplicate edge id".into()));
            }
        }
        for (i, (u, v, c)) in file.edges.iter().enumerate() {
            if *c <= 0 {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} has nonpositive capacity {c}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            let (u, v) = (g.vertex_by_name(u)?, g.vertex_by_name(v)?);
            match &file.edge_ids {
                Some(ids) => g.insert_edge_with_id(EdgeId(ids[i]), u, v, *c as u64),
                None => {
                    g.add_edge(u, v, *c as u64);
                }
            }
        }
        let source = g.vertex_by_name(&file.source)?;
        let sinks = file.sinks.iter().map(|s| g.vertex_by_name(s)).collect::<Result<Vec<_>>>()?;
        let terminals = TerminalSet::new(source, sinks);
        validate(&g, &terminals)?;
        Ok(Instance { graph: g, terminals })
    }

    /// Writes the interchange format. Edge ids are emitted only when they
    /// differ from list order.
    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let edges: Vec<&Edge> = g.edges().collect();
        let dense = edges.iter().enumerate().all(|(i, e)| e.id.0 == i as u64);
        let file = InstanceFile {
            vertices: g.vertices().map(|v| g.name(v).to_string()).collect(),
            edges: edges.iter().map(|e| (g.name(e.u).into(), g.name(e.v).into(), e.capacity as i64)).collect(),
            source: g.name(self.terminals.source).into(),
            sinks: self.terminals.sinks.iter().map(|s| g.name(*s).into()).collect(),
            edge_ids: (!dense).then(|| edges.iter().map(|e| e.id.0).collect()),
        };
        serde_json::to_string(&file).expect("instance serializes")
    }
}
