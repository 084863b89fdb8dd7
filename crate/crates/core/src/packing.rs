//! Exact Steiner tree packing.
//!
//! All solvers work on the graph with parallel edges merged, so the tree
//! families stay small, and then spread each tree's weight back over the
//! concrete parallel edges ([`realize`]).

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::connectivity::terminal_connectivity;
use crate::error::{Error, Result};
use crate::lp::Simplex;
use crate::multigraph::{validate, EdgeId, Multigraph, TerminalSet, VertexId};
use crate::rate::Rate;
use crate::scalar::LpScalar;
use crate::Rational;

/// Tree count above which enumeration refuses to continue.
pub const DEFAULT_TREE_LIMIT: usize = 5000;

/// An A-Steiner tree, identified by its edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SteinerTree {
    pub edges: BTreeSet<EdgeId>,
    pub vertices: BTreeSet<VertexId>,
}

impl SteinerTree {
    pub fn from_edges(g: &Multigraph, edges: impl IntoIterator<Item = EdgeId>) -> Result<SteinerTree> {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        let mut vertices = BTreeSet::new();
        for id in &edges {
            let e = g.edge(*id)?;
            vertices.insert(e.u);
            vertices.insert(e.v);
        }
        Ok(SteinerTree { edges, vertices })
    }

    /// Connected, acyclic, and spanning every terminal.
    pub fn is_steiner_tree(&self, g: &Multigraph, a: &TerminalSet) -> bool {
        if !a.members().iter().all(|t| self.vertices.contains(t)) {
            return false;
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        let mut dsu = Dsu::new(self.vertices.iter().copied());
        for id in &self.edges {
            match g.edge(*id) {
                Ok(e) if e.u != e.v => {
                    if !dsu.union(e.u, e.v) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Ordering used for deterministic output: size, then sorted edge ids.
    fn sort_key(&self) -> (usize, Vec<EdgeId>) {
        (self.edges.len(), self.edges.iter().copied().collect())
    }
}

/// Weighted collection of Steiner trees. Multiplicities are the rate each
/// tree carries; `denominator` is the number of time units `n` over which
/// every multiplicity becomes an integer count of trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerPacking {
    pub trees: Vec<(SteinerTree, Rate)>,
    pub denominator: u64,
}

impl SteinerPacking {
    pub fn empty() -> SteinerPacking {
        SteinerPacking { trees: Vec::new(), denominator: 1 }
    }

    /// Builds a packing, merging equal trees and fixing the denominator to
    /// the least common multiple of the multiplicities' denominators.
    pub fn from_weighted(trees: impl IntoIterator<Item = (SteinerTree, Rate)>) -> SteinerPacking {
        let mut merged: BTreeMap<(usize, Vec<EdgeId>), (SteinerTree, Rate)> = BTreeMap::new();
        for (t, w) in trees {
            if w == Rate::ZERO {
                continue;
            }
            merged.entry(t.sort_key()).and_modify(|(_, x)| *x = *x + w).or_insert((t, w));
        }
        let trees: Vec<(SteinerTree, Rate)> = merged.into_values().collect();
        let denominator = trees.iter().fold(1u64, |acc, (_, w)| acc.lcm(&(w.denom() as u64)));
        SteinerPacking { trees, denominator }
    }

    pub fn rate(&self) -> Rate {
        self.trees.iter().fold(Rate::ZERO, |acc, (_, w)| acc + *w)
    }

    /// Load each edge carries, in rate units.
    pub fn loads(&self) -> BTreeMap<EdgeId, Rate> {
        let mut load = BTreeMap::new();
        for (t, w) in &self.trees {
            for e in &t.edges {
                let entry = load.entry(*e).or_insert(Rate::ZERO);
                *entry = *entry + *w;
            }
        }
        load
    }

    /// Divides every multiplicity by `n` (undoing a capacity scale).
    pub fn downscale(&self, n: u64) -> SteinerPacking {
        let n = Rate::integer(n);
        SteinerPacking::from_weighted(self.trees.iter().map(|(t, w)| (t.clone(), *w / n)))
    }

    /// Expands into individual tree copies; every multiplicity must be an
    /// integer.
    pub fn copies(&self) -> Result<Vec<SteinerTree>> {
        let mut out = Vec::new();
        for (t, w) in &self.trees {
            if !w.is_integer() {
                return Err(Error::InvalidPacking(format!("multiplicity {w} is not integral")));
            }
            out.extend(std::iter::repeat_n(t.clone(), w.numer() as usize));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PackingFile::from(self)).expect("packing serializes")
    }

    /// Reads the packing format; vertex sets are rebuilt from `g`.
    pub fn from_json(g: &Multigraph, text: &str) -> Result<SteinerPacking> {
        let file: PackingFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let trees = file
            .trees
            .into_iter()
            .map(|t| Ok((SteinerTree::from_edges(g, t.edges.into_iter().map(EdgeId))?, t.multiplicity)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SteinerPacking { trees, denominator: file.denominator })
    }
}

#[derive(Serialize, Deserialize)]
struct PackingFile {
    denominator: u64,
    rate: Rate,
    trees: Vec<PackedTree>,
}

#[derive(Serialize, Deserialize)]
struct PackedTree {
    edges: Vec<u64>,
    multiplicity: Rate,
}

impl From<&SteinerPacking> for PackingFile {
    fn from(p: &SteinerPacking) -> PackingFile {
        PackingFile {
            denominator: p.denominator,
            rate: p.rate(),
            trees: p
                .trees
                .iter()
                .map(|(t, w)| PackedTree { edges: t.edges.iter().map(|e| e.0).collect(), multiplicity: *w })
                .collect(),
        }
    }
}

/// Result of a certificate check, with the reasons for rejection.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub problems: Vec<String>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }

    pub(crate) fn fail(&mut self, msg: String) {
        self.problems.push(msg);
    }
}

/// Checks that every tree is an A-Steiner tree of `g`, that multiplicities
/// are positive multiples of `1/denominator`, and that no edge is loaded
/// beyond its capacity.
pub fn verify_packing(g: &Multigraph, a: &TerminalSet, p: &SteinerPacking) -> Verdict {
    let mut v = Verdict::default();
    if p.denominator == 0 {
        v.fail("zero denominator".into());
        return v;
    }
    for (i, (t, w)) in p.trees.iter().enumerate() {
        if !t.is_steiner_tree(g, a) {
            v.fail(format!("tree {i} is not a Steiner tree"));
        }
        if *w == Rate::ZERO || (p.denominator as i64) % w.denom() != 0 {
            v.fail(format!("tree {i} has multiplicity {w} incompatible with denominator {}", p.denominator));
        }
    }
    for (e, load) in p.loads() {
        match g.edge(e) {
            Ok(edge) if load <= Rate::integer(edge.capacity) => {}
            Ok(edge) => v.fail(format!("edge {e} carries {load} > capacity {}", edge.capacity)),
            Err(_) => v.fail(format!("edge {e} is not in the graph")),
        }
    }
    v
}

struct Dsu {
    parent: BTreeMap<VertexId, VertexId>,
}

impl Dsu {
    fn new(vs: impl IntoIterator<Item = VertexId>) -> Dsu {
        Dsu { parent: vs.into_iter().map(|v| (v, v)).collect() }
    }

    fn find(&mut self, v: VertexId) -> VertexId {
        let p = self.parent[&v];
        if p == v {
            return v;
        }
        let r = self.find(p);
        self.parent.insert(v, r);
        r
    }

    fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent.insert(ra, rb);
        true
    }
}

/// All edge-minimal A-Steiner trees (every leaf is a terminal), sorted by
/// size and then by edge ids. Parallel edges give distinct trees.
pub fn enumerate_steiner_trees(g: &Multigraph, a: &TerminalSet, limit: usize) -> Result<Vec<SteinerTree>> {
    let terminals: BTreeSet<VertexId> = a.members().into_iter().collect();
    let relays: Vec<VertexId> = g.vertices().filter(|v| !terminals.contains(v)).collect();
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << relays.len()) {
        let mut span = terminals.clone();
        span.extend(relays.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v));
        let edges: Vec<(EdgeId, VertexId, VertexId)> = g
            .edges()
            .filter(|e| e.u != e.v && span.contains(&e.u) && span.contains(&e.v))
            .map(|e| (e.id, e.u, e.v))
            .collect();
        let mut search = SpanningSearch { span: &span, terminals: &terminals, edges: &edges, chosen: Vec::new(), found: &mut found, limit };
        search.run(0)?;
    }
    let mut trees: Vec<SteinerTree> =
        found.into_iter().map(|edges| SteinerTree::from_edges(g, edges).expect("edges from graph")).collect();
    trees.sort_by_key(|t| t.sort_key());
    Ok(trees)
}

/// Enumerates spanning trees of the subgraph on `span` whose leaves are all
/// terminals, by include/exclude branching in edge order.
struct SpanningSearch<'a> {
    span: &'a BTreeSet<VertexId>,
    terminals: &'a BTreeSet<VertexId>,
    edges: &'a [(EdgeId, VertexId, VertexId)],
    chosen: Vec<usize>,
    found: &'a mut Vec<Vec<EdgeId>>,
    limit: usize,
}

impl SpanningSearch<'_> {
    fn forest(&self, extra_from: Option<usize>) -> Dsu {
        let mut dsu = Dsu::new(self.span.iter().copied());
        for &i in &self.chosen {
            dsu.union(self.edges[i].1, self.edges[i].2);
        }
        if let Some(start) = extra_from {
            for e in &self.edges[start..] {
                dsu.union(e.1, e.2);
            }
        }
        dsu
    }

    fn spans(&self, dsu: &mut Dsu) -> bool {
        let mut it = self.span.iter();
        let first = dsu.find(*it.next().expect("nonempty span"));
        it.all(|v| dsu.find(*v) == first)
    }

    fn run(&mut self, next: usize) -> Result<()> {
        if self.chosen.len() + 1 == self.span.len() {
            let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
            for &i in &self.chosen {
                *degree.entry(self.edges[i].1).or_default() += 1;
                *degree.entry(self.edges[i].2).or_default() += 1;
            }
            if degree.iter().all(|(v, d)| *d >= 2 || self.terminals.contains(v)) {
                if self.found.len() >= self.limit {
                    return Err(Error::TooManyTrees { limit: self.limit });
                }
                self.found.push(self.chosen.iter().map(|&i| self.edges[i].0).collect());
            }
            return Ok(());
        }
        if next == self.edges.len() || !self.spans(&mut self.forest(Some(next))) {
            return Ok(());
        }
        let (_, u, v) = self.edges[next];
        let mut dsu = self.forest(None);
        if dsu.find(u) != dsu.find(v) {
            self.chosen.push(next);
            self.run(next + 1)?;
            self.chosen.pop();
        }
        self.run(next + 1)
    }
}

/// Trees of the merged graph, ready for the solvers.
struct MergedFamily {
    merged: Multigraph,
    origin: BTreeMap<EdgeId, Vec<EdgeId>>,
    trees: Vec<SteinerTree>,
    /// Rows: merged edges used by at least one tree.
    rows: Vec<EdgeId>,
}

impl MergedFamily {
    fn build(g: &Multigraph, a: &TerminalSet) -> Result<MergedFamily> {
        validate(g, a)?;
        let (merged, origin) = g.merge_parallel();
        let trees = enumerate_steiner_trees(&merged, a, DEFAULT_TREE_LIMIT)?;
        let rows: BTreeSet<EdgeId> = trees.iter().flat_map(|t| t.edges.iter().copied()).collect();
        Ok(MergedFamily { merged, origin, trees, rows: rows.into_iter().collect() })
    }

    fn capacity(&self, e: EdgeId) -> u64 {
        self.merged.edge(e).expect("merged edge").capacity
    }

    fn solve_lp<T: LpScalar>(&self) -> Option<crate::lp::LpSolution<T>> {
        let a: Vec<Vec<T>> = self
            .rows
            .iter()
            .map(|e| self.trees.iter().map(|t| if t.edges.contains(e) { T::one() } else { T::zero() }).collect())
            .collect();
        let b: Vec<T> = self.rows.iter().map(|e| T::from_u64(self.capacity(*e))).collect();
        let c: Vec<T> = self.trees.iter().map(|_| T::one()).collect();
        Simplex::new(&a, &b, &c).solve()
    }

    /// Spreads weighted merged trees over the original parallel edges.
    fn realize(&self, g: &Multigraph, weights: &[Rate]) -> SteinerPacking {
        // each merged edge is a line [0, cap); its originals occupy
        // consecutive intervals and trees are laid out one after another
        let mut offset: BTreeMap<EdgeId, Rate> = BTreeMap::new();
        let mut out = Vec::new();
        for (tree, &w) in self.trees.iter().zip(weights) {
            if w == Rate::ZERO {
                continue;
            }
            let mut cuts = BTreeSet::from([Rate::ZERO, w]);
            let starts: Vec<(EdgeId, Rate)> =
                tree.edges.iter().map(|e| (*e, offset.get(e).copied().unwrap_or(Rate::ZERO))).collect();
            for (e, start) in &starts {
                let mut boundary = Rate::ZERO;
                for orig in &self.origin[e] {
                    boundary = boundary + Rate::integer(g.edge(*orig).expect("original edge").capacity);
                    if boundary > *start && boundary < *start + w {
                        cuts.insert(boundary - *start);
                    }
                }
            }
            let cuts: Vec<Rate> = cuts.into_iter().collect();
            for piece in cuts.windows(2) {
                let edges = starts.iter().map(|(e, start)| {
                    let point = *start + piece[0];
                    let mut boundary = Rate::ZERO;
                    for orig in &self.origin[e] {
                        boundary = boundary + Rate::integer(g.edge(*orig).expect("original edge").capacity);
                        if point < boundary {
                            return *orig;
                        }
                    }
                    unreachable!("load exceeds capacity on {e}")
                });
                let t = SteinerTree::from_edges(g, edges.collect::<Vec<_>>()).expect("original edges");
                out.push((t, piece[1] - piece[0]));
            }
            for (e, start) in starts {
                offset.insert(e, start + w);
            }
        }
        SteinerPacking::from_weighted(out)
    }
}

/// Exact fractional routing capacity: the optimum of the tree-packing LP
/// `max Σ y_T  s.t.  Σ_{T ∋ e} y_T ≤ c(e), y ≥ 0`, solved over exact
/// rationals. Achievable rates `h/n` are exactly the scaled rational
/// feasible points, so this optimum is the supremum of routing rates.
pub fn fractional_capacity_lp(g: &Multigraph, a: &TerminalSet) -> Result<(Rate, SteinerPacking)> {
    let family = MergedFamily::build(g, a)?;
    let sol = family.solve_lp::<Rational>().expect("packing LP is bounded");
    let weights: Vec<Rate> = sol.primal.iter().map(|x| Rate::from_big(x).expect("LP weight fits in i64")).collect();
    let value = Rate::from_big(&sol.value).expect("LP value fits in i64");
    Ok((value, family.realize(g, &weights)))
}

/// The packing LP solved in floating point; a cross-check only.
pub fn fractional_capacity_f64(g: &Multigraph, a: &TerminalSet) -> Result<f64> {
    let family = MergedFamily::build(g, a)?;
    Ok(family.solve_lp::<f64>().expect("packing LP is bounded").value)
}

/// Maximum number of edge-disjoint A-Steiner trees, where an edge of
/// capacity `c` may be shared by `c` trees. Exact by branch and bound.
pub fn max_integer_packing(g: &Multigraph, a: &TerminalSet) -> Result<(u64, SteinerPacking)> {
    let family = MergedFamily::build(g, a)?;
    let lp = family.solve_lp::<Rational>().expect("packing LP is bounded");
    let ceiling = lp.value.floor().to_integer().try_into().unwrap_or(0u64);
    let row_index: BTreeMap<EdgeId, usize> = family.rows.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let tree_rows: Vec<Vec<usize>> =
        family.trees.iter().map(|t| t.edges.iter().map(|e| row_index[e]).collect()).collect();
    let residual: Vec<u64> = family.rows.iter().map(|e| family.capacity(*e)).collect();
    let mut bb = BranchAndBound {
        family: &family,
        terminals: a,
        tree_rows: &tree_rows,
        ceiling,
        best: Vec::new(),
        chosen: Vec::new(),
        residual,
    };
    bb.search(0);
    let mut counts = vec![0u64; family.trees.len()];
    for &t in &bb.best {
        counts[t] += 1;
    }
    let k = bb.best.len() as u64;
    let weights: Vec<Rate> = counts.into_iter().map(Rate::integer).collect();
    Ok((k, family.realize(g, &weights)))
}

struct BranchAndBound<'a> {
    family: &'a MergedFamily,
    terminals: &'a TerminalSet,
    tree_rows: &'a [Vec<usize>],
    ceiling: u64,
    best: Vec<usize>,
    chosen: Vec<usize>,
    residual: Vec<u64>,
}

impl BranchAndBound<'_> {
    fn fits(&self, t: usize) -> bool {
        self.tree_rows[t].iter().all(|&r| self.residual[r] > 0)
    }

    /// Upper bound on further trees using only trees `from..`: the residual
    /// terminal connectivity and a capacity-counting bound.
    fn bound(&self, from: usize) -> u64 {
        let usable: Vec<usize> = (from..self.tree_rows.len()).filter(|&t| self.fits(t)).collect();
        let Some(&smallest) = usable.first() else { return 0 };
        let rows: BTreeSet<usize> = usable.iter().flat_map(|&t| self.tree_rows[t].iter().copied()).collect();
        let capacity: u64 = rows.iter().map(|&r| self.residual[r]).sum();
        let by_capacity = capacity / self.tree_rows[smallest].len() as u64;
        let mut residual_graph = self.family.merged.clone();
        let keep: BTreeMap<EdgeId, u64> = rows.iter().map(|&r| (self.family.rows[r], self.residual[r])).collect();
        let ids: Vec<EdgeId> = residual_graph.edges().map(|e| e.id).collect();
        for id in ids {
            residual_graph.set_capacity(id, keep.get(&id).copied().unwrap_or(0));
        }
        let by_cut = terminal_connectivity(&residual_graph, self.terminals).unwrap_or(0);
        by_capacity.min(by_cut)
    }

    fn search(&mut self, from: usize) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.best.len() as u64 >= self.ceiling {
            return;
        }
        if self.chosen.len() as u64 + self.bound(from) <= self.best.len() as u64 {
            return;
        }
        for t in from..self.tree_rows.len() {
            if !self.fits(t) {
                continue;
            }
            for &r in &self.tree_rows[t] {
                self.residual[r] -= 1;
            }
            self.chosen.push(t);
            self.search(t);
            self.chosen.pop();
            for &r in &self.tree_rows[t] {
                self.residual[r] += 1;
            }
            if self.best.len() as u64 >= self.ceiling {
                return;
            }
        }
    }
}

/// Half-integer routing capacity: the integer packing of the doubled graph,
/// halved. The packing refers to the edges of `g` with multiplicities in
/// halves.
pub fn half_integer_capacity(g: &Multigraph, a: &TerminalSet) -> Result<(Rate, SteinerPacking)> {
    let (k, packing) = max_integer_packing(&g.scale_capacities(2), a)?;
    let mut halved = packing.downscale(2);
    halved.denominator = 2;
    Ok((Rate::new(k as i64, 2), halved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::fixtures::*;

    fn is_minimal(g: &Multigraph, a: &TerminalSet, edges: &[EdgeId]) -> bool {
        let t = SteinerTree::from_edges(g, edges.iter().copied()).unwrap();
        if !t.is_steiner_tree(g, a) {
            return false;
        }
        edges.iter().all(|drop| {
            let rest: Vec<EdgeId> = edges.iter().copied().filter(|e| e != drop).collect();
            let t = SteinerTree::from_edges(g, rest).unwrap();
            !a.members().iter().all(|v| t.vertices.contains(v)) || !connected_on(g, &t)
        })
    }

    fn connected_on(g: &Multigraph, t: &SteinerTree) -> bool {
        let sub = g.induced(&t.vertices);
        let mut h = sub.clone();
        for e in sub.edges() {
            if !t.edges.contains(&e.id) {
                h.remove_edge(e.id);
            }
        }
        h.is_connected()
    }

    /// Every edge subset, filtered to minimal Steiner trees.
    fn brute_trees(g: &Multigraph, a: &TerminalSet) -> BTreeSet<Vec<EdgeId>> {
        let ids: Vec<EdgeId> = g.edges().map(|e| e.id).collect();
        (0u32..1 << ids.len())
            .map(|m| ids.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, e)| *e).collect::<Vec<_>>())
            .filter(|s| !s.is_empty() && is_minimal(g, a, s))
            .collect()
    }

    #[test]
    fn enumerate_triangle_and_edge() {
        let t = triangle();
        let trees = enumerate_steiner_trees(&t.graph, &t.terminals, 100).unwrap();
        assert_eq!(trees.len(), 3);
        assert!(trees.iter().all(|x| x.edges.len() == 2));
        let g = Multigraph::from_named(&["s", "t"], &[("s", "t", 1)]).unwrap();
        let a = TerminalSet::new(VertexId(0), vec![VertexId(1)]);
        assert_eq!(enumerate_steiner_trees(&g, &a, 100).unwrap().len(), 1);
    }

    #[test]
    fn enumerate_k4_matches_cayley() {
        let t = k4();
        let trees = enumerate_steiner_trees(&t.graph, &t.terminals, 100).unwrap();
        assert_eq!(trees.len(), 16);
        let brute = brute_trees(&t.graph, &t.terminals);
        let ours: BTreeSet<Vec<EdgeId>> = trees.iter().map(|t| t.edges.iter().copied().collect()).collect();
        assert_eq!(ours, brute);
        assert_eq!(enumerate_steiner_trees(&t.graph, &t.terminals, 15), Err(Error::TooManyTrees { limit: 15 }));
    }

    #[test]
    fn enumerate_with_relays_matches_brute_force() {
        let t = instance(
            &["s", "a", "b", "x", "y"],
            &[("s", "x", 1), ("x", "a", 1), ("a", "y", 1), ("y", "b", 1), ("b", "s", 1), ("x", "y", 1), ("s", "a", 1)],
            "s",
            &["a", "b"],
        );
        let trees = enumerate_steiner_trees(&t.graph, &t.terminals, 1000).unwrap();
        let ours: BTreeSet<Vec<EdgeId>> = trees.iter().map(|t| t.edges.iter().copied().collect()).collect();
        assert_eq!(ours, brute_trees(&t.graph, &t.terminals));
    }

    #[test]
    fn integer_packing_examples() {
        let t = triangle();
        let (k, p) = max_integer_packing(&t.graph, &t.terminals).unwrap();
        assert_eq!(k, 1);
        assert!(verify_packing(&t.graph, &t.terminals, &p).ok());
        let t = k4();
        let (k, p) = max_integer_packing(&t.graph, &t.terminals).unwrap();
        assert_eq!(k, 2);
        assert_eq!(p.rate(), Rate::integer(2));
        assert!(verify_packing(&t.graph, &t.terminals, &p).ok());
    }

    #[test]
    fn half_integer_examples() {
        let t = triangle();
        let (r, p) = half_integer_capacity(&t.graph, &t.terminals).unwrap();
        assert_eq!(r, Rate::new(3, 2));
        assert_eq!(p.denominator, 2);
        assert!(verify_packing(&t.graph, &t.terminals, &p).ok());
        let g = Multigraph::from_named(&["s", "t"], &[("s", "t", 1)]).unwrap();
        let a = TerminalSet::new(VertexId(0), vec![VertexId(1)]);
        assert_eq!(half_integer_capacity(&g, &a).unwrap().0, Rate::ONE);
    }

    #[test]
    fn fractional_examples() {
        let t = triangle();
        let (r, p) = fractional_capacity_lp(&t.graph, &t.terminals).unwrap();
        assert_eq!(r, Rate::new(3, 2));
        assert_eq!(p.trees.len(), 3);
        assert!(p.trees.iter().all(|(_, w)| *w == Rate::new(1, 2)));
        assert!(verify_packing(&t.graph, &t.terminals, &p).ok());
        let g = Multigraph::from_named(&["s", "t"], &[("s", "t", 4)]).unwrap();
        let a = TerminalSet::new(VertexId(0), vec![VertexId(1)]);
        assert_eq!(fractional_capacity_lp(&g, &a).unwrap().0, Rate::integer(4));
        assert!((fractional_capacity_f64(&t.graph, &t.terminals).unwrap() - 1.5).abs() < 1e-9);
    }

    #[test]
    fn parallel_edges_are_realized_separately() {
        let t = instance(&["s", "t", "u"], &[("s", "t", 1), ("s", "t", 2), ("t", "u", 1), ("t", "u", 1), ("u", "s", 1)], "s", &["t", "u"]);
        let (k, p) = max_integer_packing(&t.graph, &t.terminals).unwrap();
        // x(st+tu) = 2, x(st+us) = 1 saturates every edge
        assert_eq!(k, 3);
        assert!(verify_packing(&t.graph, &t.terminals, &p).ok());
        let (r, p) = fractional_capacity_lp(&t.graph, &t.terminals).unwrap();
        assert_eq!(r, Rate::integer(3));
        assert!(verify_packing(&t.graph, &t.terminals, &p).ok());
    }

    #[test]
    fn verify_rejects_overloaded_edge() {
        let t = triangle();
        let trees = enumerate_steiner_trees(&t.graph, &t.terminals, 10).unwrap();
        let p = SteinerPacking::from_weighted([(trees[0].clone(), Rate::ONE), (trees[1].clone(), Rate::ONE)]);
        assert!(!verify_packing(&t.graph, &t.terminals, &p).ok());
        let bogus = SteinerPacking::from_weighted([(SteinerTree::from_edges(&t.graph, [EdgeId(0)]).unwrap(), Rate::ONE)]);
        assert!(!verify_packing(&t.graph, &t.terminals, &bogus).ok());
    }

    #[test]
    fn packing_json_round_trip() {
        let t = triangle();
        let (_, p) = fractional_capacity_lp(&t.graph, &t.terminals).unwrap();
        assert_eq!(SteinerPacking::from_json(&t.graph, &p.to_json()).unwrap(), p);
    }
}
