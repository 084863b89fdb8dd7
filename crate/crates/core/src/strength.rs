//! Edge strength `η(A) = min E(P) / (|P| − 1)` over partitions of the
//! vertex set whose blocks each contain a terminal. It bounds the coding
//! capacity from above.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::multigraph::{validate, Multigraph, TerminalSet, VertexId};
use crate::rate::Rate;

/// Largest vertex count accepted by the partition enumeration.
pub const MAX_STRENGTH_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalPartition {
    /// Blocks in order of their smallest vertex.
    pub blocks: Vec<BTreeSet<VertexId>>,
    /// Total capacity of edges between distinct blocks.
    pub crossing: u64,
}

impl TerminalPartition {
    pub fn ratio(&self) -> Rate {
        Rate::new(self.crossing as i64, self.blocks.len() as i64 - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockMode {
    /// Every terminal-covering partition.
    Any,
    /// Only partitions whose blocks induce connected subgraphs.
    Connected,
}

/// Exact edge strength with the lexicographically least minimizing
/// partition (blocks labelled in vertex id order).
pub fn edge_strength(g: &Multigraph, a: &TerminalSet) -> Result<(Rate, TerminalPartition)> {
    edge_strength_with(g, a, BlockMode::Any)
}

pub fn edge_strength_with(g: &Multigraph, a: &TerminalSet, mode: BlockMode) -> Result<(Rate, TerminalPartition)> {
    validate(g, a)?;
    let n = g.vertex_count();
    if n > MAX_STRENGTH_VERTICES {
        return Err(Error::TooManyVertices { count: n, limit: MAX_STRENGTH_VERTICES });
    }
    let vertices: Vec<VertexId> = g.vertices().collect();
    let index = |v: VertexId| vertices.binary_search(&v).expect("vertex of g");
    let mut cap = vec![vec![0u64; n]; n];
    for e in g.edges() {
        let (i, j) = (index(e.u), index(e.v));
        cap[i][j] += e.capacity;
        cap[j][i] += e.capacity;
    }
    let is_terminal: Vec<bool> = vertices.iter().map(|v| a.contains(*v)).collect();
    let mut terminals_after = vec![0usize; n + 1];
    for i in (0..n).rev() {
        terminals_after[i] = terminals_after[i + 1] + is_terminal[i] as usize;
    }
    let mut search = Search {
        cap: &cap,
        is_terminal: &is_terminal,
        terminals_after: &terminals_after,
        mode,
        labels: Vec::with_capacity(n),
        has_terminal: Vec::new(),
        best: None,
    };
    search.run(0, 0);
    let (ratio, labels) = search.best.expect("at least two terminals give a partition");
    let blocks_count = labels.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![BTreeSet::new(); blocks_count];
    for (i, &b) in labels.iter().enumerate() {
        blocks[b].insert(vertices[i]);
    }
    let crossing = crossing(&cap, &labels);
    Ok((ratio, TerminalPartition { blocks, crossing }))
}

fn crossing(cap: &[Vec<u64>], labels: &[usize]) -> u64 {
    let mut total = 0;
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if labels[i] != labels[j] {
                total += cap[i][j];
            }
        }
    }
    total
}

/// Restricted-growth-string enumeration; blocks lacking a terminal must be
/// fillable by the terminals still to come.
struct Search<'a> {
    cap: &'a [Vec<u64>],
    is_terminal: &'a [bool],
    terminals_after: &'a [usize],
    mode: BlockMode,
    labels: Vec<usize>,
    has_terminal: Vec<bool>,
    best: Option<(Rate, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, crossing: u64) {
        let n = self.cap.len();
        if i == n {
            self.leaf(crossing);
            return;
        }
        let blocks = self.has_terminal.len();
        for b in 0..=blocks {
            let opened = b == blocks;
            if opened {
                self.has_terminal.push(false);
            }
            let before = self.has_terminal[b];
            self.has_terminal[b] |= self.is_terminal[i];
            let missing = self.has_terminal.iter().filter(|t| !**t).count();
            if missing <= self.terminals_after[i + 1] {
                let added: u64 = (0..i).filter(|&j| self.labels[j] != b).map(|j| self.cap[i][j]).sum();
                self.labels.push(b);
                self.run(i + 1, crossing + added);
                self.labels.pop();
            }
            self.has_terminal[b] = before;
            if opened {
                self.has_terminal.pop();
            }
        }
    }

    fn leaf(&mut self, crossing: u64) {
        let blocks = self.has_terminal.len();
        if blocks < 2 {
            return;
        }
        if self.mode == BlockMode::Connected && !self.blocks_connected() {
            return;
        }
        let ratio = Rate::new(crossing as i64, blocks as i64 - 1);
        // enumeration runs in lexicographic order, so keep the first minimum
        if self.best.as_ref().is_none_or(|(r, _)| ratio < *r) {
            self.best = Some((ratio, self.labels.clone()));
        }
    }

    fn blocks_connected(&self) -> bool {
        let n = self.labels.len();
        (0..self.has_terminal.len()).all(|b| {
            let members: Vec<usize> = (0..n).filter(|&i| self.labels[i] == b).collect();
            let mut seen = vec![false; n];
            let mut stack = vec![members[0]];
            seen[members[0]] = true;
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for &y in &members {
                    if !seen[y] && self.cap[x][y] > 0 {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            count == members.len()
        })
    }
}
