//! De Bruijn graphs of local rules.
//!
//! Nodes are the `2^(2r)` words of length `2r`; the edge for window `k`
//! (a `(2r+1)`-cell neighbourhood) runs from its first `2r` cells to its last
//! `2r` cells. A closed walk of length `n` is exactly a circular configuration
//! of `n` cells, and the edge labels along the walk are that configuration's
//! image under the rule.

use std::collections::VecDeque;
use std::fmt;
use std::fmt::Write as _;

use crate::config::{low_mask, Configuration};
use crate::necklace::necklaces;
use crate::patterns::neighbourhood_string;
use crate::rule::LocalRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    pub window: u32,
    pub output: u8,
    /// Output differs from the window's centre cell.
    pub active: bool,
}

impl Edge {
    /// The cell this edge appends to the walk.
    pub fn appended(&self) -> u8 {
        (self.window & 1) as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeBruijnGraph {
    radius: u32,
    edges: Vec<Edge>,
}

impl DeBruijnGraph {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn node_count(&self) -> usize {
        1 << (2 * self.radius)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges, indexed by window value.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, window: u32) -> &Edge {
        &self.edges[window as usize]
    }

    pub fn out_edges(&self, node: u32) -> [&Edge; 2] {
        [self.edge(node << 1), self.edge((node << 1) | 1)]
    }

    pub fn in_edges(&self, node: u32) -> [&Edge; 2] {
        let high = 1u32 << (2 * self.radius);
        [self.edge(node), self.edge(high | node)]
    }

    /// Edge from `from` to `to`, if they are adjacent.
    pub fn edge_between(&self, from: u32, to: u32) -> Option<&Edge> {
        self.out_edges(from).into_iter().find(|e| e.to == to)
    }

    /// Edges of the subgraph `B_target`.
    pub fn subgraph(&self, target: u8) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.output == target)
    }

    pub fn node_label(&self, node: u32) -> String {
        neighbourhood_string(node, 2 * self.radius)
    }

    /// Edge list, one `u v output active` line per edge, nodes as bit strings.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{} {} {} {}",
                self.node_label(e.from),
                self.node_label(e.to),
                e.output,
                u8::from(e.active)
            );
        }
        out
    }
}

/// # Panics
/// If the rule has radius 0: its graph would have parallel edges.
pub fn build_debruijn(rule: &LocalRule) -> DeBruijnGraph {
    let r = rule.radius();
    assert!(r >= 1, "de Bruijn graphs need radius at least 1");
    let node_mask = low_mask(2 * r as usize) as u32;
    let edges = (0..rule.table().len() as u32)
        .map(|k| Edge {
            from: k >> 1,
            to: k & node_mask,
            window: k,
            output: rule.output(k),
            active: rule.is_active(k),
        })
        .collect();
    DeBruijnGraph { radius: r, edges }
}

/// What a [`CycleWitness`] counts along its walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessWeight {
    /// Edges whose transition is active.
    Active,
    /// Cells equal to 1 appended along the walk (the configuration's 1-count).
    Ones,
}

/// A closed walk in a de Bruijn graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub radius: u32,
    /// `nodes[i] -> nodes[i + 1]`, and the last node back to the first.
    pub nodes: Vec<u32>,
    pub weight_kind: WitnessWeight,
    pub weight: usize,
}

impl CycleWitness {
    fn from_nodes(graph: &DeBruijnGraph, nodes: Vec<u32>, weight_kind: WitnessWeight) -> Self {
        let mut w = CycleWitness {
            radius: graph.radius,
            nodes,
            weight_kind,
            weight: 0,
        };
        w.weight = w.recount(graph).expect("walk is closed");
        w
    }

    /// The walk traced by a configuration: node `j` holds cells
    /// `j-2r .. j-1`, so the edge leaving it appends cell `j`.
    pub fn from_configuration(
        graph: &DeBruijnGraph,
        config: &Configuration,
        weight_kind: WitnessWeight,
    ) -> Self {
        let two_r = 2 * graph.radius as isize;
        let nodes = (0..config.len() as isize)
            .map(|j| (j - two_r..j).fold(0u32, |acc, i| (acc << 1) | config.get(i) as u32))
            .collect();
        Self::from_nodes(graph, nodes, weight_kind)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Windows of the walk's edges, in order.
    pub fn windows(&self) -> impl Iterator<Item = u32> + '_ {
        let node_mask = low_mask(2 * self.radius as usize) as u32;
        let n = self.nodes.len();
        (0..n).map(move |i| {
            let next = self.nodes[(i + 1) % n];
            debug_assert_eq!(next >> 1, self.nodes[i] & (node_mask >> 1));
            (self.nodes[i] << 1) | (next & 1)
        })
    }

    /// The circular configuration this walk spells out.
    pub fn configuration(&self) -> Configuration {
        let cells: Vec<u8> = self.windows().map(|w| (w & 1) as u8).collect();
        Configuration::from_cells(&cells)
    }

    /// Re-walks the cycle and counts its weight; `None` if consecutive nodes
    /// are not adjacent.
    pub fn recount(&self, graph: &DeBruijnGraph) -> Option<usize> {
        let n = self.nodes.len();
        let mut weight = 0;
        for i in 0..n {
            let e = graph.edge_between(self.nodes[i], self.nodes[(i + 1) % n])?;
            weight += match self.weight_kind {
                WitnessWeight::Active => usize::from(e.active),
                WitnessWeight::Ones => e.appended() as usize,
            };
        }
        Some(weight)
    }
}

impl fmt::Display for CycleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let width = 2 * self.radius;
        for (i, &v) in self.nodes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", neighbourhood_string(v, width))?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// `active(u -> v) = potential[u] ^ potential[v]` on every edge, so every
    /// closed walk has an even number of active transitions.
    Certified { potential: Vec<u8> },
    /// A closed walk with an odd number of active transitions.
    Refuted(CycleWitness),
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certification::Certified { .. })
    }
}

/// Decides whether every closed walk carries an even number of active edges.
///
/// Assigns a GF(2) potential along a breadth-first out-tree from node 0 and
/// checks every edge against it. An inconsistent edge `u -> v` yields two
/// closed walks through node 0, `tree(u) + (u->v) + back(v)` and
/// `tree(v) + back(v)`, whose weights differ by one; the odd one is returned.
pub fn certify_pairwise_parity(graph: &DeBruijnGraph) -> Certification {
    let nodes = graph.node_count();
    let mut potential = vec![u8::MAX; nodes];
    let mut tree_parent: Vec<Option<u32>> = vec![None; nodes];
    potential[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(u) = queue.pop_front() {
        for e in graph.out_edges(u) {
            if potential[e.to as usize] == u8::MAX {
                potential[e.to as usize] = potential[u as usize] ^ u8::from(e.active);
                tree_parent[e.to as usize] = Some(u);
                queue.push_back(e.to);
            }
        }
    }
    let bad = graph
        .edges()
        .iter()
        .find(|e| potential[e.from as usize] ^ potential[e.to as usize] != u8::from(e.active));
    let Some(bad) = bad else {
        return Certification::Certified { potential };
    };

    // next hop towards node 0, from a breadth-first search on reversed edges
    let mut toward_root: Vec<Option<u32>> = vec![None; nodes];
    let mut reached = vec![false; nodes];
    reached[0] = true;
    let mut queue = VecDeque::from([0u32]);
    while let Some(v) = queue.pop_front() {
        for e in graph.in_edges(v) {
            if !reached[e.from as usize] {
                reached[e.from as usize] = true;
                toward_root[e.from as usize] = Some(v);
                queue.push_back(e.from);
            }
        }
    }
    let tree_path = |target: u32| -> Vec<u32> {
        let mut path = vec![target];
        let mut cur = target;
        while let Some(p) = tree_parent[cur as usize] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    };
    let back_path = |from: u32| -> Vec<u32> {
        // nodes strictly after `from`, up to but excluding 0
        let mut path = Vec::new();
        let mut cur = from;
        while let Some(next) = toward_root[cur as usize] {
            if next == 0 {
                break;
            }
            path.push(next);
            cur = next;
        }
        path
    };

    let mut via_edge = tree_path(bad.from);
    if bad.to != 0 {
        via_edge.push(bad.to);
        via_edge.extend(back_path(bad.to));
    }
    let first = CycleWitness::from_nodes(graph, via_edge, WitnessWeight::Active);
    if first.weight % 2 == 1 {
        return Certification::Refuted(first);
    }
    let mut direct = tree_path(bad.to);
    if bad.to != 0 {
        direct.extend(back_path(bad.to));
    }
    let second = CycleWitness::from_nodes(graph, direct, WitnessWeight::Active);
    debug_assert_eq!(second.weight % 2, 1);
    Certification::Refuted(second)
}

/// Canonical representatives of the configurations of `len` cells whose every
/// window outputs `target`, i.e. the pre-images of the homogeneous
/// `target`-configuration up to rotation.
pub fn preimage_necklaces(rule: &LocalRule, target: u8, len: usize) -> Vec<Configuration> {
    let image = Configuration::homogeneous_of(target, len);
    necklaces(len).filter(|c| rule.step(c) == image).collect()
}

/// Searches `B_target` for a closed walk of even length at most `max_length`
/// that spells a configuration with an odd number of 1s.
///
/// Lengths are tried in increasing order, and configurations within a length
/// in increasing index order.
pub fn find_even_length_odd_parity_cycle(
    graph: &DeBruijnGraph,
    target: u8,
    max_length: usize,
) -> Option<CycleWitness> {
    assert!(max_length <= 62, "exhaustive search is limited to 62 cells");
    for len in (2..=max_length).step_by(2) {
        for v in 0..1u64 << len {
            if v.count_ones() % 2 == 0 {
                continue;
            }
            let c = Configuration::from_index(v, len);
            let w = CycleWitness::from_configuration(graph, &c, WitnessWeight::Ones);
            if w.windows().all(|k| graph.edge(k).output == target) {
                return Some(w);
            }
        }
    }
    None
}

/// Exact test: does the subgraph made of `windows` contain a closed walk of
/// even length spelling an odd number of 1s? Reachability in the product of
/// the subgraph with (length parity, ones parity).
pub fn window_set_has_even_odd_cycle(radius: u32, windows: &[u32]) -> bool {
    let nodes = 1usize << (2 * radius);
    let node_mask = (nodes - 1) as u32;
    let mut adj: Vec<Vec<(u32, u8)>> = vec![Vec::new(); nodes];
    for &k in windows {
        adj[(k >> 1) as usize].push((k & node_mask, (k & 1) as u8));
    }
    let state = |v: u32, len: u8, ones: u8| (v as usize) * 4 + (len as usize) * 2 + ones as usize;
    for start in 0..nodes as u32 {
        if adj[start as usize].is_empty() {
            continue;
        }
        let mut seen = vec![false; nodes * 4];
        let mut stack = vec![(start, 0u8, 0u8)];
        seen[state(start, 0, 0)] = true;
        while let Some((u, len, ones)) = stack.pop() {
            for &(v, bit) in &adj[u as usize] {
                let s = (v, len ^ 1, ones ^ bit);
                if !seen[state(s.0, s.1, s.2)] {
                    seen[state(s.0, s.1, s.2)] = true;
                    stack.push(s);
                }
            }
        }
        if seen[state(start, 0, 1)] {
            return true;
        }
    }
    false
}
