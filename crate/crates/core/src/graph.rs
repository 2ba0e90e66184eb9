//! Simple undirected graphs, editing, induced subgraphs and the bridge
//! decomposition `G|W`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::GraphError;

pub type Vertex = usize;

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Panics if `a == b`; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Self::try_new(a, b).expect("edge endpoints must be distinct")
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge(a, b)),
            std::cmp::Ordering::Greater => Some(Edge(b, a)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(&self) -> Vertex {
        self.0
    }

    pub fn v(&self) -> Vertex {
        self.1
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        debug_assert!(self.contains(x));
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n())?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut b = GraphBuilder::new(n);
        for (a, c) in edges {
            b.try_add_edge(a, c)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n() && b < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    /// All edges in sorted order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m());
        for (a, nb) in self.adj.iter().enumerate() {
            for &b in nb.iter().filter(|&&b| b > a) {
                out.push(Edge(a, b));
            }
        }
        out
    }

    pub fn builder(&self) -> GraphBuilder {
        GraphBuilder {
            adj: self.adj.iter().map(|nb| nb.iter().copied().collect()).collect(),
        }
    }
}

/// Mutable construction helper; [`GraphBuilder::build`] produces the
/// immutable [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    adj: Vec<BTreeSet<Vertex>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { adj: vec![BTreeSet::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn try_add_edge(&mut self, a: Vertex, b: Vertex) -> Result<bool, GraphError> {
        let n = self.adj.len();
        if a >= n || b >= n {
            return Err(GraphError::VertexOutOfRange { vertex: a.max(b), n });
        }
        if a == b {
            return Err(GraphError::SelfLoop { vertex: a });
        }
        let fresh = self.adj[a].insert(b);
        self.adj[b].insert(a);
        Ok(fresh)
    }

    /// Adds `a-b`; panics on a self-loop or out-of-range vertex.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        self.try_add_edge(a, b).expect("invalid edge")
    }

    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) -> bool {
        if a >= self.adj.len() || b >= self.adj.len() {
            return false;
        }
        let had = self.adj[a].remove(&b);
        self.adj[b].remove(&a);
        had
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(a).is_some_and(|s| s.contains(&b))
    }

    pub fn build(self) -> Graph {
        Graph {
            adj: self.adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }
}

/// Old-to-new vertex correspondence produced when vertices are deleted or
/// a subgraph is extracted. Surviving vertices keep their relative order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    old_to_new: Vec<Option<Vertex>>,
    new_to_old: Vec<Vertex>,
}

impl Relabeling {
    fn from_kept(n_old: usize, keep: &[bool]) -> Self {
        let mut old_to_new = vec![None; n_old];
        let mut new_to_old = Vec::new();
        for v in 0..n_old {
            if keep[v] {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        Relabeling { old_to_new, new_to_old }
    }

    pub fn new_of(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn old_of(&self, new: Vertex) -> Vertex {
        self.new_to_old[new]
    }

    pub fn len(&self) -> usize {
        self.new_to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_to_old.is_empty()
    }
}

/// Removes vertices and edges, then adds edges (given in the original
/// labels). Removed vertices are compacted away; the returned relabeling
/// maps old ids to new ones.
pub fn edit(
    g: &Graph,
    remove_vertices: &[Vertex],
    remove_edges: &[Edge],
    add_edges: &[Edge],
) -> Result<(Graph, Relabeling), GraphError> {
    let n = g.n();
    let mut keep = vec![true; n];
    for &v in remove_vertices {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        keep[v] = false;
    }
    for e in remove_edges {
        if !g.has_edge(e.u(), e.v()) {
            return Err(GraphError::MissingEdge { edge: *e });
        }
    }
    for e in add_edges {
        if e.v() >= n {
            return Err(GraphError::VertexOutOfRange { vertex: e.v(), n });
        }
        if !keep[e.u()] || !keep[e.v()] {
            return Err(GraphError::EdgeOnRemovedVertex { edge: *e });
        }
    }
    let relabel = Relabeling::from_kept(n, &keep);
    let removed: BTreeSet<Edge> = remove_edges.iter().copied().collect();
    let mut b = GraphBuilder::new(relabel.len());
    for e in g.edges() {
        if removed.contains(&e) {
            continue;
        }
        if let (Some(a), Some(c)) = (relabel.new_of(e.u()), relabel.new_of(e.v())) {
            b.add_edge(a, c);
        }
    }
    for e in add_edges {
        let a = relabel.new_of(e.u()).expect("checked above");
        let c = relabel.new_of(e.v()).expect("checked above");
        b.add_edge(a, c);
    }
    Ok((b.build(), relabel))
}

/// `⟨S⟩`: the subgraph induced by `set`, relabeled in increasing order of
/// the original ids.
pub fn induced_subgraph(g: &Graph, set: &[Vertex]) -> (Graph, Relabeling) {
    let mut keep = vec![false; g.n()];
    for &v in set {
        keep[v] = true;
    }
    let relabel = Relabeling::from_kept(g.n(), &keep);
    let mut b = GraphBuilder::new(relabel.len());
    for (new_a, &old_a) in relabel.new_to_old.iter().enumerate() {
        for &old_b in g.neighbors(old_a) {
            if old_b > old_a {
                if let Some(new_b) = relabel.new_of(old_b) {
                    b.add_edge(new_a, new_b);
                }
            }
        }
    }
    (b.build(), relabel)
}

/// A bridge of `G|W`: one connected component of `G - W` together with the
/// vertices of `W` adjacent to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bridge {
    /// All vertices of the bridge, sorted.
    pub vertices: Vec<Vertex>,
    /// `vertices ∩ W`, sorted.
    pub attachments: Vec<Vertex>,
    /// `vertices ∖ W`, sorted; never empty.
    pub interior: Vec<Vertex>,
}

impl Bridge {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn attaches_to(&self, v: Vertex) -> bool {
        self.attachments.binary_search(&v).is_ok()
    }

    pub fn min_vertex(&self) -> Vertex {
        self.vertices[0]
    }
}

/// Bridges of `G|W`, sorted by smallest contained vertex. Edges with both
/// ends in `W` are not bridges here; query them with [`Graph::has_edge`].
pub fn bridges_of(g: &Graph, w: &[Vertex]) -> Vec<Bridge> {
    let n = g.n();
    let mut in_w = vec![false; n];
    for &v in w {
        in_w[v] = true;
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let mut attach_mark = vec![usize::MAX; n];
    for s in 0..n {
        if in_w[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut interior = Vec::new();
        let mut attachments = Vec::new();
        comp[s] = id;
        stack.push(s);
        while let Some(x) = stack.pop() {
            interior.push(x);
            for &y in g.neighbors(x) {
                if in_w[y] {
                    if attach_mark[y] != id {
                        attach_mark[y] = id;
                        attachments.push(y);
                    }
                } else if comp[y] == usize::MAX {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        interior.sort_unstable();
        attachments.sort_unstable();
        let mut vertices: Vec<Vertex> = interior.iter().chain(&attachments).copied().collect();
        vertices.sort_unstable();
        out.push(Bridge { vertices, attachments, interior });
    }
    out.sort_by_key(Bridge::min_vertex);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn edge_is_normalized() {
        let e = Edge::new(5, 2);
        assert_eq!(e.endpoints(), (2, 5));
        assert_eq!(e.other(2), 5);
        assert!(Edge::try_new(3, 3).is_none());
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 0)]),
            Err(GraphError::SelfLoop { vertex: 0 })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn remove_vertex_from_k4_gives_k3() {
        let (h, r) = edit(&complete(4), &[0], &[], &[]).unwrap();
        assert_eq!(h, complete(3));
        assert_eq!(r.new_of(0), None);
        assert_eq!(r.new_of(1), Some(0));
        assert_eq!(r.old_of(2), 3);
    }

    #[test]
    fn remove_edge_from_c5_gives_path() {
        let (h, _) = edit(&cycle(5), &[], &[Edge::new(0, 1)], &[]).unwrap();
        assert_eq!(h.m(), 4);
        let mut degs = h.degree_sequence();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn adding_existing_edge_is_noop() {
        let c4 = cycle(4);
        let (once, _) = edit(&c4, &[], &[], &[Edge::new(0, 2)]).unwrap();
        let (twice, _) = edit(&once, &[], &[], &[Edge::new(0, 2)]).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once.m(), 5);
    }

    #[test]
    fn edge_on_removed_vertex_is_an_error() {
        let err = edit(&cycle(4), &[1], &[], &[Edge::new(1, 3)]).unwrap_err();
        assert!(matches!(err, GraphError::EdgeOnRemovedVertex { .. }));
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, _) = induced_subgraph(&complete(5), &[1, 3, 4]);
        assert_eq!(k3, complete(3));
        let (ind, _) = induced_subgraph(&cycle(6), &[0, 2, 4]);
        assert_eq!(ind.n(), 3);
        assert_eq!(ind.m(), 0);
        let g = cycle(7);
        let all: Vec<_> = g.vertices().collect();
        assert_eq!(induced_subgraph(&g, &all).0, g);
    }

    #[test]
    fn c6_splits_into_two_bridges() {
        let b = bridges_of(&cycle(6), &[0, 3]);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(b[1].vertices, vec![0, 3, 4, 5]);
        assert_eq!(b[1].attachments, vec![0, 3]);
        assert_eq!(b[1].interior, vec![4, 5]);
    }

    #[test]
    fn single_bridge_and_empty_separator() {
        let b = bridges_of(&complete(4), &[0]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].vertices, vec![0, 1, 2, 3]);

        let g = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        let comps: Vec<_> = bridges_of(&g, &[]).into_iter().map(|b| b.vertices).collect();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3], vec![4]]);
    }

    #[test]
    fn ww_edges_are_not_bridges() {
        // triangle 0-1-2 plus pendant 3 on 2; W = {0, 1}
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let b = bridges_of(&g, &[0, 1]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].vertices, vec![0, 1, 2, 3]);
    }
}
