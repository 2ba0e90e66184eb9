//! Components, blocks, 2-separators and the 3-connectivity test.

use crate::error::Error;
use crate::graph::{Graph, Vertex};

/// A pair of vertices whose removal disconnects a graph.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Separator2(pub Vertex, pub Vertex);

impl Separator2 {
    pub fn vertices(&self) -> [Vertex; 2] {
        [self.0, self.1]
    }
}

/// Connected components of `g` with the vertices in `removed` deleted.
pub fn components_without(g: &Graph, removed: &[bool]) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut seen = removed.to_vec();
    seen.resize(n, false);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Maximal connected vertex sets, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<Vertex>> {
    components_without(g, &[])
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

struct Lowpoint {
    disc: Vec<usize>,
    low: Vec<usize>,
}

trait LowpointVisitor {
    fn edge(&mut self, _v: Vertex, _w: Vertex) {}
    fn tree_edge_done(&mut self, _parent: Vertex, _child: Vertex, _lp: &Lowpoint) {}
    fn root_done(&mut self, _root: Vertex, _children: usize) {}
}

/// Iterative DFS computing discovery times and lowpoints. Tree and back
/// edges are reported in discovery order.
fn lowpoint_dfs(g: &Graph, removed: &[bool], visitor: &mut impl LowpointVisitor) {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let is_removed = |v: Vertex| removed.get(v).copied().unwrap_or(false);
    let mut lp = Lowpoint { disc: vec![UNSEEN; n], low: vec![0; n] };
    let mut time = 0;
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in 0..n {
        if lp.disc[root] != UNSEEN || is_removed(root) {
            continue;
        }
        lp.disc[root] = time;
        lp.low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if idx < g.degree(v) {
                top.2 += 1;
                let w = g.neighbors(v)[idx];
                if is_removed(w) || w == parent {
                    continue;
                }
                if lp.disc[w] == UNSEEN {
                    visitor.edge(v, w);
                    lp.disc[w] = time;
                    lp.low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if lp.disc[w] < lp.disc[v] {
                    visitor.edge(v, w);
                    lp.low[v] = lp.low[v].min(lp.disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    lp.low[parent] = lp.low[parent].min(lp.low[v]);
                    visitor.tree_edge_done(parent, v, &lp);
                }
            }
        }
        visitor.root_done(root, root_children);
    }
}

struct CutVertices {
    cut: Vec<bool>,
    roots: Vec<(Vertex, usize)>,
}

impl LowpointVisitor for CutVertices {
    fn tree_edge_done(&mut self, parent: Vertex, child: Vertex, lp: &Lowpoint) {
        if lp.low[child] >= lp.disc[parent] {
            self.cut[parent] = true;
        }
    }

    fn root_done(&mut self, root: Vertex, children: usize) {
        self.roots.push((root, children));
    }
}

/// Cut vertices of `g` minus `removed`, as a membership mask.
pub fn articulation_points_without(g: &Graph, removed: &[bool]) -> Vec<bool> {
    let mut v = CutVertices { cut: vec![false; g.n()], roots: Vec::new() };
    lowpoint_dfs(g, removed, &mut v);
    for &(root, children) in &v.roots {
        v.cut[root] = children >= 2;
    }
    v.cut
}

pub fn articulation_points(g: &Graph) -> Vec<Vertex> {
    let mask = articulation_points_without(g, &[]);
    (0..g.n()).filter(|&v| mask[v]).collect()
}

struct BlockCollector {
    edge_stack: Vec<(Vertex, Vertex)>,
    blocks: Vec<Vec<Vertex>>,
}

impl LowpointVisitor for BlockCollector {
    fn edge(&mut self, v: Vertex, w: Vertex) {
        self.edge_stack.push((v, w));
    }

    fn tree_edge_done(&mut self, parent: Vertex, child: Vertex, lp: &Lowpoint) {
        if lp.low[child] >= lp.disc[parent] {
            let mut block = Vec::new();
            while let Some((a, b)) = self.edge_stack.pop() {
                block.push(a);
                block.push(b);
                if (a, b) == (parent, child) {
                    break;
                }
            }
            block.sort_unstable();
            block.dedup();
            self.blocks.push(block);
        }
    }
}

/// Biconnected components of a connected graph, each as a sorted vertex
/// set. A single-vertex graph has one block; a bridge edge is its own block.
pub fn blocks(g: &Graph) -> Result<Vec<Vec<Vertex>>, Error> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    if g.n() == 1 {
        return Ok(vec![vec![0]]);
    }
    let mut c = BlockCollector { edge_stack: Vec::new(), blocks: Vec::new() };
    lowpoint_dfs(g, &[], &mut c);
    let mut out = c.blocks;
    out.sort();
    Ok(out)
}

/// Lexicographically smallest vertex pair whose removal disconnects `g`,
/// or `None` if there is none. Expects `g` connected without cut vertices.
pub fn find_2_separator(g: &Graph) -> Option<Separator2> {
    let n = g.n();
    if n < 4 {
        return None;
    }
    let mut removed = vec![false; n];
    for a in 0..n {
        removed[a] = true;
        let cut = articulation_points_without(g, &removed);
        removed[a] = false;
        if let Some(b) = (a + 1..n).find(|&b| cut[b]) {
            return Some(Separator2(a, b));
        }
    }
    None
}

/// True iff `g` has at least four vertices and stays connected after
/// deleting any two of them.
pub fn is_3_connected(g: &Graph) -> bool {
    g.n() >= 4
        && is_connected(g)
        && articulation_points(g).is_empty()
        && find_2_separator(g).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    fn wheel(k: usize) -> Graph {
        let mut e: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        e.extend((1..=k).map(|i| (i, i % k + 1)));
        Graph::from_edges(k + 1, e).unwrap()
    }

    #[test]
    fn component_examples() {
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(components(&two_triangles), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(components(&cycle(5)).len(), 1);
        assert_eq!(components(&Graph::empty(4)).len(), 4);
    }

    #[test]
    fn block_examples() {
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(blocks(&bowtie).unwrap(), vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(blocks(&cycle(5)).unwrap(), vec![vec![0, 1, 2, 3, 4]]);
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(blocks(&p4).unwrap(), vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(blocks(&Graph::empty(2)), Err(Error::Disconnected));
    }

    #[test]
    fn separator_examples() {
        assert_eq!(find_2_separator(&cycle(5)), Some(Separator2(0, 2)));
        assert_eq!(find_2_separator(&complete(4)), None);
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(find_2_separator(&k23), Some(Separator2(0, 1)));
    }

    #[test]
    fn three_connectivity_examples() {
        assert!(is_3_connected(&wheel(7)));
        assert!(!is_3_connected(&cycle(6)));
        assert!(is_3_connected(&complete(4)));
        assert!(!is_3_connected(&complete(3)));
    }

    fn brute_3_connected(g: &Graph) -> bool {
        let n = g.n();
        if n < 4 {
            return false;
        }
        for a in 0..n {
            for b in a..n {
                let mut removed = vec![false; n];
                removed[a] = true;
                removed[b] = true;
                if components_without(g, &removed).len() > 1 {
                    return false;
                }
            }
        }
        components(g).len() == 1
    }

    fn arb_small_graph() -> impl Strategy<Value = Graph> {
        (1usize..=12, 0.1f64..0.9).prop_flat_map(|(n, p)| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(0.0f64..1.0, pairs).prop_map(move |r| {
                let mut e = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if r[k] < p {
                            e.push((a, b));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, e).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn three_connectivity_matches_pair_removal(g in arb_small_graph()) {
            prop_assert_eq!(is_3_connected(&g), brute_3_connected(&g));
        }

        #[test]
        fn reported_separator_separates(g in arb_small_graph()) {
            if g.n() >= 4 && is_connected(&g) && articulation_points(&g).is_empty() {
                if let Some(Separator2(a, b)) = find_2_separator(&g) {
                    let mut removed = vec![false; g.n()];
                    removed[a] = true;
                    removed[b] = true;
                    prop_assert!(components_without(&g, &removed).len() >= 2);
                }
            }
        }

        #[test]
        fn blocks_partition_edges(g in arb_small_graph()) {
            if is_connected(&g) {
                let bl = blocks(&g).unwrap();
                for e in g.edges() {
                    let holders = bl.iter()
                        .filter(|b| b.binary_search(&e.u()).is_ok() && b.binary_search(&e.v()).is_ok())
                        .count();
                    prop_assert_eq!(holders, 1);
                }
                let cuts = articulation_points(&g);
                for i in 0..bl.len() {
                    for j in i + 1..bl.len() {
                        let common: Vec<_> = bl[i].iter().filter(|v| bl[j].binary_search(v).is_ok()).collect();
                        prop_assert!(common.len() <= 1);
                        if let Some(&&c) = common.first() {
                            prop_assert!(cuts.contains(&c));
                        }
                    }
                }
            }
        }
    }
}
