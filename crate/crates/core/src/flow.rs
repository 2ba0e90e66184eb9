//! Unit-capacity augmenting-path max-flow, used for vertex-disjoint fans
//! (wheel search) and small edge cuts (cutset pruning).

use crate::graph::{Graph, Vertex};

pub(crate) struct FlowNet {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

const NIL: usize = usize::MAX;

impl FlowNet {
    pub fn new(nodes: usize) -> Self {
        FlowNet { head: vec![NIL; nodes], next: Vec::new(), to: Vec::new(), cap: Vec::new() }
    }

    fn push_arc(&mut self, u: usize, v: usize, cap: u32) -> usize {
        let id = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.next.push(self.head[u]);
        self.head[u] = id;
        id
    }

    /// Directed arc `u -> v`; returns its id. Its residual twin is `id ^ 1`.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: u32) -> usize {
        let id = self.push_arc(u, v, cap);
        self.push_arc(v, u, 0);
        id
    }

    /// Undirected edge of capacity `cap` in both directions.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u32) {
        self.push_arc(u, v, cap);
        self.push_arc(v, u, cap);
    }

    pub fn residual(&self, arc: usize) -> u32 {
        self.cap[arc]
    }

    /// Augments along shortest paths until `limit` units flow or no path
    /// remains. Returns the flow value.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        if s == t {
            return limit;
        }
        let nodes = self.head.len();
        let mut flow = 0;
        let mut pred = vec![NIL; nodes];
        let mut queue = Vec::with_capacity(nodes);
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = NIL);
            queue.clear();
            queue.push(s);
            let mut qi = 0;
            let mut reached = false;
            'bfs: while qi < queue.len() {
                let u = queue[qi];
                qi += 1;
                let mut a = self.head[u];
                while a != NIL {
                    let v = self.to[a];
                    if self.cap[a] > 0 && v != s && pred[v] == NIL {
                        pred[v] = a;
                        if v == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push(v);
                    }
                    a = self.next[a];
                }
            }
            if !reached {
                break;
            }
            let mut v = t;
            while v != s {
                let a = pred[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn arcs_from(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let mut a = self.head[u];
        std::iter::from_fn(move || {
            if a == NIL {
                None
            } else {
                let cur = a;
                a = self.next[a];
                Some(cur)
            }
        })
    }
}

/// Up to `limit` vertex-disjoint paths in `g` from distinct `sources` to
/// the vertices marked in `sinks`, using only vertices marked in
/// `allowed`. Each path is cut at its first sink vertex, so paths meet the
/// sink set only at their last vertex. A source that is itself a sink
/// yields a one-vertex path.
pub(crate) fn disjoint_fan(
    g: &Graph,
    sources: &[Vertex],
    sinks: &[bool],
    allowed: &[bool],
    limit: usize,
) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let src = 2 * n;
    let snk = 2 * n + 1;
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        if !allowed[v] {
            continue;
        }
        net.add_arc(2 * v, 2 * v + 1, 1);
        for &w in g.neighbors(v) {
            if allowed[w] {
                net.add_arc(2 * v + 1, 2 * w, 1);
            }
        }
        if sinks[v] {
            net.add_arc(2 * v + 1, snk, 1);
        }
    }
    let mut src_arcs = Vec::new();
    for &s in sources {
        if allowed[s] {
            src_arcs.push((s, net.add_arc(src, 2 * s, 1)));
        }
    }
    let value = net.max_flow(src, snk, limit);
    let mut paths = Vec::with_capacity(value);
    // Decompose: follow saturated forward arcs from each used source.
    let mut used_arc = vec![false; net.to.len()];
    for (s, arc) in src_arcs {
        if net.residual(arc) != 0 {
            continue;
        }
        let mut path = vec![s];
        let mut node = 2 * s;
        loop {
            // forward arcs have even ids; saturated unit arc carries flow
            let step = net
                .arcs_from(node)
                .find(|&a| a % 2 == 0 && !used_arc[a] && net.cap[a] == 0 && {
                    let orig = net.cap[a ^ 1];
                    orig > 0
                });
            let Some(a) = step else { break };
            used_arc[a] = true;
            let nxt = net.to[a];
            if nxt == snk {
                break;
            }
            if nxt % 2 == 0 {
                let v = nxt / 2;
                if *path.last().unwrap() != v {
                    path.push(v);
                }
            }
            node = nxt;
        }
        if let Some(cut) = path.iter().position(|&v| sinks[v]) {
            path.truncate(cut + 1);
        }
        paths.push(path);
    }
    paths
}

/// Number of vertex-disjoint `sources`-to-`sinks` paths inside `allowed`,
/// capped at `limit`.
pub(crate) fn fan_size(
    g: &Graph,
    sources: &[Vertex],
    sinks: &[bool],
    allowed: &[bool],
    limit: usize,
) -> usize {
    let n = g.n();
    let src = 2 * n;
    let snk = 2 * n + 1;
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        if !allowed[v] {
            continue;
        }
        net.add_arc(2 * v, 2 * v + 1, 1);
        for &w in g.neighbors(v) {
            if allowed[w] {
                net.add_arc(2 * v + 1, 2 * w, 1);
            }
        }
        if sinks[v] {
            net.add_arc(2 * v + 1, snk, 1);
        }
    }
    for &s in sources {
        if allowed[s] {
            net.add_arc(src, 2 * s, 1);
        }
    }
    net.max_flow(src, snk, limit)
}

/// Maximum number of edge-disjoint `s`-`t` paths in a multigraph given as
/// an edge list over `nodes` nodes, capped at `limit`.
pub(crate) fn edge_flow(nodes: usize, edges: &[(usize, usize)], s: usize, t: usize, limit: usize) -> usize {
    let mut net = FlowNet::new(nodes);
    for &(a, b) in edges {
        if a != b {
            net.add_edge(a, b, 1);
        }
    }
    net.max_flow(s, t, limit)
}
