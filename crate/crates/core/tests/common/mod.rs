//! A deliberately naive subdivision embedder shared by the test targets.

use wheelsub::graph::{Graph, Vertex};

/// Tries every injective branch map (in lexicographic order of host
/// tuples), then routes pattern edges last-to-first over every simple path.
pub struct Naive<'a> {
    pub host: &'a Graph,
    pub edges: Vec<(Vertex, Vertex)>,
    pub fixed: Vec<Option<Vertex>>,
    pub forbidden: Vec<bool>,
    pub map: Vec<Vertex>,
    pub taken: Vec<bool>,
}

impl Naive<'_> {
    pub fn run(&mut self) -> bool {
        self.assign(0)
    }

    fn assign(&mut self, p: usize) -> bool {
        if p == self.fixed.len() {
            let edges = self.edges.clone();
            return self.route(&edges);
        }
        let choices: Vec<Vertex> = match self.fixed[p] {
            Some(h) => vec![h],
            None => (0..self.host.n()).filter(|&h| !self.forbidden[h]).collect(),
        };
        for h in choices {
            if self.taken[h] {
                continue;
            }
            self.taken[h] = true;
            self.map.push(h);
            if self.assign(p + 1) {
                return true;
            }
            self.map.pop();
            self.taken[h] = false;
        }
        false
    }

    fn route(&mut self, edges: &[(Vertex, Vertex)]) -> bool {
        let Some((&(a, b), rest)) = edges.split_last() else { return true };
        let (from, to) = (self.map[a], self.map[b]);
        self.walk(from, to, rest)
    }

    fn walk(&mut self, at: Vertex, to: Vertex, rest: &[(Vertex, Vertex)]) -> bool {
        for &y in self.host.neighbors(at).iter().rev() {
            if y == to {
                if self.route(rest) {
                    return true;
                }
                continue;
            }
            if self.taken[y] || self.forbidden[y] {
                continue;
            }
            self.taken[y] = true;
            let ok = self.walk(y, to, rest);
            self.taken[y] = false;
            if ok {
                return true;
            }
        }
        false
    }
}

pub fn naive_contains(host: &Graph, pattern: &Graph) -> bool {
    Naive {
        host,
        edges: pattern.edges().iter().map(|e| (e.u(), e.v())).collect(),
        fixed: vec![None; pattern.n()],
        forbidden: vec![false; host.n()],
        map: Vec::new(),
        taken: vec![false; host.n()],
    }
    .run()
}
