//! Exhaustive topological-containment search.
//!
//! Two search routes are provided:
//!
//! * [`contains_subdivision`] handles an arbitrary pattern. Pattern vertices
//!   are placed on host vertices of sufficient degree (highest-degree,
//!   most-connected pattern vertices first) and every pattern edge is routed
//!   as a host path through unused vertices as soon as both its ends are
//!   placed. Backtracking covers every placement and every routing, so a
//!   negative answer is definite.
//! * [`contains_wheel`] uses the structure of wheels: the host has a
//!   `W_k`-subdivision centred at `c` iff `G - c` has a cycle `C` and `k`
//!   vertex-disjoint paths from distinct neighbours of `c` to `C`. Cycles are
//!   enumerated inside blocks of `G - c`, pruned by a max-flow upper bound
//!   on the fan that any extension of the current partial cycle can reach.
//!
//! Every witness either route produces is checked by [`verify_witness`],
//! which shares no code with the searches.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::connectivity;
use crate::error::Error;
use crate::flow;
use crate::graph::{edit, induced_subgraph, Bridge, Edge, Graph, Vertex};

/// Node-expansion limit for a search.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Budget {
    Unlimited,
    Nodes(u64),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Error)]
#[error("search budget exhausted before the search space was covered")]
pub struct BudgetExhausted;

/// `Ok(Some(_))`: found; `Ok(None)`: definitely absent.
pub type SearchResult = Result<Option<SubdivisionWitness>, BudgetExhausted>;

struct Meter {
    left: Option<u64>,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter {
            left: match budget {
                Budget::Unlimited => None,
                Budget::Nodes(n) => Some(n),
            },
        }
    }

    fn tick(&mut self) -> Result<(), BudgetExhausted> {
        match &mut self.left {
            None => Ok(()),
            Some(0) => Err(BudgetExhausted),
            Some(n) => {
                *n -= 1;
                Ok(())
            }
        }
    }
}

/// A subdivision of a pattern inside a host: where each pattern vertex
/// lands, and one host path per pattern edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionWitness {
    /// `branch_map[p]` is the host vertex for pattern vertex `p`.
    pub branch_map: Vec<Vertex>,
    /// For pattern edge `e`, a host path from `branch_map[e.u()]` to
    /// `branch_map[e.v()]`, sorted by pattern edge.
    pub paths: Vec<(Edge, Vec<Vertex>)>,
}

impl SubdivisionWitness {
    /// Re-expresses the witness in another host labelling.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> SubdivisionWitness {
        SubdivisionWitness {
            branch_map: self.branch_map.iter().map(|&v| map(v)).collect(),
            paths: self
                .paths
                .iter()
                .map(|(e, p)| (*e, p.iter().map(|&v| map(v)).collect()))
                .collect(),
        }
    }
}

impl fmt::Display for SubdivisionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, h) in self.branch_map.iter().enumerate() {
            writeln!(f, "{p} -> {h}")?;
        }
        for (e, path) in &self.paths {
            write!(f, "{}-{}:", e.u(), e.v())?;
            for v in path {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The wheel with `k` spokes: hub 0, rim `1..=k` in cyclic order.
pub fn wheel(k: usize) -> Graph {
    let mut e: Vec<(Vertex, Vertex)> = (1..=k).map(|i| (0, i)).collect();
    e.extend((1..=k).map(|i| (i, i % k + 1)));
    Graph::from_edges(k + 1, e).expect("wheel is simple for k >= 3")
}

/// Checks that `w` is a valid subdivision of `pattern` in `host`. Returns
/// a description of the first violated condition.
pub fn verify_witness(host: &Graph, pattern: &Graph, w: &SubdivisionWitness) -> Result<(), String> {
    let hn = host.n();
    if w.branch_map.len() != pattern.n() {
        return Err(format!("branch map has {} entries for {} pattern vertices", w.branch_map.len(), pattern.n()));
    }
    let mut owner = vec![None::<&str>; hn];
    for (p, &h) in w.branch_map.iter().enumerate() {
        if h >= hn {
            return Err(format!("pattern vertex {p} mapped outside host"));
        }
        if owner[h].is_some() {
            return Err(format!("host vertex {h} used by two pattern vertices"));
        }
        owner[h] = Some("branch");
    }
    let mut want: Vec<Edge> = pattern.edges();
    let mut have: Vec<Edge> = w.paths.iter().map(|(e, _)| *e).collect();
    want.sort();
    have.sort();
    if want != have {
        return Err("path system does not match pattern edges one-to-one".into());
    }
    for (e, path) in &w.paths {
        if path.len() < 2 {
            return Err(format!("path for {e} is too short"));
        }
        if path[0] != w.branch_map[e.u()] || path[path.len() - 1] != w.branch_map[e.v()] {
            return Err(format!("path for {e} has wrong endpoints"));
        }
        for pair in path.windows(2) {
            if !host.has_edge(pair[0], pair[1]) {
                return Err(format!("path for {e} uses non-edge {}-{}", pair[0], pair[1]));
            }
        }
        for &x in &path[1..path.len() - 1] {
            if x >= hn {
                return Err(format!("path for {e} leaves the host"));
            }
            if owner[x].is_some() {
                return Err(format!("interior vertex {x} of path {e} is reused"));
            }
            owner[x] = Some("interior");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Generic search
// ---------------------------------------------------------------------------

struct Embedder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<Vertex>,
    anchors: Vec<Option<Vertex>>,
    blocked: Vec<bool>,
    used: Vec<bool>,
    assign: Vec<Option<Vertex>>,
    /// unrouted pattern edges per pattern vertex
    pending: Vec<usize>,
    routes: Vec<(Edge, Vec<Vertex>)>,
    meter: Meter,
}

impl<'a> Embedder<'a> {
    fn new(
        host: &'a Graph,
        pattern: &'a Graph,
        anchors: Vec<Option<Vertex>>,
        blocked: Vec<bool>,
        budget: Budget,
    ) -> Self {
        let pn = pattern.n();
        // Anchored vertices first, then repeatedly the vertex with most
        // already-ordered neighbours (ties: higher degree, lower id).
        let mut order: Vec<Vertex> = (0..pn).filter(|&p| anchors[p].is_some()).collect();
        let mut placed = vec![false; pn];
        for &p in &order {
            placed[p] = true;
        }
        while order.len() < pn {
            let next = (0..pn)
                .filter(|&p| !placed[p])
                .max_by_key(|&p| {
                    let links = pattern.neighbors(p).iter().filter(|&&q| placed[q]).count();
                    (links, pattern.degree(p), std::cmp::Reverse(p))
                })
                .expect("unplaced vertex exists");
            placed[next] = true;
            order.push(next);
        }
        Embedder {
            host,
            pattern,
            order,
            anchors,
            used: blocked.clone(),
            blocked,
            assign: vec![None; pn],
            pending: (0..pn).map(|p| pattern.degree(p)).collect(),
            routes: Vec::new(),
            meter: Meter::new(budget),
        }
    }

    fn run(mut self) -> SearchResult {
        if self.meter.left == Some(0) {
            return Err(BudgetExhausted);
        }
        if self.place(0)? {
            let mut paths = std::mem::take(&mut self.routes);
            paths.sort();
            let branch_map = self.assign.iter().map(|a| a.expect("all placed")).collect();
            Ok(Some(SubdivisionWitness { branch_map, paths }))
        } else {
            Ok(None)
        }
    }

    /// Every placed pattern vertex still has enough free host neighbours
    /// to route its unrouted edges.
    fn degrees_feasible(&self) -> bool {
        for p in 0..self.pattern.n() {
            let (Some(h), need) = (self.assign[p], self.pending[p]) else { continue };
            if need == 0 {
                continue;
            }
            let mut avail = 0;
            for &y in self.host.neighbors(h) {
                if !self.used[y] {
                    avail += 1;
                } else if self.pattern.neighbors(p).iter().any(|&q| {
                    self.assign[q] == Some(y) && !self.routed(p, q)
                }) {
                    avail += 1;
                }
                if avail >= need {
                    break;
                }
            }
            if avail < need {
                return false;
            }
        }
        true
    }

    fn routed(&self, p: Vertex, q: Vertex) -> bool {
        let e = Edge::new(p, q);
        self.routes.iter().any(|(f, _)| *f == e)
    }

    fn place(&mut self, i: usize) -> Result<bool, BudgetExhausted> {
        if i == self.order.len() {
            return Ok(true);
        }
        let p = self.order[i];
        let need = self.pattern.degree(p);
        let candidates: Vec<Vertex> = match self.anchors[p] {
            Some(h) => vec![h],
            None => {
                let mut c: Vec<Vertex> = (0..self.host.n())
                    .filter(|&h| !self.used[h] && self.host.degree(h) >= need)
                    .collect();
                c.sort_by_key(|&h| (std::cmp::Reverse(self.host.degree(h)), h));
                c
            }
        };
        let earlier: Vec<Vertex> = self
            .pattern
            .neighbors(p)
            .iter()
            .copied()
            .filter(|&q| self.assign[q].is_some())
            .collect();
        for h in candidates {
            self.meter.tick()?;
            if self.used[h] && self.anchors[p] != Some(h) {
                continue;
            }
            if self.anchors[p] == Some(h) && self.used[h] && !self.blocked[h] {
                continue;
            }
            if self.host.degree(h) < need {
                continue;
            }
            let was_used = self.used[h];
            self.used[h] = true;
            self.assign[p] = Some(h);
            if self.degrees_feasible() && self.route_all(p, &earlier, 0, i)? {
                return Ok(true);
            }
            self.assign[p] = None;
            self.used[h] = was_used;
        }
        Ok(false)
    }

    fn route_all(&mut self, p: Vertex, earlier: &[Vertex], j: usize, i: usize) -> Result<bool, BudgetExhausted> {
        if j == earlier.len() {
            return self.place(i + 1);
        }
        let q = earlier[j];
        let from = self.assign[p].expect("placed");
        let to = self.assign[q].expect("placed");
        let mut path = vec![from];
        self.route_from(p, q, to, &mut path, earlier, j, i)
    }

    #[allow(clippy::too_many_arguments)]
    fn route_from(
        &mut self,
        p: Vertex,
        q: Vertex,
        to: Vertex,
        path: &mut Vec<Vertex>,
        earlier: &[Vertex],
        j: usize,
        i: usize,
    ) -> Result<bool, BudgetExhausted> {
        self.meter.tick()?;
        let x = *path.last().expect("non-empty");
        if self.host.has_edge(x, to) {
            path.push(to);
            let e = Edge::new(p, q);
            let oriented = if e.u() == p { path.clone() } else { path.iter().rev().copied().collect() };
            self.routes.push((e, oriented));
            self.pending[p] -= 1;
            self.pending[q] -= 1;
            if self.degrees_feasible() && self.route_all(p, earlier, j + 1, i)? {
                return Ok(true);
            }
            self.pending[p] += 1;
            self.pending[q] += 1;
            self.routes.pop();
            path.pop();
        }
        let nexts: Vec<Vertex> = self
            .host
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| !self.used[y])
            .collect();
        for y in nexts {
            if !self.reaches(y, to) {
                continue;
            }
            self.used[y] = true;
            path.push(y);
            let ok = self.route_from(p, q, to, path, earlier, j, i)?;
            path.pop();
            if ok {
                return Ok(true);
            }
            self.used[y] = false;
        }
        Ok(false)
    }

    /// Whether `to` is adjacent to the free region reachable from `start`.
    fn reaches(&self, start: Vertex, to: Vertex) -> bool {
        let mut seen = vec![false; self.host.n()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for &y in self.host.neighbors(x) {
                if y == to {
                    return true;
                }
                if !seen[y] && !self.used[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }
}

/// Searches `host` for a subdivision of `pattern`.
pub fn contains_subdivision(host: &Graph, pattern: &Graph, budget: Budget) -> SearchResult {
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return match budget {
            Budget::Nodes(0) => Err(BudgetExhausted),
            _ => Ok(None),
        };
    }
    Embedder::new(host, pattern, vec![None; pattern.n()], vec![false; host.n()], budget).run()
}

/// Searches for a subdivision of `pattern` in which pattern vertex `p` is
/// placed on `anchors[p]` whenever that is `Some`. Host vertices marked in
/// `blocked` are never used, except as anchor images.
pub fn contains_anchored_subdivision(
    host: &Graph,
    pattern: &Graph,
    anchors: &[Option<Vertex>],
    blocked: &[bool],
    budget: Budget,
) -> SearchResult {
    let mut blocked = blocked.to_vec();
    for a in anchors.iter().flatten() {
        blocked[*a] = true;
    }
    Embedder::new(host, pattern, anchors.to_vec(), blocked, budget).run()
}

/// Whether `⟨Y⟩` contains a subdivision of `⟨X⟩` that fixes every vertex of
/// `X ∩ S`. Edges of `⟨X⟩` with both ends in `S` are ignored since `Y` sees
/// the same edges. Only bridges with at most three vertices outside `S` are
/// accepted.
pub fn bridge_contains_subdivision_of(
    host: &Graph,
    y: &Bridge,
    x: &Bridge,
    s: &[Vertex],
) -> Result<bool, Error> {
    let in_s = |v: Vertex| s.contains(&v);
    let outside = x.vertices.iter().filter(|&&v| !in_s(v)).count();
    if outside > 3 {
        return Err(Error::BridgeTooLarge(outside));
    }
    let (yg, yrel) = induced_subgraph(host, &y.vertices);
    let idx = |v: Vertex| x.vertices.binary_search(&v).expect("member of X");
    let mut pe = Vec::new();
    for (i, &a) in x.vertices.iter().enumerate() {
        for &b in host.neighbors(a) {
            if b > a && x.contains(b) && !(in_s(a) && in_s(b)) {
                pe.push((i, idx(b)));
            }
        }
    }
    let pattern = Graph::from_edges(x.vertices.len(), pe).expect("simple");
    let mut anchors = vec![None; pattern.n()];
    for (i, &a) in x.vertices.iter().enumerate() {
        if in_s(a) {
            match yrel.new_of(a) {
                Some(ya) => anchors[i] = Some(ya),
                None => return Ok(false),
            }
        }
    }
    let mut blocked = vec![false; yg.n()];
    for &v in s {
        if let Some(yv) = yrel.new_of(v) {
            blocked[yv] = true;
        }
    }
    Ok(contains_anchored_subdivision(&yg, &pattern, &anchors, &blocked, Budget::Unlimited)
        .expect("unlimited budget")
        .is_some())
}

// ---------------------------------------------------------------------------
// Wheel search
// ---------------------------------------------------------------------------

/// Searches for a `W_k`-subdivision, optionally forcing its centre.
///
/// Candidate centres are searched round-robin under node allowances that
/// grow eightfold per round, so a centre with a quick answer is not stuck
/// behind one whose search space is large.
pub fn contains_wheel(host: &Graph, k: usize, centre: Option<Vertex>, budget: Budget) -> SearchResult {
    assert!(k >= 3, "wheels have at least three spokes");
    let mut meter = Meter::new(budget);
    if meter.left == Some(0) {
        return Err(BudgetExhausted);
    }
    let candidates: Vec<Vertex> = match centre {
        Some(c) if c < host.n() => vec![c],
        Some(_) => Vec::new(),
        None => {
            let mut c: Vec<Vertex> = host.vertices().collect();
            c.sort_by_key(|&v| (std::cmp::Reverse(host.degree(v)), v));
            c
        }
    };
    let mut open: Vec<Centre> = candidates
        .into_iter()
        .filter(|&c| host.degree(c) >= k)
        .map(|c| Centre::new(host, k, c))
        .filter(|c| !c.blocks.is_empty())
        .collect();
    let mut allowance = 512u64;
    let mut round = 0u64;
    while !open.is_empty() {
        let mut unfinished = Vec::new();
        for c in open {
            match c.search(k, &mut meter, allowance, round) {
                Ok(Some(w)) => return Ok(Some(w)),
                Ok(None) => {}
                Err(Stop::Allowance) => unfinished.push(c),
                Err(Stop::Budget) => return Err(BudgetExhausted),
            }
        }
        open = unfinished;
        allowance = allowance.saturating_mul(4);
        round += 1;
    }
    Ok(None)
}

enum Stop {
    Budget,
    Allowance,
}

/// Search state for one candidate centre `c`, working in `H = G - c`.
struct Centre {
    c: Vertex,
    h: Graph,
    rel: crate::graph::Relabeling,
    terminals: Vec<Vertex>,
    is_terminal: Vec<bool>,
    /// blocks of `H` that could carry a rim, in search order
    blocks: Vec<Vec<Vertex>>,
}

impl Centre {
    fn new(g: &Graph, k: usize, c: Vertex) -> Self {
        let (h, rel) = edit(g, &[c], &[], &[]).expect("valid vertex");
        let terminals: Vec<Vertex> = g.neighbors(c).iter().map(|&t| rel.new_of(t).expect("kept")).collect();
        let hn = h.n();
        let mut is_terminal = vec![false; hn];
        for &t in &terminals {
            is_terminal[t] = true;
        }
        let everything = vec![true; hn];
        let mut blocks = Vec::new();
        for comp in connectivity::components(&h) {
            if comp.len() < k {
                continue;
            }
            let (cg, crel) = induced_subgraph(&h, &comp);
            let Ok(bs) = connectivity::blocks(&cg) else { continue };
            for b in bs {
                if b.len() < k {
                    continue;
                }
                let mut b: Vec<Vertex> = b.iter().map(|&v| crel.old_of(v)).collect();
                let mut sinks = vec![false; hn];
                for &v in &b {
                    sinks[v] = true;
                }
                if flow::fan_size(&h, &terminals, &sinks, &everything, k) < k {
                    continue;
                }
                b.sort_by_key(|&v| (!is_terminal[v], std::cmp::Reverse(h.degree(v)), v));
                blocks.push(b);
            }
        }
        Centre { c, h, rel, terminals, is_terminal, blocks }
    }

    /// Round 0 prefers terminals and high degree when choosing how to
    /// extend a path; later rounds use a seeded random preference so that
    /// restarts explore different parts of the tree first.
    fn search(
        &self,
        k: usize,
        meter: &mut Meter,
        allowance: u64,
        round: u64,
    ) -> Result<Option<SubdivisionWitness>, Stop> {
        let hn = self.h.n();
        let rank: Vec<u64> = if round == 0 {
            (0..hn)
                .map(|v| ((!self.is_terminal[v] as u64) << 40) | (((hn - self.h.degree(v)) as u64) << 20) | v as u64)
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(round ^ (self.c as u64) << 32);
            (0..hn).map(|_| rng.gen()).collect()
        };
        for block in &self.blocks {
            let mut in_block = vec![false; hn];
            for &v in block {
                in_block[v] = true;
            }
            let mut search = CycleSearch {
                centre: self,
                k,
                in_block,
                on_path: vec![false; hn],
                meter: &mut *meter,
                rank: &rank,
                spent: 0,
                allowance,
            };
            if let Some(cycle) = search.run(block)? {
                let mut on_cycle = vec![false; hn];
                for &v in &cycle {
                    on_cycle[v] = true;
                }
                let fan = flow::disjoint_fan(&self.h, &self.terminals, &on_cycle, &vec![true; hn], k);
                debug_assert_eq!(fan.len(), k);
                return Ok(Some(assemble_wheel(self.c, &cycle, &fan, |v| self.rel.old_of(v))));
            }
        }
        Ok(None)
    }
}

/// Enumerates cycles of one block by their first vertex `s` (in block
/// order) and a path grown from `s`. A partial path is abandoned once the
/// fan onto the path plus everything that could still close the cycle is
/// below `k`.
struct CycleSearch<'a, 'm> {
    centre: &'a Centre,
    k: usize,
    in_block: Vec<bool>,
    on_path: Vec<bool>,
    meter: &'m mut Meter,
    rank: &'a [u64],
    spent: u64,
    allowance: u64,
}

impl CycleSearch<'_, '_> {
    fn tick(&mut self) -> Result<(), Stop> {
        self.meter.tick().map_err(|_| Stop::Budget)?;
        self.spent += 1;
        if self.spent > self.allowance {
            return Err(Stop::Allowance);
        }
        Ok(())
    }

    fn free(&self, v: Vertex) -> bool {
        self.in_block[v] && !self.on_path[v]
    }

    fn run(&mut self, block: &[Vertex]) -> Result<Option<Vec<Vertex>>, Stop> {
        for &s in block {
            let mut path = vec![s];
            self.on_path[s] = true;
            let found = self.grow(&mut path, self.preferred(self.centre.h.neighbors(s)));
            self.on_path[s] = false;
            if let Some(c) = found? {
                return Ok(Some(c));
            }
            // every cycle through s has been tried
            self.in_block[s] = false;
        }
        Ok(None)
    }

    fn preferred(&self, from: &[Vertex]) -> Vec<Vertex> {
        let mut next: Vec<Vertex> = from.iter().copied().filter(|&y| self.free(y)).collect();
        next.sort_by_key(|&y| self.rank[y]);
        next
    }

    fn grow(&mut self, path: &mut Vec<Vertex>, nexts: Vec<Vertex>) -> Result<Option<Vec<Vertex>>, Stop> {
        for y in nexts {
            self.on_path[y] = true;
            path.push(y);
            let r = self.extend(path);
            path.pop();
            self.on_path[y] = false;
            if let Some(c) = r? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn fan_onto(&self, marked: &[Vertex]) -> usize {
        let n = self.centre.h.n();
        let mut sinks = vec![false; n];
        for &v in marked {
            sinks[v] = true;
        }
        flow::fan_size(&self.centre.h, &self.centre.terminals, &sinks, &vec![true; n], self.k)
    }

    fn extend(&mut self, path: &mut Vec<Vertex>) -> Result<Option<Vec<Vertex>>, Stop> {
        self.tick()?;
        let h = &self.centre.h;
        let s = path[0];
        let x = *path.last().expect("non-empty");
        if path.len() >= self.k && h.has_edge(x, s) && path[1] < x && self.fan_onto(path) >= self.k {
            return Ok(Some(path.clone()));
        }
        let region = self.closing_region(x, s);
        if region.is_empty() || path.len() + region.len() < self.k {
            return Ok(None);
        }
        let mut marked = region.clone();
        marked.extend_from_slice(path);
        if self.fan_onto(&marked) < self.k {
            return Ok(None);
        }
        let mut nexts = self.preferred(h.neighbors(x));
        nexts.retain(|y| region.binary_search(y).is_ok());
        self.grow(path, nexts)
    }

    /// Free vertices lying on some `x`-`s` path through free vertices,
    /// sorted. These form the block containing a virtual edge `xs` in the
    /// graph induced by `x`, `s` and the free components touching both.
    fn closing_region(&self, x: Vertex, s: Vertex) -> Vec<Vertex> {
        let h = &self.centre.h;
        let n = h.n();
        let mut seen = vec![false; n];
        let mut keep: Vec<Vertex> = Vec::new();
        for &start in h.neighbors(x) {
            if !self.free(start) || seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut touches_s = false;
            let mut i = 0;
            while i < comp.len() {
                let a = comp[i];
                i += 1;
                for &b in h.neighbors(a) {
                    touches_s |= b == s;
                    if self.free(b) && !seen[b] {
                        seen[b] = true;
                        comp.push(b);
                    }
                }
            }
            if touches_s {
                keep.extend(comp);
            }
        }
        if keep.is_empty() {
            return keep;
        }
        keep.push(x);
        keep.push(s);
        keep.sort_unstable();
        let (local, lrel) = induced_subgraph(h, &keep);
        let (lx, ls) = (lrel.new_of(x).expect("kept"), lrel.new_of(s).expect("kept"));
        let local = edit(&local, &[], &[], &[Edge::new(lx, ls)]).expect("valid edge").0;
        let blocks = connectivity::blocks(&local).expect("components touch x and s");
        let block = blocks
            .into_iter()
            .find(|b| b.binary_search(&lx).is_ok() && b.binary_search(&ls).is_ok())
            .expect("edge xs lies in a block");
        let mut out: Vec<Vertex> = block
            .into_iter()
            .filter(|&v| v != lx && v != ls)
            .map(|v| lrel.old_of(v))
            .collect();
        out.sort_unstable();
        out
    }
}

fn assemble_wheel(
    c: Vertex,
    cycle: &[Vertex],
    fan: &[Vec<Vertex>],
    to_host: impl Fn(Vertex) -> Vertex,
) -> SubdivisionWitness {
    let k = fan.len();
    let pos = |v: Vertex| cycle.iter().position(|&x| x == v).expect("fan ends on cycle");
    let mut spokes: Vec<(usize, &Vec<Vertex>)> = fan.iter().map(|p| (pos(*p.last().unwrap()), p)).collect();
    spokes.sort_by_key(|&(at, _)| at);
    let len = cycle.len();
    let mut branch_map = vec![c; k + 1];
    let mut paths = Vec::with_capacity(2 * k);
    for (i, (at, p)) in spokes.iter().enumerate() {
        branch_map[i + 1] = to_host(cycle[*at]);
        let mut spoke = vec![c];
        spoke.extend(p.iter().map(|&v| to_host(v)));
        paths.push((Edge::new(0, i + 1), spoke));
    }
    for i in 0..k {
        let a = spokes[i].0;
        let (e, seg) = if i + 1 < k {
            let b = spokes[i + 1].0;
            (Edge::new(i + 1, i + 2), (a..=b).map(|j| cycle[j]).collect::<Vec<_>>())
        } else {
            // rim vertex 1 back to rim vertex k, wrapping around the start
            let first = spokes[0].0;
            let mut seg: Vec<Vertex> = (0..=first).rev().map(|j| cycle[j]).collect();
            seg.extend((a..len).rev().map(|j| cycle[j]));
            (Edge::new(1, k), seg)
        };
        paths.push((e, seg.into_iter().map(&to_host).collect()));
    }
    paths.sort();
    SubdivisionWitness { branch_map, paths }
}
