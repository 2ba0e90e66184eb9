//! The bounded reductions: each deletes the inside of a small bridge of
//! `G|S`, possibly adds one edge inside `S`, and keeps W_k-subdivision
//! existence unchanged.
//!
//! Roles are stored in `ReductionFinding::s` as `[u, v, w]` for the
//! three-vertex kinds and `[t, u, v, w]` for the others. Connectors (the
//! paths called `P_w`, `P_u`, `P_t` in the definitions) are vertex
//! sequences; a two-vertex sequence is the edge itself.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::connectivity::is_3_connected;
use crate::error::Error;
use crate::graph::{bridges_of, edit, Bridge, Edge, Graph, Vertex};
use crate::oracle::bridge_contains_subdivision_of;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionKind {
    R1A,
    R1B,
    R1C,
    R2A,
    R2B,
    R6,
    R7,
    R8,
    /// Only the form where `v` is adjacent to `u`; joining them by two
    /// paths through other bridges does not preserve containment.
    R1Big,
}

impl ReductionKind {
    /// Scan order of [`find_reduction`].
    pub const ALL: [ReductionKind; 9] = [
        ReductionKind::R1A,
        ReductionKind::R1B,
        ReductionKind::R1C,
        ReductionKind::R2A,
        ReductionKind::R2B,
        ReductionKind::R6,
        ReductionKind::R7,
        ReductionKind::R8,
        ReductionKind::R1Big,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::R1A => "R1A",
            ReductionKind::R1B => "R1B",
            ReductionKind::R1C => "R1C",
            ReductionKind::R2A => "R2A",
            ReductionKind::R2B => "R2B",
            ReductionKind::R6 => "R6",
            ReductionKind::R7 => "R7",
            ReductionKind::R8 => "R8",
            ReductionKind::R1Big => "R1BIG",
        }
    }

    /// Size of `S`.
    pub fn set_size(self) -> usize {
        use ReductionKind::*;
        match self {
            R1A | R1B | R1C | R2A | R2B => 3,
            R6 | R7 | R8 | R1Big => 4,
        }
    }

    /// Smallest wheel size the reduction is defined for.
    pub fn min_k(self) -> usize {
        use ReductionKind::*;
        match self {
            R1A | R1B | R1C => 4,
            R2A | R2B | R1Big => 5,
            R6 | R7 | R8 => 7,
        }
    }

    /// `|X ∖ S|` for the kinds that fix it.
    fn interior_size(self) -> Option<usize> {
        use ReductionKind::*;
        match self {
            R1A | R2A => Some(1),
            R1B | R2B => Some(2),
            R1C => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown reduction kind `{s}`"))
    }
}

/// The bridges and connectors that witness a reduction. Bridges are given
/// by their full vertex sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evidence {
    pub y: Option<Vec<Vertex>>,
    pub z: Option<Vec<Vertex>>,
    /// The fourth bridge containing all of `S` (R7 only).
    pub w: Option<Vec<Vertex>>,
    /// Connector from `v` to `w`.
    pub p_w: Option<Vec<Vertex>>,
    /// Connector from `v` to `u`.
    pub p_u: Option<Vec<Vertex>>,
    /// Connector from `v` to `t` (R7 only).
    pub p_t: Option<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionFinding {
    pub kind: ReductionKind,
    /// Wheel size the clauses were checked for.
    pub k: usize,
    /// `[u, v, w]` or `[t, u, v, w]`.
    pub s: Vec<Vertex>,
    /// Vertex set of the bridge `X` whose inside is deleted.
    pub x: Vec<Vertex>,
    /// Edges added inside `S`; empty when the edge already exists.
    pub add_edges: Vec<Edge>,
    pub evidence: Evidence,
}

impl ReductionFinding {
    fn role(&self, i: usize) -> Vertex {
        let off = self.s.len() - 3;
        self.s[off + i]
    }

    pub fn u(&self) -> Vertex {
        self.role(0)
    }

    pub fn v(&self) -> Vertex {
        self.role(1)
    }

    pub fn w(&self) -> Vertex {
        self.role(2)
    }

    pub fn t(&self) -> Option<Vertex> {
        (self.s.len() == 4).then(|| self.s[0])
    }

    /// `X ∖ S`, the vertices deleted by the reduction.
    pub fn removed(&self) -> Vec<Vertex> {
        self.x.iter().copied().filter(|v| !self.s.contains(v)).collect()
    }
}

impl fmt::Display for ReductionFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(|v| v.to_string()).collect();
        let add: Vec<String> = self.add_edges.iter().map(|e| e.to_string()).collect();
        write!(f, "{} S=[{}] removed={} add=[{}]", self.kind, s.join(","), self.removed().len(), add.join(","))
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    k: usize,
    s: Vec<Vertex>,
    bridges: Vec<Bridge>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a Graph, s: &[Vertex], k: usize) -> Self {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        Ctx { g, k, bridges: bridges_of(g, &sorted), s: sorted }
    }

    fn bridge_of(&self, vertices: &[Vertex]) -> Option<usize> {
        self.bridges.iter().position(|b| b.vertices == vertices)
    }

    fn attaches_all(&self, b: usize, vs: &[Vertex]) -> bool {
        vs.iter().all(|&v| self.bridges[b].attaches_to(v))
    }

    /// Attachments of bridge `b` are exactly `vs`.
    fn attaches_exactly(&self, b: usize, vs: &[Vertex]) -> bool {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        self.bridges[b].attachments == sorted
    }

    fn interior_neighbours(&self, i: Vertex, b: usize) -> usize {
        self.g.neighbors(i).iter().filter(|&&x| self.bridges[b].interior.binary_search(&x).is_ok()).count()
    }

    /// `i` has degree below `k`, or no bridge holds two neighbours of `i`
    /// outside `S`.
    fn bounded(&self, i: Vertex) -> bool {
        self.g.degree(i) < self.k || (0..self.bridges.len()).all(|b| self.interior_neighbours(i, b) <= 1)
    }

    fn edges_into(&self, b: usize) -> usize {
        self.s.iter().map(|&i| self.interior_neighbours(i, b)).sum()
    }

    /// Bridges other than `x` that could carry a path from `a` to `b`, or
    /// `None` when `ab` is an edge and no bridge is needed.
    fn carriers(&self, a: Vertex, b: Vertex, x: usize) -> Option<Vec<usize>> {
        if self.g.has_edge(a, b) {
            return None;
        }
        Some((0..self.bridges.len()).filter(|&i| i != x && self.attaches_all(i, &[a, b])).collect())
    }

    /// Shortest path from `a` to `b` through the inside of bridge `c`.
    fn path_in(&self, c: usize, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let inside = &self.bridges[c].interior;
        let mut prev = vec![usize::MAX; self.g.n()];
        let mut queue = std::collections::VecDeque::new();
        for &x in self.g.neighbors(a) {
            if inside.binary_search(&x).is_ok() && prev[x] == usize::MAX {
                prev[x] = a;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            if self.g.has_edge(x, b) {
                let mut path = vec![b, x];
                let mut at = x;
                while prev[at] != a {
                    at = prev[at];
                    path.push(at);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            for &y in self.g.neighbors(x) {
                if inside.binary_search(&y).is_ok() && prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        unreachable!("bridge attaches to both ends")
    }

    /// Checks a connector from `a` to `b`: `Some(None)` for the edge,
    /// `Some(Some(bridge))` for a path through one bridge.
    fn connector(&self, path: &[Vertex], a: Vertex, b: Vertex) -> Option<Option<usize>> {
        if path.len() < 2 || path[0] != a || path[path.len() - 1] != b {
            return None;
        }
        if path.windows(2).any(|p| !self.g.has_edge(p[0], p[1])) {
            return None;
        }
        if path.len() == 2 {
            return Some(None);
        }
        let inner = &path[1..path.len() - 1];
        let mut seen: Vec<Vertex> = inner.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != inner.len() || inner.iter().any(|v| self.s.contains(v)) {
            return None;
        }
        // consecutive inner vertices avoid S, so they share one bridge
        self.bridges.iter().position(|br| br.interior.binary_search(&inner[0]).is_ok()).map(Some)
    }

    fn contains_copy(&self, y: usize, x: usize) -> bool {
        bridge_contains_subdivision_of(self.g, &self.bridges[y], &self.bridges[x], &self.s).unwrap_or(false)
    }
}

/// Distinct representatives: `roles[i]` lists the bridges allowed for
/// role `i`. Tries candidates in order, so the answer is deterministic.
fn assign(roles: &[&[usize]]) -> Option<Vec<usize>> {
    fn augment(r: usize, roles: &[&[usize]], owner: &mut Vec<(usize, usize)>, seen: &mut Vec<usize>) -> bool {
        for &b in roles[r] {
            if seen.contains(&b) {
                continue;
            }
            seen.push(b);
            match owner.iter().position(|&(bb, _)| bb == b) {
                None => {
                    owner.push((b, r));
                    return true;
                }
                Some(i) => {
                    let other = owner[i].1;
                    if augment(other, roles, owner, seen) {
                        owner[i] = (b, r);
                        return true;
                    }
                }
            }
        }
        false
    }
    let mut owner: Vec<(usize, usize)> = Vec::new();
    for r in 0..roles.len() {
        if !augment(r, roles, &mut owner, &mut Vec::new()) {
            return None;
        }
    }
    let mut out = vec![0; roles.len()];
    for (b, r) in owner {
        out[r] = b;
    }
    Some(out)
}

/// Picks the named bridges and connector bridges of a finding, all
/// distinct and different from `x`. `named` are candidate lists for the
/// bridge roles, `links` the endpoints of each connector. Returns the
/// chosen bridges and the connector paths.
fn choose(
    ctx: &Ctx,
    x: usize,
    named: &[Vec<usize>],
    links: &[(Vertex, Vertex)],
) -> Option<(Vec<usize>, Vec<Vec<Vertex>>)> {
    let needs: Vec<Option<Vec<usize>>> = links.iter().map(|&(a, b)| ctx.carriers(a, b, x)).collect();
    let mut roles: Vec<&[usize]> = named.iter().map(|c| c.as_slice()).collect();
    roles.extend(needs.iter().flatten().map(|c| c.as_slice()));
    let picked = assign(&roles)?;
    let (bridges, carriers) = picked.split_at(named.len());
    let mut carriers = carriers.iter();
    let paths = links
        .iter()
        .zip(&needs)
        .map(|(&(a, b), need)| match need {
            None => vec![a, b],
            Some(_) => ctx.path_in(*carriers.next().expect("assigned"), a, b),
        })
        .collect();
    Some((bridges.to_vec(), paths))
}

fn missing_edge(g: &Graph, a: Vertex, b: Vertex) -> Vec<Edge> {
    if g.has_edge(a, b) {
        Vec::new()
    } else {
        vec![Edge::new(a, b)]
    }
}

fn added_edges(g: &Graph, kind: ReductionKind, t: Option<Vertex>, u: Vertex, v: Vertex, w: Vertex) -> Vec<Edge> {
    use ReductionKind::*;
    let _ = t;
    match kind {
        R1A | R1B | R1C | R6 | R1Big => missing_edge(g, u, w),
        R2A | R2B => missing_edge(g, v, u),
        R8 => missing_edge(g, v, w),
        R7 => Vec::new(),
    }
}

/// Tries one role assignment of a three-vertex set.
fn try_three(ctx: &Ctx, kind: ReductionKind, u: Vertex, v: Vertex, w: Vertex) -> Option<ReductionFinding> {
    use ReductionKind::*;
    let r2 = matches!(kind, R2A | R2B);
    if r2 && (ctx.g.degree(u) >= ctx.k || ctx.g.degree(w) >= ctx.k) {
        return None;
    }
    let size = kind.interior_size().expect("bounded kind");
    for x in 0..ctx.bridges.len() {
        if ctx.bridges[x].interior.len() != size {
            continue;
        }
        let others: Vec<usize> = (0..ctx.bridges.len()).filter(|&b| b != x).collect();
        let copies: Vec<usize> = if size == 1 {
            others
        } else {
            others.into_iter().filter(|&y| ctx.contains_copy(y, x)).collect()
        };
        let links: &[(Vertex, Vertex)] = if r2 { &[(v, w)] } else { &[(v, w), (v, u)] };
        let Some((named, paths)) = choose(ctx, x, &[copies.clone(), copies], links) else { continue };
        let mut paths = paths.into_iter();
        let evidence = Evidence {
            y: Some(ctx.bridges[named[0]].vertices.clone()),
            z: Some(ctx.bridges[named[1]].vertices.clone()),
            p_w: paths.next(),
            p_u: paths.next(),
            ..Evidence::default()
        };
        return Some(ReductionFinding {
            kind,
            k: ctx.k,
            s: vec![u, v, w],
            x: ctx.bridges[x].vertices.clone(),
            add_edges: added_edges(ctx.g, kind, None, u, v, w),
            evidence,
        });
    }
    None
}

/// Tries one role assignment of a four-vertex set.
fn try_four(ctx: &Ctx, kind: ReductionKind, t: Vertex, u: Vertex, v: Vertex, w: Vertex) -> Option<ReductionFinding> {
    use ReductionKind::*;
    let g = ctx.g;
    let k = ctx.k;
    let finding = |x: usize, evidence: Evidence| ReductionFinding {
        kind,
        k,
        s: vec![t, u, v, w],
        x: ctx.bridges[x].vertices.clone(),
        add_edges: added_edges(g, kind, Some(t), u, v, w),
        evidence,
    };
    let small = |x: usize| ctx.bridges[x].len() <= k && ctx.attaches_exactly(x, &[u, v, w]);
    let n_b = ctx.bridges.len();
    match kind {
        R6 => {
            if !(g.has_edge(v, u) && g.has_edge(v, w)) || ![u, v, w].iter().all(|&i| ctx.bounded(i)) {
                return None;
            }
            (0..n_b).find(|&x| small(x)).map(|x| finding(x, Evidence::default()))
        }
        R7 => {
            if !ctx.s.iter().all(|&i| ctx.bounded(i)) {
                return None;
            }
            let full: Vec<usize> = (0..n_b).filter(|&b| ctx.bridges[b].attachments.len() == 4).collect();
            for &x in &full {
                let size = ctx.bridges[x].len();
                if !(size <= k || (size == k + 1 && ctx.edges_into(x) == 4)) {
                    continue;
                }
                let rest: Vec<usize> = full.iter().copied().filter(|&b| b != x).collect();
                let named = [rest.clone(), rest.clone(), rest];
                let Some((b, paths)) = choose(ctx, x, &named, &[(v, w), (v, u), (v, t)]) else { continue };
                let mut paths = paths.into_iter();
                return Some(finding(
                    x,
                    Evidence {
                        w: Some(ctx.bridges[b[0]].vertices.clone()),
                        y: Some(ctx.bridges[b[1]].vertices.clone()),
                        z: Some(ctx.bridges[b[2]].vertices.clone()),
                        p_w: paths.next(),
                        p_u: paths.next(),
                        p_t: paths.next(),
                    },
                ));
            }
            None
        }
        R8 => {
            if !ctx.s.iter().all(|&i| ctx.bounded(i)) {
                return None;
            }
            for x in (0..n_b).filter(|&x| small(x)) {
                let holders: Vec<usize> = (0..n_b).filter(|&b| b != x && ctx.attaches_all(b, &[u, v, w])).collect();
                let Some((b, paths)) = choose(ctx, x, &[holders.clone(), holders], &[(v, u)]) else { continue };
                return Some(finding(
                    x,
                    Evidence {
                        y: Some(ctx.bridges[b[0]].vertices.clone()),
                        z: Some(ctx.bridges[b[1]].vertices.clone()),
                        p_u: paths.into_iter().next(),
                        ..Evidence::default()
                    },
                ));
            }
            None
        }
        R1Big => {
            if !(g.has_edge(v, w) && g.has_edge(v, u)) {
                return None;
            }
            for x in (0..n_b).filter(|&x| small(x)) {
                if ![u, v, w].iter().all(|&i| g.degree(i) < k || ctx.interior_neighbours(i, x) <= 1) {
                    continue;
                }
                let twins: Vec<usize> = (0..n_b).filter(|&b| b != x && ctx.attaches_exactly(b, &[u, v, w])).collect();
                let holders: Vec<usize> = (0..n_b).filter(|&b| b != x && ctx.attaches_all(b, &[u, v, w])).collect();
                let Some((b, _)) = choose(ctx, x, &[twins, holders], &[]) else { continue };
                return Some(finding(
                    x,
                    Evidence {
                        y: Some(ctx.bridges[b[0]].vertices.clone()),
                        z: Some(ctx.bridges[b[1]].vertices.clone()),
                        ..Evidence::default()
                    },
                ));
            }
            None
        }
        _ => unreachable!("three-vertex kind"),
    }
}

/// Permutations of `items` in lexicographic order of positions.
fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// A connected vertex set `c` whose neighbourhood `n` has three or four
/// vertices; `c` is then the inside of a bridge of `G|n`.
struct Piece {
    c: Vec<Vertex>,
    n: Vec<Vertex>,
}

/// All pieces with at most `limit` inner vertices, ordered by `(n, c)`.
fn pieces(g: &Graph, limit: usize) -> Vec<Piece> {
    fn grow(g: &Graph, set: &mut Vec<Vertex>, limit: usize, seen: &mut BTreeSet<Vec<Vertex>>, out: &mut Vec<Piece>) {
        let mut key = set.clone();
        key.sort_unstable();
        if !seen.insert(key.clone()) {
            return;
        }
        let mut nb: Vec<Vertex> =
            set.iter().flat_map(|&x| g.neighbors(x).iter().copied()).filter(|y| key.binary_search(y).is_err()).collect();
        nb.sort_unstable();
        nb.dedup();
        if (3..=4).contains(&nb.len()) {
            out.push(Piece { c: key.clone(), n: nb.clone() });
        }
        if set.len() == limit {
            return;
        }
        // only vertices above the root keep each set to one root
        let root = set[0];
        for y in nb.into_iter().filter(|&y| y > root) {
            set.push(y);
            grow(g, set, limit, seen, out);
            set.pop();
        }
    }
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    let mut seen = BTreeSet::new();
    for r in g.vertices() {
        grow(g, &mut vec![r], limit, &mut seen, &mut out);
    }
    out.sort_by(|a, b| (&a.n, &a.c).cmp(&(&b.n, &b.c)));
    out
}

/// Candidate sets `S` for one kind, in lexicographic order. Every
/// reduction deletes the inside of a piece, so `S` is the piece's
/// neighbourhood, plus one further vertex `t` for R6, R8 and R1BIG.
fn candidate_sets(g: &Graph, kind: ReductionKind, k: usize, all: &[Piece]) -> BTreeSet<Vec<Vertex>> {
    use ReductionKind::*;
    let mut out = BTreeSet::new();
    for p in all {
        match kind {
            R1A | R1B | R1C | R2A | R2B => {
                if p.n.len() == 3 && Some(p.c.len()) == kind.interior_size() {
                    out.insert(p.n.clone());
                }
            }
            R7 => {
                if p.n.len() == 4 && p.c.len() + 4 <= k + 1 {
                    out.insert(p.n.clone());
                }
            }
            R6 | R8 | R1Big => {
                if p.n.len() != 3 || p.c.len() + 3 > k {
                    continue;
                }
                let e = |a: usize, b: usize| g.has_edge(p.n[a], p.n[b]);
                let centred = (e(0, 1) && e(0, 2)) || (e(1, 0) && e(1, 2)) || (e(2, 0) && e(2, 1));
                if !centred && kind != R8 {
                    continue;
                }
                for t in g.vertices().filter(|t| !p.n.contains(t) && p.c.binary_search(t).is_err()) {
                    let mut s = vec![t, p.n[0], p.n[1], p.n[2]];
                    s.sort_unstable();
                    out.insert(s);
                }
            }
        }
    }
    out
}

fn scan(g: &Graph, kind: ReductionKind, k: usize, all: &[Piece]) -> Option<ReductionFinding> {
    for s in candidate_sets(g, kind, k, all) {
        let ctx = Ctx::new(g, &s, k);
        for p in permutations(&s) {
            let found = if s.len() == 3 {
                try_three(&ctx, kind, p[0], p[1], p[2])
            } else {
                try_four(&ctx, kind, p[0], p[1], p[2], p[3])
            };
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// First reduction of one kind, scanning sets `S` lexicographically, then
/// role assignments, then bridges by smallest vertex.
pub fn find_reduction_of_kind(g: &Graph, kind: ReductionKind, k: usize) -> Option<ReductionFinding> {
    if k < kind.min_k() || !is_3_connected(g) {
        return None;
    }
    scan(g, kind, k, &pieces(g, k - 3))
}

/// First applicable reduction, trying kinds in [`ReductionKind::ALL`]
/// order. Expects a 3-connected graph; returns `None` otherwise.
pub fn find_reduction(g: &Graph, k: usize) -> Option<ReductionFinding> {
    if k < 4 || !is_3_connected(g) {
        return None;
    }
    let all = pieces(g, k - 3);
    ReductionKind::ALL.into_iter().filter(|kind| k >= kind.min_k()).find_map(|kind| scan(g, kind, k, &all))
}

/// Whether every clause of `f.kind` holds for the parts named in `f`.
pub fn verify_reduction(g: &Graph, f: &ReductionFinding) -> bool {
    use ReductionKind::*;
    let kind = f.kind;
    if f.s.len() != kind.set_size() || f.k < kind.min_k() || f.s.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut distinct = f.s.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != f.s.len() || !is_3_connected(g) {
        return false;
    }
    let ctx = Ctx::new(g, &f.s, f.k);
    let (u, v, w, t) = (f.u(), f.v(), f.w(), f.t());
    let Some(x) = ctx.bridge_of(&f.x) else { return false };
    if f.add_edges != added_edges(g, kind, t, u, v, w) {
        return false;
    }
    let bridge = |vs: &Option<Vec<Vertex>>| vs.as_ref().and_then(|vs| ctx.bridge_of(vs));
    // every named bridge and connector bridge must be distinct from the
    // others and from X
    let mut used = vec![x];
    let mut take = |b: usize| {
        if used.contains(&b) {
            false
        } else {
            used.push(b);
            true
        }
    };
    let connect = |p: &Option<Vec<Vertex>>, a: Vertex, b: Vertex| p.as_ref().and_then(|p| ctx.connector(p, a, b));
    let k = f.k;
    let ev = &f.evidence;
    match kind {
        R1A | R1B | R1C | R2A | R2B => {
            let r2 = matches!(kind, R2A | R2B);
            if r2 && (g.degree(u) >= k || g.degree(w) >= k) {
                return false;
            }
            if Some(ctx.bridges[x].interior.len()) != kind.interior_size() {
                return false;
            }
            let (Some(y), Some(z)) = (bridge(&ev.y), bridge(&ev.z)) else { return false };
            if !take(y) || !take(z) {
                return false;
            }
            if ctx.bridges[x].interior.len() > 1 && !(ctx.contains_copy(y, x) && ctx.contains_copy(z, x)) {
                return false;
            }
            let mut links = vec![(&ev.p_w, w)];
            if !r2 {
                links.push((&ev.p_u, u));
            }
            for (p, end) in links {
                match connect(p, v, end) {
                    None => return false,
                    Some(Some(b)) if !take(b) => return false,
                    _ => {}
                }
            }
            true
        }
        R6 => {
            ctx.bridges[x].len() <= k
                && ctx.attaches_exactly(x, &[u, v, w])
                && [u, v, w].iter().all(|&i| ctx.bounded(i))
                && g.has_edge(v, u)
                && g.has_edge(v, w)
        }
        R7 => {
            let t = t.expect("four-vertex kind");
            let size = ctx.bridges[x].len();
            if !(size <= k || (size == k + 1 && ctx.edges_into(x) == 4)) || !ctx.s.iter().all(|&i| ctx.bounded(i)) {
                return false;
            }
            let named = [bridge(&ev.w), bridge(&ev.y), bridge(&ev.z)];
            if ctx.bridges[x].attachments.len() != 4 {
                return false;
            }
            for b in named {
                match b {
                    Some(b) if ctx.bridges[b].attachments.len() == 4 && take(b) => {}
                    _ => return false,
                }
            }
            for (p, end) in [(&ev.p_w, w), (&ev.p_u, u), (&ev.p_t, t)] {
                match connect(p, v, end) {
                    None => return false,
                    Some(Some(b)) if !take(b) => return false,
                    _ => {}
                }
            }
            true
        }
        R8 => {
            if !(ctx.bridges[x].len() <= k && ctx.attaches_exactly(x, &[u, v, w])) || !ctx.s.iter().all(|&i| ctx.bounded(i)) {
                return false;
            }
            for b in [bridge(&ev.y), bridge(&ev.z)] {
                match b {
                    Some(b) if ctx.attaches_all(b, &[u, v, w]) && take(b) => {}
                    _ => return false,
                }
            }
            match connect(&ev.p_u, v, u) {
                None => false,
                Some(Some(b)) => take(b),
                Some(None) => true,
            }
        }
        R1Big => {
            if !(ctx.bridges[x].len() <= k && ctx.attaches_exactly(x, &[u, v, w])) || !g.has_edge(v, w) || !g.has_edge(v, u) {
                return false;
            }
            if ![u, v, w].iter().all(|&i| g.degree(i) < k || ctx.interior_neighbours(i, x) <= 1) {
                return false;
            }
            match bridge(&ev.y) {
                Some(y) if ctx.attaches_exactly(y, &[u, v, w]) && take(y) => {}
                _ => return false,
            }
            match bridge(&ev.z) {
                Some(z) if ctx.attaches_all(z, &[u, v, w]) && take(z) => {}
                _ => return false,
            }
            true
        }
    }
}

/// `g` with `X ∖ S` deleted and the added edges inserted. Vertices keep
/// their relative order.
pub fn apply_reduction(g: &Graph, f: &ReductionFinding) -> Result<Graph, Error> {
    if !verify_reduction(g, f) {
        return Err(Error::InvalidReduction);
    }
    let (out, _) = edit(g, &f.removed(), &[], &f.add_edges)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{contains_wheel, Budget};

    fn k35() -> Graph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..8 {
                e.push((a, b));
            }
        }
        Graph::from_edges(8, e).unwrap()
    }

    fn w7(g: &Graph) -> bool {
        contains_wheel(g, 7, None, Budget::Unlimited).unwrap().is_some()
    }

    /// Every pair of removed vertices leaves the rest connected.
    fn three_connected_by_hand(g: &Graph) -> bool {
        (0..g.n()).all(|a| {
            (a + 1..g.n()).all(|b| {
                let keep: Vec<Vertex> = (0..g.n()).filter(|&x| x != a && x != b).collect();
                let mut seen = vec![keep[0]];
                let mut i = 0;
                while i < seen.len() {
                    for &y in g.neighbors(seen[i]) {
                        if y != a && y != b && !seen.contains(&y) {
                            seen.push(y);
                        }
                    }
                    i += 1;
                }
                seen.len() == keep.len()
            })
        })
    }

    #[test]
    fn k35_reduces_by_r1a() {
        let g = k35();
        assert!(three_connected_by_hand(&g));
        let f = find_reduction(&g, 7).unwrap();
        assert_eq!(f.kind, ReductionKind::R1A);
        let mut s = f.s.clone();
        s.sort_unstable();
        assert_eq!(s, vec![0, 1, 2]);
        let removed = f.removed();
        assert_eq!(removed.len(), 1);
        // X, Y, Z and both connector midpoints are five different vertices
        // of the other part
        let y = f.evidence.y.as_ref().unwrap();
        let z = f.evidence.z.as_ref().unwrap();
        let p_w = f.evidence.p_w.as_ref().unwrap();
        let p_u = f.evidence.p_u.as_ref().unwrap();
        assert_eq!((p_w[0], p_w[2], p_u[0], p_u[2]), (f.v(), f.w(), f.v(), f.u()));
        let mut mids = vec![removed[0], y[3], z[3], p_w[1], p_u[1]];
        mids.sort_unstable();
        assert_eq!(mids, vec![3, 4, 5, 6, 7]);
        assert_eq!(f.add_edges, vec![Edge::new(f.u(), f.w())]);
        assert!(verify_reduction(&g, &f));
        let h = apply_reduction(&g, &f).unwrap();
        assert_eq!((h.n(), h.m()), (7, 13));
        assert!(!w7(&g) && !w7(&h));
    }

    #[test]
    fn missing_connector_fails_verification() {
        let g = k35();
        let mut f = find_reduction(&g, 7).unwrap();
        f.evidence.p_w = None;
        assert!(!verify_reduction(&g, &f));
        let mut f = find_reduction(&g, 7).unwrap();
        f.add_edges.clear();
        assert!(!verify_reduction(&g, &f));
        assert!(apply_reduction(&g, &f).is_err());
    }

    #[test]
    fn r6_needs_both_edges_at_v() {
        for seed in 0..6 {
            let g = crate::harness::reduction_instance(ReductionKind::R6, seed).unwrap();
            let f = find_reduction_of_kind(&g, ReductionKind::R6, 7).unwrap();
            assert!(verify_reduction(&g, &f));
            let (h, _) = edit(&g, &[], &[Edge::new(f.v(), f.u())], &[]).unwrap();
            assert!(!verify_reduction(&h, &f));
        }
    }

    #[test]
    fn k8_and_w7_have_no_reduction() {
        let k8 = Graph::from_edges(8, (0..8).flat_map(|a| (a + 1..8).map(move |b| (a, b)))).unwrap();
        let w7 = crate::oracle::wheel(7);
        for g in [k8, w7] {
            assert!(is_3_connected(&g));
            for kind in ReductionKind::ALL {
                assert_eq!(find_reduction_of_kind(&g, kind, 7), None, "{kind}");
            }
        }
    }

    #[test]
    fn no_reduction_below_four_or_without_3_connectivity() {
        assert_eq!(find_reduction(&k35(), 3), None);
        let mut e: Vec<(usize, usize)> = k35().edges().iter().map(|e| (e.u(), e.v())).collect();
        e.retain(|&(a, _)| a != 0);
        let g = Graph::from_edges(8, e).unwrap();
        assert!(!is_3_connected(&g));
        assert_eq!(find_reduction(&g, 7), None);
    }

    #[test]
    fn roles_follow_the_set_order() {
        let f = ReductionFinding {
            kind: ReductionKind::R6,
            k: 7,
            s: vec![9, 4, 2, 7],
            x: vec![],
            add_edges: vec![],
            evidence: Evidence::default(),
        };
        assert_eq!((f.t(), f.u(), f.v(), f.w()), (Some(9), 4, 2, 7));
        let g = k35();
        let f = find_reduction(&g, 7).unwrap();
        assert_eq!(f.t(), None);
        assert_eq!([f.u(), f.v(), f.w()].to_vec(), f.s);
    }

    #[test]
    fn bridges_in_evidence_are_bridges() {
        let g = k35();
        let f = find_reduction(&g, 7).unwrap();
        let mut s = f.s.clone();
        s.sort_unstable();
        let all: Vec<Vec<Vertex>> = bridges_of(&g, &s).into_iter().map(|b| b.vertices).collect();
        for b in [&f.x, f.evidence.y.as_ref().unwrap(), f.evidence.z.as_ref().unwrap()] {
            assert!(all.contains(b), "{b:?}");
        }
    }

    #[test]
    fn names_round_trip() {
        for kind in ReductionKind::ALL {
            assert_eq!(kind.to_string().parse::<ReductionKind>(), Ok(kind));
        }
        assert_eq!(ReductionKind::R1Big.to_string(), "R1BIG");
        assert_eq!("r2b".parse::<ReductionKind>(), Ok(ReductionKind::R2B));
        assert!("R3".parse::<ReductionKind>().is_err());
    }

    #[test]
    fn display_lists_roles_and_edges() {
        let f = find_reduction(&k35(), 7).unwrap();
        let add = f.add_edges[0];
        assert_eq!(
            f.to_string(),
            format!("R1A S=[{},{},{}] removed=1 add=[{add}]", f.s[0], f.s[1], f.s[2])
        );
    }
}
