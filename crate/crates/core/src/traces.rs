//! How a W7 subdivision can cross a gadget, and whether the side the
//! gadget replaces allows the same crossings.
//!
//! A trace is a set of gadget edges in which every gadget vertex has
//! degree 0, 2 or 3 (gadget vertices are never hubs). Suppressing the
//! degree-2 gadget vertices gives its signature: a graph on the attachment
//! vertices plus unlabeled branch vertices. A trace can only occur inside a
//! W7 subdivision if the signature is simple and every component reaches
//! an attachment vertex.

use std::collections::{HashMap, HashSet};

use crate::graph::{Edge, Graph, GraphBuilder, Vertex};
use crate::oracle::{contains_anchored_subdivision, contains_wheel, Budget};

const CHECK_BUDGET: Budget = Budget::Nodes(2_000_000);

/// Signature: attachment indices below `nb`, branch vertices from `nb`.
type Signature = Vec<(u8, u8)>;

struct Trace {
    mask: u32,
    sig: usize,
}

/// Pattern form of a split graph's gadget: attachment vertices first.
struct GadgetPattern {
    attachments: Vec<Vertex>,
    /// Pattern edges and the matching edges of the split graph.
    edges: Vec<((usize, usize), Edge)>,
    size: usize,
}

impl GadgetPattern {
    /// The gadget of `gp`; `attachments` must hold every kept vertex
    /// adjacent to it.
    fn new(gp: &Graph, kept: &[Vertex], attachments: &[Vertex]) -> Self {
        let k = kept.len();
        let attachments = attachments.to_vec();
        let nb = attachments.len();
        let pv = |x: Vertex| {
            if x < k {
                attachments.binary_search(&kept[x]).expect("attachment")
            } else {
                nb + x - k
            }
        };
        let edges = gp.edges().into_iter().filter(|e| e.v() >= k).map(|e| ((pv(e.u()), pv(e.v())), e)).collect();
        GadgetPattern { edges, size: nb + gp.n() - k, attachments }
    }

    /// The replaced side `other` of `g` in the same form, its vertices
    /// numbered in order after the attachments.
    fn side(g: &Graph, other: &[Vertex], attachments: &[Vertex]) -> Self {
        let nb = attachments.len();
        let mut edges = Vec::new();
        for (i, &u) in other.iter().enumerate() {
            for &w in g.neighbors(u) {
                if let Ok(j) = other.binary_search(&w) {
                    if i < j {
                        edges.push(((nb + i, nb + j), Edge::new(u, w)));
                    }
                } else if let Ok(a) = attachments.binary_search(&w) {
                    edges.push(((a, nb + i), Edge::new(u, w)));
                }
            }
        }
        GadgetPattern { attachments: attachments.to_vec(), edges, size: nb + other.len() }
    }

    fn nb(&self) -> usize {
        self.attachments.len()
    }
}

/// Kept vertices adjacent to the gadget of `gp` or to `other` in `g`.
fn attachments_of(g: &Graph, other: &[Vertex], gp: &Graph, kept: &[Vertex]) -> Vec<Vertex> {
    let k = kept.len();
    let mut out: Vec<Vertex> = gp.edges().iter().filter(|e| e.u() < k && e.v() >= k).map(|e| kept[e.u()]).collect();
    for &u in other {
        out.extend(g.neighbors(u).iter().copied().filter(|w| other.binary_search(w).is_err()));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Non-hub branch vertices of W7.
const RIM: usize = 7;

/// Largest replaced side, in edges, whose traces are enumerated.
const SIDE_EDGE_LIMIT: usize = 16;

/// Every signature of a trace through the replaced side, or `None` when
/// the side has too many edges to enumerate.
fn side_signatures(p: &GadgetPattern, hubs: u32) -> Option<HashSet<Signature>> {
    if p.edges.len() > SIDE_EDGE_LIMIT {
        return None;
    }
    let nb = p.nb();
    let all: HashSet<Signature> = (1u32..(1 << p.edges.len())).filter_map(|mask| signature(p, mask, RIM)).collect();
    Some(all.into_iter().filter(|sig| fits_wheel(hubs, nb, sig)).collect())
}

thread_local! {
    static FITS: std::cell::RefCell<HashMap<(u32, usize, Signature), bool>> = std::cell::RefCell::new(HashMap::new());
}

/// Whether a trace with signature `sig` can be part of a W7 subdivision.
///
/// Each signature vertex either lands on a vertex of W7 or inside one of its
/// subdivided edges. Branch vertices need a rim vertex. A signature edge is
/// a path with no other branch vertex inside, so a chain through in-edge
/// vertices joining two placed vertices must follow one edge of W7.
/// Attachment `a` may be the hub only if bit `a` of `hubs` is set.
fn fits_wheel(hubs: u32, nb: usize, sig: &Signature) -> bool {
    let key = (hubs, nb, sig.clone());
    if let Some(hit) = FITS.with(|m| m.borrow().get(&key).copied()) {
        return hit;
    }
    let size = sig.iter().map(|&(a, b)| a.max(b) as usize + 1).max().unwrap_or(0);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for &(a, b) in sig {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    let optional: Vec<usize> = (0..nb.min(size)).filter(|&x| matches!(adj[x].len(), 1 | 2)).collect();
    let hit = (0u32..1 << optional.len()).any(|choice| {
        let placed: Vec<bool> = (0..size)
            .map(|x| match optional.iter().position(|&o| o == x) {
                Some(i) => choice >> i & 1 == 1,
                None => adj[x].len() >= 3,
            })
            .collect();
        match joined(&adj, &placed) {
            Some(edges) => embeds_in_wheel(hubs, nb, &adj, &placed, &edges),
            None => false,
        }
    });
    FITS.with(|m| m.borrow_mut().insert(key, hit));
    hit
}

/// Pairs of placed vertices joined through unplaced ones, or `None` if a
/// chain closes on itself.
fn joined(adj: &[Vec<usize>], placed: &[bool]) -> Option<Vec<(usize, usize)>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for a in (0..adj.len()).filter(|&a| placed[a]) {
        for &first in &adj[a] {
            let (mut prev, mut cur) = (a, first);
            while !placed[cur] {
                seen[cur] = true;
                match adj[cur].iter().find(|&&x| x != prev) {
                    Some(&next) => (prev, cur) = (cur, next),
                    None => break,
                }
            }
            if placed[cur] {
                if cur == a {
                    return None;
                }
                if a < cur {
                    out.push((a, cur));
                }
            }
        }
    }
    // unplaced chains touching no placed vertex must be paths
    for x in 0..adj.len() {
        if !placed[x] && !seen[x] && !adj[x].is_empty() {
            let mut stack = vec![x];
            let mut all_two = true;
            seen[x] = true;
            while let Some(y) = stack.pop() {
                all_two &= adj[y].len() == 2;
                for &z in &adj[y] {
                    if !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
            if all_two {
                return None;
            }
        }
    }
    out.sort_unstable();
    if out.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(out)
}

/// Places the placed vertices on W7 (hub 0, rim 1 to 7) so that joined
/// pairs are W7 edges.
fn embeds_in_wheel(hubs: u32, nb: usize, adj: &[Vec<usize>], placed: &[bool], edges: &[(usize, usize)]) -> bool {
    let order: Vec<usize> = (0..adj.len()).filter(|&x| placed[x]).collect();
    let wheel_adjacent = |p: usize, q: usize| p != q && (p == 0 || q == 0 || (p + RIM - q) % RIM == 1 || (q + RIM - p) % RIM == 1);
    fn go(
        i: usize,
        order: &[usize],
        image: &mut Vec<usize>,
        ok: &dyn Fn(usize, usize, &[usize]) -> bool,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        for w in 0..=RIM {
            if ok(order[i], w, image) {
                image[order[i]] = w;
                if go(i + 1, order, image, ok) {
                    return true;
                }
                image[order[i]] = usize::MAX;
            }
        }
        false
    }
    let ok = |x: usize, w: usize, image: &[usize]| {
        if image.contains(&w) || (w == 0 && (x >= nb || hubs >> x & 1 == 0)) || (w != 0 && adj[x].len() > 3) {
            return false;
        }
        edges.iter().all(|&(a, b)| {
            let other = if a == x { b } else if b == x { a } else { return true };
            image[other] == usize::MAX || wheel_adjacent(w, image[other])
        })
    };
    let mut image = vec![usize::MAX; adj.len()];
    go(0, &order, &mut image, &ok)
}

fn signature(p: &GadgetPattern, mask: u32, max_branches: usize) -> Option<Signature> {
    let nb = p.nb();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); p.size];
    for (i, &((a, b), _)) in p.edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    if (nb..p.size).any(|x| !matches!(adj[x].len(), 0 | 2 | 3)) {
        return None;
    }
    // walk each chain of degree-2 gadget vertices from its ends
    let is_branch = |x: usize| x < nb || adj[x].len() == 3;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen_chain = vec![false; p.size];
    for s in 0..p.size {
        if !is_branch(s) {
            continue;
        }
        for &first in &adj[s] {
            let (mut prev, mut at) = (s, first);
            while !is_branch(at) {
                seen_chain[at] = true;
                let next = if adj[at][0] == prev { adj[at][1] } else { adj[at][0] };
                prev = at;
                at = next;
            }
            if s < at || (s == at && first < prev) {
                edges.push((s, at));
            } else if s == at {
                return None;
            }
        }
    }
    // a cycle of degree-2 gadget vertices touches nothing
    if (nb..p.size).any(|x| adj[x].len() == 2 && !seen_chain[x]) {
        return None;
    }
    edges.sort_unstable();
    if edges.iter().any(|&(a, b)| a == b) || edges.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    // every component must contain an attachment
    let mut root: Vec<usize> = (0..p.size).collect();
    fn find(r: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while r[x] != x {
            r[x] = r[r[x]];
            x = r[x];
        }
        x
    }
    for &(a, b) in &edges {
        let (ra, rb) = (find(&mut root, a), find(&mut root, b));
        root[ra.max(rb)] = ra.min(rb);
    }
    let branches: Vec<usize> = (nb..p.size).filter(|&x| adj[x].len() == 3).collect();
    if branches.len() > max_branches || branches.iter().any(|&x| find(&mut root, x) >= nb) {
        return None;
    }
    let mut best: Option<Signature> = None;
    permute(&mut branches.clone(), 0, &mut |order| {
        let label = |x: usize| if x < nb { x } else { nb + order.iter().position(|&y| y == x).unwrap() };
        let mut sig: Signature = edges
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (label(a), label(b));
                (a.min(b) as u8, a.max(b) as u8)
            })
            .collect();
        sig.sort_unstable();
        if best.as_ref().map_or(true, |b| sig < *b) {
            best = Some(sig);
        }
    });
    best
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Whether `sig` can be drawn in the replaced side with the attachments
/// fixed. An exhausted search counts as drawable.
fn realizable(host: &Graph, place: &[Vertex], nb: usize, sig: &Signature) -> bool {
    let mut used: Vec<usize> = sig.iter().flat_map(|&(a, b)| [a as usize, b as usize]).collect();
    used.sort_unstable();
    used.dedup();
    let pos = |x: usize| used.binary_search(&x).unwrap();
    let mut pb = GraphBuilder::new(used.len());
    for &(a, b) in sig {
        pb.add_edge(pos(a as usize), pos(b as usize));
    }
    let anchors: Vec<Option<Vertex>> = used.iter().map(|&x| (x < nb).then(|| place[x])).collect();
    let mut blocked = vec![false; host.n()];
    for &b in &place[..nb] {
        blocked[b] = true;
    }
    !matches!(contains_anchored_subdivision(host, &pb.build(), &anchors, &blocked, CHECK_BUDGET), Ok(None))
}

/// How to make a split graph's gadget behave like the side it replaces.
pub(crate) enum Fit {
    /// The gadget is fine as built.
    Exact,
    /// Delete these gadget edges.
    Prune(Vec<Edge>),
    /// Replace the gadget by the replaced side with each of these vertex
    /// groups contracted to one vertex; other vertices are deleted.
    Contract(Vec<Vec<Vertex>>),
    /// No smaller replacement keeps every crossing.
    Impossible,
}

/// Largest replaced side for which contraction is attempted.
const CONTRACT_LIMIT: usize = 24;

/// Largest degree a contracted vertex may get, so that it never centres a
/// wheel.
const CONTRACT_DEGREE: usize = 6;

const RELEVANCE_BUDGET: Budget = Budget::Nodes(200_000);

/// W7 containment, or `None` if the search ran out.
fn has_wheel(g: &Graph) -> Option<bool> {
    contains_wheel(g, RIM, None, RELEVANCE_BUDGET).ok().map(|w| w.is_some())
}

/// `g` with `other` replaced by a drawing of `sig`, every signature edge
/// subdivided once.
fn with_crossing(g: &Graph, other: &[Vertex], attachments: &[Vertex], sig: &Signature) -> Graph {
    let outside: Vec<Vertex> = (0..g.n()).filter(|v| other.binary_search(v).is_err()).collect();
    let index = |v: Vertex| outside.binary_search(&v).expect("outside vertex");
    let nb = attachments.len();
    let top = sig.iter().map(|&(a, b)| a.max(b) as usize + 1).max().unwrap_or(nb).max(nb);
    let mut b = GraphBuilder::new(outside.len() + top - nb + sig.len());
    for e in g.edges() {
        if other.binary_search(&e.u()).is_err() && other.binary_search(&e.v()).is_err() {
            b.add_edge(index(e.u()), index(e.v()));
        }
    }
    let place = |x: usize| if x < nb { index(attachments[x]) } else { outside.len() + x - nb };
    for (i, &(x, y)) in sig.iter().enumerate() {
        let mid = outside.len() + top - nb + i;
        b.add_edge(place(x as usize), mid);
        b.add_edge(mid, place(y as usize));
    }
    b.build()
}

/// Decides how to fit the gadget of `gp` (vertices past `kept`) to the
/// replaced side `other` of `g`.
///
/// Every crossing the gadget offers must be possible through `other`, and
/// when `other` is small enough to enumerate, every crossing `other` offers
/// must be possible through the gadget. If deleting gadget edges achieves
/// this, that is used. Otherwise `other` is contracted, which can only
/// offer crossings `other` has, until it is small; each step must keep
/// every crossing still required. Large sides are only pruned.
pub(crate) fn fit_gadget(g: &Graph, other: &[Vertex], gp: &Graph, kept: &[Vertex]) -> Fit {
    let attachments = attachments_of(g, other, gp, kept);
    let p = GadgetPattern::new(gp, kept, &attachments);
    let nb = p.nb();
    assert!(p.edges.len() <= 20, "gadget too large to enumerate");
    let side_host = SideHost::new(g, other, &attachments, &groups_of(other));
    let hubs = attachments.iter().enumerate().filter(|&(i, &a)| i < 32 && g.degree(a) >= RIM).fold(0u32, |acc, (i, _)| acc | 1 << i);
    let side_sigs = side_signatures(&GadgetPattern::side(g, other, &attachments), hubs);

    let mut ids: HashMap<Signature, usize> = HashMap::new();
    let mut sigs: Vec<Signature> = Vec::new();
    let mut good: Vec<bool> = Vec::new();
    let mut traces: Vec<Trace> = Vec::new();
    for mask in 1u32..(1 << p.edges.len()) {
        let Some(sig) = signature(&p, mask, usize::MAX) else { continue };
        let id = *ids.entry(sig.clone()).or_insert(sigs.len());
        if id == sigs.len() {
            good.push(match &side_sigs {
                Some(ss) => ss.contains(&sig) || !fits_wheel(hubs, nb, &sig),
                None => realizable(&side_host.host, &side_host.place, nb, &sig),
            });
            sigs.push(sig);
        }
        traces.push(Trace { mask, sig: id });
    }
    // signatures the gadget still offers after deleting `del`
    let offered = |del: u32| {
        let mut on = vec![false; sigs.len()];
        for t in traces.iter().filter(|t| t.mask & del == 0) {
            on[t.sig] = true;
        }
        on
    };
    // every side crossing the gadget lacks must be useless: either the
    // split graph has a W7 anyway or the crossing completes no W7 outside
    let complete = |del: u32| {
        let Some(ss) = &side_sigs else { return true };
        let on = offered(del);
        let mut missing: Vec<&Signature> = ss.iter().filter(|s| !ids.get(*s).is_some_and(|&id| on[id])).collect();
        if missing.is_empty() {
            return true;
        }
        missing.sort_unstable();
        let pruned = Graph::from_edges(gp.n(), gp.edges().into_iter().filter(|e| {
            !(0..p.edges.len()).any(|i| del >> i & 1 == 1 && p.edges[i].1 == *e)
        }).map(|e| (e.u(), e.v())))
        .expect("subgraph of a graph");
        has_wheel(&pruned) == Some(true) || missing.iter().all(|s| has_wheel(&with_crossing(g, other, &attachments, s)) == Some(false))
    };
    let bad_edges: u32 = traces.iter().filter(|t| !good[t.sig]).fold(0, |acc, t| acc | t.mask);
    let candidates: Vec<usize> = (0..p.edges.len()).filter(|&i| bad_edges >> i & 1 == 1).collect();
    let mut best: Option<(usize, u32)> = None;
    for sub in 0u32..(1 << candidates.len()) {
        let del: u32 = candidates.iter().enumerate().filter(|(j, _)| sub >> j & 1 == 1).fold(0, |acc, (_, &i)| acc | 1 << i);
        if traces.iter().any(|t| t.mask & del == 0 && !good[t.sig]) {
            continue;
        }
        let score = offered(del).iter().filter(|&&k| k).count();
        let better = match best {
            None => true,
            Some((s, d)) => score > s || (score == s && (del.count_ones(), del) < (d.count_ones(), d)),
        };
        if better {
            best = Some((score, del));
        }
    }
    let (score, del) = best.expect("deleting every candidate edge is always sound");
    let good_count = good.iter().filter(|&&ok| ok).count();
    if score == good_count && complete(del) {
        if del == 0 {
            return Fit::Exact;
        }
        return Fit::Prune((0..p.edges.len()).filter(|&i| del >> i & 1 == 1).map(|i| p.edges[i].1).collect());
    }
    let required: Vec<&Signature> = match &side_sigs {
        Some(ss) => {
            let mut all: Vec<&Signature> = ss.iter().collect();
            all.sort_unstable();
            all
        }
        None => {
            if other.len() > CONTRACT_LIMIT {
                return Fit::Prune((0..p.edges.len()).filter(|&i| del >> i & 1 == 1).map(|i| p.edges[i].1).collect());
            }
            sigs.iter().zip(&good).filter(|(_, &ok)| ok).map(|(s, _)| s).collect()
        }
    };
    let target = gp.n() - kept.len();
    match contract(g, other, &attachments, &required, target) {
        Some(groups) if groups.len() < other.len() => Fit::Contract(groups),
        _ => Fit::Impossible,
    }
}

fn groups_of(side: &[Vertex]) -> Vec<Vec<Vertex>> {
    side.iter().map(|&v| vec![v]).collect()
}

/// The replaced side with vertex groups contracted, plus the attachments.
struct SideHost {
    host: Graph,
    /// Host vertex of each attachment.
    place: Vec<Vertex>,
}

impl SideHost {
    fn new(g: &Graph, other: &[Vertex], attachments: &[Vertex], groups: &[Vec<Vertex>]) -> Self {
        let k = groups.len();
        let mut group_of = vec![usize::MAX; g.n()];
        for (i, grp) in groups.iter().enumerate() {
            for &v in grp {
                group_of[v] = i;
            }
        }
        let mut hb = GraphBuilder::new(k + attachments.len());
        for &u in other {
            let gu = group_of[u];
            if gu == usize::MAX {
                continue;
            }
            for &w in g.neighbors(u) {
                if let Ok(a) = attachments.binary_search(&w) {
                    hb.add_edge(gu, k + a);
                } else if group_of[w] != usize::MAX && group_of[w] != gu && other.binary_search(&w).is_ok() {
                    hb.add_edge(gu, group_of[w]);
                }
            }
        }
        SideHost { host: hb.build(), place: (k..k + attachments.len()).collect() }
    }
}

/// Number of distinct neighbours outside its own group that each group
/// has once contracted.
fn contracted_degrees(g: &Graph, other: &[Vertex], groups: &[Vec<Vertex>]) -> Vec<usize> {
    let mut group_of = vec![usize::MAX; g.n()];
    for (i, grp) in groups.iter().enumerate() {
        for &v in grp {
            group_of[v] = i;
        }
    }
    groups
        .iter()
        .enumerate()
        .map(|(i, grp)| {
            let mut seen: Vec<(bool, usize)> = Vec::new();
            for &v in grp {
                for &w in g.neighbors(v) {
                    if other.binary_search(&w).is_err() {
                        seen.push((false, w));
                    } else if group_of[w] != usize::MAX && group_of[w] != i {
                        seen.push((true, group_of[w]));
                    }
                }
            }
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        })
        .collect()
}

/// Greedily contracts adjacent groups and deletes groups of `other` while
/// every signature in `required` stays drawable, until at most `target`
/// groups remain or no step is possible.
fn contract(g: &Graph, other: &[Vertex], attachments: &[Vertex], required: &[&Signature], target: usize) -> Option<Vec<Vec<Vertex>>> {
    let nb = attachments.len();
    let keeps_all = |groups: &[Vec<Vertex>]| {
        let h = SideHost::new(g, other, attachments, groups);
        required.iter().all(|s| realizable(&h.host, &h.place, nb, s))
    };
    let mut groups = groups_of(other);
    'outer: while groups.len() > target {
        let h = SideHost::new(g, other, attachments, &groups);
        for e in h.host.edges() {
            let (a, b) = (e.u(), e.v());
            if b >= groups.len() {
                continue;
            }
            let mut next = groups.clone();
            let moved = next.remove(b);
            next[a].extend(moved);
            next[a].sort_unstable();
            if contracted_degrees(g, other, &next)[a] <= CONTRACT_DEGREE && keeps_all(&next) {
                groups = next;
                continue 'outer;
            }
        }
        for i in 0..groups.len() {
            let mut next = groups.clone();
            next.remove(i);
            if keeps_all(&next) {
                groups = next;
                continue 'outer;
            }
        }
        break;
    }
    contracted_degrees(g, other, &groups).iter().all(|&d| d <= CONTRACT_DEGREE).then_some(groups)
}
