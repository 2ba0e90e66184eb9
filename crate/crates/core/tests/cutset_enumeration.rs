//! The cutset finder against a plain enumeration of every candidate set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wheelsub::cutsets::{find_cutset, verify_cutset, CutsetKind};
use wheelsub::graph::{Edge, Graph, GraphBuilder, Vertex};

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in combinations(n - first - 1, r - 1) {
            for x in rest.iter_mut() {
                *x += first + 1;
            }
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn label(g: &Graph, removed: &[Vertex], cut: &[Edge]) -> Vec<Option<usize>> {
    let n = g.n();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut Vec<usize>, x: usize) -> usize {
        if root[x] != x {
            let r = find(root, root[x]);
            root[x] = r;
        }
        root[x]
    }
    for e in g.edges() {
        if removed.contains(&e.u()) || removed.contains(&e.v()) || cut.contains(&e) {
            continue;
        }
        let (a, b) = (find(&mut root, e.u()), find(&mut root, e.v()));
        root[a] = b;
    }
    (0..n)
        .map(|v| if removed.contains(&v) { None } else { Some(find(&mut root, v)) })
        .collect()
}

/// `(side1, side2)` when `(removed, cut)` is a cutset of `kind`.
fn naive_check(g: &Graph, kind: CutsetKind, removed: &[Vertex], cut: &[Edge]) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    use CutsetKind::*;
    let lab = label(g, removed, cut);
    let mut roots: Vec<usize> = lab.iter().flatten().copied().collect();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() != 2 {
        return None;
    }
    if cut.iter().any(|e| lab[e.u()] == lab[e.v()]) {
        return None;
    }
    let side = |r: usize| (0..g.n()).filter(|&v| lab[v] == Some(r)).collect::<Vec<_>>();
    let (mut a, mut b) = (side(roots[0]), side(roots[1]));
    if b[0] < a[0] {
        std::mem::swap(&mut a, &mut b);
    }
    let min = match kind {
        Int3Edge => 2,
        Int4Edge | EV1a | EV2a | EV3a | EV4a => 3,
        EV1 | EV2 | EV3 | EV4 => 4,
        Int1111 => 5,
    };
    if a.len() < min || b.len() < min {
        return None;
    }
    let touching = |s: &[Vertex]| -> Vec<usize> {
        let mut ends: Vec<Vertex> = cut.iter().flat_map(|e| [e.u(), e.v()]).filter(|x| s.contains(x)).collect();
        ends.sort_unstable();
        let mut counts = Vec::new();
        let mut i = 0;
        while i < ends.len() {
            let j = ends[i..].iter().take_while(|&&x| x == ends[i]).count();
            counts.push(j);
            i += j;
        }
        counts
    };
    let weak = |v: Vertex| {
        let nb = |s: &[Vertex]| g.neighbors(v).iter().filter(|x| s.contains(x)).count();
        g.degree(v) < 7 || nb(&a) <= 2 || nb(&b) <= 2
    };
    let pairs_sharing = || {
        let mut c = 0;
        for i in 0..cut.len() {
            for j in i + 1..cut.len() {
                let (p, q) = (cut[i], cut[j]);
                if p.u() == q.u() || p.u() == q.v() || p.v() == q.u() || p.v() == q.v() {
                    c += 1;
                }
            }
        }
        c
    };
    let special = |s: &[Vertex]| -> bool {
        let t = touching(s);
        match kind {
            EV3 => t.len() == 2,
            EV3a => t == vec![2, 2],
            EV4 | EV4a => t.len() == 1,
            _ => true,
        }
    };
    let ok = match kind {
        Int3Edge | EV1 | EV2 | EV3 | EV4 => true,
        Int4Edge => pairs_sharing() == 1,
        Int1111 => pairs_sharing() == 0,
        EV1a => g.degree(removed[0]) < 7,
        EV2a | EV3a | EV4a => removed.iter().all(|&v| weak(v)),
    };
    if !ok {
        return None;
    }
    if special(&a) {
        Some((a, b))
    } else if special(&b) {
        Some((b, a))
    } else {
        None
    }
}

fn naive_first(g: &Graph, kind: CutsetKind) -> Option<(Vec<Vertex>, Vec<Edge>, Vec<Vertex>)> {
    let (vc, sizes): (usize, Vec<usize>) = match kind {
        CutsetKind::Int3Edge => (0, vec![1, 2, 3]),
        CutsetKind::Int4Edge | CutsetKind::Int1111 => (0, vec![4]),
        CutsetKind::EV1 | CutsetKind::EV1a => (1, vec![2]),
        CutsetKind::EV3 | CutsetKind::EV3a => (1, vec![4]),
        CutsetKind::EV2 | CutsetKind::EV2a => (2, vec![1]),
        CutsetKind::EV4 | CutsetKind::EV4a => (2, vec![2]),
    };
    for removed in combinations(g.n(), vc) {
        let edges: Vec<Edge> = g
            .edges()
            .into_iter()
            .filter(|e| !removed.contains(&e.u()) && !removed.contains(&e.v()))
            .collect();
        let mut subsets: Vec<Vec<usize>> = sizes.iter().flat_map(|&r| combinations(edges.len(), r)).collect();
        subsets.sort();
        for s in subsets {
            let cut: Vec<Edge> = s.iter().map(|&i| edges[i]).collect();
            if let Some((side1, _)) = naive_check(g, kind, &removed, &cut) {
                return Some((removed, cut, side1));
            }
        }
    }
    None
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(i, j);
            }
        }
    }
    b.build()
}

/// Two dense random halves joined by a few random edges and a few
/// vertices adjacent to both, so that many cutset kinds occur.
fn two_blobs(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(8..=10);
    let split = rng.gen_range(3..=n - 4);
    let connectors = rng.gen_range(0..=2);
    let mut b = GraphBuilder::new(n);
    let body = n - connectors;
    for i in 0..body {
        for j in i + 1..body {
            if (i < split) == (j < split) && rng.gen_bool(0.7) {
                b.add_edge(i, j);
            }
        }
    }
    for _ in 0..rng.gen_range(1..=4) {
        b.add_edge(rng.gen_range(0..split), rng.gen_range(split..body));
    }
    for c in body..n {
        for _ in 0..rng.gen_range(2..=5) {
            b.add_edge(c, rng.gen_range(0..body));
        }
    }
    // shuffle labels so structure is not aligned with vertex order
    let mut perm: Vec<Vertex> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let g = b.build();
    Graph::from_edges(n, g.edges().iter().map(|e| (perm[e.u()], perm[e.v()]))).unwrap()
}

#[test]
fn finder_matches_enumeration_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut hits = std::collections::BTreeMap::new();
    for round in 0..160 {
        let g = if round % 2 == 0 {
            two_blobs(&mut rng)
        } else {
            let n = rng.gen_range(6..=10);
            gnp(n, rng.gen_range(0.25..0.5), &mut rng)
        };
        if g.m() > 26 {
            continue;
        }
        for kind in CutsetKind::ALL {
            let found = find_cutset(&g, kind);
            let expected = naive_first(&g, kind);
            if let Some(f) = &found {
                assert!(verify_cutset(&g, f), "{f} fails verification on {g:?}");
            }
            let got = found.map(|f| (f.vertices, f.edges, f.side1));
            assert_eq!(got, expected, "{kind} on {g:?}");
            if got.is_some() {
                *hits.entry(kind).or_insert(0) += 1;
            }
        }
    }
    // every kind must have been exercised
    for kind in CutsetKind::ALL {
        assert!(hits.get(&kind).copied().unwrap_or(0) > 0, "{kind} never found: {hits:?}");
    }
}
