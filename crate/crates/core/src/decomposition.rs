//! Splitting a graph along a cutset into two smaller graphs, each keeping
//! one side and replacing the other by a small gadget.
//!
//! In every split graph the kept vertices come first, in increasing
//! original order (see [`SplitResult::kept1`]), followed by the gadget
//! vertices. Cut edges keep their endpoint on the kept side and are
//! reattached to gadget vertices on the replaced side.

use crate::cutsets::{verify_cutset, CutsetFinding, CutsetKind};
use crate::error::Error;
use crate::graph::{bridges_of, induced_subgraph, Edge, Graph, GraphBuilder, Vertex};
use crate::connectivity::Separator2;
use crate::traces::{fit_gadget, Fit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    /// `side1` and the removed vertices kept, `side2` replaced.
    pub g1p: Graph,
    /// `side2` and the removed vertices kept, `side1` replaced.
    pub g2p: Graph,
    /// Original labels of the first vertices of `g1p`.
    pub kept1: Vec<Vertex>,
    pub kept2: Vec<Vertex>,
    /// Which gadget replaced `side2` and `side1` respectively.
    pub gadget1: Gadget,
    pub gadget2: Gadget,
    pub finding: CutsetFinding,
    /// Gadget edges dropped from `g1p` and `g2p` because the replaced side
    /// cannot route a subdivision through them the same way.
    pub pruned1: Vec<Edge>,
    pub pruned2: Vec<Edge>,
}

/// Gadget shapes, named after the case of the split rule they implement.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Gadget {
    /// One new vertex on the near endpoints.
    Star,
    /// Two adjacent new vertices taking two cut edges each.
    Linked,
    /// Complete graph on the far endpoints.
    FarClique,
    /// Clique on 1 or 2 vertices adjacent to the removed vertex.
    SmallClique(usize),
    /// Path on three vertices adjacent to the removed vertex.
    Path3,
    TwoAdjacent,
    Triangle,
    /// Triangle with the edge from `x1` to the named removed vertex dropped.
    TriangleMissing(Vertex),
    /// Copies of the two incidence vertices joined to each other and to `v`.
    IncidencePair,
    IncidencePairApex,
    /// The replaced side itself with vertex groups contracted, used when
    /// the standard gadget offers routes the side does not have.
    Contracted(usize),
}

struct Builder {
    b: GraphBuilder,
    id: Vec<Option<Vertex>>,
    kept: Vec<Vertex>,
}

impl Builder {
    /// Starts from the subgraph induced by `side` and `removed`.
    fn new(g: &Graph, side: &[Vertex], removed: &[Vertex]) -> Self {
        let mut kept: Vec<Vertex> = side.iter().chain(removed).copied().collect();
        kept.sort_unstable();
        let (sub, _) = induced_subgraph(g, &kept);
        let mut id = vec![None; g.n()];
        for (i, &v) in kept.iter().enumerate() {
            id[v] = Some(i);
        }
        Builder { b: sub.builder(), id, kept }
    }

    fn of(&self, v: Vertex) -> Vertex {
        self.id[v].expect("kept vertex")
    }

    fn fresh(&mut self, count: usize) -> Vec<Vertex> {
        (0..count).map(|_| self.b.add_vertex()).collect()
    }

    fn join(&mut self, a: Vertex, b: Vertex) {
        self.b.add_edge(a, b);
    }

    fn clique(&mut self, vs: &[Vertex]) {
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                self.join(a, b);
            }
        }
    }

    /// Joins each of `xs` to each original vertex in `to`.
    fn attach(&mut self, xs: &[Vertex], to: &[Vertex]) {
        for &x in xs {
            for &t in to {
                let t = self.of(t);
                self.join(x, t);
            }
        }
    }

    fn finish(self) -> (Graph, Vec<Vertex>) {
        (self.b.build(), self.kept)
    }
}

fn sharing_pair(e: &[Edge]) -> (usize, usize) {
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if e[i].shares_endpoint(&e[j]) {
                return (i, j);
            }
        }
    }
    unreachable!("verified 4-edge cutset has a sharing pair")
}

/// Endpoint of `e` inside `side`.
fn end_in(e: Edge, side: &[Vertex]) -> Vertex {
    if side.binary_search(&e.u()).is_ok() {
        e.u()
    } else {
        e.v()
    }
}

fn neighbours_in(g: &Graph, v: Vertex, side: &[Vertex]) -> usize {
    g.neighbors(v).iter().filter(|x| side.binary_search(x).is_ok()).count()
}

/// Builds the graph keeping `keep`, replacing `other`.
fn replace(
    g: &Graph,
    f: &CutsetFinding,
    keep: &[Vertex],
    other: &[Vertex],
    keep_is_side1: bool,
) -> Result<(Graph, Vec<Vertex>, Gadget), Error> {
    use CutsetKind::*;
    let mut bd = Builder::new(g, keep, &f.vertices);
    let near = |e: Edge| end_in(e, keep);
    let far = |e: Edge| end_in(e, other);
    let e = &f.edges;
    let gadget = match f.kind {
        Int3Edge => {
            let z = bd.fresh(1);
            let ends: Vec<Vertex> = e.iter().map(|&x| near(x)).collect();
            bd.attach(&z, &ends);
            Gadget::Star
        }
        Int4Edge => {
            // the sharing pair goes to one gadget vertex when it shares its
            // far endpoint, to different ones when it shares its near one
            let zs = bd.fresh(2);
            bd.join(zs[0], zs[1]);
            let (i, j) = sharing_pair(e);
            let rest: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
            let order = if far(e[i]) == far(e[j]) { [i, j, rest[0], rest[1]] } else { [i, rest[0], j, rest[1]] };
            for (slot, &x) in order.iter().enumerate() {
                let a = bd.of(near(e[x]));
                bd.join(a, zs[slot / 2]);
            }
            Gadget::Linked
        }
        Int1111 => {
            let xs = bd.fresh(4);
            bd.clique(&xs);
            for (i, &x) in e.iter().enumerate() {
                let a = bd.of(near(x));
                bd.join(a, xs[i]);
            }
            Gadget::FarClique
        }
        EV1 | EV1a => {
            let v = f.vertices[0];
            let j = neighbours_in(g, v, other);
            let (size, gadget) = match (f.kind, j) {
                (EV1a, _) => (2, Gadget::TwoAdjacent),
                (_, 0) => return Err(Error::DegenerateSplit(format!("{v} has no neighbour in the replaced side"))),
                (_, 1 | 2) => (j, Gadget::SmallClique(j)),
                _ => (3, Gadget::Path3),
            };
            let xs = bd.fresh(size);
            if gadget == Gadget::Path3 {
                bd.join(xs[0], xs[1]);
                bd.join(xs[1], xs[2]);
            } else {
                bd.clique(&xs);
            }
            bd.attach(&xs, &[v]);
            let (a, b) = (bd.of(near(e[0])), bd.of(near(e[1])));
            bd.join(a, xs[0]);
            bd.join(b, xs[size - 1]);
            gadget
        }
        EV2 | EV2a => {
            let (v1, v2) = (f.vertices[0], f.vertices[1]);
            let (c1, c2) = (neighbours_in(g, v1, other), neighbours_in(g, v2, other));
            let gadget = match (f.kind, c1 >= 3, c2 >= 3) {
                (EV2a, _, _) | (_, false, false) => Gadget::TwoAdjacent,
                (_, true, true) => Gadget::Triangle,
                (_, true, false) => Gadget::TriangleMissing(v2),
                (_, false, true) => Gadget::TriangleMissing(v1),
            };
            let xs = bd.fresh(if gadget == Gadget::TwoAdjacent { 2 } else { 3 });
            bd.clique(&xs);
            bd.attach(&xs[1..], &[v1, v2]);
            match gadget {
                Gadget::TriangleMissing(low) => {
                    let high = if low == v1 { v2 } else { v1 };
                    bd.attach(&xs[..1], &[high]);
                }
                _ => bd.attach(&xs[..1], &[v1, v2]),
            }
            let a = bd.of(near(e[0]));
            bd.join(a, xs[0]);
            gadget
        }
        EV3 | EV3a if keep_is_side1 => {
            // replace G2: edges ordered by their G1 endpoint, then
            // distributed so that no gadget vertex takes both edges of one
            // G1 endpoint
            let v = f.vertices[0];
            let mut es: Vec<Edge> = e.clone();
            es.sort_by_key(|&x| (near(x), far(x)));
            let first = es.iter().filter(|&&x| near(x) == near(es[0])).count();
            let three_one = first == 1 || first == 3;
            let gadget = if f.kind == EV3 && (three_one || neighbours_in(g, v, other) >= 3) {
                Gadget::Triangle
            } else {
                Gadget::TwoAdjacent
            };
            let xs = bd.fresh(if gadget == Gadget::Triangle { 3 } else { 2 });
            bd.clique(&xs);
            bd.attach(&xs, &[v]);
            let slots = if gadget == Gadget::Triangle { [1, 0, 2, 1] } else { [0, 1, 1, 0] };
            for (x, slot) in es.iter().zip(slots) {
                let a = bd.of(near(*x));
                bd.join(a, xs[slot]);
            }
            gadget
        }
        EV3 | EV3a => {
            // replace G1 by copies of its two incidence vertices
            let v = f.vertices[0];
            let mut inc: Vec<Vertex> = e.iter().map(|&x| far(x)).collect();
            inc.sort_unstable();
            inc.dedup();
            let apex = f.kind == EV3 && neighbours_in(g, v, other) >= 3;
            let ps = bd.fresh(inc.len());
            bd.clique(&ps);
            bd.attach(&ps, &[v]);
            for &x in e {
                let slot = inc.binary_search(&far(x)).expect("incidence vertex");
                let a = bd.of(near(x));
                bd.join(a, ps[slot]);
            }
            if apex {
                let y = bd.fresh(1)[0];
                for &p in &ps {
                    bd.join(y, p);
                }
                bd.attach(&[y], &[v]);
                Gadget::IncidencePairApex
            } else {
                Gadget::IncidencePair
            }
        }
        EV4 | EV4a => {
            let size = if f.kind == EV4 { 3 } else { 2 };
            let xs = bd.fresh(size);
            bd.clique(&xs);
            bd.attach(&xs, &f.vertices);
            for (i, &x) in e.iter().enumerate() {
                let a = bd.of(near(x));
                // on G1's side both edges share one gadget endpoint
                bd.join(a, if keep_is_side1 { xs[i] } else { xs[0] });
            }
            if size == 3 {
                Gadget::Triangle
            } else {
                Gadget::TwoAdjacent
            }
        }
    };
    let (graph, kept) = bd.finish();
    Ok((graph, kept, gadget))
}

/// Splits `g` along `f`. Both results have fewer vertices than `g`.
pub fn split(g: &Graph, f: &CutsetFinding) -> Result<SplitResult, Error> {
    if !verify_cutset(g, f) {
        return Err(Error::InvalidCutset);
    }
    let (g1p, kept1, gadget1) = replace(g, f, &f.side1, &f.side2, true)?;
    let (g2p, kept2, gadget2) = replace(g, f, &f.side2, &f.side1, false)?;
    assert!(g1p.n() < g.n() && g2p.n() < g.n(), "split must shrink the graph");
    let (g1p, gadget1, pruned1) = fit(g, &f.side2, g1p, &kept1, gadget1)?;
    let (g2p, gadget2, pruned2) = fit(g, &f.side1, g2p, &kept2, gadget2)?;
    Ok(SplitResult { g1p, g2p, kept1, kept2, gadget1, gadget2, finding: f.clone(), pruned1, pruned2 })
}

/// Makes the gadget of `gp` sound for the replaced side `other`.
fn fit(g: &Graph, other: &[Vertex], gp: Graph, kept: &[Vertex], gadget: Gadget) -> Result<(Graph, Gadget, Vec<Edge>), Error> {
    Ok(match fit_gadget(g, other, &gp, kept) {
        Fit::Impossible => {
            return Err(Error::DegenerateSplit(format!("no replacement smaller than {other:?} keeps its routes")))
        }
        Fit::Exact => (gp, gadget, Vec::new()),
        Fit::Prune(del) => {
            let mut b = gp.builder();
            for e in &del {
                b.remove_edge(e.u(), e.v());
            }
            (b.build(), gadget, del)
        }
        Fit::Contract(groups) => {
            let mut bd = Builder::new(g, kept, &[]);
            let xs = bd.fresh(groups.len());
            let mut group_of = vec![None; g.n()];
            for (i, grp) in groups.iter().enumerate() {
                for &v in grp {
                    group_of[v] = Some(i);
                }
            }
            for (i, grp) in groups.iter().enumerate() {
                for &v in grp {
                    for &w in g.neighbors(v) {
                        if kept.binary_search(&w).is_ok() {
                            let t = bd.of(w);
                            bd.join(xs[i], t);
                        } else if let Some(j) = group_of[w].filter(|&j| j != i) {
                            bd.join(xs[i], xs[j]);
                        }
                    }
                }
            }
            (bd.finish().0, Gadget::Contracted(groups.len()), Vec::new())
        }
    })
}

/// Adds the edge `ab` if missing and returns the subgraph induced by each
/// bridge of the result relative to `{a, b}`.
pub fn split_on_2_separator(g: &Graph, sep: Separator2) -> Result<Vec<Graph>, Error> {
    let Separator2(a, b) = sep;
    if a == b || a >= g.n() || b >= g.n() {
        return Err(Error::NotASeparator(vec![a, b]));
    }
    let mut builder = g.builder();
    builder.add_edge(a, b);
    let gp = builder.build();
    let bridges = bridges_of(&gp, &[a.min(b), a.max(b)]);
    if bridges.len() < 2 {
        return Err(Error::NotASeparator(vec![a, b]));
    }
    Ok(bridges.iter().map(|br| induced_subgraph(&gp, &br.vertices).0).collect())
}
