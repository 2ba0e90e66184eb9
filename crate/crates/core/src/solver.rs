//! The recursive decision procedure for W7-subdivision containment.
//!
//! Each call works through the numbered steps in order: connectivity
//! splitting (2), cutset splits (3 to 9), reductions (10), exhaustive
//! search below 38 vertices (11) and the degree test (12). The first step
//! that applies decides the call, recursing where it produced smaller
//! graphs.

use std::fmt;

use crate::connectivity::{blocks, components, find_2_separator, is_3_connected};
use crate::cutsets::{find_cutset, CutsetKind};
use crate::decomposition::{split, split_on_2_separator};
use crate::error::Error;
use crate::graph::{induced_subgraph, Graph};
use crate::oracle::{contains_wheel, Budget, SubdivisionWitness};
use crate::reductions::{apply_reduction, find_reduction};

/// Graphs with fewer vertices are searched exhaustively at step 11.
pub const EXHAUSTIVE_BELOW: usize = 38;

/// Largest graph [`decide_w7_differential`] accepts by default.
pub const DEFAULT_ORACLE_CEILING: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub trace: bool,
    pub want_witness: bool,
    /// Threshold of step 11.
    pub exhaustive_below: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { trace: false, want_witness: false, exhaustive_below: EXHAUSTIVE_BELOW }
    }
}

/// One step taken (or declined) at a level of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: u8,
    pub detail: String,
}

/// One call of the procedure: the graph size, the steps in the order they
/// fired, and the calls made on the graphs they produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceNode {
    pub n: usize,
    pub m: usize,
    pub events: Vec<TraceEvent>,
    pub children: Vec<TraceNode>,
    pub contains: bool,
}

impl TraceNode {
    fn write(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let verdict = if self.contains { "accept" } else { "reject" };
        writeln!(f, "{:indent$}n={} m={} {verdict}", "", self.n, self.m, indent = 2 * depth)?;
        for e in &self.events {
            writeln!(f, "{:indent$}step {}: {}", "", e.step, e.detail, indent = 2 * depth + 2)?;
        }
        for c in &self.children {
            c.write(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for TraceNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub contains: bool,
    /// Present only when step 11 searched the input graph itself.
    pub witness: Option<SubdivisionWitness>,
    pub trace: Option<TraceNode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub solver: Decision,
    pub oracle: Decision,
    pub agree: bool,
}

fn step_of(kind: CutsetKind) -> u8 {
    use CutsetKind::*;
    match kind {
        Int3Edge => 3,
        Int4Edge => 4,
        EV1 | EV1a => 5,
        EV2 | EV2a => 6,
        EV3 | EV3a => 7,
        EV4 | EV4a => 8,
        Int1111 => 9,
    }
}

struct Level {
    node: TraceNode,
    witness: Option<SubdivisionWitness>,
}

impl Level {
    fn event(&mut self, step: u8, detail: impl Into<String>) {
        self.node.events.push(TraceEvent { step, detail: detail.into() });
    }

    fn done(mut self, contains: bool) -> Level {
        self.node.contains = contains;
        self
    }
}

/// Solves every part; accepts as soon as one part is accepted.
fn any_part(opts: &Options, mut level: Level, parts: Vec<Graph>) -> Level {
    for p in parts {
        assert!(p.n() < level.node.n, "recursion must shrink the graph");
        let child = solve(&p, opts, false);
        let accepted = child.node.contains;
        level.node.children.push(child.node);
        if accepted {
            return level.done(true);
        }
    }
    level.done(false)
}

fn solve(g: &Graph, opts: &Options, top: bool) -> Level {
    let mut level = Level {
        node: TraceNode { n: g.n(), m: g.m(), events: Vec::new(), children: Vec::new(), contains: false },
        witness: None,
    };
    if !is_3_connected(g) {
        let comps = components(g);
        if comps.len() > 1 {
            level.event(2, format!("{} components", comps.len()));
            let parts = comps.iter().map(|c| induced_subgraph(g, c).0).collect();
            return any_part(opts, level, parts);
        }
        let bl = blocks(g).expect("connected");
        if bl.len() > 1 {
            level.event(2, format!("{} blocks", bl.len()));
            let parts = bl.iter().map(|b| induced_subgraph(g, b).0).collect();
            return any_part(opts, level, parts);
        }
        // a 2-connected graph on at most three vertices has no separator
        // and falls through to the later steps
        if let Some(sep) = find_2_separator(g) {
            let parts = split_on_2_separator(g, sep).expect("separator from search");
            level.event(2, format!("2-separator {{{},{}}} into {} parts", sep.0, sep.1, parts.len()));
            return any_part(opts, level, parts);
        }
    }
    let mut order = CutsetKind::ALL;
    order.sort_by_key(|&k| step_of(k));
    'splits: for kind in order {
        let Some(f) = find_cutset(g, kind) else { continue };
        match split(g, &f) {
            Ok(r) => {
                level.event(step_of(kind), format!("{f} sizes {} {}", r.g1p.n(), r.g2p.n()));
                return any_part(opts, level, vec![r.g1p, r.g2p]);
            }
            Err(Error::DegenerateSplit(why)) => {
                // later split steps assume this cutset is absent, so
                // only the reductions and the final steps remain
                level.event(step_of(kind), format!("{f} declined: {why}"));
                break 'splits;
            }
            Err(e) => panic!("split of a found cutset failed: {e}"),
        }
    }
    if let Some(f) = find_reduction(g, 7) {
        let h = apply_reduction(g, &f).expect("found reduction verifies");
        level.event(10, f.to_string());
        return any_part(opts, level, vec![h]);
    }
    if g.n() < opts.exhaustive_below {
        let found = contains_wheel(g, 7, None, Budget::Unlimited).expect("unlimited budget");
        level.event(11, if found.is_some() { "subdivision found" } else { "no subdivision" });
        let contains = found.is_some();
        if top && opts.want_witness {
            level.witness = found;
        }
        return level.done(contains);
    }
    level.event(12, format!("max degree {}", g.max_degree()));
    let contains = g.max_degree() >= 7;
    level.done(contains)
}

/// Decides whether `g` contains a subdivision of W7.
pub fn decide_w7(g: &Graph, opts: &Options) -> Decision {
    let level = solve(g, opts, true);
    Decision {
        contains: level.node.contains,
        witness: level.witness,
        trace: opts.trace.then_some(level.node),
    }
}

/// Runs [`decide_w7`] and the exhaustive search side by side.
pub fn decide_w7_differential(g: &Graph, ceiling: usize) -> Result<Differential, Error> {
    if g.n() > ceiling {
        return Err(Error::OverCeiling { n: g.n(), ceiling });
    }
    let solver = decide_w7(g, &Options::default());
    let found = contains_wheel(g, 7, None, Budget::Unlimited).expect("unlimited budget");
    let oracle = Decision { contains: found.is_some(), witness: found, trace: None };
    let agree = solver.contains == oracle.contains;
    Ok(Differential { solver, oracle, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{generate, Family, FamilySpec};
    use crate::io::parse_graph6;
    use crate::oracle::{verify_witness, wheel};

    fn family(f: Family) -> Graph {
        generate(&FamilySpec::new(f)).unwrap()
    }

    fn steps_in_order(t: &TraceNode) -> bool {
        t.events.windows(2).all(|w| w[0].step <= w[1].step) && t.children.iter().all(steps_in_order)
    }

    fn last_step(g: &Graph) -> u8 {
        let d = decide_w7(g, &Options { trace: true, ..Options::default() });
        d.trace.unwrap().events.last().unwrap().step
    }

    #[test]
    fn w7_is_found_with_a_witness() {
        let g = wheel(7);
        let d = decide_w7(&g, &Options { want_witness: true, ..Options::default() });
        assert!(d.contains);
        verify_witness(&g, &wheel(7), d.witness.as_ref().unwrap()).unwrap();
        assert_eq!(last_step(&g), 11);
        assert_eq!(decide_w7(&g, &Options::default()).witness, None);
    }

    #[test]
    fn small_families() {
        assert!(!decide_w7(&family(Family::Petersen), &Options::default()).contains);
        assert!(!decide_w7(&family(Family::Cycle { n: 100 }), &Options::default()).contains);
        assert!(decide_w7(&family(Family::Complete { n: 8 }), &Options::default()).contains);
        assert!(!decide_w7(&family(Family::Complete { n: 7 }), &Options::default()).contains);
        assert_eq!(last_step(&family(Family::Complete { n: 8 })), 11);
    }

    #[test]
    fn k38_is_accepted_by_degree() {
        let g = family(Family::Complete { n: 38 });
        let d = decide_w7(&g, &Options { trace: true, ..Options::default() });
        assert!(d.contains);
        let t = d.trace.unwrap();
        assert!(t.children.is_empty());
        assert_eq!(t.events.iter().map(|e| e.step).collect::<Vec<_>>(), vec![12]);
    }

    #[test]
    fn cycle_recursion_bottoms_out_at_step_2_and_11() {
        let d = decide_w7(&family(Family::Cycle { n: 100 }), &Options { trace: true, ..Options::default() });
        let t = d.trace.unwrap();
        assert_eq!(t.events[0].step, 2);
        assert!(t.children.iter().all(|c| !c.contains));
    }

    #[test]
    fn traces_are_deterministic_and_ordered() {
        for f in [
            Family::CompleteBipartite { a: 3, b: 5 },
            Family::Grid { rows: 3, cols: 6 },
            Family::RandomGnp { n: 45, p: 0.12 },
        ] {
            let g = generate(&FamilySpec::seeded(f, 5)).unwrap();
            let opts = Options { trace: true, ..Options::default() };
            let a = decide_w7(&g, &opts);
            assert_eq!(a, decide_w7(&g, &opts));
            assert!(steps_in_order(a.trace.as_ref().unwrap()), "{f}");
        }
    }

    #[test]
    fn k35_goes_through_a_reduction() {
        let g = family(Family::CompleteBipartite { a: 3, b: 5 });
        let d = decide_w7(&g, &Options { trace: true, ..Options::default() });
        let t = d.trace.unwrap();
        assert_eq!(t.events[0].step, 10);
        assert!(t.events[0].detail.starts_with("R1A"));
        assert!(decide_w7_differential(&g, DEFAULT_ORACLE_CEILING).unwrap().agree);
    }

    #[test]
    fn differential_refuses_large_graphs() {
        let g = family(Family::Cycle { n: 21 });
        assert_eq!(
            decide_w7_differential(&g, DEFAULT_ORACLE_CEILING),
            Err(Error::OverCeiling { n: 21, ceiling: 20 })
        );
        assert!(decide_w7_differential(&g, 21).unwrap().agree);
    }

    /// A split side can carry three rim vertices whose spokes leave it in
    /// ways a two-vertex gadget cannot copy; these graphs were once
    /// rejected.
    #[test]
    fn sides_with_three_rim_vertices_are_kept() {
        for g6 in ["HZZYu@H", "JJ]nb`oWC__"] {
            let g = parse_graph6(g6.as_bytes()).unwrap();
            let d = decide_w7_differential(&g, DEFAULT_ORACLE_CEILING).unwrap();
            assert!(d.agree, "{g6}: solver {} oracle {}", d.solver.contains, d.oracle.contains);
        }
    }
}
