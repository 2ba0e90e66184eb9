//! Graph families and the randomized suites that check the solver, the
//! reductions and the splits against exhaustive search.
//!
//! Every suite instance draws from its own seed, so a failing line can be
//! replayed with `count = 1` and that seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::connectivity::is_3_connected;
use crate::cutsets::{find_cutset, verify_cutset, CutsetFinding, CutsetKind};
use crate::decomposition::split;
use crate::error::Error;
use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::io::to_graph6;
use crate::oracle::{contains_wheel, Budget};
use crate::reductions::{apply_reduction, find_reduction_of_kind, ReductionKind};
use crate::solver::{decide_w7, Options, DEFAULT_ORACLE_CEILING};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// Hub 0, rim 1..=k in cyclic order.
    Wheel { k: usize },
    Complete { n: usize },
    /// Parts `0..a` and `a..a+b`.
    CompleteBipartite { a: usize, b: usize },
    Cycle { n: usize },
    Path { n: usize },
    /// Outer cycle 0..5, inner pentagram 5..10, spokes i to i+5.
    Petersen,
    /// Vertex `r * cols + c`.
    Grid { rows: usize, cols: usize },
    RandomGnp { n: usize, p: f64 },
    RandomRegular { n: usize, d: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Wheel { k } => write!(f, "wheel({k})"),
            Family::Complete { n } => write!(f, "complete({n})"),
            Family::CompleteBipartite { a, b } => write!(f, "complete_bipartite({a},{b})"),
            Family::Cycle { n } => write!(f, "cycle({n})"),
            Family::Path { n } => write!(f, "path({n})"),
            Family::Petersen => f.write_str("petersen"),
            Family::Grid { rows, cols } => write!(f, "grid({rows},{cols})"),
            Family::RandomGnp { n, p } => write!(f, "random_gnp({n},{p})"),
            Family::RandomRegular { n, d } => write!(f, "random_regular({n},{d})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    /// Only the random families use it.
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec { family, seed: 0 }
    }

    pub fn seeded(family: Family, seed: u64) -> Self {
        FamilySpec { family, seed }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidFamily(msg.into())
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &FamilySpec) -> Result<Graph, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let g = match spec.family {
        Family::Wheel { k } => {
            if k < 3 {
                return Err(invalid(format!("wheel needs k >= 3, got {k}")));
            }
            let mut b = GraphBuilder::new(k + 1);
            for i in 1..=k {
                b.add_edge(0, i);
                b.add_edge(i, i % k + 1);
            }
            b.build()
        }
        Family::Complete { n } => {
            let mut b = GraphBuilder::new(n);
            for i in 0..n {
                for j in i + 1..n {
                    b.add_edge(i, j);
                }
            }
            b.build()
        }
        Family::CompleteBipartite { a, b: nb } => {
            let mut b = GraphBuilder::new(a + nb);
            for i in 0..a {
                for j in a..a + nb {
                    b.add_edge(i, j);
                }
            }
            b.build()
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(invalid(format!("cycle needs n >= 3, got {n}")));
            }
            let mut b = GraphBuilder::new(n);
            for i in 0..n {
                b.add_edge(i, (i + 1) % n);
            }
            b.build()
        }
        Family::Path { n } => {
            let mut b = GraphBuilder::new(n);
            for i in 1..n {
                b.add_edge(i - 1, i);
            }
            b.build()
        }
        Family::Petersen => {
            let mut b = GraphBuilder::new(10);
            for i in 0..5 {
                b.add_edge(i, (i + 1) % 5);
                b.add_edge(5 + i, 5 + (i + 2) % 5);
                b.add_edge(i, i + 5);
            }
            b.build()
        }
        Family::Grid { rows, cols } => {
            let mut b = GraphBuilder::new(rows * cols);
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        b.add_edge(r * cols + c, r * cols + c + 1);
                    }
                    if r + 1 < rows {
                        b.add_edge(r * cols + c, (r + 1) * cols + c);
                    }
                }
            }
            b.build()
        }
        Family::RandomGnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("edge probability {p} outside [0, 1]")));
            }
            gnp(&mut rng, n, p)
        }
        Family::RandomRegular { n, d } => {
            if d >= n.max(1) || n * d % 2 == 1 {
                return Err(invalid(format!("no {d}-regular graph on {n} vertices")));
            }
            random_regular(&mut rng, n, d)
        }
    };
    Ok(g)
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
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

/// A circulant d-regular graph shuffled by degree-preserving edge swaps.
fn random_regular(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for s in 1..=d / 2 {
            b.add_edge(i, (i + s) % n);
        }
        if d % 2 == 1 {
            b.add_edge(i, (i + n / 2) % n);
        }
    }
    let mut edges: Vec<(Vertex, Vertex)> = b.clone().build().edges().iter().map(|e| (e.u(), e.v())).collect();
    if edges.len() < 2 {
        return b.build();
    }
    for _ in 0..10 * edges.len() {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let ((a, c), (x, y)) = (edges[i], edges[j]);
        let (x, y) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
        // a-c, x-y becomes a-x, c-y
        if a == x || c == y || b.has_edge(a, x) || b.has_edge(c, y) || i == j {
            continue;
        }
        b.remove_edge(a, c);
        b.remove_edge(edges[j].0, edges[j].1);
        b.add_edge(a, x);
        b.add_edge(c, y);
        edges[i] = (a, x);
        edges[j] = (c, y);
    }
    b.build()
}

/// Number of attempts [`reduction_instance`] makes before giving up.
const CONSTRUCTION_ATTEMPTS: usize = 20_000;

/// Largest constructed reduction instance.
pub const CONSTRUCTED_MAX_N: usize = 16;

/// A 3-connected graph on at most 16 vertices in which a reduction of
/// `kind` (for W7) is found; for even seeds it also contains a W7
/// subdivision. Deterministic in `seed`; `None` if none was built within
/// the attempt limit.
pub fn reduction_instance(kind: ReductionKind, seed: u64) -> Option<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((kind as u64) << 56));
    let positive = seed % 2 == 0;
    (0..CONSTRUCTION_ATTEMPTS).find_map(|_| {
        let g = hung_copies(&mut rng, kind, positive)?;
        let ok = is_3_connected(&g)
            && (!positive || g.max_degree() >= 7)
            && find_reduction_of_kind(&g, kind, 7).is_some()
            && (!positive || oracle(&g));
        ok.then_some(g)
    })
}

/// A set `S` with several copies of one small bridge hung on it, a few
/// other bridges, and random edges inside `S`; labels shuffled. With
/// `dense`, a random dense core is added on part of `S`.
fn hung_copies(rng: &mut ChaCha8Rng, kind: ReductionKind, dense: bool) -> Option<Graph> {
    use ReductionKind::*;
    let s = kind.set_size();
    // with a dense core R7 keeps three one-vertex copies, the core being
    // the fourth bridge on all of S
    let lean = dense && kind == R7;
    let interior = match kind {
        _ if lean => 1,
        R1A | R2A => 1,
        R1B | R2B => 2,
        R1C => 3,
        _ => rng.gen_range(1..=3),
    };
    // vertices of S the repeated bridge touches, and edges from each
    let touched: Vec<usize> = if s == 3 || kind == R7 { (0..s).collect() } else { (1..s).collect() };
    let single = matches!(kind, R6 | R8 | R1Big);
    let mut template: Vec<(usize, usize)> = Vec::new();
    for i in 1..interior {
        template.push((s + rng.gen_range(0..i), s + i));
    }
    for i in 0..interior {
        for j in i + 1..interior {
            if rng.gen_bool(0.3) && !template.contains(&(s + i, s + j)) {
                template.push((s + i, s + j));
            }
        }
    }
    for &a in &touched {
        template.push((a, s + rng.gen_range(0..interior)));
        if !single && rng.gen_bool(0.25) {
            let extra = (a, s + rng.gen_range(0..interior));
            if !template.contains(&extra) {
                template.push(extra);
            }
        }
    }
    let copies = match kind {
        _ if lean => 3,
        R1A | R1B | R1C | R2A | R2B => rng.gen_range(3..=5),
        R7 => rng.gen_range(4..=6),
        _ => rng.gen_range(2..=3),
    };
    let mut b = GraphBuilder::new(s);
    for i in 0..s {
        for j in i + 1..s {
            if rng.gen_bool(0.6) {
                b.add_edge(i, j);
            }
        }
    }
    let hang = |b: &mut GraphBuilder, edges: &[(usize, usize)], size: usize| {
        let first = b.n();
        for _ in 0..size {
            b.add_vertex();
        }
        let at = |x: usize| if x < s { x } else { first + x - s };
        for &(x, y) in edges {
            b.add_edge(at(x), at(y));
        }
    };
    for _ in 0..copies {
        hang(&mut b, &template, interior);
    }
    // single vertices on all of S serve as holders and connectors
    let all: Vec<(usize, usize)> = (0..s).map(|a| (a, s)).collect();
    for _ in 0..if lean { 0 } else { rng.gen_range(0..=2) } {
        hang(&mut b, &all, 1);
    }
    if dense {
        let first = b.n();
        let size = rng.gen_range(3..=CONSTRUCTED_MAX_N.saturating_sub(first).max(3));
        for i in 0..size {
            let x = b.add_vertex();
            for y in 0..first + i {
                let p = if y < s && !lean { 0.6 } else if y >= first { 0.8 } else { 0.0 };
                if rng.gen_bool(p) {
                    b.add_edge(x, y);
                }
            }
        }
        if lean {
            // one edge from each vertex of S keeps every vertex of S bounded
            for a in 0..s {
                b.add_edge(a, first + rng.gen_range(0..size));
            }
        }
    }
    if b.n() > CONSTRUCTED_MAX_N {
        return None;
    }
    let g = b.build();
    let mut perm: Vec<Vertex> = (0..g.n()).collect();
    perm.shuffle(rng);
    Graph::from_edges(g.n(), g.edges().iter().map(|e| (perm[e.u()], perm[e.v()]))).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Solver against exhaustive search on random G(n, p).
    Differential,
    /// Search before and after every reduction found in constructed
    /// instances.
    ReductionPreservation,
    /// Search on the host against search on the two split graphs.
    SplitEquivalence,
    /// Every cutset found verifies and is found the same way twice.
    CutsetSoundness,
}

impl Suite {
    pub const ALL: [Suite; 4] =
        [Suite::Differential, Suite::ReductionPreservation, Suite::SplitEquivalence, Suite::CutsetSoundness];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Differential => "differential",
            Suite::ReductionPreservation => "reduction_preservation",
            Suite::SplitEquivalence => "split_equivalence",
            Suite::CutsetSoundness => "cutset_soundness",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}` (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub count: usize,
    /// Instance `i` uses seed `seed + i`.
    pub seed: u64,
    /// Largest graph handed to the exhaustive search.
    pub ceiling: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { count: 100, seed: 0, ceiling: DEFAULT_ORACLE_CEILING }
    }
}

/// One instance: `seed n verdict_a verdict_b`, followed on failure by the
/// graph6 of the instance and what was being checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub seed: u64,
    pub n: usize,
    pub verdict_a: String,
    pub verdict_b: String,
    pub pass: bool,
    pub reproducer: Option<String>,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.seed, self.n, self.verdict_a, self.verdict_b)?;
        if let Some(r) = &self.reproducer {
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| !l.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        let failed = self.failures().count();
        writeln!(f, "# {} {} instances {} failed", self.suite, self.lines.len(), failed)
    }
}

fn verdict(contains: bool) -> String {
    if contains { "CONTAINS_W7" } else { "NO_W7" }.to_string()
}

fn oracle(g: &Graph) -> bool {
    contains_wheel(g, 7, None, Budget::Unlimited).expect("unlimited budget").is_some()
}

fn line(seed: u64, g: &Graph, a: bool, b: bool, what: impl FnOnce() -> String) -> ReportLine {
    ReportLine {
        seed,
        n: g.n(),
        verdict_a: verdict(a),
        verdict_b: verdict(b),
        pass: a == b,
        reproducer: (a != b).then(|| format!("{} {}", to_graph6(g), what())),
    }
}

/// Runs `config.count` instances of `suite`.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Report, Error> {
    if config.ceiling > DEFAULT_ORACLE_CEILING || config.ceiling < 5 {
        return Err(Error::InvalidConfig(format!(
            "oracle ceiling {} outside 5..={DEFAULT_ORACLE_CEILING}",
            config.ceiling
        )));
    }
    let lines = (0..config.count as u64)
        .into_par_iter()
        .map(|i| {
            let seed = config.seed.wrapping_add(i);
            match suite {
                Suite::Differential => differential_instance(seed, config.ceiling),
                Suite::ReductionPreservation => reduction_line(seed),
                Suite::SplitEquivalence => split_instance(seed),
                Suite::CutsetSoundness => cutset_instance(seed),
            }
        })
        .collect();
    Ok(Report { suite, lines })
}

/// The random graph of a differential instance: n in [5, ceiling], p one
/// of 0.3, 0.5 and 0.8.
pub fn differential_graph(seed: u64, ceiling: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(5..=ceiling);
    let p = [0.3, 0.5, 0.8][rng.gen_range(0..3)];
    gnp(&mut rng, n, p)
}

fn differential_instance(seed: u64, ceiling: usize) -> ReportLine {
    let g = differential_graph(seed, ceiling);
    let d = decide_w7(&g, &Options::default());
    line(seed, &g, d.contains, oracle(&g), || "solver and search disagree".into())
}

fn reduction_line(seed: u64) -> ReportLine {
    let kind = ReductionKind::ALL[(seed % ReductionKind::ALL.len() as u64) as usize];
    let Some(g) = reduction_instance(kind, seed) else {
        return ReportLine {
            seed,
            n: 0,
            verdict_a: "NONE".into(),
            verdict_b: "NONE".into(),
            pass: false,
            reproducer: Some(format!("no {kind} instance constructed")),
        };
    };
    reduction_check(seed, &g, kind)
}

/// Search before and after applying the first `kind` reduction of `g`.
pub fn reduction_check(seed: u64, g: &Graph, kind: ReductionKind) -> ReportLine {
    let f = find_reduction_of_kind(g, kind, 7).expect("instance has the reduction");
    let h = apply_reduction(g, &f).expect("found reduction applies");
    line(seed, g, oracle(g), oracle(&h), || f.to_string())
}

/// Whether a split of `kind` is one the decision procedure would make:
/// no cutset of an earlier step is present.
fn reachable(kind: CutsetKind, found: &[CutsetFinding]) -> bool {
    found.iter().all(|f| step(f.kind) >= step(kind))
}

fn step(kind: CutsetKind) -> u8 {
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

/// Two dense random halves joined by a few edges and up to two vertices
/// seeing both, kept only if 3-connected.
pub fn two_sided_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(10..=16);
        let connectors = rng.gen_range(0..=2);
        let body = n - connectors;
        let split_at = rng.gen_range(4..=body - 4);
        let p = rng.gen_range(0.5..0.95);
        let mut b = GraphBuilder::new(n);
        for i in 0..body {
            for j in i + 1..body {
                if (i < split_at) == (j < split_at) && rng.gen_bool(p) {
                    b.add_edge(i, j);
                }
            }
        }
        for _ in 0..rng.gen_range(1..=4) {
            b.add_edge(rng.gen_range(0..split_at), rng.gen_range(split_at..body));
        }
        for c in body..n {
            for _ in 0..rng.gen_range(3..=10) {
                b.add_edge(c, rng.gen_range(0..body));
            }
        }
        let g = b.build();
        if is_3_connected(&g) {
            return g;
        }
    }
}

/// Checks every split of `g` the procedure could make. The first verdict
/// is search on `g`; the second is search on the split graphs of the first
/// split that disagrees, or the first verdict if none does.
pub fn split_check(seed: u64, g: &Graph) -> ReportLine {
    let expected = oracle(g);
    let found: Vec<CutsetFinding> = CutsetKind::ALL.iter().filter_map(|&k| find_cutset(g, k)).collect();
    for f in found.iter().filter(|f| reachable(f.kind, &found)) {
        let Ok(r) = split(g, f) else { continue };
        let (a, b) = (oracle(&r.g1p), oracle(&r.g2p));
        if (a || b) != expected {
            return line(seed, g, expected, a || b, || f.to_string());
        }
        if f.kind == CutsetKind::Int1111 {
            for (side, part) in [(&f.side1, a), (&f.side2, b)] {
                let centred = side.iter().any(|&c| {
                    g.degree(c) >= 7 && contains_wheel(g, 7, Some(c), Budget::Unlimited).expect("unlimited").is_some()
                });
                if centred != part {
                    return line(seed, g, centred, part, || format!("{f} centred"));
                }
            }
        }
    }
    line(seed, g, expected, expected, String::new)
}

fn split_instance(seed: u64) -> ReportLine {
    split_check(seed, &two_sided_graph(seed))
}

/// Every cutset kind found in `g` verifies and is found again identically.
/// Verdicts are `VALID` or `INVALID`.
pub fn cutset_check(seed: u64, g: &Graph) -> ReportLine {
    let bad = CutsetKind::ALL.into_iter().find_map(|k| {
        let f = find_cutset(g, k)?;
        (!verify_cutset(g, &f) || find_cutset(g, k).as_ref() != Some(&f)).then_some(f)
    });
    ReportLine {
        seed,
        n: g.n(),
        verdict_a: "VALID".into(),
        verdict_b: if bad.is_some() { "INVALID" } else { "VALID" }.into(),
        pass: bad.is_none(),
        reproducer: bad.map(|f| format!("{} {f}", to_graph6(g))),
    }
}

fn cutset_instance(seed: u64) -> ReportLine {
    let g = if seed % 2 == 0 { two_sided_graph(seed) } else { differential_graph(seed, 16) };
    cutset_check(seed, &g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_labels_hub_zero() {
        let g = generate(&FamilySpec::new(Family::Wheel { k: 7 })).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.degree(0), 7);
        assert!((1..=7).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn family_sizes() {
        let size = |f| {
            let g = generate(&FamilySpec::new(f)).unwrap();
            (g.n(), g.m())
        };
        assert_eq!(size(Family::Complete { n: 8 }), (8, 28));
        assert_eq!(size(Family::CompleteBipartite { a: 3, b: 5 }), (8, 15));
        assert_eq!(size(Family::Cycle { n: 30 }), (30, 30));
        assert_eq!(size(Family::Path { n: 5 }), (5, 4));
        assert_eq!(size(Family::Petersen), (10, 15));
        assert_eq!(size(Family::Grid { rows: 3, cols: 4 }), (12, 17));
    }

    #[test]
    fn petersen_is_cubic_with_girth_five() {
        let g = generate(&FamilySpec::new(Family::Petersen)).unwrap();
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        for e in g.edges() {
            let common = g.neighbors(e.u()).iter().filter(|x| g.has_edge(**x, e.v())).count();
            assert_eq!(common, 0);
        }
    }

    #[test]
    fn random_families_repeat_under_a_seed() {
        let spec = FamilySpec::seeded(Family::RandomGnp { n: 12, p: 0.5 }, 1);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let reg = FamilySpec::seeded(Family::RandomRegular { n: 14, d: 5 }, 3);
        let g = generate(&reg).unwrap();
        assert_eq!(g, generate(&reg).unwrap());
        assert!(g.vertices().all(|v| g.degree(v) == 5));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        for f in [
            Family::Wheel { k: 2 },
            Family::Cycle { n: 2 },
            Family::RandomGnp { n: 5, p: 1.5 },
            Family::RandomRegular { n: 5, d: 3 },
            Family::RandomRegular { n: 4, d: 4 },
        ] {
            assert!(matches!(generate(&FamilySpec::new(f)), Err(Error::InvalidFamily(_))), "{f}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn ceiling_above_twenty_is_refused() {
        let config = SuiteConfig { ceiling: 21, ..SuiteConfig::default() };
        assert!(run_suite(Suite::Differential, &config).is_err());
    }

    #[test]
    fn failing_lines_carry_a_reproducer() {
        let g = generate(&FamilySpec::new(Family::Wheel { k: 7 })).unwrap();
        let l = line(4, &g, true, false, || "why".into());
        assert!(!l.pass);
        assert_eq!(l.to_string(), format!("4 8 CONTAINS_W7 NO_W7 {} why", to_graph6(&g)));
        assert_eq!(line(4, &g, true, true, String::new).to_string(), "4 8 CONTAINS_W7 CONTAINS_W7");
    }
}
