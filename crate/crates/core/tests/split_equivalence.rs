//! Splitting along a cutset keeps W7 containment: the host contains a W7
//! subdivision iff one of the two split graphs does.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wheelsub::connectivity::{find_2_separator, is_3_connected};
use wheelsub::cutsets::{find_cutset, CutsetKind};
use wheelsub::decomposition::{split, split_on_2_separator};
use wheelsub::error::Error;
use wheelsub::graph::{Graph, GraphBuilder, Vertex};
use wheelsub::oracle::{contains_wheel, Budget};

fn w7(g: &Graph) -> bool {
    contains_wheel(g, 7, None, Budget::Unlimited).unwrap().is_some()
}

fn w7_centred_in(g: &Graph, side: &[Vertex]) -> bool {
    side.iter()
        .any(|&c| g.degree(c) >= 7 && contains_wheel(g, 7, Some(c), Budget::Unlimited).unwrap().is_some())
}

/// Kinds handled by earlier steps of the decision procedure, hence absent
/// whenever a split of `kind` is performed.
fn excluded(kind: CutsetKind) -> &'static [CutsetKind] {
    use CutsetKind::*;
    match kind {
        Int3Edge => &[],
        Int4Edge => &[Int3Edge],
        EV1 | EV1a => &[Int3Edge, Int4Edge],
        EV2 | EV2a => &[Int3Edge, Int4Edge, EV1, EV1a],
        EV3 | EV3a => &[Int3Edge, Int4Edge, EV1, EV1a, EV2, EV2a],
        EV4 | EV4a => &[Int3Edge, Int4Edge, EV1, EV1a, EV2, EV2a, EV3, EV3a],
        Int1111 => &[Int3Edge, Int4Edge, EV1, EV1a, EV2, EV2a, EV3, EV3a, EV4, EV4a],
    }
}

/// Two random dense halves, a few random edges across, and up to two
/// connector vertices adjacent to both halves.
fn two_halves(rng: &mut ChaCha8Rng) -> Graph {
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
    b.build()
}

/// Checks every applicable split of `g`; returns the kinds exercised and
/// the kinds whose split was declined.
fn check_splits(g: &Graph) -> (Vec<CutsetKind>, Vec<CutsetKind>) {
    let mut done = Vec::new();
    let mut declined = Vec::new();
    if !is_3_connected(g) {
        return (done, declined);
    }
    let found: BTreeMap<CutsetKind, _> = CutsetKind::ALL.iter().filter_map(|&k| find_cutset(g, k).map(|f| (k, f))).collect();
    let expected = w7(g);
    for (kind, f) in &found {
        if excluded(*kind).iter().any(|k| found.contains_key(k)) {
            continue;
        }
        let r = match split(g, f) {
            Ok(r) => r,
            Err(Error::DegenerateSplit(_)) => {
                declined.push(*kind);
                continue;
            }
            Err(e) => panic!("{f} on {g:?}: {e}"),
        };
        let (a, b) = (w7(&r.g1p), w7(&r.g2p));
        assert_eq!(expected, a || b, "{f} on {g:?}: split gives {a} {b}");
        if *kind == CutsetKind::Int1111 {
            assert_eq!(w7_centred_in(g, &f.side1), a, "centred side1 {f} on {g:?}");
            assert_eq!(w7_centred_in(g, &f.side2), b, "centred side2 {f} on {g:?}");
        }
        done.push(*kind);
    }
    (done, declined)
}

#[test]
fn split_preserves_w7_on_random_two_sided_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut hits: BTreeMap<CutsetKind, usize> = BTreeMap::new();
    let mut declined = 0;
    for _ in 0..3000 {
        let g = two_halves(&mut rng);
        let (done, no) = check_splits(&g);
        for k in done {
            *hits.entry(k).or_default() += 1;
        }
        declined += no.len();
    }
    eprintln!("{hits:?} declined {declined}");
    let total: usize = hits.values().sum();
    assert!(declined * 10 < total, "{declined} declined of {}", total + declined);
    for kind in CutsetKind::ALL {
        assert!(hits.get(&kind).copied().unwrap_or(0) > 0, "{kind} never exercised: {hits:?}");
    }
}

#[test]
fn two_separator_parts_preserve_w7() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for _ in 0..600 {
        let g = two_halves(&mut rng);
        if !wheelsub::connectivity::is_connected(&g) || !wheelsub::connectivity::articulation_points(&g).is_empty() {
            continue;
        }
        let Some(sep) = find_2_separator(&g) else { continue };
        let parts = split_on_2_separator(&g, sep).unwrap();
        assert!(parts.iter().all(|p| p.n() < g.n()));
        assert_eq!(w7(&g), parts.iter().any(w7), "{sep:?} on {g:?}");
        checked += 1;
    }
    assert!(checked > 20, "{checked}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn split_equivalence_holds(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = two_halves(&mut rng);
        check_splits(&g);
    }
}
