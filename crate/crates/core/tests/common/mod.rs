//! Shared helpers for the integration tests: seeded random graphs,
//! grids, and field elements.
#![allow(dead_code)] // each test target uses a different subset

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use holant_lab::cyclo::{rat, Cyc12};
use holant_lab::grid::{Dangling, EdgeLabeledGraph, GenLabel, GridEdge, SignatureGrid, SymSignature};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Configuration-model random 3-regular multigraph on an even number
/// of vertices (self-loops and parallel edges allowed).
pub fn random_cubic_multigraph(n: usize, rng: &mut ChaCha8Rng) -> EdgeLabeledGraph {
    assert!(n >= 2 && n % 2 == 0);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    stubs.shuffle(rng);
    let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
    let g = EdgeLabeledGraph::new(n, edges).unwrap();
    g.check_three_regular().unwrap();
    g
}

/// A random rational with numerator and denominator bounded by `bound`.
pub fn random_rat_cyc(bound: i64, rng: &mut ChaCha8Rng) -> Cyc12 {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Cyc12::from_rat(rat(n, d))
}

/// A random element r + s*i with both parts bounded by `bound`;
/// roughly half the samples are real.
pub fn random_point_coord(bound: i64, rng: &mut ChaCha8Rng) -> Cyc12 {
    let re = random_rat_cyc(bound, rng);
    if rng.gen_bool(0.5) {
        re
    } else {
        &re + &(&random_rat_cyc(bound, rng) * &Cyc12::i())
    }
}

/// A random closed signature grid with `slots` SLOT generators,
/// at most 12 edges, and random small integer signatures.
pub fn random_slot_grid(slots: usize, rng: &mut ChaCha8Rng) -> SignatureGrid {
    assert!(slots <= 3);
    // Port balance: slots + 2 * binary generators = 3 * recognizers.
    let (recs, bins) = match slots {
        0 => (2, 3),
        1 => (1, 1),
        2 => (2, 2),
        3 => (1, 0),
        _ => unreachable!(),
    };
    let mut generators: Vec<GenLabel> = Vec::new();
    let mut gen_ports: Vec<(usize, usize)> = Vec::new();
    for _ in 0..slots {
        gen_ports.push((generators.len(), 0));
        generators.push(GenLabel::Slot);
    }
    for _ in 0..bins {
        let sig = SymSignature::from_ints(&[
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
        ]);
        gen_ports.push((generators.len(), 0));
        gen_ports.push((generators.len(), 1));
        generators.push(GenLabel::Sig(sig));
    }
    let mut recognizers = Vec::new();
    let mut rec_ports: Vec<(usize, usize)> = Vec::new();
    for r in 0..recs {
        let sig = SymSignature::from_ints(&[
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
            rng.gen_range(-3..=3),
        ]);
        recognizers.push(sig);
        for p in 0..3 {
            rec_ports.push((r, p));
        }
    }
    rec_ports.shuffle(rng);
    let edges: Vec<GridEdge> = gen_ports
        .iter()
        .zip(&rec_ports)
        .map(|(&gen, &rec)| GridEdge { gen, rec })
        .collect();
    assert_eq!(edges.len(), 3 * recs);
    let grid = SignatureGrid {
        generators,
        recognizers,
        edges,
        dangling: Vec::<Dangling>::new(),
    };
    grid.validate().unwrap();
    grid
}
