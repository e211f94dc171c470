#![allow(dead_code)]

use ak_core::multigraph::{enumerate_trivalent, EnumerateOptions};
use ak_core::{DartGraph, Isomorphism, TadpolePolicy};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn classes(k: usize, policy: TadpolePolicy) -> Vec<DartGraph> {
    enumerate_trivalent(k, EnumerateOptions { policy, ..Default::default() }).unwrap()
}

/// Every class with at most `2 * max_k` vertices under both policies.
pub fn all_classes(max_k: usize) -> Vec<DartGraph> {
    (1..=max_k).flat_map(|k| classes(k, TadpolePolicy::Include)).collect()
}

/// A uniformly random block-compatible dart relabelling on `n` vertices.
pub fn random_iso<R: Rng>(n: usize, rng: &mut R) -> Isomorphism {
    let mut vp: Vec<usize> = (0..n).collect();
    vp.shuffle(rng);
    let slots: Vec<[usize; 3]> = (0..n)
        .map(|_| {
            let mut s = [0, 1, 2];
            s.shuffle(rng);
            s
        })
        .collect();
    Isomorphism::from_vertex_and_slots(vp, &slots)
}

/// A random perfect matching of darts, retried until connected.
pub fn random_graph<R: Rng>(k: usize, allow_loops: bool, rng: &mut R) -> DartGraph {
    let n = 2 * k;
    loop {
        let mut darts: Vec<usize> = (0..3 * n).collect();
        darts.shuffle(rng);
        let mut pairing = vec![0; 3 * n];
        for c in darts.chunks(2) {
            pairing[c[0]] = c[1];
            pairing[c[1]] = c[0];
        }
        if let Ok(g) = DartGraph::from_involution(n, pairing) {
            if allow_loops || !g.has_loops() {
                return g;
            }
        }
    }
}
