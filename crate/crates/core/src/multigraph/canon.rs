//! Canonical labelling by minimal pairing code.
//!
//! A relabelling renames vertices and, inside each vertex, permutes the three
//! dart slots. The canonical form is the relabelled graph whose partner array
//! is lexicographically least. The search fills the partner array position by
//! position: a partner that is already placed is forced, an unplaced partner
//! always takes the smallest index still available to it, so the only real
//! branching is the start vertex and the slot order of darts that are reached
//! before their partner places them. Every relabelling achieving the minimum
//! is visited, which yields the automorphism group as a by-product.

use std::cmp::Ordering;

use super::{DartGraph, Isomorphism};

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub graph: DartGraph,
    /// One isomorphism from the input graph to `graph`.
    pub witness: Isomorphism,
    /// Every isomorphism input -> canonical (one per automorphism).
    minimizers: Vec<Vec<usize>>,
}

impl CanonicalForm {
    pub fn automorphism_count(&self) -> usize {
        self.minimizers.len()
    }

    /// Automorphisms of the input graph, sorted.
    pub fn input_automorphisms(&self) -> Vec<Isomorphism> {
        let w_inv = crate::perm::invert(&self.witness.dart_perm);
        let mut out: Vec<Isomorphism> = self
            .minimizers
            .iter()
            .map(|m| Isomorphism::from_dart_perm(crate::perm::compose(&w_inv, m)))
            .collect();
        out.sort();
        out
    }

    /// Automorphisms of the canonical graph, sorted.
    pub fn canonical_automorphisms(&self) -> Vec<Isomorphism> {
        let w_inv = crate::perm::invert(&self.witness.dart_perm);
        let mut out: Vec<Isomorphism> = self
            .minimizers
            .iter()
            .map(|m| Isomorphism::from_dart_perm(crate::perm::compose(m, &w_inv)))
            .collect();
        out.sort();
        out
    }
}

struct Search<'a> {
    g: &'a DartGraph,
    new_of_old: Vec<usize>,
    old_of_new: Vec<usize>,
    vnew_of_old: Vec<usize>,
    vold_of_new: Vec<usize>,
    next_vertex: usize,
    code: Vec<usize>,
    best: Option<Vec<usize>>,
    minimizers: Vec<Vec<usize>>,
    start_candidates: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a DartGraph) -> Self {
        let n = g.num_vertices();
        let m = g.num_darts();
        Search {
            g,
            new_of_old: vec![UNSET; m],
            old_of_new: vec![UNSET; m],
            vnew_of_old: vec![UNSET; n],
            vold_of_new: vec![UNSET; n],
            next_vertex: 0,
            code: Vec::with_capacity(m),
            best: None,
            minimizers: Vec::new(),
            start_candidates: start_candidates(g),
        }
    }

    fn assign(&mut self, old: usize, new: usize) {
        self.new_of_old[old] = new;
        self.old_of_new[new] = old;
    }

    fn unassign(&mut self, old: usize) {
        let new = self.new_of_old[old];
        self.new_of_old[old] = UNSET;
        self.old_of_new[new] = UNSET;
    }

    fn map_vertex(&mut self, old_v: usize) -> usize {
        let nv = self.next_vertex;
        self.vnew_of_old[old_v] = nv;
        self.vold_of_new[nv] = old_v;
        self.next_vertex += 1;
        nv
    }

    fn unmap_vertex(&mut self, old_v: usize) {
        let nv = self.vnew_of_old[old_v];
        self.vnew_of_old[old_v] = UNSET;
        self.vold_of_new[nv] = UNSET;
        self.next_vertex -= 1;
    }

    fn prefix_cmp(&self) -> Ordering {
        match &self.best {
            None => Ordering::Less,
            Some(b) => self.code.as_slice().cmp(&b[..self.code.len()]),
        }
    }

    fn run(&mut self, i: usize) {
        let m = self.g.num_darts();
        if i == m {
            match self.prefix_cmp() {
                Ordering::Less => {
                    self.best = Some(self.code.clone());
                    self.minimizers.clear();
                    self.minimizers.push(self.new_of_old.clone());
                }
                Ordering::Equal => self.minimizers.push(self.new_of_old.clone()),
                Ordering::Greater => {}
            }
            return;
        }
        let w = i / 3;
        if self.vold_of_new[w] == UNSET {
            // Only the start vertex (or a fresh component) is unplaced here.
            let candidates: Vec<usize> = if i == 0 {
                self.start_candidates.clone()
            } else {
                (0..self.g.num_vertices())
                    .filter(|&v| self.vnew_of_old[v] == UNSET)
                    .collect()
            };
            for ov in candidates {
                self.map_vertex(ov);
                self.run(i);
                self.unmap_vertex(ov);
            }
            return;
        }
        if self.old_of_new[i] == UNSET {
            let ov = self.vold_of_new[w];
            for od in DartGraph::darts_of(ov) {
                if self.new_of_old[od] == UNSET {
                    self.assign(od, i);
                    self.run(i);
                    self.unassign(od);
                }
            }
            return;
        }
        let od = self.old_of_new[i];
        let op = self.g.partner(od);
        let mut placed_partner = false;
        let mut placed_vertex = None;
        let val = if self.new_of_old[op] != UNSET {
            self.new_of_old[op]
        } else {
            let ov = op / 3;
            let nv = if self.vnew_of_old[ov] != UNSET {
                self.vnew_of_old[ov]
            } else {
                placed_vertex = Some(ov);
                self.map_vertex(ov)
            };
            let slot = (3 * nv..3 * nv + 3)
                .find(|&s| self.old_of_new[s] == UNSET)
                .expect("vertex has a free slot for its unplaced dart");
            self.assign(op, slot);
            placed_partner = true;
            slot
        };
        self.code.push(val);
        if self.prefix_cmp() != Ordering::Greater {
            self.run(i + 1);
        }
        self.code.pop();
        if placed_partner {
            self.unassign(op);
        }
        if let Some(ov) = placed_vertex {
            self.unmap_vertex(ov);
        }
    }
}

/// Start vertices that can begin a minimal code: vertices with a loop if any
/// exist (code starts `1,0`), otherwise vertices of maximal edge multiplicity.
fn start_candidates(g: &DartGraph) -> Vec<usize> {
    let n = g.num_vertices();
    let key = |v: usize| {
        let has_loop = DartGraph::darts_of(v).iter().any(|&d| g.is_loop_dart(d));
        let max_mult = (0..n).filter(|&w| w != v).map(|w| g.multiplicity(v, w)).max().unwrap_or(0);
        (has_loop, max_mult)
    };
    let best = (0..n).map(key).max().expect("nonempty graph");
    (0..n).filter(|&v| key(v) == best).collect()
}

/// Canonical representative plus a witnessing isomorphism `g -> canonical`.
pub fn canonical_form(g: &DartGraph) -> CanonicalForm {
    let mut s = Search::new(g);
    s.run(0);
    let code = s.best.expect("search visits at least one complete relabelling");
    let mut minimizers = s.minimizers;
    minimizers.sort();
    let graph = DartGraph::from_raw(g.num_vertices(), code);
    let witness = Isomorphism::from_dart_perm(minimizers[0].clone());
    debug_assert!(witness.maps(g, &graph));
    CanonicalForm { graph, witness, minimizers }
}

/// The full dart-level automorphism group of `g`, sorted, identity included.
pub fn automorphisms(g: &DartGraph) -> Vec<Isomorphism> {
    canonical_form(g).input_automorphisms()
}
