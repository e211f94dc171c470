//! Connected trivalent multigraphs in half-edge (dart) form.
//!
//! Darts `3v, 3v+1, 3v+2` belong to vertex `v`. Edges are the 2-cycles of a
//! fixed-point-free involution on darts; a 2-cycle inside one vertex block
//! is a self-loop (tadpole). Multi-edges are always allowed.

mod canon;
mod enumerate;
pub mod io;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm;

pub use canon::{automorphisms, canonical_form, CanonicalForm};
pub use enumerate::{enumerate_trivalent, EnumerateOptions};
#[cfg(test)]
pub(crate) use enumerate::{bfs_multigraphs, pairing_with_degrees};

pub type Dart = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TadpolePolicy {
    #[default]
    Exclude,
    Include,
}

impl TadpolePolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            TadpolePolicy::Exclude => "exclude",
            TadpolePolicy::Include => "include",
        }
    }

    pub fn allows(self, g: &DartGraph) -> bool {
        self == TadpolePolicy::Include || !g.has_loops()
    }
}

impl std::str::FromStr for TadpolePolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exclude" => Ok(TadpolePolicy::Exclude),
            "include" => Ok(TadpolePolicy::Include),
            other => Err(Error::InvalidArgument(format!("unknown tadpole policy {other:?}"))),
        }
    }
}

/// A connected trivalent multigraph on `2k` vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DartGraph {
    num_vertices: usize,
    pairing: Vec<Dart>,
}

impl fmt::Debug for DartGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DartGraph({}; {})", self.num_vertices, self.code())
    }
}

impl DartGraph {
    /// Builds a graph from a list of dart pairs.
    pub fn from_pairing(num_vertices: usize, pairs: &[(Dart, Dart)]) -> Result<Self> {
        let num_darts = 3 * num_vertices;
        let mut pairing = vec![usize::MAX; num_darts];
        for &(a, b) in pairs {
            if a >= num_darts || b >= num_darts {
                return Err(Error::MalformedPairing(format!(
                    "dart index out of range in ({a}, {b}); graph has {num_darts} darts"
                )));
            }
            if a == b {
                return Err(Error::MalformedPairing(format!("dart {a} paired with itself")));
            }
            for d in [a, b] {
                if pairing[d] != usize::MAX {
                    return Err(Error::MalformedPairing(format!("dart {d} appears twice")));
                }
            }
            pairing[a] = b;
            pairing[b] = a;
        }
        Self::from_involution(num_vertices, pairing)
    }

    /// Builds a graph from the partner array (`pairing[d]` is the dart paired with `d`).
    pub fn from_involution(num_vertices: usize, pairing: Vec<Dart>) -> Result<Self> {
        let g = Self::from_involution_unchecked_connectivity(num_vertices, pairing)?;
        let components = g.num_components();
        if components != 1 {
            return Err(Error::NotConnected { components });
        }
        Ok(g)
    }

    /// Validates structure but accepts disconnected graphs.
    pub fn from_involution_unchecked_connectivity(
        num_vertices: usize,
        pairing: Vec<Dart>,
    ) -> Result<Self> {
        if num_vertices == 0 || num_vertices % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "number of vertices must be positive and even, got {num_vertices}"
            )));
        }
        let num_darts = pairing.len();
        if num_darts != 3 * num_vertices {
            // Darts are assigned to vertices by index, so a wrong count means
            // some vertex does not carry exactly three darts.
            let vertex = (num_darts / 3).min(num_vertices - 1);
            let degree = num_darts.saturating_sub(3 * vertex).min(num_darts);
            return Err(Error::NotTrivalent { vertex, degree });
        }
        let missing: Vec<_> = (0..num_darts).filter(|&d| pairing[d] == usize::MAX).collect();
        if !missing.is_empty() {
            return Err(Error::MalformedPairing(format!("unmatched darts {missing:?}")));
        }
        for (d, &p) in pairing.iter().enumerate() {
            if p >= num_darts {
                return Err(Error::MalformedPairing(format!("dart {d} paired with out-of-range {p}")));
            }
            if p == d {
                return Err(Error::MalformedPairing(format!("dart {d} is a fixed point")));
            }
            if pairing[p] != d {
                return Err(Error::MalformedPairing(format!(
                    "pairing is not an involution at dart {d}"
                )));
            }
        }
        Ok(DartGraph { num_vertices, pairing })
    }

    pub(crate) fn from_raw(num_vertices: usize, pairing: Vec<Dart>) -> Self {
        debug_assert!(Self::from_involution(num_vertices, pairing.clone()).is_ok());
        DartGraph { num_vertices, pairing }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn k(&self) -> usize {
        self.num_vertices / 2
    }

    pub fn num_darts(&self) -> usize {
        self.pairing.len()
    }

    pub fn num_edges(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn pairing(&self) -> &[Dart] {
        &self.pairing
    }

    #[inline]
    pub fn partner(&self, d: Dart) -> Dart {
        self.pairing[d]
    }

    #[inline]
    pub fn vertex_of(d: Dart) -> usize {
        d / 3
    }

    pub fn darts_of(v: usize) -> [Dart; 3] {
        [3 * v, 3 * v + 1, 3 * v + 2]
    }

    pub fn is_loop_dart(&self, d: Dart) -> bool {
        d / 3 == self.pairing[d] / 3
    }

    pub fn has_loops(&self) -> bool {
        (0..self.num_darts()).any(|d| self.is_loop_dart(d))
    }

    /// Edges as `(min dart, max dart)`, ordered by the smaller dart. The
    /// position in this list is the edge's reference index.
    pub fn edges(&self) -> Vec<(Dart, Dart)> {
        (0..self.num_darts())
            .filter(|&d| d < self.pairing[d])
            .map(|d| (d, self.pairing[d]))
            .collect()
    }

    /// Reference edge index of every dart.
    pub fn edge_index_of_darts(&self) -> Vec<usize> {
        let mut idx = vec![0; self.num_darts()];
        for (e, (a, b)) in self.edges().into_iter().enumerate() {
            idx[a] = e;
            idx[b] = e;
        }
        idx
    }

    /// Edges with endpoint vertices `(u, v)` in reference order.
    pub fn edge_endpoints(&self) -> Vec<(usize, usize)> {
        self.edges().into_iter().map(|(a, b)| (a / 3, b / 3)).collect()
    }

    pub fn num_components(&self) -> usize {
        let n = self.num_vertices;
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for d in Self::darts_of(v) {
                    let w = self.pairing[d] / 3;
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        count
    }

    /// The partner array rendered as a comma-separated string.
    pub fn code(&self) -> String {
        let parts: Vec<String> = self.pairing.iter().map(|d| d.to_string()).collect();
        parts.join(",")
    }

    /// Number of parallel edges between `u` and `v` (loops counted once each when `u == v`).
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let c = Self::darts_of(u).iter().filter(|&&d| self.pairing[d] / 3 == v).count();
        if u == v {
            c / 2
        } else {
            c
        }
    }
}

/// A dart-level isomorphism `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Isomorphism {
    pub vertex_perm: Vec<usize>,
    pub dart_perm: Vec<Dart>,
}

impl Isomorphism {
    pub fn identity(num_vertices: usize) -> Self {
        Isomorphism {
            vertex_perm: perm::identity(num_vertices),
            dart_perm: perm::identity(3 * num_vertices),
        }
    }

    /// Builds the dart map from a vertex permutation and, per source vertex,
    /// the target slot of each of its three darts.
    pub fn from_vertex_and_slots(vertex_perm: Vec<usize>, slots: &[[usize; 3]]) -> Self {
        let mut dart_perm = vec![0; 3 * vertex_perm.len()];
        for (v, s) in slots.iter().enumerate() {
            for i in 0..3 {
                dart_perm[3 * v + i] = 3 * vertex_perm[v] + s[i];
            }
        }
        Isomorphism { vertex_perm, dart_perm }
    }

    /// Reconstructs the vertex map from a block-respecting dart map.
    pub fn from_dart_perm(dart_perm: Vec<Dart>) -> Self {
        let n = dart_perm.len() / 3;
        let vertex_perm = (0..n).map(|v| dart_perm[3 * v] / 3).collect();
        Isomorphism { vertex_perm, dart_perm }
    }

    /// True when the dart map sends darts of `v` to darts of `vertex_perm[v]`.
    pub fn is_block_compatible(&self) -> bool {
        perm::is_permutation(&self.vertex_perm)
            && perm::is_permutation(&self.dart_perm)
            && self.dart_perm.len() == 3 * self.vertex_perm.len()
            && (0..self.dart_perm.len()).all(|d| self.dart_perm[d] / 3 == self.vertex_perm[d / 3])
    }

    /// The graph `self(g)`.
    pub fn apply(&self, g: &DartGraph) -> DartGraph {
        let mut pairing = vec![0; g.num_darts()];
        for d in 0..g.num_darts() {
            pairing[self.dart_perm[d]] = self.dart_perm[g.partner(d)];
        }
        DartGraph { num_vertices: g.num_vertices, pairing }
    }

    pub fn maps(&self, g: &DartGraph, h: &DartGraph) -> bool {
        self.is_block_compatible()
            && g.num_darts() == h.num_darts()
            && self.dart_perm.len() == g.num_darts()
            && (0..g.num_darts()).all(|d| h.partner(self.dart_perm[d]) == self.dart_perm[g.partner(d)])
    }

    pub fn is_automorphism_of(&self, g: &DartGraph) -> bool {
        self.maps(g, g)
    }

    pub fn inverse(&self) -> Self {
        Isomorphism {
            vertex_perm: perm::invert(&self.vertex_perm),
            dart_perm: perm::invert(&self.dart_perm),
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Isomorphism) -> Self {
        Isomorphism {
            vertex_perm: perm::compose(&self.vertex_perm, &other.vertex_perm),
            dart_perm: perm::compose(&self.dart_perm, &other.dart_perm),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.dart_perm.iter().enumerate().all(|(i, &d)| i == d)
    }
}

/// Graphs used throughout tests and examples.
pub mod named {
    use super::DartGraph;

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> DartGraph {
        DartGraph::from_pairing(2, &[(0, 3), (1, 4), (2, 5)]).unwrap()
    }

    /// A loop at each vertex plus a bridge.
    pub fn dumbbell() -> DartGraph {
        DartGraph::from_pairing(2, &[(0, 1), (2, 5), (3, 4)]).unwrap()
    }

    /// The complete graph on four vertices.
    pub fn k4() -> DartGraph {
        // v0: 1,2,3  v1: 0,2,3  v2: 0,1,3  v3: 0,1,2
        DartGraph::from_pairing(4, &[(0, 3), (1, 6), (2, 9), (4, 7), (5, 10), (8, 11)]).unwrap()
    }

    /// A 4-cycle with two opposite edges doubled.
    pub fn b1() -> DartGraph {
        // 0=1 double, 1-2, 2=3 double, 3-0
        DartGraph::from_pairing(4, &[(0, 3), (1, 4), (5, 6), (7, 10), (8, 11), (2, 9)]).unwrap()
    }
}
