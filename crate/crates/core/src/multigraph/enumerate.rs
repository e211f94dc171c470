//! Isomorph-free enumeration of connected trivalent multigraphs.
//!
//! Candidates are produced at the vertex level in breadth-first normal form
//! (vertices numbered in discovery order, fresh neighbours of a vertex in
//! non-increasing multiplicity), which reaches every isomorphism class from
//! every start vertex while avoiding almost all dart-level redundancy. Each
//! candidate is then canonicalised and duplicates dropped.

use std::collections::BTreeMap;

use super::{canonical_form, DartGraph, TadpolePolicy};
use crate::error::{Error, Result};
use crate::par::{self, Parallelism};

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    pub policy: TadpolePolicy,
    pub max_classes: usize,
    pub parallelism: Parallelism,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            policy: TadpolePolicy::Exclude,
            max_classes: crate::Limits::default().max_classes,
            parallelism: Parallelism::Parallel,
        }
    }
}

/// One canonical representative per isomorphism class, sorted by pairing code.
pub fn enumerate_trivalent(k: usize, opts: EnumerateOptions) -> Result<Vec<DartGraph>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let n = 2 * k;
    let allow_loops = opts.policy == TadpolePolicy::Include;
    let candidates = bfs_multigraphs(&vec![3; n], allow_loops);
    let canon = par::map(opts.parallelism, &candidates, |edges| {
        let pairing = multigraph_to_pairing(n, edges);
        canonical_form(&DartGraph::from_raw(n, pairing)).graph
    });
    let mut classes: BTreeMap<Vec<usize>, DartGraph> = BTreeMap::new();
    for g in canon {
        classes.entry(g.pairing().to_vec()).or_insert(g);
        if classes.len() > opts.max_classes {
            return Err(Error::ResourceLimit {
                what: "isomorphism classes",
                value: classes.len(),
                limit: opts.max_classes,
            });
        }
    }
    Ok(classes.into_values().collect())
}

/// Converts a vertex-level multigraph to a dart pairing. Each vertex's darts
/// are ordered by neighbour index; the t-th end towards a neighbour pairs with
/// the t-th end coming back. `degrees` of every vertex is read off `edges`.
pub(crate) fn multigraph_to_pairing(num_vertices: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    pairing_with_degrees(&vec![3; num_vertices], edges)
}

pub(crate) fn pairing_with_degrees(degrees: &[usize], edges: &[(usize, usize)]) -> Vec<usize> {
    let n = degrees.len();
    let offset: Vec<usize> = degrees
        .iter()
        .scan(0, |acc, &d| {
            let o = *acc;
            *acc += d;
            Some(o)
        })
        .collect();
    let total: usize = degrees.iter().sum();
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        ends[u].push(v);
        ends[v].push(u);
    }
    for e in &mut ends {
        e.sort_unstable();
    }
    let mut pairing = vec![usize::MAX; total];
    for u in 0..n {
        debug_assert_eq!(ends[u].len(), degrees[u]);
        let mut i = 0;
        while i < ends[u].len() {
            let v = ends[u][i];
            if v == u {
                pairing[offset[u] + i] = offset[u] + i + 1;
                pairing[offset[u] + i + 1] = offset[u] + i;
                i += 2;
                continue;
            }
            if v > u {
                let t = i - ends[u].iter().position(|&x| x == v).unwrap();
                let j = ends[v].iter().position(|&x| x == u).unwrap() + t;
                pairing[offset[u] + i] = offset[v] + j;
                pairing[offset[v] + j] = offset[u] + i;
            }
            i += 1;
        }
    }
    pairing
}

/// All connected multigraphs with the given degree sequence in breadth-first
/// normal form rooted at vertex 0. Vertices discovered from the same parent
/// must share a degree for the multiplicity ordering to be a pure symmetry
/// reduction; callers keep every non-root degree equal.
pub(crate) fn bfs_multigraphs(degrees: &[usize], allow_loops: bool) -> Vec<Vec<(usize, usize)>> {
    let n = degrees.len();
    let mut st = BfsState {
        degrees: degrees.to_vec(),
        remaining: degrees.to_vec(),
        discovered: 1,
        edges: Vec::new(),
        allow_loops,
        out: Vec::new(),
    };
    if n == 0 {
        return Vec::new();
    }
    st.process(0);
    st.out
}

struct BfsState {
    degrees: Vec<usize>,
    remaining: Vec<usize>,
    discovered: usize,
    edges: Vec<(usize, usize)>,
    allow_loops: bool,
    out: Vec<Vec<(usize, usize)>>,
}

impl BfsState {
    fn process(&mut self, v: usize) {
        let n = self.degrees.len();
        if v == n {
            if self.discovered == n {
                self.out.push(self.edges.clone());
            }
            return;
        }
        if v >= self.discovered {
            return; // disconnected
        }
        let r = self.remaining[v];
        let max_loops = if self.allow_loops { r / 2 } else { 0 };
        for loops in 0..=max_loops {
            for _ in 0..loops {
                self.edges.push((v, v));
            }
            self.remaining[v] -= 2 * loops;
            self.attach_known(v, v + 1);
            self.remaining[v] += 2 * loops;
            for _ in 0..loops {
                self.edges.pop();
            }
        }
    }

    /// Distribute `v`'s remaining ends over already discovered vertices `j >= from`.
    fn attach_known(&mut self, v: usize, from: usize) {
        if from >= self.discovered {
            let r = self.remaining[v];
            let cap = self.degrees.get(self.discovered).copied().unwrap_or(0);
            self.attach_fresh(v, r, cap.min(r));
            return;
        }
        let j = from;
        let max = self.remaining[v].min(self.remaining[j]);
        for mult in 0..=max {
            for _ in 0..mult {
                self.edges.push((v, j));
            }
            self.remaining[v] -= mult;
            self.remaining[j] -= mult;
            self.attach_known(v, from + 1);
            self.remaining[v] += mult;
            self.remaining[j] += mult;
            for _ in 0..mult {
                self.edges.pop();
            }
        }
    }

    /// Attach `left` ends of `v` to fresh vertices, multiplicities non-increasing, each <= `cap`.
    fn attach_fresh(&mut self, v: usize, left: usize, cap: usize) {
        if left == 0 {
            self.process(v + 1);
            return;
        }
        let n = self.degrees.len();
        if self.discovered == n {
            return;
        }
        let w = self.discovered;
        let cap = cap.min(left).min(self.remaining[w]);
        for mult in (1..=cap).rev() {
            for _ in 0..mult {
                self.edges.push((v, w));
            }
            self.remaining[v] -= mult;
            self.remaining[w] -= mult;
            self.discovered += 1;
            self.attach_fresh(v, left - mult, mult);
            self.discovered -= 1;
            self.remaining[v] += mult;
            self.remaining[w] += mult;
            for _ in 0..mult {
                self.edges.pop();
            }
        }
    }
}
