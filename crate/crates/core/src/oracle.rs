//! Brute-force dimensions over fully labelled graphs, for `k <= 2`.
//!
//! The basis has one vector per labelled graph. A labelled graph is the list,
//! indexed by edge label, of the unordered vertex-label pair each edge joins;
//! labelled isomorphisms fix every label, so nothing else needs recording.
//! In the odd convention each vector stands for the graph paired with a
//! reference orientation of its cycle space. Edges point from the lower to
//! the higher vertex label (loops have a fixed arbitrary direction), the
//! spanning forest is built greedily in edge-label order, and the reference
//! orientation is the ordered basis of fundamental cycles of the non-tree
//! edges. Relation rows are
//!
//! - `G + G'` for each edge-label transposition,
//! - `G - G''` for each vertex-label transposition,
//! - in the odd convention, `G + G` for each loop reversal (the reversal is a
//!   labelled automorphism acting by `-1` on the cycle space),
//! - IHX rows `I + H + X` with orientations induced through the common
//!   contraction of the middle edge,
//!
//! each carrying the determinant sign that relates transported orientations
//! to the reference ones. The two-term rows are solved by a signed
//! union-find, which is exact; the remaining IHX rows go to exact rank.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactla::{dense_det, rank_with_limit, SparseIntMatrix};
use crate::homology::DimensionReport;
use crate::multigraph::TadpolePolicy;
use crate::orientation::Convention;
use crate::par::{self, Parallelism};
use crate::Limits;

/// Largest `k` the oracle accepts.
pub const MAX_K: usize = 2;

type Key = Vec<(u8, u8)>;

#[derive(Debug, Clone, Copy, Default)]
pub struct OracleOptions {
    /// Use every transposition instead of adjacent ones only.
    pub paranoid: bool,
    pub parallelism: Parallelism,
    pub limits: Limits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub basis_size: usize,
    /// Number of relation rows generated (all kinds).
    pub num_rows: usize,
    pub rank: usize,
    pub dim: usize,
    /// Classes of the two-term relations that survive (are not forced to 0).
    pub live_components: usize,
}

impl OracleResult {
    pub fn report(&self, k: usize, convention: Convention, policy: TadpolePolicy) -> DimensionReport {
        DimensionReport {
            k,
            convention,
            tadpoles: policy,
            num_classes: self.basis_size,
            num_rows: self.num_rows,
            rank: self.rank,
            dimension: self.dim,
            classes: Vec::new(),
            certificates: Vec::new(),
            modular_rank: None,
            primes: Vec::new(),
            oracle: Some(true),
            oracle_check: None,
            tadpole_comparison: None,
            notes: Vec::new(),
        }
    }
}

fn is_connected(n: usize, key: &Key) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in key {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        parent[ra] = rb;
    }
    let r = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == r)
}

/// All connected labelled trivalent graphs on `2k` vertices.
fn labelled_graphs(k: usize, policy: TadpolePolicy) -> Vec<Key> {
    let n = 2 * k;
    let m = 3 * k;
    let mut out = Vec::new();
    let mut cap = vec![3u8; n];
    let mut key: Key = Vec::with_capacity(m);
    fn rec(n: usize, m: usize, loops: bool, cap: &mut [u8], key: &mut Key, out: &mut Vec<Key>) {
        if key.len() == m {
            if is_connected(n, key) {
                out.push(key.clone());
            }
            return;
        }
        for i in 0..n {
            for j in i..n {
                let need_i = if i == j { 2 } else { 1 };
                if (i == j && !loops) || cap[i] < need_i || cap[j] < 1 {
                    continue;
                }
                cap[i] -= 1;
                cap[j] -= 1;
                key.push((i as u8, j as u8));
                rec(n, m, loops, cap, key, out);
                key.pop();
                cap[i] += 1;
                cap[j] += 1;
            }
        }
    }
    rec(n, m, policy == TadpolePolicy::Include, &mut cap, &mut key, &mut out);
    out
}

/// Non-tree edges of the greedy spanning forest (edge-label order) and the
/// fundamental cycle of each, in reference coordinates.
fn reference_cycles(n: usize, key: &Key) -> (Vec<usize>, Vec<Vec<i64>>) {
    let m = key.len();
    // adjacency of the forest: (neighbour, edge, sign of traversal)
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    let mut comp: Vec<usize> = (0..n).collect();
    let mut non_tree = Vec::new();
    for (l, &(a, b)) in key.iter().enumerate() {
        let (a, b) = (a as usize, b as usize);
        if a != b && comp[a] != comp[b] {
            let (ca, cb) = (comp[a], comp[b]);
            for c in comp.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
            adj[a].push((b, l, 1));
            adj[b].push((a, l, -1));
        } else {
            non_tree.push(l);
        }
    }
    let path = |from: usize, to: usize| -> Vec<i64> {
        // depth-first walk in the forest, recording signed edge use
        let mut z = vec![0i64; m];
        let mut stack = vec![(from, usize::MAX)];
        let mut via: Vec<Option<(usize, usize, i64)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        while let Some((v, _)) = stack.pop() {
            if v == to {
                break;
            }
            for &(w, l, s) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some((v, l, s));
                    stack.push((w, l));
                }
            }
        }
        let mut x = to;
        while x != from {
            let (p, l, s) = via[x].expect("forest path");
            z[l] += s;
            x = p;
        }
        z
    };
    let cycles = non_tree
        .iter()
        .map(|&l| {
            let (a, b) = (key[l].0 as usize, key[l].1 as usize);
            // traverse l from a to b, return along the tree from b to a
            let mut z = path(b, a);
            z[l] += 1;
            z
        })
        .collect();
    (non_tree, cycles)
}

/// Sign relating the orientation spanned by `vectors` (reference coordinates
/// of `key`) to the reference orientation of `key`.
fn orientation_sign(n: usize, key: &Key, vectors: &[Vec<i64>]) -> i64 {
    let (non_tree, _) = reference_cycles(n, key);
    let c: Vec<Vec<i64>> = vectors.iter().map(|z| non_tree.iter().map(|&l| z[l]).collect()).collect();
    let d = dense_det(&c);
    assert!(d == 1 || d == -1, "cycle bases differ by det {d}");
    d
}

/// Direction factor of edge `l` of `key` relative to the frame that runs from
/// the end at `tail` to the end at `head`.
fn frame_sign(tail: u8, head: u8) -> i64 {
    if tail > head {
        -1
    } else {
        1
    }
}

/// Signed union-find: `value(x) = sign(x) * value(root(x))`; a root may be
/// forced to zero.
struct SignedUnionFind {
    parent: Vec<usize>,
    sign: Vec<i64>,
    zero: Vec<bool>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), sign: vec![1; n], zero: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i64) {
        let p = self.parent[x];
        if p == x {
            return (x, 1);
        }
        let (r, s) = self.find(p);
        self.parent[x] = r;
        self.sign[x] *= s;
        (r, self.sign[x])
    }

    /// Imposes `value(x) = s * value(y)`.
    fn relate(&mut self, x: usize, y: usize, s: i64) {
        let (rx, sx) = self.find(x);
        let (ry, sy) = self.find(y);
        if rx == ry {
            // sx * r = s * sy * r
            if sx != s * sy {
                self.zero[rx] = true;
            }
            return;
        }
        // sx * rx = s * sy * ry  =>  rx = (sx * s * sy) * ry
        self.parent[rx] = ry;
        self.sign[rx] = sx * s * sy;
        let z = self.zero[rx];
        self.zero[ry] |= z;
    }
}

fn transpositions(len: usize, paranoid: bool) -> Vec<(usize, usize)> {
    if paranoid {
        (0..len).flat_map(|i| (i + 1..len).map(move |j| (i, j))).collect()
    } else {
        (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect()
    }
}

fn sorted(a: u8, b: u8) -> (u8, u8) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Two-term relations from one labelled graph: `(other key, s)` meaning
/// `value(this) = s * value(other)`.
fn two_term(n: usize, key: &Key, convention: Convention, paranoid: bool) -> Vec<(Key, i64)> {
    let odd = convention == Convention::Odd;
    let m = key.len();
    let (_, cycles) = if odd { reference_cycles(n, key) } else { (Vec::new(), Vec::new()) };
    let mut out = Vec::new();
    for (a, b) in transpositions(m, paranoid) {
        let mut other = key.clone();
        other.swap(a, b);
        // (G', o) = -(G, o); vector(G') = (G', o_ref') and (G', o) = t * (G', o_ref')
        let t = if odd {
            let moved: Vec<Vec<i64>> = cycles
                .iter()
                .map(|z| {
                    let mut w = z.clone();
                    w.swap(a, b);
                    w
                })
                .collect();
            orientation_sign(n, &other, &moved)
        } else {
            1
        };
        out.push((other, -t));
    }
    for (p, q) in transpositions(n, paranoid) {
        let swap = |v: u8| if v as usize == p { q as u8 } else if v as usize == q { p as u8 } else { v };
        let other: Key = key.iter().map(|&(x, y)| sorted(swap(x), swap(y))).collect();
        let t = if odd {
            let moved: Vec<Vec<i64>> = cycles
                .iter()
                .map(|z| {
                    z.iter()
                        .zip(key)
                        .map(|(&c, &(x, y))| c * frame_sign(swap(x), swap(y)))
                        .collect()
                })
                .collect();
            orientation_sign(n, &other, &moved)
        } else {
            1
        };
        out.push((other, t));
    }
    if odd {
        for (l, &(x, y)) in key.iter().enumerate() {
            if x == y {
                let moved: Vec<Vec<i64>> = cycles
                    .iter()
                    .map(|z| {
                        let mut w = z.clone();
                        w[l] = -w[l];
                        w
                    })
                    .collect();
                out.push((key.clone(), orientation_sign(n, key, &moved)));
            }
        }
    }
    out
}

/// IHX rows from one labelled graph: three `(key, sign)` terms per non-loop edge.
fn ihx_rows(n: usize, key: &Key, convention: Convention) -> Vec<[(Key, i64); 3]> {
    let odd = convention == Convention::Odd;
    let mut out = Vec::new();
    let (_, base_cycles) = if odd { reference_cycles(n, key) } else { (Vec::new(), Vec::new()) };
    for (e, &(u, v)) in key.iter().enumerate() {
        if u == v {
            continue;
        }
        // ends (edge, side); side 0 sits at key[l].0, side 1 at key[l].1
        let ends: Vec<[u8; 2]> = key.iter().map(|&(a, b)| [a, b]).collect();
        let at = |ends: &Vec<[u8; 2]>, w: u8| -> Vec<(usize, usize)> {
            let mut r = Vec::new();
            for (l, s) in ends.iter().enumerate() {
                for side in 0..2 {
                    if s[side] == w && l != e {
                        r.push((l, side));
                    }
                }
            }
            r
        };
        let ue = at(&ends, u);
        let ve = at(&ends, v);
        let (b, c, d) = (ue[1], ve[0], ve[1]);
        let mut terms: Vec<Vec<[u8; 2]>> = vec![ends.clone()];
        for other in [c, d] {
            let mut t = ends.clone();
            t[b.0][b.1] = v;
            t[other.0][other.1] = u;
            terms.push(t);
        }
        let row: Vec<(Key, i64)> = terms
            .into_iter()
            .map(|t| {
                let tk: Key = t.iter().map(|s| sorted(s[0], s[1])).collect();
                let s = if odd {
                    // lift the cycles of the contracted graph: side-frame
                    // coordinates away from e, e fixed by the boundary at u
                    let lifted: Vec<Vec<i64>> = base_cycles
                        .iter()
                        .map(|z| {
                            let mut w = z.clone();
                            let mut ze = 0;
                            for (l, s) in t.iter().enumerate() {
                                if l == e {
                                    continue;
                                }
                                for side in 0..2 {
                                    if s[side] == u {
                                        ze += if side == 1 { w[l] } else { -w[l] };
                                    }
                                }
                            }
                            w[e] = ze;
                            for (l, s) in t.iter().enumerate() {
                                w[l] *= frame_sign(s[0], s[1]);
                            }
                            w
                        })
                        .collect();
                    orientation_sign(n, &tk, &lifted)
                } else {
                    1
                };
                (tk, s)
            })
            .collect();
        out.push(row.try_into().expect("three terms"));
    }
    out
}

/// Dimension of `A_k` computed from fully labelled graphs.
pub fn brute_dimension(k: usize, convention: Convention, policy: TadpolePolicy) -> Result<OracleResult> {
    brute_dimension_with(k, convention, policy, &OracleOptions::default())
}

pub fn brute_dimension_with(
    k: usize,
    convention: Convention,
    policy: TadpolePolicy,
    opts: &OracleOptions,
) -> Result<OracleResult> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k > MAX_K {
        return Err(Error::ResourceLimit { what: "oracle k", value: k, limit: MAX_K });
    }
    let n = 2 * k;
    let basis = labelled_graphs(k, policy);
    let index: HashMap<&Key, usize> = basis.iter().enumerate().map(|(i, g)| (g, i)).collect();

    let pairs = par::map(opts.parallelism, &basis, |g| two_term(n, g, convention, opts.paranoid));
    let mut uf = SignedUnionFind::new(basis.len());
    let mut num_rows = 0;
    for (i, rels) in pairs.iter().enumerate() {
        for (other, s) in rels {
            let j = index[other];
            uf.relate(i, j, *s);
            num_rows += 1;
        }
    }

    // surviving components become columns
    let mut col_of_root: HashMap<usize, usize> = HashMap::new();
    let mut coord = vec![None; basis.len()];
    for i in 0..basis.len() {
        let (r, s) = uf.find(i);
        if uf.zero[r] {
            continue;
        }
        let next = col_of_root.len();
        let col = *col_of_root.entry(r).or_insert(next);
        coord[i] = Some((col, s));
    }
    let live = col_of_root.len();

    let rows = par::map(opts.parallelism, &basis, |g| ihx_rows(n, g, convention));
    let mut m = SparseIntMatrix::new(live);
    let mut seen = std::collections::BTreeSet::new();
    for row in rows.into_iter().flatten() {
        num_rows += 1;
        let mut acc: Vec<(usize, i64)> = Vec::new();
        for (tk, s) in row {
            // terms outside the basis (tadpoles under exclusion) are zero
            if let Some(&i) = index.get(&tk) {
                if let Some((c, t)) = coord[i] {
                    acc.push((c, s * t));
                }
            }
        }
        acc.sort_unstable();
        let mut merged: Vec<(usize, i64)> = Vec::new();
        for (c, v) in acc {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|e| e.1 != 0);
        if merged.first().is_some_and(|e| e.1 < 0) {
            merged.iter_mut().for_each(|e| e.1 = -e.1);
        }
        if !merged.is_empty() && seen.insert(merged.clone()) {
            m.push_row(merged.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect());
        }
    }
    let ihx_rank = rank_with_limit(&m, opts.limits.max_matrix_entries)?;
    let rank = basis.len() - live + ihx_rank;
    Ok(OracleResult { basis_size: basis.len(), num_rows, rank, dim: basis.len() - rank, live_components: live })
}
