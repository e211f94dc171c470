//! Orientation signs for labelled trivalent graphs.
//!
//! Both conventions identify a labelled graph with its images under
//! isomorphisms of labelled graphs and impose label-change relations: an edge
//! label transposition costs `-1`, a vertex label transposition costs `+1`.
//! The odd convention additionally carries an orientation `o` of the cycle
//! space and sets `(G, -o) = -(G, o)`.
//!
//! In code, `o` is encoded by the labelling itself: the edge order with the
//! reference edge directions orients the 1-chains, the vertex order orients
//! the 0-chains, and their ratio orients `H_1` (the graph is connected). With
//! that encoding the odd sign of a relabelling collapses to
//! `(-1)^(reversed edges) * sgn(vertex permutation)`; the edge-label sign of
//! the label-change relation cancels against the edge part of the cycle-space
//! determinant. [`h1_action_sign`] computes that determinant honestly on a
//! fundamental-cycle basis so the cancellation can be checked.
//!
//! The antisymmetric cyclic-vertex-order convention used for Jacobi diagrams
//! is a different bookkeeping device and is not implemented here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::dense_det;
use crate::multigraph::{automorphisms, canonical_form, Dart, DartGraph, Isomorphism};
use crate::perm::{self, perm_sign, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Even,
    Odd,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Even => "even",
            Convention::Odd => "odd",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Convention::Even),
            "odd" => Ok(Convention::Odd),
            other => Err(Error::InvalidArgument(format!("unknown convention {other:?}"))),
        }
    }
}

/// Tail dart of every edge, indexed by reference edge index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeDirections(pub Vec<Dart>);

impl EdgeDirections {
    /// Every edge points away from its smaller dart.
    pub fn reference(g: &DartGraph) -> Self {
        EdgeDirections(g.edges().into_iter().map(|(a, _)| a).collect())
    }

    pub fn tail(&self, edge: usize) -> Dart {
        self.0[edge]
    }

    /// Tail flag per dart.
    fn tail_flags(&self, g: &DartGraph) -> Vec<bool> {
        let mut flags = vec![false; g.num_darts()];
        for &t in &self.0 {
            flags[t] = true;
        }
        flags
    }
}

/// Vertex labels, edge labels and edge directions of a trivalent graph.
///
/// Stored per dart so that the data moves with darts under relabellings and
/// IHX regroupings. Labels are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedLabelling {
    pub vertex_labels: Vec<usize>,
    /// Label of the edge containing each dart (equal on both darts).
    pub dart_edge_labels: Vec<usize>,
    /// Whether each dart is the tail of its edge (exactly one per edge).
    pub dart_is_tail: Vec<bool>,
}

impl OrientedLabelling {
    /// Vertex `v` gets label `v`, edge `i` (reference order) gets label `i`
    /// and points away from its smaller dart.
    pub fn reference(g: &DartGraph) -> Self {
        let idx = g.edge_index_of_darts();
        let dart_is_tail = (0..g.num_darts()).map(|d| d < g.partner(d)).collect();
        OrientedLabelling {
            vertex_labels: perm::identity(g.num_vertices()),
            dart_edge_labels: idx,
            dart_is_tail,
        }
    }

    /// Builds a labelling from per-vertex labels, per-edge labels and edge
    /// directions (both indexed by reference edge order).
    pub fn new(
        g: &DartGraph,
        vertex_labels: Vec<usize>,
        edge_labels: &[usize],
        directions: &EdgeDirections,
    ) -> Result<Self> {
        if vertex_labels.len() != g.num_vertices() || !perm::is_permutation(&vertex_labels) {
            return Err(Error::InvalidArgument("vertex labels must be a bijection".into()));
        }
        if edge_labels.len() != g.num_edges() || !perm::is_permutation(edge_labels) {
            return Err(Error::InvalidArgument("edge labels must be a bijection".into()));
        }
        let edges = g.edges();
        if directions.0.len() != edges.len() {
            return Err(Error::InvalidArgument("one direction per edge required".into()));
        }
        let mut dart_edge_labels = vec![0; g.num_darts()];
        let mut dart_is_tail = vec![false; g.num_darts()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            let t = directions.0[i];
            if t != a && t != b {
                return Err(Error::InvalidArgument(format!("direction of edge {i} names a foreign dart")));
            }
            dart_edge_labels[a] = edge_labels[i];
            dart_edge_labels[b] = edge_labels[i];
            dart_is_tail[t] = true;
        }
        Ok(OrientedLabelling { vertex_labels, dart_edge_labels, dart_is_tail })
    }

    /// Edge labels in reference edge order.
    pub fn edge_labels(&self, g: &DartGraph) -> Vec<usize> {
        g.edges().into_iter().map(|(a, _)| self.dart_edge_labels[a]).collect()
    }

    pub fn directions(&self, g: &DartGraph) -> EdgeDirections {
        EdgeDirections(
            g.edges()
                .into_iter()
                .map(|(a, b)| if self.dart_is_tail[a] { a } else { b })
                .collect(),
        )
    }

    /// The labelling carried along an isomorphism `g -> iso(g)`.
    pub fn transport(&self, iso: &Isomorphism) -> Self {
        let n = self.vertex_labels.len();
        let m = self.dart_edge_labels.len();
        let mut vertex_labels = vec![0; n];
        let mut dart_edge_labels = vec![0; m];
        let mut dart_is_tail = vec![false; m];
        for v in 0..n {
            vertex_labels[iso.vertex_perm[v]] = self.vertex_labels[v];
        }
        for d in 0..m {
            dart_edge_labels[iso.dart_perm[d]] = self.dart_edge_labels[d];
            dart_is_tail[iso.dart_perm[d]] = self.dart_is_tail[d];
        }
        OrientedLabelling { vertex_labels, dart_edge_labels, dart_is_tail }
    }

    /// Renames labels: edge label `l` becomes `edge_perm[l]`, vertex label
    /// `l` becomes `vertex_perm[l]`.
    pub fn relabel(&self, edge_perm: &[usize], vertex_perm: &[usize]) -> Self {
        OrientedLabelling {
            vertex_labels: self.vertex_labels.iter().map(|&l| vertex_perm[l]).collect(),
            dart_edge_labels: self.dart_edge_labels.iter().map(|&l| edge_perm[l]).collect(),
            dart_is_tail: self.dart_is_tail.clone(),
        }
    }

    /// Flips the direction of the edge containing dart `d`.
    pub fn reverse_edge_at(&mut self, g: &DartGraph, d: Dart) {
        let p = g.partner(d);
        self.dart_is_tail[d] = !self.dart_is_tail[d];
        self.dart_is_tail[p] = !self.dart_is_tail[p];
    }
}

/// A trivalent graph together with its labelling data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledGraph {
    pub graph: DartGraph,
    pub labelling: OrientedLabelling,
}

impl LabelledGraph {
    pub fn reference(graph: DartGraph) -> Self {
        let labelling = OrientedLabelling::reference(&graph);
        LabelledGraph { graph, labelling }
    }

    /// Renames darts by `tau` (any permutation of darts, not necessarily block
    /// compatible). Pairing, labels and directions all follow the darts.
    pub(crate) fn rename_darts(&self, tau: &[Dart]) -> Self {
        let m = self.graph.num_darts();
        let mut pairing = vec![0; m];
        let mut dart_edge_labels = vec![0; m];
        let mut dart_is_tail = vec![false; m];
        for d in 0..m {
            pairing[tau[d]] = tau[self.graph.partner(d)];
            dart_edge_labels[tau[d]] = self.labelling.dart_edge_labels[d];
            dart_is_tail[tau[d]] = self.labelling.dart_is_tail[d];
        }
        LabelledGraph {
            graph: DartGraph::from_involution_unchecked_connectivity(self.graph.num_vertices(), pairing)
                .expect("renaming darts preserves the involution"),
            labelling: OrientedLabelling {
                vertex_labels: self.labelling.vertex_labels.clone(),
                dart_edge_labels,
                dart_is_tail,
            },
        }
    }
}

/// Sign of a pure label change. Edge transpositions cost `-1`, vertex
/// relabellings are free; the same rule holds in both conventions.
pub fn label_change_sign(_convention: Convention, edge_label_perm: &[usize], vertex_label_perm: &[usize]) -> Sign {
    debug_assert!(perm::is_permutation(vertex_label_perm));
    perm_sign(edge_label_perm)
}

/// The permutation of reference edge indices induced by a dart map `g -> h`.
pub fn induced_edge_perm(g: &DartGraph, h: &DartGraph, iso: &Isomorphism) -> Vec<usize> {
    let hi = h.edge_index_of_darts();
    g.edges().into_iter().map(|(a, _)| hi[iso.dart_perm[a]]).collect()
}

/// Number of edges of `g` whose direction the automorphism reverses.
pub fn reversed_edges(g: &DartGraph, dirs: &EdgeDirections, iso: &Isomorphism) -> usize {
    let flags = dirs.tail_flags(g);
    dirs.0.iter().filter(|&&t| !flags[iso.dart_perm[t]]).count()
}

/// A spanning tree given by parent darts (`parent_dart[v]` is the dart at `v`
/// on the tree edge towards the root; `None` at the root).
#[derive(Debug, Clone)]
pub struct SpanningTree {
    parent_dart: Vec<Option<Dart>>,
    depth: Vec<usize>,
    tree_edge: Vec<bool>,
}

impl SpanningTree {
    /// Breadth-first tree from `root`, scanning darts in the given order
    /// (`dart_order` lists all darts; the first unvisited hit wins).
    pub fn bfs(g: &DartGraph, root: usize, dart_order: Option<&[Dart]>) -> Self {
        let n = g.num_vertices();
        let idx = g.edge_index_of_darts();
        let default_order: Vec<Dart> = (0..g.num_darts()).collect();
        let order = dart_order.unwrap_or(&default_order);
        let mut rank = vec![0; g.num_darts()];
        for (r, &d) in order.iter().enumerate() {
            rank[d] = r;
        }
        let mut parent_dart = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut tree_edge = vec![false; g.num_edges()];
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut ds = DartGraph::darts_of(v);
            ds.sort_by_key(|&d| rank[d]);
            for d in ds {
                let p = g.partner(d);
                let w = p / 3;
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent_dart[w] = Some(p);
                    tree_edge[idx[d]] = true;
                    queue.push_back(w);
                }
            }
        }
        SpanningTree { parent_dart, depth, tree_edge }
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree_edge[e]
    }
}

/// Integer coordinates (per reference edge) of the fundamental cycle of
/// non-tree edge `f`, traversing `f` along its direction.
fn fundamental_cycle(g: &DartGraph, dirs: &EdgeDirections, tree: &SpanningTree, f: usize) -> Vec<i64> {
    let idx = g.edge_index_of_darts();
    let flags = dirs.tail_flags(g);
    let mut z = vec![0i64; g.num_edges()];
    z[f] = 1;
    let t = dirs.tail(f);
    let (mut a, mut b) = (t / 3, g.partner(t) / 3);
    // Close the cycle with the tree path from b back to a: climb both ends to
    // their common ancestor.
    while a != b {
        if tree.depth[b] >= tree.depth[a] {
            // walk b -> parent(b): dart at b is parent_dart[b]
            let d = tree.parent_dart[b].expect("non-root has a parent");
            z[idx[d]] += if flags[d] { 1 } else { -1 };
            b = g.partner(d) / 3;
        } else {
            // path segment parent(a) -> a, traversed towards a
            let d = tree.parent_dart[a].expect("non-root has a parent");
            z[idx[d]] += if flags[d] { -1 } else { 1 };
            a = g.partner(d) / 3;
        }
    }
    z
}

/// Sign of the determinant of the map induced by the automorphism `iso` on
/// the cycle space of `g`, on the fundamental-cycle basis of `tree`.
pub fn h1_action_sign_with_tree(g: &DartGraph, dirs: &EdgeDirections, iso: &Isomorphism, tree: &SpanningTree) -> Sign {
    let idx = g.edge_index_of_darts();
    let flags = dirs.tail_flags(g);
    let non_tree: Vec<usize> = (0..g.num_edges()).filter(|&e| !tree.is_tree_edge(e)).collect();
    let cycles: Vec<Vec<i64>> = non_tree.iter().map(|&f| fundamental_cycle(g, dirs, tree, f)).collect();
    // image of edge e: sign * iso(e)
    let image: Vec<(usize, i64)> = (0..g.num_edges())
        .map(|e| {
            let t = dirs.tail(e);
            let it = iso.dart_perm[t];
            (idx[it], if flags[it] { 1 } else { -1 })
        })
        .collect();
    let r = non_tree.len();
    let mut m = vec![vec![0i64; r]; r];
    for (col, z) in cycles.iter().enumerate() {
        let mut az = vec![0i64; g.num_edges()];
        for (e, &c) in z.iter().enumerate() {
            if c != 0 {
                let (ie, s) = image[e];
                az[ie] += s * c;
            }
        }
        for (row, &f) in non_tree.iter().enumerate() {
            m[row][col] = az[f];
        }
    }
    let det = dense_det(&m);
    assert!(det == 1 || det == -1, "automorphism acts on the cycle lattice with det {det}");
    Sign::from_parity(det < 0)
}

/// [`h1_action_sign_with_tree`] on the breadth-first tree rooted at vertex 0.
pub fn h1_action_sign(g: &DartGraph, dirs: &EdgeDirections, iso: &Isomorphism) -> Sign {
    h1_action_sign_with_tree(g, dirs, iso, &SpanningTree::bfs(g, 0, None))
}

/// Closed form of the cycle-space sign:
/// `sgn(edge perm) * (-1)^(reversed edges) * sgn(vertex perm)`.
pub fn h1_action_sign_closed_form(g: &DartGraph, dirs: &EdgeDirections, iso: &Isomorphism) -> Sign {
    perm_sign(&induced_edge_perm(g, g, iso))
        * Sign::from_parity(reversed_edges(g, dirs, iso) % 2 == 1)
        * perm_sign(&iso.vertex_perm)
}

/// Sign picked up by identifying `(g, L)` with its image under the automorphism.
/// Even: sign of the edge permutation. Odd: edge-label sign times the
/// cycle-space determinant.
pub fn automorphism_sign(convention: Convention, g: &DartGraph, dirs: &EdgeDirections, iso: &Isomorphism) -> Sign {
    let edge_sign = perm_sign(&induced_edge_perm(g, g, iso));
    match convention {
        Convention::Even => edge_sign,
        Convention::Odd => edge_sign * h1_action_sign(g, dirs, iso),
    }
}

/// Closed form of [`automorphism_sign`]; odd reduces to
/// `(-1)^(reversed edges) * sgn(vertex perm)`.
pub fn automorphism_sign_closed_form(
    convention: Convention,
    g: &DartGraph,
    dirs: &EdgeDirections,
    iso: &Isomorphism,
) -> Sign {
    match convention {
        Convention::Even => perm_sign(&induced_edge_perm(g, g, iso)),
        Convention::Odd => {
            Sign::from_parity(reversed_edges(g, dirs, iso) % 2 == 1) * perm_sign(&iso.vertex_perm)
        }
    }
}

/// Label permutations applied after an automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPerms {
    pub edge: Vec<usize>,
    pub vertex: Vec<usize>,
}

impl LabelPerms {
    pub fn identity(g: &DartGraph) -> Self {
        LabelPerms { edge: perm::identity(g.num_edges()), vertex: perm::identity(g.num_vertices()) }
    }
}

/// Composite sign of an automorphism followed by a label change.
pub fn total_sign(
    convention: Convention,
    g: &DartGraph,
    dirs: &EdgeDirections,
    iso: &Isomorphism,
    labels: &LabelPerms,
) -> Sign {
    label_change_sign(convention, &labels.edge, &labels.vertex) * automorphism_sign(convention, g, dirs, iso)
}

/// The sign `s` with `(g, a) = s * (g, b)` for two labellings of the same graph.
pub fn relative_sign(convention: Convention, g: &DartGraph, a: &OrientedLabelling, b: &OrientedLabelling) -> Sign {
    match convention {
        Convention::Even => {
            // permutation taking b's edge labels to a's
            let mut p = vec![0; g.num_edges()];
            for (x, _) in g.edges() {
                p[b.dart_edge_labels[x]] = a.dart_edge_labels[x];
            }
            perm_sign(&p)
        }
        Convention::Odd => {
            let mut p = vec![0; g.num_vertices()];
            for v in 0..g.num_vertices() {
                p[b.vertex_labels[v]] = a.vertex_labels[v];
            }
            let reversed = g.edges().into_iter().filter(|&(x, _)| a.dart_is_tail[x] != b.dart_is_tail[x]).count();
            perm_sign(&p) * Sign::from_parity(reversed % 2 == 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ClassStatus {
    Generator,
    /// Some automorphism has total sign `-1`, so the class equals its negative.
    Zero { witness: Isomorphism },
}

/// A canonical graph with its survival status under a convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClass {
    pub rep: DartGraph,
    pub convention: Convention,
    pub status: ClassStatus,
    pub class_id: Option<usize>,
}

impl GraphClass {
    pub fn is_generator(&self) -> bool {
        self.status == ClassStatus::Generator
    }

    pub fn code(&self) -> String {
        self.rep.code()
    }
}

/// Decides whether `g` (canonicalised first) survives the sign relations.
pub fn classify(g: &DartGraph, convention: Convention) -> GraphClass {
    let rep = canonical_form(g).graph;
    let dirs = EdgeDirections::reference(&rep);
    let witness = automorphisms(&rep).into_iter().find(|a| {
        let s = automorphism_sign_closed_form(convention, &rep, &dirs, a);
        debug_assert_eq!(s, automorphism_sign(convention, &rep, &dirs, a));
        s == Sign::Minus
    });
    let status = match witness {
        Some(w) => ClassStatus::Zero { witness: w },
        None => ClassStatus::Generator,
    };
    GraphClass { rep, convention, status, class_id: None }
}
