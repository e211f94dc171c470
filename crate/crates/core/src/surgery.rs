//! Symbolic surgery plans for trivalent graphs in an ambient dimension
//! `d >= 4`.
//!
//! Cutting every edge with a Hopf link of spheres `S^{d-2}` and `S^1` splits
//! the graph into Y-graphs. A vertex that receives exactly one `S^{d-2}` leaf
//! is Type I (handlebody with two 1-handles and one (d-2)-handle, surgered
//! over `S^0`), one that receives two is Type II (one 1-handle and two
//! (d-2)-handles, surgered over `S^{d-3}`). For odd `d` every vertex is
//! surgered over `S^{(d-3)/2}` instead. Nothing here models embeddings or
//! framings; geometric facts appear only as fixed annotations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{Dart, DartGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexType {
    TypeI,
    TypeII,
    /// Odd `d`: every vertex carries the same `S^{(d-3)/2}`-family.
    Uniform,
}

/// The Hopf link placed on one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfPair {
    pub edge: usize,
    /// End receiving the `S^{d-2}` member (even `d`) or the first member.
    pub high_end: Dart,
    /// End receiving the `S^1` member (even `d`) or the second member.
    pub low_end: Dart,
    pub high_vertex: usize,
    pub low_vertex: usize,
    pub dims: [u32; 2],
    /// Loop edge: both members sit at one vertex.
    pub nonstandard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Typing {
    /// Per edge (reference order): true when the larger dart gets `S^{d-2}`.
    pub high_at_max_dart: Vec<bool>,
    pub vertex_types: Vec<VertexType>,
    pub nodes_explored: u64,
}

/// Lexicographically least polarity assignment (false before true, edges in
/// reference order) giving every vertex one or two `S^{d-2}` ends.
pub fn assign_vertex_types(g: &DartGraph) -> Result<Typing> {
    let edges = g.edges();
    let n = g.num_vertices();
    let mut high = vec![0u8; n];
    let mut open = vec![3u8; n];
    let mut choice = vec![false; edges.len()];
    let mut nodes = 0u64;

    // choosing `false` puts S^{d-2} at the larger dart, i.e. S^1 at the tail
    fn rec(
        i: usize,
        edges: &[(Dart, Dart)],
        high: &mut [u8],
        open: &mut [u8],
        choice: &mut [bool],
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if i == edges.len() {
            return high.iter().all(|&h| h == 1 || h == 2);
        }
        let (a, b) = edges[i];
        let (va, vb) = (a / 3, b / 3);
        for flip in [false, true] {
            let hv = if flip { va } else { vb };
            high[hv] += 1;
            open[va] -= 1;
            open[vb] -= 1;
            let ok = [va, vb].iter().all(|&v| high[v] <= 2 && high[v] + open[v] >= 1);
            if ok {
                choice[i] = flip;
                if rec(i + 1, edges, high, open, choice, nodes) {
                    return true;
                }
            }
            high[hv] -= 1;
            open[va] += 1;
            open[vb] += 1;
            if va == vb {
                // both polarities of a loop are the same configuration
                break;
            }
        }
        false
    }

    if !rec(0, &edges, &mut high, &mut open, &mut choice, &mut nodes) {
        return Err(Error::Infeasible { nodes_explored: nodes });
    }
    let vertex_types = high.iter().map(|&h| if h == 1 { VertexType::TypeI } else { VertexType::TypeII }).collect();
    Ok(Typing { high_at_max_dart: choice.iter().map(|&f| !f).collect(), vertex_types, nodes_explored: nodes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Handlebody {
    pub vertex: usize,
    pub vertex_type: VertexType,
    /// Indices of the handles attached to a d-ball.
    pub handle_indices: [u32; 3],
}

/// Dimensions of the six-component link `K_1 u L_1 u ... u K_3 u L_3` at a
/// vertex; `parameter_dim` is the dimension of the sphere the link varies over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramedLink {
    pub vertex: usize,
    pub k_dims: [u32; 3],
    pub l_dims: [u32; 3],
    pub parameter_dim: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfLedger {
    /// Three Hopf links per Y-graph.
    pub base: usize,
    /// After splitting one extra Hopf link off the chain.
    pub chain_augmented: usize,
    /// Trivial bundles boundary-summed at the end.
    pub w_copies: usize,
    /// Components of the framed links for the graph surgery.
    pub link_components: usize,
}

/// The four-component chain replacing the Hopf link on one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfChain {
    pub edge: usize,
    pub dims: [u32; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryPlan {
    pub d: u32,
    pub k: usize,
    pub vertex_types: Vec<VertexType>,
    pub edge_polarity: Vec<HopfPair>,
    /// Per-vertex handlebodies; not modelled for odd `d`.
    pub handlebody_summaries: Option<Vec<Handlebody>>,
    pub framed_link_dims: Option<Vec<FramedLink>>,
    /// Sphere dimensions of the factors of `B_Gamma`, one per vertex.
    pub b_gamma: Vec<u32>,
    pub family_dim: usize,
    pub hopf_ledger: HopfLedger,
    pub hopf_chain: HopfChain,
    pub final_handles: (u32, u32),
    pub hopf_family_dims: (u32, u32),
    pub max_handle_index: u32,
    pub admissible: bool,
    pub nonstandard: bool,
    pub annotations: Vec<String>,
}

impl SurgeryPlan {
    pub fn count(&self, t: VertexType) -> usize {
        self.vertex_types.iter().filter(|&&x| x == t).count()
    }

    /// `B_Gamma` as a product of spheres, e.g. `S^0 x S^1`.
    pub fn b_gamma_text(&self) -> String {
        self.b_gamma.iter().map(|d| format!("S^{d}")).collect::<Vec<_>>().join(" x ")
    }
}

const ANNOTATIONS: [&str; 3] = [
    "the family of Hopf links h_s is isotopic to the standard Hopf link for each s",
    "the restriction of h_s to the second sphere is a constant family",
    "all links lie in a small neighbourhood of the embedded graph",
];

pub fn plan(g: &DartGraph, d: u32) -> Result<SurgeryPlan> {
    if d < 4 {
        return Err(Error::DimensionTooSmall(d));
    }
    let k = g.k();
    let edges = g.edges();
    let even = d % 2 == 0;
    let m = if even { 1 } else { (d - 1) / 2 };

    let (vertex_types, high_at_max) = if even {
        let t = assign_vertex_types(g)?;
        (t.vertex_types, t.high_at_max_dart)
    } else {
        (vec![VertexType::Uniform; g.num_vertices()], vec![true; edges.len()])
    };
    let member_dims = if even { [d - 2, 1] } else { [m, m] };
    let edge_polarity: Vec<HopfPair> = edges
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| {
            let (h, l) = if high_at_max[e] { (b, a) } else { (a, b) };
            HopfPair {
                edge: e,
                high_end: h,
                low_end: l,
                high_vertex: h / 3,
                low_vertex: l / 3,
                dims: member_dims,
                nonstandard: a / 3 == b / 3,
            }
        })
        .collect();

    let (handlebody_summaries, framed_link_dims) = if even {
        let hb = vertex_types
            .iter()
            .enumerate()
            .map(|(v, &t)| Handlebody {
                vertex: v,
                vertex_type: t,
                handle_indices: if t == VertexType::TypeI { [1, 1, d - 2] } else { [1, d - 2, d - 2] },
            })
            .collect();
        let fl = vertex_types
            .iter()
            .enumerate()
            .map(|(v, &t)| match t {
                VertexType::TypeI => FramedLink { vertex: v, k_dims: [1, 1, d - 2], l_dims: [d - 2, d - 2, 1], parameter_dim: 0 },
                _ => FramedLink { vertex: v, k_dims: [1, d - 2, d - 2], l_dims: [d - 2, 1, 1], parameter_dim: d - 3 },
            })
            .collect();
        (Some(hb), Some(fl))
    } else {
        (None, None)
    };

    let b_gamma: Vec<u32> = vertex_types
        .iter()
        .map(|t| match t {
            VertexType::TypeI => 0,
            VertexType::TypeII => d - 3,
            VertexType::Uniform => m - 1,
        })
        .collect();
    let family_dim = b_gamma.iter().map(|&x| x as usize).sum();
    let hopf_family_dims = if even { (1, d - 2) } else { (m, m) };
    let final_handles = (m, m + 1);
    let max_handle_index = m + 1;
    let hopf_chain = HopfChain {
        edge: 0,
        dims: [member_dims[0], member_dims[1], member_dims[0], member_dims[1]],
    };
    Ok(SurgeryPlan {
        d,
        k,
        vertex_types,
        nonstandard: edge_polarity.iter().any(|p| p.nonstandard),
        edge_polarity,
        handlebody_summaries,
        framed_link_dims,
        b_gamma,
        family_dim,
        hopf_ledger: HopfLedger { base: 6 * k, chain_augmented: 6 * k + 1, w_copies: 6 * k, link_components: 12 * k },
        hopf_chain,
        final_handles,
        hopf_family_dims,
        max_handle_index,
        admissible: max_handle_index <= d - 2,
        annotations: ANNOTATIONS.iter().map(|s| s.to_string()).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YVertex {
    pub vertex: usize,
    pub vertex_type: VertexType,
    /// (edge, leaf sphere dimension) for each incident end.
    pub leaves: Vec<(usize, u32)>,
    pub handle_indices: Option<[u32; 3]>,
    pub k_dims: Option<[u32; 3]>,
    pub l_dims: Option<[u32; 3]>,
    pub parameter_dim: u32,
}

/// Per-vertex view of a plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YLinkReport {
    pub d: u32,
    pub k: usize,
    pub vertices: Vec<YVertex>,
    pub edges: Vec<HopfPair>,
    pub b_gamma: String,
    pub family_dim: usize,
}

pub fn y_link_report(plan: &SurgeryPlan) -> YLinkReport {
    let vertices = (0..plan.vertex_types.len())
        .map(|v| {
            let mut leaves = Vec::new();
            for p in &plan.edge_polarity {
                if p.high_vertex == v {
                    leaves.push((p.edge, p.dims[0]));
                }
                if p.low_vertex == v {
                    leaves.push((p.edge, p.dims[1]));
                }
            }
            let hb = plan.handlebody_summaries.as_ref().map(|h| h[v].handle_indices);
            let fl = plan.framed_link_dims.as_ref().map(|f| &f[v]);
            YVertex {
                vertex: v,
                vertex_type: plan.vertex_types[v],
                leaves,
                handle_indices: hb,
                k_dims: fl.map(|f| f.k_dims),
                l_dims: fl.map(|f| f.l_dims),
                parameter_dim: plan.b_gamma[v],
            }
        })
        .collect();
    YLinkReport {
        d: plan.d,
        k: plan.k,
        vertices,
        edges: plan.edge_polarity.clone(),
        b_gamma: plan.b_gamma_text(),
        family_dim: plan.family_dim,
    }
}

fn triple(x: [u32; 3]) -> String {
    format!("({}, {}, {})", x[0], x[1], x[2])
}

/// Human-readable rendering of a plan.
pub fn render_text(plan: &SurgeryPlan) -> String {
    let r = y_link_report(plan);
    let mut s = String::new();
    let _ = writeln!(s, "surgery plan: k = {}, d = {}", plan.k, plan.d);
    let _ = writeln!(s, "B_Gamma = {} (dimension {})", r.b_gamma, plan.family_dim);
    for v in &r.vertices {
        let _ = write!(s, "vertex {}: {:?}, leaves", v.vertex, v.vertex_type);
        for (e, dim) in &v.leaves {
            let _ = write!(s, " e{e}:S^{dim}");
        }
        if let (Some(h), Some(kd), Some(ld)) = (v.handle_indices, v.k_dims, v.l_dims) {
            let _ = write!(s, ", handles {}, K {}, L {}", triple(h), triple(kd), triple(ld));
        }
        let _ = writeln!(s, ", parameter sphere S^{}", v.parameter_dim);
    }
    for p in &plan.edge_polarity {
        let _ = writeln!(
            s,
            "edge {}: S^{} at vertex {} (dart {}), S^{} at vertex {} (dart {}){}",
            p.edge,
            p.dims[0],
            p.high_vertex,
            p.high_end,
            p.dims[1],
            p.low_vertex,
            p.low_end,
            if p.nonstandard { " [nonstandard: loop]" } else { "" }
        );
    }
    let l = plan.hopf_ledger;
    let _ = writeln!(
        s,
        "Hopf links: {} (+1 from the chain on edge {} with dims {:?}: {}); link components {}; trivial copies {}",
        l.base, plan.hopf_chain.edge, plan.hopf_chain.dims, l.chain_augmented, l.link_components, l.w_copies
    );
    let _ = writeln!(s, "Hopf family dims (m1, m2) = {:?}", plan.hopf_family_dims);
    let _ = writeln!(
        s,
        "final handles: indices {} and {}; max index {} {} d - 2 = {}: {}",
        plan.final_handles.0,
        plan.final_handles.1,
        plan.max_handle_index,
        if plan.admissible { "<=" } else { ">" },
        plan.d - 2,
        if plan.admissible { "admissible" } else { "not admissible" }
    );
    for a in &plan.annotations {
        let _ = writeln!(s, "note: {a}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::named::*;

    #[test]
    fn theta_typing() {
        let t = assign_vertex_types(&theta()).unwrap();
        assert_eq!(t.vertex_types, vec![VertexType::TypeI, VertexType::TypeII]);
    }

    #[test]
    fn k4_and_dumbbell_typing() {
        let t = assign_vertex_types(&k4()).unwrap();
        assert_eq!(t.vertex_types.iter().filter(|&&x| x == VertexType::TypeI).count(), 2);
        let t = assign_vertex_types(&dumbbell()).unwrap();
        assert_eq!(t.vertex_types.iter().filter(|&&x| x == VertexType::TypeII).count(), 1);
    }

    #[test]
    fn theta_plans() {
        let p = plan(&theta(), 4).unwrap();
        assert_eq!(p.b_gamma_text(), "S^0 x S^1");
        assert_eq!(p.family_dim, 1);
        assert_eq!((p.hopf_ledger.base, p.hopf_ledger.chain_augmented, p.hopf_ledger.w_copies), (6, 7, 6));
        assert_eq!(p.hopf_family_dims, (1, 2));
        assert_eq!(p.final_handles, (1, 2));
        assert!(p.admissible);
        let hb = p.handlebody_summaries.as_ref().unwrap();
        assert_eq!(hb[0].handle_indices, [1, 1, 2]);
        assert_eq!(hb[1].handle_indices, [1, 2, 2]);
        let fl = p.framed_link_dims.as_ref().unwrap();
        assert_eq!((fl[0].k_dims, fl[0].l_dims), ([1, 1, 2], [2, 2, 1]));
        assert_eq!((fl[1].k_dims, fl[1].l_dims), ([1, 2, 2], [2, 1, 1]));

        let p = plan(&theta(), 5).unwrap();
        assert_eq!(p.b_gamma_text(), "S^1 x S^1");
        assert_eq!(p.final_handles, (2, 3));
        assert!(p.admissible);
        assert_eq!(plan(&theta(), 3), Err(Error::DimensionTooSmall(3)));
    }

    #[test]
    fn k4_plan_and_round_trip() {
        let p = plan(&k4(), 4).unwrap();
        assert_eq!((p.k, p.family_dim, p.hopf_ledger.base, p.hopf_ledger.chain_augmented), (2, 2, 12, 13));
        assert_eq!(p.final_handles, (1, 2));
        assert_eq!(plan(&k4(), 5).unwrap().family_dim, 4);
        let r = y_link_report(&p);
        let back: YLinkReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        let back: SurgeryPlan = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(render_text(&p).contains("admissible"));
    }

    #[test]
    fn loops_flagged() {
        let p = plan(&dumbbell(), 6).unwrap();
        assert!(p.nonstandard);
        assert_eq!(p.edge_polarity.iter().filter(|e| e.nonstandard).count(), 2);
    }
}
