//! Class bases, IHX relation rows, dimensions and certificates for the
//! quotients `A_k^even` and `A_k^odd`.
//!
//! IHX terms are formed by regrouping the four outer darts around an edge
//! `e = (u, v)`: with `a, b` at `u` and `c, d` at `v`, the `H` term exchanges
//! the positions of `b` and `c`, the `X` term those of `b` and `d`. Every
//! dart keeps its edge label and direction, vertices keep their labels, and
//! the relation reads `I + H + X = 0` in these aligned labellings.

mod cert;
mod relations;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multigraph::{canonical_form, enumerate_trivalent, DartGraph, EnumerateOptions, TadpolePolicy};
use crate::orientation::{classify, relative_sign, ClassStatus, Convention, GraphClass, LabelledGraph, OrientedLabelling};
use crate::par::{self, Parallelism};
use crate::perm::Sign;
use crate::Limits;

pub use cert::{certify, Certificate, Frac, Target, ZeroEvidence};
pub use relations::{
    compute, dimension, relation_matrix, ClassEntry, DimensionReport, HomologyComputation, OracleCheck, PolicySummary,
    Provenance, RelationMatrix, RelationRow, TermOutcome,
};

#[derive(Debug, Clone, Copy, Default)]
pub struct HomologyOptions {
    pub limits: Limits,
    pub parallelism: Parallelism,
}

/// The surviving classes of `enumerate_trivalent(k, policy)` under a convention.
#[derive(Debug, Clone)]
pub struct ClassBasis {
    pub k: usize,
    pub convention: Convention,
    pub policy: TadpolePolicy,
    /// Generator classes in enumeration order; `class_id` is the position here.
    pub classes: Vec<GraphClass>,
    /// Canonical code to class id.
    pub index: BTreeMap<String, usize>,
    /// Every enumerated class, generators and zero classes alike.
    pub census: Vec<GraphClass>,
}

impl ClassBasis {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_id(&self, code: &str) -> Option<usize> {
        self.index.get(code).copied()
    }
}

pub fn class_basis(k: usize, convention: Convention, policy: TadpolePolicy) -> Result<ClassBasis> {
    class_basis_with(k, convention, policy, &HomologyOptions::default())
}

pub fn class_basis_with(
    k: usize,
    convention: Convention,
    policy: TadpolePolicy,
    opts: &HomologyOptions,
) -> Result<ClassBasis> {
    let graphs = enumerate_trivalent(
        k,
        EnumerateOptions { policy, max_classes: opts.limits.max_classes, parallelism: opts.parallelism },
    )?;
    let census = par::map(opts.parallelism, &graphs, |g| classify(g, convention));
    let mut classes = Vec::new();
    let mut index = BTreeMap::new();
    for c in census.iter().filter(|c| c.is_generator()) {
        let mut c = c.clone();
        c.class_id = Some(classes.len());
        index.insert(c.code(), classes.len());
        classes.push(c);
    }
    Ok(ClassBasis { k, convention, policy, classes, index, census })
}

/// Why a labelled graph maps to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroReason {
    /// Its class admits an automorphism of total sign `-1`.
    ZeroClass,
    /// It has a self-loop and the policy excludes tadpoles.
    Tadpole,
    Disconnected,
}

/// Image of a labelled graph in the quotient: zero, or `sign * e_class`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "image", rename_all = "lowercase")]
pub enum Expressed {
    Zero { reason: ZeroReason },
    Class { class_id: usize, sign: Sign },
}

/// Expresses a labelled graph over the basis.
pub fn express(lg: &LabelledGraph, basis: &ClassBasis) -> Result<Expressed> {
    let g = &lg.graph;
    if g.num_vertices() != 2 * basis.k {
        return Err(Error::WrongSize { expected: 2 * basis.k, got: g.num_vertices() });
    }
    if g.num_components() != 1 {
        return Ok(Expressed::Zero { reason: ZeroReason::Disconnected });
    }
    if !basis.policy.allows(g) {
        return Ok(Expressed::Zero { reason: ZeroReason::Tadpole });
    }
    let cf = canonical_form(g);
    let Some(class_id) = basis.class_id(&cf.graph.code()) else {
        return Ok(Expressed::Zero { reason: ZeroReason::ZeroClass });
    };
    let moved = lg.labelling.transport(&cf.witness);
    let reference = OrientedLabelling::reference(&cf.graph);
    let sign = relative_sign(basis.convention, &cf.graph, &moved, &reference);
    Ok(Expressed::Class { class_id, sign })
}

/// [`express`] as a sparse rational vector over the basis.
pub fn express_vector(lg: &LabelledGraph, basis: &ClassBasis) -> Result<Vec<(usize, Frac)>> {
    Ok(match express(lg, basis)? {
        Expressed::Zero { .. } => Vec::new(),
        Expressed::Class { class_id, sign } => vec![(class_id, Frac::from_int(sign.to_i64()))],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IhxTerm {
    I,
    H,
    X,
}

/// The three terms of an IHX relation with their coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IhxExpansion {
    pub edge: usize,
    pub terms: [(IhxTerm, i64, LabelledGraph); 3],
}

/// Expands the IHX relation across the non-loop edge `edge` (reference edge
/// index of `lg.graph`). Terms may be disconnected only if the input is.
pub fn ihx_expand(lg: &LabelledGraph, edge: usize) -> Result<IhxExpansion> {
    let g = &lg.graph;
    let edges = g.edges();
    let &(p, q) = edges
        .get(edge)
        .ok_or_else(|| Error::InvalidArgument(format!("edge {edge} out of range")))?;
    if p / 3 == q / 3 {
        return Err(Error::LoopEdge(edge));
    }
    let (x, y) = if lg.labelling.dart_is_tail[p] { (p, q) } else { (q, p) };
    let others = |t: usize| -> [usize; 2] {
        let ds = DartGraph::darts_of(t / 3);
        let mut o = ds.into_iter().filter(|&d| d != t);
        [o.next().expect("two other darts"), o.next().expect("two other darts")]
    };
    let [_a, b] = others(x);
    let [c, d] = others(y);
    let swap = |s: usize, t: usize| {
        let mut tau: Vec<usize> = (0..g.num_darts()).collect();
        tau.swap(s, t);
        lg.rename_darts(&tau)
    };
    Ok(IhxExpansion {
        edge,
        terms: [(IhxTerm::I, 1, lg.clone()), (IhxTerm::H, 1, swap(b, c)), (IhxTerm::X, 1, swap(b, d))],
    })
}

/// Status of `g` under the basis convention, found by classifying its class.
pub fn class_status(g: &DartGraph, convention: Convention) -> ClassStatus {
    classify(g, convention).status
}


#[cfg(test)]
mod contraction_check;
