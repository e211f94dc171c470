//! IHX relation rows over a class basis and the dimension report.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{express, ihx_expand, ClassBasis, Expressed, HomologyOptions, IhxTerm};
use crate::error::{Error, Result};
use crate::exactla::{deterministic_primes, modular_rank, rank_with_limit, SparseIntMatrix};
use crate::multigraph::{canonical_form, TadpolePolicy};
use crate::orientation::{ClassStatus, Convention, LabelledGraph};
use crate::par;

/// What one IHX term became after canonicalisation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOutcome {
    pub term: IhxTerm,
    pub coefficient: i64,
    /// Canonical code of the term graph; empty if it is disconnected.
    pub code: String,
    pub image: Expressed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source_class: usize,
    pub edge: usize,
    pub terms: Vec<TermOutcome>,
}

/// One IHX relation over class ids. Coefficients are nonzero; the first one
/// is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRow {
    pub coeffs: Vec<(usize, i64)>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone)]
pub struct RelationMatrix {
    pub num_classes: usize,
    /// Distinct nonzero rows, in generation order.
    pub rows: Vec<RelationRow>,
    /// Expansions whose row vanished identically.
    pub vanished: Vec<Provenance>,
    /// Every nonzero row before deduplication.
    pub raw_rows: Vec<Vec<(usize, i64)>>,
}

fn to_sparse(num_cols: usize, rows: impl Iterator<Item = Vec<(usize, i64)>>) -> SparseIntMatrix {
    let mut m = SparseIntMatrix::new(num_cols);
    for r in rows {
        m.push_row(r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect());
    }
    m
}

impl RelationMatrix {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn matrix(&self) -> SparseIntMatrix {
        to_sparse(self.num_classes, self.rows.iter().map(|r| r.coeffs.clone()))
    }

    pub fn raw_matrix(&self) -> SparseIntMatrix {
        to_sparse(self.num_classes, self.raw_rows.iter().cloned())
    }
}

/// Expands every non-loop edge of one labelled graph into class coordinates.
pub(crate) fn expand_all_edges(lg: &LabelledGraph, source_class: usize, basis: &ClassBasis) -> Vec<RelationRow> {
    let g = &lg.graph;
    let mut out = Vec::new();
    for (e, (p, q)) in g.edges().into_iter().enumerate() {
        if p / 3 == q / 3 {
            continue;
        }
        let ex = ihx_expand(lg, e).expect("non-loop edge");
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        let mut terms = Vec::with_capacity(3);
        for (term, coefficient, t) in &ex.terms {
            let image = express(t, basis).expect("terms keep the vertex count");
            if let Expressed::Class { class_id, sign } = image {
                *acc.entry(class_id).or_insert(0) += coefficient * sign.to_i64();
            }
            let code = if t.graph.num_components() == 1 { canonical_form(&t.graph).graph.code() } else { String::new() };
            terms.push(TermOutcome { term: *term, coefficient: *coefficient, code, image });
        }
        let mut coeffs: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        if coeffs.first().is_some_and(|&(_, v)| v < 0) {
            for c in coeffs.iter_mut() {
                c.1 = -c.1;
            }
        }
        out.push(RelationRow { coeffs, provenance: Provenance { source_class, edge: e, terms } });
    }
    out
}

pub fn relation_matrix(basis: &ClassBasis, opts: &HomologyOptions) -> Result<RelationMatrix> {
    let all = par::map_range(opts.parallelism, basis.len(), |i| {
        expand_all_edges(&LabelledGraph::reference(basis.classes[i].rep.clone()), i, basis)
    });
    let mut rows = Vec::new();
    let mut vanished = Vec::new();
    let mut raw_rows = Vec::new();
    let mut seen = BTreeSet::new();
    let mut entries = 0usize;
    for row in all.into_iter().flatten() {
        if row.coeffs.is_empty() {
            vanished.push(row.provenance);
            continue;
        }
        raw_rows.push(row.coeffs.clone());
        if seen.insert(row.coeffs.clone()) {
            entries += row.coeffs.len();
            if entries > opts.limits.max_matrix_entries {
                return Err(Error::ResourceLimit {
                    what: "relation matrix entries",
                    value: entries,
                    limit: opts.limits.max_matrix_entries,
                });
            }
            rows.push(row);
        }
    }
    Ok(RelationMatrix { num_classes: basis.len(), rows, vanished, raw_rows })
}

/// Basis, relations and ranks for one `(k, convention, policy)`.
#[derive(Debug, Clone)]
pub struct HomologyComputation {
    pub basis: ClassBasis,
    pub relations: RelationMatrix,
    pub matrix: SparseIntMatrix,
    pub rank: usize,
    pub modular_rank: usize,
    pub primes: Vec<u64>,
}

pub fn compute(k: usize, convention: Convention, policy: TadpolePolicy, opts: &HomologyOptions) -> Result<HomologyComputation> {
    let basis = super::class_basis_with(k, convention, policy, opts)?;
    let relations = relation_matrix(&basis, opts)?;
    let matrix = relations.matrix();
    let rank = rank_with_limit(&matrix, opts.limits.max_matrix_entries)?;
    let primes = deterministic_primes(&matrix, 3);
    let modular = modular_rank(&matrix, &primes, opts.parallelism);
    if modular != rank {
        return Err(Error::RankMismatch { rational: rank, modular });
    }
    Ok(HomologyComputation { basis, relations, matrix, rank, modular_rank: modular, primes })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// Position in the enumeration of all classes.
    pub id: usize,
    pub code: String,
    pub status: String,
    /// Index into the generator basis, if the class survives.
    pub basis_index: Option<usize>,
}

/// The JSON dimension report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub k: usize,
    pub convention: Convention,
    pub tadpoles: TadpolePolicy,
    pub num_classes: usize,
    pub num_rows: usize,
    pub rank: usize,
    pub dimension: usize,
    pub classes: Vec<ClassEntry>,
    pub certificates: Vec<super::Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modular_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_check: Option<OracleCheck>,
    /// The same computation under the other tadpole policy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tadpole_comparison: Option<PolicySummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub basis_size: usize,
    pub rank: usize,
    pub dimension: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolicySummary {
    pub tadpoles: TadpolePolicy,
    pub num_classes: usize,
    pub rank: usize,
    pub dimension: usize,
}

impl DimensionReport {
    pub fn summary(&self) -> PolicySummary {
        PolicySummary { tadpoles: self.tadpoles, num_classes: self.num_classes, rank: self.rank, dimension: self.dimension }
    }
}

impl HomologyComputation {
    pub fn dimension(&self) -> usize {
        self.basis.len() - self.rank
    }

    pub fn report(&self) -> DimensionReport {
        let classes = self
            .basis
            .census
            .iter()
            .enumerate()
            .map(|(id, c)| {
                let code = c.code();
                ClassEntry {
                    id,
                    status: match c.status {
                        ClassStatus::Generator => "generator",
                        ClassStatus::Zero { .. } => "zero",
                    }
                    .to_string(),
                    basis_index: self.basis.class_id(&code),
                    code,
                }
            })
            .collect();
        let dimension = self.dimension();
        let mut notes = Vec::new();
        if dimension > 0 {
            notes.push(format!(
                "A_{}^{} is nontrivial; the corresponding characteristic classes can be nonzero",
                self.basis.k,
                self.basis.convention.as_str()
            ));
        }
        DimensionReport {
            k: self.basis.k,
            convention: self.basis.convention,
            tadpoles: self.basis.policy,
            num_classes: self.basis.len(),
            num_rows: self.relations.num_rows(),
            rank: self.rank,
            dimension,
            classes,
            certificates: Vec::new(),
            modular_rank: Some(self.modular_rank),
            primes: self.primes.clone(),
            oracle: None,
            oracle_check: None,
            tadpole_comparison: None,
            notes,
        }
    }
}

/// Dimension report with default options.
pub fn dimension(k: usize, convention: Convention, policy: TadpolePolicy) -> Result<DimensionReport> {
    Ok(compute(k, convention, policy, &HomologyOptions::default())?.report())
}
