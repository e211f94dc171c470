//! Zero and nonzero certificates with exact replay.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{express, Expressed, HomologyComputation, HomologyOptions, ZeroReason};
use crate::error::{Error, Result};
use crate::exactla::{solve_combination, Echelon};
use crate::multigraph::{DartGraph, Isomorphism, TadpolePolicy};
use crate::orientation::{automorphism_sign, classify, ClassStatus, Convention, EdgeDirections, LabelledGraph, OrientedLabelling};
use crate::perm::Sign;

/// Exact rational, serialized as `[numerator, denominator]`. Components that
/// do not fit in an `i64` are written as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frac(pub BigRational);

impl Frac {
    pub fn from_int(n: i64) -> Self {
        Frac(BigRational::from_integer(n.into()))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BigNum {
    Int(i64),
    Str(String),
}

impl BigNum {
    fn of(v: &BigInt) -> Self {
        v.to_i64().map_or_else(|| BigNum::Str(v.to_string()), BigNum::Int)
    }

    fn value<E: serde::de::Error>(&self) -> std::result::Result<BigInt, E> {
        match self {
            BigNum::Int(i) => Ok((*i).into()),
            BigNum::Str(s) => s.parse().map_err(E::custom),
        }
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (BigNum::of(self.0.numer()), BigNum::of(self.0.denom())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (n, m) = <(BigNum, BigNum)>::deserialize(d)?;
        let den = m.value::<D::Error>()?;
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Frac(BigRational::new(n.value::<D::Error>()?, den)))
    }
}

/// A row of the relation matrix with a rational weight; `[row_id, num, den]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCoeff {
    pub row: usize,
    pub coeff: Frac,
}

impl Serialize for RowCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.row, BigNum::of(self.coeff.0.numer()), BigNum::of(self.coeff.0.denom())).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RowCoeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (row, n, m) = <(usize, BigNum, BigNum)>::deserialize(d)?;
        let den = m.value::<D::Error>()?;
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RowCoeff { row, coeff: Frac(BigRational::new(n.value::<D::Error>()?, den)) })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Target {
    /// An enumerated class, by its position in the census.
    Class { id: usize, code: String },
    /// An arbitrary labelled graph.
    Labelled { num_vertices: usize, pairing: Vec<usize>, labelling: OrientedLabelling },
}

impl Target {
    pub fn labelled(lg: &LabelledGraph) -> Self {
        Target::Labelled {
            num_vertices: lg.graph.num_vertices(),
            pairing: lg.graph.pairing().to_vec(),
            labelling: lg.labelling.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum ZeroEvidence {
    /// An automorphism of the canonical representative with total sign `-1`,
    /// so the class equals its own negative.
    SignWitness { class_code: String, vertex_perm: Vec<usize>, dart_perm: Vec<usize> },
    /// The graph is not in the span at all (tadpole under exclusion, or
    /// disconnected).
    Excluded { reason: ZeroReason },
    /// `vector` (the target over the basis) equals this combination of rows.
    Combination { vector: Vec<(usize, i64)>, rows: Vec<RowCoeff> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    Zero { target: Target, evidence: ZeroEvidence },
    /// `functional` vanishes on every row and takes `value != 0` on `vector`.
    Nonzero { target: Target, vector: Vec<(usize, i64)>, functional: Vec<Frac>, value: Frac },
}

impl Certificate {
    pub fn is_zero(&self) -> bool {
        matches!(self, Certificate::Zero { .. })
    }
}

enum Resolved {
    Witness(String, Isomorphism),
    Excluded(ZeroReason),
    Vector(Vec<(usize, i64)>),
}

fn graph_from_code(code: &str) -> Result<DartGraph> {
    let pairing: Vec<usize> = code
        .split(',')
        .map(|t| t.parse().map_err(|_| Error::InvalidArgument(format!("bad canonical code {code:?}"))))
        .collect::<Result<_>>()?;
    DartGraph::from_involution(pairing.len() / 3, pairing)
}

fn witness_of(g: &DartGraph, convention: Convention) -> Option<(String, Isomorphism)> {
    let c = classify(g, convention);
    match c.status {
        ClassStatus::Zero { witness } => Some((c.rep.code(), witness)),
        ClassStatus::Generator => None,
    }
}

impl HomologyComputation {
    fn resolve(&self, target: &Target) -> Result<Resolved> {
        let basis = &self.basis;
        match target {
            Target::Class { id, code } => {
                let c = basis
                    .census
                    .get(*id)
                    .filter(|c| &c.code() == code)
                    .ok_or_else(|| Error::InvalidArgument(format!("no class {id} with code {code}")))?;
                Ok(match &c.status {
                    ClassStatus::Zero { witness } => Resolved::Witness(c.code(), witness.clone()),
                    ClassStatus::Generator => {
                        Resolved::Vector(vec![(basis.class_id(code).expect("generator is indexed"), 1)])
                    }
                })
            }
            Target::Labelled { num_vertices, pairing, labelling } => {
                let graph = DartGraph::from_involution_unchecked_connectivity(*num_vertices, pairing.clone())?;
                let lg = LabelledGraph { graph, labelling: labelling.clone() };
                Ok(match express(&lg, basis)? {
                    Expressed::Zero { reason: ZeroReason::ZeroClass } => {
                        let (code, w) = witness_of(&lg.graph, basis.convention).expect("zero class has a witness");
                        Resolved::Witness(code, w)
                    }
                    Expressed::Zero { reason } => Resolved::Excluded(reason),
                    Expressed::Class { class_id, sign } => Resolved::Vector(vec![(class_id, sign.to_i64())]),
                })
            }
        }
    }

    /// Proves the target zero or nonzero in the quotient; the result is
    /// replayed with [`Self::verify`] before it is returned.
    pub fn certify(&self, target: &Target) -> Result<Certificate> {
        let cert = match self.resolve(target)? {
            Resolved::Witness(class_code, w) => Certificate::Zero {
                target: target.clone(),
                evidence: ZeroEvidence::SignWitness { class_code, vertex_perm: w.vertex_perm, dart_perm: w.dart_perm },
            },
            Resolved::Excluded(reason) => {
                Certificate::Zero { target: target.clone(), evidence: ZeroEvidence::Excluded { reason } }
            }
            Resolved::Vector(vector) => {
                let t: Vec<(usize, BigInt)> = vector.iter().map(|&(c, v)| (c, v.into())).collect();
                match solve_combination(&self.matrix, &t) {
                    Ok(coeffs) => Certificate::Zero {
                        target: target.clone(),
                        evidence: ZeroEvidence::Combination {
                            vector,
                            rows: coeffs
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(row, c)| RowCoeff { row, coeff: Frac(c) })
                                .collect(),
                        },
                    },
                    Err(Error::NoSolution) => {
                        let f = Echelon::new(&self.matrix)
                            .nullspace()
                            .into_iter()
                            .find(|f| !dot(f, &vector).is_zero())
                            .expect("a vector outside the row span has a separating functional");
                        let value = Frac(dot(&f, &vector));
                        Certificate::Nonzero {
                            target: target.clone(),
                            vector,
                            functional: f.into_iter().map(Frac).collect(),
                            value,
                        }
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        assert!(self.verify(&cert), "certificate failed its own replay");
        Ok(cert)
    }

    /// One certificate per enumerated class, in census order.
    pub fn certify_all(&self) -> Result<Vec<Certificate>> {
        self.basis
            .census
            .iter()
            .enumerate()
            .map(|(id, c)| self.certify(&Target::Class { id, code: c.code() }))
            .collect()
    }

    /// Exact replay of a certificate against this computation.
    pub fn verify(&self, cert: &Certificate) -> bool {
        let target = match cert {
            Certificate::Zero { target, .. } | Certificate::Nonzero { target, .. } => target,
        };
        let Ok(resolved) = self.resolve(target) else { return false };
        match (cert, resolved) {
            (
                Certificate::Zero { evidence: ZeroEvidence::SignWitness { class_code, vertex_perm, dart_perm }, .. },
                Resolved::Witness(code, _),
            ) => {
                let Ok(rep) = graph_from_code(class_code) else { return false };
                let iso = Isomorphism { vertex_perm: vertex_perm.clone(), dart_perm: dart_perm.clone() };
                *class_code == code
                    && iso.is_block_compatible()
                    && iso.is_automorphism_of(&rep)
                    && automorphism_sign(self.basis.convention, &rep, &EdgeDirections::reference(&rep), &iso)
                        == Sign::Minus
            }
            (Certificate::Zero { evidence: ZeroEvidence::Excluded { reason }, .. }, Resolved::Excluded(r)) => {
                *reason == r && (r != ZeroReason::Tadpole || self.basis.policy == TadpolePolicy::Exclude)
            }
            (Certificate::Zero { evidence: ZeroEvidence::Combination { vector, rows }, .. }, Resolved::Vector(v)) => {
                if *vector != v {
                    return false;
                }
                let mut acc = vec![BigRational::zero(); self.basis.len()];
                for rc in rows {
                    let Some(row) = self.relations.rows.get(rc.row) else { return false };
                    for &(c, x) in &row.coeffs {
                        acc[c] += &rc.coeff.0 * BigRational::from_integer(x.into());
                    }
                }
                let mut want = vec![BigRational::zero(); self.basis.len()];
                for &(c, x) in &v {
                    want[c] += BigRational::from_integer(x.into());
                }
                acc == want
            }
            (Certificate::Nonzero { vector, functional, value, .. }, Resolved::Vector(v)) => {
                let f: Vec<BigRational> = functional.iter().map(|x| x.0.clone()).collect();
                f.len() == self.basis.len()
                    && *vector == v
                    && self.relations.rows.iter().all(|r| dot(&f, &r.coeffs).is_zero())
                    && dot(&f, &v) == value.0
                    && !value.0.is_zero()
            }
            _ => false,
        }
    }
}

fn dot(f: &[BigRational], v: &[(usize, i64)]) -> BigRational {
    v.iter().map(|&(c, x)| &f[c] * BigRational::from_integer(x.into())).sum()
}

/// Computes the quotient and certifies a single target.
pub fn certify(target: &Target, k: usize, convention: Convention, policy: TadpolePolicy) -> Result<Certificate> {
    super::compute(k, convention, policy, &HomologyOptions::default())?.certify(target)
}
