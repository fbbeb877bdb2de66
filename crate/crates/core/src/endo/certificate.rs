use serde::{Serialize, Serializer};

use super::{enumerate::scan_idempotents, radical_char0, EndoAlgebra, SearchConfig};
use crate::algebra::matrix::{rank_of, Vector};
use crate::algebra::{factor, is_irreducible, min_poly, Field, Matrix, Poly};
use crate::error::{Error, Result};
use crate::module::is_stable_under;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Indecomposable,
    Decomposable,
    Undecided,
}

fn display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Where a splitting idempotent came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SplitSource {
    /// Found directly by enumerating the algebra.
    Idempotent,
    /// `M = ker(e^power) ⊕ im(e^power)`.
    Fitting { element: Matrix, power: usize },
    /// Kernels of coprime factors of the minimal polynomial of `element`;
    /// the first summand is `ker factor(e)^multiplicity`.
    PrimaryComponents {
        element: Matrix,
        #[serde(serialize_with = "display")]
        min_poly: Poly,
        #[serde(serialize_with = "display")]
        factor: Poly,
        multiplicity: usize,
    },
}

/// A decomposition `M = S₀ ⊕ S₁` with the idempotent projecting onto `S₀`
/// along `S₁`. Summand vectors are in module coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitEvidence {
    pub source: SplitSource,
    pub idempotent: Matrix,
    pub summands: [Vec<Vector>; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum IndecomposableProof {
    /// `End(M)` is the scalars.
    DimensionOne,
    /// All `field_order^endo_dim` elements scanned; only 0 and 1 are idempotent.
    Exhaustive {
        field_order: u64,
        endo_dim: usize,
        elements_scanned: u64,
        idempotents: usize,
    },
    /// `End(M) = F[e]` with irreducible minimal polynomial, hence a field.
    FieldGenerated {
        element: Matrix,
        #[serde(serialize_with = "display")]
        min_poly: Poly,
    },
    /// `End(M) = F[e] ≅ F[t]/(f^k)` with `f` irreducible, a local ring.
    PrimaryGenerated {
        element: Matrix,
        #[serde(serialize_with = "display")]
        min_poly: Poly,
        #[serde(serialize_with = "display")]
        factor: Poly,
        multiplicity: usize,
    },
    /// The trace-form radical has codimension one, so `End(M)/J ≅ ℚ`.
    RadicalCodimensionOne { radical_dim: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrailOutcome {
    Skipped,
    Inconclusive,
    Split,
    Proved,
}

/// One strategy invocation in the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrailEntry {
    pub strategy: String,
    pub outcome: TrailOutcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Split(SplitEvidence),
    Proof(IndecomposableProof),
    /// Every configured strategy ran out of budget or did not apply.
    Exhausted { strategies: Vec<String> },
}

/// Verdict on (in)decomposability with checkable evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub field: Field,
    pub module_dim: usize,
    pub endo_dim: usize,
    pub evidence: Evidence,
    pub budgets: SearchConfig,
    pub trail: Vec<TrailEntry>,
}

impl Certificate {
    pub(crate) fn new(endo: &EndoAlgebra, evidence: Evidence, budgets: SearchConfig, trail: Vec<TrailEntry>) -> Self {
        let verdict = match evidence {
            Evidence::Split(_) => Verdict::Decomposable,
            Evidence::Proof(_) => Verdict::Indecomposable,
            Evidence::Exhausted { .. } => Verdict::Undecided,
        };
        Certificate {
            verdict,
            field: endo.field(),
            module_dim: endo.module_dim(),
            endo_dim: endo.dim(),
            evidence,
            budgets,
            trail,
        }
    }

    pub fn split(&self) -> Option<&SplitEvidence> {
        match &self.evidence {
            Evidence::Split(s) => Some(s),
            _ => None,
        }
    }

    pub fn proof(&self) -> Option<&IndecomposableProof> {
        match &self.evidence {
            Evidence::Proof(p) => Some(p),
            _ => None,
        }
    }

    /// Short name of the evidence: the proof mode, split source or `budgets-exhausted`.
    pub fn mode(&self) -> &'static str {
        match &self.evidence {
            Evidence::Split(s) => match s.source {
                SplitSource::Idempotent => "idempotent",
                SplitSource::Fitting { .. } => "fitting",
                SplitSource::PrimaryComponents { .. } => "primary-components",
            },
            Evidence::Proof(p) => match p {
                IndecomposableProof::DimensionOne => "dimension-one",
                IndecomposableProof::Exhaustive { .. } => "exhaustive",
                IndecomposableProof::FieldGenerated { .. } => "field-generated",
                IndecomposableProof::PrimaryGenerated { .. } => "primary-generated",
                IndecomposableProof::RadicalCodimensionOne { .. } => "radical-codimension-one",
            },
            Evidence::Exhausted { .. } => "budgets-exhausted",
        }
    }

    /// Re-checks the evidence against the restricted action it was computed for.
    pub fn verify(&self, action: &[Matrix]) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(format!("certificate check failed: {what}")));
        let m = self.module_dim;
        let endo = EndoAlgebra::commutant(self.field, m, action);
        if endo.dim() != self.endo_dim {
            return fail("endomorphism algebra dimension");
        }
        match &self.evidence {
            Evidence::Split(s) => verify_split(&endo, s),
            Evidence::Exhausted { .. } => Ok(()),
            Evidence::Proof(IndecomposableProof::DimensionOne) => {
                if endo.dim() == 1 {
                    Ok(())
                } else {
                    fail("dimension-one")
                }
            }
            Evidence::Proof(IndecomposableProof::Exhaustive {
                elements_scanned,
                idempotents,
                ..
            }) => {
                let (found, scanned) = scan_idempotents(&endo, *elements_scanned)?;
                if found.len() == 2 && *idempotents == 2 && scanned == *elements_scanned {
                    Ok(())
                } else {
                    fail("exhaustive idempotent count")
                }
            }
            Evidence::Proof(IndecomposableProof::FieldGenerated { element, min_poly: mp }) => {
                if endo.contains(element)
                    && &min_poly(element)? == mp
                    && mp.degree() == Some(endo.dim())
                    && is_irreducible(mp)?
                {
                    Ok(())
                } else {
                    fail("field-generated")
                }
            }
            Evidence::Proof(IndecomposableProof::PrimaryGenerated {
                element,
                min_poly: mp,
                factor: f,
                multiplicity,
            }) => {
                let fac = factor(mp)?;
                if endo.contains(element)
                    && &min_poly(element)? == mp
                    && mp.degree() == Some(endo.dim())
                    && fac.factors.len() == 1
                    && &fac.factors[0].0 == f
                    && fac.factors[0].1 == *multiplicity
                {
                    Ok(())
                } else {
                    fail("primary-generated")
                }
            }
            Evidence::Proof(IndecomposableProof::RadicalCodimensionOne { radical_dim }) => {
                if radical_char0(&endo)?.len() == *radical_dim && radical_dim + 1 == endo.dim() {
                    Ok(())
                } else {
                    fail("radical codimension")
                }
            }
        }
    }
}

fn verify_split(endo: &EndoAlgebra, s: &SplitEvidence) -> Result<()> {
    let fail = |what: &str| Err(Error::Invariant(format!("split check failed: {what}")));
    let (field, m) = (endo.field(), endo.module_dim());
    let e = &s.idempotent;
    if !endo.contains(e) || e.mul(e) != *e {
        return fail("idempotent");
    }
    let [a, b] = &s.summands;
    if a.is_empty() || b.is_empty() || a.len() + b.len() != m {
        return fail("summand dimensions");
    }
    let all: Vec<Vector> = a.iter().chain(b).cloned().collect();
    if rank_of(field, m, &all) != m {
        return fail("summands do not intersect trivially");
    }
    for piece in [a, b] {
        if !is_stable_under(field, m, endo.action(), piece) {
            return fail("summand not stable");
        }
    }
    if a.iter().any(|v| &e.mul_vec(v) != v) || b.iter().any(|v| !crate::algebra::matrix::is_zero_vector(&e.mul_vec(v))) {
        return fail("idempotent does not project onto the summands");
    }
    match &s.source {
        SplitSource::Idempotent => Ok(()),
        SplitSource::Fitting { element, .. } | SplitSource::PrimaryComponents { element, .. } => {
            if endo.contains(element) {
                Ok(())
            } else {
                fail("source element does not commute")
            }
        }
    }
}
