//! Complete decompositions into certified summands.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::matrix::{rank_of, SpanBuilder, Vector};
use crate::algebra::Field;
use crate::endo::{compute_end_space, find_splitting_element, Certificate, SearchConfig, Verdict};
use crate::error::{Error, Result};
use crate::module::{is_stable, ActionGraph, AlgebraAction, CyclicModule, ModuleSpace};

pub use crate::endo::enumerate_idempotents;

/// Names a vector of the ambient space (monomials, coordinate tuples, ...).
pub type Namer<'a> = &'a dyn Fn(&[crate::algebra::Scalar]) -> String;

/// Outcome of one splitting attempt.
#[derive(Clone, Debug)]
pub enum Step {
    Leaf(Certificate),
    Split(Certificate, Box<[ModuleSpace; 2]>),
}

/// Certifies `m` or splits it in two. Summands come back with a canonical
/// basis, as cyclic modules when one of those basis vectors generates them.
pub fn decompose_once(m: &ModuleSpace, config: &SearchConfig) -> Result<Step> {
    if m.dim() == 0 {
        return Err(Error::EmptyModule);
    }
    let endo = compute_end_space(m);
    let cert = find_splitting_element(&endo, config)?;
    let Some(split) = cert.split() else {
        return Ok(Step::Leaf(cert));
    };
    let parts = split.summands.clone().map(|coords| {
        let ambient: Vec<Vector> = coords.iter().map(|c| m.to_ambient(c)).collect();
        let canon = crate::algebra::matrix::canonical_basis(m.field(), m.action().ambient_dim(), &ambient);
        ModuleSpace::with_generator_search(m.action(), &canon)
    });
    let [a, b] = parts;
    Ok(Step::Split(cert, Box::new([a?, b?])))
}

/// One indecomposable (or undecided) summand of a report.
#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub dim: usize,
    pub cyclic: bool,
    pub generator: Option<Vector>,
    pub generator_name: Option<String>,
    /// Orbit words of the basis, for cyclic summands.
    pub words: Option<Vec<String>>,
    pub basis: Vec<Vector>,
    pub basis_names: Vec<String>,
    pub certificate: Certificate,
    pub graph: ActionGraph,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDescription {
    pub dim: usize,
    pub generator: Option<Vector>,
    pub generator_name: Option<String>,
    pub words: Option<Vec<String>>,
    pub basis: Vec<Vector>,
    pub basis_names: Vec<String>,
    pub graph: ActionGraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// Every summand is certified indecomposable.
    Complete,
    /// Some summands are undecided; they may split further.
    Partial,
}

/// A complete maximal decomposition with per-summand certificates.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub field: Field,
    pub ambient_dim: usize,
    pub labels: Vec<String>,
    pub root: RootDescription,
    pub summands: Vec<SummandReport>,
    pub signature: Vec<usize>,
    pub status: Completeness,
    pub undecided: usize,
    pub non_cyclic: usize,
    pub config: SearchConfig,
}

impl DecompositionReport {
    pub fn signature(&self) -> &[usize] {
        &self.signature
    }

    pub fn is_complete(&self) -> bool {
        self.status == Completeness::Complete
    }

    /// One-line summary: signature plus completeness.
    pub fn summary(&self) -> String {
        let sig: Vec<String> = self.signature.iter().map(ToString::to_string).collect();
        let mut s = format!("signature {{{}}}", sig.join(", "));
        match self.status {
            Completeness::Complete => s.push_str(", complete"),
            Completeness::Partial => s.push_str(&format!(", partial: {} undecided summand(s)", self.undecided)),
        }
        s
    }
}

/// Sorted summand dimensions.
pub fn signature(report: &DecompositionReport) -> Vec<usize> {
    report.signature.clone()
}

pub fn complete_decomposition(m: &CyclicModule, config: &SearchConfig, namer: Namer<'_>) -> Result<DecompositionReport> {
    complete_decomposition_space(&ModuleSpace::from_cyclic(m), config, namer)
}

/// Splits recursively until every leaf is certified or undecided, then
/// re-verifies the direct sum and every leaf certificate.
pub fn complete_decomposition_space(
    m: &ModuleSpace,
    config: &SearchConfig,
    namer: Namer<'_>,
) -> Result<DecompositionReport> {
    config.validate()?;
    let mut leaves: Vec<(ModuleSpace, Certificate)> = Vec::new();
    let mut stack = vec![m.clone()];
    while let Some(s) = stack.pop() {
        if s.dim() == 0 {
            continue;
        }
        match decompose_once(&s, config)? {
            Step::Leaf(c) => leaves.push((s, c)),
            Step::Split(_, parts) => {
                let [a, b] = *parts;
                stack.push(b);
                stack.push(a);
            }
        }
    }
    leaves.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
    verify_direct_sum(m, &leaves)?;
    let summands: Vec<SummandReport> = leaves.into_iter().map(|(s, c)| summand_report(&s, c, namer)).collect();
    let mut signature: Vec<usize> = summands.iter().map(|s| s.dim).collect();
    signature.sort_unstable();
    let undecided = summands.iter().filter(|s| s.certificate.verdict == Verdict::Undecided).count();
    let action = m.action();
    Ok(DecompositionReport {
        field: m.field(),
        ambient_dim: action.ambient_dim(),
        labels: action.labels().to_vec(),
        root: root_description(m, namer),
        non_cyclic: summands.iter().filter(|s| !s.cyclic).count(),
        summands,
        signature,
        status: if undecided == 0 { Completeness::Complete } else { Completeness::Partial },
        undecided,
        config: config.clone(),
    })
}

fn generator_data(s: &ModuleSpace, namer: Namer<'_>) -> (Option<Vector>, Option<String>, Option<Vec<String>>) {
    match s.cyclic() {
        Some(c) => (
            Some(c.generator().to_vec()),
            Some(namer(c.generator())),
            Some(c.rendered_words()),
        ),
        None => (None, None, None),
    }
}

fn root_description(m: &ModuleSpace, namer: Namer<'_>) -> RootDescription {
    let (generator, generator_name, words) = generator_data(m, namer);
    RootDescription {
        dim: m.dim(),
        generator,
        generator_name,
        words,
        basis: m.basis().to_vec(),
        basis_names: m.basis().iter().map(|v| namer(v)).collect(),
        graph: m.action_graph(namer),
    }
}

fn summand_report(s: &ModuleSpace, certificate: Certificate, namer: Namer<'_>) -> SummandReport {
    let (generator, generator_name, words) = generator_data(s, namer);
    SummandReport {
        dim: s.dim(),
        cyclic: s.is_cyclic(),
        generator,
        generator_name,
        words,
        basis: s.basis().to_vec(),
        basis_names: s.basis().iter().map(|v| namer(v)).collect(),
        certificate,
        graph: s.action_graph(namer),
    }
}

fn verify_direct_sum(m: &ModuleSpace, leaves: &[(ModuleSpace, Certificate)]) -> Result<()> {
    let fail = |what: String| Err(Error::Invariant(format!("decomposition check failed: {what}")));
    let action: &Arc<AlgebraAction> = m.action();
    let n = action.ambient_dim();
    let mut root = SpanBuilder::new(m.field(), n);
    for b in m.basis() {
        root.insert(b);
    }
    let mut all = Vec::new();
    for (i, (s, cert)) in leaves.iter().enumerate() {
        if cert.verdict == Verdict::Decomposable {
            return fail(format!("summand {i} is decomposable"));
        }
        if !is_stable(action, s.basis()) {
            return fail(format!("summand {i} is not stable"));
        }
        if !s.basis().iter().all(|v| root.contains(v)) {
            return fail(format!("summand {i} leaves the module"));
        }
        cert.verify(s.restricted_action())?;
        all.extend(s.basis().iter().cloned());
    }
    if all.len() != m.dim() || rank_of(m.field(), n, &all) != m.dim() {
        return fail("summands do not form a direct sum of the module".into());
    }
    Ok(())
}
