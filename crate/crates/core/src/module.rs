//! Cyclic modules `M = A·g` over a finitely generated algebra of operators.
//!
//! Vectors are columns and generators act on the left. A word `σ₂σ₁` means
//! "apply σ₂ to g, then σ₁ to the result", matching the child relation of the
//! covering tree.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::matrix::{canonical_basis, is_zero_vector, lex_cmp, SpanBuilder, Vector};
use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::orbit::{covering_tree, render_word, PrefixBasis, Word};

/// Ambient space `F^N` with a labeled list of `N×N` generator matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraAction {
    field: Field,
    ambient_dim: usize,
    labels: Vec<String>,
    generators: Vec<Matrix>,
}

impl AlgebraAction {
    pub fn new(field: Field, ambient_dim: usize, generators: Vec<(String, Matrix)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut labels = Vec::with_capacity(generators.len());
        let mut mats = Vec::with_capacity(generators.len());
        for (label, m) in generators {
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            if m.rows() != ambient_dim || m.cols() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: format!("generator {label} ({}x{})", m.rows(), m.cols()),
                    expected: ambient_dim,
                    found: if m.rows() != ambient_dim { m.rows() } else { m.cols() },
                });
            }
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: m.field().to_string(),
                });
            }
            labels.push(label);
            mats.push(m);
        }
        Ok(AlgebraAction {
            field,
            ambient_dim,
            labels,
            generators: mats,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn generator(&self, label: &str) -> Result<&Matrix> {
        self.label_index(label).map(|i| &self.generators[i])
    }

    /// Same action with generators listed in `order` (a permutation of indices).
    pub fn reordered(&self, order: &[usize]) -> Self {
        AlgebraAction {
            field: self.field,
            ambient_dim: self.ambient_dim,
            labels: order.iter().map(|&i| self.labels[i].clone()).collect(),
            generators: order.iter().map(|&i| self.generators[i].clone()).collect(),
        }
    }

    /// Image of `v` under the word `w`, letters applied leftmost first.
    pub fn apply_word(&self, w: &[usize], v: &[Scalar]) -> Vector {
        w.iter().fold(v.to_vec(), |acc, &a| self.generators[a].mul_vec(&acc))
    }

    fn check_vector(&self, v: &[Scalar], context: &str) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                context: context.to_string(),
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        if let Some(s) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: s.field().to_string(),
            });
        }
        Ok(())
    }
}

/// The cyclic module generated by one vector, with its prefix basis and the
/// action restricted to it.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    action: Arc<AlgebraAction>,
    generator: Vector,
    basis: PrefixBasis,
    restricted: Vec<Matrix>,
}

/// Builds `A·g` by the breadth-first covering tree from `g`.
pub fn orbit_basis(action: &Arc<AlgebraAction>, g: &[Scalar]) -> Result<CyclicModule> {
    action.check_vector(g, "generator vector")?;
    let basis = covering_tree(action.field, g, action.generators.len(), |v, a| {
        action.generators[a].mul_vec(v)
    });
    let restricted = restrict(action, &basis.vectors, |v| basis.coordinates(v))
        .expect("orbit span is stable under every generator");
    Ok(CyclicModule {
        action: Arc::clone(action),
        generator: g.to_vec(),
        basis,
        restricted,
    })
}

/// Matrices of the generators on a stable subspace; column `j` holds the
/// coordinates of `σ·b_j`. `None` if some image leaves the span.
fn restrict(
    action: &AlgebraAction,
    basis: &[Vector],
    coords: impl Fn(&[Scalar]) -> Option<Vector>,
) -> Option<Vec<Matrix>> {
    let m = basis.len();
    action
        .generators
        .iter()
        .map(|g| {
            let columns = basis
                .iter()
                .map(|b| coords(&g.mul_vec(b)))
                .collect::<Option<Vec<_>>>()?;
            Some(Matrix::from_columns(action.field, m, &columns))
        })
        .collect()
}

impl CyclicModule {
    pub fn action(&self) -> &Arc<AlgebraAction> {
        &self.action
    }

    pub fn field(&self) -> Field {
        self.action.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generator(&self) -> &[Scalar] {
        &self.generator
    }

    pub fn basis_words(&self) -> &[Word] {
        &self.basis.words
    }

    pub fn basis_vectors(&self) -> &[Vector] {
        &self.basis.vectors
    }

    pub fn prefix_basis(&self) -> &PrefixBasis {
        &self.basis
    }

    /// Restricted generator matrices, in the action's label order.
    pub fn restricted_action(&self) -> &[Matrix] {
        &self.restricted
    }

    pub fn restricted_matrix(&self, label: &str) -> Result<&Matrix> {
        self.action.label_index(label).map(|i| &self.restricted[i])
    }

    pub fn rendered_words(&self) -> Vec<String> {
        self.basis.render_words(&self.action.labels)
    }

    /// Coordinates of an ambient vector in the module basis, if it belongs to `M`.
    pub fn contains(&self, v: &[Scalar]) -> Result<Option<Vector>> {
        self.action.check_vector(v, "vector")?;
        Ok(self.basis.coordinates(v))
    }

    /// The cyclic submodule generated by `coords` (expressed in this module's
    /// basis); its ambient space is this module's coordinate space.
    pub fn submodule_generated(&self, coords: &[Scalar]) -> Result<CyclicModule> {
        let inner = Arc::new(self.coordinate_action());
        orbit_basis(&inner, coords)
    }

    /// The restricted action viewed as an algebra action on `F^dim`.
    pub fn coordinate_action(&self) -> AlgebraAction {
        AlgebraAction {
            field: self.action.field,
            ambient_dim: self.dim(),
            labels: self.action.labels.clone(),
            generators: self.restricted.clone(),
        }
    }

    /// Maps module coordinates back to the ambient space.
    pub fn to_ambient(&self, coords: &[Scalar]) -> Vector {
        combine(self.field(), self.action.ambient_dim, &self.basis.vectors, coords)
    }

    pub fn action_graph(&self, namer: &dyn Fn(&[Scalar]) -> String) -> ActionGraph {
        ActionGraph::build(&self.basis.vectors, &self.action.labels, &self.restricted, namer)
    }
}

/// `Σ coords_i · basis_i` in an ambient space of length `len`.
pub fn combine(field: Field, len: usize, basis: &[Vector], coords: &[Scalar]) -> Vector {
    let mut out = vec![field.zero(); len];
    for (b, c) in basis.iter().zip(coords) {
        crate::algebra::matrix::axpy(&mut out, c, b);
    }
    out
}

/// A stable subspace of the ambient space given by an explicit basis;
/// carries cyclic data when some basis vector generates it.
///
/// Direct summands of cyclic modules need not be cyclic, so decomposition
/// works with this type rather than [`CyclicModule`].
#[derive(Clone, Debug)]
pub struct ModuleSpace {
    action: Arc<AlgebraAction>,
    basis: Vec<Vector>,
    restricted: Vec<Matrix>,
    cyclic: Option<CyclicModule>,
}

impl ModuleSpace {
    /// Wraps a stable subspace; fails if the span is not stable or the
    /// vectors are dependent.
    pub fn from_basis(action: &Arc<AlgebraAction>, basis: Vec<Vector>) -> Result<Self> {
        let mut span = SpanBuilder::new(action.field, action.ambient_dim);
        for (i, b) in basis.iter().enumerate() {
            action.check_vector(b, "subspace basis vector")?;
            if !span.insert(b) {
                return Err(Error::InvalidInput(format!("basis vector {i} is dependent")));
            }
        }
        let restricted = restrict(action, &basis, |v| span.coordinates(v))
            .ok_or_else(|| Error::InvalidInput("subspace is not stable under the action".into()))?;
        Ok(ModuleSpace {
            action: Arc::clone(action),
            basis,
            restricted,
            cyclic: None,
        })
    }

    pub fn from_cyclic(m: &CyclicModule) -> Self {
        ModuleSpace {
            action: Arc::clone(&m.action),
            basis: m.basis.vectors.clone(),
            restricted: m.restricted.clone(),
            cyclic: Some(m.clone()),
        }
    }

    /// Looks for a generator among `candidates` (in order); returns the
    /// cyclic form for the first whose orbit spans the whole space.
    pub fn with_generator_search(action: &Arc<AlgebraAction>, candidates: &[Vector]) -> Result<Self> {
        let dim = candidates.len();
        for v in candidates {
            let c = orbit_basis(action, v)?;
            if c.dim() == dim {
                return Ok(ModuleSpace::from_cyclic(&c));
            }
        }
        ModuleSpace::from_basis(action, candidates.to_vec())
    }

    pub fn action(&self) -> &Arc<AlgebraAction> {
        &self.action
    }

    pub fn field(&self) -> Field {
        self.action.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn restricted_action(&self) -> &[Matrix] {
        &self.restricted
    }

    pub fn cyclic(&self) -> Option<&CyclicModule> {
        self.cyclic.as_ref()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic.is_some()
    }

    pub fn to_ambient(&self, coords: &[Scalar]) -> Vector {
        combine(self.field(), self.action.ambient_dim, &self.basis, coords)
    }

    /// Reduced echelon basis of the span, rows sorted ascending; equal for
    /// equal subspaces.
    pub fn canonical_basis(&self) -> Vec<Vector> {
        canonical_basis(self.field(), self.action.ambient_dim, &self.basis)
    }

    pub fn action_graph(&self, namer: &dyn Fn(&[Scalar]) -> String) -> ActionGraph {
        ActionGraph::build(&self.basis, &self.action.labels, &self.restricted, namer)
    }

    pub(crate) fn canonical_cmp(&self, other: &ModuleSpace) -> std::cmp::Ordering {
        self.dim().cmp(&other.dim()).then_with(|| {
            let (a, b) = (self.canonical_basis(), other.canonical_basis());
            for (x, y) in a.iter().zip(&b) {
                let o = lex_cmp(x, y);
                if o.is_ne() {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

/// Node of an [`ActionGraph`]: one basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub id: String,
    pub label: String,
}

/// `σ·b_from` has coefficient `coefficient` on `b_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub generator: String,
    pub coefficient: Scalar,
}

/// The restricted action drawn as a labeled multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionGraph {
    pub field: Field,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl ActionGraph {
    pub fn build(
        basis: &[Vector],
        labels: &[String],
        restricted: &[Matrix],
        namer: &dyn Fn(&[Scalar]) -> String,
    ) -> Self {
        let field = restricted.first().map(Matrix::field).or_else(|| basis.first().and_then(|b| b.first()).map(Scalar::field));
        let nodes = basis
            .iter()
            .enumerate()
            .map(|(i, b)| GraphNode {
                id: format!("n{i}"),
                label: namer(b),
            })
            .collect();
        let mut edges = Vec::new();
        for j in 0..basis.len() {
            for (label, m) in labels.iter().zip(restricted) {
                for i in 0..basis.len() {
                    let c = m.get(i, j);
                    if !c.is_zero() {
                        edges.push(GraphEdge {
                            from: j,
                            to: i,
                            generator: label.clone(),
                            coefficient: c.clone(),
                        });
                    }
                }
            }
        }
        ActionGraph {
            field: field.unwrap_or(Field::Rational),
            nodes,
            edges,
        }
    }

    /// Rebuilds the restricted matrices from the edges (one per label).
    pub fn to_matrices(&self, labels: &[String]) -> Vec<Matrix> {
        let n = self.nodes.len();
        labels
            .iter()
            .map(|l| {
                let mut m = Matrix::zeros(self.field, n, n);
                for e in self.edges.iter().filter(|e| &e.generator == l) {
                    m.set(e.to, e.from, e.coefficient.clone());
                }
                m
            })
            .collect()
    }

    /// Graphviz rendering: one digraph, edges labeled by generator name with
    /// the coefficient appended when it is not 1.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {} {{", dot_quote(name)).unwrap();
        for n in &self.nodes {
            writeln!(out, "  {} [label={}];", n.id, dot_quote(&n.label)).unwrap();
        }
        for e in &self.edges {
            let label = if e.coefficient.is_one() {
                e.generator.clone()
            } else {
                format!("{},{}", e.generator, e.coefficient)
            };
            writeln!(
                out,
                "  {} -> {} [label={}];",
                self.nodes[e.from].id,
                self.nodes[e.to].id,
                dot_quote(&label)
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Fallback node label: the coordinate tuple, e.g. `(1,0,-1/2)`.
pub fn coordinate_tuple(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Node labels as linear combinations of named ambient basis vectors.
pub fn named_sum(names: &[String]) -> impl Fn(&[Scalar]) -> String + '_ {
    move |v: &[Scalar]| {
        let mut out = String::new();
        for (c, name) in v.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let neg = c.as_rational().is_some_and(|q| q < &num_rational::BigRational::from_integer(0.into()));
            let term = if c.is_one() {
                name.clone()
            } else if neg && (-c).is_one() {
                format!("-{name}")
            } else {
                format!("{c}*{name}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

/// Words of a cyclic module rendered with the action's labels.
pub fn render_words(m: &CyclicModule) -> Vec<String> {
    m.basis_words().iter().map(|w| render_word(w, m.action().labels())).collect()
}

/// True if the subspace spanned by `basis` is stable under every generator.
pub fn is_stable(action: &AlgebraAction, basis: &[Vector]) -> bool {
    is_stable_under(action.field, action.ambient_dim, &action.generators, basis)
}

/// Stability of `span(basis) ⊆ F^len` under each matrix in `gens`.
pub fn is_stable_under(field: Field, len: usize, gens: &[Matrix], basis: &[Vector]) -> bool {
    let mut span = SpanBuilder::new(field, len);
    for b in basis {
        span.insert(b);
    }
    basis.iter().all(|b| gens.iter().all(|g| span.contains(&g.mul_vec(b))))
}

/// True if `v` is the zero vector.
pub fn is_zero(v: &[Scalar]) -> bool {
    is_zero_vector(v)
}
