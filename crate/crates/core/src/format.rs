//! JSON file formats for automata, module actions and permutation
//! presentations.
//!
//! Scalars are written as strings (`"3"`, `"-7/2"`); integers are accepted on
//! input. Matrices are row-major grids. Validation errors name the offending
//! field path, e.g. `mu.b[1]`.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::Vector;
use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::module::AlgebraAction;
use crate::perm::PermutationPresentation;
use crate::wfa::WeightedAutomaton;

#[derive(Deserialize, Serialize, Clone, Debug)]
#[serde(untagged)]
enum RawScalar {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAutomaton {
    field: String,
    alphabet: Vec<String>,
    dim: usize,
    lambda: Vec<RawScalar>,
    mu: IndexMap<String, Vec<Vec<RawScalar>>>,
    gamma: Vec<RawScalar>,
}

#[derive(Serialize)]
struct AutomatonOut<'a> {
    field: Field,
    alphabet: &'a [String],
    dim: usize,
    lambda: &'a [Scalar],
    mu: IndexMap<&'a str, &'a Matrix>,
    gamma: &'a [Scalar],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    field: String,
    dim: usize,
    generators: IndexMap<String, Vec<Vec<RawScalar>>>,
    #[serde(default)]
    generator: Option<Vec<RawScalar>>,
}

#[derive(Serialize)]
struct ModuleOut<'a> {
    field: Field,
    dim: usize,
    generators: IndexMap<&'a str, &'a Matrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generator: Option<&'a [Scalar]>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    degree: usize,
    generators: IndexMap<String, Vec<usize>>,
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Parse {
        position: e.column(),
        message: format!("line {}, column {}: {e}", e.line(), e.column()),
    }
}

fn at(path: &str, e: Error) -> Error {
    Error::InvalidInput(format!("{path}: {e}"))
}

fn scalar(field: Field, raw: &RawScalar, path: &str) -> Result<Scalar> {
    match raw {
        RawScalar::Int(n) => Ok(field.from_i64(*n)),
        RawScalar::Text(t) => field.parse_scalar(t).map_err(|e| at(path, e)),
    }
}

fn vector(field: Field, raw: &[RawScalar], len: usize, path: &str) -> Result<Vector> {
    if raw.len() != len {
        return Err(Error::InvalidInput(format!(
            "{path}: expected {len} entries, found {}",
            raw.len()
        )));
    }
    raw.iter()
        .enumerate()
        .map(|(i, r)| scalar(field, r, &format!("{path}[{i}]")))
        .collect()
}

fn square(field: Field, raw: &[Vec<RawScalar>], n: usize, path: &str) -> Result<Matrix> {
    if raw.len() != n {
        return Err(Error::InvalidInput(format!("{path}: expected {n} rows, found {}", raw.len())));
    }
    let rows = raw
        .iter()
        .enumerate()
        .map(|(i, r)| vector(field, r, n, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, n, rows)
}

fn field(text: &str) -> Result<Field> {
    text.parse::<Field>().map_err(|e| at("field", e))
}

pub fn parse_automaton(text: &str) -> Result<WeightedAutomaton> {
    let raw: RawAutomaton = serde_json::from_str(text).map_err(syntax)?;
    let f = field(&raw.field)?;
    let n = raw.dim;
    let lambda = vector(f, &raw.lambda, n, "lambda")?;
    let gamma = vector(f, &raw.gamma, n, "gamma")?;
    for key in raw.mu.keys() {
        if !raw.alphabet.contains(key) {
            return Err(Error::InvalidInput(format!("mu.{key}: letter is not in the alphabet")));
        }
    }
    let mu = raw
        .alphabet
        .iter()
        .map(|a| {
            let m = raw
                .mu
                .get(a)
                .ok_or_else(|| Error::InvalidInput(format!("mu.{a}: missing matrix for letter")))?;
            square(f, m, n, &format!("mu.{a}"))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedAutomaton::new(f, raw.alphabet, lambda, mu, gamma)
}

pub fn automaton_to_json(a: &WeightedAutomaton) -> String {
    let out = AutomatonOut {
        field: a.field(),
        alphabet: a.alphabet(),
        dim: a.dim(),
        lambda: a.lambda(),
        mu: a.alphabet().iter().map(String::as_str).zip(a.mu()).collect(),
        gamma: a.gamma(),
    };
    serde_json::to_string_pretty(&out).expect("automata serialize") + "\n"
}

/// An action file, with its optional generator vector.
pub fn parse_module(text: &str) -> Result<(AlgebraAction, Option<Vector>)> {
    let raw: RawModule = serde_json::from_str(text).map_err(syntax)?;
    let f = field(&raw.field)?;
    let n = raw.dim;
    let gens = raw
        .generators
        .iter()
        .map(|(label, m)| Ok((label.clone(), square(f, m, n, &format!("generators.{label}"))?)))
        .collect::<Result<Vec<_>>>()?;
    let action = AlgebraAction::new(f, n, gens)?;
    let g = raw.generator.as_deref().map(|g| vector(f, g, n, "generator")).transpose()?;
    Ok((action, g))
}

pub fn module_to_json(action: &AlgebraAction, generator: Option<&[Scalar]>) -> String {
    let out = ModuleOut {
        field: action.field(),
        dim: action.ambient_dim(),
        generators: action.labels().iter().map(String::as_str).zip(action.generators()).collect(),
        generator,
    };
    serde_json::to_string_pretty(&out).expect("actions serialize") + "\n"
}

pub fn parse_presentation(text: &str) -> Result<PermutationPresentation> {
    let raw: RawPresentation = serde_json::from_str(text).map_err(syntax)?;
    PermutationPresentation::new(raw.degree, raw.generators.into_iter().collect())
}

pub fn presentation_to_json(p: &PermutationPresentation) -> String {
    let raw = RawPresentation {
        degree: p.degree(),
        generators: p.labels().iter().cloned().zip(p.generators().iter().cloned()).collect(),
    };
    serde_json::to_string_pretty(&raw).expect("presentations serialize") + "\n"
}

/// A comma-separated vector such as `1,0,-1/2`.
pub fn parse_vector(field: Field, text: &str) -> Result<Vector> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, t)| {
            field
                .parse_scalar(t.trim().trim_matches('"'))
                .map_err(|e| at(&format!("vector[{i}]"), e))
        })
        .collect()
}
