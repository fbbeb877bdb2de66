//! Permutation modules over ℚ and left-translation (regular) actions.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::algebra::matrix::Vector;
use crate::algebra::{Field, Matrix, Scalar};
use crate::decompose::{complete_decomposition, DecompositionReport};
use crate::endo::SearchConfig;
use crate::error::{Error, Result};
use crate::module::{coordinate_tuple, orbit_basis, AlgebraAction, CyclicModule};

const Q: Field = Field::Rational;

/// Permutations of `{0..degree-1}` given as index arrays `i ↦ p[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationPresentation {
    degree: usize,
    labels: Vec<String>,
    generators: Vec<Vec<usize>>,
}

fn check_bijection(label: &str, degree: usize, p: &[usize]) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidInput(format!(
            "generator {label} has length {} but the degree is {degree}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for (i, &v) in p.iter().enumerate() {
        if v >= degree {
            return Err(Error::InvalidInput(format!(
                "generator {label} maps {i} to {v}, outside 0..{degree}"
            )));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidInput(format!(
                "generator {label} is not a bijection: {v} is hit twice"
            )));
        }
    }
    Ok(())
}

impl PermutationPresentation {
    pub fn new(degree: usize, generators: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let mut labels = Vec::new();
        let mut perms = Vec::new();
        let mut seen = HashSet::new();
        for (label, p) in generators {
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label));
            }
            check_bijection(&label, degree, &p)?;
            labels.push(label);
            perms.push(p);
        }
        Ok(PermutationPresentation {
            degree,
            labels,
            generators: perms,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Matrix sending `e_i` to `e_{p[i]}`.
    pub fn matrix(&self, index: usize) -> Matrix {
        let p = &self.generators[index];
        let mut m = Matrix::zeros(Q, self.degree, self.degree);
        for (i, &v) in p.iter().enumerate() {
            m.set(v, i, Q.one());
        }
        m
    }

    pub fn action(&self) -> AlgebraAction {
        let gens = (0..self.generators.len())
            .map(|k| (self.labels[k].clone(), self.matrix(k)))
            .collect();
        AlgebraAction::new(Q, self.degree, gens).expect("validated presentation")
    }
}

/// `ℚ[G]·g` inside the permutation module `ℚ^degree`.
pub fn permutation_module(p: &PermutationPresentation, g: &[Scalar]) -> Result<CyclicModule> {
    orbit_basis(&Arc::new(p.action()), g)
}

/// `(a∘b)(i) = a[b[i]]`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// The group acting on its own element list by left translation `x ↦ h∘x`,
/// one generator per entry of `generators` (indices into `elements`).
/// Generator `k` is labeled `g{k}`.
pub fn left_translation_action(elements: &[Vec<usize>], generators: &[usize]) -> Result<PermutationPresentation> {
    let index: HashMap<&[usize], usize> = elements.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    if index.len() != elements.len() {
        return Err(Error::InvalidInput("group element list has duplicates".into()));
    }
    let degree = elements.first().map_or(0, Vec::len);
    for (i, e) in elements.iter().enumerate() {
        check_bijection(&format!("element {i}"), degree, e)?;
    }
    let mut gens = Vec::new();
    for (k, &h) in generators.iter().enumerate() {
        let hp = elements
            .get(h)
            .ok_or_else(|| Error::InvalidInput(format!("generator index {h} is out of range")))?;
        let mut perm = Vec::with_capacity(elements.len());
        for (i, x) in elements.iter().enumerate() {
            let y = compose(hp, x);
            match index.get(y.as_slice()) {
                Some(&j) => perm.push(j),
                None => {
                    return Err(Error::ClosureViolation(format!(
                        "element {h} {hp:?} composed with element {i} {x:?} gives {y:?}, which is not in the list"
                    )))
                }
            }
        }
        gens.push((format!("g{k}"), perm));
    }
    PermutationPresentation::new(elements.len(), gens)
}

/// All products of the generators, sorted lexicographically (identity
/// first). Fails when more than `cap` elements appear.
pub fn group_closure(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Vec<Vec<usize>>> {
    for (i, g) in generators.iter().enumerate() {
        check_bijection(&format!("generator {i}"), degree, g)?;
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::BudgetExceeded {
                        needed: format!("more than {cap} group elements"),
                        cap: cap as u64,
                    });
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Regular module of the group generated by `p`: left translation on the
/// group closure, generated by the identity element.
pub fn regular_module(p: &PermutationPresentation, cap: usize) -> Result<(PermutationPresentation, CyclicModule)> {
    let elements = group_closure(p.degree, &p.generators, cap)?;
    let idx: Vec<usize> = p
        .generators
        .iter()
        .map(|g| elements.iter().position(|e| e == g).expect("generator lies in its closure"))
        .collect();
    let mut reg = left_translation_action(&elements, &idx)?;
    reg.labels = p.labels.clone();
    let mut g: Vector = vec![Q.zero(); elements.len()];
    g[0] = Q.one();
    let m = permutation_module(&reg, &g)?;
    Ok((reg, m))
}

/// Decomposes `ℚ[G]·g`, naming vectors by coordinate tuples.
pub fn decompose_permutation(p: &PermutationPresentation, g: &[Scalar], config: &SearchConfig) -> Result<DecompositionReport> {
    complete_decomposition(&permutation_module(p, g)?, config, &coordinate_tuple)
}
