//! Weighted finite automata `(λ, μ, γ)` over a field: evaluation,
//! left/right reduction by the prefix-basis construction, minimization and
//! equivalence.
//!
//! The series realized by an automaton assigns to a word `w = a₁…a_k` the
//! weight `λ·μ(a₁)⋯μ(a_k)·γ`. Left reduction keeps only the span of the row
//! orbit `λμ(Σ*)`, right reduction the span of the column orbit `μ(Σ*)γ`;
//! doing both yields a representation of minimal dimension.

use std::collections::HashSet;

use crate::algebra::matrix::{dot, zero_vector, Vector};
use crate::algebra::{Field, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::orbit::{covering_tree, PrefixBasis, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedAutomaton {
    field: Field,
    alphabet: Vec<String>,
    dim: usize,
    lambda: Vector,
    mu: Vec<Matrix>,
    gamma: Vector,
}

impl WeightedAutomaton {
    /// Validates and builds an automaton; `mu[i]` is the matrix of `alphabet[i]`.
    pub fn new(
        field: Field,
        alphabet: Vec<String>,
        lambda: Vector,
        mu: Vec<Matrix>,
        gamma: Vector,
    ) -> Result<Self> {
        let dim = lambda.len();
        let mut seen = HashSet::new();
        for a in &alphabet {
            if !seen.insert(a) {
                return Err(Error::DuplicateLabel(a.clone()));
            }
        }
        if mu.len() != alphabet.len() {
            return Err(Error::DimensionMismatch {
                context: "number of letter matrices".into(),
                expected: alphabet.len(),
                found: mu.len(),
            });
        }
        if gamma.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "gamma length".into(),
                expected: dim,
                found: gamma.len(),
            });
        }
        for (a, m) in alphabet.iter().zip(&mu) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    context: format!("mu[{a}] shape ({}x{})", m.rows(), m.cols()),
                    expected: dim,
                    found: if m.rows() != dim { m.rows() } else { m.cols() },
                });
            }
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: m.field().to_string(),
                });
            }
        }
        for s in lambda.iter().chain(&gamma) {
            if s.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: s.field().to_string(),
                });
            }
        }
        Ok(WeightedAutomaton {
            field,
            alphabet,
            dim,
            lambda,
            mu,
            gamma,
        })
    }

    /// The canonical zero-dimensional automaton over an alphabet.
    pub fn zero(field: Field, alphabet: Vec<String>) -> Self {
        let mu = alphabet.iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        WeightedAutomaton {
            field,
            alphabet,
            dim: 0,
            lambda: Vec::new(),
            mu,
            gamma: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn gamma(&self) -> &[Scalar] {
        &self.gamma
    }

    pub fn mu(&self) -> &[Matrix] {
        &self.mu
    }

    pub fn letter_matrix(&self, letter: &str) -> Result<&Matrix> {
        self.letter_index(letter).map(|i| &self.mu[i])
    }

    pub fn letter_index(&self, letter: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|a| a == letter)
            .ok_or_else(|| Error::UnknownLabel(letter.to_string()))
    }

    /// Parses a word given as letter labels.
    pub fn word<S: AsRef<str>>(&self, letters: &[S]) -> Result<Word> {
        letters.iter().map(|l| self.letter_index(l.as_ref())).collect()
    }

    /// Parses a word of single-character letters, e.g. `"aaba"`.
    pub fn word_from_chars(&self, text: &str) -> Result<Word> {
        text.chars().map(|c| self.letter_index(&c.to_string())).collect()
    }

    /// `λ·μ(w)·γ`.
    pub fn weight(&self, w: &[usize]) -> Scalar {
        dot(&self.row_state(w), &self.gamma).unwrap_or_else(|| self.field.zero())
    }

    /// Row vector `λ·μ(w)`.
    pub fn row_state(&self, w: &[usize]) -> Vector {
        w.iter().fold(self.lambda.clone(), |v, &a| self.mu[a].vec_mul(&v))
    }

    /// `(γᵀ, μᵀ, λᵀ)`: realizes the mirror-image series.
    pub fn transpose(&self) -> Self {
        WeightedAutomaton {
            field: self.field,
            alphabet: self.alphabet.clone(),
            dim: self.dim,
            lambda: self.gamma.clone(),
            mu: self.mu.iter().map(Matrix::transpose).collect(),
            gamma: self.lambda.clone(),
        }
    }

    /// Block-diagonal sum realizing `s_a + s_b`.
    pub fn direct_sum(&self, other: &WeightedAutomaton) -> Result<Self> {
        self.check_compatible(other)?;
        let (n1, n2) = (self.dim, other.dim);
        let n = n1 + n2;
        let mu = self
            .mu
            .iter()
            .zip(&other.mu)
            .map(|(a, b)| {
                Matrix::from_fn(self.field, n, n, |i, j| match (i < n1, j < n1) {
                    (true, true) => a.get(i, j).clone(),
                    (false, false) => b.get(i - n1, j - n1).clone(),
                    _ => self.field.zero(),
                })
            })
            .collect();
        let lambda = self.lambda.iter().chain(&other.lambda).cloned().collect();
        let gamma = self.gamma.iter().chain(&other.gamma).cloned().collect();
        WeightedAutomaton::new(self.field, self.alphabet.clone(), lambda, mu, gamma)
    }

    /// Automaton realizing `c · s_a` (initial vector scaled).
    pub fn scaled(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        out.lambda = self.lambda.iter().map(|x| x * c).collect();
        out
    }

    fn check_compatible(&self, other: &WeightedAutomaton) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: other.field.to_string(),
            });
        }
        if self.alphabet != other.alphabet {
            return Err(Error::InvalidInput(format!(
                "alphabet mismatch: {:?} vs {:?}",
                self.alphabet, other.alphabet
            )));
        }
        Ok(())
    }
}

/// Restricts to the span of the row orbit `λμ(Σ*)`.
///
/// The returned basis is the prefix set `P` found breadth-first; in the
/// reduced automaton `λ' = (1, 0, …, 0)`, `μ'(a)` is right multiplication by
/// `μ(a)` in basis coordinates and `γ'_i = ⟨λμ(P_i), γ⟩`.
pub fn left_reduce(a: &WeightedAutomaton) -> (WeightedAutomaton, PrefixBasis) {
    let basis = covering_tree(a.field, &a.lambda, a.alphabet.len(), |v, l| a.mu[l].vec_mul(v));
    let k = basis.len();
    if k == 0 {
        return (WeightedAutomaton::zero(a.field, a.alphabet.clone()), basis);
    }
    let mu = a
        .mu
        .iter()
        .map(|m| {
            let rows = basis
                .vectors
                .iter()
                .map(|b| {
                    basis
                        .coordinates(&m.vec_mul(b))
                        .expect("row orbit span is stable under every letter")
                })
                .collect();
            Matrix::from_rows(a.field, k, rows).expect("k coordinates per row")
        })
        .collect();
    let mut lambda = zero_vector(a.field, k);
    lambda[0] = a.field.one();
    let gamma = basis
        .vectors
        .iter()
        .map(|b| dot(b, &a.gamma).expect("nonempty state space"))
        .collect();
    let reduced = WeightedAutomaton::new(a.field, a.alphabet.clone(), lambda, mu, gamma)
        .expect("reduced automaton is well formed");
    (reduced, basis)
}

/// Dual of [`left_reduce`] on the column orbit `μ(Σ*)γ`; the basis words
/// form a suffix-closed set.
pub fn right_reduce(a: &WeightedAutomaton) -> (WeightedAutomaton, PrefixBasis) {
    let (t, basis) = left_reduce(&a.transpose());
    (t.transpose(), basis.reversed())
}

/// Right reduction followed by left reduction; the result has the minimal
/// dimension among representations of the same series.
pub fn minimize(a: &WeightedAutomaton) -> WeightedAutomaton {
    let (r, _) = right_reduce(a);
    left_reduce(&r).0
}

/// Whether two automata realize the same series: the difference automaton
/// must minimize to dimension 0.
pub fn equivalent(a: &WeightedAutomaton, b: &WeightedAutomaton) -> Result<bool> {
    let diff = a.direct_sum(&b.scaled(&-a.field.one()))?;
    Ok(minimize(&diff).dim() == 0)
}

/// All words of length `≤ max_len`, shortlex order.
pub fn words_up_to(letters: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..letters {
                let mut x: Word = w.clone();
                x.push(a);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
