//! Breadth-first covering tree: the prefix-basis construction shared by
//! automaton reduction and cyclic-module construction.

use std::collections::HashMap;

use crate::algebra::matrix::{is_zero_vector, SpanBuilder, Vector};
use crate::algebra::Field;

/// A word over an indexed alphabet.
pub type Word = Vec<usize>;

/// Prefix-closed word set `P` together with its orbit vectors.
///
/// Vectors are linearly independent and listed in discovery order; the
/// first word is always the empty word unless the basis is empty.
#[derive(Clone, Debug)]
pub struct PrefixBasis {
    pub words: Vec<Word>,
    pub vectors: Vec<Vector>,
    pub word_to_index: HashMap<Word, usize>,
    span: SpanBuilder,
}

impl PrefixBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Coordinates of `v` in the orbit basis, if it lies in the span.
    pub fn coordinates(&self, v: &[crate::algebra::Scalar]) -> Option<Vector> {
        self.span.coordinates(v)
    }

    /// Every proper prefix of a member is a member.
    pub fn is_prefix_closed(&self) -> bool {
        self.words
            .iter()
            .all(|w| (0..w.len()).all(|k| self.word_to_index.contains_key(&w[..k])))
    }

    /// Same set read right-to-left (used by the dual, suffix-closed construction).
    pub(crate) fn reversed(mut self) -> Self {
        for w in &mut self.words {
            w.reverse();
        }
        self.word_to_index = index_words(&self.words);
        self
    }

    /// Words rendered with the given labels, concatenated; ε for the empty word.
    pub fn render_words(&self, labels: &[String]) -> Vec<String> {
        self.words.iter().map(|w| render_word(w, labels)).collect()
    }
}

pub fn render_word(w: &[usize], labels: &[String]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" ")
    }
}

fn index_words(words: &[Word]) -> HashMap<Word, usize> {
    words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()
}

/// Builds the covering tree from `start`: children of a kept word `w` are
/// `w·a` for letters in index order, kept iff `step(vector(w), a)` is
/// independent of everything kept so far. Discarded nodes get no children.
pub fn covering_tree(
    field: Field,
    start: &[crate::algebra::Scalar],
    letters: usize,
    mut step: impl FnMut(&Vector, usize) -> Vector,
) -> PrefixBasis {
    let mut span = SpanBuilder::new(field, start.len());
    let mut words: Vec<Word> = Vec::new();
    let mut vectors: Vec<Vector> = Vec::new();
    if !is_zero_vector(start) {
        span.insert(start);
        words.push(Vec::new());
        vectors.push(start.to_vec());
    }
    let mut next = 0;
    while next < words.len() {
        for a in 0..letters {
            let v = step(&vectors[next], a);
            if span.insert(&v) {
                let mut w = words[next].clone();
                w.push(a);
                words.push(w);
                vectors.push(v);
            }
        }
        next += 1;
    }
    PrefixBasis {
        word_to_index: index_words(&words),
        words,
        vectors,
        span,
    }
}
