//! Brute-force oracles shared by the integration tests. None of them use the
//! library's linear algebra: GF(2) vectors are bitmasks and subspaces are
//! explicit sets of vectors.

#![allow(dead_code)]

use modsplit::algebra::{Field, Matrix, Scalar};

/// A GF(2) matrix of size ≤ 16 as column bitmasks.
pub fn columns_as_bits(m: &Matrix) -> Vec<u32> {
    (0..m.cols())
        .map(|j| {
            (0..m.rows())
                .filter(|&i| m.get(i, j).is_one())
                .fold(0u32, |acc, i| acc | (1 << i))
        })
        .collect()
}

pub fn apply_bits(cols: &[u32], v: u32) -> u32 {
    cols.iter()
        .enumerate()
        .filter(|(j, _)| v & (1 << j) != 0)
        .fold(0, |acc, (_, c)| acc ^ c)
}

pub fn bits_to_vector(v: u32, n: usize) -> Vec<Scalar> {
    let f = Field::Prime(2);
    (0..n).map(|i| f.from_i64(((v >> i) & 1) as i64)).collect()
}

pub fn vector_to_bits(v: &[Scalar]) -> u32 {
    v.iter().enumerate().filter(|(_, c)| c.is_one()).fold(0, |acc, (i, _)| acc | (1 << i))
}

/// Smallest set of vectors containing `seeds`, closed under XOR and under
/// every generator (columns given as bitmasks).
pub fn closure(gens: &[Vec<u32>], seeds: &[u32]) -> Vec<u32> {
    let mut set: std::collections::BTreeSet<u32> = std::collections::BTreeSet::from([0]);
    let mut queue: Vec<u32> = seeds.to_vec();
    while let Some(v) = queue.pop() {
        if !set.insert(v) {
            continue;
        }
        queue.extend(set.iter().map(|w| v ^ w).filter(|x| !set.contains(x)));
        queue.extend(gens.iter().map(|g| apply_bits(g, v)));
    }
    set.into_iter().collect()
}

/// log2 of a subspace's size.
pub fn dim_of(space: &[u32]) -> usize {
    space.len().trailing_zeros() as usize
}

/// Every subspace of GF(2)^n (n ≤ 4) as a bitset over the 2^n vectors.
pub fn all_subspaces(n: usize) -> Vec<u32> {
    assert!(n <= 4);
    let size = 1u32 << n;
    (0u64..1 << size)
        .map(|s| s as u32)
        .filter(|&s| {
            s & 1 == 1
                && (0..size).all(|a| {
                    s & (1 << a) == 0 || (0..size).all(|b| s & (1 << b) == 0 || s & (1 << (a ^ b)) != 0)
                })
        })
        .collect()
}

fn members(set: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |v| set & (1 << v) != 0)
}

pub fn is_stable_set(gens: &[Vec<u32>], set: u32) -> bool {
    members(set).all(|v| gens.iter().all(|g| set & (1 << apply_bits(g, v)) != 0))
}

/// Whether the module (given as a set of vectors inside GF(2)^n) is a
/// direct sum of two nonzero stable subspaces.
pub fn decomposable_by_subspaces(gens: &[Vec<u32>], module: &[u32], subspaces: &[u32]) -> bool {
    let m_set = module.iter().fold(0u32, |acc, v| acc | (1 << v));
    let stable: Vec<u32> = subspaces
        .iter()
        .copied()
        .filter(|&s| s & !m_set == 0 && s != 1 && s != m_set && is_stable_set(gens, s))
        .collect();
    let total = m_set.count_ones();
    stable.iter().any(|&a| {
        stable
            .iter()
            .any(|&b| a & b == 1 && a.count_ones() * b.count_ones() == total)
    })
}

/// Relabels the variables of an ANF (monomial bitmask → coefficient) by
/// `x_i ↦ x_{perm[i]}` (0-based), via bit manipulation only.
pub fn permute_monomials(coeffs: &[bool], perm: &[usize]) -> Vec<bool> {
    let mut out = vec![false; coeffs.len()];
    for (mask, &c) in coeffs.iter().enumerate() {
        if c {
            let image = (0..perm.len())
                .filter(|i| mask & (1 << i) != 0)
                .fold(0usize, |acc, i| acc | (1 << perm[i]));
            out[image] ^= true;
        }
    }
    out
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Rank of a GF(2) vector family given as bitmasks.
pub fn gf2_rank(vectors: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// A set of vectors of GF(2)^n, n ≤ 8, as a 256-bit membership mask.
pub type Set256 = [u64; 4];

fn to_set(vectors: &[u32]) -> Set256 {
    let mut s = [0u64; 4];
    for &v in vectors {
        s[(v / 64) as usize] |= 1 << (v % 64);
    }
    s
}

fn set_len(s: &Set256) -> u32 {
    s.iter().map(|w| w.count_ones()).sum()
}

/// Every submodule of `module`, found as sums of cyclic submodules until no
/// new one appears.
pub fn submodule_lattice(gens: &[Vec<u32>], module: &[u32]) -> Vec<(Vec<u32>, Set256)> {
    let mut all: std::collections::BTreeMap<Set256, Vec<u32>> = std::collections::BTreeMap::new();
    for &v in module {
        let c = closure(gens, &[v]);
        all.insert(to_set(&c), c);
    }
    let cyclic: Vec<Vec<u32>> = all.values().cloned().collect();
    let mut frontier: Vec<Vec<u32>> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                let seeds: Vec<u32> = a.iter().chain(c).copied().collect();
                let s = closure(gens, &seeds);
                let key = to_set(&s);
                if let std::collections::btree_map::Entry::Vacant(e) = all.entry(key) {
                    e.insert(s.clone());
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    all.into_iter().map(|(k, v)| (v, k)).collect()
}

/// Direct-sum test over the full submodule lattice.
pub fn decomposable_by_lattice(gens: &[Vec<u32>], module: &[u32]) -> bool {
    let lattice = submodule_lattice(gens, module);
    let total = module.len() as u32;
    let proper: Vec<&Set256> = lattice
        .iter()
        .map(|(_, s)| s)
        .filter(|s| set_len(s) > 1 && set_len(s) < total)
        .collect();
    proper.iter().any(|a| {
        proper.iter().any(|b| {
            let meet: Set256 = [a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]];
            set_len(&meet) == 1 && set_len(a) * set_len(b) == total
        })
    })
}
