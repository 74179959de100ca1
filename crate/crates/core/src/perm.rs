//! Permutations of canonical finite sets, stored in one-line notation.

use itertools::Itertools;

/// A bijection `{0..n} -> {0..n}`; `p[i]` is the image of `i`.
pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `then ∘ first`: apply `first`, then `then`.
pub fn compose(first: &[usize], then: &[usize]) -> Perm {
    first.iter().map(|&i| then[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &j in p {
        if j >= p.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

/// All permutations of `{0..n}` in lexicographic order.
pub fn all(n: usize) -> impl Iterator<Item = Perm> {
    (0..n).permutations(n)
}

/// Cycle type of a permutation as `(cycle length, count)` pairs.
pub fn cycle_type(p: &[usize]) -> Vec<(usize, usize)> {
    let mut seen = vec![false; p.len()];
    let mut lengths = std::collections::BTreeMap::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        *lengths.entry(len).or_insert(0) += 1;
    }
    lengths.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_composes_to_identity() {
        for p in all(4) {
            assert_eq!(compose(&p, &inverse(&p)), identity(4));
        }
    }

    #[test]
    fn counts_and_cycles() {
        assert_eq!(all(4).count(), 24);
        assert_eq!(all(0).count(), 1);
        assert_eq!(cycle_type(&[1, 0, 2]), vec![(1, 1), (2, 1)]);
        assert_eq!(cycle_type(&[1, 2, 0]), vec![(3, 1)]);
    }
}
