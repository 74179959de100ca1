//! Set partitions, the partition lattice, and transversals.
//!
//! A partition of `{0..n}` is stored as a restricted growth string: `block_of[i]`
//! is the index of the block containing `i`, and blocks are numbered in order of
//! their smallest element. Two partitions are equal iff their strings are equal.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_bound, Error, Result};
use crate::finset::{self, Surjection, UnionFind};
use crate::lambda::Lambda;

/// Largest ground set accepted by [`enumerate_transversals`] unless overridden.
pub const DEFAULT_TRANSVERSAL_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    block_of: Vec<usize>,
    block_count: usize,
}

impl Partition {
    /// Canonicalize an arbitrary block labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let block_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        Partition {
            block_count: remap.len(),
            block_of,
        }
    }

    pub fn from_blocks(ground: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; ground];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &e in block {
                if e >= ground {
                    return Err(Error::InvalidPartition(format!(
                        "element {e} is outside the ground set of size {ground}"
                    )));
                }
                if labels[e] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {e} occurs twice")));
                }
                labels[e] = b;
            }
        }
        if let Some(e) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {e} is not covered")));
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Parse a block-list literal such as `[[0,1],[2]]`; the ground set is
    /// `{0..m}` where `m` is the number of listed elements.
    pub fn parse_blocks(src: &str) -> Result<Self> {
        let blocks: Vec<Vec<usize>> = serde_json::from_str(src).map_err(|e| Error::Parse {
            position: e.column().saturating_sub(1),
            message: e.to_string(),
        })?;
        let ground = blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(ground, &blocks)
    }

    /// `0̂`: all singletons.
    pub fn bottom(n: usize) -> Self {
        Partition {
            block_of: (0..n).collect(),
            block_count: n,
        }
    }

    /// `1̂`: one block (no blocks when `n = 0`).
    pub fn top(n: usize) -> Self {
        Partition {
            block_of: vec![0; n],
            block_count: usize::from(n > 0),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block(&self, e: usize) -> usize {
        self.block_of[e]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (e, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(e);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.block_count];
        self.block_of.iter().for_each(|&b| sizes[b] += 1);
        sizes
    }

    pub fn is_bottom(&self) -> bool {
        self.block_count == self.ground_size()
    }

    pub fn is_top(&self) -> bool {
        self.block_count <= 1
    }

    /// The quotient map onto the set of blocks.
    pub fn to_surjection(&self) -> Surjection {
        Surjection::from_map_unchecked(
            finset::SetMap::new(self.block_count, self.block_of.clone()).expect("block index in range"),
        )
    }

    /// The partition whose blocks are the fibers of `f`.
    pub fn from_surjection(f: &Surjection) -> Self {
        Partition::from_labels(f.values())
    }

    /// Image of the partition under the element relabelling `e ↦ p[e]`.
    pub fn permute(&self, p: &[usize]) -> Partition {
        let mut labels = vec![0; self.ground_size()];
        for (e, &b) in self.block_of.iter().enumerate() {
            labels[p[e]] = b;
        }
        Partition::from_labels(&labels)
    }

    /// Isomorphism class: number of blocks of each size.
    pub fn lambda_type(&self) -> Lambda {
        Lambda::from_block_sizes(self.block_sizes())
    }

    fn same_ground(&self, other: &Partition) -> Result<()> {
        if self.ground_size() == other.ground_size() {
            Ok(())
        } else {
            Err(Error::Mismatch {
                expected: self.ground_size(),
                found: other.ground_size(),
            })
        }
    }

    /// `self ≤ coarser`: every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        self.same_ground(coarser)?;
        Ok(self.refines_unchecked(coarser))
    }

    pub(crate) fn refines_unchecked(&self, coarser: &Partition) -> bool {
        let mut target = vec![usize::MAX; self.block_count];
        self.block_of.iter().zip(&coarser.block_of).all(|(&b, &c)| {
            if target[b] == usize::MAX {
                target[b] = c;
            }
            target[b] == c
        })
    }

    /// Greatest common refinement `{B ∩ C ≠ ∅}`.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &Partition) -> Partition {
        let pairs: Vec<usize> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&b, &c)| b * other.block_count.max(1) + c)
            .collect();
        Partition::from_labels(&pairs)
    }

    /// Least common coarsening: the equivalence generated by both relations.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        Ok(self.join_unchecked(other))
    }

    pub(crate) fn join_unchecked(&self, other: &Partition) -> Partition {
        let n = self.ground_size();
        let mut uf = UnionFind::new(n);
        for part in [self, other] {
            let mut first = vec![usize::MAX; part.block_count];
            for (e, &b) in part.block_of.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = e;
                } else {
                    uf.union(first[b], e);
                }
            }
        }
        let (labels, _) = uf.classes();
        Partition::from_labels(&labels)
    }

    /// Induced partition `coarse|fine`: the partition of the blocks of `fine`
    /// given by the blocks of `coarse`. Requires `fine ≤ coarse`.
    pub fn induced(coarse: &Partition, fine: &Partition) -> Result<Partition> {
        if !fine.refines(coarse)? {
            return Err(Error::Precondition(
                "induced partition needs the second argument to refine the first".into(),
            ));
        }
        let mut labels = vec![0; fine.block_count];
        for (e, &b) in fine.block_of.iter().enumerate() {
            labels[b] = coarse.block_of[e];
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Restriction `π_B` to a subset `B`; the result lives on `{0..|B|}` with
    /// elements of `B` numbered in ascending order. Empty `B` gives the empty partition.
    pub fn restrict(&self, subset: &[usize]) -> Result<Partition> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(Error::Precondition("subset has repeated elements".into()));
        }
        if let Some(&e) = sorted.iter().find(|&&e| e >= self.ground_size()) {
            return Err(Error::OutOfRange {
                index: 0,
                value: e,
                cod: self.ground_size(),
            });
        }
        let labels: Vec<usize> = sorted.iter().map(|&e| self.block_of[e]).collect();
        Ok(Partition::from_labels(&labels))
    }

    /// Two-sided relay condition: `p ∼_π r ∼_τ q` for some `r` iff
    /// `p ∼_τ s ∼_π q` for some `s`, for all `p, q`.
    pub fn commutes(&self, other: &Partition) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Partition) -> bool {
        let n = self.ground_size();
        let relay = |a: &Partition, b: &Partition, p: usize, q: usize| {
            (0..n).any(|r| a.block_of[p] == a.block_of[r] && b.block_of[r] == b.block_of[q])
        };
        (0..n).all(|p| (0..n).all(|q| relay(self, other, p, q) == relay(other, self, p, q)))
    }

    /// Every block of `self` meets every block of `other`.
    pub fn independent(&self, other: &Partition) -> Result<bool> {
        self.same_ground(other)?;
        let mut meets = vec![false; self.block_count * other.block_count];
        for (&b, &c) in self.block_of.iter().zip(&other.block_of) {
            meets[b * other.block_count + c] = true;
        }
        Ok(meets.into_iter().all(|m| m))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "[")?;
        for (i, block) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let ground = blocks.iter().map(Vec::len).sum();
        Partition::from_blocks(ground, &blocks).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `{0..n}` in lexicographic order of their restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn extend(rgs: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Partition>) {
        if rgs.len() == n {
            out.push(Partition {
                block_of: rgs.clone(),
                block_count: if n == 0 { 0 } else { max + 1 },
            });
            return;
        }
        let limit = if rgs.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs.push(b);
            extend(rgs, max.max(b), n, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

/// Is `(pi, tau)` a transversal of `sigma`?
///
/// (i) `π ≤ σ`, (ii) `π ∧ τ = 0̂`, (iii) `π` and `τ` commute, (iv) `σ ∨ τ = π ∨ τ`.
pub fn is_transversal(sigma: &Partition, pi: &Partition, tau: &Partition) -> Result<bool> {
    sigma.same_ground(pi)?;
    sigma.same_ground(tau)?;
    Ok(is_transversal_unchecked(sigma, pi, tau))
}

fn is_transversal_unchecked(sigma: &Partition, pi: &Partition, tau: &Partition) -> bool {
    pi.refines_unchecked(sigma)
        && pi.meet_unchecked(tau).is_bottom()
        && pi.commutes_unchecked(tau)
        && sigma.join_unchecked(tau) == pi.join_unchecked(tau)
}

/// All labelled transversals `(π, τ)` of `sigma`, by brute force over `Π(E)²`,
/// in lexicographic order of `(π, τ)`.
pub fn enumerate_transversals(sigma: &Partition, max_ground: usize) -> Result<Vec<(Partition, Partition)>> {
    check_bound("transversal ground set size", sigma.ground_size(), max_ground)?;
    let all = all_partitions(sigma.ground_size());
    let mut out = Vec::new();
    for pi in &all {
        for tau in &all {
            if is_transversal_unchecked(sigma, pi, tau) {
                out.push((pi.clone(), tau.clone()));
            }
        }
    }
    Ok(out)
}

/// Surjection-side characterization of transversals.
///
/// Builds the pushout `S ↠ I ↞ X` of `π : E ↠ S` and `τ : E ↠ X` and checks that
/// (a) the square is also a pullback, i.e. the comparison map `E → S ×_I X` is
/// bijective, (b) `σ : E ↠ B` factors through `π`, and (c) there is `B ↠ I`
/// whose composite with `σ` is `E ↠ I`.
pub fn transversal_diagram_check(sigma: &Partition, pi: &Partition, tau: &Partition) -> Result<bool> {
    sigma.same_ground(pi)?;
    sigma.same_ground(tau)?;
    let (p, t, s) = (pi.to_surjection(), tau.to_surjection(), sigma.to_surjection());
    let (s_to_i, _, _) = finset::pushout(&p, &t)?;
    let phi = finset::comparison_map(&p, &t)?;
    if !phi.is_bijective() {
        return Ok(false);
    }
    if finset::factor_through(&p, &s)?.is_none() {
        return Ok(false);
    }
    let e_to_i = p.then(&s_to_i)?;
    Ok(finset::factor_through(&s, &e_to_i)?.is_some())
}
