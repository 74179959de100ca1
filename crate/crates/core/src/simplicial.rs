//! The two simplicial groupoids of surjections.
//!
//! `NS` is the fat nerve: an `n`-simplex is a chain `E₀ ↠ E₁ ↠ … ↠ Eₙ`.
//!
//! `TS` has pyramids as simplices. A level-`n` pyramid has a set `X(i,j)` for
//! every `0 ≤ i ≤ j ≤ n`, a left leg `X(i,j) ↠ X(i,j−1)` and a right leg
//! `X(i,j) ↠ X(i+1,j)` for `i < j`, and a bottom arrow `X(i,i) ↠ X(i+1,i+1)`:
//!
//! ```text
//!                 X(0,2)
//!                ↙      ↘
//!          X(0,1)        X(1,2)
//!         ↙      ↘      ↙      ↘
//!   X(0,0) ──────→ X(1,1) ──────→ X(2,2)
//! ```
//!
//! Each bottom triangle commutes (right leg = bottom ∘ left leg) and each
//! square `X(i,j), X(i,j−1), X(i+1,j), X(i+1,j−1)` is a pullback of sets.
//!
//! In both families every set is a quotient of the top set (`E₀`, resp.
//! `X(0,n)`), so a simplex is determined up to isomorphism by the kernels of
//! those quotient maps, and an isomorphism is determined by its top bijection.
//! Faces and degeneracies are reindexings along monotone maps; degeneracies
//! fill the repeated cells with identities.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::json;

use crate::error::{check_bound, Error, Result};
use crate::finset::{self, Surjection};
use crate::groupoid::{self, EnumeratedGroupoid, GroupoidMap, IsoOracle};
use crate::incidence::Monomial;
use crate::lambda::Lambda;
use crate::partition::{all_partitions, Partition};
use crate::perm::{self, Perm};
use crate::rational::{self, Q};

/// Default top-set bound when enumerating 2-simplices.
pub const DEFAULT_TWO_SIMPLEX_BOUND: usize = 6;
/// Default top-set bound when enumerating 3-simplices.
pub const DEFAULT_THREE_SIMPLEX_BOUND: usize = 4;

/// Which simplicial groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Ns,
    Ts,
}

/// Common interface of the two simplex types.
pub trait Simplex: Clone + PartialEq + Send + Sync + Sized + 'static {
    fn level(&self) -> usize;

    /// Sizes of all sets, in the order used by [`Simplex::quotients`] and by
    /// levelwise bijections.
    fn set_sizes(&self) -> Vec<usize>;

    /// Position of the top set in the set order.
    fn top_position(level: usize) -> usize;

    /// Position of the `i`-th vertex (0-simplex face) in the set order.
    fn vertex_position(level: usize, i: usize) -> usize;

    /// Quotient maps from the top set onto every set, in set order.
    fn quotients(&self) -> Vec<Surjection>;

    /// Reindex along a monotone map `θ : [m] → [n]` given by its values.
    fn reindex(&self, theta: &[usize]) -> Result<Self>;

    /// Positions (in this simplex's set order) of the sets that survive the
    /// reindexing along `θ`, in the set order of the result.
    fn reindex_positions(level: usize, theta: &[usize]) -> Vec<usize>;

    /// Levelwise disjoint union.
    fn culf_product(&self, other: &Self) -> Result<Self>;

    /// The simplex with every set empty.
    fn empty(level: usize) -> Self;

    /// Relabel the set at `position` along a bijection.
    fn relabel(&self, position: usize, p: &[usize]) -> Self;

    /// A complete isomorphism invariant when one is cheap to compute.
    fn class_key(&self) -> Option<Vec<usize>>;

    fn top_size(&self) -> usize {
        self.set_sizes()[Self::top_position(self.level())]
    }

    fn face(&self, i: usize) -> Result<Self> {
        let n = self.level();
        if n == 0 || i > n {
            return Err(Error::Precondition(format!("face d{i} undefined on a level-{n} simplex")));
        }
        self.reindex(&face_map(n, i))
    }

    fn degeneracy(&self, i: usize) -> Result<Self> {
        let n = self.level();
        if i > n {
            return Err(Error::Precondition(format!(
                "degeneracy s{i} undefined on a level-{n} simplex"
            )));
        }
        self.reindex(&degeneracy_map(n, i))
    }
}

/// `δⁱ : [n−1] → [n]`, skipping `i`.
pub fn face_map(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&x| x != i).collect()
}

/// `σⁱ : [n+1] → [n]`, hitting `i` twice.
pub fn degeneracy_map(n: usize, i: usize) -> Vec<usize> {
    (0..=n + 1).map(|a| if a <= i { a } else { a - 1 }).collect()
}

fn check_monotone(theta: &[usize], n: usize) -> Result<()> {
    if theta.is_empty() || theta.windows(2).any(|w| w[0] > w[1]) || theta.iter().any(|&t| t > n) {
        return Err(Error::Precondition(format!(
            "{theta:?} is not a monotone map into [{n}]"
        )));
    }
    Ok(())
}

fn compose_all<'a>(n: usize, steps: impl IntoIterator<Item = &'a Surjection>) -> Surjection {
    steps
        .into_iter()
        .fold(Surjection::identity(n), |acc, s| acc.then(s).expect("composable arrows"))
}

fn surjection_from_kernels(fine: &Partition, coarse: &Partition) -> Result<Surjection> {
    finset::factor_through(&fine.to_surjection(), &coarse.to_surjection())?.ok_or_else(|| {
        Error::InvalidSimplex(format!("kernel {fine} does not refine {coarse}"))
    })
}

/// All partitions coarser than `p`.
pub fn coarsenings(p: &Partition) -> Vec<Partition> {
    all_partitions(p.block_count())
        .into_iter()
        .map(|q| {
            let labels: Vec<usize> = p.block_of().iter().map(|&b| q.block(b)).collect();
            Partition::from_labels(&labels)
        })
        .collect()
}

/// `λ`-monomial of the 1-simplex `E/fine ↠ E/mid ↠ E/coarse`: one factor per
/// block `C` of `coarse`, recording how many `fine`-blocks each `mid`-block
/// inside `C` contains.
pub fn nested_monomial(fine: &Partition, mid: &Partition, coarse: &Partition) -> Monomial {
    let mut fine_in_mid: HashMap<usize, std::collections::BTreeSet<usize>> = HashMap::new();
    let mut mid_in_coarse: BTreeMap<usize, std::collections::BTreeSet<usize>> = BTreeMap::new();
    for e in 0..fine.ground_size() {
        fine_in_mid.entry(mid.block(e)).or_default().insert(fine.block(e));
        mid_in_coarse.entry(coarse.block(e)).or_default().insert(mid.block(e));
    }
    Monomial::new(
        mid_in_coarse
            .values()
            .map(|mids| Lambda::from_block_sizes(mids.iter().map(|m| fine_in_mid[m].len())))
            .collect(),
    )
}

fn monomial_key(m: &Monomial) -> Vec<usize> {
    let mut key = vec![m.degree()];
    for l in m.factors() {
        key.push(l.pairs().len());
        key.extend(l.pairs().iter().flat_map(|&(s, k)| [s, k]));
    }
    key
}

// ---------------------------------------------------------------------------
// NS

/// A chain of composable surjections `E₀ ↠ E₁ ↠ … ↠ Eₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NSSimplex {
    base: usize,
    maps: Vec<Surjection>,
}

impl NSSimplex {
    pub fn new(base: usize, maps: Vec<Surjection>) -> Result<Self> {
        let mut size = base;
        for f in &maps {
            if f.dom() != size {
                return Err(Error::Mismatch {
                    expected: size,
                    found: f.dom(),
                });
            }
            size = f.cod();
        }
        Ok(NSSimplex { base, maps })
    }

    /// A chain of at least one surjection.
    pub fn from_chain(maps: Vec<Surjection>) -> Result<Self> {
        let base = maps
            .first()
            .map(Surjection::dom)
            .ok_or_else(|| Error::InvalidSimplex("empty chain; use vertex()".into()))?;
        NSSimplex::new(base, maps)
    }

    pub fn vertex(size: usize) -> Self {
        NSSimplex {
            base: size,
            maps: Vec::new(),
        }
    }

    /// The chain `E/κ₀ ↠ E/κ₁ ↠ …` of a nested family of kernels.
    pub fn from_kernels(kernels: &[Partition]) -> Result<Self> {
        let first = kernels
            .first()
            .ok_or_else(|| Error::InvalidSimplex("no kernels".into()))?;
        let maps = kernels
            .windows(2)
            .map(|w| surjection_from_kernels(&w[0], &w[1]))
            .collect::<Result<Vec<_>>>()?;
        NSSimplex::new(first.block_count(), maps)
    }

    pub fn maps(&self) -> &[Surjection] {
        &self.maps
    }

    /// The composite `E_a ↠ E_b` for `a ≤ b`.
    pub fn arrow(&self, a: usize, b: usize) -> Surjection {
        let sizes = self.set_sizes();
        compose_all(sizes[a], &self.maps[a..b])
    }

    /// Composite of the 2-simplex with edges `a` and `b`, glued along the
    /// bijection `φ : E₁(a) → E₀(b)`.
    pub fn glue(a: &NSSimplex, phi: &[usize], b: &NSSimplex) -> Result<NSSimplex> {
        if a.level() != 1 || b.level() != 1 {
            return Err(Error::InvalidSimplex("gluing needs two 1-simplices".into()));
        }
        let first = a.maps[0].relabel(&perm::identity(a.base), phi);
        NSSimplex::from_chain(vec![first, b.maps[0].clone()])
    }

    /// Class of a 1-simplex: one generator per fiber, keyed by its size.
    pub fn monomial(&self) -> Result<Monomial> {
        if self.level() != 1 {
            return Err(Error::InvalidSimplex("monomials are defined on 1-simplices".into()));
        }
        Ok(Monomial::new(
            self.maps[0]
                .fiber_sizes()
                .into_iter()
                .map(|n| Lambda::single(n, 1))
                .collect(),
        ))
    }

    /// Canonical code of the forest of fibers (a complete invariant).
    pub fn tree_key(&self) -> Vec<usize> {
        let n = self.level();
        let sizes = self.set_sizes();
        let mut codes: Vec<Vec<usize>> = vec![vec![1, 2]; sizes[0]];
        for f in &self.maps {
            let mut children: Vec<Vec<Vec<usize>>> = vec![Vec::new(); f.cod()];
            for (x, code) in codes.into_iter().enumerate() {
                children[f.apply(x)].push(code);
            }
            codes = children
                .into_iter()
                .map(|mut c| {
                    c.sort();
                    let mut code = vec![1];
                    code.extend(c.into_iter().flatten());
                    code.push(2);
                    code
                })
                .collect();
        }
        codes.sort();
        let mut key = vec![n];
        key.extend(codes.into_iter().flatten());
        key
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": "NS",
            "level": self.level(),
            "sets": self.set_sizes(),
            "maps": self.maps.iter().map(|f| f.values().to_vec()).collect::<Vec<_>>(),
        })
    }
}

impl Simplex for NSSimplex {
    fn level(&self) -> usize {
        self.maps.len()
    }

    fn set_sizes(&self) -> Vec<usize> {
        std::iter::once(self.base)
            .chain(self.maps.iter().map(Surjection::cod))
            .collect()
    }

    fn top_position(_: usize) -> usize {
        0
    }

    fn vertex_position(_: usize, i: usize) -> usize {
        i
    }

    fn quotients(&self) -> Vec<Surjection> {
        (0..=self.level()).map(|j| self.arrow(0, j)).collect()
    }

    fn reindex(&self, theta: &[usize]) -> Result<Self> {
        check_monotone(theta, self.level())?;
        let sizes = self.set_sizes();
        let maps = theta.windows(2).map(|w| self.arrow(w[0], w[1])).collect();
        NSSimplex::new(sizes[theta[0]], maps)
    }

    fn reindex_positions(_: usize, theta: &[usize]) -> Vec<usize> {
        theta.to_vec()
    }

    fn culf_product(&self, other: &Self) -> Result<Self> {
        if self.level() != other.level() {
            return Err(Error::Mismatch {
                expected: self.level(),
                found: other.level(),
            });
        }
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(f, g)| f.disjoint_union(g))
            .collect();
        NSSimplex::new(self.base + other.base, maps)
    }

    fn empty(level: usize) -> Self {
        NSSimplex {
            base: 0,
            maps: vec![Surjection::identity(0); level],
        }
    }

    fn relabel(&self, position: usize, p: &[usize]) -> Self {
        let mut out = self.clone();
        if position > 0 {
            let f = &self.maps[position - 1];
            out.maps[position - 1] = f.relabel(&perm::identity(f.dom()), p);
        }
        if position < self.maps.len() {
            let g = &self.maps[position];
            out.maps[position] = g.relabel(p, &perm::identity(g.cod()));
        }
        out
    }

    fn class_key(&self) -> Option<Vec<usize>> {
        Some(self.tree_key())
    }
}

// ---------------------------------------------------------------------------
// TS

/// A pyramid of surjections whose squares are pullbacks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TSSimplex {
    level: usize,
    sets: BTreeMap<(usize, usize), usize>,
    left: BTreeMap<(usize, usize), Surjection>,
    right: BTreeMap<(usize, usize), Surjection>,
    bottom: Vec<Surjection>,
}

fn cells(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=n).flat_map(move |i| (i..=n).map(move |j| (i, j)))
}

fn cell_position(n: usize, cell: (usize, usize)) -> usize {
    cells(n).position(|c| c == cell).expect("cell inside the pyramid")
}

impl TSSimplex {
    /// Assemble and validate a pyramid.
    pub fn from_parts(
        level: usize,
        sets: BTreeMap<(usize, usize), usize>,
        left: BTreeMap<(usize, usize), Surjection>,
        right: BTreeMap<(usize, usize), Surjection>,
        bottom: Vec<Surjection>,
    ) -> Result<Self> {
        let s = TSSimplex {
            level,
            sets,
            left,
            right,
            bottom,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn vertex(size: usize) -> Self {
        TSSimplex {
            level: 0,
            sets: BTreeMap::from([((0, 0), size)]),
            left: BTreeMap::new(),
            right: BTreeMap::new(),
            bottom: Vec::new(),
        }
    }

    /// The 1-simplex `X(0,1) ↠ X(0,0) ↠ X(1,1)` with right leg `bottom ∘ left`.
    pub fn one_simplex(left: Surjection, bottom: Surjection) -> Result<Self> {
        let right = left.then(&bottom)?;
        TSSimplex::from_parts(
            1,
            BTreeMap::from([((0, 0), left.cod()), ((0, 1), left.dom()), ((1, 1), bottom.cod())]),
            BTreeMap::from([((0, 1), left)]),
            BTreeMap::from([((0, 1), right)]),
            vec![bottom],
        )
    }

    /// The pyramid of quotients `X(i,j) = E/κ(i,j)`, kernels listed in cell order.
    pub fn from_kernels(level: usize, kernels: &[Partition]) -> Result<Self> {
        let count = cells(level).count();
        if kernels.len() != count {
            return Err(Error::Mismatch {
                expected: count,
                found: kernels.len(),
            });
        }
        let k: BTreeMap<(usize, usize), &Partition> = cells(level).zip(kernels).collect();
        let sets = k.iter().map(|(&c, p)| (c, p.block_count())).collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (i, j) in cells(level).filter(|&(i, j)| i < j) {
            left.insert((i, j), surjection_from_kernels(k[&(i, j)], k[&(i, j - 1)])?);
            right.insert((i, j), surjection_from_kernels(k[&(i, j)], k[&(i + 1, j)])?);
        }
        let bottom = (0..level)
            .map(|i| surjection_from_kernels(k[&(i, i)], k[&(i + 1, i + 1)]))
            .collect::<Result<Vec<_>>>()?;
        TSSimplex::from_parts(level, sets, left, right, bottom)
    }

    /// The canonical 1-simplex `E ↠ E/γ ↠ E/δ` of nested kernels `γ ≤ δ`.
    pub fn from_nested(gamma: &Partition, delta: &Partition) -> Result<Self> {
        let top = Partition::bottom(gamma.ground_size());
        TSSimplex::from_kernels(1, &[gamma.clone(), top, delta.clone()])
    }

    /// The connected 1-simplex `E ↠ B ↠ 1` of a fixed type, with fibers laid
    /// out consecutively.
    pub fn connected(lambda: &Lambda) -> Self {
        let mut values = Vec::new();
        for (b, size) in lambda.block_sizes().into_iter().enumerate() {
            values.resize(values.len() + size, b);
        }
        let parts = lambda.parts();
        let left = Surjection::new(parts, values).expect("consecutive fibers");
        let bottom = Surjection::to_point(parts);
        TSSimplex::one_simplex(left, bottom).expect("valid 1-simplex")
    }

    /// Representative 1-simplex of a monomial: disjoint union of its connected factors.
    pub fn from_monomial(m: &Monomial) -> Self {
        m.factors()
            .iter()
            .map(TSSimplex::connected)
            .fold(TSSimplex::empty(1), |acc, c| acc.culf_product(&c).expect("same level"))
    }

    /// Build a pyramid from its spine of 1-simplices `e₀, …, e_{n−1}` with
    /// `X(1,1)` of `e_k` equal (as a set) to `X(0,0)` of `e_{k+1}`; higher cells
    /// are iterated pullbacks `X(i,j) = X(i,j−1) ×_{X(i+1,j−1)} X(i+1,j)`.
    pub fn from_spine(edges: &[TSSimplex]) -> Result<Self> {
        let n = edges.len();
        if n == 0 {
            return Err(Error::InvalidSimplex("empty spine".into()));
        }
        let mut sets = BTreeMap::new();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        let mut bottom = Vec::new();
        for (k, e) in edges.iter().enumerate() {
            if e.level != 1 {
                return Err(Error::InvalidSimplex("spine edges must be 1-simplices".into()));
            }
            if k > 0 && e.size((0, 0)) != edges[k - 1].size((1, 1)) {
                return Err(Error::Mismatch {
                    expected: edges[k - 1].size((1, 1)),
                    found: e.size((0, 0)),
                });
            }
            sets.insert((k, k), e.size((0, 0)));
            sets.insert((k + 1, k + 1), e.size((1, 1)));
            sets.insert((k, k + 1), e.size((0, 1)));
            left.insert((k, k + 1), e.left[&(0, 1)].clone());
            right.insert((k, k + 1), e.right[&(0, 1)].clone());
            bottom.push(e.bottom[0].clone());
        }
        for d in 2..=n {
            for i in 0..=n - d {
                let j = i + d;
                let a: &Surjection = &right[&(i, j - 1)];
                let b: &Surjection = &left[&(i + 1, j)];
                let (p, pr1, pr2) = finset::pullback(a, b)?;
                sets.insert((i, j), p.size());
                left.insert((i, j), Surjection::try_from_map(pr1)?);
                right.insert((i, j), Surjection::try_from_map(pr2)?);
            }
        }
        TSSimplex::from_parts(n, sets, left, right, bottom)
    }

    /// The 2-simplex with spine `(a, b)`, glued along `φ : X(1,1)(a) → X(0,0)(b)`.
    pub fn glue(a: &TSSimplex, phi: &[usize], b: &TSSimplex) -> Result<TSSimplex> {
        if a.level != 1 || b.level != 1 {
            return Err(Error::InvalidSimplex("gluing needs two 1-simplices".into()));
        }
        let a = a.relabel(cell_position(1, (1, 1)), phi);
        TSSimplex::from_spine(&[a, b.clone()])
    }

    pub fn size(&self, cell: (usize, usize)) -> usize {
        self.sets[&cell]
    }

    pub fn left_leg(&self, cell: (usize, usize)) -> &Surjection {
        &self.left[&cell]
    }

    pub fn right_leg(&self, cell: (usize, usize)) -> &Surjection {
        &self.right[&cell]
    }

    pub fn bottom_arrow(&self, i: usize) -> &Surjection {
        &self.bottom[i]
    }

    /// The composite arrow `X(i,j) ↠ X(k,l)`. It exists when `[k,l] ⊆ [i,j]`
    /// (right legs, then left legs) and when `(k,l)` is a diagonal cell at or
    /// after `j` (down to `X(j,j)`, then bottom arrows).
    pub fn arrow(&self, from: (usize, usize), to: (usize, usize)) -> Result<Surjection> {
        let ((i, j), (k, l)) = (from, to);
        let n = self.level;
        if i > j || j > n || k > l || l > n {
            return Err(Error::Precondition(format!("cells {from:?}, {to:?} outside the pyramid")));
        }
        if i <= k && l <= j {
            let steps = (i..k)
                .map(|r| &self.right[&(r, j)])
                .chain((l + 1..=j).rev().map(|c| &self.left[&(k, c)]));
            Ok(compose_all(self.size(from), steps))
        } else if k == l && j <= k {
            let down = self.arrow(from, (j, j))?;
            Ok(down.then(&compose_all(self.size((j, j)), &self.bottom[j..k]))?)
        } else {
            Err(Error::Precondition(format!("no arrow from {from:?} to {to:?}")))
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.level;
        let bad = |msg: String| Err(Error::InvalidSimplex(msg));
        if self.sets.len() != cells(n).count() || cells(n).any(|c| !self.sets.contains_key(&c)) {
            return bad("missing or extra cells".into());
        }
        if self.bottom.len() != n {
            return bad("wrong number of bottom arrows".into());
        }
        let inner = cells(n).filter(|&(i, j)| i < j).count();
        if self.left.len() != inner || self.right.len() != inner {
            return bad("wrong number of legs".into());
        }
        for (i, b) in self.bottom.iter().enumerate() {
            if b.dom() != self.size((i, i)) || b.cod() != self.size((i + 1, i + 1)) {
                return bad(format!("bottom arrow {i} has wrong ends"));
            }
        }
        for (i, j) in cells(n).filter(|&(i, j)| i < j) {
            let (l, r) = match (self.left.get(&(i, j)), self.right.get(&(i, j))) {
                (Some(l), Some(r)) => (l, r),
                _ => return bad(format!("missing legs at ({i},{j})")),
            };
            if l.dom() != self.size((i, j)) || l.cod() != self.size((i, j - 1)) {
                return bad(format!("left leg at ({i},{j}) has wrong ends"));
            }
            if r.dom() != self.size((i, j)) || r.cod() != self.size((i + 1, j)) {
                return bad(format!("right leg at ({i},{j}) has wrong ends"));
            }
            if j == i + 1 {
                if &l.then(&self.bottom[i])? != r {
                    return bad(format!("bottom triangle at ({i},{j}) does not commute"));
                }
            } else if !finset::is_pullback_square(
                l.as_map(),
                r.as_map(),
                &self.right[&(i, j - 1)],
                &self.left[&(i + 1, j)],
            ) {
                return bad(format!("square at ({i},{j}) is not a pullback"));
            }
        }
        Ok(())
    }

    /// `λ`-monomial of a 1-simplex: one factor per point `y` of `X(1,1)`,
    /// the type of the left leg over the part of `X(0,0)` lying above `y`.
    pub fn monomial(&self) -> Result<Monomial> {
        if self.level != 1 {
            return Err(Error::InvalidSimplex("monomials are defined on 1-simplices".into()));
        }
        let fiber_sizes = self.left[&(0, 1)].fiber_sizes();
        let mut over: Vec<Vec<usize>> = vec![Vec::new(); self.size((1, 1))];
        for (b, &y) in self.bottom[0].values().iter().enumerate() {
            over[y].push(fiber_sizes[b]);
        }
        Ok(Monomial::new(over.into_iter().map(Lambda::from_block_sizes).collect()))
    }

    /// JSON grid of sets and maps, for debugging.
    pub fn to_json(&self) -> serde_json::Value {
        let sets: Vec<_> = self
            .sets
            .iter()
            .map(|(&(i, j), &s)| json!({ "cell": [i, j], "size": s }))
            .collect();
        let legs = |m: &BTreeMap<(usize, usize), Surjection>| -> Vec<serde_json::Value> {
            m.iter()
                .map(|(&(i, j), f)| json!({ "cell": [i, j], "values": f.values() }))
                .collect()
        };
        json!({
            "family": "TS",
            "level": self.level,
            "sets": sets,
            "left": legs(&self.left),
            "right": legs(&self.right),
            "bottom": self.bottom.iter().map(|f| f.values().to_vec()).collect::<Vec<_>>(),
        })
    }
}

impl Simplex for TSSimplex {
    fn level(&self) -> usize {
        self.level
    }

    fn set_sizes(&self) -> Vec<usize> {
        cells(self.level).map(|c| self.sets[&c]).collect()
    }

    fn top_position(level: usize) -> usize {
        cell_position(level, (0, level))
    }

    fn vertex_position(level: usize, i: usize) -> usize {
        cell_position(level, (i, i))
    }

    fn quotients(&self) -> Vec<Surjection> {
        let top = (0, self.level);
        cells(self.level)
            .map(|c| self.arrow(top, c).expect("every cell is below the top"))
            .collect()
    }

    fn reindex(&self, theta: &[usize]) -> Result<Self> {
        check_monotone(theta, self.level)?;
        let m = theta.len() - 1;
        let t = |a: usize| theta[a];
        let sets = cells(m).map(|(a, b)| ((a, b), self.size((t(a), t(b))))).collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (a, b) in cells(m).filter(|&(a, b)| a < b) {
            left.insert((a, b), self.arrow((t(a), t(b)), (t(a), t(b - 1)))?);
            right.insert((a, b), self.arrow((t(a), t(b)), (t(a + 1), t(b)))?);
        }
        let bottom = (0..m)
            .map(|a| self.arrow((t(a), t(a)), (t(a + 1), t(a + 1))))
            .collect::<Result<Vec<_>>>()?;
        TSSimplex::from_parts(m, sets, left, right, bottom)
    }

    fn reindex_positions(level: usize, theta: &[usize]) -> Vec<usize> {
        let m = theta.len() - 1;
        cells(m)
            .map(|(a, b)| cell_position(level, (theta[a], theta[b])))
            .collect()
    }

    fn culf_product(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::Mismatch {
                expected: self.level,
                found: other.level,
            });
        }
        let union = |a: &BTreeMap<(usize, usize), Surjection>, b: &BTreeMap<(usize, usize), Surjection>| {
            a.iter()
                .map(|(c, f)| (*c, f.disjoint_union(&b[c])))
                .collect::<BTreeMap<_, _>>()
        };
        TSSimplex::from_parts(
            self.level,
            self.sets.iter().map(|(c, s)| (*c, s + other.sets[c])).collect(),
            union(&self.left, &other.left),
            union(&self.right, &other.right),
            self.bottom
                .iter()
                .zip(&other.bottom)
                .map(|(f, g)| f.disjoint_union(g))
                .collect(),
        )
    }

    fn empty(level: usize) -> Self {
        let e = Surjection::identity(0);
        TSSimplex {
            level,
            sets: cells(level).map(|c| (c, 0)).collect(),
            left: cells(level).filter(|&(i, j)| i < j).map(|c| (c, e.clone())).collect(),
            right: cells(level).filter(|&(i, j)| i < j).map(|c| (c, e.clone())).collect(),
            bottom: vec![e; level],
        }
    }

    fn relabel(&self, position: usize, p: &[usize]) -> Self {
        let (i, j) = cells(self.level).nth(position).expect("cell position in range");
        let mut out = self.clone();
        let into = |f: &Surjection| f.relabel(&perm::identity(f.dom()), p);
        let out_of = |f: &Surjection| f.relabel(p, &perm::identity(f.cod()));
        // arrows out of (i, j)
        if i < j {
            out.left.insert((i, j), out_of(&self.left[&(i, j)]));
            out.right.insert((i, j), out_of(&self.right[&(i, j)]));
        } else if i < self.level {
            out.bottom[i] = out_of(&self.bottom[i]);
        }
        // arrows into (i, j)
        if j < self.level {
            out.left.insert((i, j + 1), into(&out.left[&(i, j + 1)]));
        }
        if i > 0 {
            out.right.insert((i - 1, j), into(&out.right[&(i - 1, j)]));
        }
        if i == j && i > 0 {
            out.bottom[i - 1] = into(&out.bottom[i - 1]);
        }
        out
    }

    fn class_key(&self) -> Option<Vec<usize>> {
        match self.level {
            0 => Some(vec![0, self.size((0, 0))]),
            1 => self.monomial().ok().map(|m| monomial_key(&m)),
            _ => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Isomorphisms

/// Kernels of the quotient maps from the top set, in set order.
pub fn kernel_family<S: Simplex>(s: &S) -> Vec<Partition> {
    s.quotients().iter().map(Partition::from_surjection).collect()
}

/// Levelwise bijections induced by a top bijection `p`, if `p` carries every
/// kernel of `a` onto the matching kernel of `b`.
fn induced_levelwise(qa: &[Surjection], qb: &[Surjection], ka: &[Partition], kb: &[Partition], p: &[usize]) -> Option<Vec<Perm>> {
    if ka.iter().zip(kb).any(|(x, y)| x.permute(p) != *y) {
        return None;
    }
    Some(
        qa.iter()
            .zip(qb)
            .map(|(fa, fb)| {
                let mut beta = vec![0; fa.cod()];
                for (e, &pe) in p.iter().enumerate() {
                    beta[fa.apply(e)] = fb.apply(pe);
                }
                beta
            })
            .collect(),
    )
}

/// Every isomorphism `a → b`, as levelwise bijections in set order.
pub fn simplex_isos<S: Simplex>(a: &S, b: &S) -> Vec<Vec<Perm>> {
    if a.level() != b.level() || a.set_sizes() != b.set_sizes() {
        return Vec::new();
    }
    let (ka, kb) = (kernel_family(a), kernel_family(b));
    if ka.iter().zip(&kb).any(|(x, y)| x.lambda_type() != y.lambda_type()) {
        return Vec::new();
    }
    let (qa, qb) = (a.quotients(), b.quotients());
    perm::all(a.top_size())
        .filter_map(|p| induced_levelwise(&qa, &qb, &ka, &kb, &p))
        .collect()
}

/// One isomorphism `a → b`, if any.
pub fn find_iso<S: Simplex>(a: &S, b: &S) -> Option<Vec<Perm>> {
    if a.level() != b.level() || a.set_sizes() != b.set_sizes() {
        return None;
    }
    let (ka, kb) = (kernel_family(a), kernel_family(b));
    let (qa, qb) = (a.quotients(), b.quotients());
    perm::all(a.top_size()).find_map(|p| induced_levelwise(&qa, &qb, &ka, &kb, &p))
}

/// Do levelwise bijections commute with every arrow of the two simplices?
/// Independent of the kernel-based search, used to audit it.
pub fn is_levelwise_iso<S: Simplex>(a: &S, b: &S, arrow: &[Vec<usize>]) -> bool {
    let (qa, qb) = (a.quotients(), b.quotients());
    let top = S::top_position(a.level());
    arrow.len() == qa.len()
        && arrow.iter().all(|p| perm::is_permutation(p))
        && qa.iter().zip(&qb).zip(arrow).all(|((fa, fb), beta)| {
            (0..fa.dom()).all(|e| beta[fa.apply(e)] == fb.apply(arrow[top][e]))
        })
}

/// Canonical form by brute force: the lexicographically least kernel family
/// over all relabelings of the top set, prefixed by the set sizes.
pub fn brute_canonical_key<S: Simplex>(s: &S) -> Vec<usize> {
    let kernels = kernel_family(s);
    let best = perm::all(s.top_size())
        .map(|p| {
            kernels
                .iter()
                .flat_map(|k| k.permute(&p).block_of().to_vec())
                .collect::<Vec<usize>>()
        })
        .min()
        .unwrap_or_default();
    let mut key = s.set_sizes();
    key.push(usize::MAX);
    key.extend(best);
    key
}

/// Keep one simplex per isomorphism class, in first-occurrence order.
pub fn dedup_by_iso<S: Simplex>(simplices: Vec<S>) -> Vec<S> {
    let mut seen = std::collections::HashSet::new();
    simplices
        .into_iter()
        .filter(|s| seen.insert(brute_canonical_key(s)))
        .collect()
}

/// Iso oracle for simplices of either family.
pub struct SimplexIsos;

impl<S: Simplex> IsoOracle<S, Vec<Perm>> for SimplexIsos {
    fn isos(&self, from: &S, to: &S) -> Vec<Vec<Perm>> {
        simplex_isos(from, to)
    }

    fn compose(&self, first: &Vec<Perm>, second: &Vec<Perm>) -> Vec<Perm> {
        first.iter().zip(second).map(|(f, g)| perm::compose(f, g)).collect()
    }

    fn identity(&self, x: &S) -> Vec<Perm> {
        x.set_sizes().into_iter().map(perm::identity).collect()
    }

    fn is_isomorphic(&self, a: &S, b: &S) -> bool {
        find_iso(a, b).is_some()
    }

    fn class_key(&self, x: &S) -> Option<Vec<usize>> {
        x.class_key()
    }
}

/// Restrict a levelwise bijection of `s` to its reindexing along `θ`.
pub fn reindex_arrow<S: Simplex>(level: usize, arrow: &[Perm], theta: &[usize]) -> Vec<Perm> {
    S::reindex_positions(level, theta)
        .into_iter()
        .map(|p| arrow[p].clone())
        .collect()
}

// ---------------------------------------------------------------------------
// Enumeration

/// Canonical `NS` simplices of a level with top set `{0..m}`, `m ≤ bound`:
/// one per nested chain of kernels `0̂ = κ₀ ≤ κ₁ ≤ … ≤ κₙ`.
pub fn ns_simplices(level: usize, bound: usize) -> Vec<NSSimplex> {
    fn extend(chain: &mut Vec<Partition>, level: usize, out: &mut Vec<NSSimplex>) {
        if chain.len() == level + 1 {
            out.push(NSSimplex::from_kernels(chain).expect("nested kernels"));
            return;
        }
        for next in coarsenings(chain.last().expect("nonempty chain")) {
            chain.push(next);
            extend(chain, level, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    for m in 0..=bound {
        extend(&mut vec![Partition::bottom(m)], level, &mut out);
    }
    out
}

/// Kernel families `(α, β, γ, δ)` of `TS` 2-simplices on a top set of size `m`:
/// `X(0,1) = E/α`, `X(1,2) = E/β`, `X(1,1) = E/(α∨β)`, `X(0,0) = E/γ`,
/// `X(2,2) = E/δ`, with `α∧β = 0̂`, `α, β` commuting, `α ≤ γ ≤ α∨β ≤ δ`.
pub fn ts_two_simplex_kernels(m: usize) -> Vec<[Partition; 4]> {
    let all = all_partitions(m);
    let mut out = Vec::new();
    for alpha in &all {
        for beta in &all {
            if !alpha.meet_unchecked(beta).is_bottom() || !alpha.commutes_unchecked(beta) {
                continue;
            }
            let join = alpha.join_unchecked(beta);
            let deltas = coarsenings(&join);
            for gamma in coarsenings(alpha).into_iter().filter(|g| g.refines_unchecked(&join)) {
                for delta in &deltas {
                    out.push([alpha.clone(), beta.clone(), gamma.clone(), delta.clone()]);
                }
            }
        }
    }
    out
}

/// The canonical 2-simplex of a kernel family, with top set `E` itself.
pub fn ts_two_simplex(k: &[Partition; 4]) -> Result<TSSimplex> {
    let [alpha, beta, gamma, delta] = k;
    let join = alpha.join(beta)?;
    let top = Partition::bottom(alpha.ground_size());
    // cell order: (0,0) (0,1) (0,2) (1,1) (1,2) (2,2)
    TSSimplex::from_kernels(
        2,
        &[gamma.clone(), alpha.clone(), top, join, beta.clone(), delta.clone()],
    )
}

/// Canonical `TS` 1-simplices with top set of size `≤ bound`, as a groupoid.
pub fn ts_one_simplices(bound: usize) -> EnumeratedGroupoid<TSSimplex, Vec<Perm>> {
    let mut objects = Vec::new();
    for m in 0..=bound {
        for gamma in all_partitions(m) {
            for delta in coarsenings(&gamma) {
                objects.push(TSSimplex::from_nested(&gamma, &delta).expect("nested kernels"));
            }
        }
    }
    EnumeratedGroupoid::new(objects, Arc::new(SimplexIsos))
}

/// Canonical `NS` 1-simplices with top set of size `≤ bound`, as a groupoid.
pub fn ns_one_simplices(bound: usize) -> EnumeratedGroupoid<NSSimplex, Vec<Perm>> {
    EnumeratedGroupoid::new(ns_simplices(1, bound), Arc::new(SimplexIsos))
}

/// `TS` simplices of a level built from spines of canonical 1-simplices, with
/// every gluing bijection, keeping those with top set of size `≤ bound`; one
/// simplex per isomorphism class.
pub fn ts_simplices_by_spine(level: usize, bound: usize) -> Vec<TSSimplex> {
    let edges = ts_one_simplices(bound).objects().to_vec();
    if level == 0 {
        return (0..=bound).map(TSSimplex::vertex).collect();
    }
    if level == 1 {
        return dedup_by_iso(edges);
    }
    let shorter = ts_simplices_by_spine(level - 1, bound);
    let mut out = Vec::new();
    for s in &shorter {
        let n = s.level();
        let spine: Vec<TSSimplex> = (0..n)
            .map(|k| s.reindex(&[k, k + 1]).expect("edge of a simplex"))
            .collect();
        let last = s.size((n, n));
        for e in edges.iter().filter(|e| e.size((0, 0)) == last) {
            for phi in perm::all(last) {
                let mut with = spine.clone();
                let position = cell_position(1, (1, 1));
                with[n - 1] = with[n - 1].relabel(position, &phi);
                with.push(e.clone());
                if let Ok(t) = TSSimplex::from_spine(&with) {
                    if t.top_size() <= bound {
                        out.push(t);
                    }
                }
            }
        }
    }
    dedup_by_iso(out)
}

/// 2-simplices over a fixed 1-simplex, each paired with its identification
/// of `d₁` with the base.
pub type Fiber<S> = EnumeratedGroupoid<(S, Vec<Perm>), Vec<Perm>>;

/// The groupoid of 2-simplices over a 1-simplex `f`: the homotopy fiber of
/// `d₁` over `f`. Source 2-simplices are the canonical ones on a top set of
/// the size of `f`'s top.
pub fn two_simplices_over<S: Simplex>(
    f: &S,
    candidates: Vec<S>,
) -> Result<Fiber<S>> {
    if f.level() != 1 {
        return Err(Error::InvalidSimplex("the base of the fiber must be a 1-simplex".into()));
    }
    let source = EnumeratedGroupoid::new(candidates, Arc::new(SimplexIsos));
    let target = EnumeratedGroupoid::new(vec![f.clone()], Arc::new(SimplexIsos));
    let d1 = GroupoidMap::new(
        &source,
        &target,
        |x: &S| x.face(1).expect("2-simplices have a d1 face"),
        |_, a: &Vec<Perm>| reindex_arrow::<S>(2, a, &face_map(2, 1)),
    );
    let top = S::top_position(2);
    let face_top = S::top_position(1);
    // A fiber object (x, φ) is isomorphic to (x', φ') iff transporting both
    // along their top bijections gives the same kernel family.
    Ok(groupoid::homotopy_fiber_keyed(&d1, f, move |(x, phi): &(S, Vec<Perm>)| {
        debug_assert_eq!(x.set_sizes()[top], phi[face_top].len());
        let mut key = Vec::new();
        for k in kernel_family(x) {
            key.extend(k.permute(&phi[face_top]).block_of().iter().copied());
            key.push(usize::MAX);
        }
        key
    }))
}

/// [`two_simplices_over`] for `TS`, with candidates from all kernel families
/// on `f`'s top set.
pub fn ts_two_simplices_over(f: &TSSimplex) -> Result<Fiber<TSSimplex>> {
    check_bound("2-simplex top set size", f.top_size(), DEFAULT_TWO_SIMPLEX_BOUND)?;
    let key = f.class_key();
    let candidates = ts_two_simplex_kernels(f.top_size())
        .iter()
        .map(ts_two_simplex)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|x| x.face(1).ok().and_then(|d| d.class_key()) == key)
        .collect();
    two_simplices_over(f, candidates)
}

/// [`two_simplices_over`] for `NS`: factorizations of `f`.
pub fn ns_two_simplices_over(f: &NSSimplex) -> Result<Fiber<NSSimplex>> {
    check_bound("2-simplex top set size", f.top_size(), DEFAULT_TWO_SIMPLEX_BOUND)?;
    let key = f.class_key();
    let candidates = ns_simplices(2, f.top_size())
        .into_iter()
        .filter(|x| x.top_size() == f.top_size())
        .filter(|x| x.face(1).ok().and_then(|d| d.class_key()) == key)
        .collect();
    two_simplices_over(f, candidates)
}

// ---------------------------------------------------------------------------
// Segal condition

/// Outcome of a Segal check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegalReport {
    pub family: Family,
    pub bound: usize,
    /// Pairs of 1-simplex classes `(a, b)` with `d₀a ≅ d₁b`.
    pub class_pairs: usize,
    /// Gluings `(a, φ, b)` built and validated.
    pub fillers: usize,
    /// Labelled 2-simplices counted on the enumeration side.
    pub enumerated: usize,
    pub failures: Vec<String>,
}

impl SegalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type PairKey = (Vec<usize>, Vec<usize>, usize);

/// Compare both sides of `X₂ ≃ X₁ ×_{X₀} X₁` class by class.
///
/// For 1-simplex classes `a, b` and top size `m`, the 2-simplices with
/// `d₂ ≅ a`, `d₀ ≅ b` on a top set of size `m` have homotopy cardinality
/// `#{labelled kernel families}/m!` (enumeration side) and
/// `#{φ ∈ iso(d₀a, d₁b) gluing to top size m}/(|aut a|·|aut b|)` (gluing
/// side). Every gluing is also built, validated, and its faces compared.
fn segal_compare<S: Simplex>(
    family: Family,
    bound: usize,
    reps: &[S],
    glue: impl Fn(&S, &[usize], &S) -> Result<S>,
    enumerated: HashMap<PairKey, usize>,
) -> SegalReport {
    let mut report = SegalReport {
        family,
        bound,
        class_pairs: 0,
        fillers: 0,
        enumerated: enumerated.values().sum(),
        failures: Vec::new(),
    };
    let keyed: Vec<(Vec<usize>, usize, &S)> = reps
        .iter()
        .map(|s| {
            let key = s.class_key().expect("1-simplices have class keys");
            (key, simplex_isos(s, s).len(), s)
        })
        .collect();
    let mut glued: HashMap<PairKey, Q> = HashMap::new();
    let (first, last) = (S::vertex_position(1, 0), S::vertex_position(1, 1));
    for (ka, aut_a, a) in &keyed {
        let k = a.set_sizes()[last];
        for (kb, aut_b, b) in &keyed {
            if b.set_sizes()[first] != k {
                continue;
            }
            report.class_pairs += 1;
            for phi in perm::all(k) {
                let t = match glue(a, &phi, b) {
                    Ok(t) => t,
                    Err(e) => {
                        report.failures.push(format!("gluing failed: {e}"));
                        continue;
                    }
                };
                let m = t.top_size();
                if m > bound {
                    continue;
                }
                report.fillers += 1;
                let faces_ok = t.face(2).ok().and_then(|d| d.class_key()).as_ref() == Some(ka)
                    && t.face(0).ok().and_then(|d| d.class_key()).as_ref() == Some(kb);
                if !faces_ok {
                    report.failures.push(format!("filler faces differ from its edges (m = {m})"));
                }
                *glued.entry((ka.clone(), kb.clone(), m)).or_insert_with(rational::zero) +=
                    rational::q(1, (*aut_a * *aut_b) as i64);
            }
        }
    }
    let mut keys: Vec<&PairKey> = glued.keys().chain(enumerated.keys()).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        let lhs = enumerated
            .get(key)
            .map(|&c| rational::from_int(c as i64) / rational::from_biguint(&crate::lambda::factorial(key.2)))
            .unwrap_or_else(rational::zero);
        let rhs = glued.get(key).cloned().unwrap_or_else(rational::zero);
        if lhs != rhs {
            report.failures.push(format!(
                "class pair {:?} / {:?} at top size {}: enumerated {lhs}, glued {rhs}",
                key.0, key.1, key.2
            ));
        }
    }
    report
}

/// Segal check for the fat nerve, up to top sets of size `bound`.
pub fn segal_check_ns(bound: usize) -> SegalReport {
    let reps: Vec<NSSimplex> = Lambda::up_to_weight(bound)
        .into_iter()
        .map(|l| {
            let mut values = Vec::new();
            for (b, size) in l.block_sizes().into_iter().enumerate() {
                values.resize(values.len() + size, b);
            }
            NSSimplex::from_chain(vec![Surjection::new(l.parts(), values).expect("consecutive fibers")])
                .expect("one map")
        })
        .collect();
    let mut enumerated: HashMap<PairKey, usize> = HashMap::new();
    // labelled: every chain of kernels on {0..m}
    for t in ns_simplices(2, bound) {
        let k2 = t.face(2).expect("face").tree_key();
        let k0 = t.face(0).expect("face").tree_key();
        *enumerated.entry((k2, k0, t.top_size())).or_default() += 1;
    }
    segal_compare(Family::Ns, bound, &reps, NSSimplex::glue, enumerated)
}

/// Segal check for pyramids, up to top sets of size `bound`.
pub fn segal_check_ts(bound: usize) -> SegalReport {
    let reps: Vec<TSSimplex> = Monomial::all_up_to_weight(bound)
        .iter()
        .map(TSSimplex::from_monomial)
        .collect();
    let mut enumerated: HashMap<PairKey, usize> = HashMap::new();
    for m in 0..=bound {
        for [alpha, beta, gamma, delta] in ts_two_simplex_kernels(m) {
            let join = alpha.join_unchecked(&beta);
            let a = nested_monomial(&alpha, &gamma, &join);
            let b = nested_monomial(&beta, &join, &delta);
            *enumerated
                .entry((monomial_key(&a), monomial_key(&b), m))
                .or_default() += 1;
        }
    }
    segal_compare(Family::Ts, bound, &reps, TSSimplex::glue, enumerated)
}

// ---------------------------------------------------------------------------
// Simplicial identities

/// Outcome of a simplicial-identity scan.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdentityReport {
    pub simplices: usize,
    pub identities: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check every simplicial identity applicable to each simplex, up to a
/// levelwise bijection found by search and audited independently.
pub fn check_simplicial_identities<S: Simplex>(simplices: &[S]) -> IdentityReport {
    let mut report = IdentityReport::default();
    let expect = |report: &mut IdentityReport, name: String, lhs: Result<S>, rhs: Result<S>| {
        report.identities += 1;
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => match find_iso(&l, &r) {
                Some(iso) if is_levelwise_iso(&l, &r, &iso) => {}
                _ => report.failures.push(name),
            },
            (l, r) => report
                .failures
                .push(format!("{name}: {:?} / {:?}", l.err(), r.err())),
        }
    };
    for s in simplices {
        report.simplices += 1;
        let n = s.level();
        for j in 0..=n {
            for i in 0..j {
                if n >= 2 {
                    // d_i d_j = d_{j-1} d_i
                    expect(
                        &mut report,
                        format!("d{i} d{j} = d{} d{i} at level {n}", j - 1),
                        s.face(j).and_then(|x| x.face(i)),
                        s.face(i).and_then(|x| x.face(j - 1)),
                    );
                }
            }
            for i in 0..=j {
                // s_i s_j = s_{j+1} s_i
                expect(
                    &mut report,
                    format!("s{i} s{j} = s{} s{i} at level {n}", j + 1),
                    s.degeneracy(j).and_then(|x| x.degeneracy(i)),
                    s.degeneracy(i).and_then(|x| x.degeneracy(j + 1)),
                );
            }
            for i in 0..=n + 1 {
                let sj = s.degeneracy(j);
                let lhs = sj.and_then(|x| x.face(i));
                let rhs = if i < j {
                    s.face(i).and_then(|x| x.degeneracy(j - 1))
                } else if i == j || i == j + 1 {
                    Ok(s.clone())
                } else {
                    s.face(i - 1).and_then(|x| x.degeneracy(j))
                };
                expect(&mut report, format!("d{i} s{j} at level {n}"), lhs, rhs);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surj(cod: usize, values: &[usize]) -> Surjection {
        Surjection::new(cod, values.to_vec()).unwrap()
    }

    #[test]
    fn ns_faces_of_a_two_chain() {
        let s = NSSimplex::from_chain(vec![surj(2, &[0, 0, 1]), surj(1, &[0, 0])]).unwrap();
        let d1 = s.face(1).unwrap();
        assert_eq!(d1.maps(), &[surj(1, &[0, 0, 0])]);
        assert_eq!(s.face(0).unwrap().maps(), &[surj(1, &[0, 0])]);
        assert_eq!(s.face(2).unwrap().maps(), &[surj(2, &[0, 0, 1])]);
        let v = d1.face(0).unwrap();
        assert_eq!((v.level(), v.top_size()), (0, 1));
    }

    #[test]
    fn ns_degeneracy_then_face() {
        for s in ns_simplices(1, 4).into_iter().chain(ns_simplices(2, 3)) {
            for j in 0..=s.level() {
                let up = s.degeneracy(j).unwrap();
                assert_eq!(up.face(j).unwrap(), s);
                assert_eq!(up.face(j + 1).unwrap(), s);
            }
        }
    }

    #[test]
    fn ns_tree_key_is_complete_invariant() {
        let all = ns_simplices(2, 3);
        for a in &all {
            for b in &all {
                assert_eq!(a.tree_key() == b.tree_key(), find_iso(a, b).is_some(), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn ts_one_simplex_structure() {
        let f = TSSimplex::one_simplex(surj(2, &[0, 0, 1]), surj(1, &[0, 0])).unwrap();
        assert_eq!(f.right_leg((0, 1)), &surj(1, &[0, 0, 0]));
        assert_eq!(f.monomial().unwrap(), Monomial::new(vec![Lambda::from_pairs([(1, 1), (2, 1)])]));
        assert!(TSSimplex::from_parts(
            1,
            BTreeMap::from([((0, 0), 2), ((0, 1), 3), ((1, 1), 1)]),
            BTreeMap::from([((0, 1), surj(2, &[0, 0, 1]))]),
            BTreeMap::from([((0, 1), surj(1, &[0, 0, 0]))]),
            vec![surj(1, &[0, 0])],
        )
        .is_ok());
    }

    #[test]
    fn non_pullback_square_is_rejected() {
        // X(0,2) too small to be the fiber product 2 ×_1 2 = 4
        let mut sets = BTreeMap::new();
        for (c, s) in [((0, 0), 1), ((0, 1), 2), ((0, 2), 2), ((1, 1), 1), ((1, 2), 2), ((2, 2), 1)] {
            sets.insert(c, s);
        }
        let two_to_one = surj(1, &[0, 0]);
        let id2 = Surjection::identity(2);
        let left = BTreeMap::from([((0, 1), two_to_one.clone()), ((0, 2), id2.clone()), ((1, 2), two_to_one.clone())]);
        let right = BTreeMap::from([((0, 1), two_to_one.clone()), ((0, 2), id2.clone()), ((1, 2), two_to_one.clone())]);
        let bottom = vec![Surjection::identity(1), Surjection::identity(1)];
        let err = TSSimplex::from_parts(2, sets, left, right, bottom).unwrap_err();
        assert!(matches!(err, Error::InvalidSimplex(m) if m.contains("pullback")));
    }

    #[test]
    fn spine_over_a_point_gives_product() {
        let a = TSSimplex::one_simplex(Surjection::identity(2), surj(1, &[0, 0])).unwrap();
        let b = TSSimplex::one_simplex(surj(1, &[0, 0]), Surjection::identity(1)).unwrap();
        let t = TSSimplex::from_spine(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(t.size((0, 2)), 4);
        assert_eq!(t.face(2).unwrap(), a);
        assert_eq!(t.face(0).unwrap(), b);
    }

    #[test]
    fn inner_face_composes_the_outer_edge() {
        for k in ts_two_simplex_kernels(3) {
            let t = ts_two_simplex(&k).unwrap();
            let d1 = t.face(1).unwrap();
            assert_eq!(d1.size((0, 1)), t.size((0, 2)));
            assert_eq!(d1.size((0, 0)), t.size((0, 0)));
            assert_eq!(d1.size((1, 1)), t.size((2, 2)));
            assert_eq!(d1.left_leg((0, 1)), &t.arrow((0, 2), (0, 0)).unwrap());
            assert_eq!(d1.right_leg((0, 1)), &t.arrow((0, 2), (2, 2)).unwrap());
            assert_eq!(d1, TSSimplex::from_nested(&k[2], &k[3]).unwrap());
        }
    }

    #[test]
    fn degeneracy_then_face_recovers_ts() {
        for s in ts_one_simplices(3).objects() {
            let up = s.degeneracy(0).unwrap();
            assert_eq!(up.size((0, 1)), s.size((0, 0)));
            assert_eq!(&up.face(0).unwrap(), s);
            assert_eq!(&up.face(1).unwrap(), s);
        }
    }

    #[test]
    fn kernel_route_matches_spine_faces() {
        for k in ts_two_simplex_kernels(4) {
            let t = ts_two_simplex(&k).unwrap();
            let join = k[0].join(&k[1]).unwrap();
            assert_eq!(t.face(2).unwrap().monomial().unwrap(), nested_monomial(&k[0], &k[2], &join));
            assert_eq!(t.face(0).unwrap().monomial().unwrap(), nested_monomial(&k[1], &join, &k[3]));
        }
    }

    #[test]
    fn ts_one_simplex_key_is_complete_invariant() {
        let g = ts_one_simplices(3);
        for a in g.objects() {
            for b in g.objects() {
                assert_eq!(a.class_key() == b.class_key(), find_iso(a, b).is_some());
            }
        }
    }

    #[test]
    fn isos_commute_with_arrows() {
        let g = ts_one_simplices(3);
        for a in g.objects() {
            for b in g.objects() {
                for iso in simplex_isos(a, b) {
                    assert!(is_levelwise_iso(a, b, &iso));
                }
            }
        }
    }

    #[test]
    fn fiber_over_trivial_edge() {
        let f = TSSimplex::from_nested(&Partition::bottom(1), &Partition::top(1)).unwrap();
        let fiber = ts_two_simplices_over(&f).unwrap();
        let reps = groupoid::pi0(&fiber);
        assert_eq!(reps.len(), 1);
        assert_eq!(fiber.aut_size(reps[0]), 1);
    }

    #[test]
    fn fiber_classes_are_transversals() {
        use crate::partition::enumerate_transversals;
        for sigma in [Partition::top(2), Partition::bottom(2), Partition::bottom(3), Partition::top(3)] {
            let n = sigma.ground_size();
            let f = TSSimplex::from_nested(&sigma, &Partition::top(n)).unwrap();
            let fiber = ts_two_simplices_over(&f).unwrap();
            let transversals = enumerate_transversals(&sigma, 6).unwrap();
            assert_eq!(groupoid::pi0(&fiber).len(), transversals.len());
            assert_eq!(groupoid::homotopy_cardinality(&fiber), rational::from_int(transversals.len() as i64));
        }
        let f = TSSimplex::from_nested(&Partition::top(2), &Partition::top(2)).unwrap();
        assert_eq!(groupoid::pi0(&ts_two_simplices_over(&f).unwrap()).len(), 2);
    }

    #[test]
    fn culf_product_laws() {
        let edges = ts_one_simplices(2);
        for s in edges.objects() {
            assert_eq!(&s.culf_product(&TSSimplex::empty(1)).unwrap(), s);
            for t in edges.objects() {
                let st = s.culf_product(t).unwrap();
                let (ms, mt) = (s.monomial().unwrap(), t.monomial().unwrap());
                assert_eq!(st.monomial().unwrap(), ms.mul(&mt));
            }
        }
        let twos: Vec<TSSimplex> = (0..=3)
            .flat_map(ts_two_simplex_kernels)
            .map(|k| ts_two_simplex(&k).unwrap())
            .filter(|t| t.top_size() <= 2)
            .collect();
        for s in &twos {
            for t in &twos {
                let lhs = s.culf_product(t).unwrap().face(1).unwrap();
                let rhs = s.face(1).unwrap().culf_product(&t.face(1).unwrap()).unwrap();
                assert!(find_iso(&lhs, &rhs).is_some());
            }
        }
    }

    #[test]
    fn segal_small() {
        let ns = segal_check_ns(4);
        assert!(ns.passed(), "{:?}", ns.failures);
        let ts = segal_check_ts(4);
        assert!(ts.passed(), "{:?}", ts.failures);
        assert!(ts.fillers > 0 && ts.enumerated > 0);
    }

    #[test]
    fn identities_on_small_simplices() {
        let ns: Vec<NSSimplex> = (0..=3).flat_map(|l| ns_simplices(l, 3)).collect();
        assert!(check_simplicial_identities(&ns).passed());
        let ts: Vec<TSSimplex> = (0..=2).flat_map(|l| ts_simplices_by_spine(l, 3)).collect();
        let r = check_simplicial_identities(&ts);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn json_shape() {
        let f = TSSimplex::connected(&Lambda::from_pairs([(2, 1)]));
        let v = f.to_json();
        assert_eq!(v["level"], 1);
        assert_eq!(v["sets"].as_array().unwrap().len(), 3);
    }
}
