//! Canonical finite sets `{0..n}`, maps between them, and the surjection
//! calculus: image factorization, pushouts, pullbacks and the comparison map
//! from a span to the pullback of its pushout.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// The finite set `{0, …, size−1}`, optionally with display names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FinSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        FinSet {
            size: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of element `i`; falls back to the index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }
}

/// A map `{0..dom} -> {0..cod}` given by its values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetMap {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl SetMap {
    pub fn new(cod: usize, values: Vec<usize>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= cod) {
            return Err(Error::OutOfRange { index, value, cod });
        }
        Ok(SetMap {
            dom: values.len(),
            cod,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        SetMap {
            dom: n,
            cod: n,
            values: perm::identity(n),
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.first_missing().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        self.dom == self.cod && self.is_injective()
    }

    fn first_missing(&self) -> Option<usize> {
        let mut hit = vec![false; self.cod];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.iter().position(|h| !h)
    }

    /// Preimages of every codomain element, each sorted ascending.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.cod];
        for (i, &v) in self.values.iter().enumerate() {
            fibers[v].push(i);
        }
        fibers
    }

    pub fn image_size(&self) -> usize {
        let mut hit = vec![false; self.cod];
        self.values.iter().for_each(|&v| hit[v] = true);
        hit.into_iter().filter(|&h| h).count()
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(f: &SetMap, g: &SetMap) -> Result<SetMap> {
    if f.cod != g.dom {
        return Err(Error::Mismatch {
            expected: f.cod,
            found: g.dom,
        });
    }
    Ok(SetMap {
        dom: f.dom,
        cod: g.cod,
        values: f.values.iter().map(|&v| g.values[v]).collect(),
    })
}

/// A surjective map between canonical finite sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct Surjection(SetMap);

#[derive(Serialize, Deserialize)]
struct RawMap {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl TryFrom<RawMap> for Surjection {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        if raw.values.len() != raw.dom {
            return Err(Error::Mismatch {
                expected: raw.dom,
                found: raw.values.len(),
            });
        }
        Surjection::new(raw.cod, raw.values)
    }
}

impl From<Surjection> for RawMap {
    fn from(s: Surjection) -> Self {
        RawMap {
            dom: s.0.dom,
            cod: s.0.cod,
            values: s.0.values,
        }
    }
}

impl Surjection {
    pub fn new(cod: usize, values: Vec<usize>) -> Result<Self> {
        Surjection::try_from_map(SetMap::new(cod, values)?)
    }

    pub fn try_from_map(map: SetMap) -> Result<Self> {
        match map.first_missing() {
            Some(missing) => Err(Error::NotSurjective(missing)),
            None => Ok(Surjection(map)),
        }
    }

    /// Caller guarantees surjectivity.
    pub(crate) fn from_map_unchecked(map: SetMap) -> Self {
        debug_assert!(map.is_surjective());
        Surjection(map)
    }

    pub fn identity(n: usize) -> Self {
        Surjection(SetMap::identity(n))
    }

    /// The collapse `n ↠ 1`; for `n = 0` this is the empty surjection `∅ ↠ ∅`.
    pub fn to_point(n: usize) -> Self {
        Surjection(SetMap {
            dom: n,
            cod: usize::from(n > 0),
            values: vec![0; n],
        })
    }

    pub fn as_map(&self) -> &SetMap {
        &self.0
    }

    pub fn into_map(self) -> SetMap {
        self.0
    }

    pub fn dom(&self) -> usize {
        self.0.dom
    }

    pub fn cod(&self) -> usize {
        self.0.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.0.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0.values[i]
    }

    pub fn fibers(&self) -> Vec<Vec<usize>> {
        self.0.fibers()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cod()];
        self.values().iter().for_each(|&v| sizes[v] += 1);
        sizes
    }

    /// `then ∘ self`; surjective whenever both factors are.
    pub fn then(&self, then: &Surjection) -> Result<Surjection> {
        compose(&self.0, &then.0).map(Surjection)
    }

    /// Precompose and postcompose with bijections: `cod_perm ∘ self ∘ dom_perm⁻¹`.
    pub fn relabel(&self, dom_perm: &[usize], cod_perm: &[usize]) -> Surjection {
        let mut values = vec![0; self.dom()];
        for (i, &v) in self.values().iter().enumerate() {
            values[dom_perm[i]] = cod_perm[v];
        }
        Surjection(SetMap {
            dom: self.dom(),
            cod: self.cod(),
            values,
        })
    }

    /// Disjoint union `self ⊔ other`, with `other` placed after `self` on both sides.
    pub fn disjoint_union(&self, other: &Surjection) -> Surjection {
        let values = self
            .values()
            .iter()
            .copied()
            .chain(other.values().iter().map(|&v| v + self.cod()))
            .collect();
        Surjection(SetMap {
            dom: self.dom() + other.dom(),
            cod: self.cod() + other.cod(),
            values,
        })
    }
}

/// Split `f` as a surjection onto its image followed by an injection.
/// Image elements are numbered in order of first occurrence in `f`.
pub fn image_factorization(f: &SetMap) -> (Surjection, SetMap) {
    let mut index_of = vec![usize::MAX; f.cod];
    let mut image = Vec::new();
    let mut values = Vec::with_capacity(f.dom);
    for &v in &f.values {
        if index_of[v] == usize::MAX {
            index_of[v] = image.len();
            image.push(v);
        }
        values.push(index_of[v]);
    }
    let surj = Surjection(SetMap {
        dom: f.dom,
        cod: image.len(),
        values,
    });
    let inj = SetMap {
        dom: image.len(),
        cod: f.cod,
        values: image,
    };
    (surj, inj)
}

/// The surjection `S ↠ B` with `h ∘ f = g`, if `g` is constant on the fibers of `f`.
pub fn factor_through(f: &Surjection, g: &Surjection) -> Result<Option<Surjection>> {
    if f.dom() != g.dom() {
        return Err(Error::Mismatch {
            expected: f.dom(),
            found: g.dom(),
        });
    }
    let mut values = vec![usize::MAX; f.cod()];
    for (&s, &b) in f.values().iter().zip(g.values()) {
        if values[s] == usize::MAX {
            values[s] = b;
        } else if values[s] != b {
            return Ok(None);
        }
    }
    Ok(Some(Surjection(SetMap {
        dom: f.cod(),
        cod: g.cod(),
        values,
    })))
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Class index of every element, classes numbered by smallest member.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut index_of_root = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = Vec::with_capacity(n);
        for x in 0..n {
            let r = self.find(x);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = next;
                next += 1;
            }
            out.push(index_of_root[r]);
        }
        (out, next)
    }
}

/// Pushout of `S ↞ E ↠ X`: returns `(S ↠ I, X ↠ I, I)`.
///
/// `I = (S ⊔ X)/∼` with `p(e) ∼ t(e)`; classes are numbered by their smallest
/// element of `S ⊔ X`, elements of `S` coming first.
pub fn pushout(p: &Surjection, t: &Surjection) -> Result<(Surjection, Surjection, FinSet)> {
    if p.dom() != t.dom() {
        return Err(Error::Mismatch {
            expected: p.dom(),
            found: t.dom(),
        });
    }
    let (s, x) = (p.cod(), t.cod());
    let mut uf = UnionFind::new(s + x);
    for (&a, &b) in p.values().iter().zip(t.values()) {
        uf.union(a, s + b);
    }
    let (class, count) = uf.classes();
    let left = Surjection(SetMap {
        dom: s,
        cod: count,
        values: class[..s].to_vec(),
    });
    let right = Surjection(SetMap {
        dom: x,
        cod: count,
        values: class[s..].to_vec(),
    });
    Ok((left, right, FinSet::new(count)))
}

/// Pullback of `S ↠ I ↞ X`: returns `(P, P → S, P → X)` with
/// `P = {(s, x) : a(s) = b(x)}` enumerated lexicographically.
pub fn pullback(a: &Surjection, b: &Surjection) -> Result<(FinSet, SetMap, SetMap)> {
    if a.cod() != b.cod() {
        return Err(Error::Mismatch {
            expected: a.cod(),
            found: b.cod(),
        });
    }
    let b_fibers = b.fibers();
    let mut pr1 = Vec::new();
    let mut pr2 = Vec::new();
    for s in 0..a.dom() {
        for &x in &b_fibers[a.apply(s)] {
            pr1.push(s);
            pr2.push(x);
        }
    }
    let n = pr1.len();
    Ok((
        FinSet::new(n),
        SetMap {
            dom: n,
            cod: a.dom(),
            values: pr1,
        },
        SetMap {
            dom: n,
            cod: b.dom(),
            values: pr2,
        },
    ))
}

/// Index of `(s, x)` inside the lexicographic pullback of `a` and `b`.
pub(crate) fn pullback_index(a: &Surjection, b: &Surjection) -> HashMap<(usize, usize), usize> {
    let b_fibers = b.fibers();
    let mut index = HashMap::new();
    for s in 0..a.dom() {
        for &x in &b_fibers[a.apply(s)] {
            let next = index.len();
            index.insert((s, x), next);
        }
    }
    index
}

/// The canonical map `φ : E → S ×_I X` into the pullback of the pushout of `(p, t)`.
pub fn comparison_map(p: &Surjection, t: &Surjection) -> Result<SetMap> {
    let (left, right, _) = pushout(p, t)?;
    let index = pullback_index(&left, &right);
    let values = p
        .values()
        .iter()
        .zip(t.values())
        .map(|(&s, &x)| index[&(s, x)])
        .collect();
    Ok(SetMap {
        dom: p.dom(),
        cod: index.len(),
        values,
    })
}

/// Is the commuting square `E → S, E → X` over `S → I ← X` a pullback?
/// Checks that the comparison map from `E` to the fiber product is bijective.
pub fn is_pullback_square(
    to_s: &SetMap,
    to_x: &SetMap,
    s_to_i: &Surjection,
    x_to_i: &Surjection,
) -> bool {
    if to_s.dom() != to_x.dom() || to_s.cod() != s_to_i.dom() || to_x.cod() != x_to_i.dom() {
        return false;
    }
    let commutes = (0..to_s.dom())
        .all(|e| s_to_i.apply(to_s.apply(e)) == x_to_i.apply(to_x.apply(e)));
    if !commutes {
        return false;
    }
    let index = pullback_index(s_to_i, x_to_i);
    if index.len() != to_s.dom() {
        return false;
    }
    let mut hit = vec![false; index.len()];
    (0..to_s.dom()).all(|e| {
        let k = index[&(to_s.apply(e), to_x.apply(e))];
        !std::mem::replace(&mut hit[k], true)
    })
}

/// All surjections `{0..n} ↠ {0..k}`, enumerated as restricted-growth strings
/// composed with every relabeling of the codomain.
pub fn all_surjections(n: usize, k: usize) -> Vec<Surjection> {
    let mut out = Vec::new();
    for p in crate::partition::all_partitions(n) {
        if p.block_count() != k {
            continue;
        }
        for relabel in perm::all(k) {
            let values = p.block_of().iter().map(|&b| relabel[b]).collect();
            out.push(Surjection(SetMap { dom: n, cod: k, values }));
        }
    }
    out
}

/// All isomorphisms between two surjections, as (domain bijection, codomain bijection)
/// pairs `(α, β)` with `β ∘ a = b ∘ α`.
pub fn surjection_isos(a: &Surjection, b: &Surjection) -> Vec<(Perm, Perm)> {
    if a.dom() != b.dom() || a.cod() != b.cod() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for alpha in perm::all(a.dom()) {
        let mut beta = vec![usize::MAX; a.cod()];
        let ok = (0..a.dom()).all(|e| {
            let (s, t) = (a.apply(e), b.apply(alpha[e]));
            if beta[s] == usize::MAX {
                beta[s] = t;
                true
            } else {
                beta[s] == t
            }
        });
        if ok && perm::is_permutation(&beta) {
            out.push((alpha, beta));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surj(cod: usize, v: &[usize]) -> Surjection {
        Surjection::new(cod, v.to_vec()).unwrap()
    }

    #[test]
    fn compose_identity_and_singleton() {
        let g = SetMap::new(2, vec![1, 0, 1]).unwrap();
        assert_eq!(compose(&SetMap::identity(3), &g).unwrap(), g);
        let f = SetMap::new(2, vec![0, 0, 1]).unwrap();
        let h = SetMap::new(1, vec![0, 0]).unwrap();
        assert_eq!(compose(&f, &h).unwrap().values(), &[0, 0, 0]);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = SetMap::new(2, vec![0, 1]).unwrap();
        let g = SetMap::new(1, vec![0, 0, 0]).unwrap();
        assert!(matches!(compose(&f, &g), Err(Error::Mismatch { .. })));
    }

    #[test]
    fn composition_of_surjections_is_surjective() {
        for n in 0..=4 {
            for k in 0..=n {
                for f in all_surjections(n, k) {
                    for m in 0..=k {
                        for g in all_surjections(k, m) {
                            assert!(compose(f.as_map(), g.as_map()).unwrap().is_surjective());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_surjective_and_out_of_range() {
        assert_eq!(Surjection::new(3, vec![0, 2]), Err(Error::NotSurjective(1)));
        assert!(matches!(SetMap::new(2, vec![2]), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn image_factorization_first_occurrence() {
        let f = SetMap::new(2, vec![1, 1, 0]).unwrap();
        let (s, i) = image_factorization(&f);
        assert_eq!(s.values(), &[0, 0, 1]);
        assert_eq!(i.values(), &[1, 0]);
        assert!(i.is_injective());
        assert_eq!(compose(s.as_map(), &i).unwrap(), f);
    }

    #[test]
    fn image_factorization_of_injection_is_bijection() {
        let f = SetMap::new(5, vec![4, 0, 2]).unwrap();
        let (s, _) = image_factorization(&f);
        assert!(s.as_map().is_bijective());
    }

    #[test]
    fn restriction_example_via_image_factorization() {
        // π = {{1,2},{3,4,5},{6}} renamed to 0..5, restricted to A = {1,3,4,6}.
        let pi = surj(3, &[0, 0, 1, 1, 1, 2]);
        let inclusion = SetMap::new(6, vec![0, 2, 3, 5]).unwrap();
        let (s, _) = image_factorization(&compose(&inclusion, pi.as_map()).unwrap());
        assert_eq!(s.values(), &[0, 1, 1, 2]);
        let mut sizes = s.fiber_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2]);
    }

    #[test]
    fn pushout_examples() {
        let p = surj(3, &[0, 0, 1, 1, 1, 2]);
        let t = surj(3, &[0, 0, 1, 1, 2, 0]);
        let (l, r, i) = pushout(&p, &t).unwrap();
        assert_eq!(i.size(), 2);
        assert_eq!(p.then(&l).unwrap(), t.then(&r).unwrap());
        assert_eq!(p.then(&l).unwrap().values(), &[0, 0, 1, 1, 1, 0]);

        let (l, r, i) = pushout(&p, &p).unwrap();
        assert_eq!(i.size(), 3);
        assert!(l.as_map().is_bijective() && r.as_map().is_bijective());

        let (_, _, i) = pushout(&Surjection::identity(4), &Surjection::to_point(4)).unwrap();
        assert_eq!(i.size(), 1);
    }

    #[test]
    fn pushout_of_empty() {
        let e = Surjection::identity(0);
        let (l, r, i) = pushout(&e, &e).unwrap();
        assert_eq!((l.dom(), r.dom(), i.size()), (0, 0, 0));
    }

    #[test]
    fn pullback_examples() {
        let a = surj(3, &[2, 0, 1, 1]);
        let (p, pr1, _) = pullback(&a, &Surjection::identity(3)).unwrap();
        assert_eq!(p.size(), 4);
        assert!(pr1.is_bijective());

        let (p, pr1, pr2) = pullback(&Surjection::to_point(2), &Surjection::to_point(3)).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(pr1.values(), &[0, 0, 0, 1, 1, 1]);
        assert_eq!(pr2.values(), &[0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn pullback_of_example_pushout_legs() {
        let p = surj(3, &[0, 0, 1, 1, 1, 2]);
        let t = surj(3, &[0, 0, 1, 1, 2, 0]);
        let (l, r, i) = pushout(&p, &t).unwrap();
        // fiber-product oracle: count pairs agreeing over I.
        let mut expected = 0;
        for c in 0..i.size() {
            let fa = l.values().iter().filter(|&&v| v == c).count();
            let fb = r.values().iter().filter(|&&v| v == c).count();
            expected += fa * fb;
        }
        let (pb, pr1, pr2) = pullback(&l, &r).unwrap();
        assert_eq!(pb.size(), expected);
        assert_eq!(expected, 4);
        assert!(pr1.is_surjective() && pr2.is_surjective());
    }

    #[test]
    fn comparison_map_examples() {
        let id = Surjection::identity(3);
        assert!(comparison_map(&id, &id).unwrap().is_bijective());

        let p = surj(3, &[0, 0, 1, 1, 1, 2]);
        let t = surj(3, &[0, 0, 1, 1, 2, 0]);
        let phi = comparison_map(&p, &t).unwrap();
        assert_eq!(phi.image_size(), 4);

        let phi = comparison_map(&Surjection::to_point(2), &Surjection::identity(2)).unwrap();
        assert!(phi.is_injective());
    }

    #[test]
    fn pushout_is_symmetric_up_to_iso() {
        for n in 0..=4 {
            for p in crate::partition::all_partitions(n) {
                for t in crate::partition::all_partitions(n) {
                    let (ps, ts) = (p.to_surjection(), t.to_surjection());
                    let (l, _, i) = pushout(&ps, &ts).unwrap();
                    let (_, r2, i2) = pushout(&ts, &ps).unwrap();
                    assert_eq!(i.size(), i2.size());
                    let a = ps.then(&l).unwrap();
                    let b = ps.then(&r2).unwrap();
                    assert!(!surjection_isos(&a, &b).is_empty());
                    assert!(factor_through(&a, &b).unwrap().unwrap().as_map().is_bijective());
                }
            }
        }
    }

    #[test]
    fn pullback_of_surjections_is_a_pushout() {
        for n in 0..=4 {
            for k in 0..=n {
                for a in all_surjections(n, k).into_iter().take(30) {
                    for m in k..=4 {
                        for b in all_surjections(m, k).into_iter().take(30) {
                            let (_, pr1, pr2) = pullback(&a, &b).unwrap();
                            let pr1 = Surjection::try_from_map(pr1).unwrap();
                            let pr2 = Surjection::try_from_map(pr2).unwrap();
                            let (l, r, i) = pushout(&pr1, &pr2).unwrap();
                            assert_eq!(i.size(), k);
                            // the pushout legs agree with a and b up to a bijection of I
                            let gl = factor_through(&l, &a).unwrap().unwrap();
                            assert!(gl.as_map().is_bijective());
                            assert_eq!(l.then(&gl).unwrap(), a);
                            assert_eq!(r.then(&gl).unwrap(), b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factor_through_detects_refinement() {
        let fine = surj(3, &[0, 0, 1, 2]);
        let coarse = surj(2, &[0, 0, 0, 1]);
        let h = factor_through(&fine, &coarse).unwrap().unwrap();
        assert_eq!(fine.then(&h).unwrap(), coarse);
        assert!(factor_through(&coarse, &fine).unwrap().is_none());
    }

    #[test]
    fn surjection_serde_roundtrip_and_validation() {
        let s = surj(2, &[1, 0, 1]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"dom":3,"cod":2,"values":[1,0,1]}"#);
        assert_eq!(serde_json::from_str::<Surjection>(&json).unwrap(), s);
        assert!(serde_json::from_str::<Surjection>(r#"{"dom":2,"cod":2,"values":[0,0]}"#).is_err());
        assert!(serde_json::from_str::<Surjection>(r#"{"dom":3,"cod":1,"values":[0,0]}"#).is_err());
    }

    #[test]
    fn surjection_iso_count_is_aut() {
        let s = surj(2, &[0, 1, 1]);
        assert_eq!(surjection_isos(&s, &s).len(), 2);
        assert_eq!(all_surjections(3, 2).len(), 6);
        let t = surj(2, &[1, 0, 0]);
        assert_eq!(surjection_isos(&s, &t).len(), 2);
    }

    #[test]
    fn labels_are_display_only() {
        let s = FinSet::with_labels(vec!["a".into(), "b".into()]);
        assert_eq!(s.size(), 2);
        assert_eq!(s.label(1), "b");
        assert_eq!(FinSet::new(2).label(1), "1");
    }
}
