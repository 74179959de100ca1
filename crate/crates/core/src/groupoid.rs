//! Finite groupoids presented extensionally: a list of objects plus an oracle
//! that returns every isomorphism between two objects.
//!
//! This is the counting layer. Homotopy cardinality `|X| = Σ_{x ∈ π₀X} 1/|aut x|`
//! turns the diagram groupoids built elsewhere into exact rationals.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::finset::{self, Surjection};
use crate::partition::Partition;
use crate::perm::{self, Perm};
use crate::rational::{self, Q};

/// Isomorphism structure on a type of objects.
pub trait IsoOracle<O, A>: Send + Sync {
    /// Every isomorphism `from → to` (empty when the objects are not isomorphic).
    fn isos(&self, from: &O, to: &O) -> Vec<A>;

    /// `second ∘ first`.
    fn compose(&self, first: &A, second: &A) -> A;

    fn identity(&self, x: &O) -> A;

    fn is_isomorphic(&self, a: &O, b: &O) -> bool {
        !self.isos(a, b).is_empty()
    }

    /// A complete invariant, when one is cheap: equal keys iff isomorphic.
    fn class_key(&self, _x: &O) -> Option<Vec<usize>> {
        None
    }
}

/// A finite groupoid: explicit object list, isomorphisms from an oracle.
pub struct EnumeratedGroupoid<O, A> {
    objects: Vec<O>,
    oracle: Arc<dyn IsoOracle<O, A>>,
}

impl<O: Clone, A> Clone for EnumeratedGroupoid<O, A> {
    fn clone(&self) -> Self {
        EnumeratedGroupoid {
            objects: self.objects.clone(),
            oracle: Arc::clone(&self.oracle),
        }
    }
}

impl<O, A> EnumeratedGroupoid<O, A> {
    pub fn new(objects: Vec<O>, oracle: Arc<dyn IsoOracle<O, A>>) -> Self {
        EnumeratedGroupoid { objects, oracle }
    }

    pub fn objects(&self) -> &[O] {
        &self.objects
    }

    pub fn oracle(&self) -> &Arc<dyn IsoOracle<O, A>> {
        &self.oracle
    }

    pub fn isos(&self, from: &O, to: &O) -> Vec<A> {
        self.oracle.isos(from, to)
    }

    pub fn aut_size(&self, x: &O) -> usize {
        self.oracle.isos(x, x).len()
    }

    /// Class index of every object, classes numbered by first occurrence, and
    /// the representative (first occurrence) of each class.
    pub fn classes(&self) -> (Vec<usize>, Vec<usize>) {
        let mut class_of = Vec::with_capacity(self.objects.len());
        let mut reps: Vec<usize> = Vec::new();
        let mut by_key: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, x) in self.objects.iter().enumerate() {
            let class = match self.oracle.class_key(x) {
                Some(key) => *by_key.entry(key).or_insert_with(|| {
                    reps.push(i);
                    reps.len() - 1
                }),
                None => match reps
                    .iter()
                    .position(|&r| self.oracle.is_isomorphic(&self.objects[r], x))
                {
                    Some(c) => c,
                    None => {
                        reps.push(i);
                        reps.len() - 1
                    }
                },
            };
            class_of.push(class);
        }
        (class_of, reps)
    }

    /// Index of the class of an arbitrary object among the representatives, if any.
    pub fn class_of(&self, reps: &[usize], x: &O) -> Option<usize> {
        match self.oracle.class_key(x) {
            Some(key) => reps
                .iter()
                .position(|&r| self.oracle.class_key(&self.objects[r]).as_ref() == Some(&key)),
            None => reps
                .iter()
                .position(|&r| self.oracle.is_isomorphic(&self.objects[r], x)),
        }
    }
}

/// Representatives of `π₀(G)`, chosen as first occurrences in object order.
pub fn pi0<O, A>(g: &EnumeratedGroupoid<O, A>) -> Vec<&O> {
    g.classes().1.into_iter().map(|i| &g.objects[i]).collect()
}

pub fn aut_size<O, A>(g: &EnumeratedGroupoid<O, A>, x: &O) -> usize {
    g.aut_size(x)
}

/// `Σ_{x ∈ π₀} 1/|aut(x)|`.
pub fn homotopy_cardinality<O, A>(g: &EnumeratedGroupoid<O, A>) -> Q {
    pi0(g)
        .into_iter()
        .map(|x| rational::q(1, g.aut_size(x) as i64))
        .sum()
}

/// Diagnostic dump of `π₀` with automorphism group orders.
pub fn pi0_report<O, A>(
    g: &EnumeratedGroupoid<O, A>,
    describe: impl Fn(&O) -> serde_json::Value,
) -> serde_json::Value {
    let classes: Vec<serde_json::Value> = pi0(g)
        .into_iter()
        .map(|x| serde_json::json!({ "object": describe(x), "aut": g.aut_size(x) }))
        .collect();
    serde_json::json!({
        "classes": classes,
        "homotopy_cardinality": rational::to_string(&homotopy_cardinality(g)),
    })
}

type ObjectFn<O1, O2> = Arc<dyn Fn(&O1) -> O2 + Send + Sync>;
type ArrowFn<O1, A1, A2> = Arc<dyn Fn(&O1, &A1) -> A2 + Send + Sync>;

/// A functor between enumerated groupoids. `on_arrows` receives the source
/// object of the arrow together with the arrow.
pub struct GroupoidMap<'a, O1, A1, O2, A2> {
    pub source: &'a EnumeratedGroupoid<O1, A1>,
    pub target: &'a EnumeratedGroupoid<O2, A2>,
    on_objects: ObjectFn<O1, O2>,
    on_arrows: ArrowFn<O1, A1, A2>,
}

impl<'a, O1, A1, O2, A2> GroupoidMap<'a, O1, A1, O2, A2> {
    pub fn new(
        source: &'a EnumeratedGroupoid<O1, A1>,
        target: &'a EnumeratedGroupoid<O2, A2>,
        on_objects: impl Fn(&O1) -> O2 + Send + Sync + 'static,
        on_arrows: impl Fn(&O1, &A1) -> A2 + Send + Sync + 'static,
    ) -> Self {
        GroupoidMap {
            source,
            target,
            on_objects: Arc::new(on_objects),
            on_arrows: Arc::new(on_arrows),
        }
    }

    pub fn map_object(&self, x: &O1) -> O2 {
        (self.on_objects)(x)
    }

    pub fn map_arrow(&self, from: &O1, a: &A1) -> A2 {
        (self.on_arrows)(from, a)
    }
}

impl<'a, O1, A1: PartialEq, O2, A2: PartialEq> GroupoidMap<'a, O1, A1, O2, A2> {
    /// Spot check of functoriality on every pair of composable isomorphisms
    /// among the first `limit` source objects.
    pub fn is_functorial(&self, limit: usize) -> bool {
        let objs = &self.source.objects()[..self.source.objects().len().min(limit)];
        let (src, tgt) = (self.source.oracle(), self.target.oracle());
        for x in objs {
            let fx = self.map_object(x);
            if self.map_arrow(x, &src.identity(x)) != tgt.identity(&fx) {
                return false;
            }
            for y in objs {
                for a in src.isos(x, y) {
                    for z in objs {
                        for b in src.isos(y, z) {
                            let lhs = self.map_arrow(x, &src.compose(&a, &b));
                            let rhs = tgt.compose(&self.map_arrow(x, &a), &self.map_arrow(y, &b));
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

type KeyFn<O> = Arc<dyn Fn(&O) -> Vec<usize> + Send + Sync>;

struct FiberOracle<O1, A1, O2, A2> {
    source: Arc<dyn IsoOracle<O1, A1>>,
    target: Arc<dyn IsoOracle<O2, A2>>,
    on_arrows: ArrowFn<O1, A1, A2>,
    key: Option<KeyFn<(O1, A2)>>,
}

impl<O1, A1, O2, A2: PartialEq> IsoOracle<(O1, A2), A1> for FiberOracle<O1, A1, O2, A2> {
    fn isos(&self, from: &(O1, A2), to: &(O1, A2)) -> Vec<A1> {
        self.source
            .isos(&from.0, &to.0)
            .into_iter()
            .filter(|alpha| {
                let f_alpha = (self.on_arrows)(&from.0, alpha);
                self.target.compose(&f_alpha, &to.1) == from.1
            })
            .collect()
    }

    fn compose(&self, first: &A1, second: &A1) -> A1 {
        self.source.compose(first, second)
    }

    fn identity(&self, x: &(O1, A2)) -> A1 {
        self.source.identity(&x.0)
    }

    fn class_key(&self, x: &(O1, A2)) -> Option<Vec<usize>> {
        self.key.as_ref().map(|k| k(x))
    }
}

/// Homotopy fiber of `f` over `b`: objects `(x, φ : f(x) → b)`, arrows
/// `α : x → x'` with `φ' ∘ f(α) = φ`.
pub fn homotopy_fiber<O1, A1, O2, A2>(
    f: &GroupoidMap<'_, O1, A1, O2, A2>,
    b: &O2,
) -> EnumeratedGroupoid<(O1, A2), A1>
where
    O1: Clone + 'static,
    A1: 'static,
    O2: 'static,
    A2: PartialEq + 'static,
{
    build_fiber(f, b, None)
}

/// [`homotopy_fiber`] with a complete invariant for its objects, used to skip
/// pairwise isomorphism search when computing `π₀`.
pub fn homotopy_fiber_keyed<O1, A1, O2, A2>(
    f: &GroupoidMap<'_, O1, A1, O2, A2>,
    b: &O2,
    key: impl Fn(&(O1, A2)) -> Vec<usize> + Send + Sync + 'static,
) -> EnumeratedGroupoid<(O1, A2), A1>
where
    O1: Clone + 'static,
    A1: 'static,
    O2: 'static,
    A2: PartialEq + 'static,
{
    build_fiber(f, b, Some(Arc::new(key)))
}

fn build_fiber<O1, A1, O2, A2>(
    f: &GroupoidMap<'_, O1, A1, O2, A2>,
    b: &O2,
    key: Option<KeyFn<(O1, A2)>>,
) -> EnumeratedGroupoid<(O1, A2), A1>
where
    O1: Clone + 'static,
    A1: 'static,
    O2: 'static,
    A2: PartialEq + 'static,
{
    let tgt = f.target.oracle();
    let objects = f
        .source
        .objects()
        .iter()
        .flat_map(|x| {
            tgt.isos(&f.map_object(x), b)
                .into_iter()
                .map(move |phi| (x.clone(), phi))
        })
        .collect();
    let oracle = FiberOracle {
        source: Arc::clone(f.source.oracle()),
        target: Arc::clone(tgt),
        on_arrows: Arc::clone(&f.on_arrows),
        key,
    };
    EnumeratedGroupoid::new(objects, Arc::new(oracle))
}

/// Homotopy cardinality `|p| = Σ_b |Y_b|/|aut b| δ_b` of a map `p : Y → B`,
/// keyed by the index (into `B`'s object list) of each class representative.
///
/// Computed through the action-groupoid identity
/// `|Y_b|/|aut b| = Σ_{y ∈ π₀Y, p(y) ≅ b} 1/|aut y|`, which avoids building
/// fibers; [`vector_cardinality_via_fibers`] evaluates the definition directly.
pub fn vector_cardinality<O1, A1, O2, A2>(p: &GroupoidMap<'_, O1, A1, O2, A2>) -> Vec<(usize, Q)> {
    let (_, reps) = p.target.classes();
    let mut coeffs = vec![rational::zero(); reps.len()];
    for y in pi0(p.source) {
        let image = p.map_object(y);
        let class = p
            .target
            .class_of(&reps, &image)
            .expect("target groupoid must contain the class of every image");
        coeffs[class] += rational::q(1, p.source.aut_size(y) as i64);
    }
    reps.into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Same as [`vector_cardinality`], evaluated as `|homotopy_fiber(p, b)| / |aut b|`.
pub fn vector_cardinality_via_fibers<O1, A1, O2, A2>(
    p: &GroupoidMap<'_, O1, A1, O2, A2>,
) -> Vec<(usize, Q)>
where
    O1: Clone + 'static,
    A1: 'static,
    O2: 'static,
    A2: PartialEq + 'static,
{
    let (_, reps) = p.target.classes();
    reps.into_iter()
        .filter_map(|r| {
            let b = &p.target.objects()[r];
            let fiber = homotopy_fiber(p, b);
            let c = homotopy_cardinality(&fiber) / rational::q(p.target.aut_size(b) as i64, 1);
            (!c.is_zero()).then_some((r, c))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Standard oracles.

/// Only identities: a set viewed as a groupoid.
pub struct Discrete;

impl<O: PartialEq> IsoOracle<O, ()> for Discrete {
    fn isos(&self, from: &O, to: &O) -> Vec<()> {
        if from == to {
            vec![()]
        } else {
            Vec::new()
        }
    }

    fn compose(&self, _: &(), _: &()) {}

    fn identity(&self, _: &O) {}
}

/// Finite sets `{0..n}` (objects are sizes) with all bijections.
pub struct FinSets;

impl IsoOracle<usize, Perm> for FinSets {
    fn isos(&self, from: &usize, to: &usize) -> Vec<Perm> {
        if from == to {
            perm::all(*from).collect()
        } else {
            Vec::new()
        }
    }

    fn compose(&self, first: &Perm, second: &Perm) -> Perm {
        perm::compose(first, second)
    }

    fn identity(&self, x: &usize) -> Perm {
        perm::identity(*x)
    }

    fn class_key(&self, x: &usize) -> Option<Vec<usize>> {
        Some(vec![*x])
    }
}

/// A finite permutation group as a one-object groupoid. The element list must
/// be closed under composition and contain the identity.
pub struct PermGroup {
    elements: Vec<Perm>,
    degree: usize,
}

impl PermGroup {
    pub fn new(degree: usize, elements: Vec<Perm>) -> Self {
        PermGroup { elements, degree }
    }

    /// The group axioms on the stored elements.
    pub fn is_group(&self) -> bool {
        let has_id = self.elements.contains(&perm::identity(self.degree));
        let closed = self.elements.iter().all(|a| {
            self.elements
                .iter()
                .all(|b| self.elements.contains(&perm::compose(a, b)))
        });
        has_id && closed
    }
}

impl IsoOracle<(), Perm> for PermGroup {
    fn isos(&self, _: &(), _: &()) -> Vec<Perm> {
        self.elements.clone()
    }

    fn compose(&self, first: &Perm, second: &Perm) -> Perm {
        perm::compose(first, second)
    }

    fn identity(&self, _: &()) -> Perm {
        perm::identity(self.degree)
    }
}

/// Surjections with commuting pairs of bijections `(α on domain, β on codomain)`.
pub struct Surjections;

impl IsoOracle<Surjection, (Perm, Perm)> for Surjections {
    fn isos(&self, from: &Surjection, to: &Surjection) -> Vec<(Perm, Perm)> {
        finset::surjection_isos(from, to)
    }

    fn compose(&self, first: &(Perm, Perm), second: &(Perm, Perm)) -> (Perm, Perm) {
        (perm::compose(&first.0, &second.0), perm::compose(&first.1, &second.1))
    }

    fn identity(&self, x: &Surjection) -> (Perm, Perm) {
        (perm::identity(x.dom()), perm::identity(x.cod()))
    }

    fn class_key(&self, x: &Surjection) -> Option<Vec<usize>> {
        let lambda = crate::lambda::Lambda::from_block_sizes(x.fiber_sizes());
        // the zero-size fibers cannot occur for surjections, so λ is complete
        Some(lambda.pairs().iter().flat_map(|&(s, m)| [s, m]).collect())
    }
}

/// Partitions of a fixed ground set; arrows are element bijections carrying
/// blocks to blocks.
pub struct Partitions;

impl IsoOracle<Partition, Perm> for Partitions {
    fn isos(&self, from: &Partition, to: &Partition) -> Vec<Perm> {
        if from.ground_size() != to.ground_size() {
            return Vec::new();
        }
        perm::all(from.ground_size())
            .filter(|p| from.permute(p) == *to)
            .collect()
    }

    fn compose(&self, first: &Perm, second: &Perm) -> Perm {
        perm::compose(first, second)
    }

    fn identity(&self, x: &Partition) -> Perm {
        perm::identity(x.ground_size())
    }

    fn class_key(&self, x: &Partition) -> Option<Vec<usize>> {
        let lambda = x.lambda_type();
        let mut key = vec![x.ground_size()];
        key.extend(lambda.pairs().iter().flat_map(|&(s, m)| [s, m]));
        Some(key)
    }
}

/// Disjoint union of two groupoids over the same object and arrow types.
pub fn disjoint_union<O, A>(g: &EnumeratedGroupoid<O, A>, h: &EnumeratedGroupoid<O, A>) -> EnumeratedGroupoid<(bool, O), A>
where
    O: Clone + 'static,
    A: 'static,
{
    struct Union<O, A> {
        left: Arc<dyn IsoOracle<O, A>>,
        right: Arc<dyn IsoOracle<O, A>>,
    }
    impl<O, A> IsoOracle<(bool, O), A> for Union<O, A> {
        fn isos(&self, from: &(bool, O), to: &(bool, O)) -> Vec<A> {
            match (from.0, to.0) {
                (false, false) => self.left.isos(&from.1, &to.1),
                (true, true) => self.right.isos(&from.1, &to.1),
                _ => Vec::new(),
            }
        }
        fn compose(&self, first: &A, second: &A) -> A {
            self.left.compose(first, second)
        }
        fn identity(&self, x: &(bool, O)) -> A {
            if x.0 {
                self.right.identity(&x.1)
            } else {
                self.left.identity(&x.1)
            }
        }
    }
    let objects = g
        .objects()
        .iter()
        .map(|x| (false, x.clone()))
        .chain(h.objects().iter().map(|x| (true, x.clone())))
        .collect();
    EnumeratedGroupoid::new(
        objects,
        Arc::new(Union {
            left: Arc::clone(g.oracle()),
            right: Arc::clone(h.oracle()),
        }),
    )
}

/// Cartesian product of two groupoids.
pub fn product<O1, A1, O2, A2>(
    g: &EnumeratedGroupoid<O1, A1>,
    h: &EnumeratedGroupoid<O2, A2>,
) -> EnumeratedGroupoid<(O1, O2), (A1, A2)>
where
    O1: Clone + 'static,
    A1: Clone + 'static,
    O2: Clone + 'static,
    A2: Clone + 'static,
{
    struct Prod<O1, A1, O2, A2> {
        left: Arc<dyn IsoOracle<O1, A1>>,
        right: Arc<dyn IsoOracle<O2, A2>>,
    }
    impl<O1, A1: Clone, O2, A2: Clone> IsoOracle<(O1, O2), (A1, A2)> for Prod<O1, A1, O2, A2> {
        fn isos(&self, from: &(O1, O2), to: &(O1, O2)) -> Vec<(A1, A2)> {
            let rights = self.right.isos(&from.1, &to.1);
            self.left
                .isos(&from.0, &to.0)
                .into_iter()
                .flat_map(|a| rights.iter().map(move |b| (a.clone(), b.clone())))
                .collect()
        }
        fn compose(&self, first: &(A1, A2), second: &(A1, A2)) -> (A1, A2) {
            (
                self.left.compose(&first.0, &second.0),
                self.right.compose(&first.1, &second.1),
            )
        }
        fn identity(&self, x: &(O1, O2)) -> (A1, A2) {
            (self.left.identity(&x.0), self.right.identity(&x.1))
        }
    }
    let objects = g
        .objects()
        .iter()
        .flat_map(|x| h.objects().iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    EnumeratedGroupoid::new(
        objects,
        Arc::new(Prod {
            left: Arc::clone(g.oracle()),
            right: Arc::clone(h.oracle()),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::Lambda;
    use num_bigint::BigUint;
    use crate::partition::all_partitions;
    use crate::rational::{from_int, q};

    fn discrete(n: usize) -> EnumeratedGroupoid<usize, ()> {
        EnumeratedGroupoid::new((0..n).collect(), Arc::new(Discrete))
    }

    fn symmetric_group(n: usize) -> EnumeratedGroupoid<(), Perm> {
        EnumeratedGroupoid::new(vec![()], Arc::new(PermGroup::new(n, perm::all(n).collect())))
    }

    fn labelled_surjections(n: usize, k: usize) -> EnumeratedGroupoid<Surjection, (Perm, Perm)> {
        EnumeratedGroupoid::new(finset::all_surjections(n, k), Arc::new(Surjections))
    }

    #[test]
    fn discrete_groupoid() {
        let g = discrete(7);
        assert_eq!(pi0(&g).len(), 7);
        assert!(pi0(&g).iter().all(|x| g.aut_size(x) == 1));
        assert_eq!(homotopy_cardinality(&g), from_int(7));
    }

    #[test]
    fn group_as_one_object() {
        let g = symmetric_group(3);
        assert_eq!(homotopy_cardinality(&g), q(1, 6));
        let group = PermGroup::new(3, perm::all(3).collect());
        assert!(group.is_group());
        assert!(!PermGroup::new(3, vec![vec![1, 2, 0]]).is_group());
    }

    #[test]
    fn surjections_three_onto_two() {
        let g = labelled_surjections(3, 2);
        assert_eq!(g.objects().len(), 6);
        let reps = pi0(&g);
        assert_eq!(reps.len(), 1);
        assert_eq!(g.aut_size(reps[0]), 2);
        // brute force without the class key
        let slow = EnumeratedGroupoid::new(g.objects().to_vec(), Arc::new(NoKey(Surjections)));
        assert_eq!(pi0(&slow).len(), 1);
    }

    struct NoKey<T>(T);
    impl<O, A, T: IsoOracle<O, A>> IsoOracle<O, A> for NoKey<T> {
        fn isos(&self, a: &O, b: &O) -> Vec<A> {
            self.0.isos(a, b)
        }
        fn compose(&self, f: &A, g: &A) -> A {
            self.0.compose(f, g)
        }
        fn identity(&self, x: &O) -> A {
            self.0.identity(x)
        }
    }

    #[test]
    fn partitions_of_three_set() {
        let g = EnumeratedGroupoid::new(all_partitions(3), Arc::new(Partitions));
        assert_eq!(pi0(&g).len(), 3);
        assert_eq!(homotopy_cardinality(&g), q(5, 6));
        let slow = EnumeratedGroupoid::new(all_partitions(3), Arc::new(NoKey(Partitions)));
        assert_eq!(homotopy_cardinality(&slow), q(5, 6));
        let by_formula: Q = Lambda::of_weight(3)
            .iter()
            .map(|l| rational::recip_biguint(&l.aut_count()))
            .sum();
        assert_eq!(by_formula, q(5, 6));
    }

    #[test]
    fn oracle_invariants_on_partitions() {
        let objs = all_partitions(3);
        let oracle = Partitions;
        for x in &objs {
            let auts = oracle.isos(x, x);
            assert!(auts.contains(&oracle.identity(x)));
            for a in &auts {
                for b in &auts {
                    assert!(auts.contains(&oracle.compose(a, b)));
                }
            }
            for y in &objs {
                if oracle.is_isomorphic(x, y) {
                    for z in &objs {
                        assert_eq!(oracle.isos(x, z).len(), oracle.isos(y, z).len());
                    }
                }
            }
        }
    }

    #[test]
    fn sum_and_product_cardinalities() {
        let g = EnumeratedGroupoid::new(all_partitions(3), Arc::new(Partitions));
        let h = EnumeratedGroupoid::new(all_partitions(2), Arc::new(Partitions));
        let u = disjoint_union(&g, &h);
        assert_eq!(
            homotopy_cardinality(&u),
            homotopy_cardinality(&g) + homotopy_cardinality(&h)
        );
        let p = product(&g, &h);
        assert_eq!(
            homotopy_cardinality(&p),
            homotopy_cardinality(&g) * homotopy_cardinality(&h)
        );
    }

    #[test]
    fn shuffling_objects_changes_nothing() {
        let mut objs = all_partitions(4);
        let g = EnumeratedGroupoid::new(objs.clone(), Arc::new(NoKey(Partitions)));
        objs.reverse();
        objs.rotate_left(5);
        let h = EnumeratedGroupoid::new(objs, Arc::new(NoKey(Partitions)));
        assert_eq!(pi0(&g).len(), pi0(&h).len());
        assert_eq!(homotopy_cardinality(&g), homotopy_cardinality(&h));
    }

    #[test]
    fn fiber_of_identity_is_contractible() {
        let g = EnumeratedGroupoid::new(all_partitions(3), Arc::new(Partitions));
        let id = GroupoidMap::new(&g, &g, |x: &Partition| x.clone(), |_, a: &Perm| a.clone());
        assert!(id.is_functorial(5));
        for b in pi0(&g) {
            let fiber = homotopy_fiber(&id, b);
            assert_eq!(homotopy_cardinality(&fiber), from_int(1));
        }
        let vc = vector_cardinality(&id);
        for (r, c) in &vc {
            assert_eq!(*c, rational::recip_biguint(&BigUint::from(g.aut_size(&g.objects()[*r]))));
        }
    }

    #[test]
    fn name_map_gives_delta() {
        let g = EnumeratedGroupoid::new(all_partitions(3), Arc::new(Partitions));
        let b = Partition::from_blocks(3, &[vec![0], vec![1, 2]]).unwrap();
        let point = discrete(1);
        let bb = b.clone();
        let name = GroupoidMap::new(&point, &g, move |_| bb.clone(), |_, _| perm::identity(3));
        // fiber over b is iso(b, b) as a discrete set
        let fiber = homotopy_fiber(&name, &b);
        assert_eq!(homotopy_cardinality(&fiber), from_int(2));
        let vc = vector_cardinality(&name);
        assert_eq!(vc.len(), 1);
        assert_eq!(g.objects()[vc[0].0].lambda_type(), b.lambda_type());
        assert_eq!(vc[0].1, from_int(1));
        assert_eq!(vector_cardinality_via_fibers(&name), vc);

        let two = discrete(2);
        let bb = b.clone();
        let twice = GroupoidMap::new(&two, &g, move |_| bb.clone(), |_, _| perm::identity(3));
        let vc = vector_cardinality(&twice);
        assert_eq!(vc[0].1, from_int(2));
    }

    #[test]
    fn vector_cardinality_of_labelled_surjections() {
        for n in 1..=4 {
            let all: Vec<Surjection> = (1..=n).flat_map(|k| finset::all_surjections(n, k)).collect();
            let target = EnumeratedGroupoid::new(all.clone(), Arc::new(Surjections));
            let labelled = EnumeratedGroupoid::new(all, Arc::new(Discrete));
            let inclusion = GroupoidMap::new(
                &labelled,
                &target,
                |s: &Surjection| s.clone(),
                |s: &Surjection, _| (perm::identity(s.dom()), perm::identity(s.cod())),
            );
            let vc = vector_cardinality(&inclusion);
            let via_fibers = vector_cardinality_via_fibers(&inclusion);
            assert_eq!(vc, via_fibers);
            for (r, c) in vc {
                let s = &target.objects()[r];
                let lambda = Lambda::from_block_sizes(s.fiber_sizes());
                // n! k! / aut(λ) labelled surjections of type λ
                let expected = rational::from_biguint(
                    &(crate::lambda::factorial(n) * crate::lambda::factorial(s.cod())),
                ) / rational::from_biguint(&lambda.aut_count());
                assert_eq!(c, expected);
            }
        }
    }

    #[test]
    fn vector_cardinality_stable_under_iso_replacement() {
        let g = EnumeratedGroupoid::new(all_partitions(3), Arc::new(Partitions));
        let point = discrete(1);
        let b1 = Partition::from_blocks(3, &[vec![0], vec![1, 2]]).unwrap();
        let b2 = Partition::from_blocks(3, &[vec![1], vec![0, 2]]).unwrap();
        let (c1, c2) = (b1.clone(), b2.clone());
        let m1 = GroupoidMap::new(&point, &g, move |_| c1.clone(), |_, _| perm::identity(3));
        let m2 = GroupoidMap::new(&point, &g, move |_| c2.clone(), |_, _| perm::identity(3));
        assert_eq!(vector_cardinality(&m1), vector_cardinality(&m2));
        assert_eq!(
            homotopy_cardinality(&homotopy_fiber(&m1, &b2)),
            homotopy_cardinality(&homotopy_fiber(&m2, &b2))
        );
    }

    #[test]
    fn report_is_json() {
        let g = EnumeratedGroupoid::new(all_partitions(3), Arc::new(Partitions));
        let r = pi0_report(&g, |p| serde_json::to_value(p).unwrap());
        assert_eq!(r["classes"].as_array().unwrap().len(), 3);
        assert_eq!(r["homotopy_cardinality"], "5/6");
    }
}
