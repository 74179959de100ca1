//! Incidence bialgebras of the two simplicial groupoids.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_bound, Error, Result};
use crate::finset::{self, Surjection};
use crate::groupoid::{self, EnumeratedGroupoid};
use crate::lambda::{factorial, Lambda};
use crate::partition::{all_partitions, enumerate_transversals, Partition};
use crate::perm::{self, Perm};
use crate::rational::{self, Q};
use crate::simplicial::{
    nested_monomial, ns_two_simplices_over, ts_two_simplices_over, NSSimplex, Simplex, SimplexIsos, TSSimplex,
};

/// A commutative monomial in the generators `δ_λ` (`λ ≠ 0`), stored as the
/// sorted multiset of its factors. The empty monomial is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<Lambda>);

impl Monomial {
    pub fn new(mut factors: Vec<Lambda>) -> Self {
        assert!(factors.iter().all(|l| !l.is_zero()), "generators are nonzero types");
        factors.sort();
        Monomial(factors)
    }

    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(lambda: Lambda) -> Self {
        Monomial::new(vec![lambda])
    }

    /// The one-variable generator `δ_n`, stored as the type with a single block of size `n`.
    pub fn fdb_generator(n: usize) -> Self {
        Monomial::generator(Lambda::single(n, 1))
    }

    pub fn factors(&self) -> &[Lambda] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Total weight `Σ weight(λ)` over the factors.
    pub fn weight(&self) -> usize {
        self.0.iter().map(Lambda::weight).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Factors with multiplicities, in sorted order.
    pub fn powers(&self) -> Vec<(&Lambda, usize)> {
        let mut out: Vec<(&Lambda, usize)> = Vec::new();
        for l in &self.0 {
            match out.last_mut() {
                Some((last, k)) if *last == l => *k += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    /// Every monomial of total weight `≤ max`, the unit first.
    pub fn all_up_to_weight(max: usize) -> Vec<Monomial> {
        let gens: Vec<Lambda> = Lambda::up_to_weight(max).into_iter().filter(|l| !l.is_zero()).collect();
        let mut out = Vec::new();
        fn extend(gens: &[Lambda], start: usize, budget: usize, current: &mut Vec<Lambda>, out: &mut Vec<Monomial>) {
            out.push(Monomial(current.clone()));
            for (i, g) in gens.iter().enumerate().skip(start) {
                if g.weight() <= budget {
                    current.push(g.clone());
                    extend(gens, i, budget - g.weight(), current, out);
                    current.pop();
                }
            }
        }
        let mut sorted = gens;
        sorted.sort();
        extend(&sorted, 0, max, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| (a.weight(), a).cmp(&(b.weight(), b)));
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .powers()
            .into_iter()
            .map(|(l, k)| if k == 1 { format!("A{l}") } else { format!("A{l}^{k}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

// ---------------------------------------------------------------------------
// Polynomials and tensors

/// A polynomial in the generators with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::term(Monomial::unit(), rational::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(lambda: Lambda) -> Self {
        Poly::term(Monomial::generator(lambda), rational::one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        add_into(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut out = Poly::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<PolyTermJson> = self
            .terms
            .iter()
            .map(|(m, c)| PolyTermJson {
                monomial: m.clone(),
                coeff: rational::to_string(c),
            })
            .collect();
        serde_json::to_value(terms).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly> {
        let terms: Vec<PolyTermJson> = serde_json::from_value(v.clone()).map_err(json_error)?;
        let mut p = Poly::zero();
        for t in terms {
            p.add_term(t.monomial, rational::parse(&t.coeff)?);
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| scaled(c, &m.to_string())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of the tensor square, `Σ c · a ⊗ b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(Monomial, Monomial), Q>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn one() -> Self {
        let mut t = TensorPoly::zero();
        t.add_term(Monomial::unit(), Monomial::unit(), rational::one());
        t
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: Q) {
        add_into(&mut self.terms, (left, right), c);
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &Monomial, right: &Monomial) -> Q {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(rational::zero)
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((l, r), d) in &self.terms {
            out.add_term(l.clone(), r.clone(), d * c);
        }
        out
    }

    /// Product in the tensor-square algebra: `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                out.add_term(a.mul(x), b.mul(y), c * d);
            }
        }
        out
    }

    /// Rescale every term by `weight(left) · weight(right)`.
    pub fn reweight(&self, weight: impl Fn(&Monomial) -> Q) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(l.clone(), r.clone(), c * weight(l) * weight(r));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.json_terms()).expect("plain data")
    }

    fn json_terms(&self) -> Vec<TensorTermJson> {
        self.terms
            .iter()
            .map(|((l, r), c)| TensorTermJson {
                left: l.clone(),
                right: r.clone(),
                coeff: rational::to_string(c),
            })
            .collect()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TensorPoly> {
        let terms: Vec<TensorTermJson> = serde_json::from_value(v.clone()).map_err(json_error)?;
        let mut t = TensorPoly::zero();
        for term in terms {
            t.add_term(term.left, term.right, rational::parse(&term.coeff)?);
        }
        Ok(t)
    }

    /// CSV with columns `left-monomial,right-monomial,numerator,denominator`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["left-monomial", "right-monomial", "numerator", "denominator"])
            .expect("in-memory write");
        for ((l, r), c) in &self.terms {
            w.write_record([
                l.to_string(),
                r.to_string(),
                c.numer().to_string(),
                c.denom().to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| scaled(c, &format!("{l} ⊗ {r}")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct PolyTermJson {
    monomial: Monomial,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    left: Monomial,
    right: Monomial,
    coeff: String,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        position: e.column(),
        message: e.to_string(),
    }
}

fn scaled(c: &Q, body: &str) -> String {
    if c.is_one() {
        body.to_string()
    } else {
        format!("{c} {body}")
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}


// ---------------------------------------------------------------------------
// Counit

/// `ε(A_λ) = 1` iff `λ` is a single singleton block; multiplicative on monomials.
/// The same key serves the one-variable view, where `A₁` is the singleton type.
pub fn counit_monomial(m: &Monomial) -> Q {
    let singleton = Lambda::single(1, 1);
    if m.factors().iter().all(|l| *l == singleton) {
        rational::one()
    } else {
        rational::zero()
    }
}

pub fn counit(p: &Poly) -> Q {
    p.terms().iter().map(|(m, c)| c * counit_monomial(m)).sum()
}

/// `∏ aut(λ)` over the factors: `δ_m = aut_product(m) · A_m`.
pub fn aut_product(m: &Monomial) -> Q {
    m.factors()
        .iter()
        .map(|l| rational::from_biguint(&l.aut_count()))
        .product()
}

/// Rewrite a tensor from the `δ` basis into the `A` basis.
pub fn delta_to_a_basis(t: &TensorPoly) -> TensorPoly {
    t.reweight(aut_product)
}

// ---------------------------------------------------------------------------
// Faà di Bruno

pub const DEFAULT_FDB_BOUND: usize = 8;
pub const DEFAULT_PLETHYSTIC_BOUND: usize = 6;

/// `Δ(δₙ)` by enumerating every labelled surjection `{0..n} ↠ {0..k}`, each
/// weighted `1/k!`: the left factor is the monomial of its fiber sizes, the
/// right factor `δ_k`. Generators are the single-block types `{n:1}`.
pub fn fdb_coproduct(n: usize) -> Result<TensorPoly> {
    fdb_coproduct_with_bound(n, DEFAULT_FDB_BOUND)
}

pub fn fdb_coproduct_with_bound(n: usize, bound: usize) -> Result<TensorPoly> {
    if n == 0 {
        return Err(Error::Precondition("Δ(δₙ) needs n ≥ 1".into()));
    }
    check_bound("n", n, bound)?;
    let mut out = TensorPoly::zero();
    for k in 1..=n {
        let weight = rational::recip_biguint(&factorial(k));
        let right = Monomial::fdb_generator(k);
        for a in finset::all_surjections(n, k) {
            let left = Monomial::new(a.fiber_sizes().into_iter().map(|s| Lambda::single(s, 1)).collect());
            out.add_term(left, right.clone(), weight.clone());
        }
    }
    Ok(out)
}

/// Partial Bell polynomial `B_{n,k}(A₁, A₂, …)`: one term per partition of
/// `{0..n}` into `k` blocks.
pub fn bell_polynomial(n: usize, k: usize) -> Result<Poly> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("B_{{n,k}} needs 1 ≤ k ≤ n, got n = {n}, k = {k}")));
    }
    check_bound("n", n, DEFAULT_FDB_BOUND)?;
    let mut out = Poly::zero();
    for p in all_partitions(n).into_iter().filter(|p| p.block_count() == k) {
        let m = Monomial::new(p.block_sizes().into_iter().map(|s| Lambda::single(s, 1)).collect());
        out.add_term(m, rational::one());
    }
    Ok(out)
}

/// `Σ_k B_{n,k} ⊗ A_k`.
pub fn fdb_from_bell(n: usize) -> Result<TensorPoly> {
    let mut out = TensorPoly::zero();
    for k in 1..=n {
        for (m, c) in bell_polynomial(n, k)?.terms() {
            out.add_term(m.clone(), Monomial::fdb_generator(k), c.clone());
        }
    }
    Ok(out)
}

/// `Δ(δ_f)` for a surjection `f : E ↠ B` in the fat nerve: one term per
/// factorization `E ↠ E/κ ↠ B`, i.e. per partition `κ` refining the fibers of `f`.
pub fn ns_coproduct(f: &Surjection) -> Result<TensorPoly> {
    check_bound("domain size", f.dom(), DEFAULT_FDB_BOUND)?;
    let kernel = Partition::from_surjection(f);
    let mut out = TensorPoly::zero();
    for kappa in all_partitions(f.dom()).into_iter().filter(|k| k.refines_unchecked(&kernel)) {
        let first = NSSimplex::from_kernels(&[Partition::bottom(f.dom()), kappa.clone()])?;
        let second = NSSimplex::from_kernels(&[kappa, kernel.clone()])?;
        out.add_term(first.monomial()?, second.monomial()?, rational::one());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Plethystic

/// `Δ(δ_f)` for the 1-simplex `E ↠ E/σ ↠ E/ρ` (`σ ≤ ρ`), in the `δ` basis:
/// one term per labelled pair `(α, β)` with `α ≤ σ`, `α ∧ β = 0̂`, `α, β`
/// commuting and `σ ≤ α ∨ β ≤ ρ`. The left factor is the monomial of
/// `E/α ↠ E/σ ↠ E/(α∨β)`, the right factor that of `E/β ↠ E/(α∨β) ↠ E/ρ`.
/// When `ρ = 1̂` the pairs are exactly the transversals of `σ`.
pub fn transversal_coproduct(sigma: &Partition, rho: &Partition) -> Result<TensorPoly> {
    check_bound("ground set size", sigma.ground_size(), DEFAULT_PLETHYSTIC_BOUND)?;
    if !sigma.refines(rho)? {
        return Err(Error::Precondition("σ must refine ρ".into()));
    }
    let pairs: Vec<(Partition, Partition)> = if rho.is_top() {
        enumerate_transversals(sigma, DEFAULT_PLETHYSTIC_BOUND)?
    } else {
        let all = all_partitions(sigma.ground_size());
        let mut out = Vec::new();
        for alpha in all.iter().filter(|a| a.refines_unchecked(sigma)) {
            for beta in &all {
                let join = alpha.join_unchecked(beta);
                if alpha.meet_unchecked(beta).is_bottom()
                    && alpha.commutes_unchecked(beta)
                    && sigma.refines_unchecked(&join)
                    && join.refines_unchecked(rho)
                {
                    out.push((alpha.clone(), beta.clone()));
                }
            }
        }
        out
    };
    let mut out = TensorPoly::zero();
    for (alpha, beta) in pairs {
        let join = alpha.join_unchecked(&beta);
        out.add_term(
            nested_monomial(&alpha, sigma, &join),
            nested_monomial(&beta, &join, rho),
            rational::one(),
        );
    }
    Ok(out)
}

/// `Δ(δ_f)` for any `TS` 1-simplex, in the `δ` basis.
pub fn transversal_coproduct_of(f: &TSSimplex) -> Result<TensorPoly> {
    let q = f.quotients();
    // set order of a 1-simplex: (0,0), (0,1), (1,1)
    let sigma = Partition::from_surjection(&q[0]);
    let rho = Partition::from_surjection(&q[2]);
    transversal_coproduct(&sigma, &rho)
}

/// `Δ(A_λ)` in the `A` basis, with `δ_λ = aut(λ)·A_λ`: the labelled
/// transversals of a partition of type `λ`, rescaled.
pub fn plethystic_coproduct(lambda: &Lambda) -> Result<TensorPoly> {
    plethystic_coproduct_with_bound(lambda, DEFAULT_PLETHYSTIC_BOUND)
}

pub fn plethystic_coproduct_with_bound(lambda: &Lambda, bound: usize) -> Result<TensorPoly> {
    if lambda.is_zero() {
        return Err(Error::Precondition("generators have nonzero type".into()));
    }
    check_bound("weight", lambda.weight(), bound)?;
    let sigma = partition_of_type(lambda);
    let delta = transversal_coproduct(&sigma, &Partition::top(lambda.weight()))?;
    let a = delta_to_a_basis(&delta);
    Ok(a.scale(&(rational::one() / rational::from_biguint(&lambda.aut_count()))))
}

/// The partition of `{0..weight}` of type `λ` with consecutive blocks, smallest first.
pub fn partition_of_type(lambda: &Lambda) -> Partition {
    let mut labels = Vec::new();
    for (b, size) in lambda.block_sizes().into_iter().enumerate() {
        labels.resize(labels.len() + size, b);
    }
    Partition::from_labels(&labels)
}

// ---------------------------------------------------------------------------
// Coproduct through the Segal formula

/// `Δ(δ_f) = Σ_{a,b} |aut f| · #{φ ∈ iso(d₀a, d₁b) : d₁(a ∪_φ b) ≅ f} / (|aut a||aut b|) · δ_a ⊗ δ_b`,
/// summed over representatives `a, b` of 1-simplex classes, in the `δ` basis.
fn segalcom<S: Simplex>(
    f: &S,
    reps: Vec<S>,
    glue: impl Fn(&S, &[usize], &S) -> Result<S>,
    monomial: impl Fn(&S) -> Result<Monomial>,
) -> Result<TensorPoly> {
    let fkey = f.class_key();
    let groupoid = EnumeratedGroupoid::new(reps, Arc::new(SimplexIsos));
    let aut_f = groupoid.aut_size(f);
    let (first, last) = (S::vertex_position(1, 0), S::vertex_position(1, 1));
    let f_sizes = f.set_sizes();
    let reps = groupoid.objects();
    let auts: Vec<usize> = reps.iter().map(|r| groupoid.aut_size(r)).collect();
    let mut out = TensorPoly::zero();
    for (a, aut_a) in reps.iter().zip(&auts) {
        if a.set_sizes()[first] != f_sizes[first] {
            continue;
        }
        let k = a.set_sizes()[last];
        for (b, aut_b) in reps.iter().zip(&auts) {
            if b.set_sizes()[first] != k || b.set_sizes()[last] != f_sizes[last] {
                continue;
            }
            let hits = perm::all(k)
                .filter(|phi| {
                    glue(a, phi, b)
                        .and_then(|t| t.face(1))
                        .map(|d| d.class_key() == fkey)
                        .unwrap_or(false)
                })
                .count();
            if hits > 0 {
                out.add_term(
                    monomial(a)?,
                    monomial(b)?,
                    rational::q((aut_f * hits) as i64, (aut_a * aut_b) as i64),
                );
            }
        }
    }
    Ok(out)
}

/// Segal-formula coproduct of a fat-nerve 1-simplex.
pub fn segalcom_coproduct_ns(f: &NSSimplex) -> Result<TensorPoly> {
    if f.level() != 1 {
        return Err(Error::InvalidSimplex("expected a 1-simplex".into()));
    }
    check_bound("top set size", f.top_size(), DEFAULT_FDB_BOUND)?;
    let reps = Lambda::up_to_weight(f.top_size())
        .iter()
        .map(|l| NSSimplex::from_chain(vec![partition_of_type(l).to_surjection()]))
        .collect::<Result<Vec<_>>>()?;
    segalcom(f, reps, NSSimplex::glue, NSSimplex::monomial)
}

/// Segal-formula coproduct of a pyramid 1-simplex.
pub fn segalcom_coproduct_ts(f: &TSSimplex) -> Result<TensorPoly> {
    if f.level() != 1 {
        return Err(Error::InvalidSimplex("expected a 1-simplex".into()));
    }
    check_bound("top set size", f.top_size(), DEFAULT_PLETHYSTIC_BOUND)?;
    let reps = Monomial::all_up_to_weight(f.top_size())
        .iter()
        .map(TSSimplex::from_monomial)
        .collect();
    segalcom(f, reps, TSSimplex::glue, TSSimplex::monomial)
}

/// A 1-simplex of either family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneSimplex {
    Ns(NSSimplex),
    Ts(TSSimplex),
}

pub fn segalcom_coproduct(f: &OneSimplex) -> Result<TensorPoly> {
    match f {
        OneSimplex::Ns(s) => segalcom_coproduct_ns(s),
        OneSimplex::Ts(s) => segalcom_coproduct_ts(s),
    }
}

/// `Δ(δ_f)` read off the homotopy fiber of `d₁` over `f`:
/// `Σ_{t ∈ π₀(fiber)} 1/|aut t| · δ_{d₂t} ⊗ δ_{d₀t}`.
pub fn fiber_coproduct_ts(f: &TSSimplex) -> Result<TensorPoly> {
    let fiber = ts_two_simplices_over(f)?;
    fiber_sum(&fiber, TSSimplex::monomial)
}

pub fn fiber_coproduct_ns(f: &NSSimplex) -> Result<TensorPoly> {
    let fiber = ns_two_simplices_over(f)?;
    fiber_sum(&fiber, NSSimplex::monomial)
}

fn fiber_sum<S: Simplex>(
    fiber: &EnumeratedGroupoid<(S, Vec<Perm>), Vec<Perm>>,
    monomial: impl Fn(&S) -> Result<Monomial>,
) -> Result<TensorPoly> {
    let mut out = TensorPoly::zero();
    for x in groupoid::pi0(fiber) {
        let aut = fiber.aut_size(x);
        let t = &x.0;
        out.add_term(monomial(&t.face(2)?)?, monomial(&t.face(0)?)?, rational::q(1, aut as i64));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Bialgebra structure

/// Which incidence bialgebra: one-variable (Faà di Bruno, generators `A_n`)
/// or plethystic (generators `A_λ`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoalgebraKind {
    Fdb,
    Plethystic,
}

/// Coproduct on polynomials in the `A` basis, extended multiplicatively from
/// the generators. Generator coproducts are cached.
pub struct Coalgebra {
    kind: CoalgebraKind,
    bound: usize,
    cache: Mutex<HashMap<Lambda, TensorPoly>>,
}

type Triple = BTreeMap<(Monomial, Monomial, Monomial), Q>;

impl Coalgebra {
    pub fn new(kind: CoalgebraKind) -> Self {
        let bound = match kind {
            CoalgebraKind::Fdb => DEFAULT_FDB_BOUND,
            CoalgebraKind::Plethystic => DEFAULT_PLETHYSTIC_BOUND,
        };
        Coalgebra::with_bound(kind, bound)
    }

    pub fn with_bound(kind: CoalgebraKind, bound: usize) -> Self {
        Coalgebra {
            kind,
            bound,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> CoalgebraKind {
        self.kind
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Generators of weight `≤ max`.
    pub fn generators(&self, max: usize) -> Vec<Lambda> {
        match self.kind {
            CoalgebraKind::Fdb => (1..=max).map(|n| Lambda::single(n, 1)).collect(),
            CoalgebraKind::Plethystic => Lambda::up_to_weight(max).into_iter().filter(|l| !l.is_zero()).collect(),
        }
    }

    /// Monomials in the generators of total weight `≤ max`, the unit first.
    pub fn monomials(&self, max: usize) -> Vec<Monomial> {
        let all = Monomial::all_up_to_weight(max);
        match self.kind {
            CoalgebraKind::Fdb => all
                .into_iter()
                .filter(|m| m.factors().iter().all(|l| l.parts() == 1 && l.pairs()[0].1 == 1))
                .collect(),
            CoalgebraKind::Plethystic => all,
        }
    }

    pub fn generator_coproduct(&self, lambda: &Lambda) -> Result<TensorPoly> {
        if let Some(t) = self.cache.lock().expect("cache lock").get(lambda) {
            return Ok(t.clone());
        }
        let t = match self.kind {
            CoalgebraKind::Fdb => {
                if lambda.parts() != 1 || lambda.pairs()[0].1 != 1 {
                    return Err(Error::Precondition(format!(
                        "one-variable generators have a single block, got {lambda}"
                    )));
                }
                fdb_coproduct_with_bound(lambda.weight(), self.bound)?
            }
            CoalgebraKind::Plethystic => plethystic_coproduct_with_bound(lambda, self.bound)?,
        };
        self.cache.lock().expect("cache lock").insert(lambda.clone(), t.clone());
        Ok(t)
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<TensorPoly> {
        m.factors()
            .iter()
            .try_fold(TensorPoly::one(), |acc, l| Ok(acc.mul(&self.generator_coproduct(l)?)))
    }

    pub fn coproduct(&self, p: &Poly) -> Result<TensorPoly> {
        let mut out = TensorPoly::zero();
        for (m, c) in p.terms() {
            out = out.add(&self.coproduct_monomial(m)?.scale(c));
        }
        Ok(out)
    }

    /// `Δ(m)` computed on the disjoint-union 1-simplex representing `m`,
    /// without using multiplicativity.
    pub fn direct_coproduct(&self, m: &Monomial) -> Result<TensorPoly> {
        check_bound("weight", m.weight(), self.bound)?;
        match self.kind {
            CoalgebraKind::Fdb => {
                let mut values = Vec::new();
                for (b, l) in m.factors().iter().enumerate() {
                    values.resize(values.len() + l.weight(), b);
                }
                if values.is_empty() {
                    return Ok(TensorPoly::one());
                }
                ns_coproduct(&Surjection::new(m.degree(), values)?)
            }
            CoalgebraKind::Plethystic => {
                if m.is_unit() {
                    return Ok(TensorPoly::one());
                }
                let delta = transversal_coproduct_of(&TSSimplex::from_monomial(m))?;
                Ok(delta_to_a_basis(&delta).scale(&(rational::one() / aut_product(m))))
            }
        }
    }

    fn left_iterate(&self, t: &TensorPoly) -> Result<Triple> {
        let mut out = Triple::new();
        for ((l, r), c) in t.terms() {
            for ((a, b), d) in self.coproduct_monomial(l)?.terms() {
                add_into(&mut out, (a.clone(), b.clone(), r.clone()), c * d);
            }
        }
        Ok(out)
    }

    fn right_iterate(&self, t: &TensorPoly) -> Result<Triple> {
        let mut out = Triple::new();
        for ((l, r), c) in t.terms() {
            for ((a, b), d) in self.coproduct_monomial(r)?.terms() {
                add_into(&mut out, (l.clone(), a.clone(), b.clone()), c * d);
            }
        }
        Ok(out)
    }

    /// `(Δ⊗id)Δ(p) = (id⊗Δ)Δ(p)`.
    pub fn check_coassociativity(&self, p: &Poly) -> Result<bool> {
        let t = self.coproduct(p)?;
        Ok(self.left_iterate(&t)? == self.right_iterate(&t)?)
    }

    /// `(ε⊗id)Δ(p) = p = (id⊗ε)Δ(p)`.
    pub fn check_counit(&self, p: &Poly) -> Result<bool> {
        let t = self.coproduct(p)?;
        let mut left = Poly::zero();
        let mut right = Poly::zero();
        for ((l, r), c) in t.terms() {
            left.add_term(r.clone(), c * counit_monomial(l));
            right.add_term(l.clone(), c * counit_monomial(r));
        }
        Ok(left == *p && right == *p)
    }

    /// `Δ(mn)` on the disjoint union equals `Δ(m)Δ(n)`.
    pub fn check_multiplicative(&self, m: &Monomial, n: &Monomial) -> Result<bool> {
        let direct = self.direct_coproduct(&m.mul(n))?;
        let product = self.direct_coproduct(m)?.mul(&self.direct_coproduct(n)?);
        Ok(direct == product)
    }
}

/// Counit read off the simplicial structure: `ε(δ_f) = 1` iff `f` is
/// isomorphic to the degenerate 1-simplex on its last vertex.
pub fn counit_direct<S: Simplex>(f: &S, degenerate: impl Fn(usize) -> Result<S>) -> Result<Q> {
    let v = f.set_sizes()[S::vertex_position(1, 1)];
    let d = degenerate(v)?;
    Ok(if d.class_key() == f.class_key() {
        rational::one()
    } else {
        rational::zero()
    })
}

/// [`counit_direct`] for pyramids.
pub fn counit_direct_ts(f: &TSSimplex) -> Result<Q> {
    counit_direct(f, |v| TSSimplex::vertex(v).degeneracy(0))
}

/// [`counit_direct`] for the fat nerve.
pub fn counit_direct_ns(f: &NSSimplex) -> Result<Q> {
    counit_direct(f, |v| NSSimplex::vertex(v).degeneracy(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn fdb(n: usize) -> Monomial {
        Monomial::fdb_generator(n)
    }

    fn fdb_mono(sizes: &[usize]) -> Monomial {
        Monomial::new(sizes.iter().map(|&n| Lambda::single(n, 1)).collect())
    }

    fn lam(src: &str) -> Lambda {
        Lambda::parse_map(src).unwrap()
    }

    #[test]
    fn fdb_low_degrees() {
        let one = rational::one();
        let d1 = fdb_coproduct(1).unwrap();
        assert_eq!(d1.len(), 1);
        assert_eq!(d1.coeff(&fdb(1), &fdb(1)), one);

        let d2 = fdb_coproduct(2).unwrap();
        assert_eq!(d2.len(), 2);
        assert_eq!(d2.coeff(&fdb(2), &fdb(1)), one);
        assert_eq!(d2.coeff(&fdb_mono(&[1, 1]), &fdb(2)), one);

        let d3 = fdb_coproduct(3).unwrap();
        assert_eq!(d3.len(), 3);
        assert_eq!(d3.coeff(&fdb(3), &fdb(1)), one);
        assert_eq!(d3.coeff(&fdb_mono(&[1, 2]), &fdb(2)), rational::from_int(3));
        assert_eq!(d3.coeff(&fdb_mono(&[1, 1, 1]), &fdb(3)), one);
    }

    #[test]
    fn bell_polynomials() {
        let b32 = bell_polynomial(3, 2).unwrap();
        assert_eq!(b32, Poly::term(fdb_mono(&[1, 2]), rational::from_int(3)));
        let b42 = bell_polynomial(4, 2).unwrap();
        let mut expected = Poly::term(fdb_mono(&[2, 2]), rational::from_int(3));
        expected.add_term(fdb_mono(&[1, 3]), rational::from_int(4));
        assert_eq!(b42, expected);
        assert!(bell_polynomial(3, 0).is_err());
        assert!(bell_polynomial(3, 4).is_err());
    }

    #[test]
    fn bell_coefficients_sum_to_stirling_numbers() {
        // S(6, k)
        let stirling = [1, 31, 90, 65, 15, 1];
        for (k, s) in stirling.iter().enumerate() {
            let b = bell_polynomial(6, k + 1).unwrap();
            let total: Q = b.terms().values().sum();
            assert_eq!(total, rational::from_int(*s));
        }
    }

    #[test]
    fn three_routes_to_fdb_agree() {
        for n in 1..=6 {
            let surj = fdb_coproduct(n).unwrap();
            assert_eq!(surj, fdb_from_bell(n).unwrap(), "n = {n}");
            assert_eq!(surj, ns_coproduct(&Surjection::to_point(n)).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn fdb_bound_is_enforced() {
        assert!(matches!(fdb_coproduct(9), Err(Error::BoundExceeded { .. })));
        assert!(fdb_coproduct(0).is_err());
    }

    #[test]
    fn plethystic_hand_checks() {
        let one = rational::one();
        let a = |s: &str| Monomial::generator(lam(s));
        let d = plethystic_coproduct(&lam("{1:1}")).unwrap();
        assert_eq!(d, {
            let mut t = TensorPoly::zero();
            t.add_term(a("{1:1}"), a("{1:1}"), one.clone());
            t
        });
        let d = plethystic_coproduct(&lam("{2:1}")).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.coeff(&a("{2:1}"), &a("{1:1}")), one);
        assert_eq!(d.coeff(&a("{1:1}"), &a("{2:1}")), one);
        // two singletons: one transversal pair per partition of the two points
        let d = plethystic_coproduct(&lam("{1:2}")).unwrap();
        assert_eq!(d.coeff(&a("{1:2}"), &a("{1:1}")), one);
        assert_eq!(d.coeff(&Monomial::new(vec![lam("{1:1}"), lam("{1:1}")]), &a("{1:2}")), one);
    }

    #[test]
    fn bialgebra_axioms_on_small_monomials() {
        for kind in [CoalgebraKind::Fdb, CoalgebraKind::Plethystic] {
            let c = Coalgebra::new(kind);
            let monos = c.monomials(4);
            for m in &monos {
                let p = Poly::term(m.clone(), rational::one());
                assert!(c.check_coassociativity(&p).unwrap(), "{kind:?} {m}");
                assert!(c.check_counit(&p).unwrap(), "{kind:?} {m}");
            }
            for m in &monos {
                for n in &monos {
                    if m.weight() + n.weight() <= 4 {
                        assert!(c.check_multiplicative(m, n).unwrap(), "{kind:?} {m} {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn counit_matches_degeneracy() {
        for m in Monomial::all_up_to_weight(4).iter().filter(|m| !m.is_unit()) {
            let f = TSSimplex::from_monomial(m);
            assert_eq!(counit_direct_ts(&f).unwrap(), counit_monomial(m), "{m}");
        }
        for n in 1..=4 {
            for k in 1..=n {
                for s in finset::all_surjections(n, k) {
                    let f = NSSimplex::from_chain(vec![s]).unwrap();
                    assert_eq!(counit_direct_ns(&f).unwrap(), counit_monomial(&f.monomial().unwrap()));
                }
            }
        }
    }

    #[test]
    fn segal_formula_matches_labelled_sums() {
        for n in 1..=4 {
            let f = NSSimplex::from_chain(vec![Surjection::to_point(n)]).unwrap();
            assert_eq!(segalcom_coproduct_ns(&f).unwrap(), ns_coproduct(&Surjection::to_point(n)).unwrap());
            assert_eq!(fiber_coproduct_ns(&f).unwrap(), ns_coproduct(&Surjection::to_point(n)).unwrap());
        }
        for l in Lambda::up_to_weight(4).into_iter().filter(|l| !l.is_zero()) {
            let f = TSSimplex::connected(&l);
            let labelled = transversal_coproduct_of(&f).unwrap();
            assert_eq!(segalcom_coproduct_ts(&f).unwrap(), labelled, "λ = {l}");
            assert_eq!(fiber_coproduct_ts(&f).unwrap(), labelled, "λ = {l}");
        }
    }

    #[test]
    fn segal_formula_on_disconnected_simplices() {
        let m = Monomial::new(vec![lam("{1:1}"), lam("{2:1}")]);
        let f = TSSimplex::from_monomial(&m);
        assert_eq!(segalcom_coproduct_ts(&f).unwrap(), transversal_coproduct_of(&f).unwrap());
        let g = NSSimplex::from_chain(vec![Surjection::new(2, vec![0, 1, 1]).unwrap()]).unwrap();
        assert_eq!(
            segalcom_coproduct(&OneSimplex::Ns(g.clone())).unwrap(),
            ns_coproduct(&g.maps()[0]).unwrap()
        );
    }

    #[test]
    fn isos_out_of_a_surjection_count_all_relabellings() {
        // every pair of bijections moves a fixed n ↠ k to exactly one labelled surjection
        for (n, k) in [(3, 2), (4, 2), (4, 3), (5, 2)] {
            let surjs = finset::all_surjections(n, k);
            let total: usize = surjs.iter().map(|t| finset::surjection_isos(&surjs[0], t).len()).sum();
            assert_eq!(BigUint::from(total), factorial(n) * factorial(k));
        }
    }

    #[test]
    fn json_and_csv_round_trip() {
        let d = plethystic_coproduct(&lam("{1:1,2:1}")).unwrap();
        let back = TensorPoly::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let csv = d.to_csv();
        let mut rows = csv.lines();
        assert_eq!(rows.next(), Some("left-monomial,right-monomial,numerator,denominator"));
        assert_eq!(rows.count(), d.len());
        let p = bell_polynomial(5, 2).unwrap();
        assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
        assert!(TensorPoly::from_json(&serde_json::json!([{"left": [], "right": [], "coeff": "1/0"}])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(bell_polynomial(4, 2).unwrap().to_string(), "4 A{1:1}*A{3:1} + 3 A{2:1}^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
