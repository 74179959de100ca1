//! Truncated power series, substitution, and the species and partitional
//! generating functions that serve as oracles for the coproducts.
//!
//! One-variable series are truncated by degree. Series in `x₁, x₂, …` are
//! truncated by weight, with `x_k` of weight `k`, so that the reindexing
//! `x_j ↦ x_{jk}` used by plethysm stays inside the truncation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_bound, Error, Result};
use crate::incidence::TensorPoly;
use crate::lambda::{factorial, Lambda};
use crate::partition::{all_partitions, enumerate_transversals, Partition};
use crate::perm;
use crate::rational::{self, Q};

pub const MAX_SPECIES_N: usize = 6;

// ---------------------------------------------------------------------------
// One variable

/// `f₀ + f₁x + … + f_N x^N`, exact to order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series1 {
    coeffs: Vec<Q>,
}

impl Series1 {
    pub fn new(coeffs: Vec<Q>) -> Self {
        assert!(!coeffs.is_empty(), "a series has order ≥ 0");
        Series1 { coeffs }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        let mut c: Vec<Q> = coeffs.iter().map(|&n| rational::from_int(n)).collect();
        c.resize(order + 1, rational::zero());
        c.truncate(order + 1);
        Series1::new(c)
    }

    pub fn zero(order: usize) -> Self {
        Series1::new(vec![rational::zero(); order + 1])
    }

    pub fn x(order: usize) -> Self {
        let mut s = Series1::zero(order);
        if order >= 1 {
            s.coeffs[1] = rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Q {
        self.coeffs.get(n).cloned().unwrap_or_else(rational::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series1 {
        Series1::new((0..=order).map(|n| self.coeff(n)).collect())
    }

    pub fn add(&self, other: &Series1) -> Series1 {
        let n = self.order().min(other.order());
        Series1::new((0..=n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Series1) -> Series1 {
        let n = self.order().min(other.order());
        let mut out = vec![rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series1::new(out)
    }

    /// Seeded random series with small rational coefficients.
    pub fn random(order: usize, zero_constant: bool, rng: &mut impl Rng) -> Series1 {
        let mut c: Vec<Q> = (0..=order).map(|_| small_rational(rng)).collect();
        if zero_constant {
            c[0] = rational::zero();
        }
        Series1::new(c)
    }
}

impl fmt::Display for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<(Q, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| match n {
                0 => (c.clone(), String::new()),
                1 => (c.clone(), "x".to_string()),
                _ => (c.clone(), format!("x^{n}")),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", signed_sum(&parts))?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// `G ∘ F`, truncated at the smaller order. `F` must have zero constant term.
pub fn compose1(g: &Series1, f: &Series1) -> Result<Series1> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let n = g.order().min(f.order());
    let f = f.truncate(n);
    let mut out = Series1::zero(n);
    for k in (0..=n).rev() {
        out = out.mul(&f);
        out.coeffs[0] += g.coeff(k);
    }
    Ok(out)
}

/// `Aₙ(F) = dⁿF/dxⁿ` at 0, i.e. `n!·fₙ`.
pub fn pairing_fdb(n: usize, f: &Series1) -> Result<Q> {
    if n > f.order() {
        return Err(Error::BoundExceeded {
            what: "pairing degree",
            limit: f.order(),
            got: n,
        });
    }
    Ok(rational::from_biguint(&factorial(n)) * f.coeff(n))
}

// ---------------------------------------------------------------------------
// Infinitely many variables

/// `Σ_λ c_λ x^λ` over types of weight `≤ W`, with `x^λ = ∏ x_k^{λ_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    weight_bound: usize,
    terms: BTreeMap<Lambda, Q>,
}

impl MultiSeries {
    pub fn zero(weight_bound: usize) -> Self {
        MultiSeries {
            weight_bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(weight_bound: usize) -> Self {
        MultiSeries::monomial(weight_bound, Lambda::zero(), rational::one())
    }

    /// The variable `x_k` (zero if `k > W`).
    pub fn variable(weight_bound: usize, k: usize) -> Self {
        MultiSeries::monomial(weight_bound, Lambda::single(k, 1), rational::one())
    }

    pub fn monomial(weight_bound: usize, lambda: Lambda, c: Q) -> Self {
        let mut s = MultiSeries::zero(weight_bound);
        s.add_term(lambda, c);
        s
    }

    pub fn from_terms(weight_bound: usize, terms: impl IntoIterator<Item = (Lambda, Q)>) -> Self {
        let mut s = MultiSeries::zero(weight_bound);
        for (l, c) in terms {
            s.add_term(l, c);
        }
        s
    }

    /// Add `c·x^λ`; terms above the weight bound are dropped.
    pub fn add_term(&mut self, lambda: Lambda, c: Q) {
        if lambda.weight() > self.weight_bound || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(lambda.clone()).or_insert_with(rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn weight_bound(&self) -> usize {
        self.weight_bound
    }

    pub fn terms(&self) -> &BTreeMap<Lambda, Q> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Lambda) -> Q {
        self.terms.get(lambda).cloned().unwrap_or_else(rational::zero)
    }

    pub fn truncate(&self, weight_bound: usize) -> MultiSeries {
        MultiSeries::from_terms(
            weight_bound.min(self.weight_bound),
            self.terms.iter().map(|(l, c)| (l.clone(), c.clone())),
        )
    }

    pub fn add(&self, other: &MultiSeries) -> MultiSeries {
        let mut out = self.truncate(other.weight_bound);
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> MultiSeries {
        MultiSeries::from_terms(self.weight_bound, self.terms.iter().map(|(l, d)| (l.clone(), d * c)))
    }

    pub fn mul(&self, other: &MultiSeries) -> MultiSeries {
        let mut out = MultiSeries::zero(self.weight_bound.min(other.weight_bound));
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                if a.weight() + b.weight() <= out.weight_bound {
                    out.add_term(a.add(b), c * d);
                }
            }
        }
        out
    }

    /// `F_k = F(x_k, x_{2k}, …)`.
    pub fn reindex(&self, k: usize) -> MultiSeries {
        MultiSeries::from_terms(self.weight_bound, self.terms.iter().map(|(l, c)| (l.scale(k), c.clone())))
    }

    /// One-variable specialization `x_k ↦ coeffs(k)·x^{degree_of(k)}`.
    pub fn specialize(&self, coeffs: impl Fn(usize) -> Q, degree_of: impl Fn(usize) -> usize) -> Series1 {
        let mut out = Series1::zero(self.weight_bound);
        for (l, c) in &self.terms {
            let mut value = c.clone();
            let mut degree = 0;
            for &(k, m) in l.pairs() {
                value *= num_traits::pow(coeffs(k), m);
                degree += degree_of(k) * m;
            }
            if degree <= self.weight_bound && !value.is_zero() {
                out.coeffs[degree] += value;
            }
        }
        out
    }

    /// Seeded random series with small rational coefficients on every type of
    /// weight `≤ W`.
    pub fn random(weight_bound: usize, zero_constant: bool, rng: &mut impl Rng) -> MultiSeries {
        let mut s = MultiSeries::zero(weight_bound);
        for l in Lambda::up_to_weight(weight_bound) {
            if zero_constant && l.is_zero() {
                continue;
            }
            s.add_term(l, small_rational(rng));
        }
        s
    }

    /// Parse a literal such as `x1 + 1/2 x2 + x1^2` or `3 - x1*x3`.
    pub fn parse(src: &str, weight_bound: usize) -> Result<MultiSeries> {
        Parser { src, pos: 0 }.series(weight_bound)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<SeriesTermJson> = self
            .terms
            .iter()
            .map(|(l, c)| SeriesTermJson {
                monomial: l.clone(),
                coeff: rational::to_string(c),
            })
            .collect();
        serde_json::json!({ "weight_bound": self.weight_bound, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MultiSeries> {
        #[derive(Deserialize)]
        struct Doc {
            weight_bound: usize,
            terms: Vec<SeriesTermJson>,
        }
        let doc: Doc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })?;
        let mut s = MultiSeries::zero(doc.weight_bound);
        for t in doc.terms {
            s.add_term(t.monomial, rational::parse(&t.coeff)?);
        }
        Ok(s)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesTermJson {
    monomial: Lambda,
    coeff: String,
}

/// `x1^3`, `x1x2`, `x3`; `1` for the empty type.
pub fn monomial_string(lambda: &Lambda) -> String {
    if lambda.is_zero() {
        return "1".into();
    }
    lambda
        .pairs()
        .iter()
        .map(|&(k, m)| if m == 1 { format!("x{k}") } else { format!("x{k}^{m}") })
        .collect()
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Lambda> = self.terms.keys().collect();
        keys.sort_by(|a, b| display_order(a, b));
        let parts: Vec<(Q, String)> = keys
            .into_iter()
            .map(|l| {
                let body = if l.is_zero() { String::new() } else { monomial_string(l) };
                (self.terms[l].clone(), body)
            })
            .collect();
        write!(f, "{}", signed_sum(&parts))
    }
}

/// Weight first, then more parts first, then larger multiplicities of small sizes first.
fn display_order(a: &Lambda, b: &Lambda) -> std::cmp::Ordering {
    a.weight()
        .cmp(&b.weight())
        .then(b.parts().cmp(&a.parts()))
        .then_with(|| {
            let (da, db) = (a.dense(), b.dense());
            db.cmp(&da)
        })
}

/// `c₁m₁ + c₂m₂ - …`; an empty body is a constant term.
fn signed_sum(terms: &[(Q, String)]) -> String {
    let mut out = String::new();
    for (i, (c, body)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let c = c.abs();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if body.is_empty() {
            out.push_str(&c.to_string());
        } else if c.is_one() {
            out.push_str(body);
        } else if c.is_integer() {
            out.push_str(&format!("{c}{body}"));
        } else {
            out.push_str(&format!("{c} {body}"));
        }
    }
    out
}

fn small_rational(rng: &mut impl Rng) -> Q {
    rational::q(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

/// `G ⊛ F = G(F₁, F₂, …)` with `F_k = F(x_k, x_{2k}, …)`, truncated at the
/// smaller weight bound. `F` must have zero constant term.
pub fn plethystic_substitute(g: &MultiSeries, f: &MultiSeries) -> Result<MultiSeries> {
    if !f.coeff(&Lambda::zero()).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let w = g.weight_bound.min(f.weight_bound);
    let f = f.truncate(w);
    // powers[k][m] = F_k^m
    let mut powers: BTreeMap<(usize, usize), MultiSeries> = BTreeMap::new();
    let mut out = MultiSeries::zero(w);
    for (l, c) in &g.terms {
        if l.weight() > w {
            continue;
        }
        let mut term = MultiSeries::one(w);
        for &(k, m) in l.pairs() {
            let power = powers.entry((k, m)).or_insert_with(|| {
                let fk = f.reindex(k);
                let mut p = MultiSeries::one(w);
                for _ in 0..m {
                    p = p.mul(&fk);
                }
                p
            });
            term = term.mul(power);
        }
        out = out.add(&term.scale(c));
    }
    Ok(out)
}

/// `A_λ(F) = f_λ`.
pub fn pairing(lambda: &Lambda, f: &MultiSeries) -> Result<Q> {
    check_bound("pairing weight", lambda.weight(), f.weight_bound)?;
    Ok(f.coeff(lambda))
}

/// `Σ c · ∏ left(a) · ∏ right(b)` over the terms `c · a ⊗ b`, with monomials
/// evaluated factor by factor.
fn evaluate_tensor(
    t: &TensorPoly,
    left: impl Fn(&Lambda) -> Result<Q>,
    right: impl Fn(&Lambda) -> Result<Q>,
) -> Result<Q> {
    let mut total = rational::zero();
    for ((l, r), c) in t.terms() {
        let mut v = c.clone();
        for lam in l.factors() {
            v *= left(lam)?;
        }
        for lam in r.factors() {
            v *= right(lam)?;
        }
        total += v;
    }
    Ok(total)
}

/// `Δ(Aₙ)(F⊗G) = Aₙ(G∘F)`, with `F` paired against left factors. One-variable
/// generators are the single-block keys `{n:1}`.
pub fn fdb_duality_check(n: usize, f: &Series1, g: &Series1, coproduct: &TensorPoly) -> Result<bool> {
    let by_size = |series: &Series1, lam: &Lambda| {
        if lam.parts() != 1 {
            return Err(Error::Precondition(format!("not a one-variable generator: {lam}")));
        }
        pairing_fdb(lam.weight(), series)
    };
    let lhs = evaluate_tensor(coproduct, |l| by_size(f, l), |l| by_size(g, l))?;
    let rhs = pairing_fdb(n, &compose1(g, f)?)?;
    Ok(lhs == rhs)
}

/// `Δ(A_λ)(F⊗G) = A_λ(G⊛F)`.
pub fn plethystic_duality_check(lambda: &Lambda, f: &MultiSeries, g: &MultiSeries, coproduct: &TensorPoly) -> Result<bool> {
    let lhs = evaluate_tensor(coproduct, |l| pairing(l, f), |l| pairing(l, g))?;
    let rhs = pairing(lambda, &plethystic_substitute(g, f)?)?;
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// Species

/// Built-in species. `NonemptyPartitions` and `NonemptyUniform` have no
/// structure on the empty set, as inner species of a substitution require.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Species {
    Partitions,
    NonemptyPartitions,
    Singleton,
    Uniform,
    NonemptyUniform,
}

impl Species {
    /// All structures on `{0..n}`, each as the restricted-growth labels of a
    /// partition (the uniform and singleton species use the trivial partition).
    pub fn structures(self, n: usize) -> Vec<Partition> {
        match self {
            Species::Partitions => all_partitions(n),
            Species::NonemptyPartitions if n > 0 => all_partitions(n),
            Species::Singleton if n == 1 => vec![Partition::top(1)],
            Species::Uniform => vec![Partition::top(n)],
            Species::NonemptyUniform if n > 0 => vec![Partition::top(n)],
            _ => Vec::new(),
        }
    }

    /// `|F[n]|` as a closed form, independent of [`Species::structures`].
    pub fn count(self, n: usize) -> BigUint {
        match self {
            Species::Partitions => bell_number(n),
            Species::NonemptyPartitions if n > 0 => bell_number(n),
            Species::Singleton if n == 1 => BigUint::one(),
            Species::Uniform => BigUint::one(),
            Species::NonemptyUniform if n > 0 => BigUint::one(),
            _ => BigUint::zero(),
        }
    }

    pub fn parse(src: &str) -> Result<Species> {
        match src {
            "pi" | "partitions" => Ok(Species::Partitions),
            "pi+" | "nonempty-partitions" => Ok(Species::NonemptyPartitions),
            "x" | "singleton" => Ok(Species::Singleton),
            "e" | "uniform" => Ok(Species::Uniform),
            "e+" | "nonempty-uniform" => Ok(Species::NonemptyUniform),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown species {src:?}; expected pi, pi+, x, e, e+"),
            }),
        }
    }
}

/// Bell numbers by the triangle recurrence.
pub fn bell_number(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![row.last().expect("nonempty row").clone()];
        for x in &row {
            let v = next.last().expect("nonempty row") + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// Labelled, unlabelled, and fixed-point data of a species for `n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeciesTables {
    pub species: Species,
    pub n_max: usize,
    /// `|F[n]|` by enumeration.
    pub labelled: Vec<BigUint>,
    /// `|F̃[n]|`, orbits of `𝔖ₙ` on `F[n]` counted directly.
    pub unlabelled: Vec<BigUint>,
    /// For each `n`, `Σ_{σ ∈ 𝔖ₙ} |Fix F[σ]|` grouped by the cycle type of `σ`.
    pub fixed_point_sums: Vec<Vec<(Lambda, BigUint)>>,
}

pub fn species_tables(species: Species, n_max: usize) -> Result<SpeciesTables> {
    check_bound("species n", n_max, MAX_SPECIES_N)?;
    let mut labelled = Vec::new();
    let mut unlabelled = Vec::new();
    let mut fixed_point_sums = Vec::new();
    for n in 0..=n_max {
        let structures = species.structures(n);
        labelled.push(BigUint::from(structures.len()));
        let perms: Vec<_> = perm::all(n).collect();
        let mut orbits: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        for s in &structures {
            let canonical = perms
                .iter()
                .map(|p| s.permute(p).block_of().to_vec())
                .min()
                .unwrap_or_default();
            orbits.insert(canonical);
        }
        unlabelled.push(BigUint::from(orbits.len()));
        let mut sums: BTreeMap<Lambda, BigUint> = BTreeMap::new();
        for p in &perms {
            let fixed = structures.iter().filter(|s| s.permute(p) == **s).count();
            let cycle_type = Lambda::from_pairs(perm::cycle_type(p));
            *sums.entry(cycle_type).or_default() += BigUint::from(fixed);
        }
        let mut sums: Vec<(Lambda, BigUint)> = sums.into_iter().collect();
        sums.sort_by(|a, b| display_order(&a.0, &b.0));
        fixed_point_sums.push(sums);
    }
    Ok(SpeciesTables {
        species,
        n_max,
        labelled,
        unlabelled,
        fixed_point_sums,
    })
}

impl SpeciesTables {
    /// `F(x) = Σ |F[n]| xⁿ/n!`.
    pub fn egf(&self) -> Series1 {
        Series1::new(
            self.labelled
                .iter()
                .enumerate()
                .map(|(n, c)| rational::from_biguint(c) / rational::from_biguint(&factorial(n)))
                .collect(),
        )
    }

    /// `F̃(x) = Σ |F̃[n]| xⁿ`.
    pub fn type_gf(&self) -> Series1 {
        Series1::new(self.unlabelled.iter().map(rational::from_biguint).collect())
    }

    /// `Z_F = Σ_n 1/n! Σ_{σ ∈ 𝔖ₙ} |Fix F[σ]| x^{type σ}`, to weight `n_max`.
    pub fn cycle_index(&self) -> MultiSeries {
        let mut z = MultiSeries::zero(self.n_max);
        for (n, sums) in self.fixed_point_sums.iter().enumerate() {
            let nf = rational::from_biguint(&factorial(n));
            for (l, c) in sums {
                z.add_term(l.clone(), rational::from_biguint(c) / nf.clone());
            }
        }
        z
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strings = |v: &[BigUint]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        serde_json::json!({
            "species": self.species,
            "n_max": self.n_max,
            "labelled": strings(&self.labelled),
            "unlabelled": strings(&self.unlabelled),
            "fixed_point_sums": (0..=self.n_max).map(|n| self.fixed_point_sum(n).to_string()).collect::<Vec<_>>(),
            "cycle_index": self.cycle_index().to_json(),
        })
    }

    /// The fixed-point sum at `n` as a polynomial with integer coefficients.
    pub fn fixed_point_sum(&self, n: usize) -> MultiSeries {
        MultiSeries::from_terms(
            n,
            self.fixed_point_sums[n]
                .iter()
                .map(|(l, c)| (l.clone(), rational::from_biguint(c))),
        )
    }

    /// `Z_F(x, 0, …) = F(x)` and `Z_F(x, x², …) = F̃(x)`.
    pub fn specializations_hold(&self) -> bool {
        let z = self.cycle_index();
        let first_only = z.specialize(|k| if k == 1 { rational::one() } else { rational::zero() }, |k| k);
        let all = z.specialize(|_| rational::one(), |k| k);
        first_only == self.egf() && all == self.type_gf()
    }
}

/// `|(F∘G)[n]| = Σ_{π ∈ Π[n]} |F[π]| ∏_{B ∈ π} |G[B]|`, by enumeration.
pub fn species_substitute_count(outer: Species, inner: Species, n: usize) -> Result<BigUint> {
    check_bound("species n", n, MAX_SPECIES_N)?;
    if !inner.count(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut total = BigUint::zero();
    for p in all_partitions(n) {
        let mut term = BigUint::from(outer.structures(p.block_count()).len());
        for size in p.block_sizes() {
            term *= BigUint::from(inner.structures(size).len());
        }
        total += term;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Partitionals

/// Built-in partitionals: one structure on every partition (`Uniform`), on every
/// partition of a nonempty set (`NonemptyUniform`), or on the one-point set
/// only (`Singleton`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Partitional {
    Uniform,
    NonemptyUniform,
    Singleton,
}

impl Partitional {
    /// `|M[E, σ]|`.
    pub fn count(self, sigma: &Partition) -> BigUint {
        let n = sigma.ground_size();
        let present = match self {
            Partitional::Uniform => true,
            Partitional::NonemptyUniform => n > 0,
            Partitional::Singleton => n == 1,
        };
        if present {
            BigUint::one()
        } else {
            BigUint::zero()
        }
    }

    /// `M(x) = Σ_λ M[λ]/aut(λ) x^λ`, with `M[λ]` read off a representative partition.
    pub fn generating_function(self, weight_bound: usize) -> MultiSeries {
        let mut s = MultiSeries::zero(weight_bound);
        for l in Lambda::up_to_weight(weight_bound) {
            let rep = crate::incidence::partition_of_type(&l);
            let c = self.count(&rep);
            s.add_term(l.clone(), rational::from_biguint(&c) / rational::from_biguint(&l.aut_count()));
        }
        s
    }
}

/// `|(M∘R)[E,σ]| = Σ_{(π,τ)} |M[τ, (σ∨τ)|τ]| · ∏_{B ∈ σ∨τ} |R[π_B, σ_B|π_B]|`
/// over the transversals of `σ`.
pub fn partitional_substitute_count(outer: Partitional, inner: Partitional, sigma: &Partition) -> Result<BigUint> {
    let empty = Partition::bottom(0);
    if !inner.count(&empty).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut total = BigUint::zero();
    for (pi, tau) in enumerate_transversals(sigma, MAX_SPECIES_N)? {
        let join = sigma.join(&tau)?;
        let mut term = outer.count(&Partition::induced(&join, &tau)?);
        for block in join.blocks() {
            let pi_b = pi.restrict(&block)?;
            let sigma_b = sigma.restrict(&block)?;
            term *= inner.count(&Partition::induced(&sigma_b, &pi_b)?);
        }
        total += term;
    }
    Ok(total)
}

/// Compare `(M∘R)[λ]/aut(λ)` against the coefficient of `x^λ` in `M ⊛ R` for
/// every type of weight `1..=W`. Returns the mismatching types.
pub fn partitional_keystone(outer: Partitional, inner: Partitional, weight_bound: usize) -> Result<Vec<Lambda>> {
    let pleth = plethystic_substitute(
        &outer.generating_function(weight_bound),
        &inner.generating_function(weight_bound),
    )?;
    let mut bad = Vec::new();
    for l in Lambda::up_to_weight(weight_bound).into_iter().filter(|l| !l.is_zero()) {
        let sigma = crate::incidence::partition_of_type(&l);
        let count = partitional_substitute_count(outer, inner, &sigma)?;
        let lhs = rational::from_biguint(&count) / rational::from_biguint(&l.aut_count());
        if lhs != pleth.coeff(&l) {
            bad.push(l);
        }
    }
    Ok(bad)
}

// ---------------------------------------------------------------------------
// Literal parser

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].to_string())
    }

    fn series(mut self, weight_bound: usize) -> Result<MultiSeries> {
        let mut out = MultiSeries::zero(weight_bound);
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty series"));
        }
        let mut sign = rational::one();
        if self.peek() == Some('-') {
            sign = -sign;
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let (lambda, c) = self.term()?;
            out.add_term(lambda, sign * c);
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some('+') => sign = rational::one(),
                Some('-') => sign = -rational::one(),
                Some(c) => return Err(self.error(format!("unexpected {c:?}"))),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Lambda, Q)> {
        self.skip_ws();
        let mut coeff = rational::one();
        let mut seen_coeff = false;
        if let Some(n) = self.number() {
            let n: i64 = n.parse().map_err(|_| self.error("coefficient too large"))?;
            coeff = rational::from_int(n);
            seen_coeff = true;
            self.skip_ws();
            if self.peek() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                let d = self.number().ok_or_else(|| self.error("expected a denominator"))?;
                let d: i64 = d.parse().map_err(|_| self.error("denominator too large"))?;
                if d == 0 {
                    return Err(self.error("zero denominator"));
                }
                coeff /= rational::from_int(d);
            }
        }
        let mut pairs = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
            }
            if self.peek() != Some('x') {
                break;
            }
            self.pos += 1;
            let k: usize = self
                .number()
                .ok_or_else(|| self.error("expected a variable index after x"))?
                .parse()
                .map_err(|_| self.error("variable index too large"))?;
            if k == 0 {
                return Err(self.error("variables start at x1"));
            }
            let mut e = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                e = self
                    .number()
                    .ok_or_else(|| self.error("expected an exponent"))?
                    .parse()
                    .map_err(|_| self.error("exponent too large"))?;
            }
            pairs.push((k, e));
        }
        if pairs.is_empty() && !seen_coeff {
            return Err(self.error("expected a term"));
        }
        Ok((Lambda::from_pairs(pairs), coeff))
    }
}
