//! The verification suite behind `report`: every acceptance check, with
//! pass/fail, a one-line detail, and timing.

use std::time::Instant;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::finset;
use crate::incidence::{
    self, counit_monomial, fdb_coproduct, fdb_from_bell, ns_coproduct, partition_of_type, plethystic_coproduct,
    segalcom_coproduct_ns, segalcom_coproduct_ts, transversal_coproduct_of, Coalgebra, CoalgebraKind, Monomial, Poly,
};
use crate::lambda::{factorial, Lambda};
use crate::partition::{all_partitions, enumerate_transversals, transversal_diagram_check, Partition};
use crate::perm;
use crate::rational;
use crate::series::{self, MultiSeries, Partitional, Series1, Species};
use crate::simplicial::{self, NSSimplex, TSSimplex};

/// Suite parameters. The defaults are the acceptance bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub fdb_max_n: usize,
    pub plethystic_max_weight: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 2024,
            trials: 20,
            fdb_max_n: 6,
            plethystic_max_weight: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = (&'static str, fn(&SuiteConfig) -> Result<(bool, String)>);

pub const CHECKS: &[Check] = &[
    ("reference-constants", reference_constants),
    ("surjection-dictionary", surjection_dictionary),
    ("commute-blockwise-independent", commute_blockwise),
    ("transversal-characterizations", transversal_characterizations),
    ("automorphism-counts", automorphism_counts),
    ("fdb-theorem", fdb_theorem),
    ("plethystic-theorem", plethystic_theorem),
    ("segal-formula", segal_formula),
    ("bialgebra-axioms", bialgebra_axioms),
    ("partitional-keystone", partitional_keystone),
    ("segal-and-identities", segal_and_identities),
];

pub fn run_check(check: &Check, config: &SuiteConfig) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = match (check.1)(config) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckResult {
        name: check.0,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_all(config: &SuiteConfig) -> Vec<CheckResult> {
    CHECKS.iter().map(|c| run_check(c, config)).collect()
}

fn part(n: usize, blocks: &[&[usize]]) -> Result<Partition> {
    let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
    Partition::from_blocks(n, &blocks)
}

fn verdict(failures: Vec<String>, ok: String) -> (bool, String) {
    if failures.is_empty() {
        (true, ok)
    } else {
        let shown: Vec<_> = failures.iter().take(3).cloned().collect();
        (false, format!("{} failed: {}", failures.len(), shown.join("; ")))
    }
}

/// The worked example, the partition counts at 3, the reference fixed-point
/// sum at 3, and the counit on `A₁`.
pub fn reference_constants(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    // {{1,2},{3,4,5},{6}} and {{1,2,6},{3,4},{5}} on 0..6
    let pi = part(6, &[&[0, 1], &[2, 3, 4], &[5]])?;
    let sigma = part(6, &[&[0, 1, 5], &[2, 3], &[4]])?;
    if pi.meet(&sigma)? != part(6, &[&[0, 1], &[2, 3], &[4], &[5]])? {
        failures.push("meet".to_string());
    }
    let join = pi.join(&sigma)?;
    if join != part(6, &[&[0, 1, 5], &[2, 3, 4]])? {
        failures.push("join".to_string());
    }
    if Partition::induced(&join, &sigma)?.blocks() != vec![vec![0], vec![1, 2]] {
        failures.push("induced".to_string());
    }
    if pi.restrict(&[0, 2, 3, 5])?.blocks() != vec![vec![0], vec![1, 2], vec![3]] {
        failures.push("restriction".to_string());
    }
    let tables = series::species_tables(Species::Partitions, 3)?;
    if tables.labelled[3] != BigUint::from(5u32) || tables.unlabelled[3] != BigUint::from(3u32) {
        failures.push(format!("|Π[3]| = {}, |Π̃[3]| = {}", tables.labelled[3], tables.unlabelled[3]));
    }
    let sum = tables.fixed_point_sum(3).to_string();
    if sum != "5x1^3 + 3x1x2 + x3" {
        failures.push(format!("fixed-point sum over S3 is {sum}, reference value 5x1^3 + 3x1x2 + x3"));
    }
    if counit_monomial(&Monomial::generator(Lambda::single(1, 1))) != rational::one() {
        failures.push("ε(A₁)".to_string());
    }
    Ok(verdict(failures, format!("meet, join, induced, restriction, 5 and 3, {sum}, ε = 1")))
}

/// Partition notions against surjection constructions, exhaustively.
pub fn surjection_dictionary(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for n in 0..=5 {
        let all = all_partitions(n);
        if !Partition::bottom(n).to_surjection().as_map().is_bijective() || Partition::top(n).to_surjection().cod() != n.min(1) {
            failures.push(format!("bounds on {n}"));
        }
        for pi in &all {
            let p = pi.to_surjection();
            for subset in 0..(1u32 << n) {
                let a: Vec<usize> = (0..n).filter(|&e| subset >> e & 1 == 1).collect();
                let incl = finset::SetMap::new(p.cod(), a.iter().map(|&e| p.apply(e)).collect())?;
                let (onto, _) = finset::image_factorization(&incl);
                if Partition::from_surjection(&onto) != pi.restrict(&a)? {
                    failures.push(format!("restriction {pi} to {a:?}"));
                }
            }
            for tau in &all {
                pairs += 1;
                let t = tau.to_surjection();
                let factor = finset::factor_through(&p, &t)?;
                if factor.is_some() != pi.refines(tau)? {
                    failures.push(format!("refinement {pi} {tau}"));
                }
                if let Some(f) = factor {
                    if Partition::from_surjection(&f) != Partition::induced(tau, pi)? {
                        failures.push(format!("induced {pi} {tau}"));
                    }
                }
                let (s_to_i, _, _) = finset::pushout(&p, &t)?;
                let to_i = p.then(&s_to_i)?;
                if Partition::from_surjection(&to_i) != pi.join(tau)? {
                    failures.push(format!("join {pi} {tau}"));
                }
                let phi = finset::comparison_map(&p, &t)?;
                let (image, _) = finset::image_factorization(&phi);
                let meet = pi.meet(tau)?;
                if Partition::from_surjection(&image) != meet || phi.is_injective() != meet.is_bottom() {
                    failures.push(format!("meet {pi} {tau}"));
                }
                if phi.is_surjective() != pi.commutes(tau)? {
                    failures.push(format!("commute {pi} {tau}"));
                }
                // on the empty set independence is vacuous while the pushout is empty
                if n > 0 && (phi.is_surjective() && s_to_i.cod() == 1) != pi.independent(tau)? {
                    failures.push(format!("independent {pi} {tau}"));
                }
            }
        }
    }
    Ok(verdict(failures, format!("all seven items on {pairs} pairs, |E| ≤ 5")))
}

pub fn commute_blockwise(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut pairs = 0usize;
    for n in 0..=5 {
        let all = all_partitions(n);
        for pi in &all {
            for sigma in &all {
                pairs += 1;
                let mut blockwise = true;
                for b in pi.join(sigma)?.blocks() {
                    blockwise &= pi.restrict(&b)?.independent(&sigma.restrict(&b)?)?;
                }
                if blockwise != pi.commutes(sigma)? {
                    failures.push(format!("{pi} {sigma}"));
                }
            }
        }
    }
    Ok(verdict(failures, format!("{pairs} pairs, |E| ≤ 5")))
}

pub fn transversal_characterizations(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut triples = 0usize;
    for n in 0..=4 {
        let all = all_partitions(n);
        for sigma in &all {
            let listed = enumerate_transversals(sigma, 4)?;
            for pi in &all {
                for tau in &all {
                    triples += 1;
                    let in_list = listed.iter().any(|(p, t)| p == pi && t == tau);
                    if in_list != transversal_diagram_check(sigma, pi, tau)? {
                        failures.push(format!("σ={sigma} π={pi} τ={tau}"));
                    }
                }
            }
        }
    }
    let zero = enumerate_transversals(&Partition::bottom(3), 4)?.len();
    let one = enumerate_transversals(&Partition::top(2), 4)?.len();
    if zero != 5 || one != 2 {
        failures.push(format!("counts {zero} and {one}"));
    }
    Ok(verdict(failures, format!("{triples} triples, |E| ≤ 4; 0̂ on 3 gives {zero}, 1̂ on 2 gives {one}")))
}

pub fn automorphism_counts(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for n in 0..=6 {
        let perms: Vec<_> = perm::all(n).collect();
        let all = all_partitions(n);
        for p in &all {
            checked += 1;
            let brute = perms.iter().filter(|q| p.permute(q) == *p).count();
            if BigUint::from(brute) != p.lambda_type().aut_count() {
                failures.push(format!("aut {p}"));
            }
        }
        let nf = factorial(n);
        let total: BigUint = Lambda::of_weight(n).iter().map(|l| &nf / l.aut_count()).sum();
        if total != BigUint::from(all.len()) {
            failures.push(format!("Σ n!/aut at {n}"));
        }
    }
    Ok(verdict(failures, format!("{checked} partitions, |E| ≤ 6; Σ n!/aut(λ) = Bell numbers")))
}

pub fn fdb_theorem(config: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for n in 1..=config.fdb_max_n {
        let d = fdb_coproduct(n)?;
        if d != fdb_from_bell(n)? {
            failures.push(format!("Bell form at {n}"));
        }
        for t in 0..config.trials {
            let f = Series1::random(n, true, &mut rng);
            let g = Series1::random(n, false, &mut rng);
            if !series::fdb_duality_check(n, &f, &g, &d)? {
                failures.push(format!("duality n={n} trial {t}"));
            }
        }
    }
    Ok(verdict(
        failures,
        format!("n ≤ {}, {} trials each, seed {}", config.fdb_max_n, config.trials, config.seed),
    ))
}

pub fn plethystic_theorem(config: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let w = config.plethystic_max_weight;
    let lambdas: Vec<Lambda> = Lambda::up_to_weight(w).into_iter().filter(|l| !l.is_zero()).collect();
    for l in &lambdas {
        let d = plethystic_coproduct(l)?;
        for t in 0..config.trials {
            let f = MultiSeries::random(w, true, &mut rng);
            let g = MultiSeries::random(w, false, &mut rng);
            if !series::plethystic_duality_check(l, &f, &g, &d)? {
                failures.push(format!("λ={l} trial {t}"));
            }
        }
    }
    Ok(verdict(
        failures,
        format!("{} types of weight ≤ {w}, {} trials each, seed {}", lambdas.len(), config.trials, config.seed),
    ))
}

pub fn segal_formula(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut count = 0usize;
    for l in Lambda::up_to_weight(5).into_iter().filter(|l| !l.is_zero()) {
        let s = partition_of_type(&l).to_surjection();
        let f = NSSimplex::from_chain(vec![s.clone()])?;
        count += 1;
        if segalcom_coproduct_ns(&f)? != ns_coproduct(&s)? {
            failures.push(format!("NS {l}"));
        }
    }
    for m in Monomial::all_up_to_weight(4).iter().filter(|m| !m.is_unit()) {
        let f = TSSimplex::from_monomial(m);
        count += 1;
        if segalcom_coproduct_ts(&f)? != transversal_coproduct_of(&f)? {
            failures.push(format!("TS {m}"));
        }
    }
    Ok(verdict(failures, format!("{count} classes: fat nerve n ≤ 5, pyramids weight ≤ 4")))
}

pub fn bialgebra_axioms(config: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut checks = 0usize;
    for (kind, bound) in [
        (CoalgebraKind::Fdb, config.fdb_max_n),
        (CoalgebraKind::Plethystic, config.plethystic_max_weight),
    ] {
        let c = Coalgebra::new(kind);
        for g in c.generators(bound) {
            let p = Poly::generator(g.clone());
            checks += 2;
            if !c.check_coassociativity(&p)? {
                failures.push(format!("{kind:?} coassociativity {g}"));
            }
            if !c.check_counit(&p)? {
                failures.push(format!("{kind:?} counit {g}"));
            }
            // grading: one left factor per point of the middle vertex; in one
            // variable the left side also covers the whole top set
            for (l, r) in c.generator_coproduct(&g)?.terms().keys() {
                let graded = match kind {
                    CoalgebraKind::Fdb => l.weight() == g.weight() && l.degree() == r.weight(),
                    CoalgebraKind::Plethystic => l.degree() == r.factors().iter().map(Lambda::parts).sum::<usize>(),
                };
                if !graded {
                    failures.push(format!("{kind:?} grading {g}: {l} ⊗ {r}"));
                }
            }
        }
        let monos = c.monomials(bound);
        for m in &monos {
            for n in &monos {
                if m.weight() + n.weight() > bound || m > n {
                    continue;
                }
                checks += 2;
                if !c.check_multiplicative(m, n)? {
                    failures.push(format!("{kind:?} Δ({m}·{n})"));
                }
                if counit_monomial(&m.mul(n)) != counit_monomial(m) * counit_monomial(n) {
                    failures.push(format!("{kind:?} ε({m}·{n})"));
                }
            }
        }
    }
    // the top set is the pullback: |E| = Σ over join blocks of #π-blocks · #τ-blocks
    for l in Lambda::up_to_weight(config.plethystic_max_weight).into_iter().filter(|l| !l.is_zero()) {
        let sigma = partition_of_type(&l);
        for (pi, tau) in enumerate_transversals(&sigma, config.plethystic_max_weight)? {
            checks += 1;
            let size: usize = pi
                .join(&tau)?
                .blocks()
                .iter()
                .map(|b| Ok(pi.restrict(b)?.block_count() * tau.restrict(b)?.block_count()))
                .sum::<Result<usize>>()?;
            if size != l.weight() {
                failures.push(format!("pullback size {l}: π={pi} τ={tau}"));
            }
        }
    }
    for m in Monomial::all_up_to_weight(config.plethystic_max_weight).iter().filter(|m| !m.is_unit()) {
        checks += 1;
        if incidence::counit_direct_ts(&TSSimplex::from_monomial(m))? != counit_monomial(m) {
            failures.push(format!("degenerate counit {m}"));
        }
    }
    Ok(verdict(failures, format!("{checks} checks, one variable n ≤ {}, plethystic weight ≤ {}", config.fdb_max_n, config.plethystic_max_weight)))
}

pub fn partitional_keystone(_: &SuiteConfig) -> Result<(bool, String)> {
    let bad = series::partitional_keystone(Partitional::Uniform, Partitional::NonemptyUniform, 4)?;
    let mut failures: Vec<String> = bad.iter().map(|l| format!("λ={l}")).collect();
    let mut total = BigUint::from(0u32);
    for l in Lambda::of_weight(4) {
        total += series::partitional_substitute_count(Partitional::Uniform, Partitional::NonemptyUniform, &partition_of_type(&l))?;
    }
    if total == BigUint::from(0u32) {
        failures.push("no structures at weight 4".into());
    }
    Ok(verdict(failures, format!("every type of weight ≤ 4; {total} structures over the weight-4 representatives")))
}

pub fn segal_and_identities(_: &SuiteConfig) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let ns = simplicial::segal_check_ns(simplicial::DEFAULT_TWO_SIMPLEX_BOUND);
    let ts = simplicial::segal_check_ts(simplicial::DEFAULT_TWO_SIMPLEX_BOUND);
    failures.extend(ns.failures.iter().map(|f| format!("NS segal: {f}")));
    failures.extend(ts.failures.iter().map(|f| format!("TS segal: {f}")));
    let bound = simplicial::DEFAULT_THREE_SIMPLEX_BOUND;
    let mut identities = 0;
    for level in 1..=3 {
        let a = simplicial::check_simplicial_identities(&simplicial::ns_simplices(level, bound));
        let b = simplicial::check_simplicial_identities(&simplicial::ts_simplices_by_spine(level, bound));
        identities += a.identities + b.identities;
        failures.extend(a.failures.iter().map(|f| format!("NS level {level}: {f}")));
        failures.extend(b.failures.iter().map(|f| format!("TS level {level}: {f}")));
    }
    Ok(verdict(
        failures,
        format!(
            "Segal at top size ≤ {}: {} + {} fillers; {identities} identities up to level 3",
            simplicial::DEFAULT_TWO_SIMPLEX_BOUND,
            ns.fillers,
            ts.fillers
        ),
    ))
}
