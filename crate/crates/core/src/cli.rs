//! Command-line front end.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{check_bound, Error, Result};
use crate::incidence::{self, partition_of_type, Poly, TensorPoly};
use crate::lambda::Lambda;
use crate::partition::{enumerate_transversals, Partition};
use crate::perm;
use crate::series::{self, MultiSeries, Series1, Species};
use crate::simplicial::{self, SegalReport};
use crate::verify::{self, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "objcomb", version, about = "Faà di Bruno and plethystic bialgebras by exact enumeration")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Weight bound for plethystic computations.
    #[arg(long, global = true)]
    pub max_weight: Option<usize>,

    /// Size bound for one-variable computations and Segal checks.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,

    /// Seed for random series.
    #[arg(long, global = true, default_value_t = SuiteConfig::default().seed)]
    pub seed: u64,

    /// Random trials per duality check.
    #[arg(long, global = true, default_value_t = SuiteConfig::default().trials)]
    pub trials: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Δ(Aₙ) in the Faà di Bruno bialgebra.
    FdbCoproduct { n: usize },
    /// Δ(A_λ) in the plethystic bialgebra; λ as `{2:1,3:1}` or `[[0,1],[2]]`.
    PlethCoproduct { lambda: String },
    /// Partial Bell polynomial B_{n,k}(A₁, A₂, …).
    Bell { n: usize, k: usize },
    /// Labelled transversals of a partition and their iso classes.
    Transversals {
        #[arg(long)]
        sigma: String,
    },
    /// Segal condition for the fat nerve and the pyramid groupoid.
    SegalCheck {
        #[arg(long, value_enum, default_value_t = FamilyArg::Both)]
        family: FamilyArg,
    },
    /// Duality of the coproducts with (plethystic) substitution on random series.
    DualityCheck {
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
    },
    /// Fixed-point sum and cycle index of a species (`pi`, `pi+`, `x`, `e`, `e+`).
    CycleIndex { species: String, n: usize },
    /// Run the full verification suite.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Ns,
    Ts,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Fdb,
    Pleth,
    Both,
}

/// A verb's result in every supported format.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    /// False when a check ran and failed.
    pub success: bool,
}

impl Rendered {
    pub fn format(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("plain data") + "\n"),
            Format::Text => Ok(self.text.clone() + "\n"),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Error::Precondition("this command has no CSV form".into())),
        }
    }
}

/// Machine-readable error document.
pub fn error_json(e: &Error) -> Value {
    let mut doc = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
    match e {
        Error::Parse { position, .. } => doc["error"]["position"] = json!(position),
        Error::BoundExceeded { limit, got, .. } => {
            doc["error"]["limit"] = json!(limit);
            doc["error"]["got"] = json!(got);
        }
        _ => {}
    }
    doc
}

/// `{2:1,3:1}` as a multiplicity map or `[[0,1],[2]]` as a partition literal.
pub fn parse_partition(src: &str) -> Result<Partition> {
    match src.trim_start().chars().next() {
        Some('[') => Partition::parse_blocks(src),
        Some('{') => Ok(partition_of_type(&Lambda::parse_map(src)?)),
        _ => Err(Error::Parse {
            position: 0,
            message: "expected `{size:multiplicity,…}` or `[[block],…]`".into(),
        }),
    }
}

pub fn parse_lambda(src: &str) -> Result<Lambda> {
    Ok(parse_partition(src)?.lambda_type())
}

pub fn run(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::FdbCoproduct { n } => {
            let d = incidence::fdb_coproduct_with_bound(*n, cli.max_n.unwrap_or(incidence::DEFAULT_FDB_BOUND))?;
            Ok(tensor(&d))
        }
        Command::PlethCoproduct { lambda } => {
            let l = parse_lambda(lambda)?;
            let bound = cli.max_weight.unwrap_or(incidence::DEFAULT_PLETHYSTIC_BOUND);
            Ok(tensor(&incidence::plethystic_coproduct_with_bound(&l, bound)?))
        }
        Command::Bell { n, k } => {
            check_bound("n", *n, cli.max_n.unwrap_or(incidence::DEFAULT_FDB_BOUND))?;
            Ok(poly(&incidence::bell_polynomial(*n, *k)?))
        }
        Command::Transversals { sigma } => {
            let sigma = parse_partition(sigma)?;
            transversals(&sigma, cli.max_weight.unwrap_or(incidence::DEFAULT_PLETHYSTIC_BOUND))
        }
        Command::SegalCheck { family } => {
            let bound = cli.max_n.unwrap_or(simplicial::DEFAULT_TWO_SIMPLEX_BOUND);
            check_bound("Segal top set size", bound, simplicial::DEFAULT_TWO_SIMPLEX_BOUND)?;
            let mut reports = Vec::new();
            if *family != FamilyArg::Ts {
                reports.push(simplicial::segal_check_ns(bound));
            }
            if *family != FamilyArg::Ns {
                reports.push(simplicial::segal_check_ts(bound));
            }
            Ok(segal(&reports))
        }
        Command::DualityCheck { kind } => duality(cli, *kind),
        Command::CycleIndex { species, n } => cycle_index(Species::parse(species)?, *n),
        Command::Report => {
            let config = SuiteConfig {
                seed: cli.seed,
                trials: cli.trials,
                fdb_max_n: cli.max_n.unwrap_or(SuiteConfig::default().fdb_max_n),
                plethystic_max_weight: cli.max_weight.unwrap_or(SuiteConfig::default().plethystic_max_weight),
            };
            check_bound("n", config.fdb_max_n, incidence::DEFAULT_FDB_BOUND)?;
            check_bound("weight", config.plethystic_max_weight, incidence::DEFAULT_PLETHYSTIC_BOUND)?;
            Ok(report(&config))
        }
    }
}

fn tensor(t: &TensorPoly) -> Rendered {
    Rendered {
        json: t.to_json(),
        text: t.to_string(),
        csv: Some(t.to_csv()),
        success: true,
    }
}

fn poly(p: &Poly) -> Rendered {
    let rows = p
        .terms()
        .iter()
        .map(|(m, c)| vec![m.to_string(), c.numer().to_string(), c.denom().to_string()]);
    Rendered {
        json: p.to_json(),
        text: p.to_string(),
        csv: Some(csv_table(&["monomial", "numerator", "denominator"], rows)),
        success: true,
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

fn transversals(sigma: &Partition, bound: usize) -> Result<Rendered> {
    let pairs = enumerate_transversals(sigma, bound)?;
    let n = sigma.ground_size();
    let autos: Vec<_> = perm::all(n).filter(|p| sigma.permute(p) == *sigma).collect();
    let classes: BTreeSet<(Vec<usize>, Vec<usize>)> = pairs
        .iter()
        .map(|(pi, tau)| {
            autos
                .iter()
                .map(|g| (pi.permute(g).block_of().to_vec(), tau.permute(g).block_of().to_vec()))
                .min()
                .expect("the identity is an automorphism")
        })
        .collect();
    let listed: Vec<Value> = pairs.iter().map(|(pi, tau)| json!({ "pi": pi, "tau": tau })).collect();
    let mut text = format!(
        "σ = {sigma}: {} labelled transversals, {} iso classes",
        pairs.len(),
        classes.len()
    );
    for (pi, tau) in &pairs {
        text.push_str(&format!("\n  π = {pi}  τ = {tau}"));
    }
    Ok(Rendered {
        json: json!({
            "sigma": sigma,
            "labelled": pairs.len(),
            "classes": classes.len(),
            "pairs": listed,
        }),
        text,
        csv: Some(csv_table(
            &["pi", "tau"],
            pairs.iter().map(|(pi, tau)| vec![pi.to_string(), tau.to_string()]),
        )),
        success: true,
    })
}

fn segal(reports: &[SegalReport]) -> Rendered {
    let name = |r: &SegalReport| format!("{:?}", r.family).to_lowercase();
    let json: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "family": name(r),
                "bound": r.bound,
                "class_pairs": r.class_pairs,
                "fillers": r.fillers,
                "enumerated": r.enumerated,
                "passed": r.passed(),
                "failures": r.failures,
            })
        })
        .collect();
    let text = reports
        .iter()
        .map(|r| {
            format!(
                "{} {}: bound {}, {} class pairs, {} fillers, {} labelled 2-simplices",
                if r.passed() { "PASS" } else { "FAIL" },
                name(r),
                r.bound,
                r.class_pairs,
                r.fillers,
                r.enumerated
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let rows = reports.iter().map(|r| {
        vec![
            name(r),
            r.bound.to_string(),
            r.class_pairs.to_string(),
            r.fillers.to_string(),
            r.enumerated.to_string(),
            r.passed().to_string(),
        ]
    });
    Rendered {
        json: Value::Array(json),
        text,
        csv: Some(csv_table(
            &["family", "bound", "class_pairs", "fillers", "enumerated", "passed"],
            rows,
        )),
        success: reports.iter().all(SegalReport::passed),
    }
}

fn duality(cli: &Cli, kind: KindArg) -> Result<Rendered> {
    let mut rows: Vec<(String, String, usize, usize)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    if kind != KindArg::Pleth {
        let max_n = cli.max_n.unwrap_or(SuiteConfig::default().fdb_max_n);
        check_bound("n", max_n, incidence::DEFAULT_FDB_BOUND)?;
        for n in 1..=max_n {
            let d = incidence::fdb_coproduct(n)?;
            let mut passed = 0;
            for _ in 0..cli.trials {
                let f = Series1::random(n, true, &mut rng);
                let g = Series1::random(n, false, &mut rng);
                passed += usize::from(series::fdb_duality_check(n, &f, &g, &d)?);
            }
            rows.push(("fdb".into(), n.to_string(), cli.trials, passed));
        }
    }
    if kind != KindArg::Fdb {
        let w = cli.max_weight.unwrap_or(SuiteConfig::default().plethystic_max_weight);
        check_bound("weight", w, incidence::DEFAULT_PLETHYSTIC_BOUND)?;
        for l in Lambda::up_to_weight(w).into_iter().filter(|l| !l.is_zero()) {
            let d = incidence::plethystic_coproduct(&l)?;
            let mut passed = 0;
            for _ in 0..cli.trials {
                let f = MultiSeries::random(w, true, &mut rng);
                let g = MultiSeries::random(w, false, &mut rng);
                passed += usize::from(series::plethystic_duality_check(&l, &f, &g, &d)?);
            }
            rows.push(("pleth".into(), l.to_string(), cli.trials, passed));
        }
    }
    let success = rows.iter().all(|r| r.2 == r.3);
    let json: Vec<Value> = rows
        .iter()
        .map(|(k, key, t, p)| json!({ "kind": k, "key": key, "trials": t, "passed": p }))
        .collect();
    let text = rows
        .iter()
        .map(|(k, key, t, p)| format!("{} {k} {key}: {p}/{t}", if t == p { "PASS" } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Rendered {
        json: json!({ "seed": cli.seed, "checks": json }),
        text,
        csv: Some(csv_table(
            &["kind", "key", "trials", "passed"],
            rows.iter().map(|(k, key, t, p)| vec![k.clone(), key.clone(), t.to_string(), p.to_string()]),
        )),
        success,
    })
}

fn cycle_index(species: Species, n: usize) -> Result<Rendered> {
    let tables = series::species_tables(species, n)?;
    let sum = tables.fixed_point_sum(n);
    let terms: Vec<Value> = tables.fixed_point_sums[n]
        .iter()
        .map(|(l, c)| json!({ "cycle_type": l, "fixed_points": c.to_string() }))
        .collect();
    Ok(Rendered {
        json: json!({
            "species": species,
            "n": n,
            "fixed_point_sum": sum.to_string(),
            "terms": terms,
            "labelled": tables.labelled[n].to_string(),
            "unlabelled": tables.unlabelled[n].to_string(),
            "specializations_hold": tables.specializations_hold(),
        }),
        text: sum.to_string(),
        csv: Some(csv_table(
            &["cycle-type", "fixed-points"],
            tables.fixed_point_sums[n]
                .iter()
                .map(|(l, c)| vec![series::monomial_string(l), c.to_string()]),
        )),
        success: true,
    })
}

fn report(config: &SuiteConfig) -> Rendered {
    let results = verify::run_all(config);
    let text = results
        .iter()
        .map(|r| {
            format!(
                "{} {} ({} ms): {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.millis,
                r.detail
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Rendered {
        json: json!({ "config": config, "results": results }),
        text,
        csv: Some(csv_table(
            &["name", "passed", "millis", "detail"],
            results
                .iter()
                .map(|r| vec![r.name.to_string(), r.passed.to_string(), r.millis.to_string(), r.detail.clone()]),
        )),
        success: results.iter().all(|r| r.passed),
    }
}

/// Parse arguments, run, and write the output. Returns the process exit code:
/// 0 on success, 1 when a check fails, 2 on invalid input.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            let doc = json!({ "error": { "kind": "usage", "message": e.to_string().trim_end() } });
            eprintln!("{doc}");
            return 2;
        }
    };
    let rendered = match run(&cli).and_then(|r| Ok((r.format(cli.format)?, r.success))) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            return 2;
        }
    };
    let (body, success) = rendered;
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &body),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(body.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("{}", json!({ "error": { "kind": "io", "message": e.to_string() } }));
        return 2;
    }
    if success {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Rendered> {
        let cli = Cli::try_parse_from(std::iter::once("objcomb").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn fdb_three() {
        let r = run_args(&["fdb-coproduct", "3"]).unwrap();
        assert_eq!(r.json.as_array().unwrap().len(), 3);
        assert_eq!(TensorPoly::from_json(&r.json).unwrap(), incidence::fdb_coproduct(3).unwrap());
    }

    #[test]
    fn transversals_of_top_on_two() {
        let r = run_args(&["transversals", "--sigma", "[[0,1]]"]).unwrap();
        assert_eq!(r.json["labelled"], 2);
        assert_eq!(r.json["classes"], 2);
        let r = run_args(&["transversals", "--sigma", "[[0],[1],[2]]"]).unwrap();
        assert_eq!(r.json["labelled"], 5);
    }

    #[test]
    fn cycle_index_text() {
        let r = run_args(&["cycle-index", "pi", "3"]).unwrap();
        assert_eq!(r.text, "5x1^3 + 9x1x2 + 4x3");
        assert_eq!(r.json["labelled"], "5");
        assert_eq!(r.json["unlabelled"], "3");
    }

    #[test]
    fn lambda_syntaxes_agree() {
        let a = run_args(&["pleth-coproduct", "{1:1,2:1}"]).unwrap();
        let b = run_args(&["pleth-coproduct", "[[0],[1,2]]"]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_are_typed() {
        match run_args(&["fdb-coproduct", "9"]) {
            Err(e @ Error::BoundExceeded { limit: 8, .. }) => assert_eq!(error_json(&e)["error"]["limit"], 8),
            other => panic!("{other:?}"),
        }
        match run_args(&["pleth-coproduct", "{2:x}"]) {
            Err(e @ Error::Parse { .. }) => assert_eq!(error_json(&e)["error"]["kind"], "parse"),
            other => panic!("{other:?}"),
        }
        assert!(run_args(&["pleth-coproduct", "2"]).is_err());
        assert!(run_args(&["cycle-index", "pi", "7"]).is_err());
        assert!(run_args(&["segal-check", "--max-n", "9"]).is_err());
    }

    #[test]
    fn csv_where_supported() {
        let r = run_args(&["bell", "4", "2"]).unwrap();
        let csv = r.format(Format::Csv).unwrap();
        assert!(csv.starts_with("monomial,numerator,denominator\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
