//! `lrows`: reproducible, certificate-carrying runs of the row reduction and
//! the algebraic oracles.
//!
//! Exit codes: 0 success; 1 failed claim or internal error; 2 usage error;
//! 3 not unimodular (or a certificate that does not re-verify); 4 precision
//! loss; 5 oracle timeout.

mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use laurent_rows::batch::par_map_jobs;
use laurent_rows::gb::{
    expected_case, irreducibility_instance, irreducibility_precheck, localization_iso_verify, regular_sequence_check,
    GbOptions, RegSeqMethod, Report, Verdict,
};
use laurent_rows::json;
use laurent_rows::laurent::LaurentPoly;
use laurent_rows::row::{complete_length2, gen_example, weierstrass_reduce, ReductionResult, RowBundle, RowBundleDoc};
use laurent_rows::universal::{
    build_localized_presentation, build_presentation, grading_check, select_localization_data, stabilization_index,
    universal_map, RingPresentation,
};
use laurent_rows::{Error, LocalBase};
use manifest::{manifest_path, RunManifest};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "lrows", version, about = "Exact certificates for unimodular rows and universal complete intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded unimodular row with its complement.
    GenRow {
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = parse_base)]
        base: LocalBase,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reduce a row to Weierstrass form with certificates, or re-verify a result.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 64)]
        precision: i64,
        #[arg(long, required_unless_present = "verify_only")]
        out: Option<PathBuf>,
        /// Treat the input as a reduction result and only re-check it.
        #[arg(long)]
        verify_only: bool,
    },
    /// Run an oracle and print its verdict.
    Check(CheckArgs),
    /// Write the presentation of B_{r,k,n} (or A_{r,k,n} with --localized).
    BuildPresentation {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_base, default_value = "Z")]
        base: LocalBase,
        #[arg(long)]
        localized: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Complete a length-2 row to a matrix of determinant 1.
    Complete2 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Claim {
    Regseq,
    Irreducible,
    LocIso,
    Grading,
    UniversalMap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hilbert,
    Quotient,
}

#[derive(clap::Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    claim: Claim,
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// One or more values, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    k: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    ell: Vec<usize>,
    /// Index of `a_i`; for `irreducible`, `a_0..a_i` are killed (none if absent).
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, value_delimiter = ',', value_parser = parse_base, default_value = "Q")]
    base: Vec<LocalBase>,
    #[arg(long, value_enum, default_value = "hilbert")]
    method: Method,
    #[arg(long, default_value_t = 3)]
    degree: u32,
    #[arg(long, default_value_t = 200_000)]
    pair_budget: usize,
    /// Input file for `grading` (a presentation) or `universal-map` (a reduction result).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Also write the report here, with a manifest next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent instances (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn parse_base(s: &str) -> Result<LocalBase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotUnimodular(_) => 3,
            Error::PrecisionLoss(_) => 4,
            Error::OracleTimeout(_) => 5,
            Error::InvalidInput(_) | Error::NotLocalBase(_) | Error::NotPrime(_) => 2,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 1, msg: e.to_string() }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure { code, msg: msg.into() }
}

fn read_json(path: &Path) -> Result<serde_json::Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(v: serde_json::Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| fail(1, format!("malformed {what}: {e}")))
}

fn write_pretty<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| fail(1, e.to_string()))? + "\n";
    std::fs::write(path, text)?;
    Ok(())
}

fn write_manifest(command: &str, seed: Option<u64>, inputs: &[&Path], out: &Path, start: Instant) -> Result<(), Failure> {
    let m = RunManifest::new(command, seed, inputs, &[out], start.elapsed())?;
    std::fs::write(manifest_path(out), m.to_json())?;
    Ok(())
}

/// Accepts a bare bundle or the document form written by `gen-row`.
fn load_bundle(path: &Path) -> Result<RowBundle, Failure> {
    let v = read_json(path)?;
    let b: RowBundle = if v.get("bundle").is_some() {
        parse::<RowBundleDoc>(v, "RowBundle")?.bundle
    } else {
        parse(v, "RowBundle")?
    };
    Ok(b.validated()?)
}

fn gen_row(r: usize, base: LocalBase, seed: u64, steps: usize, out: &Path) -> Result<u8, Failure> {
    let start = Instant::now();
    let (bundle, witness) = gen_example(r, base, seed, steps)?;
    let doc = RowBundleDoc {
        seed: Some(seed),
        steps: Some(steps),
        witness: Some(witness),
        ..RowBundleDoc::new(bundle)
    };
    write_pretty(out, &doc)?;
    write_manifest("gen-row", Some(seed), &[], out, start)?;
    Ok(0)
}

fn verify_result(res: &ReductionResult) -> Result<u8, Failure> {
    let report = res.verify()?;
    eprintln!("{}", serde_json::to_string(&report).expect("serializable"));
    Ok(if report.passed() { 0 } else { 3 })
}

fn reduce(input: &Path, precision: i64, out: Option<&Path>, verify_only: bool) -> Result<u8, Failure> {
    let start = Instant::now();
    if verify_only {
        let res: ReductionResult = parse(read_json(input)?, "ReductionResult")?;
        return verify_result(&res.normalized()?);
    }
    let out = out.ok_or_else(|| fail(2, "--out is required"))?;
    let bundle = load_bundle(input)?;
    let res = weierstrass_reduce(&bundle, precision)?;
    let code = verify_result(&res)?;
    write_pretty(out, &res)?;
    write_manifest("reduce", None, &[input], out, start)?;
    Ok(code)
}

fn build(r: usize, k: usize, n: usize, base: LocalBase, localized: bool, out: &Path) -> Result<u8, Failure> {
    let start = Instant::now();
    let p = if localized {
        build_localized_presentation(r, k, n, base)?
    } else {
        build_presentation(r, k, n, base)?
    };
    write_pretty(out, &p.to_json())?;
    write_manifest("build-presentation", None, &[], out, start)?;
    Ok(0)
}

fn complete2(input: &Path, out: &Path) -> Result<u8, Failure> {
    let start = Instant::now();
    let bundle = load_bundle(input)?;
    let m = complete_length2(&bundle)?;
    #[derive(Serialize)]
    struct Completion {
        schema: &'static str,
        base: LocalBase,
        #[serde(with = "json::laurent_matrix")]
        matrix: Vec<Vec<LaurentPoly>>,
        #[serde(with = "json::laurent")]
        determinant: LaurentPoly,
    }
    write_pretty(
        out,
        &Completion {
            schema: "v1/Completion",
            base: bundle.base,
            determinant: m.det_cofactor(),
            matrix: m.to_rows(),
        },
    )?;
    write_manifest("complete2", None, &[input], out, start)?;
    Ok(0)
}

fn pass_fail(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn check_reports(a: &CheckArgs) -> Result<Vec<Report>, Failure> {
    let opts = GbOptions {
        pair_budget: a.pair_budget,
        degree_bound: None,
    };
    let combos = |with_ell: bool| {
        let mut v = Vec::new();
        for &base in &a.base {
            for &k in &a.k {
                for &n in &a.n {
                    if with_ell {
                        for &ell in &a.ell {
                            v.push((base, k, n, ell));
                        }
                    } else {
                        v.push((base, k, n, 0));
                    }
                }
            }
        }
        v
    };
    let r = a.r;
    let results: Vec<Result<Report, Error>> = match a.claim {
        Claim::Regseq => {
            let method = match a.method {
                Method::Hilbert => RegSeqMethod::Hilbert { degree: a.degree },
                Method::Quotient => RegSeqMethod::Quotient,
            };
            par_map_jobs(&combos(false), a.jobs, |&(base, k, n, _)| regular_sequence_check(r, k, n, base, method, &opts))
        }
        Claim::Irreducible => {
            let kill = a.i.map_or(-1, |i| i as i64);
            let items: Vec<_> = combos(true).into_iter().filter(|&(_, k, n, ell)| ell != k && ell <= n).collect();
            par_map_jobs(&items, a.jobs, |&(base, k, n, ell)| {
                let instance = serde_json::json!({"r": r, "k": k, "n": n, "ell": ell, "i": kill, "base": base.to_string()});
                Report::run("irreducible", instance, "precheck", || {
                    let (g, fs, phi) = irreducibility_instance(r, k, n, ell, kill)?;
                    let v = irreducibility_precheck(&g, &fs, &phi)?;
                    let expected = expected_case(k, n, ell);
                    let ok = v.passed() && v.case == Some(expected);
                    let mut w = serde_json::to_value(&v).expect("serializable");
                    w["expected_case"] = expected.into();
                    Ok((pass_fail(ok), Some(w)))
                })
            })
        }
        Claim::LocIso => {
            let i = a.i.unwrap_or(0);
            par_map_jobs(&combos(true), a.jobs, |&(base, k, n, ell)| {
                let d = select_localization_data(r, k, n, ell, i)?;
                localization_iso_verify(&d, base, &opts).map(|(_, rep)| rep)
            })
        }
        Claim::Grading => {
            let presentations: Vec<RingPresentation> = match &a.input {
                Some(p) => vec![RingPresentation::from_json(&read_json(p)?)?],
                None => combos(false)
                    .into_iter()
                    .map(|(base, k, n, _)| build_presentation(r, k, n, base))
                    .collect::<Result<_, _>>()?,
            };
            presentations
                .iter()
                .map(|p| {
                    let instance = serde_json::json!({ "meta": p.meta, "base": p.base.to_string(), "nvars": p.vars.len() });
                    Report::run("grading", instance, "homogeneity", || match grading_check(p) {
                        Ok(g) => Ok((Verdict::Pass, Some(serde_json::to_value(&g).expect("serializable")))),
                        Err(e @ Error::NonHomogeneous { .. }) => Ok((Verdict::Fail, Some(e.to_string().into()))),
                        Err(e) => Err(e),
                    })
                })
                .collect()
        }
        Claim::UniversalMap => {
            let path = a.input.as_ref().ok_or_else(|| fail(2, "universal-map needs --in <ReductionResult.json>"))?;
            let res: ReductionResult = parse(read_json(path)?, "ReductionResult")?;
            let res = res.normalized()?;
            let instance = serde_json::json!({ "input": path.display().to_string(), "k": res.k });
            vec![Report::run("universal-map", instance, "convolution", || {
                let m = universal_map(&res.normalized_row, &res.normalized_complement, res.k as usize)?;
                let n = stabilization_index(&m);
                let ok = m.relations_hold() && n <= m.max_degree;
                let mut w = serde_json::to_value(&m).expect("serializable");
                w["stabilization_index"] = n.into();
                Ok((pass_fail(ok), Some(w)))
            })]
        }
    };
    Ok(results.into_iter().collect::<Result<_, _>>()?)
}

fn check(a: &CheckArgs) -> Result<u8, Failure> {
    let start = Instant::now();
    let reports = check_reports(a)?;
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .expect("serializable")
        + "\n";
    print!("{text}");
    let inputs: Vec<&Path> = a.input.iter().map(|p| p.as_path()).collect();
    match &a.out {
        Some(out) => {
            std::fs::write(out, &text)?;
            write_manifest("check", None, &inputs, out, start)?;
        }
        None => {
            let m = RunManifest::new("check", None, &inputs, &[], start.elapsed())?;
            eprint!("{}", m.to_json());
        }
    }
    let code = if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        1
    } else if reports.iter().any(|r| r.verdict == Verdict::Timeout) {
        5
    } else {
        0
    };
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::GenRow { r, base, seed, steps, out } => gen_row(*r, *base, *seed, *steps, out),
        Command::Reduce {
            input,
            precision,
            out,
            verify_only,
        } => reduce(input, *precision, out.as_deref(), *verify_only),
        Command::Check(a) => check(a),
        Command::BuildPresentation {
            r,
            k,
            n,
            base,
            localized,
            out,
        } => build(*r, *k, *n, *base, *localized, out),
        Command::Complete2 { input, out } => complete2(input, out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("lrows: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
