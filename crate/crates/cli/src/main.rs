//! `boolfam`: JSON in, JSON out.
//!
//! Exit status: 0 when the answer is affirmative, 1 when the checked
//! property fails (the report carries a witness), 2 for malformed input or
//! a failed precondition, 3 when a resource cap is hit.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use boolfam::cantor::{
    build_a, build_separated_family, check_separation_conditions, convergence_index, sigma_n,
    union_measure, verify_separation_bound,
};
use boolfam::harness::{self, Profile};
use boolfam::independence::{
    check_poly_bound_strict, i_threshold, is_independent_capped, max_independent,
    poly_image_traced, sauer_check, sauer_shelah_extract, transpose, BooleanPolynomial,
    IndependenceVerdict, DEFAULT_INDEPENDENCE_CAP, DEFAULT_TUPLE_CAP,
};
use boolfam::json as doc;
use boolfam::measures::{
    determination_defect, i1_atom_check, min_pairwise_separation, nonatomic_threshold,
    product_measure_on_independent, separated_independence_probe, type_defect, AtomVerdict,
};
use boolfam::setsys::{
    count_intermediate_algebras, is_minimal_extension, minimal_by_quantifier,
    verify_minimal_chain, ExtensionVerdict, DEFAULT_INTERMEDIATE_ATOM_CAP,
};
use boolfam::Error;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "boolfam", version, about = "Exact combinatorics for finite Boolean algebras and set systems")]
struct Cli {
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Input document, or `-` for standard input.
    #[arg(long = "in", value_name = "FILE", default_value = "-")]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Finite algebras and minimal extensions.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Independent families, transposes.
    #[command(subcommand)]
    Indep(IndepCmd),
    /// Sauer-Shelah extraction and checks.
    #[command(subcommand)]
    Sauer(SauerCmd),
    /// The threshold I(n, r).
    Itable {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Boolean polynomial images.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Exact finitely additive measures.
    #[command(subcommand)]
    Measure(MeasureCmd),
    /// Cylinders and the sets A(x, phi) in 2^m.
    #[command(subcommand)]
    Cantor(CantorCmd),
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "quick")]
        profile: String,
        /// Run only the check with this id.
        #[arg(long)]
        check: Option<String>,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Atoms of the algebra generated by a set family.
    Atoms(Input),
    /// Is B(x) a minimal extension? Input: {"algebra": <set family>, "x": <set>}.
    MinimalExt(Input),
    /// Does the family generate a chain of minimal extensions, in order?
    Chain(Input),
}

#[derive(Subcommand)]
enum IndepCmd {
    /// Are all sign cells nonempty?
    Test {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_INDEPENDENCE_CAP)]
        cap: usize,
    },
    /// Largest independent subfamily.
    Max {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// The pattern family of points.
    Transpose(Input),
}

#[derive(Subcommand)]
enum SauerCmd {
    /// |C| distinct shattered coordinate sets.
    Extract(Input),
    /// If |C| exceeds the Sauer bound, a shattered n-set.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: u64,
    },
    /// Every nonempty family on t coordinates (t <= 4).
    Exhaustive {
        #[arg(long, default_value_t = 4)]
        t: usize,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// p(F) with the tuple behind each member.
    Image {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        poly: String,
    },
    /// For F without n independent members, p(F) has none of length I(n, r).
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum MeasureCmd {
    /// Measure of one set. Input: {"measure": …, "set": <set>}.
    Of(Input),
    /// Least pairwise separation, or the probe when --eps is given.
    /// Input: {"measure": …, "family": <set family>}.
    Sep {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Product measure on an independent family.
    Product(Input),
    /// Finite defects. Input: {"measure": …, "sub": <set family>}.
    Defects(Input),
    /// Input: {"g0": <set family>, "g": <set>}.
    I1Atom(Input),
}

#[derive(Subcommand)]
enum CantorCmd {
    /// The cylinder sigma_n. Input: Cantor parameters.
    Sigma {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
    },
    /// sigma_0, …, sigma_{n_max}, their union measure, and the
    /// convergence index for --k.
    Build {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// A family satisfying the separation conditions.
    Separate {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        m: usize,
    },
    /// Exact separation matrix. Input: a list of Cantor parameters, or
    /// none with --count and --m to build one.
    Verify {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<String>,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
}

/// A report and whether it answers the question affirmatively.
struct Report {
    body: Value,
    holds: bool,
}

fn report(body: impl serde::Serialize, holds: bool) -> Result<Report, Failure> {
    Ok(Report {
        body: serde_json::to_value(body).map_err(|e| Failure::input(e.to_string()))?,
        holds,
    })
}

struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn input(msg: String) -> Self {
        Failure {
            code: 2,
            body: json!({ "error": "input", "message": msg }),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::ResourceCap { .. } => (3, "resource_cap"),
            Error::Precondition(_) => (2, "precondition_failed"),
            Error::Truncation(_) => (2, "truncation"),
            _ => (2, "input"),
        };
        Failure {
            code,
            body: json!({ "error": kind, "message": e.to_string() }),
        }
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
    } else {
        text = fs::read_to_string(PathBuf::from(path))
            .map_err(|e| Failure::input(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn load(path: &str) -> Result<Value, Failure> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| Failure {
        code: 2,
        body: json!({
            "error": "input",
            "message": format!("malformed JSON: {e}"),
            "line": e.line(),
            "column": e.column(),
        }),
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key)
        .ok_or_else(|| Failure::input(format!("missing field {key:?}")))
}

fn parse_poly(src: &str) -> Result<BooleanPolynomial, Failure> {
    src.parse::<BooleanPolynomial>().map_err(Failure::from)
}

fn run(cmd: Command) -> Result<Report, Failure> {
    match cmd {
        Command::Algebra(c) => algebra(c),
        Command::Indep(c) => indep(c),
        Command::Sauer(c) => sauer(c),
        Command::Itable { n, r } => report(json!({ "n": n, "r": r, "I": i_threshold(n, r)? }), true),
        Command::Poly(c) => poly(c),
        Command::Measure(c) => measure(c),
        Command::Cantor(c) => cantor(c),
        Command::Verify { seed, profile, check } => {
            let profile: Profile = profile.parse()?;
            let suite = match check {
                None => harness::verify_suite(seed, profile),
                Some(id) => {
                    let c = harness::find_check(&id)
                        .ok_or_else(|| Failure::input(format!("no check named {id:?}")))?;
                    let one = harness::run_check(c, seed, profile);
                    harness::SuiteReport {
                        version: VERSION,
                        seed,
                        profile,
                        generator: boolfam::gen::GENERATOR,
                        passed: one.status == harness::Status::Pass,
                        checks: vec![one],
                    }
                }
            };
            let holds = suite.passed;
            let first = suite.first_failure().map(|c| c.id);
            let mut body = serde_json::to_value(&suite).map_err(|e| Failure::input(e.to_string()))?;
            body["first_failure"] = json!(first);
            Ok(Report { body, holds })
        }
    }
}

fn algebra(cmd: AlgebraCmd) -> Result<Report, Failure> {
    match cmd {
        AlgebraCmd::Atoms(i) => {
            let b = doc::algebra_from_value(&load(&i.input)?)?;
            report(json!({ "atom_count": b.atom_count(), "algebra": b }), true)
        }
        AlgebraCmd::MinimalExt(i) => {
            let v = load(&i.input)?;
            let b = doc::algebra_from_value(field(&v, "algebra")?)?;
            let x = doc::mask_from_value(b.ground_size(), field(&v, "x")?)?;
            let verdict = is_minimal_extension(&b, &x)?;
            let mut body = serde_json::to_value(&verdict).map_err(|e| Failure::input(e.to_string()))?;
            if b.atom_count() <= DEFAULT_INTERMEDIATE_ATOM_CAP {
                body["quantifier"] = json!(minimal_by_quantifier(&b, &x, DEFAULT_INTERMEDIATE_ATOM_CAP)?);
            }
            if verdict != ExtensionVerdict::AlreadyMember {
                body["intermediate_algebras"] =
                    json!(count_intermediate_algebras(&b, &x, DEFAULT_INTERMEDIATE_ATOM_CAP)?);
            }
            let holds = !matches!(verdict, ExtensionVerdict::NotMinimal { .. });
            Ok(Report { body, holds })
        }
        AlgebraCmd::Chain(i) => {
            let f = doc::set_family_from_value(&load(&i.input)?)?;
            let v = verify_minimal_chain(&f)?;
            let ok = v.is_ok();
            report(v, ok)
        }
    }
}

fn indep(cmd: IndepCmd) -> Result<Report, Failure> {
    match cmd {
        IndepCmd::Test { input, cap } => {
            let f = doc::set_family_from_value(&load(&input.input)?)?;
            let v = is_independent_capped(&f, cap)?;
            let ok = matches!(v, IndependenceVerdict::Independent);
            report(v, ok)
        }
        IndepCmd::Max { input, cap } => {
            let f = doc::set_family_from_value(&load(&input.input)?)?;
            report(max_independent(&f, cap)?, true)
        }
        IndepCmd::Transpose(i) => {
            let f = doc::set_family_from_value(&load(&i.input)?)?;
            report(transpose(&f), true)
        }
    }
}

fn sauer(cmd: SauerCmd) -> Result<Report, Failure> {
    match cmd {
        SauerCmd::Extract(i) => {
            let c = doc::pattern_family_from_value(&load(&i.input)?)?;
            let sets = sauer_shelah_extract(&c)?;
            report(json!({ "family_size": c.len(), "count": sets.len(), "sets": sets }), sets.len() == c.len())
        }
        SauerCmd::Check { input, n } => {
            let c = doc::pattern_family_from_value(&load(&input.input)?)?;
            let chk = sauer_check(&c, n)?;
            let ok = chk.holds();
            report(chk, ok)
        }
        SauerCmd::Exhaustive { t } => {
            if t > 4 {
                return Err(Error::ResourceCap {
                    what: "exhaustive sweep (coordinates)",
                    requested: t.to_string(),
                    cap: "4".into(),
                }
                .into());
            }
            let families = (1u64 << (1u64 << t)) - 1;
            match harness::sauer_sweep(t)? {
                None => report(json!({ "t": t, "families": families, "status": "pass" }), true),
                Some(w) => report(json!({ "t": t, "families": families, "status": "fail", "witness": w }), false),
            }
        }
    }
}

fn poly(cmd: PolyCmd) -> Result<Report, Failure> {
    match cmd {
        PolyCmd::Image { input, poly } => {
            let f = doc::set_family_from_value(&load(&input.input)?)?;
            let p = parse_poly(&poly)?;
            report(poly_image_traced(&f, &p, DEFAULT_TUPLE_CAP)?, true)
        }
        PolyCmd::Verify { input, poly, n } => {
            let f = doc::set_family_from_value(&load(&input.input)?)?;
            let p = parse_poly(&poly)?;
            let v = check_poly_bound_strict(&f, n, &p)?;
            let ok = v.holds();
            report(v, ok)
        }
    }
}

fn measure(cmd: MeasureCmd) -> Result<Report, Failure> {
    match cmd {
        MeasureCmd::Of(i) => {
            let v = load(&i.input)?;
            let mu = doc::measure_from_value(field(&v, "measure")?)?;
            let a = doc::mask_from_value(mu.algebra().ground_size(), field(&v, "set")?)?;
            report(json!({ "set": a, "measure": mu.measure_of(&a)?.to_string() }), true)
        }
        MeasureCmd::Sep { input, eps } => {
            let v = load(&input.input)?;
            let mu = doc::measure_from_value(field(&v, "measure")?)?;
            let f = doc::set_family_from_value(field(&v, "family")?)?;
            match eps {
                None => report(json!({ "min_separation": min_pairwise_separation(&mu, &f)?.to_string() }), true),
                Some(e) => report(separated_independence_probe(&mu, &f, &doc::parse_rational(&e)?)?, true),
            }
        }
        MeasureCmd::Product(i) => {
            let f = doc::set_family_from_value(&load(&i.input)?)?;
            report(product_measure_on_independent(&f)?, true)
        }
        MeasureCmd::Defects(i) => {
            let v = load(&i.input)?;
            let mu = doc::measure_from_value(field(&v, "measure")?)?;
            let sub = doc::set_family_from_value(field(&v, "sub")?)?;
            report(
                json!({
                    "nonatomic_threshold": nonatomic_threshold(&mu).to_string(),
                    "type_defect": type_defect(&mu, &sub)?.to_string(),
                    "determination_defect": determination_defect(&mu, &sub)?.to_string(),
                }),
                true,
            )
        }
        MeasureCmd::I1Atom(i) => {
            let v = load(&i.input)?;
            let g0 = doc::set_family_from_value(field(&v, "g0")?)?;
            let g = doc::mask_from_value(g0.ground_size(), field(&v, "g")?)?;
            let verdict = i1_atom_check(&g0, &g)?;
            let ok = !matches!(verdict, AtomVerdict::Violated { .. });
            report(verdict, ok)
        }
    }
}

fn cantor(cmd: CantorCmd) -> Result<Report, Failure> {
    match cmd {
        CantorCmd::Sigma { input, n } => {
            let p = doc::cantor_params_from_value(&load(&input.input)?)?;
            let c = sigma_n(&p, n)?;
            report(json!({ "n": n, "cylinder": c, "measure": c.measure().to_string() }), true)
        }
        CantorCmd::Build { input, n_max, k } => {
            let p = doc::cantor_params_from_value(&load(&input.input)?)?;
            let u = build_a(&p, n_max)?;
            let mut body = json!({
                "n_max": n_max,
                "cylinders": u.cylinders(),
                "measure": union_measure(&u)?.to_string(),
            });
            if let Some(k) = k {
                body["convergence"] = json!(convergence_index(&p, k, n_max)?);
            }
            Ok(Report { body, holds: true })
        }
        CantorCmd::Separate { p, count, m } => {
            let fam = build_separated_family(p, count, m)?;
            let shape = check_separation_conditions(p, &fam)?;
            report(json!({ "p": p, "family": fam, "conditions": shape }), true)
        }
        CantorCmd::Verify { input, p, n_max, count, m } => {
            let fam = match (input, count, m) {
                (Some(path), None, None) => {
                    let v = load(&path)?;
                    let list = v.get("family").unwrap_or(&v);
                    list.as_array()
                        .ok_or_else(|| Failure::input("expected a list of Cantor parameters".into()))?
                        .iter()
                        .map(doc::cantor_params_from_value)
                        .collect::<Result<Vec<_>, _>>()?
                }
                (None, Some(count), Some(m)) => build_separated_family(p, count, m)?,
                _ => return Err(Failure::input("give either --in, or both --count and --m".into())),
            };
            let rep = verify_separation_bound(p, &fam, n_max)?;
            let ok = rep.holds;
            report(rep, ok)
        }
    }
}

fn with_envelope(name: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("command".into(), json!(name));
    out.insert("version".into(), json!(VERSION));
    match body {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Algebra(AlgebraCmd::Atoms(_)) => "algebra atoms",
        Command::Algebra(AlgebraCmd::MinimalExt(_)) => "algebra minimal-ext",
        Command::Algebra(AlgebraCmd::Chain(_)) => "algebra chain",
        Command::Indep(IndepCmd::Test { .. }) => "indep test",
        Command::Indep(IndepCmd::Max { .. }) => "indep max",
        Command::Indep(IndepCmd::Transpose(_)) => "indep transpose",
        Command::Sauer(SauerCmd::Extract(_)) => "sauer extract",
        Command::Sauer(SauerCmd::Check { .. }) => "sauer check",
        Command::Sauer(SauerCmd::Exhaustive { .. }) => "sauer exhaustive",
        Command::Itable { .. } => "itable",
        Command::Poly(PolyCmd::Image { .. }) => "poly image",
        Command::Poly(PolyCmd::Verify { .. }) => "poly verify",
        Command::Measure(MeasureCmd::Of(_)) => "measure of",
        Command::Measure(MeasureCmd::Sep { .. }) => "measure sep",
        Command::Measure(MeasureCmd::Product(_)) => "measure product",
        Command::Measure(MeasureCmd::Defects(_)) => "measure defects",
        Command::Measure(MeasureCmd::I1Atom(_)) => "measure i1-atom",
        Command::Cantor(CantorCmd::Sigma { .. }) => "cantor sigma",
        Command::Cantor(CantorCmd::Build { .. }) => "cantor build",
        Command::Cantor(CantorCmd::Separate { .. }) => "cantor separate",
        Command::Cantor(CantorCmd::Verify { .. }) => "cantor verify",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = command_name(&cli.command);
    let (code, body) = match run(cli.command) {
        Ok(r) => (if r.holds { 0 } else { 1 }, r.body),
        Err(f) => (f.code, f.body),
    };
    let out = with_envelope(name, body);
    let text = if cli.pretty {
        serde_json::to_string_pretty(&out)
    } else {
        serde_json::to_string(&out)
    }
    .expect("JSON values serialize");
    println!("{text}");
    ExitCode::from(code)
}
