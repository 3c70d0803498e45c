//! The deterministic verification suite: the acceptance checks plus
//! module invariants, each driven by its own seeded streams.
//!
//! Reports depend only on `(seed, profile)` apart from the `millis` fields.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cantor::{
    build_a, build_separated_family, convergence_index, diff_measure,
    diff_measure_inclusion_exclusion, proof_convergence_index, separated_family_from_points,
    sigma_n, union_measure, verify_separation_bound, Convergence,
};
use crate::error::{Error, PreconditionFailure, Result};
use crate::gen::{self, trial_rng};
use crate::independence::{
    cell_mask, check_poly_bound, dual_transfer, i_threshold, is_independent, max_independent,
    sauer_bound, sauer_check, sauer_shelah_extract, shattered, threshold_holds, transpose,
    vc_dimension, BooleanPolynomial, PatternFamily, PolyBoundVerdict, SignCell,
};
use crate::measures::{
    determination_defect, i1_atom_check, inverse_power_of_two, product_measure_on_independent,
    type_defect, AtomVerdict, Measure, Rational,
};
use crate::setsys::{
    count_intermediate_algebras, is_minimal_extension, minimal_by_quantifier,
    verify_minimal_chain, ExtensionVerdict, FiniteAlgebra, SetFamily, SubsetMask,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    fn pick(self, quick: u64, full: u64) -> u64 {
        match self {
            Profile::Quick => quick,
            Profile::Full => full,
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::input(format!("unknown profile {s:?} (quick|full)"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub name: &'static str,
    pub status: Status,
    pub trials: u64,
    pub detail: String,
    /// Present on failure.
    pub witness: Option<Value>,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub version: &'static str,
    pub seed: u64,
    pub profile: Profile,
    pub generator: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn first_failure(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

struct Outcome {
    trials: u64,
    detail: String,
    witness: Option<Value>,
}

impl Outcome {
    fn pass(trials: u64, detail: impl Into<String>) -> Self {
        Outcome {
            trials,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(trials: u64, detail: impl Into<String>, witness: Value) -> Self {
        Outcome {
            trials,
            detail: detail.into(),
            witness: Some(witness),
        }
    }
}

pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    pub acceptance: bool,
    run: fn(u64, Profile) -> Result<Outcome>,
}

pub fn checks() -> &'static [Check] {
    &CHECKS
}

pub fn find_check(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}

pub fn run_check(check: &Check, seed: u64, profile: Profile) -> CheckReport {
    let start = Instant::now();
    let (status, trials, detail, witness) = match (check.run)(seed, profile) {
        Ok(o) => {
            let status = if o.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            };
            (status, o.trials, o.detail, o.witness)
        }
        Err(e) => (
            Status::Fail,
            0,
            "check aborted".to_string(),
            Some(json!({ "error": e.to_string() })),
        ),
    };
    CheckReport {
        id: check.id,
        name: check.name,
        status,
        trials,
        detail,
        witness,
        millis: start.elapsed().as_millis() as u64,
    }
}

pub fn verify_suite(seed: u64, profile: Profile) -> SuiteReport {
    let checks: Vec<CheckReport> = CHECKS.iter().map(|c| run_check(c, seed, profile)).collect();
    SuiteReport {
        version: env!("CARGO_PKG_VERSION"),
        seed,
        profile,
        generator: gen::GENERATOR,
        passed: checks.iter().all(|c| c.status == Status::Pass),
        checks,
    }
}

static CHECKS: [Check; 18] = [
    Check { id: "acceptance-01", name: "I(n,r) table with minimality", acceptance: true, run: itable },
    Check { id: "acceptance-02", name: "Sauer-Shelah exhaustive over 2^{1..4}", acceptance: true, run: sauer_exhaustive },
    Check { id: "acceptance-03", name: "polynomial images keep below I(n,r)", acceptance: true, run: poly_bound },
    Check { id: "acceptance-04", name: "separation of A(x_i) at p = 0, 1", acceptance: true, run: separation },
    Check { id: "acceptance-05", name: "cylinder sizes, measures and disjointness", acceptance: true, run: cylinder_facts },
    Check { id: "acceptance-06", name: "minimal-extension oracles agree", acceptance: true, run: minimal_oracles },
    Check { id: "acceptance-07", name: "laminar families give minimal chains", acceptance: true, run: laminar_chains },
    Check { id: "acceptance-08", name: "product measure on independent families", acceptance: true, run: product_measure },
    Check { id: "acceptance-09", name: "b1 minus b0 is an atom", acceptance: true, run: atom_claim },
    Check { id: "acceptance-10", name: "dual transfer yields independent points", acceptance: true, run: transfer },
    Check { id: "acceptance-11", name: "max independent equals VC dimension of transpose", acceptance: true, run: duality },
    Check { id: "setsys-generation", name: "generated algebras contain and refine their generators", acceptance: false, run: generation },
    Check { id: "indep-sauer-random", name: "extraction on random pattern families", acceptance: false, run: sauer_random },
    Check { id: "indep-threshold-experiment", name: "largest image independence seen against I(n,r)", acceptance: false, run: threshold_experiment },
    Check { id: "measures-defects", name: "type defect at most determination defect", acceptance: false, run: defects },
    Check { id: "cantor-measure-routes", name: "refinement and inclusion-exclusion agree", acceptance: false, run: measure_routes },
    Check { id: "cantor-convergence", name: "late cylinders fix the prefix of x", acceptance: false, run: convergence },
    Check { id: "cantor-separation-range", name: "separation for p <= 2 and up to 8 members", acceptance: false, run: separation_range },
];

fn salt(id: &str) -> u64 {
    gen::fnv1a64(id)
}

fn itable(_: u64, _: Profile) -> Result<Outcome> {
    let mut table: Vec<(u64, u64, u64)> = (1..=6).map(|r| (1, r, 1)).collect();
    table.extend([(2, 1, 2), (2, 2, 3), (3, 2, 7)]);
    for &(n, r, want) in &table {
        let got = i_threshold(n, r)?;
        let minimal = threshold_holds(n, r, got) && (got == 0 || !threshold_holds(n, r, got - 1));
        if got != want || !minimal {
            return Ok(Outcome::fail(
                table.len() as u64,
                format!("I({n},{r}) = {got}, expected {want}"),
                json!({ "n": n, "r": r, "got": got, "expected": want, "minimal": minimal }),
            ));
        }
    }
    Ok(Outcome::pass(table.len() as u64, "all table entries match and s - 1 fails"))
}

/// Every nonempty family of patterns on `coords` coordinates.
pub fn sauer_sweep(coords: usize) -> Result<Option<Value>> {
    let cube = PatternFamily::full_cube(coords);
    let points = cube.patterns();
    let bounds: Vec<usize> = (1..=coords as u64)
        .map(|n| sauer_bound(coords as u64, n).map(|b| b.try_into().expect("small")))
        .collect::<Result<_>>()?;
    for code in 1u64..1 << points.len() {
        let c = PatternFamily::new(
            coords,
            (0..points.len()).filter(|i| code >> i & 1 == 1).map(|i| points[i].clone()),
        )?;
        let ext = sauer_shelah_extract(&c)?;
        let mut seen = ext.clone();
        seen.dedup();
        if ext.len() != c.len() || seen.len() != ext.len() {
            return Ok(Some(json!({ "family": c, "extracted": ext, "reason": "count" })));
        }
        for s in &ext {
            if !shattered(&c, s)? {
                return Ok(Some(json!({ "family": c, "set": s, "reason": "not shattered" })));
            }
        }
        for (n, bound) in (1..=coords as u64).zip(&bounds) {
            if c.len() > *bound {
                let chk = sauer_check(&c, n)?;
                let ok = match &chk.witness {
                    Some(w) => w.count() as u64 == n && shattered(&c, w)?,
                    None => false,
                };
                if !ok {
                    return Ok(Some(json!({ "family": c, "check": chk })));
                }
            }
        }
    }
    Ok(None)
}

fn sauer_exhaustive(_: u64, _: Profile) -> Result<Outcome> {
    let trials = (1u64 << 16) - 1;
    Ok(match sauer_sweep(4)? {
        None => Outcome::pass(trials, "every family: |C| shattered sets extracted, bound implication holds"),
        Some(w) => Outcome::fail(trials, "sweep found a failing family", w),
    })
}

const POLYS: [&str; 4] = ["(and x0 x1)", "(or x0 x1)", "(xor x0 x1)", "(or (and x0 x1) x2)"];

fn poly_bound(seed: u64, profile: Profile) -> Result<Outcome> {
    let per = profile.pick(1000, 3000);
    let mut trials = 0;
    for n in [2u64, 3] {
        for src in POLYS {
            let p: BooleanPolynomial = src.parse()?;
            let id = format!("poly/{n}/{src}");
            for t in 0..per {
                let mut rng = trial_rng(seed, salt(&id), t);
                let ground = rng.random_range(2..=12);
                let count = rng.random_range(1..=if p.arity() == 2 { 8 } else { 6 });
                let fam = gen::family_without_independent(&mut rng, ground, n as usize, count);
                trials += 1;
                match check_poly_bound(&fam, n, &p)? {
                    PolyBoundVerdict::Holds { .. } => {}
                    v => {
                        return Ok(Outcome::fail(
                            trials,
                            format!("n = {n}, p = {src}"),
                            json!({ "n": n, "poly": src, "family": fam, "verdict": v }),
                        ))
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(trials, "bound held in every trial"))
}

fn separation(_: u64, _: Profile) -> Result<Outcome> {
    let mut detail = Vec::new();
    for p in 0..2 {
        let fam = build_separated_family(p, 5, 36)?;
        let rep = verify_separation_bound(p, &fam, 5)?;
        if !rep.holds {
            return Ok(Outcome::fail(2, format!("p = {p}"), json!({ "family": fam, "report": rep })));
        }
        detail.push(format!("p={p}: min {} >= {}", rep.min, rep.bound));
    }
    Ok(Outcome::pass(2, detail.join("; ")))
}

fn cylinder_facts(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(100, 1000);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("cylinder"), t);
        let m = rng.random_range(27..=36);
        let params = gen::random_cantor_params(&mut rng, m)?;
        for n in 0..=8 {
            let c = sigma_n(&params, n)?;
            if c.domain_size() != 3 * n + 1 || c.measure() != inverse_power_of_two(3 * n + 1) {
                return Ok(Outcome::fail(t + 1, format!("sigma_{n}"), json!({ "params": params, "n": n, "cylinder": c })));
            }
        }
        let u = build_a(&params, 8)?;
        let cs = u.cylinders();
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                if cs[i].intersect(&cs[j]).is_some() {
                    return Ok(Outcome::fail(t + 1, "overlap", json!({ "params": params, "pair": [i, j] })));
                }
            }
        }
    }
    Ok(Outcome::pass(count, "n <= 8 on every parameter set"))
}

/// The three minimality routes on one case; `Some` describes a disagreement.
pub fn minimal_disagreement(b: &FiniteAlgebra, x: &SubsetMask) -> Result<Option<Value>> {
    let split = is_minimal_extension(b, x)?;
    let quant = minimal_by_quantifier(b, x, 24)?;
    let count = match count_intermediate_algebras(b, x, 24) {
        Ok(c) => Some(c),
        Err(Error::Precondition(PreconditionFailure::AlreadyMember)) => None,
        Err(e) => return Err(e),
    };
    let agree = match (&split, &quant) {
        (ExtensionVerdict::AlreadyMember, ExtensionVerdict::AlreadyMember) => count.is_none(),
        (ExtensionVerdict::Minimal, ExtensionVerdict::Minimal) => count == Some(2),
        (ExtensionVerdict::NotMinimal { witness: a }, ExtensionVerdict::NotMinimal { witness: c }) => {
            a == c && count.is_some_and(|k| k > 2)
        }
        _ => false,
    };
    Ok((!agree).then(|| {
        json!({ "algebra": b, "x": x, "split_atoms": split, "quantifier": quant, "intermediate": count })
    }))
}

fn minimal_oracles(seed: u64, profile: Profile) -> Result<Outcome> {
    let mut trials = 0;
    for n in 1..=4 {
        for b in gen::all_algebras(n) {
            for w in 0..1u64 << n {
                trials += 1;
                if let Some(d) = minimal_disagreement(&b, &SubsetMask::from_word(n, w))? {
                    return Ok(Outcome::fail(trials, "exhaustive case", d));
                }
            }
        }
    }
    let exhaustive = trials;
    for t in 0..profile.pick(500, 5000) {
        let mut rng = trial_rng(seed, salt("minimal"), t);
        let ground = rng.random_range(1..=20);
        let b = gen::random_algebra(&mut rng, ground, 12);
        let x = gen::random_mask(&mut rng, ground, 0.5);
        trials += 1;
        if let Some(d) = minimal_disagreement(&b, &x)? {
            return Ok(Outcome::fail(trials, "random case", d));
        }
    }
    Ok(Outcome::pass(trials, format!("{exhaustive} exhaustive and {} random cases", trials - exhaustive)))
}

fn laminar_chains(seed: u64, profile: Profile) -> Result<Outcome> {
    let families = profile.pick(500, 5000);
    for t in 0..families {
        let mut rng = trial_rng(seed, salt("chains"), t);
        let ground = rng.random_range(2..=16);
        let count = rng.random_range(1..=10);
        let fam = gen::laminar_family(&mut rng, ground, count);
        for _ in 0..5 {
            let mut order: Vec<usize> = (0..fam.len()).collect();
            order.shuffle(&mut rng);
            let perm = fam.select(&order)?;
            let v = verify_minimal_chain(&perm)?;
            if !v.is_ok() {
                return Ok(Outcome::fail(t + 1, "chain failed", json!({ "generators": perm, "verdict": v })));
            }
        }
    }
    Ok(Outcome::pass(families * 5, format!("{families} families, 5 orders each")))
}

/// The product-measure facts for one independent family.
pub fn product_facts(fam: &SetFamily) -> Result<Option<Value>> {
    let k = fam.len();
    let mu = product_measure_on_independent(fam)?;
    let half = Rational::new(1.into(), 2.into());
    for i in 0..k {
        if mu.measure_of(&fam[i])? != half {
            return Ok(Some(json!({ "family": fam, "member": i })));
        }
        for j in i + 1..k {
            if mu.measure_of(&fam[i].symmetric_difference(&fam[j]))? != half {
                return Ok(Some(json!({ "family": fam, "pair": [i, j] })));
            }
        }
    }
    let cell_weight = inverse_power_of_two(k);
    for code in 0..1u64 << k {
        let cell = SignCell::from_code(k, code);
        if mu.measure_of(&cell_mask(fam, &cell)?)? != cell_weight {
            return Ok(Some(json!({ "family": fam, "cell": cell })));
        }
    }
    Ok(None)
}

fn product_measure(seed: u64, profile: Profile) -> Result<Outcome> {
    let per = profile.pick(5, 30);
    let mut trials = 0;
    for k in 1..=10 {
        for t in 0..per {
            let mut rng = trial_rng(seed, salt("product") ^ k as u64, t);
            let extra = rng.random_range(0..=1usize << k);
            let fam = gen::independent_family(&mut rng, k, extra);
            trials += 1;
            if let Some(w) = product_facts(&fam)? {
                return Ok(Outcome::fail(trials, format!("k = {k}"), w));
            }
        }
    }
    Ok(Outcome::pass(trials, "k = 1..10"))
}

fn atom_claim(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(1000, 10000);
    let (mut atoms, mut members) = (0, 0);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("atom"), t);
        let ground = rng.random_range(1..=16);
        let size = rng.random_range(1..=8);
        let mut all = gen::laminar_family(&mut rng, ground, size + 1).into_members();
        let g = all.pop().expect("nonempty");
        let g0 = SetFamily::new(ground, all)?;
        match i1_atom_check(&g0, &g)? {
            AtomVerdict::Atom { .. } => atoms += 1,
            AtomVerdict::GInAlgebra => members += 1,
            v => return Ok(Outcome::fail(t + 1, "violated", json!({ "g0": g0, "g": g, "verdict": v }))),
        }
    }
    Ok(Outcome::pass(count, format!("{atoms} atom, {members} g_in_algebra")))
}

/// `dual_transfer` on one instance; `Some` when the dual family is not
/// independent or has the wrong shape.
pub fn transfer_failure(sets: &SetFamily, n: usize) -> Result<Option<Value>> {
    let t = dual_transfer(sets, n)?;
    let ok = t.points.len() == n + 1
        && t.dual.len() == n + 1
        && is_independent(&t.dual)?.is_independent();
    Ok((!ok).then(|| json!({ "sets": sets, "n": n, "transfer": t })))
}

fn transfer(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(200, 2000);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("transfer"), t);
        let n = rng.random_range(0..=2usize);
        let k = 1 << (n + 1);
        let extra = rng.random_range(0..=8);
        let mut sets = gen::independent_family(&mut rng, k, extra).into_members();
        sets.shuffle(&mut rng);
        let sets = SetFamily::new(sets[0].len(), sets)?;
        if let Some(w) = transfer_failure(&sets, n)? {
            return Ok(Outcome::fail(t + 1, "random instance", w));
        }
    }
    let mut pairs = 0;
    for ground in 1..=5 {
        for a in 0..1u64 << ground {
            for b in 0..1u64 << ground {
                let sets = SetFamily::new(
                    ground,
                    vec![SubsetMask::from_word(ground, a), SubsetMask::from_word(ground, b)],
                )?;
                if !is_independent(&sets)?.is_independent() {
                    continue;
                }
                pairs += 1;
                if let Some(w) = transfer_failure(&sets, 0)? {
                    return Ok(Outcome::fail(count + pairs, "exhaustive pair", w));
                }
            }
        }
    }
    Ok(Outcome::pass(count + pairs, format!("{count} random, {pairs} independent pairs on ground <= 5")))
}

fn duality(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(1000, 10000);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("duality"), t);
        let ground = rng.random_range(1..=16);
        let size = rng.random_range(1..=12);
        let fam = gen::random_family(&mut rng, ground, size);
        let a = max_independent(&fam, None)?;
        let b = vc_dimension(&transpose(&fam))?;
        if a.size != b {
            return Ok(Outcome::fail(t + 1, "sizes differ", json!({ "family": fam, "max_independent": a, "vc_dimension": b })));
        }
    }
    Ok(Outcome::pass(count, "no disagreement"))
}

fn generation(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(300, 3000);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("generation"), t);
        let ground = rng.random_range(1..=24);
        let size = rng.random_range(0..=6);
        let fam = gen::random_family(&mut rng, ground, size);
        let alg = FiniteAlgebra::generate(&fam);
        let mut union = SubsetMask::empty(ground);
        let mut total = 0;
        for a in alg.atoms() {
            union.union_with(a);
            total += a.count();
        }
        let mut ok = union.is_full() && total == ground;
        for m in fam.iter() {
            ok &= alg.contains(m)?;
        }
        let x = gen::random_mask(&mut rng, ground, 0.5);
        let mut more = fam.clone();
        more.push(x.clone())?;
        ok &= alg.extend(&x)? == FiniteAlgebra::generate(&more);
        if !ok {
            return Ok(Outcome::fail(t + 1, "generated algebra", json!({ "family": fam, "x": x })));
        }
    }
    Ok(Outcome::pass(count, "atoms partition the ground and contain every generator"))
}

fn sauer_random(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(300, 3000);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("sauer-random"), t);
        let coords = rng.random_range(1..=10);
        let size = rng.random_range(1..=64);
        let c = gen::random_pattern_family(&mut rng, coords, size);
        let ext = sauer_shelah_extract(&c)?;
        let mut ok = ext.len() == c.len();
        for s in &ext {
            ok &= shattered(&c, s)?;
        }
        for n in 1..=coords as u64 {
            ok &= sauer_check(&c, n)?.holds();
        }
        if !ok {
            return Ok(Outcome::fail(t + 1, "extraction", json!({ "family": c, "extracted": ext })));
        }
    }
    Ok(Outcome::pass(count, "coords <= 10"))
}

/// Records how close images come to `I(n, r)`; only a violation fails.
fn threshold_experiment(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(200, 2000);
    let mut best = Vec::new();
    for (n, src) in [(2u64, POLYS[0]), (2, POLYS[2]), (3, POLYS[1])] {
        let p: BooleanPolynomial = src.parse()?;
        let threshold = i_threshold(n, p.arity() as u64)?;
        let mut seen = 0;
        for t in 0..count {
            let mut rng = trial_rng(seed, salt(&format!("threshold/{n}/{src}")), t);
            let ground = rng.random_range(4..=16);
            let size = rng.random_range(2..=8);
            let fam = gen::family_without_independent(&mut rng, ground, n as usize, size);
            match check_poly_bound(&fam, n, &p)? {
                PolyBoundVerdict::Holds { image_max_independent, .. } => seen = seen.max(image_max_independent),
                v => return Ok(Outcome::fail(t + 1, format!("n = {n}, p = {src}"), json!({ "family": fam, "verdict": v }))),
            }
        }
        best.push(format!("n={n} {src}: largest {seen}, I = {threshold}"));
    }
    Ok(Outcome::pass(3 * count, best.join("; ")))
}

fn defects(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(300, 3000);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("defects"), t);
        let ground = rng.random_range(1..=14);
        let alg = gen::random_algebra(&mut rng, ground, 10);
        let weights: Vec<u64> = (0..alg.atom_count()).map(|_| rng.random_range(0..=8)).collect();
        let total: u64 = weights.iter().sum::<u64>().max(1);
        let mut ws: Vec<Rational> = weights.iter().map(|&w| Rational::new(w.into(), total.into())).collect();
        if weights.iter().all(|&w| w == 0) {
            ws[0] = Rational::one();
        }
        let mu = Measure::new(alg.clone(), ws)?;
        let sub_size = rng.random_range(0..=3);
        let sub = SetFamily::new(
            ground,
            (0..sub_size)
                .map(|_| alg.element(rng.random::<u64>() & ((1u64 << alg.atom_count()) - 1)))
                .collect(),
        )?;
        let td = type_defect(&mu, &sub)?;
        let dd = determination_defect(&mu, &sub)?;
        let full = SetFamily::new(ground, alg.atoms().to_vec())?;
        let ok = td >= Rational::zero()
            && td <= dd
            && type_defect(&mu, &full)?.is_zero()
            && determination_defect(&mu, &full)?.is_zero();
        if !ok {
            return Ok(Outcome::fail(t + 1, "defect order", json!({ "measure": mu, "sub": sub, "type": td.to_string(), "determination": dd.to_string() })));
        }
    }
    Ok(Outcome::pass(count, "0 <= type <= determination, both 0 on the full algebra"))
}

fn measure_routes(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(200, 2000);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("routes"), t);
        let m = rng.random_range(3..=30);
        let t_max = crate::cantor::t_len(m) - 1;
        let a = gen::random_cantor_params(&mut rng, m)?;
        let b = gen::random_cantor_params(&mut rng, m)?;
        let ua = build_a(&a, rng.random_range(0..=t_max.min(6)))?;
        let ub = build_a(&b, rng.random_range(0..=t_max.min(6)))?;
        let series: Rational = (0..ua.len()).map(|n| inverse_power_of_two(3 * n + 1)).sum();
        let d1 = diff_measure(&ua, &ub)?;
        let d2 = diff_measure_inclusion_exclusion(&ua, &ub)?;
        if d1 != d2 || union_measure(&ua)? != series {
            return Ok(Outcome::fail(t + 1, "routes differ", json!({ "a": a, "b": b, "refinement": d1.to_string(), "inclusion_exclusion": d2.to_string() })));
        }
    }
    Ok(Outcome::pass(count, "exact agreement"))
}

fn convergence(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(200, 2000);
    for t in 0..count {
        let mut rng = trial_rng(seed, salt("convergence"), t);
        let m = rng.random_range(6..=30);
        let n_max = crate::cantor::t_len(m) - 1;
        let params = gen::random_cantor_params(&mut rng, m)?;
        let mut last = 0;
        for k in 0..m {
            let bad = |why: &str| Outcome::fail(t + 1, why.to_string(), json!({ "params": params, "k": k }));
            let proof = proof_convergence_index(&params, k);
            match convergence_index(&params, k, n_max)? {
                Convergence::Converged { index } => {
                    if index < last || (proof <= n_max && index > proof) {
                        return Ok(bad("index order"));
                    }
                    for n in index..=n_max {
                        let c = sigma_n(&params, n)?;
                        if (0..k).any(|i| c.value_at(i) != Some(params.point().contains(i))) {
                            return Ok(bad("prefix not fixed"));
                        }
                    }
                    last = index;
                }
                Convergence::NotReached { .. } => {
                    if proof <= n_max {
                        return Ok(bad("proof index reachable but not reached"));
                    }
                    last = n_max + 1;
                }
            }
        }
    }
    Ok(Outcome::pass(count, "monotone in k and bounded by the proof's index"))
}

fn separation_range(seed: u64, profile: Profile) -> Result<Outcome> {
    let count = profile.pick(20, 200);
    let mut trials = 0;
    for p in 0..=2usize {
        for t in 0..count {
            let mut rng = trial_rng(seed, salt("separation-range") ^ p as u64, t);
            let members = rng.random_range(2..=8);
            let m = 36;
            let prefix = gen::random_mask(&mut rng, 3 * p, 0.5);
            let points: Vec<SubsetMask> = (0..members)
                .map(|_| {
                    let mut x = gen::random_mask(&mut rng, m, 0.5);
                    for i in 0..3 * p {
                        x.set(i, prefix.contains(i)).expect("in range");
                    }
                    x
                })
                .collect();
            let fam = separated_family_from_points(p, points)?;
            let n_max = rng.random_range(p..=8);
            let rep = verify_separation_bound(p, &fam, n_max)?;
            trials += 1;
            if !rep.holds {
                return Ok(Outcome::fail(trials, format!("p = {p}"), json!({ "family": fam, "report": rep })));
            }
        }
    }
    Ok(Outcome::pass(trials, "bound held"))
}
