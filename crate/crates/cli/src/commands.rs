use std::path::{Path, PathBuf};

use factoriality::construct::{
    cone_over_surface, fermat, kollar_quartic, plane_pencil_family, single_point_family, ConstructConfig,
    ConstructError, ConstructionResult,
};
use factoriality::criteria::{decide, BlowupClass, MultiplicityProfile, Position};
use factoriality::invariants::{coplanar, defect as node_defect, intersection_number};
use factoriality::poly::{parse_poly_file, write_poly_file, Field, Polynomial, ProjectivePoint};
use factoriality::singularity::{analyze_two_primes, AnalysisConfig, HypersurfaceSpec, SearchLimits};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::{ConstructArgs, Global};

/// Why a command failed; each kind has its own exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Budget(String),
    Construction(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Construction(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Budget(m) | Failure::Construction(m) => m,
        }
    }
}

type Outcome = Result<Value, Failure>;

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

pub fn validate(g: &Global) -> Result<(), Failure> {
    for p in [g.prime, g.second_prime] {
        Field::prime(p).map_err(input)?;
    }
    if g.prime == g.second_prime {
        return Err(input("--prime and --prime2 must differ"));
    }
    if g.e_max == 0 {
        return Err(input("--emax must be at least 1"));
    }
    if g.groebner_budget == 0 || g.retries == 0 {
        return Err(input("--groebner-budget and --retries must be positive"));
    }
    Ok(())
}

fn limits(g: &Global) -> SearchLimits {
    SearchLimits { e_max: g.e_max, groebner_budget: g.groebner_budget, ..SearchLimits::default() }
}

fn big_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

pub fn check(n: u32, d: u64, mults: &[String], position: &str) -> Outcome {
    let mults = mults
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<u64>().map_err(|_| input(format!("bad multiplicity '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    let position: Position = position.parse().map_err(input)?;
    let profile = MultiplicityProfile::new(n, d, mults, position).map_err(input)?;
    let decision = decide(&profile);
    Ok(json!({ "profile": profile, "decision": decision }))
}

pub fn analyze(file: &Path, g: &Global) -> Outcome {
    let parsed = parse_poly_file(&read(file)?).map_err(input)?;
    let spec = HypersurfaceSpec::new(parsed.poly).map_err(input)?;
    let config = AnalysisConfig { prime: g.prime, second_prime: g.second_prime, limits: limits(g) };
    let run = analyze_two_primes(&spec, &config).map_err(|e| {
        if e.is_budget() {
            Failure::Budget(format!("{e}; raise --groebner-budget or lower --emax"))
        } else {
            input(e)
        }
    })?;
    Ok(json!({
        "file": file.display().to_string(),
        "degree": spec.degree(),
        "nvars": spec.poly().nvars(),
        "singular_points": run.primary.reports.len(),
        "analysis": run,
    }))
}

/// `fermatN`, or a .poly file holding a rational form in 4 variables.
fn surface_form(arg: &str) -> Result<Polynomial, Failure> {
    if let Some(deg) = arg.strip_prefix("fermat") {
        let m: u32 = deg.parse().map_err(|_| input(format!("bad form '{arg}', expected fermatN or a file")))?;
        if m < 1 {
            return Err(input("fermat degree must be positive"));
        }
        return Ok(fermat(4, m));
    }
    let parsed = parse_poly_file(&read(Path::new(arg))?).map_err(input)?;
    if parsed.nvars != 4 || parsed.field != Field::Rational {
        return Err(input(format!("{arg}: expected a rational form in 4 variables")));
    }
    Ok(parsed.poly)
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| input(format!("{family} needs --{flag}")))
}

fn construct_failure(e: ConstructError) -> Failure {
    match e {
        ConstructError::RetriesExhausted { .. } => Failure::Construction(e.to_string()),
        e if e.is_budget() => Failure::Budget(format!("{e}; raise --groebner-budget")),
        e => input(e),
    }
}

pub fn construct(args: &ConstructArgs, g: &Global) -> Outcome {
    let cfg = ConstructConfig {
        prime: g.prime,
        second_prime: Some(g.second_prime),
        limits: limits(g),
        max_retries: g.retries,
    };
    let family = args.family.as_str();
    let (result, default_prefix): (Result<ConstructionResult, ConstructError>, String) = match family {
        "single-point" | "example52" => {
            let (d, m) = (need(args.d, "d", family)?, need(args.m, "m", family)?);
            let fm = args.fm.as_deref().map(surface_form).transpose()?;
            (single_point_family(d, m, fm.as_ref(), g.seed, &cfg), format!("single-point-d{d}-m{m}-seed{}", g.seed))
        }
        "plane-pencil" | "prop61" => {
            let (t, delta) = (need(args.t, "t", family)?, need(args.delta, "delta", family)?);
            (plane_pencil_family(t, delta, g.seed, &cfg), format!("plane-pencil-t{t}-delta{delta}-seed{}", g.seed))
        }
        "kollar" => (kollar_quartic(g.seed, &cfg), format!("kollar-seed{}", g.seed)),
        "cone" => {
            let form = surface_form(&need(args.g.clone(), "g", family)?)?;
            (cone_over_surface(&form, args.assert_pic_z, &cfg), format!("cone-d{}", form.degree()))
        }
        other => return Err(input(format!("unknown family '{other}'; expected single-point, plane-pencil, kollar or cone"))),
    };
    let result = result.map_err(construct_failure)?;
    let prefix = args.out.clone().unwrap_or_else(|| PathBuf::from(default_prefix));
    let poly_path = prefix.with_extension("poly");
    let json_path = prefix.with_extension("json");
    let sidecar = serde_json::to_value(&result).expect("serializable");
    std::fs::write(&poly_path, write_poly_file(result.spec.poly())).map_err(|e| input(format!("{}: {e}", poly_path.display())))?;
    std::fs::write(&json_path, format!("{}\n", serde_json::to_string_pretty(&sidecar).expect("serializable")))
        .map_err(|e| input(format!("{}: {e}", json_path.display())))?;
    Ok(json!({
        "poly_file": poly_path.display().to_string(),
        "sidecar": json_path.display().to_string(),
        "construction": sidecar,
    }))
}

/// Points file: one point per line as comma-separated rationals; blank
/// lines and lines starting with '#' are skipped.
pub fn parse_points(text: &str) -> Result<Vec<ProjectivePoint>, Failure> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split(',')
            .map(|c| c.trim().parse::<BigRational>().map_err(|_| input(format!("line {}: bad coordinate '{}'", i + 1, c.trim()))))
            .collect::<Result<Vec<_>, _>>()?;
        points.push(ProjectivePoint::from_rationals(&Field::Rational, &coords).map_err(|e| input(format!("line {}: {e}", i + 1)))?);
    }
    Ok(points)
}

pub fn defect(points: &Path, d: u32) -> Outcome {
    let pts = parse_points(&read(points)?)?;
    let report = node_defect(&pts, d).map_err(input)?;
    let flat = coplanar(&pts).map_err(input)?;
    Ok(json!({ "d": d, "report": report, "coplanar": flat }))
}

pub fn intersect(n: u32, a: i64, bs: &[String]) -> Outcome {
    if n == 0 {
        return Err(input("--n must be at least 1"));
    }
    let bs = bs
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<i64>().map_err(|_| input(format!("bad coefficient '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    let cls = BlowupClass { n, a, bs };
    let x = intersection_number(&cls);
    Ok(json!({ "class": cls, "intersection_number": big_to_json(&x), "positive": x > BigInt::from(0) }))
}
