//! `fuzzsuper`: verification suites, convergence tables and cohomology reports.

mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand};
use fuzzsuper::calculus::{body_cohomology_check, cohomology_dims, BodyCohomologyCheck, CohomologyReport, DerivationContext};
use fuzzsuper::fuzzy::FuzzySuperSphere;
use fuzzsuper::oracle::{SuperPoly, SuperSphereOracle};
use serde::Serialize;

use output::{csv_float, Format};
use suites::{Check, Suite};

const LARGE_Q: u32 = 60;

#[derive(Parser)]
#[command(name = "fuzzsuper", version, about = "Fuzzy supersphere toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report every residual.
    Verify(VerifyArgs),
    /// Tabulate structure constants of highest weight harmonics against the classical values.
    Converge(ConvergeArgs),
    /// Betti numbers of the derivation complexes of the supersphere and its body.
    Cohomology(CohomologyArgs),
    /// Classical structure constants and highest weight harmonics from the exact model.
    Oracle(OracleArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// Truncation level.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    q: Option<u32>,
    /// Comma-separated truncation levels; overrides --q.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u32).range(1..))]
    q_list: Option<Vec<u32>>,
    /// Radius.
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    /// Tolerance override.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Permit q above 60.
    #[arg(long)]
    allow_large: bool,
}

impl Common {
    fn levels(&self, default: &[u32]) -> Vec<u32> {
        match (&self.q_list, self.q) {
            (Some(list), _) => list.clone(),
            (None, Some(q)) => vec![q],
            (None, None) => default.to_vec(),
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Suites to run; repeatable.
    #[arg(long, value_enum, default_values_t = [Suite::All])]
    suite: Vec<Suite>,
    /// Largest form degree for calculus checks.
    #[arg(long, default_value_t = 3)]
    pmax: usize,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    common: Common,
    /// First superspin, e.g. 1/2 or 1.
    #[arg(long, value_parser = parse_spin)]
    j1: Option<u32>,
    /// Second superspin.
    #[arg(long, value_parser = parse_spin)]
    j2: Option<u32>,
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    common: Common,
    /// Largest degree of the supersphere complex; the body stops at min(pmax, 3).
    #[arg(long, default_value_t = 5)]
    pmax: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_parser = parse_spin)]
    j1: Option<u32>,
    #[arg(long, value_parser = parse_spin)]
    j2: Option<u32>,
    /// Analyse a polynomial given as `c * x1^a x2^b x3^c t4 t5 + ...`; harmonic coefficients up to j = --q (default 2).
    #[arg(long)]
    poly: Option<String>,
}

/// Twice a nonnegative half-integer given as `n`, `n/2` or a decimal.
fn parse_spin(s: &str) -> std::result::Result<u32, String> {
    let twice = if let Some(num) = s.strip_suffix("/2") {
        num.trim().parse::<u32>().map_err(|e| e.to_string())?
    } else {
        let x: f64 = s.parse().map_err(|_| format!("'{s}' is not a half-integer"))?;
        let t = 2.0 * x;
        if !(t >= 0.0 && t.fract() == 0.0 && t < 1e6) {
            return Err(format!("'{s}' is not a nonnegative half-integer"));
        }
        t as u32
    };
    Ok(twice)
}

fn spin_label(j2: u32) -> String {
    if j2 % 2 == 0 {
        format!("{}", j2 / 2)
    } else {
        format!("{j2}/2")
    }
}

fn usage_error(msg: String) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn check_levels(common: &Common, levels: &[u32]) {
    if let Some(&q) = levels.iter().find(|&&q| q > LARGE_Q) {
        if !common.allow_large {
            usage_error(format!("q = {q} exceeds {LARGE_Q}; pass --allow-large to run it"));
        }
    }
    if !(common.rho > 0.0 && common.rho.is_finite()) {
        usage_error(format!("--rho must be positive, got {}", common.rho));
    }
    if common.tol.is_some_and(|t| !(t > 0.0)) {
        usage_error("--tol must be positive".into());
    }
}

fn emit(common: &Common, body: String) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    seed: u64,
    pass: bool,
    checks: Vec<Check>,
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let levels = args.common.levels(&[1, 2]);
    check_levels(&args.common, &levels);
    let mut checks = Vec::new();
    for &q in &levels {
        for suite in Suite::expand(&args.suite) {
            checks.extend(suites::run(suite, q, args.common.rho, args.pmax, args.common.seed, args.common.tol)?);
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport { command: "verify", seed: args.common.seed, pass, checks };
    let body = match args.common.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("suite,q,name,residual,tol,pass\n");
            for c in &report.checks {
                s += &format!("{},{},{},{},{},{}\n", c.suite, c.q, c.name, csv_float(c.residual), csv_float(c.tol), c.pass);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                s += &format!("{verdict} {:<13} q={:<3} {:<28} residual {:.3e} (tol {:.1e})\n", c.suite, c.q, c.name, c.residual, c.tol);
            }
            s += &format!("{} of {} checks passed (seed {})\n", report.checks.iter().filter(|c| c.pass).count(), report.checks.len(), report.seed);
            s
        }
    };
    emit(&args.common, body)?;
    Ok(pass)
}

#[derive(Serialize)]
struct ConvergeRow {
    j1: f64,
    j2: f64,
    q: u32,
    c_q: f64,
    c_classical: f64,
    delta: f64,
    /// Frobenius norm of the part of the product not proportional to the target harmonic.
    residual: f64,
}

#[derive(Serialize)]
struct ConvergeReport {
    command: &'static str,
    rows: Vec<ConvergeRow>,
    skipped: Vec<String>,
}

fn spin_pairs(j1: Option<u32>, j2: Option<u32>) -> Vec<(u32, u32)> {
    match (j1, j2) {
        (Some(a), Some(b)) => vec![(a, b)],
        (Some(a), None) => (0..=3u32.saturating_sub(a)).map(|b| (a, b)).collect(),
        (None, Some(b)) => (0..=3u32.saturating_sub(b)).map(|a| (a, b)).collect(),
        (None, None) => (0..=3).flat_map(|a| (0..=3 - a).map(move |b| (a, b))).collect(),
    }
}

fn converge(args: ConvergeArgs) -> Result<bool> {
    let levels = args.common.levels(&[2, 5, 10, 20, 40]);
    check_levels(&args.common, &levels);
    let oracle = SuperSphereOracle::from_f64(1.0)?;
    let pairs = spin_pairs(args.j1, args.j2);
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &q in &levels {
        let sphere = FuzzySuperSphere::new(q, args.common.rho)?;
        for &(a, b) in &pairs {
            if a + b > 2 * q {
                skipped.push(format!("j1={} j2={} needs q >= {}, skipped at q={q}", spin_label(a), spin_label(b), (a + b).div_ceil(2)));
                continue;
            }
            let c_classical = oracle.structure_constant_classical(a, b)?;
            let (c_q, residual) = sphere.structure_constant(a, b)?;
            rows.push(ConvergeRow { j1: a as f64 / 2.0, j2: b as f64 / 2.0, q, c_q, c_classical, delta: (c_q - c_classical).abs(), residual });
        }
    }
    for note in &skipped {
        eprintln!("note: {note}");
    }
    let report = ConvergeReport { command: "converge", rows, skipped };
    let body = match args.common.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("j1,j2,q,c_q,c_classical,delta,residual\n");
            for r in &report.rows {
                s += &format!(
                    "{},{},{},{},{},{},{}\n",
                    r.j1,
                    r.j2,
                    r.q,
                    csv_float(r.c_q),
                    csv_float(r.c_classical),
                    csv_float(r.delta),
                    csv_float(r.residual)
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!("{:>5} {:>5} {:>4} {:>14} {:>14} {:>11}\n", "j1", "j2", "q", "c^q", "classical", "|delta|");
            for r in &report.rows {
                s += &format!("{:>5} {:>5} {:>4} {:>14.10} {:>14.10} {:>11.3e}\n", r.j1, r.j2, r.q, r.c_q, r.c_classical, r.delta);
            }
            s
        }
    };
    emit(&args.common, body)?;
    Ok(true)
}

#[derive(Serialize)]
struct CohomologyEntry {
    q: u32,
    supersphere: CohomologyReport,
    sphere: CohomologyReport,
    /// Present when the complexes reach degree 3.
    body_map_check: Option<BodyCohomologyCheck>,
    /// Every rank decision cleared 10 × tol.
    conclusive: bool,
}

#[derive(Serialize)]
struct CohomologyOutput {
    command: &'static str,
    tol: f64,
    results: Vec<CohomologyEntry>,
}

fn cohomology(args: CohomologyArgs) -> Result<bool> {
    let levels = args.common.levels(&[1]);
    check_levels(&args.common, &levels);
    let tol = args.common.tol.unwrap_or(1e-8);
    let mut results = Vec::new();
    for &q in &levels {
        let supersphere = cohomology_dims(&DerivationContext::fuzzy_supersphere(q)?, "supersphere", q, args.pmax, tol)?;
        let sphere = cohomology_dims(&DerivationContext::fuzzy_sphere(q)?, "sphere", q, args.pmax.min(3), tol)?;
        let body_map_check = if args.pmax >= 3 { Some(body_cohomology_check(q, tol)?) } else { None };
        let conclusive = supersphere.is_conclusive(10.0) && sphere.is_conclusive(10.0);
        results.push(CohomologyEntry { q, supersphere, sphere, body_map_check, conclusive });
    }
    let ok = results.iter().all(|r| r.conclusive);
    let out = CohomologyOutput { command: "cohomology", tol, results };
    let body = match args.common.format {
        Format::Json => serde_json::to_string_pretty(&out)? + "\n",
        Format::Csv => {
            let mut s = String::from("instance,q,p,dim_omega,rank_d,betti,invariant_betti,sv_gap,max_dropped\n");
            for r in &out.results {
                for rep in [&r.supersphere, &r.sphere] {
                    for d in &rep.degrees {
                        s += &format!(
                            "{},{},{},{},{},{},{},{},{}\n",
                            rep.instance,
                            rep.q,
                            d.p,
                            d.dim_omega,
                            d.rank_d,
                            d.betti,
                            d.invariant_betti,
                            csv_float(d.sv_gap),
                            csv_float(d.max_dropped)
                        );
                    }
                }
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &out.results {
                s += &format!("q={} supersphere betti {:?} (invariant {:?})\n", r.q, r.supersphere.betti, r.supersphere.invariant_betti);
                s += &format!("q={} sphere      betti {:?} (invariant {:?})\n", r.q, r.sphere.betti, r.sphere.invariant_betti);
                s += &format!("q={} smallest singular value gap {:.3e}, tolerance {tol:.1e}\n", r.q, r.supersphere.min_gap.min(r.sphere.min_gap));
                if let Some(b) = &r.body_map_check {
                    s += &format!(
                        "q={} body map on degree 3: |d w| {:.2e}, dist(w, exact) {:.3}, |d b(w)| {:.2e}, dist(b(w), exact) {:.3}\n",
                        r.q, b.super_closed_residual, b.super_exact_distance, b.body_closed_residual, b.body_exact_distance
                    );
                }
                if !r.conclusive {
                    s += &format!("q={} INCONCLUSIVE: a rank decision fell within 10 x tol\n", r.q);
                }
            }
            s
        }
    };
    emit(&args.common, body)?;
    Ok(ok)
}

#[derive(Serialize)]
struct OracleRow {
    j1: f64,
    j2: f64,
    c_classical: f64,
}

#[derive(Serialize)]
struct OracleHarmonic {
    j: f64,
    /// Normalisation factor multiplying the polynomial.
    factor: f64,
    polynomial: String,
}

#[derive(Serialize)]
struct PolyCoefficient {
    label: String,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct PolyReport {
    input: String,
    normal_form: String,
    body: String,
    /// `I(f)/π`, exact.
    integral_over_pi: String,
    /// `⟨f|f⟩`, exact.
    norm: String,
    harmonic_coefficients: Vec<PolyCoefficient>,
}

#[derive(Serialize)]
struct OracleReport {
    command: &'static str,
    rho: f64,
    structure_constants: Vec<OracleRow>,
    highest_weight: Vec<OracleHarmonic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<PolyReport>,
}

fn analyse(o: &SuperSphereOracle, text: &str, max_j: u32) -> Result<PolyReport> {
    let f: SuperPoly = text.parse().with_context(|| format!("parsing '{text}'"))?;
    let harmonic_coefficients = o
        .expand(&f, 2 * max_j)
        .into_iter()
        .map(|(l, z)| PolyCoefficient { label: l.to_string(), re: z.re, im: z.im })
        .collect();
    Ok(PolyReport {
        input: text.into(),
        normal_form: o.normal_form(&f).to_string(),
        body: SuperPoly::even(o.body_map(&f)).to_string(),
        integral_over_pi: o.integral_over_pi(&f).to_string(),
        norm: o.inner(&f, &f).to_string(),
        harmonic_coefficients,
    })
}

fn oracle(args: OracleArgs) -> Result<bool> {
    check_levels(&args.common, &[]);
    let o = SuperSphereOracle::from_f64(args.common.rho)?;
    let pairs = spin_pairs(args.j1, args.j2);
    let mut structure_constants = Vec::new();
    for &(a, b) in &pairs {
        structure_constants.push(OracleRow { j1: a as f64 / 2.0, j2: b as f64 / 2.0, c_classical: o.structure_constant_classical(a, b)? });
    }
    let top = pairs.iter().map(|(a, b)| a + b).max().unwrap_or(0);
    let highest_weight = (0..=top)
        .map(|j2| {
            let y = o.highest_weight(j2);
            OracleHarmonic { j: j2 as f64 / 2.0, factor: y.factor(), polynomial: y.poly.to_string() }
        })
        .collect();
    let polynomial = match &args.poly {
        Some(text) => Some(analyse(&o, text, args.common.q.unwrap_or(2))?),
        None => None,
    };
    let report = OracleReport { command: "oracle", rho: args.common.rho, structure_constants, highest_weight, polynomial };
    let body = match args.common.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("j1,j2,c_classical\n");
            for r in &report.structure_constants {
                s += &format!("{},{},{}\n", r.j1, r.j2, csv_float(r.c_classical));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &report.structure_constants {
                s += &format!("c({}, {}) = {:.15}\n", r.j1, r.j2, r.c_classical);
            }
            for h in &report.highest_weight {
                s += &format!("Y({}) = {:.15} * ({})\n", h.j, h.factor, h.polynomial);
            }
            if let Some(p) = &report.polynomial {
                s += &format!("normal form: {}\nbody: {}\nI/pi = {}\n<f|f> = {}\n", p.normal_form, p.body, p.integral_over_pi, p.norm);
                for c in &p.harmonic_coefficients {
                    s += &format!("  {} {:+.15} {:+.15}i\n", c.label, c.re, c.im);
                }
            }
            s
        }
    };
    emit(&args.common, body)?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Converge(a) => converge(a),
        Command::Cohomology(a) => cohomology(a),
        Command::Oracle(a) => oracle(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spins_parse() {
        assert_eq!(parse_spin("1/2"), Ok(1));
        assert_eq!(parse_spin("0.5"), Ok(1));
        assert_eq!(parse_spin("3"), Ok(6));
        assert!(parse_spin("0.3").is_err());
        assert!(parse_spin("-1").is_err());
    }

    #[test]
    fn default_pairs_cover_three_halves() {
        let pairs = spin_pairs(None, None);
        assert_eq!(pairs.len(), 10);
        assert!(pairs.iter().all(|(a, b)| a + b <= 3));
    }

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }
}
