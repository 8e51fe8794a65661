//! Batch front end: parse a frame document, run one analysis, render a report.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 input error.

pub mod document;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::deformation::deformation_report;
use crate::error::GeometryError;
use crate::float::DEFAULT_TOL;
use crate::frame::{validate_frame, Check, StructureSpec};
use crate::gc::{gk_validate, GCStructure, GKPair, GenMetric};
use crate::hodge::{
    betti_numbers, ddj_check, harmonic_dims, hodge_diamond, kahler_identities_check, lefschetz_check, pq_grading,
    split_dh, twisted_betti, BISpace,
};
use crate::matrix::Matrix;

pub use document::{parse_document, FrameDocument, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Cohomology,
    Diamond,
    Identities,
    Ddj,
    Deform,
    Lefschetz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Command-line arguments of `gengeo`.
#[derive(Clone, Debug, Parser)]
#[command(name = "gengeo", version, about = "Generalized geometry on invariant frames")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Frame document (JSON).
    pub file: PathBuf,
    /// Cohomology of d_H instead of d.
    #[arg(long)]
    pub twisted: bool,
    /// Tolerance for floating-point gates.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Which structure of the pair (or of the structure list when no pair is given).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: Option<u8>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Everything the binary prints, and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Math(e.to_string())
    }
}

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

/// Residuals this small are printed as a bound, which keeps output stable across platforms.
const NOISE_FLOOR: f64 = 1e-13;

fn fmt_residual(x: f64) -> String {
    if x < NOISE_FLOOR {
        "<1e-13".into()
    } else {
        format!("{x:.1e}")
    }
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn check_json(c: &Check) -> Value {
    json!({"name": c.name, "passed": c.passed, "detail": c.detail})
}

pub fn run(cli: &Cli) -> Outcome {
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => return failure(2, format!("cannot read {}: {e}", cli.file.display())),
    };
    let doc = match parse_document(&text) {
        Ok(d) => d,
        Err(e) => return failure(2, format!("{}: {e}", cli.file.display())),
    };
    let name = doc.name.clone().unwrap_or_else(|| {
        cli.file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    });
    match execute(cli, &doc) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => {
                    let wrapped = json!({
                        "command": command_name(cli.command),
                        "frame": name,
                        "ok": report.ok,
                        "report": report.json,
                    });
                    let mut s = serde_json::to_string_pretty(&wrapped).expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Text => format!("{} {name}\n{}", command_name(cli.command), report.text),
            };
            Outcome { code: if report.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(Failure::Input(m)) => failure(2, m),
        Err(Failure::Math(m)) => failure(1, m),
    }
}

fn failure(code: i32, message: String) -> Outcome {
    Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Validate => "validate",
        Command::Cohomology => "cohomology",
        Command::Diamond => "diamond",
        Command::Identities => "identities",
        Command::Ddj => "ddj",
        Command::Deform => "deform",
        Command::Lefschetz => "lefschetz",
    }
}

fn execute(cli: &Cli, doc: &FrameDocument) -> Result<Report, Failure> {
    let (allowed, default) = match cli.command {
        Command::Cohomology => (&[Mode::Exact, Mode::Float][..], Mode::Exact),
        Command::Diamond | Command::Identities => (&[Mode::Float][..], Mode::Float),
        _ => (&[Mode::Exact][..], Mode::Exact),
    };
    let mode = cli.mode.unwrap_or(default);
    if !allowed.contains(&mode) {
        return Err(Failure::Input(format!(
            "{} does not support --mode {}",
            command_name(cli.command),
            if mode == Mode::Exact { "exact" } else { "float" }
        )));
    }
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Input(format!("--tol must be positive, got {}", cli.tol)));
    }
    let frame_report = validate_frame(&doc.frame);
    if cli.command != Command::Validate && !frame_report.all_passed() {
        let failed: Vec<String> = frame_report.checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
        return Err(Failure::Math(format!("invalid frame: {}", failed.join("; "))));
    }
    match cli.command {
        Command::Validate => validate(doc),
        Command::Cohomology => cohomology(doc, cli.twisted, mode, cli.tol),
        Command::Diamond => diamond(doc, cli.tol),
        Command::Identities => identities(doc, cli.tol),
        Command::Ddj => ddj(doc, cli.which),
        Command::Deform => deform(doc, cli.which),
        Command::Lefschetz => lefschetz(doc, cli.which),
    }
}

fn structure(doc: &FrameDocument, index: usize) -> Result<GCStructure, Failure> {
    let spec = &doc.frame.structures[index];
    GCStructure::from_spec(spec).map_err(|e| Failure::Math(format!("structure {}: {e}", index + 1)))
}

fn pair_indices(doc: &FrameDocument) -> Option<(usize, usize)> {
    doc.pair.or((doc.frame.structures.len() >= 2).then_some((0, 1)))
}

/// Index into the structure list selected by `--which`.
fn selected(doc: &FrameDocument, which: Option<u8>) -> Result<usize, Failure> {
    let w = which.unwrap_or(1) as usize;
    let index = match doc.pair {
        Some((a, b)) => [a, b][w - 1],
        None => w - 1,
    };
    if index >= doc.frame.structures.len() {
        return Err(Failure::Input(format!("document has no structure {w}")));
    }
    Ok(index)
}

fn gk_pair(doc: &FrameDocument) -> Result<(GKPair, Vec<Check>, bool), Failure> {
    let (a, b) = pair_indices(doc).ok_or_else(|| Failure::Math("document defines no generalized Kähler pair".into()))?;
    let pair = GKPair::new(structure(doc, a)?, structure(doc, b)?)?;
    let report = gk_validate(&pair, &doc.frame);
    let ok = report.all_passed();
    Ok((pair, report.checks, ok))
}

fn render_checks(text: &mut String, checks: &[Check]) {
    for c in checks {
        let _ = writeln!(text, "  {c}");
    }
}

fn validate(doc: &FrameDocument) -> Result<Report, Failure> {
    let mut checks = validate_frame(&doc.frame).checks;
    let frame_ok = checks.iter().all(|c| c.passed);
    for (k, spec) in doc.frame.structures.iter().enumerate() {
        let label = format!("structure {} ({})", k + 1, spec.kind());
        match GCStructure::from_spec(spec) {
            Ok(j) => {
                checks.push(Check::pass(&label));
                let name = format!("structure {} integrable", k + 1);
                checks.push(if !frame_ok {
                    Check::fail(&name, "skipped: invalid frame".into())
                } else {
                    match j.check_integrability(&doc.frame) {
                        Ok(r) if r.integrable => Check::pass(&name),
                        Ok(r) => {
                            let (a, b, _) = r.witness.expect("witness on failure");
                            Check::fail(&name, format!("[E{}, E{}] leaves E", a + 1, b + 1))
                        }
                        Err(e) => Check::fail(&name, e.to_string()),
                    }
                });
            }
            Err(e) => checks.push(Check::fail(&label, e.to_string())),
        }
    }
    let mut types = None;
    if let (Some((a, b)), true) = (doc.pair, frame_ok) {
        let js = (GCStructure::from_spec(&doc.frame.structures[a]), GCStructure::from_spec(&doc.frame.structures[b]));
        if let (Ok(j1), Ok(j2)) = js {
            let pair = GKPair::new(j1, j2)?;
            let report = gk_validate(&pair, &doc.frame);
            types = Some(report.types);
            checks.extend(report.checks.iter().map(|c| Check { name: format!("pair {}", c.name), ..c.clone() }));
            if let (Some(m), Some(g)) = (&report.metric, &doc.frame.metric) {
                let b = doc.frame.b_or_zero();
                checks.push(if m.g() == g && m.b() == &b {
                    Check::pass("pair metric matches g, b")
                } else {
                    Check::fail("pair metric matches g, b", "-J1 J2 induces a different (g, b)".into())
                });
            }
        }
    }
    let ok = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    render_checks(&mut text, &checks);
    if let Some((t1, t2)) = types {
        let _ = writeln!(text, "  types ({t1}, {t2})");
    }
    let _ = writeln!(text, "result: {}", if ok { "valid" } else { "invalid" });
    let json = json!({
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
        "types": types.map(|(a, b)| vec![a, b]),
    });
    Ok(Report { json, text, ok })
}

fn cohomology(doc: &FrameDocument, twisted: bool, mode: Mode, tol: f64) -> Result<Report, Failure> {
    let has_twist = !doc.frame.twist.is_zero();
    let mut frame = doc.frame.clone();
    if !twisted {
        frame.twist = crate::multilinear::form::FormSpinor::zero(frame.dim());
    }
    let mut text = String::new();
    let json = match mode {
        Mode::Exact => {
            if twisted && has_twist {
                let (ev, od) = twisted_betti(&frame)?;
                let _ = writeln!(text, "twisted (exact)\n  even {ev}\n  odd  {od}");
                json!({"mode": "exact", "twisted": true, "even": ev, "odd": od})
            } else {
                let b = betti_numbers(&frame)?;
                let _ = writeln!(text, "de Rham (exact)");
                for (k, x) in b.iter().enumerate() {
                    let _ = writeln!(text, "  b{k} {x}");
                }
                let ev: usize = b.iter().step_by(2).sum();
                let od: usize = b.iter().skip(1).step_by(2).sum();
                let _ = writeln!(text, "  even {ev}\n  odd  {od}");
                json!({"mode": "exact", "twisted": twisted, "betti": b, "even": ev, "odd": od})
            }
        }
        Mode::Float => {
            let space = BISpace::from_frame(&frame)?;
            let dims = harmonic_dims(&space, tol)?;
            let _ = writeln!(text, "harmonic (float, tol {tol:e})");
            if let Some(per) = &dims.per_degree {
                for (k, x) in per.iter().enumerate() {
                    let _ = writeln!(text, "  h{k} {x}");
                }
            }
            let _ = writeln!(text, "  even {}\n  odd  {}", dims.even, dims.odd);
            json!({"mode": "float", "tol": tol, "twisted": twisted, "per_degree": dims.per_degree, "even": dims.even, "odd": dims.odd})
        }
    };
    Ok(Report { json, text, ok: true })
}

fn gk_failure(checks: &[Check]) -> Report {
    let mut text = String::from("not a generalized Kähler pair\n");
    render_checks(&mut text, checks);
    Report { json: json!({"gk_checks": checks.iter().map(check_json).collect::<Vec<_>>()}), text, ok: false }
}

fn diamond(doc: &FrameDocument, tol: f64) -> Result<Report, Failure> {
    let (pair, checks, gk_ok) = gk_pair(doc)?;
    if !gk_ok {
        return Ok(gk_failure(&checks));
    }
    let metric = pair.metric()?;
    let space = BISpace::new(&doc.frame, &metric)?;
    let grading = pq_grading(&pair)?;
    let report = hodge_diamond(&pair, &space, &grading, tol)?;
    let n = pair.n() as i64;
    let mut text = format!("harmonic dimensions (tol {tol:e})\n  q\\p");
    for p in -n..=n {
        let _ = write!(text, "{p:>4}");
    }
    text.push('\n');
    for q in (-n..=n).rev() {
        let _ = write!(text, "  {q:>3}");
        for p in -n..=n {
            match report.harmonic.get(&(p, q)) {
                Some(h) => {
                    let _ = write!(text, "{h:>4}");
                }
                None => text.push_str("    "),
            }
        }
        text = text.trim_end().to_string();
        text.push('\n');
    }
    let ok = report.conjugation_symmetric && report.matches_betti() && report.parity.holds;
    let _ = writeln!(text, "total {}", report.total);
    let _ = writeln!(text, "twisted Betti even {} odd {}", report.b_even, report.b_odd);
    let _ = writeln!(text, "types ({}, {})", report.types.0, report.types.1);
    let _ = writeln!(text, "conjugation symmetric {}", status(report.conjugation_symmetric));
    let _ = writeln!(text, "closed iff co-closed {}", status(report.closed_iff_coclosed));
    let _ = writeln!(text, "total matches Betti {}", status(report.matches_betti()));
    let _ = writeln!(text, "parity ({}) {}", report.parity.claim, status(report.parity.holds));
    let cells: Vec<Value> = report.harmonic.iter().map(|(&(p, q), &h)| json!({"p": p, "q": q, "dim": h})).collect();
    let json = json!({
        "tol": tol,
        "diamond": cells,
        "total": report.total,
        "b_even": report.b_even,
        "b_odd": report.b_odd,
        "types": [report.types.0, report.types.1],
        "conjugation_symmetric": report.conjugation_symmetric,
        "closed_iff_coclosed": report.closed_iff_coclosed,
        "matches_betti": report.matches_betti(),
        "parity": {"claim": report.parity.claim, "holds": report.parity.holds},
    });
    Ok(Report { json, text, ok })
}

fn identities(doc: &FrameDocument, tol: f64) -> Result<Report, Failure> {
    let (pair, checks, gk_ok) = gk_pair(doc)?;
    if !gk_ok {
        return Ok(gk_failure(&checks));
    }
    let metric = match &doc.frame.metric {
        Some(g) => GenMetric::new(g, &doc.frame.b_or_zero())?,
        None => pair.metric()?,
    };
    let space = BISpace::new(&doc.frame, &metric)?;
    let grading = pq_grading(&pair)?;
    let split = split_dh(&grading, space.dh());
    let report = kahler_identities_check(&space, &split)?;
    let mut rows: Vec<(String, f64)> = vec![
        ("splitting".into(), report.splitting),
        ("dbar_plus* + delta_plus".into(), report.plus),
        ("dbar_minus* - delta_minus".into(), report.minus),
    ];
    rows.extend(report.laplacians.iter().map(|(n, r)| (format!("laplacian {n}"), *r)));
    let ok = report.passes(tol);
    let mut text = format!("residuals (operator norm, tol {tol:e})\n");
    for (n, r) in &rows {
        let _ = writeln!(text, "  {n:<28} {:>8}  {}", fmt_residual(*r), status(*r <= tol));
    }
    let _ = writeln!(text, "result: {}", status(ok));
    let json = json!({
        "tol": tol,
        "noise_floor": NOISE_FLOOR,
        "residuals": rows.iter().map(|(n, r)| json!({"name": n, "residual": fmt_residual(*r), "passed": *r <= tol})).collect::<Vec<_>>(),
    });
    Ok(Report { json, text, ok })
}

fn ddj(doc: &FrameDocument, which: Option<u8>) -> Result<Report, Failure> {
    let index = selected(doc, which)?;
    let j = structure(doc, index)?;
    let r = ddj_check(&j, &doc.frame)?;
    let ok = r.holds();
    let kind = doc.frame.structures[index].kind();
    let text = format!(
        "structure {} ({kind})\n  rank d      {}\n  rank dJ     {}\n  rank d dJ   {}\n  dim(ker d ∩ im dJ)  {}\n  dim(ker dJ ∩ im d)  {}\n  dim im(d dJ)        {}\nddJ lemma: {}\n",
        index + 1,
        r.rank_d,
        r.rank_dj,
        r.rank_ddj,
        r.closed_and_dj_exact,
        r.dj_closed_and_exact,
        r.ddj_exact,
        if ok { "holds" } else { "fails" }
    );
    let json = json!({
        "structure": index + 1,
        "kind": kind,
        "rank_d": r.rank_d,
        "rank_dj": r.rank_dj,
        "rank_ddj": r.rank_ddj,
        "closed_and_dj_exact": r.closed_and_dj_exact,
        "dj_closed_and_exact": r.dj_closed_and_exact,
        "ddj_exact": r.ddj_exact,
        "holds": ok,
    });
    Ok(Report { json, text, ok })
}

fn deform(doc: &FrameDocument, which: Option<u8>) -> Result<Report, Failure> {
    let index = selected(doc, which)?;
    let j = structure(doc, index)?;
    let r = deformation_report(&j, &doc.frame)?;
    let ok = r.d_squared_zero && r.jacobi;
    let kind = doc.frame.structures[index].kind();
    let mut text = format!("structure {} ({kind})\n", index + 1);
    for (k, h) in r.dims.iter().enumerate() {
        let _ = writeln!(text, "  H{k} {h}");
    }
    let _ = writeln!(text, "  euler characteristic {}", r.euler_characteristic);
    if let Some(s) = &r.h2_split {
        let _ = writeln!(
            text,
            "  H2 = {} + {} + {} (bivectors, vector-valued (0,1)-forms, (0,2)-forms)",
            s.bivectors, s.vector_forms, s.forms
        );
    } else if kind == "complex" {
        let _ = writeln!(text, "  H2 split unavailable: d_E mixes multivector degrees");
    }
    let _ = writeln!(text, "  dE^2 = 0 {}", status(r.d_squared_zero));
    let _ = writeln!(text, "  Jacobi on E {}", status(r.jacobi));
    let _ = writeln!(text, "obstruction space H3 {}: {}", r.obstructions, if r.unobstructed() { "unobstructed" } else { "nonzero" });
    let json = json!({
        "structure": index + 1,
        "kind": kind,
        "dims": r.dims,
        "symmetries": r.symmetries,
        "deformations": r.deformations,
        "obstructions": r.obstructions,
        "euler_characteristic": r.euler_characteristic,
        "h2_split": r.h2_split.as_ref().map(|s| json!({"bivectors": s.bivectors, "vector_forms": s.vector_forms, "forms": s.forms})),
        "d_squared_zero": r.d_squared_zero,
        "jacobi": r.jacobi,
        "unobstructed": r.unobstructed(),
    });
    Ok(Report { json, text, ok })
}

fn lefschetz(doc: &FrameDocument, which: Option<u8>) -> Result<Report, Failure> {
    let structures = &doc.frame.structures;
    let index = match which {
        Some(_) => selected(doc, which)?,
        None => structures
            .iter()
            .position(|s| matches!(s, StructureSpec::Symplectic(_)))
            .ok_or_else(|| Failure::Input("document has no symplectic structure".into()))?,
    };
    let omega: Matrix<_> = match &structures[index] {
        StructureSpec::Symplectic(w) => w.clone(),
        other => return Err(Failure::Input(format!("structure {} is {}, not symplectic", index + 1, other.kind()))),
    };
    let r = lefschetz_check(&omega, &doc.frame)?;
    let ok = r.holds();
    let mut text = format!("structure {} (symplectic)\n", index + 1);
    let n = doc.frame.n();
    for s in &r.steps {
        let _ = writeln!(
            text,
            "  k={} omega^{}: H{} -> H{}  rank {} of ({}, {})  {}",
            s.k,
            s.k,
            n - s.k,
            n + s.k,
            s.rank,
            s.b_source,
            s.b_target,
            if s.is_isomorphism() { "iso" } else { "not iso" }
        );
    }
    match r.first_failure() {
        Some(k) => {
            let _ = writeln!(text, "strong Lefschetz: fails at k={k}");
        }
        None => text.push_str("strong Lefschetz: holds\n"),
    }
    let json = json!({
        "structure": index + 1,
        "steps": r.steps.iter().map(|s| json!({
            "k": s.k, "rank": s.rank, "b_source": s.b_source, "b_target": s.b_target, "isomorphism": s.is_isomorphism()
        })).collect::<Vec<_>>(),
        "holds": ok,
        "first_failure": r.first_failure(),
    });
    Ok(Report { json, text, ok })
}
