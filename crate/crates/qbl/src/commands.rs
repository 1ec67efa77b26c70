//! Command dispatch and report assembly.

use std::fs;
use std::time::Instant;

use qbl_core::algebra::{is_special_unitary, GroupElement, Matrix2, C64};
use qbl_core::bundles::{fiber_norm, membership, Membership};
use qbl_core::certify::{
    certify_stein, certify_stein_with, delta_report, distinguished_curve, hyperbolicity_witness, submean_at,
    verify_witness, InvariantFunction, ProbeSite, SteinStatus, SteinVerdict, SubmeanReport, Violation, Witness,
    WitnessCheck, WitnessParams,
};
use qbl_core::mostow::{coords, decompose, radial, zeta_modulus};
use qbl_core::profiles::linspace;
use qbl_core::sampling::GroupSampler;
use qbl_core::{Error as CoreError, RhoProfile};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cli::{Ball, Command, Format};
use crate::emit::{canonical_json, csv_table};
use crate::error::{CliError, Result};
use crate::parallel::par_submean_probe;
use crate::parse::{complex_json, matrix_json, parse_complex, parse_group, PointFile};
use crate::spec::{parse_spec, SpecFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Rendered output and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit: i32,
}

pub fn exit_code(status: SteinStatus) -> i32 {
    match status {
        SteinStatus::CertifiedStein => EXIT_OK,
        SteinStatus::RefutedStein => EXIT_REFUTED,
        SteinStatus::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// `--seed`, then `params.seed` from the spec, then `QBL_SEED`, then 0.
pub fn resolve_seed(flag: Option<u64>, spec: Option<&SpecFile>) -> Result<u64> {
    if let Some(s) = flag.or(spec.and_then(|s| s.params.seed)) {
        return Ok(s);
    }
    match std::env::var("QBL_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Parse { what: "QBL_SEED", input: v }),
        Err(_) => Ok(0),
    }
}

/// Hex SHA-256 of the canonical form of the resolved inputs.
pub fn inputs_digest(inputs: &Value) -> String {
    Sha256::digest(canonical_json(inputs).as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

struct Report {
    command: &'static str,
    inputs: Value,
    fields: Map<String, Value>,
}

impl Report {
    fn new(command: &'static str, inputs: Value) -> Self {
        Self { command, inputs, fields: Map::new() }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_owned(), value);
    }

    fn render(mut self, wall_time: Option<f64>) -> String {
        self.set("command", json!(self.command));
        self.set("inputs_digest", json!(inputs_digest(&self.inputs)));
        if let Some(t) = wall_time {
            self.set("wall_time_s", json!(t));
        }
        let mut text = canonical_json(&Value::Object(self.fields));
        text.push('\n');
        text
    }
}

fn load(spec: &std::path::Path) -> Result<(SpecFile, RhoProfile)> {
    let s = parse_spec(spec)?;
    let rho = s.rho()?;
    Ok((s, rho))
}

fn spec_echo(s: &SpecFile) -> Value {
    serde_json::to_value(s).expect("spec serializes")
}

fn membership_str(m: Membership) -> &'static str {
    match m {
        Membership::Interior => "interior",
        Membership::Boundary => "boundary",
        Membership::Exterior => "exterior",
    }
}

fn site_json(site: &ProbeSite) -> Value {
    json!({
        "index": site.index,
        "g": matrix_json(site.g.matrix()),
        "direction": [complex_json(site.direction.c), complex_json(site.direction.h), complex_json(site.direction.w)],
        "margin": site.margin,
        "circle_points": site.circle_points,
    })
}

fn violation_json(v: &Violation) -> Value {
    match v {
        Violation::LogConvexity { h, margin } => json!({"kind": "log_convexity", "h": h, "margin": margin}),
        Violation::DeltaDecrease { tau, delta } => json!({"kind": "delta_decrease", "tau": tau, "delta": delta}),
        Violation::Curve { x0, radius, points, margin } => {
            json!({"kind": "curve", "x0": x0, "radius": radius, "points": points, "margin": margin})
        }
        Violation::Submean { site, radius, circle_points } => json!({
            "kind": "submean",
            "site": site_json(site),
            "radius": radius,
            "circle_points": circle_points,
        }),
    }
}

fn submean_json(r: &SubmeanReport) -> Value {
    json!({
        "function": r.function.as_str(),
        "samples": r.samples,
        "radius": r.radius,
        "worst_margin": r.worst_margin,
        "worst_site": r.worst_site.as_ref().map(site_json),
        "levi_min": r.levi.min,
        "levi_max": r.levi.max,
        "levi_mean": r.levi.mean(),
    })
}

fn verdict_json(v: &SteinVerdict) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("status".into(), json!(v.status.as_str()));
    out.insert("reason".into(), json!(v.reason.as_str()));
    out.insert("m".into(), json!(v.m));
    out.insert("worst_margin".into(), json!(v.worst_margin()));
    out.insert(
        "log_convexity".into(),
        json!({"pass": v.log_convexity.pass, "worst_margin": v.log_convexity.worst_margin}),
    );
    out.insert(
        "delta".into(),
        v.delta.as_ref().map_or(Value::Null, |d| {
            json!({
                "monotone": d.monotone,
                "strictly_increasing": d.strictly_increasing,
                "midpoint_convex": d.midpoint_convex,
                "divergent": d.divergent,
                "identically_zero": d.identically_zero,
                "max_abs": d.delta_values.iter().fold(0.0f64, |a, x| a.max(x.abs())),
                "tau_max": d.tau_grid.last(),
                "steps": d.tau_grid.len() - 1,
            })
        }),
    );
    out.insert("submean".into(), v.submean.as_ref().map_or(Value::Null, submean_json));
    out.insert("violation".into(), v.violation.as_ref().map_or(Value::Null, violation_json));
    out
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "C": w.c,
        "D": w.d,
        "s_bound": w.s_bound,
        "t_min": w.t_min,
        "t_max": w.t_max,
        "eps": w.eps,
        "m": w.m,
        "center": [complex_json(w.center.0), complex_json(w.center.1)],
    })
}

fn check_json(c: &WitnessCheck, s_bound: f64) -> Value {
    json!({
        "accepted": c.accepted,
        "attempts": c.attempts,
        "max_s": c.max_s,
        "violations": c.violations,
        "holds": c.holds(1e-9, s_bound),
    })
}

struct BallArgs {
    center: (C64, C64),
    eps: f64,
}

fn ball_args(ball: &Ball) -> Result<Option<BallArgs>> {
    match (&ball.z3, &ball.z4, ball.eps) {
        (None, None, None) => Ok(None),
        (z3, z4, Some(eps)) if z3.is_some() || z4.is_some() => {
            let parse = |s: &Option<String>| s.as_deref().map_or(Ok(C64::new(0.0, 0.0)), parse_complex);
            Ok(Some(BallArgs { center: (parse(z3)?, parse(z4)?), eps }))
        }
        (_, _, None) => Err(CliError::MissingFlag("eps")),
        _ => Err(CliError::MissingFlag("z3")),
    }
}

fn ball_echo(b: &Option<BallArgs>) -> Value {
    b.as_ref()
        .map_or(Value::Null, |b| json!({"center": [complex_json(b.center.0), complex_json(b.center.1)], "eps": b.eps}))
}

/// Runs one command and renders its report.
pub fn run(command: &Command) -> Result<Outcome> {
    let start = Instant::now();
    let (report, exit, raw) = dispatch(command)?;
    if let Some(text) = raw {
        return Ok(Outcome { text, exit });
    }
    let wall = command.output().timing.then(|| start.elapsed().as_secs_f64());
    Ok(Outcome { text: report.render(wall), exit })
}

type Dispatched = (Report, i32, Option<String>);

fn dispatch(command: &Command) -> Result<Dispatched> {
    match command {
        Command::Decompose { matrix, .. } => {
            let g = parse_group(matrix)?;
            let f = decompose(&g)?;
            let mut r = Report::new("decompose", json!({"matrix": matrix_json(g.matrix())}));
            r.set("u", matrix_json(f.u.matrix()));
            r.set("h", json!(f.h));
            r.set("zeta", complex_json(f.zeta));
            r.set("residual", json!(f.residual(&g)));
            Ok((r, EXIT_OK, None))
        }
        Command::Coords { matrix, .. } => {
            let g = parse_group(matrix)?;
            let c = coords(&g);
            let mut r = Report::new("coords", json!({"matrix": matrix_json(g.matrix())}));
            r.set("s", json!(c.s));
            r.set("t", json!(c.t));
            r.set("tau", json!(c.tau()));
            r.set("zeta_modulus", json!(zeta_modulus(&c)));
            r.set("h", json!(radial(&c)?));
            Ok((r, EXIT_OK, None))
        }
        Command::Member { spec, point, punctured, .. } => {
            let (s, rho) = load(&spec.spec)?;
            let text = fs::read_to_string(point).map_err(|source| CliError::Io { path: point.clone(), source })?;
            let pf = PointFile::from_json(&text)?;
            if pf.m != s.m {
                return Err(CoreError::WeightMismatch { left: s.m, right: pf.m }.into());
            }
            let p = pf.to_point()?;
            let mut r = Report::new(
                "member",
                json!({"spec": spec_echo(&s), "point": serde_json::to_value(&pf).expect("point"), "punctured": punctured}),
            );
            r.set("membership", json!(membership_str(membership(&p, &rho, *punctured)?)));
            r.set("fiber_norm", json!(fiber_norm(&p, &rho)?));
            r.set("m", json!(p.m));
            r.set("punctured", json!(punctured));
            Ok((r, EXIT_OK, None))
        }
        Command::Certify { spec, seed, serial, ball, .. } => {
            let (s, rho) = load(&spec.spec)?;
            let seed = resolve_seed(*seed, Some(&s))?;
            let ball = ball_args(ball)?;
            let params = s.params.certify(seed);
            let v = if *serial {
                certify_stein(&rho, s.m, &params)?
            } else {
                certify_stein_with(&rho, s.m, &params, par_submean_probe)?
            };
            let mut r = Report::new("certify", json!({"spec": spec_echo(&s), "seed": seed, "ball": ball_echo(&ball)}));
            for (k, val) in verdict_json(&v) {
                r.set(&k, val);
            }
            r.set("seed", json!(seed));
            r.set("normalized_input", json!(s.was_normalized()?));
            let witness = match (&ball, v.status, v.m) {
                (Some(b), SteinStatus::CertifiedStein, m) if m > 0 => {
                    Some(hyperbolicity_witness(&rho, m, b.center, b.eps, &s.params.witness())?)
                }
                _ => None,
            };
            r.set("witness", witness.as_ref().map_or(Value::Null, witness_json));
            Ok((r, exit_code(v.status), None))
        }
        Command::Delta { spec, tau_max, steps, format, .. } => {
            let (s, rho) = load(&spec.spec)?;
            let tau_max = tau_max.unwrap_or(s.params.tau_max);
            let steps = steps.unwrap_or(s.params.tau_steps);
            let d = delta_report(&rho, s.m, tau_max, steps)?;
            if *format == Format::Csv {
                let text = csv_table(["tau", "delta"], &d.tau_grid, &d.delta_values)?;
                return Ok((Report::new("delta", Value::Null), EXIT_OK, Some(text)));
            }
            let mut r = Report::new("delta", json!({"spec": spec_echo(&s), "tau_max": tau_max, "steps": steps}));
            r.set("m", json!(d.m));
            r.set("tau", json!(d.tau_grid));
            r.set("delta", json!(d.delta_values));
            r.set("monotone", json!(d.monotone));
            r.set("strictly_increasing", json!(d.strictly_increasing));
            r.set("midpoint_convex", json!(d.midpoint_convex));
            r.set("divergent", json!(d.divergent));
            r.set("identically_zero", json!(d.identically_zero));
            r.set("first_decrease", json!(d.first_decrease));
            Ok((r, EXIT_OK, None))
        }
        Command::Witness { spec, ball, verify, seed, .. } => {
            let (s, rho) = load(&spec.spec)?;
            let b = ball_args(ball)?.ok_or(CliError::MissingFlag("eps"))?;
            let seed = resolve_seed(*seed, Some(&s))?;
            let w = hyperbolicity_witness(&rho, s.m, b.center, b.eps, &s.params.witness())?;
            let echo_ball = ball_echo(&Some(BallArgs { center: b.center, eps: b.eps }));
            let mut r = Report::new(
                "witness",
                json!({"spec": spec_echo(&s), "ball": echo_ball, "verify": verify, "seed": seed}),
            );
            r.set("witness", witness_json(&w));
            let check = if *verify > 0 {
                let c = verify_witness(&rho, &w, seed, *verify, verify.saturating_mul(1000))?;
                check_json(&c, w.s_bound)
            } else {
                Value::Null
            };
            r.set("verification", check);
            Ok((r, EXIT_OK, None))
        }
        Command::Curve { spec, x_min, x_max, steps, format, .. } => {
            let (s, rho) = load(&spec.spec)?;
            let (a, b) = (x_min.unwrap_or(s.params.curve_x_min), x_max.unwrap_or(s.params.curve_x_max));
            let steps = steps.unwrap_or(s.params.curve_steps);
            if !(a < b) || steps == 0 {
                return Err(CoreError::InvalidGrid("need x_min < x_max and steps > 0").into());
            }
            let xs = linspace(a, b, steps);
            let c = distinguished_curve(&rho, s.m, &xs)?;
            if *format == Format::Csv {
                let text = csv_table(["x", "value"], &c.x_grid, &c.values)?;
                return Ok((Report::new("curve", Value::Null), EXIT_OK, Some(text)));
            }
            let mut r = Report::new("curve", json!({"spec": spec_echo(&s), "x_min": a, "x_max": b, "steps": steps}));
            r.set("x", json!(c.x_grid));
            r.set("value", json!(c.values));
            r.set("convex", json!(c.convex));
            r.set("worst_convexity_margin", json!(c.scan.worst_margin));
            Ok((r, EXIT_OK, None))
        }
        Command::Selftest { seed, .. } => {
            let seed = resolve_seed(*seed, None)?;
            let checks = selftest(seed);
            let failed = checks.iter().filter(|c| !c.pass).count();
            let mut r = Report::new("selftest", json!({"seed": seed}));
            r.set(
                "checks",
                Value::Array(
                    checks.iter().map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail})).collect(),
                ),
            );
            r.set("passed", json!(checks.len() - failed));
            r.set("failed", json!(failed));
            Ok((r, if failed == 0 { EXIT_OK } else { EXIT_ERROR }, None))
        }
    }
}

/// One built-in check.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn self_check(name: &'static str, f: impl FnOnce() -> qbl_core::Result<(bool, String)>) -> SelfCheck {
    match f() {
        Ok((pass, detail)) => SelfCheck { name, pass, detail },
        Err(e) => SelfCheck { name, pass: false, detail: e.to_string() },
    }
}

/// Small versions of the library invariants.
pub fn selftest(seed: u64) -> Vec<SelfCheck> {
    let c = |re: f64, im: f64| C64::new(re, im);
    vec![
        self_check("decompose_identity", || {
            let f = decompose(&GroupElement::identity())?;
            let ok = f.h == 0.0 && f.zeta == c(1.0, 0.0) && f.u == GroupElement::identity();
            Ok((ok, format!("h = {}, zeta = {}", f.h, f.zeta)))
        }),
        self_check("mostow_round_trip", || {
            let s = GroupSampler::new(seed, 3.0, 2.0)?;
            let mut worst = 0.0f64;
            let mut unitary = true;
            for i in 0..500 {
                let g = s.sample(i).g;
                let f = decompose(&g)?;
                worst = worst.max(f.residual(&g));
                unitary &= is_special_unitary(&f.u, 1e-9) && f.h >= 0.0;
            }
            Ok((worst <= 1e-9 && unitary, format!("max residual {worst:.3e}")))
        }),
        self_check("levi_log_t", || {
            let v = Matrix2::from_rows(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
            let r = 1e-2;
            let levi = submean_at(&InvariantFunction::LogT, &GroupElement::identity(), &v, r, 64)? / (r * r);
            Ok(((levi - 1.0).abs() <= 1e-3, format!("levi {levi:.6}")))
        }),
        self_check("maximal_delta_vanishes", || {
            let d = delta_report(&RhoProfile::maximal(2), 2, 20.0, 100)?;
            Ok((d.identically_zero, format!("identically zero: {}", d.identically_zero)))
        }),
        self_check("certify_cosh_power", || {
            let params = qbl_core::certify::CertifyParams::default();
            let good = certify_stein(&RhoProfile::CoshPower { alpha: 1.0 }, 2, &params)?;
            let bad_rho = RhoProfile::CoshPower { alpha: 0.75 };
            let bad = certify_stein(&bad_rho, 2, &params)?;
            let rechecked = bad.violation.map_or(Ok(false), |v| v.recheck(&bad_rho, 2))?;
            let ok = good.status == SteinStatus::CertifiedStein && bad.status == SteinStatus::RefutedStein && rechecked;
            Ok((ok, format!("alpha 1.0: {}, alpha 0.75: {}", good.status.as_str(), bad.status.as_str())))
        }),
        self_check("witness_constants", || {
            let rho = RhoProfile::CoshPower { alpha: 1.5 };
            let w = hyperbolicity_witness(&rho, 2, (c(0.5, 0.0), c(0.0, 0.0)), 0.1, &WitnessParams::default())?;
            let expect = -(0.16f64).ln();
            let ok = (w.c - expect).abs() <= 1e-12 && (w.d - 4.0 * expect).abs() <= 1e-9;
            Ok((ok, format!("C = {:.6}, D = {:.6}, s_bound = {:.4}", w.c, w.d, w.s_bound)))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::Cli;
    use clap::Parser;

    fn run_args(args: &[&str]) -> Result<Outcome> {
        run(&Cli::try_parse_from(std::iter::once("qbl").chain(args.iter().copied())).unwrap().command)
    }

    fn field(out: &Outcome, key: &str) -> Value {
        serde_json::from_str::<Value>(&out.text).unwrap()[key].clone()
    }

    #[test]
    fn decompose_identity() {
        let out = run_args(&["decompose", "--matrix", "1,0;0,1"]).unwrap();
        assert_eq!(out.exit, 0);
        assert_eq!(field(&out, "h"), json!(0.0));
        assert_eq!(field(&out, "zeta"), json!([1.0, 0.0]));
        assert_eq!(field(&out, "u"), json!([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]));
    }

    #[test]
    fn decompose_rejects_non_unimodular() {
        assert!(run_args(&["decompose", "--matrix", "2,0;0,1"]).is_err());
        assert!(run_args(&["coords", "--matrix", "1,0"]).is_err());
    }

    #[test]
    fn coords_of_radial_element() {
        let (ch, sh) = (1f64.cosh(), 1f64.sinh());
        let m = format!("{ch},-{sh}i;{sh}i,{ch}");
        let out = run_args(&["coords", "--matrix", &m]).unwrap();
        let s = field(&out, "s").as_f64().unwrap();
        assert!((s - 2f64.cosh()).abs() < 1e-12);
        assert!((field(&out, "h").as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn seed_precedence() {
        let s = SpecFile::from_json(r#"{"m":1,"profile":{"kind":"constant","c":1.0},"params":{"seed":4}}"#).unwrap();
        assert_eq!(resolve_seed(Some(9), Some(&s)).unwrap(), 9);
        assert_eq!(resolve_seed(None, Some(&s)).unwrap(), 4);
    }

    #[test]
    fn digest_is_canonical() {
        let a = inputs_digest(&json!({"x": 1.0, "y": [1, 2]}));
        let b = inputs_digest(&json!({"y": [1, 2], "x": 1.0}));
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
        assert_ne!(a, inputs_digest(&json!({"x": 2.0, "y": [1, 2]})));
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [
            exit_code(SteinStatus::CertifiedStein),
            exit_code(SteinStatus::RefutedStein),
            exit_code(SteinStatus::Inconclusive),
            EXIT_ERROR,
        ];
        assert_eq!(codes, [0, 2, 3, 1]);
    }

    #[test]
    fn ball_flags_must_be_complete() {
        let b = |z3: Option<&str>, eps: Option<f64>| Ball { z3: z3.map(String::from), z4: None, eps };
        assert!(ball_args(&b(None, None)).unwrap().is_none());
        assert!(matches!(ball_args(&b(Some("0.5"), None)), Err(CliError::MissingFlag("eps"))));
        assert!(matches!(ball_args(&b(None, Some(0.1))), Err(CliError::MissingFlag("z3"))));
        let ok = ball_args(&b(Some("0.5"), Some(0.1))).unwrap().unwrap();
        assert_eq!(ok.center, (c64(0.5), c64(0.0)));
    }

    fn c64(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn selftest_passes() {
        let checks = selftest(0);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }
}
