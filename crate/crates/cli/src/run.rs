//! Command dispatch.

use std::fmt;
use std::time::Instant;

use halfspace_core::attack::{build_attack, empirical_fsbp, lower_bound_check, run_attack, ContaminationPlan};
use halfspace_core::depth::{max_depth_region_any, optimal_directions, tukey_depth};
use halfspace_core::fsbp::{breakdown_fraction, breakdown_point, FsbpCertificate, Method};
use halfspace_core::geometry::{is_general_position, PointSet};
use halfspace_core::rational::{q, Point, Q};
use serde_json::{json, Value};

use crate::dataset::{dataset_json, gen_dataset, parse_dataset, random_igp, GenSpec};
use crate::report;
use crate::CliError;

/// Magnitude multipliers used by `verify` for the below-threshold checks.
pub const VERIFY_MAGNITUDES: i64 = 20;

/// Largest sample drawn for the spatial entry of the epsilon-vs-d series.
/// Exact enumeration in three dimensions grows quickly past this.
pub const SWEEP_MAX_N_D3: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Depth,
    Median,
    Fsbp,
    Attack,
    Verify,
    Gen,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Depth => "depth",
            Command::Median => "median",
            Command::Fsbp => "fsbp",
            Command::Attack => "attack",
            Command::Verify => "verify",
            Command::Gen => "gen",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Input(String),
    Gen(GenSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub source: Source,
    pub seed: u64,
    /// Defaults to `n`.
    pub max_m: Option<usize>,
    /// Absolute magnitudes along the attack line; the first one seeds the plan.
    pub magnitudes: Vec<Q>,
    /// Query point for `depth`.
    pub point: Option<Point>,
    pub timing: bool,
    pub plot_data: bool,
}

impl RunConfig {
    pub fn new(command: Command, source: Source) -> Self {
        Self {
            command,
            source,
            seed: 0,
            max_m: None,
            magnitudes: Vec::new(),
            point: None,
            timing: false,
            plot_data: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    /// False when a verification inside the command failed.
    pub passed: bool,
    /// File stem and contents of each plot-data series.
    pub plot_data: Vec<(String, Value)>,
}

pub fn load(source: &Source, seed: u64) -> Result<PointSet, CliError> {
    match source {
        Source::Input(s) => parse_dataset(s),
        Source::Gen(spec) => gen_dataset(spec, seed),
    }
}

fn config_json(c: &RunConfig) -> Value {
    json!({
        "command": c.command.to_string(),
        "source": match &c.source {
            Source::Input(s) => json!({ "input": s }),
            Source::Gen(g) => json!({ "gen": g.to_string() }),
        },
        "seed": c.seed,
        "max_m": c.max_m,
        "magnitudes": c.magnitudes.iter().map(report::rational).collect::<Vec<_>>(),
        "point": c.point.as_deref().map(report::point),
    })
}

struct Payload {
    result: Value,
    passed: bool,
    plots: Vec<(String, Value)>,
}

impl Payload {
    fn plain(result: Value) -> Self {
        Self { result, passed: true, plots: Vec::new() }
    }
}

pub fn dispatch(config: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let set = load(&config.source, config.seed)?;
    if config.command == Command::Gen {
        return Ok(Report { json: dataset_json(&set), passed: true, plot_data: Vec::new() });
    }
    let payload = match config.command {
        Command::Depth => depth_cmd(config, &set)?,
        Command::Median => Payload::plain(report::region(&max_depth_region_any(&set)?)),
        Command::Fsbp => fsbp_cmd(config, &set)?,
        Command::Attack => attack_cmd(config, &set)?,
        Command::Verify => verify_cmd(config, &set)?,
        Command::Gen => unreachable!(),
    };
    let mut json = json!({
        "config": config_json(config),
        "dataset": {
            "n": set.n(),
            "d": set.d(),
            "general_position": is_general_position(&set),
        },
        "result": payload.result,
        "passed": payload.passed,
    });
    if config.timing {
        json["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(Report {
        json,
        passed: payload.passed,
        plot_data: if config.plot_data { payload.plots } else { Vec::new() },
    })
}

fn depth_cmd(config: &RunConfig, set: &PointSet) -> Result<Payload, CliError> {
    let x = config
        .point
        .as_ref()
        .ok_or_else(|| CliError::Usage("depth needs --point".into()))?;
    let value = tukey_depth(x, set)?;
    let witnesses = optimal_directions(x, set)?;
    Ok(Payload::plain(json!({
        "point": report::point(x),
        "depth": report::depth(&value),
        "optimal_directions": witnesses.iter().map(|w| report::direction(&w.direction)).collect::<Vec<_>>(),
    })))
}

fn fsbp_cmd(config: &RunConfig, set: &PointSet) -> Result<Payload, CliError> {
    let cert = breakdown_point(set, config.seed)?;
    let mut series = Vec::new();
    for d in 2..=3 {
        let n = if d == 3 { set.n().min(SWEEP_MAX_N_D3) } else { set.n() };
        if n < d + 1 {
            continue;
        }
        let sample = random_igp(n, d, config.seed)?;
        let c = breakdown_point(&sample, config.seed)?;
        series.push(json!({
            "d": d,
            "n": n,
            "epsilon": report::rational(&c.epsilon),
            "bound_lower": report::rational(&c.bound_lower),
            "bound_upper": report::rational(&c.bound_upper),
        }));
    }
    Ok(Payload {
        result: report::certificate(&cert),
        passed: true,
        plots: vec![(
            "epsilon_vs_d".into(),
            json!({ "n": set.n(), "seed": config.seed, "series": series }),
        )],
    })
}

fn initial_plan(config: &RunConfig, set: &PointSet) -> Result<ContaminationPlan, CliError> {
    let magnitude = config.magnitudes.first().cloned().unwrap_or_else(|| q(1));
    Ok(build_attack(set, &magnitude, 0)?)
}

/// Below-threshold checks on the attack line at each magnitude that puts `y`
/// outside the hull.
fn lower_bound_trace(set: &PointSet, plan: &ContaminationPlan, magnitudes: &[Q]) -> Result<(Vec<Value>, bool), CliError> {
    let mut rows = Vec::new();
    let mut ok = true;
    for t in magnitudes {
        let Ok(at) = plan.with_magnitude(set, t.clone()) else {
            rows.push(json!({ "magnitude": report::rational(t), "skipped": "y not outside the hull" }));
            continue;
        };
        for m in 0..plan.k {
            let check = lower_bound_check(set, m, &at.with_copies(m))?;
            ok &= check.ok();
            rows.push(report::lower_bound(&check, t));
        }
    }
    Ok((rows, ok))
}

fn attack_cmd(config: &RunConfig, set: &PointSet) -> Result<Payload, CliError> {
    let max_m = config.max_m.unwrap_or(set.n());
    let found = empirical_fsbp(set, max_m)?;
    let plan = initial_plan(config, set)?.with_copies(found);
    let outcome = run_attack(set, &plan)?;
    let mut magnitudes = vec![plan.magnitude.clone()];
    magnitudes.extend(config.magnitudes.iter().skip(1).cloned());
    let (trace, trace_ok) = lower_bound_trace(set, &plan, &magnitudes)?;
    let far = run_attack(set, &plan.with_magnitude(set, &plan.magnitude * q(4))?)?;
    let series: Vec<Value> = outcome
        .trials
        .iter()
        .chain(&far.trials)
        .map(|t| {
            json!({
                "magnitude": report::rational(&t.magnitude),
                "squared_displacement": report::rational(&t.displacement),
            })
        })
        .collect();
    Ok(Payload {
        result: json!({
            "empirical_breakdown_count": found,
            "empirical_epsilon": report::rational(&breakdown_fraction(found, set.n())),
            "plan": report::plan(&plan),
            "outcome": report::outcome(&outcome),
            "lower_bound_trace": trace,
        }),
        passed: outcome.broke_down && trace_ok,
        plots: vec![("displacement_vs_magnitude".into(), json!({ "m": found, "series": series }))],
    })
}

fn check(name: &str, passed: bool, detail: Value) -> Value {
    json!({ "name": name, "passed": passed, "detail": detail })
}

fn verify_cmd(config: &RunConfig, set: &PointSet) -> Result<Payload, CliError> {
    let cert: FsbpCertificate = breakdown_point(set, config.seed)?;
    let mut checks = vec![check(
        "breakdown_within_bounds",
        cert.bound_lower <= cert.epsilon && cert.epsilon <= cert.bound_upper,
        report::certificate(&cert),
    )];
    if cert.d == 2 {
        let h = cert.n.div_ceil(2);
        checks.push(check(
            "planar_closed_form",
            cert.epsilon == breakdown_fraction(h, cert.n),
            json!({ "expected_k": h, "k": cert.k() }),
        ));
    }
    if cert.method != Method::RandomizedUpperBound {
        let plan = initial_plan(config, set)?;
        let found = empirical_fsbp(set, plan.k);
        let threshold_ok = matches!(found, Ok(m) if m == plan.k);
        checks.push(check(
            "attack_threshold",
            threshold_ok,
            json!({ "k": plan.k, "empirical": found.as_ref().ok(), "error": found.as_ref().err().map(|e| e.to_string()) }),
        ));
        let outcome = run_attack(set, &plan.with_copies(plan.k))?;
        checks.push(check("breakdown_at_k", outcome.broke_down, report::outcome(&outcome)));
        let magnitudes: Vec<Q> = (1..=VERIFY_MAGNITUDES).map(|j| &plan.magnitude * q(j)).collect();
        let (trace, ok) = lower_bound_trace(set, &plan, &magnitudes)?;
        checks.push(check("below_threshold_lower_bound", ok, Value::Array(trace)));
    }
    let passed = checks.iter().all(|c| c["passed"] == json!(true));
    Ok(Payload {
        result: json!({ "checks": checks }),
        passed,
        plots: Vec::new(),
    })
}
