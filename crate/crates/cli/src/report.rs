//! JSON rendering of exact values. Every rational is written as an exact
//! `"p/q"` string next to a 12-digit decimal approximation.

use halfspace_core::attack::{AttackOutcome, ContaminationPlan, LowerBoundCheck, MagnitudeTrial};
use halfspace_core::depth::{DepthRegion, DepthValue};
use halfspace_core::fsbp::FsbpCertificate;
use halfspace_core::geometry::{Direction, HullPosition};
use halfspace_core::rational::{fmt_q, to_f64, Q};
use serde_json::{json, Value};

pub fn rational(v: &Q) -> Value {
    json!({ "exact": fmt_q(v), "decimal": format!("{:.12}", to_f64(v)) })
}

pub fn point(p: &[Q]) -> Value {
    Value::Array(p.iter().map(rational).collect())
}

pub fn points(ps: &[Vec<Q>]) -> Value {
    Value::Array(ps.iter().map(|p| point(p)).collect())
}

pub fn direction(u: &Direction) -> Value {
    Value::Array(u.coords().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn depth(v: &DepthValue) -> Value {
    json!({ "value": v.to_string(), "decimal": format!("{:.12}", to_f64(&v.as_q())) })
}

pub fn position(p: HullPosition) -> &'static str {
    match p {
        HullPosition::Interior => "interior",
        HullPosition::Boundary => "boundary",
        HullPosition::Outside => "outside",
    }
}

pub fn region(r: &DepthRegion) -> Value {
    json!({
        "level": depth(&r.level),
        "dimension": r.affine_dimension,
        "vertices": points(&r.vertices),
        "centroid": point(&r.centroid()),
    })
}

pub fn certificate(c: &FsbpCertificate) -> Value {
    json!({
        "n": c.n,
        "d": c.d,
        "k": c.k(),
        "epsilon": rational(&c.epsilon),
        "u0": direction(&c.u0),
        "lambda_star_min": depth(&c.lambda_star_min),
        "method": c.method.to_string(),
        "fragments": c.fragments,
        "bounds": {
            "lower": rational(&c.bound_lower),
            "upper": rational(&c.bound_upper),
            "singleton_case": c.singleton_case,
        },
    })
}

pub fn plan(p: &ContaminationPlan) -> Value {
    json!({
        "u0": direction(&p.u0),
        "x0": {
            "point": point(&p.x0.point),
            "scenario": p.x0.scenario.to_string(),
            "verified": p.x0.verified,
            "level": depth(&p.x0.level),
            "candidates": p.x0.candidates,
            "iterations": p.x0.iterations,
        },
        "line_base": point(&p.base),
        "y": point(&p.y),
        "magnitude": rational(&p.magnitude),
        "m": p.m,
        "k": p.k,
    })
}

fn trial(t: &MagnitudeTrial) -> Value {
    json!({
        "magnitude": rational(&t.magnitude),
        "y": point(&t.y),
        "depth_y": depth(&t.depth_y),
        "sup_depth_in_hull": depth(&t.sup_in_hull),
        "lambda": depth(&t.lambda),
        "region_dimension": t.region_dimension,
        "median": point(&t.median),
        "median_position": position(t.median_position),
        "squared_displacement": rational(&t.displacement),
    })
}

pub fn outcome(o: &AttackOutcome) -> Value {
    json!({
        "m": o.m,
        "k": o.k,
        "clean_median": point(&o.clean_median),
        "trials": o.trials.iter().map(trial).collect::<Vec<_>>(),
        "y_is_deepest": o.y_is_deepest,
        "broke_down": o.broke_down,
    })
}

pub fn lower_bound(c: &LowerBoundCheck, magnitude: &Q) -> Value {
    json!({
        "m": c.m,
        "magnitude": rational(magnitude),
        "z": c.z.as_deref().map(point),
        "depth_z": c.depth_z.as_ref().map(depth),
        "required_count": c.required,
        "bound_holds": c.bound_holds,
        "beats_exterior": c.beats_exterior,
        "median_in_hull": c.median_in_hull,
        "ok": c.ok(),
    })
}
