//! Point-mass contamination that carries the halfspace median out of the
//! sample hull: escape point search, attack construction, and the checks
//! that the attack succeeds exactly from `k` copies on.

use std::collections::HashSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::depth::{
    max_depth_region, max_depth_region_any, optimal_direction_toward, optimal_directions,
    tukey_depth, DepthRegion, DepthValue, DepthWitness, RegionBuilder,
};
use crate::error::{Error, Result};
use crate::fsbp::{breakdown_point, Method};
use crate::geometry::{
    complement_basis, convex_hull, hull_contains, is_general_position, line_hull_intersection,
    project, ComplementBasis, ConvexHull, Direction, HullPosition, PointSet,
};
use crate::rational::{add, dot_qq, l1_norm_i, q, qi, scale, sub, Point, Q};

/// Iteration cap for the escape point walk.
pub const MAX_ITER: usize = 64;
/// Halving levels of the candidate grid inside the deepest region.
pub const GRID_LEVELS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// The deepest region is a single point.
    Dim0,
    /// The deepest region is a segment.
    LowDim,
    /// Found by walking through dominated candidates of a polygon.
    FullDimIterative,
    /// Found by testing every candidate.
    SearchVerified,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scenario::Dim0 => "dim0",
            Scenario::LowDim => "low_dim",
            Scenario::FullDimIterative => "full_dim_iterative",
            Scenario::SearchVerified => "search_verified",
        };
        f.write_str(s)
    }
}

/// A deepest point of a (projected) sample that every other deepest
/// candidate can see along one of its optimal directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapePoint {
    pub point: Point,
    pub scenario: Scenario,
    pub verified: bool,
    /// Deepest level of the sample the point was taken from.
    pub level: DepthValue,
    pub candidates: usize,
    pub iterations: usize,
}

/// Split of candidates by whether some optimal direction at the candidate
/// points strictly toward `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceAnalysis {
    pub z: Point,
    pub candidates: Vec<Point>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    /// `b` without the candidates equal to `z`.
    pub b_tilde: Vec<usize>,
}

fn classify(z: &[Q], candidates: &[Point], witnesses: &[Vec<DepthWitness>]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let (mut a, mut b, mut bt) = (Vec::new(), Vec::new(), Vec::new());
    for (i, (x, w)) in candidates.iter().zip(witnesses).enumerate() {
        if optimal_direction_toward(w, &sub(z, x)) {
            a.push(i);
        } else {
            b.push(i);
            if x.as_slice() != z {
                bt.push(i);
            }
        }
    }
    (a, b, bt)
}

pub fn dominance_sets(z: &[Q], set: &PointSet, candidates: &[Point]) -> Result<DominanceAnalysis> {
    let witnesses = candidates
        .iter()
        .map(|x| optimal_directions(x, set))
        .collect::<Result<Vec<_>>>()?;
    let (a, b, b_tilde) = classify(z, candidates, &witnesses);
    Ok(DominanceAnalysis {
        z: z.to_vec(),
        candidates: candidates.to_vec(),
        a,
        b,
        b_tilde,
    })
}

/// Vertices, centroid, and a grid of denominator `2^GRID_LEVELS` over the
/// fan triangulation from the centroid (edge midpoints included).
pub fn region_candidates(region: &DepthRegion) -> Vec<Point> {
    let c = region.centroid();
    let mut out: Vec<Point> = region.vertices.clone();
    out.push(c.clone());
    let steps = 1i64 << GRID_LEVELS;
    let vs = &region.vertices;
    match region.affine_dimension {
        0 => {}
        1 => {
            let (p, r) = (&vs[0], &vs[vs.len() - 1]);
            for j in 1..steps {
                out.push(add(p, &scale(&sub(r, p), &Q::new(j.into(), steps.into()))));
            }
        }
        _ => {
            for i in 0..vs.len() {
                let e1 = sub(&vs[i], &c);
                let e2 = sub(&vs[(i + 1) % vs.len()], &c);
                for a in 0..=steps {
                    for b in 0..=steps - a {
                        let p = add(
                            &add(&c, &scale(&e1, &Q::new(a.into(), steps.into()))),
                            &scale(&e2, &Q::new(b.into(), steps.into())),
                        );
                        out.push(p);
                    }
                }
            }
        }
    }
    let mut seen = HashSet::new();
    out.retain(|p| seen.insert(p.clone()));
    out
}

/// Largest step along an optimal direction of `z` toward `other`, with
/// directions normalized to unit L1 norm.
fn gap(z: &[Q], witnesses: &[DepthWitness], other: &[Q]) -> Q {
    let w = sub(other, z);
    witnesses
        .iter()
        .flat_map(|wt| wt.cone.iter())
        .map(|g| g.dot(&w) / qi(&l1_norm_i(g.coords())))
        .max()
        .unwrap_or_else(Q::zero)
}

/// Escape point of a projected sample of dimension 1 or 2.
pub fn escape_point(projected: &PointSet) -> Result<EscapePoint> {
    let d = projected.d();
    if !(1..=2).contains(&d) {
        return Err(Error::UnsupportedDimension { d });
    }
    if !is_general_position(projected) {
        return Err(Error::NotInGeneralPosition);
    }
    let region = max_depth_region(projected)?;
    let cands = region_candidates(&region);
    let witnesses = cands
        .iter()
        .map(|x| optimal_directions(x, projected))
        .collect::<Result<Vec<_>>>()?;
    let passes = |i: usize| classify(&cands[i], &cands, &witnesses).2.is_empty();
    let done = |i: usize, scenario: Scenario, iterations: usize| EscapePoint {
        point: cands[i].clone(),
        scenario,
        verified: true,
        level: region.level,
        candidates: cands.len(),
        iterations,
    };
    // the centroid sits right after the vertices
    let centroid = region.vertices.len();
    match region.affine_dimension {
        0 => return Ok(done(0, Scenario::Dim0, 0)),
        1 => {
            if passes(centroid) {
                return Ok(done(centroid, Scenario::LowDim, 0));
            }
        }
        _ => {
            let mut z = centroid;
            let mut visited = HashSet::from([z]);
            for it in 1..=MAX_ITER {
                let (_, _, bt) = classify(&cands[z], &cands, &witnesses);
                if bt.is_empty() {
                    return Ok(done(z, Scenario::FullDimIterative, it - 1));
                }
                let next = bt
                    .iter()
                    .copied()
                    .max_by(|&i, &j| {
                        gap(&cands[z], &witnesses[z], &cands[i])
                            .cmp(&gap(&cands[z], &witnesses[z], &cands[j]))
                            .then(j.cmp(&i))
                    })
                    .expect("nonempty");
                if !visited.insert(next) {
                    break;
                }
                z = next;
            }
        }
    }
    (0..cands.len())
        .find(|&i| passes(i))
        .map(|i| done(i, Scenario::SearchVerified, 0))
        .ok_or(Error::EscapeUnverified)
}

/// `m` copies of `y = base + magnitude * u0`, where `base` lifts the escape
/// point of the sample projected along `u0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContaminationPlan {
    pub u0: Direction,
    pub basis: ComplementBasis,
    pub x0: EscapePoint,
    pub base: Point,
    pub magnitude: Q,
    pub y: Point,
    pub m: usize,
    /// Certified breakdown count.
    pub k: usize,
}

impl ContaminationPlan {
    pub fn point_at(&self, magnitude: &Q) -> Point {
        add(&self.base, &scale(&self.u0.as_q(), magnitude))
    }

    /// Same line and copy count at another magnitude; `y` must leave the hull.
    pub fn with_magnitude(&self, set: &PointSet, magnitude: Q) -> Result<Self> {
        let y = self.point_at(&magnitude);
        if hull_contains(&convex_hull(set)?, &y) != HullPosition::Outside {
            return Err(Error::InvalidPlan("contaminating point is not outside the hull".into()));
        }
        Ok(Self {
            magnitude,
            y,
            ..self.clone()
        })
    }

    pub fn with_copies(&self, m: usize) -> Self {
        Self { m, ..self.clone() }
    }
}

fn projection_range(set: &PointSet, u: &Direction) -> (Q, Q) {
    let vals: Vec<Q> = set.points().iter().map(|p| u.dot(p)).collect();
    (
        vals.iter().min().cloned().expect("nonempty"),
        vals.iter().max().cloned().expect("nonempty"),
    )
}

/// Builds the attack line from the breakdown certificate. The magnitude is
/// doubled until `y` is far enough outside the hull that any convex region
/// containing `y` and lying above the sample along `u0` has its centroid
/// outside the hull; after any doubling it is doubled once more.
pub fn build_attack(set: &PointSet, magnitude: &Q, m: usize) -> Result<ContaminationPlan> {
    let d = set.d();
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension { d });
    }
    if !magnitude.is_positive() {
        return Err(Error::InvalidPlan("magnitude must be positive".into()));
    }
    let cert = breakdown_point(set, 0)?;
    if cert.method == Method::RandomizedUpperBound {
        return Err(Error::InvalidPlan("no exact breakdown certificate".into()));
    }
    let u0 = cert.u0.clone();
    let basis = complement_basis(&u0);
    let x0 = escape_point(&project(set, &basis))?;
    let base = basis.lift(&x0.point);
    let hull = convex_hull(set)?;
    let (lo, hi) = projection_range(set, &u0);
    let uu = qi(&u0.dot_dir(&u0));
    let margin = &lo + q(d as i64 + 1) * (&hi - &lo);
    let mut delta = magnitude.clone();
    let mut doubled = false;
    for _ in 0..256 {
        let y = add(&base, &scale(&u0.as_q(), &delta));
        if &delta * &uu > margin && hull_contains(&hull, &y) == HullPosition::Outside {
            break;
        }
        delta *= q(2);
        doubled = true;
    }
    if doubled {
        delta *= q(2);
    }
    let y = add(&base, &scale(&u0.as_q(), &delta));
    Ok(ContaminationPlan {
        u0,
        basis,
        x0,
        base,
        magnitude: delta,
        y,
        m,
        k: cert.k(),
    })
}

/// Largest depth with respect to `contaminated` attained inside the hull of
/// `set` (dimensions 2 and 3).
pub fn sup_depth_within_hull(contaminated: &PointSet, set: &PointSet) -> Result<DepthValue> {
    let total = contaminated.n();
    let builder = RegionBuilder::new(contaminated)?;
    let mut k = 1;
    while k < total && !builder.region_within(k + 1, set)?.is_empty() {
        k += 1;
    }
    Ok(DepthValue::new(k, total))
}

/// Result of contaminating with `y` at one magnitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnitudeTrial {
    pub magnitude: Q,
    pub y: Point,
    pub depth_y: DepthValue,
    pub sup_in_hull: DepthValue,
    pub lambda: DepthValue,
    pub region_dimension: usize,
    pub median: Point,
    pub median_position: HullPosition,
    /// Squared distance from the uncontaminated median.
    pub displacement: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackOutcome {
    pub m: usize,
    pub k: usize,
    pub clean_median: Point,
    pub trials: Vec<MagnitudeTrial>,
    pub y_is_deepest: bool,
    pub broke_down: bool,
}

fn trial(set: &PointSet, hull: &ConvexHull, clean: &[Q], y: Point, magnitude: Q, m: usize) -> Result<MagnitudeTrial> {
    let z = set.with_copies(&y, m);
    let region = max_depth_region_any(&z)?;
    let median = region.centroid();
    let diff = sub(&median, clean);
    Ok(MagnitudeTrial {
        depth_y: tukey_depth(&y, &z)?,
        sup_in_hull: sup_depth_within_hull(&z, set)?,
        lambda: region.level,
        region_dimension: region.affine_dimension,
        median_position: hull_contains(hull, &median),
        displacement: dot_qq(&diff, &diff),
        median,
        magnitude,
        y,
    })
}

/// Runs the plan at its magnitude and at twice that magnitude.
pub fn run_attack(set: &PointSet, plan: &ContaminationPlan) -> Result<AttackOutcome> {
    let hull = convex_hull(set)?;
    if hull_contains(&hull, &plan.y) != HullPosition::Outside {
        return Err(Error::InvalidPlan("contaminating point is not outside the hull".into()));
    }
    let clean = max_depth_region_any(set)?.centroid();
    let trials = [plan.magnitude.clone(), &plan.magnitude * q(2)]
        .into_iter()
        .map(|t| trial(set, &hull, &clean, plan.point_at(&t), t, plan.m))
        .collect::<Result<Vec<_>>>()?;
    let y_is_deepest = trials.iter().all(|t| t.depth_y.count >= t.sup_in_hull.count);
    let broke_down = plan.m > 0
        && y_is_deepest
        && trials.iter().all(|t| t.median_position == HullPosition::Outside)
        && trials[1].displacement > trials[0].displacement;
    Ok(AttackOutcome {
        m: plan.m,
        k: plan.k,
        clean_median: clean,
        trials,
        y_is_deepest,
        broke_down,
    })
}

/// The lower bound on the depth of the hull boundary point `z` on the attack line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundCheck {
    pub m: usize,
    pub z: Option<Point>,
    pub depth_z: Option<DepthValue>,
    /// `min(k, m + 1)`.
    pub required: usize,
    pub bound_holds: bool,
    /// For `m < k`: depth of `z` exceeds `m`, the most any exterior point reaches.
    pub beats_exterior: Option<bool>,
    /// For `m < k`: the contaminated median stays in the hull.
    pub median_in_hull: Option<bool>,
}

impl LowerBoundCheck {
    pub fn ok(&self) -> bool {
        self.bound_holds && self.beats_exterior != Some(false) && self.median_in_hull != Some(false)
    }
}

pub fn lower_bound_check(set: &PointSet, m: usize, plan: &ContaminationPlan) -> Result<LowerBoundCheck> {
    let hull = convex_hull(set)?;
    let required = plan.k.min(m + 1);
    let hits = line_hull_intersection(&hull, &plan.base, &plan.u0);
    let dist = |p: &Point| {
        let w = sub(p, &plan.y);
        dot_qq(&w, &w)
    };
    let Some(z) = hits.into_iter().min_by(|a, b| dist(a).cmp(&dist(b))) else {
        return Ok(LowerBoundCheck {
            m,
            z: None,
            depth_z: None,
            required,
            bound_holds: false,
            beats_exterior: None,
            median_in_hull: None,
        });
    };
    let contaminated = set.with_copies(&plan.y, m);
    let depth_z = tukey_depth(&z, &contaminated)?;
    let (beats_exterior, median_in_hull) = if m < plan.k {
        let median = max_depth_region_any(&contaminated)?.centroid();
        (
            Some(depth_z.count > m),
            Some(hull_contains(&hull, &median) != HullPosition::Outside),
        )
    } else {
        (None, None)
    };
    Ok(LowerBoundCheck {
        m,
        bound_holds: depth_z.count >= required,
        z: Some(z),
        depth_z: Some(depth_z),
        required,
        beats_exterior,
        median_in_hull,
    })
}

pub fn verify_lower_bound(set: &PointSet, m: usize, plan: &ContaminationPlan) -> Result<bool> {
    Ok(lower_bound_check(set, m, plan)?.ok())
}

/// Smallest copy count in `1..=max_m` at which the constructed attack breaks the median.
pub fn empirical_fsbp(set: &PointSet, max_m: usize) -> Result<usize> {
    let plan = build_attack(set, &q(1), 0)?;
    if max_m < plan.k {
        return Err(Error::NoBreakdownWithinBudget { max_m, k: plan.k });
    }
    for m in 1..=max_m {
        if run_attack(set, &plan.with_copies(m))?.broke_down {
            return Ok(m);
        }
    }
    Err(Error::NoBreakdownWithinBudget { max_m, k: plan.k })
}
