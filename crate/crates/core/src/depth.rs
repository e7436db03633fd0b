//! Exact halfspace depth, deepest regions, the halfspace median and angular depth.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cells::{cell_candidates, distinct_lines, LexDir};
use crate::error::{Error, Result};
use crate::geometry::{
    complement_basis, convex_hull, is_general_position, project, Direction, PointSet,
};
use crate::polytope::{centroid, convex_order_2d, Polytope, Ring};
use crate::rational::{
    cross_i, dot_ii, primitive_from_q, q, qi, sign_i, sub, to_q_vec, Point, Q,
};

/// Depth `count / total` kept as integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DepthValue {
    pub count: usize,
    pub total: usize,
}

impl DepthValue {
    pub fn new(count: usize, total: usize) -> Self {
        assert!(total >= 1 && count <= total, "depth {count}/{total} out of range");
        Self { count, total }
    }

    pub fn as_q(&self) -> Q {
        Q::new(BigInt::from(self.count), BigInt::from(self.total))
    }

    /// Compares the fractions by cross-multiplication.
    pub fn cmp_value(&self, other: &DepthValue) -> Ordering {
        (self.count * other.total).cmp(&(other.count * self.total))
    }
}

impl fmt::Display for DepthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count, self.total)
    }
}

/// One optimal cell of directions at a point.
///
/// `direction` lies in the open cell; `count` is the number of sample points
/// strictly below `x` along it plus the points equal to `x`. `cone` lists
/// generators of the closed cell (empty in three dimensions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthWitness {
    pub direction: Direction,
    pub count: usize,
    pub boundary_indices: Vec<usize>,
    pub below: Vec<usize>,
    pub cone: Vec<Direction>,
}

/// Differences `X_i - x` as primitive integer vectors, skipping points equal to `x`.
struct Residuals {
    equal: Vec<usize>,
    index: Vec<usize>,
    vs: Vec<Vec<BigInt>>,
}

fn residuals(x: &[Q], set: &PointSet) -> Residuals {
    let mut r = Residuals {
        equal: Vec::new(),
        index: Vec::new(),
        vs: Vec::new(),
    };
    for (i, p) in set.points().iter().enumerate() {
        let v = sub(p, x);
        if v.iter().all(|c| c.is_zero()) {
            r.equal.push(i);
        } else {
            r.index.push(i);
            r.vs.push(primitive_from_q(&v));
        }
    }
    r
}

fn check_depth_input(x: &[Q], set: &PointSet) -> Result<()> {
    set.check_point(x)?;
    if set.d() > 3 {
        return Err(Error::UnsupportedDimension { d: set.d() });
    }
    Ok(())
}

fn cell_count(cand: &LexDir, vs: &[Vec<BigInt>]) -> Option<usize> {
    let mut below = 0;
    for v in vs {
        match cand.sign(v) {
            0 => return None,
            s if s < 0 => below += 1,
            _ => {}
        }
    }
    Some(below)
}

/// Depth count of `x`, stopping early once it is known to be `<= floor`.
pub(crate) fn depth_count_floor(x: &[Q], set: &PointSet, floor: usize) -> usize {
    let r = residuals(x, set);
    let e = r.equal.len();
    if set.d() == 1 {
        let below = r.vs.iter().filter(|v| v[0].is_negative()).count();
        return e + below.min(r.vs.len() - below);
    }
    let mut best = r.vs.len();
    for cand in cell_candidates(&r.vs, set.d(), false) {
        if let Some(c) = cell_count(&cand, &r.vs) {
            best = best.min(c);
            if e + best <= floor {
                break;
            }
        }
    }
    e + best
}

/// Exact halfspace depth of `x` in the sample: the minimum over directions `u`
/// of `#{i : u.X_i <= u.x}`.
pub fn tukey_depth(x: &[Q], set: &PointSet) -> Result<DepthValue> {
    check_depth_input(x, set)?;
    Ok(DepthValue::new(depth_count_floor(x, set, 0), set.n()))
}

fn perp2(v: &[BigInt]) -> Vec<BigInt> {
    vec![-v[1].clone(), v[0].clone()]
}

/// Position of `r` on the counterclockwise sweep starting at `u`, as a sortable key.
fn sweep_half(u: &[BigInt], r: &[BigInt]) -> u8 {
    let cr = &u[0] * &r[1] - &u[1] * &r[0];
    if cr.is_positive() || (cr.is_zero() && dot_ii(u, r).is_positive()) {
        0
    } else {
        1
    }
}

fn sweep_cmp(u: &[BigInt], a: &[BigInt], b: &[BigInt]) -> Ordering {
    let (ha, hb) = (sweep_half(u, a), sweep_half(u, b));
    ha.cmp(&hb).then_with(|| {
        let cr = &a[0] * &b[1] - &a[1] * &b[0];
        0.cmp(&sign_i(&cr))
    })
}

fn planar_cone(u: &[BigInt], vs: &[Vec<BigInt>]) -> Vec<Direction> {
    let lines = distinct_lines(vs);
    if lines.is_empty() {
        return [[1, 0], [-1, 0], [0, 1], [0, -1]]
            .iter()
            .map(|c| Direction::from_i64(c).unwrap())
            .collect();
    }
    let rays: Vec<Vec<BigInt>> = lines
        .iter()
        .flat_map(|v| {
            let p = perp2(v);
            let n = p.iter().map(|x| -x).collect();
            [p, n]
        })
        .collect();
    let first = rays.iter().min_by(|a, b| sweep_cmp(u, a, b)).unwrap();
    let last = rays.iter().max_by(|a, b| sweep_cmp(u, a, b)).unwrap();
    let a = Direction::from_ints(first.clone()).unwrap();
    let b = Direction::from_ints(last.clone()).unwrap();
    if a == b.neg() {
        vec![a, b, Direction::from_ints(u.to_vec()).unwrap()]
    } else {
        vec![a, b]
    }
}

/// One witness per optimal open cell of directions at `x`, deduplicated by the
/// induced split of the sample.
pub fn optimal_directions(x: &[Q], set: &PointSet) -> Result<Vec<DepthWitness>> {
    check_depth_input(x, set)?;
    let r = residuals(x, set);
    let d = set.d();
    let e = r.equal.len();
    let cands = cell_candidates(&r.vs, d, false);
    let scored: Vec<(LexDir, usize)> = cands
        .into_iter()
        .filter_map(|c| cell_count(&c, &r.vs).map(|k| (c, k)))
        .collect();
    let best = scored.iter().map(|(_, k)| *k).min().unwrap_or(0);
    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    let mut out = Vec::new();
    for (cand, k) in scored.iter().filter(|(_, k)| *k == best) {
        let signs: Vec<i8> = r.vs.iter().map(|v| cand.sign(v)).collect();
        if !seen.insert(signs.clone()) {
            continue;
        }
        let u = if d == 1 { cand.0[0].clone() } else { cand.concretize(&r.vs) };
        let below = signs
            .iter()
            .zip(&r.index)
            .filter(|(s, _)| **s < 0)
            .map(|(_, &i)| i)
            .collect();
        let cone = match d {
            1 => vec![Direction::from_ints(u.clone()).unwrap()],
            2 => planar_cone(&u, &r.vs),
            _ => Vec::new(),
        };
        out.push(DepthWitness {
            direction: Direction::from_ints(u).unwrap(),
            count: e + k,
            boundary_indices: r.equal.clone(),
            below,
            cone,
        });
    }
    Ok(out)
}

/// Whether some optimal direction `u` at `x` has `u . w > 0`, decided on the
/// closed optimal cells (dimensions 1 and 2).
pub fn optimal_direction_toward(witnesses: &[DepthWitness], w: &[Q]) -> bool {
    witnesses
        .iter()
        .any(|wt| wt.cone.iter().any(|g| g.dot(w).is_positive()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionShape {
    Point,
    Segment,
    Polygon,
    Polytope,
}

/// The set of points with depth at least `level`, as its extreme points.
/// Planar regions list vertices counterclockwise from the lexicographically
/// smallest; other dimensions list them in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthRegion {
    pub level: DepthValue,
    pub affine_dimension: usize,
    pub vertices: Vec<Point>,
}

impl DepthRegion {
    pub fn shape(&self) -> RegionShape {
        match self.affine_dimension {
            0 => RegionShape::Point,
            1 => RegionShape::Segment,
            2 => RegionShape::Polygon,
            _ => RegionShape::Polytope,
        }
    }

    pub fn centroid(&self) -> Point {
        centroid(&self.vertices)
    }
}

#[derive(Clone)]
enum Cut {
    Ring(Ring),
    Poly(Polytope),
}

/// Halfspace description of depth regions: for each critical direction `u`,
/// the sorted projections `u . X_i` (coordinates scaled to integers).
pub(crate) struct RegionBuilder {
    d: usize,
    n: usize,
    scale: BigInt,
    scaled: Vec<Point>,
    dirs: Vec<Vec<BigInt>>,
    sorted: Vec<Vec<BigInt>>,
    /// Bounding box as a ring, in the plane.
    ring: Option<Ring>,
}

impl RegionBuilder {
    pub fn new(set: &PointSet) -> Result<Self> {
        let d = set.d();
        if !(2..=3).contains(&d) {
            return Err(Error::UnsupportedDimension { d });
        }
        let scale = set
            .points()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Vec<BigInt>> = set
            .points()
            .iter()
            .map(|p| p.iter().map(|c| (c * qi(&scale)).to_integer()).collect())
            .collect();
        let distinct: Vec<&Vec<BigInt>> = ints.iter().unique().collect();
        let diffs: Vec<Vec<BigInt>> = distinct
            .iter()
            .tuple_combinations()
            .map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| y - x).collect())
            .collect();
        let lines = distinct_lines(&diffs);
        let mut dirs: Vec<Vec<BigInt>> = Vec::new();
        let mut seen = HashSet::new();
        let mut add = |u: Vec<BigInt>, dirs: &mut Vec<Vec<BigInt>>| {
            let u = crate::rational::primitive(u);
            if u.iter().any(|x| !x.is_zero()) && seen.insert(u.clone()) {
                let n: Vec<BigInt> = u.iter().map(|x| -x).collect();
                seen.insert(n.clone());
                dirs.push(u);
                dirs.push(n);
            }
        };
        let axes: Vec<Vec<BigInt>> = (0..d)
            .map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        if d == 2 {
            for v in &lines {
                add(perp2(v), &mut dirs);
            }
            // collinear sample: also bound the region along its line
            if lines.len() == 1 {
                add(lines[0].clone(), &mut dirs);
            }
        } else {
            for (a, b) in lines.iter().tuple_combinations() {
                add(cross_i(a, b), &mut dirs);
            }
            match (lines.len(), dirs.len()) {
                (1, _) => {
                    add(lines[0].clone(), &mut dirs);
                    for e in &axes {
                        add(cross_i(&lines[0], e), &mut dirs);
                    }
                }
                // coplanar sample: in-plane normals of each line
                (_, 2) => {
                    let normal = dirs[0].clone();
                    for v in &lines {
                        add(cross_i(&normal, v), &mut dirs);
                    }
                }
                _ => {}
            }
        }
        if lines.is_empty() {
            for e in axes {
                add(e, &mut dirs);
            }
        }
        let sorted = dirs
            .iter()
            .map(|u| ints.iter().map(|p| dot_ii(u, p)).sorted().collect())
            .collect();
        Ok(Self {
            d,
            n: set.n(),
            ring: (d == 2).then(|| Ring::bounding_box(&ints)),
            scaled: ints.iter().map(|p| to_q_vec(p)).collect(),
            scale,
            dirs,
            sorted,
        })
    }

    fn start(&self) -> Cut {
        match &self.ring {
            Some(r) => Cut::Ring(r.clone()),
            None => Cut::Poly(Polytope::bounding_box(&self.scaled, self.d)),
        }
    }

    /// `cut` intersected with `{depth >= k}`; `None` when empty.
    fn clip(&self, mut cut: Cut, k: usize) -> Option<Cut> {
        for (u, proj) in self.dirs.iter().zip(&self.sorted) {
            let empty = match &mut cut {
                Cut::Ring(r) => {
                    r.clip(u, &proj[k - 1]);
                    r.is_empty()
                }
                Cut::Poly(p) => {
                    p.clip(u, &qi(&proj[k - 1]));
                    p.is_empty()
                }
            };
            if empty {
                return None;
            }
        }
        Some(cut)
    }

    /// Vertices in original coordinates.
    fn vertices(&self, cut: Option<Cut>) -> Vec<Point> {
        let verts = match cut {
            None => return Vec::new(),
            Some(Cut::Ring(r)) => r.vertices(),
            Some(Cut::Poly(p)) => p.vertices().to_vec(),
        };
        let inv = q(1) / qi(&self.scale);
        verts
            .iter()
            .map(|v| v.iter().map(|c| c * &inv).collect())
            .collect()
    }

    pub fn region(&self, k: usize) -> Vec<Point> {
        assert!(k >= 1 && k <= self.n);
        self.vertices(self.clip(self.start(), k))
    }

    /// Region intersected with the convex hull of `other` (given in original coordinates).
    pub fn region_within(&self, k: usize, other: &PointSet) -> Result<Vec<Point>> {
        let scaled: Vec<Point> = other
            .points()
            .iter()
            .map(|p| p.iter().map(|c| c * qi(&self.scale)).collect())
            .collect();
        let cut = if self.d == 2 {
            Cut::Ring(Ring::new(&scaled))
        } else {
            let set = PointSet::new(scaled.clone())?;
            Cut::Poly(Polytope::from_hull(&convex_hull(&set)?, &scaled))
        };
        Ok(self.vertices(self.clip(cut, k)))
    }

    /// Largest `k` with a nonempty region, and that region. Each level is cut
    /// from the one below it.
    fn max_cut(&self) -> (usize, Cut) {
        let mut k = self.n.div_ceil(self.d + 1).max(1);
        let mut current = self.clip(self.start(), k);
        while current.is_none() {
            k -= 1;
            current = self.clip(self.start(), k);
        }
        let mut current = current.expect("the first level is nonempty");
        while k < self.n {
            match self.clip(current.clone(), k + 1) {
                Some(next) => {
                    k += 1;
                    current = next;
                }
                None => break,
            }
        }
        (k, current)
    }

    pub fn max_region(&self) -> (usize, Vec<Point>) {
        let (k, cut) = self.max_cut();
        (k, self.vertices(Some(cut)))
    }

    /// Largest nonempty level and the affine dimension of its region.
    pub fn max_level_dimension(&self) -> (usize, usize) {
        match self.max_cut() {
            // clipped rings never hold three collinear vertices
            (k, Cut::Ring(r)) => (k, r.len().min(3) - 1),
            (k, Cut::Poly(p)) => (k, crate::geometry::affine_dimension(p.vertices())),
        }
    }
}

fn finish_region(level: DepthValue, pts: Vec<Point>) -> DepthRegion {
    let dim = crate::geometry::affine_dimension(&pts);
    let vertices = if pts[0].len() == 2 {
        let chart: Vec<(Q, Q)> = pts.iter().map(|p| (p[0].clone(), p[1].clone())).collect();
        convex_order_2d(&chart).into_iter().map(|i| pts[i].clone()).collect()
    } else {
        let mut v: Vec<Point> = pts.into_iter().unique().collect();
        v.sort();
        if dim == 1 {
            v = vec![v[0].clone(), v[v.len() - 1].clone()];
        }
        v
    };
    DepthRegion {
        level,
        affine_dimension: dim,
        vertices,
    }
}

fn sorted_1d(set: &PointSet) -> Vec<Q> {
    set.points().iter().map(|p| p[0].clone()).sorted().collect()
}

/// `{x : depth(x) >= k}` for `1 <= k <= n`; `None` when empty. Any multiset is accepted.
pub fn depth_region(set: &PointSet, k: usize) -> Result<Option<DepthRegion>> {
    let n = set.n();
    if k == 0 || k > n {
        return Err(Error::InvalidPlan(format!("depth level {k} outside 1..={n}")));
    }
    let level = DepthValue::new(k, n);
    if set.d() == 1 {
        let s = sorted_1d(set);
        if 2 * k > n + 1 {
            return Ok(None);
        }
        let pts = vec![vec![s[k - 1].clone()], vec![s[n - k].clone()]];
        return Ok(Some(finish_region(level, pts)));
    }
    let pts = RegionBuilder::new(set)?.region(k);
    Ok((!pts.is_empty()).then(|| finish_region(level, pts)))
}

/// Maximum depth over all points, by region scan (any multiset, `d <= 3`).
pub fn max_depth(set: &PointSet) -> Result<DepthValue> {
    let n = set.n();
    let k = match set.d() {
        1 => {
            let s = sorted_1d(set);
            // largest k with X_(k) <= X_(n-k+1), counting ties
            let mut best = 0;
            for x in s.iter().dedup() {
                let le = s.iter().filter(|v| *v <= x).count();
                let ge = s.iter().filter(|v| *v >= x).count();
                best = best.max(le.min(ge));
            }
            best
        }
        2 | 3 => RegionBuilder::new(set)?.max_region().0,
        d => return Err(Error::UnsupportedDimension { d }),
    };
    Ok(DepthValue::new(k, n))
}

/// Maximum depth as the largest depth over candidate vertices: the sample
/// points and every intersection of two lines through pairs of sample points.
pub fn max_depth_by_candidates(set: &PointSet) -> Result<DepthValue> {
    if set.d() != 2 {
        return Err(Error::UnsupportedDimension { d: set.d() });
    }
    let pts = set.points();
    let lines: Vec<(Point, Point)> = (0..set.n())
        .tuple_combinations()
        .filter(|&(i, j)| pts[i] != pts[j])
        .map(|(i, j)| (pts[i].clone(), pts[j].clone()))
        .collect();
    let mut cands: Vec<Point> = pts.to_vec();
    for (a, b) in lines.iter().tuple_combinations() {
        if let Some(p) = line_intersection(a, b) {
            cands.push(p);
        }
    }
    let cands: Vec<Point> = cands.into_iter().unique().collect();
    let mut best = 0;
    for c in &cands {
        best = best.max(depth_count_floor(c, set, best));
    }
    Ok(DepthValue::new(best, set.n()))
}

fn line_intersection(a: &(Point, Point), b: &(Point, Point)) -> Option<Point> {
    let r = sub(&a.1, &a.0);
    let s = sub(&b.1, &b.0);
    let den = &r[0] * &s[1] - &r[1] * &s[0];
    if den.is_zero() {
        return None;
    }
    let w = sub(&b.0, &a.0);
    let t = (&w[0] * &s[1] - &w[1] * &s[0]) / den;
    Some(vec![&a.0[0] + &t * &r[0], &a.0[1] + &t * &r[1]])
}

/// The deepest region of a multiset, without a general-position check.
pub fn max_depth_region_any(set: &PointSet) -> Result<DepthRegion> {
    if set.d() == 1 {
        let lam = max_depth(set)?;
        return Ok(depth_region(set, lam.count)?.expect("the deepest level is nonempty"));
    }
    let (k, pts) = RegionBuilder::new(set)?.max_region();
    Ok(finish_region(DepthValue::new(k, set.n()), pts))
}

/// The set of deepest points of a sample in general position.
pub fn max_depth_region(set: &PointSet) -> Result<DepthRegion> {
    if set.n() < set.d() + 1 {
        return Err(Error::SampleTooSmall {
            n: set.n(),
            needed: set.d() + 1,
        });
    }
    if !is_general_position(set) {
        return Err(Error::NotInGeneralPosition);
    }
    max_depth_region_any(set)
}

/// Halfspace median: centroid of the deepest region.
pub fn tukey_median(set: &PointSet) -> Result<Point> {
    Ok(max_depth_region(set)?.centroid())
}

/// Depth of the origin after projecting `W` along `u`: the minimum over
/// directions `v` orthogonal to `u` of `#{i : v . W_i <= 0}`.
pub fn angular_depth(u: &Direction, w: &PointSet) -> Result<DepthValue> {
    if u.d() != w.d() {
        return Err(Error::DimensionMismatch {
            expected: w.d(),
            got: u.d(),
        });
    }
    if w.d() > 4 || w.d() < 2 {
        return Err(Error::UnsupportedDimension { d: w.d() });
    }
    let projected = project(w, &complement_basis(u));
    tukey_depth(&vec![Q::zero(); w.d() - 1], &projected)
}

/// A direction maximizing angular depth; ties go to the lexicographically
/// smallest sign-canonical direction.
pub fn angular_median(w: &PointSet) -> Result<Direction> {
    let d = w.d();
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension { d });
    }
    let ws: Vec<Vec<BigInt>> = w.points().iter().map(|p| primitive_from_q(p)).collect();
    if ws.iter().any(|v| v.iter().all(|x| x.is_zero())) {
        return Err(Error::ZeroDirection);
    }
    // angular depth is constant on the strata of this arrangement and upper
    // semicontinuous, so its maximum is reached at a vertex when there is one
    let breaks: Vec<Vec<BigInt>> = if d == 2 {
        ws.iter().map(|v| perp2(v)).collect()
    } else {
        ws.iter().tuple_combinations().map(|(a, b)| cross_i(a, b)).collect()
    };
    let strata = cell_candidates(&breaks, d, true);
    let vertices: Vec<&LexDir> = strata.iter().filter(|c| c.0.len() == 1).collect();
    let pool: Vec<&LexDir> = if vertices.is_empty() { strata.iter().collect() } else { vertices };
    let mut cands: Vec<Direction> = pool
        .iter()
        .map(|c| Direction::from_ints(c.concretize(&breaks)).unwrap().sign_canonical())
        .collect();
    cands.extend(ws.iter().map(|v| Direction::from_ints(v.clone()).unwrap().sign_canonical()));
    cands.sort();
    cands.dedup();
    let mut best: Option<(usize, Direction)> = None;
    for u in cands {
        let k = angular_depth(&u, w)?.count;
        if best.as_ref().is_none_or(|(b, _)| k > *b) {
            best = Some((k, u));
        }
    }
    Ok(best.expect("nonempty candidate set").1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{point, q_frac};

    fn square() -> PointSet {
        PointSet::from_i64(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap()
    }

    #[test]
    fn univariate_depth() {
        let x = PointSet::from_i64(&[&[1], &[2], &[3], &[4], &[5]]).unwrap();
        assert_eq!(tukey_depth(&[q(3)], &x).unwrap(), DepthValue::new(3, 5));
        assert_eq!(tukey_depth(&[q(9)], &x).unwrap().count, 0);
        assert_eq!(tukey_median(&x).unwrap(), vec![q(3)]);
        let even = PointSet::from_i64(&[&[1], &[2], &[3], &[4]]).unwrap();
        assert_eq!(tukey_median(&even).unwrap(), vec![q_frac(5, 2)]);
        let r = max_depth_region(&even).unwrap();
        assert_eq!(r.vertices, vec![vec![q(2)], vec![q(3)]]);
        assert_eq!(r.level, DepthValue::new(2, 4));
    }

    #[test]
    fn square_center() {
        let c = vec![q_frac(1, 2), q_frac(1, 2)];
        assert_eq!(tukey_depth(&c, &square()).unwrap(), DepthValue::new(2, 4));
        assert_eq!(optimal_directions(&c, &square()).unwrap().len(), 4);
        assert_eq!(tukey_depth(&point(&[2, 2]), &square()).unwrap().count, 0);
        assert_eq!(tukey_depth(&point(&[1, 1]), &square()).unwrap().count, 1);
    }

    #[test]
    fn opposite_collinear_boundary_points() {
        // x sits between two sample points on one line; counting both as
        // rotatable to the same side would undercount
        let x = PointSet::from_i64(&[&[-1, 0], &[1, 0], &[0, 1], &[0, -1]]).unwrap();
        assert_eq!(tukey_depth(&point(&[0, 0]), &x).unwrap().count, 2);
    }

    #[test]
    fn triangle_region() {
        let t = PointSet::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let r = max_depth_region(&t).unwrap();
        assert_eq!(r.level, DepthValue::new(1, 3));
        assert_eq!(r.vertices, vec![point(&[0, 0]), point(&[1, 0]), point(&[0, 1])]);
        assert_eq!(tukey_median(&t).unwrap(), vec![q_frac(1, 3), q_frac(1, 3)]);
        assert_eq!(max_depth_by_candidates(&t).unwrap(), r.level);
    }

    #[test]
    fn quadrilateral_region_is_diagonal_crossing() {
        let x = PointSet::from_i64(&[&[0, 0], &[4, 0], &[5, 3], &[1, 2]]).unwrap();
        let r = max_depth_region(&x).unwrap();
        assert_eq!(r.level.count, 2);
        assert_eq!(r.affine_dimension, 0);
        assert_eq!(max_depth_by_candidates(&x).unwrap().count, 2);
    }

    #[test]
    fn tetrahedron_depths() {
        let t = PointSet::from_i64(&[&[1, 1, 1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]).unwrap();
        assert_eq!(tukey_depth(&point(&[0, 0, 0]), &t).unwrap().count, 1);
        assert_eq!(tukey_depth(&point(&[1, 1, 1]), &t).unwrap().count, 1);
        assert_eq!(max_depth(&t).unwrap().count, 1);
    }

    #[test]
    fn witnesses_at_vertex() {
        let t = PointSet::from_i64(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1]]).unwrap();
        let w = optimal_directions(&point(&[0, 0]), &t).unwrap();
        assert!(w.iter().all(|w| w.count == 1));
        assert!(!w.is_empty());
    }

    #[test]
    fn degenerate_samples_have_bounded_regions() {
        let cases = [
            PointSet::from_i64(&[&[-4, -2], &[-3, -1], &[3, 5]]).unwrap(),
            PointSet::from_i64(&[&[2, 2], &[2, 2], &[2, 2]]).unwrap(),
            PointSet::from_i64(&[&[0, 0, 0], &[1, 2, 3], &[3, 6, 9], &[-1, -2, -3]]).unwrap(),
            PointSet::from_i64(&[&[0, 0, 1], &[4, 0, 1], &[0, 4, 1], &[1, 1, 1], &[3, 2, 1]]).unwrap(),
            PointSet::from_i64(&[&[1, 1, 1], &[1, 1, 1]]).unwrap(),
        ];
        for x in &cases[..2] {
            assert_eq!(max_depth(x).unwrap(), max_depth_by_candidates(x).unwrap(), "{x:?}");
        }
        let along = PointSet::from_i64(&[&[0], &[1], &[3], &[-1]]).unwrap();
        assert_eq!(max_depth(&cases[2]).unwrap(), max_depth(&along).unwrap());
        let flat = PointSet::from_i64(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[3, 2]]).unwrap();
        assert_eq!(max_depth(&cases[3]).unwrap(), max_depth(&flat).unwrap());
        assert_eq!(max_depth(&cases[4]).unwrap().count, 2);
        let line = max_depth_region_any(&cases[0]).unwrap();
        assert_eq!(line.vertices, vec![point(&[-3, -1])]);
    }

    #[test]
    fn angular_depth_on_circle() {
        let w = PointSet::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let u = angular_median(&w).unwrap();
        let k = angular_depth(&u, &w).unwrap().count;
        for c in [[1, 0], [0, 1], [1, 1], [1, -1], [2, 1], [1, 2]] {
            let v = Direction::from_i64(&c).unwrap();
            assert!(angular_depth(&v, &w).unwrap().count <= k);
        }
    }
}
