//! Exact geometric kernel: general position, hyperplane normals, generic
//! directions, complement bases, convex hulls and line clipping.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{
    dot_ii, dot_iq, null_space, null_vector, primitive, primitive_from_q, qi, rank, solve, sub,
    to_q_vec, Point, Q,
};

/// A finite multiset of points in `R^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    d: usize,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySample)?;
        let d = first.len();
        if d == 0 {
            return Err(Error::UnsupportedDimension { d });
        }
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
        Ok(Self { points, d })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| crate::rational::point(r)).collect())
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// The sample with `m` extra copies of `y` appended.
    pub fn with_copies(&self, y: &Point, m: usize) -> Self {
        let mut points = self.points.clone();
        points.extend(std::iter::repeat_n(y.clone(), m));
        Self { points, d: self.d }
    }

    pub fn check_point(&self, x: &[Q]) -> Result<()> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: x.len(),
            });
        }
        Ok(())
    }
}

/// A nonzero direction stored as a primitive integer vector.
///
/// Equality keeps orientation: `u` and `-u` are different directions.
/// Use [`Direction::sign_canonical`] to compare unoriented lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    coords: Vec<BigInt>,
}

impl Direction {
    pub fn from_ints(coords: Vec<BigInt>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self {
            coords: primitive(coords),
        })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::from_ints(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_q(coords: &[Q]) -> Result<Self> {
        Self::from_ints(primitive_from_q(coords))
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn d(&self) -> usize {
        self.coords.len()
    }

    pub fn as_q(&self) -> Point {
        to_q_vec(&self.coords)
    }

    pub fn dot(&self, x: &[Q]) -> Q {
        dot_iq(&self.coords, x)
    }

    pub fn dot_dir(&self, other: &Direction) -> BigInt {
        dot_ii(&self.coords, &other.coords)
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Representative of the line through `self`: first nonzero coordinate positive.
    pub fn sign_canonical(&self) -> Self {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn is_parallel(&self, other: &Direction) -> bool {
        self.sign_canonical() == other.sign_canonical()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords.iter().join(", "))
    }
}

/// Affine dimension of the span of the given points (`-1` is never returned;
/// an empty slice counts as dimension 0).
pub fn affine_dimension(points: &[Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => rank(&rest.iter().map(|p| sub(p, p0)).collect::<Vec<_>>()),
    }
}

/// True iff every `(d+1)`-subset spans affine dimension `d`; for `n <= d`,
/// true iff the points are affinely independent.
pub fn is_general_position(x: &PointSet) -> bool {
    let (n, d) = (x.n(), x.d());
    if n <= d {
        return affine_dimension(x.points()) == n - 1;
    }
    if d == 1 {
        return x.points().iter().map(|p| &p[0]).all_unique();
    }
    if d == 2 {
        // cheap orientation test per triple
        return (0..n).tuple_combinations().all(|(i, j, k)| {
            let a = sub(x.point(j), x.point(i));
            let b = sub(x.point(k), x.point(i));
            &a[0] * &b[1] != &a[1] * &b[0]
        });
    }
    (0..n).combinations(d + 1).all(|idx| {
        affine_dimension(&idx.iter().map(|&i| x.point(i).clone()).collect::<Vec<_>>()) == d
    })
}

/// Normal of the hyperplane through the given `d` points, sign-canonical.
pub fn hyperplane_normal(points: &[&Point], d: usize) -> Option<Direction> {
    if d == 1 {
        return Some(Direction::from_i64(&[1]).unwrap());
    }
    let rows: Vec<Point> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    let v = null_vector(&rows, d)?;
    Some(Direction::from_ints(v).ok()?.sign_canonical())
}

/// One sign-canonical normal per `d`-subset, subsets in lexicographic order.
pub fn hyperplane_normals(x: &PointSet) -> Result<Vec<Direction>> {
    let d = x.d();
    (0..x.n())
        .combinations(d)
        .map(|idx| {
            let pts: Vec<&Point> = idx.iter().map(|&i| x.point(i)).collect();
            hyperplane_normal(&pts, d).ok_or(Error::DegenerateSubset { indices: idx })
        })
        .collect()
}

const GENERIC_ATTEMPTS: usize = 1000;

/// Seeded integer direction with nonzero dot product against every normal.
pub fn generic_direction_avoiding(normals: &[Direction], d: usize, seed: u64) -> Result<Direction> {
    if d == 1 {
        return Direction::from_i64(&[1]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..GENERIC_ATTEMPTS {
        let range = 8i64 << (attempt / 50).min(20);
        let coords: Vec<BigInt> = (0..d)
            .map(|_| BigInt::from(rng.gen_range(-range..=range)))
            .collect();
        let Ok(u) = Direction::from_ints(coords) else {
            continue;
        };
        if normals.iter().all(|mu| !u.dot_dir(mu).is_zero()) {
            return Ok(u);
        }
    }
    Err(Error::ExhaustedCandidates {
        attempts: GENERIC_ATTEMPTS,
    })
}

/// A direction `u` with `u . mu != 0` for every hyperplane normal of `x`.
pub fn pick_generic_direction(x: &PointSet, seed: u64) -> Result<Direction> {
    let normals = hyperplane_normals(x)?;
    generic_direction_avoiding(&normals, x.d(), seed)
}

/// `d-1` columns exactly orthogonal to `u` (orthogonal to `u`, not orthonormal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementBasis {
    u: Direction,
    columns: Vec<Vec<BigInt>>,
}

impl ComplementBasis {
    /// Wraps explicit columns; they must be orthogonal to `u` and independent.
    pub fn from_columns(u: &Direction, columns: Vec<Vec<BigInt>>) -> Result<Self> {
        let d = u.d();
        let ok = columns.len() + 1 == d
            && columns.iter().all(|c| c.len() == d && dot_ii(c, u.coords()).is_zero())
            && rank(&columns.iter().map(|c| to_q_vec(c)).collect::<Vec<_>>()) == d - 1;
        if !ok {
            return Err(Error::InvalidPlan(
                "columns are not an orthogonal complement basis".into(),
            ));
        }
        Ok(Self {
            u: u.clone(),
            columns,
        })
    }

    pub fn direction(&self) -> &Direction {
        &self.u
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    /// Coordinates `B^T x` in the complement.
    pub fn project_point(&self, x: &[Q]) -> Point {
        self.columns.iter().map(|c| dot_iq(c, x)).collect()
    }

    /// The point `p` orthogonal to `u` with `B^T p = x0`.
    pub fn lift(&self, x0: &[Q]) -> Point {
        let d = self.u.d();
        let cols: Vec<Point> = self.columns.iter().map(|c| to_q_vec(c)).collect();
        let gram: Vec<Vec<Q>> = cols
            .iter()
            .map(|a| cols.iter().map(|b| crate::rational::dot_qq(a, b)).collect())
            .collect();
        let coef = solve(gram, x0.to_vec()).expect("complement basis is independent");
        let mut p = vec![Q::zero(); d];
        for (c, a) in cols.iter().zip(&coef) {
            for (pi, ci) in p.iter_mut().zip(c) {
                *pi += ci * a;
            }
        }
        p
    }
}

/// Pivot construction: with `p` the first nonzero index of `u`, the column for
/// `i != p` is `e_i * u_p - e_p * u_i`.
pub fn complement_basis(u: &Direction) -> ComplementBasis {
    let d = u.d();
    let c = u.coords();
    let p = c.iter().position(|x| !x.is_zero()).expect("nonzero direction");
    let columns = (0..d)
        .filter(|&i| i != p)
        .map(|i| {
            let mut col = vec![BigInt::zero(); d];
            col[i] = c[p].clone();
            col[p] = -c[i].clone();
            primitive(col)
        })
        .collect();
    ComplementBasis {
        u: u.clone(),
        columns,
    }
}

pub fn project(x: &PointSet, b: &ComplementBasis) -> PointSet {
    PointSet {
        points: x.points().iter().map(|p| b.project_point(p)).collect(),
        d: b.columns.len(),
    }
}

/// Projection of `x` along `u` using the pivot complement basis.
pub fn project_along(x: &PointSet, u: &Direction) -> PointSet {
    project(x, &complement_basis(u))
}

/// Supporting inequality `normal . x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Direction,
    pub offset: Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullPosition {
    Interior,
    Boundary,
    Outside,
}

/// Convex hull of a point set in `d <= 3`, computed by exhaustive facet search.
///
/// A lower-dimensional hull carries its affine hull as `equalities`
/// (`normal . x = offset`); its facets are relative to that flat.
#[derive(Debug, Clone)]
pub struct ConvexHull {
    d: usize,
    affine_dim: usize,
    equalities: Vec<Facet>,
    facets: Vec<Facet>,
    vertices: Vec<usize>,
}

impl ConvexHull {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn affine_dimension(&self) -> usize {
        self.affine_dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equalities(&self) -> &[Facet] {
        &self.equalities
    }

    /// Indices into the source set, first occurrence of each extreme point.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn constraints(&self) -> impl Iterator<Item = (&Direction, &Q, bool)> {
        self.equalities
            .iter()
            .map(|f| (&f.normal, &f.offset, true))
            .chain(self.facets.iter().map(|f| (&f.normal, &f.offset, false)))
    }
}

pub fn convex_hull(x: &PointSet) -> Result<ConvexHull> {
    let d = x.d();
    if d > 3 {
        return Err(Error::UnsupportedDimension { d });
    }
    let pts = x.points();
    let p0 = &pts[0];
    let diffs: Vec<Point> = pts[1..].iter().map(|p| sub(p, p0)).collect();
    let r = rank(&diffs);
    let eq_normals: Vec<Vec<BigInt>> = null_space(&diffs, d);
    let equalities: Vec<Facet> = eq_normals
        .iter()
        .map(|v| {
            let normal = Direction::from_ints(v.clone()).unwrap();
            let offset = normal.dot(p0);
            Facet { normal, offset }
        })
        .collect();
    let eq_rows: Vec<Point> = eq_normals.iter().map(|v| to_q_vec(v)).collect();

    let mut facets: Vec<Facet> = Vec::new();
    if r >= 1 {
        for idx in (0..x.n()).combinations(r) {
            let mut rows = eq_rows.clone();
            rows.extend(idx[1..].iter().map(|&i| sub(&pts[i], &pts[idx[0]])));
            let Some(v) = null_vector(&rows, d) else {
                continue;
            };
            let normal = Direction::from_ints(v).unwrap();
            let c = normal.dot(&pts[idx[0]]);
            let mut le = true;
            let mut ge = true;
            for p in pts {
                let s = normal.dot(p);
                le &= s <= c;
                ge &= s >= c;
            }
            let facet = if le {
                Facet { normal, offset: c }
            } else if ge {
                Facet {
                    normal: normal.neg(),
                    offset: -c,
                }
            } else {
                continue;
            };
            if !facets.contains(&facet) {
                facets.push(facet);
            }
        }
    }

    let mut vertices = Vec::new();
    let mut seen: Vec<&Point> = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if seen.contains(&p) {
            continue;
        }
        seen.push(p);
        let mut active: Vec<Point> = eq_rows.clone();
        active.extend(
            facets
                .iter()
                .filter(|f| f.normal.dot(p) == f.offset)
                .map(|f| f.normal.as_q()),
        );
        if rank(&active) == d {
            vertices.push(i);
        }
    }
    Ok(ConvexHull {
        d,
        affine_dim: r,
        equalities,
        facets,
        vertices,
    })
}

/// Exact position of `x` relative to the hull. Points of a lower-dimensional
/// hull are never `Interior`.
pub fn hull_contains(h: &ConvexHull, x: &[Q]) -> HullPosition {
    if h.equalities.iter().any(|f| f.normal.dot(x) != f.offset) {
        return HullPosition::Outside;
    }
    let mut on_boundary = h.affine_dim < h.d;
    for f in &h.facets {
        let s = f.normal.dot(x);
        if s > f.offset {
            return HullPosition::Outside;
        }
        on_boundary |= s == f.offset;
    }
    if on_boundary {
        HullPosition::Boundary
    } else {
        HullPosition::Interior
    }
}

/// Boundary points of the hull on the line `base + t * dir`, ordered by `t`.
pub fn line_hull_intersection(h: &ConvexHull, base: &[Q], dir: &Direction) -> Vec<Point> {
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    let tighten_hi = |t: Q, hi: &mut Option<Q>| {
        if hi.as_ref().is_none_or(|h| t < *h) {
            *hi = Some(t);
        }
    };
    let mut lows = Vec::new();
    for (normal, offset, equality) in h.constraints() {
        let a = qi(&dot_ii(normal.coords(), dir.coords()));
        let slack = offset - normal.dot(base);
        if a.is_zero() {
            if slack.is_negative() || (equality && !slack.is_zero()) {
                return Vec::new();
            }
            continue;
        }
        let t = &slack / &a;
        if equality {
            lows.push(t.clone());
            tighten_hi(t, &mut hi);
        } else if a.is_positive() {
            tighten_hi(t, &mut hi);
        } else {
            lows.push(t);
        }
    }
    for t in lows {
        if lo.as_ref().is_none_or(|l| t > *l) {
            lo = Some(t);
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Vec::new();
    };
    if lo > hi {
        return Vec::new();
    }
    let at = |t: &Q| -> Point {
        base.iter()
            .zip(dir.coords())
            .map(|(b, c)| b + qi(c) * t)
            .collect()
    };
    if lo == hi {
        vec![at(&lo)]
    } else {
        vec![at(&lo), at(&hi)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{point, q, q_frac};

    fn square() -> PointSet {
        PointSet::from_i64(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap()
    }

    #[test]
    fn general_position_basics() {
        assert!(is_general_position(
            &PointSet::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
        ));
        assert!(!is_general_position(
            &PointSet::from_i64(&[&[0, 0], &[1, 1], &[2, 2]]).unwrap()
        ));
        assert!(!is_general_position(
            &PointSet::from_i64(&[&[1], &[2], &[1]]).unwrap()
        ));
        assert!(!is_general_position(
            &PointSet::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap()
        ));
        assert!(is_general_position(
            &PointSet::from_i64(&[&[0, 0, 0], &[1, 0, 0]]).unwrap()
        ));
    }

    #[test]
    fn triangle_normals() {
        let x = PointSet::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let normals = hyperplane_normals(&x).unwrap();
        let expect: Vec<Direction> = [[0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|c| Direction::from_i64(c).unwrap())
            .collect();
        assert_eq!(normals, expect);
        let one_d = PointSet::from_i64(&[&[3], &[7]]).unwrap();
        assert_eq!(hyperplane_normals(&one_d).unwrap().len(), 2);
    }

    #[test]
    fn generic_direction_is_deterministic() {
        let x = PointSet::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        let u = pick_generic_direction(&x, 1).unwrap();
        assert_eq!(u, pick_generic_direction(&x, 1).unwrap());
        for mu in hyperplane_normals(&x).unwrap() {
            assert!(!u.dot_dir(&mu).is_zero());
        }
    }

    #[test]
    fn complement_basis_construction() {
        let b = complement_basis(&Direction::from_i64(&[0, 0, 1]).unwrap());
        assert_eq!(
            b.columns(),
            &[
                vec![BigInt::from(1), BigInt::zero(), BigInt::zero()],
                vec![BigInt::zero(), BigInt::from(1), BigInt::zero()]
            ]
        );
        let u = Direction::from_i64(&[1, 2, 3]).unwrap();
        let b = complement_basis(&u);
        for c in b.columns() {
            assert!(dot_ii(c, u.coords()).is_zero());
        }
        let x0 = vec![q_frac(3, 7), q(-2)];
        let p = b.lift(&x0);
        assert_eq!(b.project_point(&p), x0);
        assert!(u.dot(&p).is_zero());
    }

    #[test]
    fn square_hull() {
        let h = convex_hull(&square()).unwrap();
        assert_eq!(h.facets().len(), 4);
        assert_eq!(h.vertices().len(), 4);
        let half = q_frac(1, 2);
        assert_eq!(hull_contains(&h, &[half.clone(), half.clone()]), HullPosition::Interior);
        assert_eq!(hull_contains(&h, &[q(0), half.clone()]), HullPosition::Boundary);
        assert_eq!(hull_contains(&h, &point(&[2, 0])), HullPosition::Outside);
        let cut = line_hull_intersection(
            &h,
            &[half.clone(), half.clone()],
            &Direction::from_i64(&[1, 0]).unwrap(),
        );
        assert_eq!(cut, vec![vec![q(0), half.clone()], vec![q(1), half]]);
        let miss = line_hull_intersection(&h, &point(&[5, 5]), &Direction::from_i64(&[1, -1]).unwrap());
        assert!(miss.is_empty());
        let corner = line_hull_intersection(&h, &point(&[0, 2]), &Direction::from_i64(&[1, -1]).unwrap());
        assert_eq!(corner, vec![point(&[1, 1])]);
    }

    #[test]
    fn interval_and_tetrahedron_hulls() {
        let h = convex_hull(&PointSet::from_i64(&[&[3], &[1], &[7]]).unwrap()).unwrap();
        assert_eq!(h.vertices(), &[1, 2]);
        assert_eq!(hull_contains(&h, &[q(1)]), HullPosition::Boundary);
        assert_eq!(hull_contains(&h, &[q(4)]), HullPosition::Interior);
        let t = PointSet::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let h = convex_hull(&t).unwrap();
        assert_eq!(h.facets().len(), 4);
        assert_eq!(h.vertices().len(), 4);
    }

    #[test]
    fn flat_hull_in_space() {
        let t = PointSet::from_i64(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0]]).unwrap();
        let h = convex_hull(&t).unwrap();
        assert_eq!(h.affine_dimension(), 2);
        assert_eq!(h.facets().len(), 3);
        assert_eq!(hull_contains(&h, &point(&[0, 0, 1])), HullPosition::Outside);
        assert_eq!(hull_contains(&h, &[q_frac(1, 2), q_frac(1, 2), q(0)]), HullPosition::Boundary);
        let hit = line_hull_intersection(&h, &point(&[0, 0, 5]), &Direction::from_i64(&[0, 0, 1]).unwrap());
        assert_eq!(hit, vec![point(&[0, 0, 0])]);
    }
}
