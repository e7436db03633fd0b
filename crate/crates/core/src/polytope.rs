//! Exact bounded polytopes in `d <= 3` given by vertices and the halfspaces
//! `a . x >= c` that cut them, plus centroid computation.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geometry::{convex_hull, ConvexHull, PointSet};
use num_integer::Integer;

use crate::rational::{add, dot_iq, q, qi, rank, scale, sub, to_q_vec, Point, Q};

#[derive(Debug, Clone)]
pub(crate) struct Polytope {
    d: usize,
    verts: Vec<Point>,
    planes: Vec<(Vec<BigInt>, Q)>,
    active: Vec<Vec<usize>>,
}

impl Polytope {
    /// Axis-aligned box around the points, widened by one unit on each side.
    pub fn bounding_box(points: &[Point], d: usize) -> Self {
        let lo: Vec<Q> = (0..d)
            .map(|i| points.iter().map(|p| p[i].clone()).min().unwrap() - q(1))
            .collect();
        let hi: Vec<Q> = (0..d)
            .map(|i| points.iter().map(|p| p[i].clone()).max().unwrap() + q(1))
            .collect();
        let mut planes = Vec::new();
        for i in 0..d {
            let mut e = vec![BigInt::zero(); d];
            e[i] = 1.into();
            planes.push((e.clone(), lo[i].clone()));
            planes.push((e.iter().map(|x| -x).collect(), -hi[i].clone()));
        }
        let verts: Vec<Point> = (0..1usize << d)
            .map(|mask| {
                (0..d)
                    .map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() })
                    .collect()
            })
            .collect();
        Self::with_planes(d, verts, planes)
    }

    pub fn from_hull(h: &ConvexHull, points: &[Point]) -> Self {
        let mut planes = Vec::new();
        for f in h.equalities() {
            planes.push((f.normal.coords().to_vec(), f.offset.clone()));
            planes.push((f.normal.neg().coords().to_vec(), -f.offset.clone()));
        }
        for f in h.facets() {
            planes.push((f.normal.neg().coords().to_vec(), -f.offset.clone()));
        }
        let verts = h.vertices().iter().map(|&i| points[i].clone()).collect();
        Self::with_planes(h.d(), verts, planes)
    }

    fn with_planes(d: usize, verts: Vec<Point>, planes: Vec<(Vec<BigInt>, Q)>) -> Self {
        let active = verts
            .iter()
            .map(|v| {
                (0..planes.len())
                    .filter(|&j| dot_iq(&planes[j].0, v) == planes[j].1)
                    .collect()
            })
            .collect();
        Self {
            d,
            verts,
            planes,
            active,
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Intersects with `a . x >= c`.
    pub fn clip(&mut self, a: &[BigInt], c: &Q) {
        if self.verts.is_empty() {
            return;
        }
        let vals: Vec<Q> = self.verts.iter().map(|v| dot_iq(a, v) - c).collect();
        if vals.iter().all(|s| !s.is_negative()) {
            return;
        }
        let pid = self.planes.len();
        self.planes.push((a.to_vec(), c.clone()));
        let mut verts = Vec::new();
        let mut active = Vec::new();
        for (i, s) in vals.iter().enumerate() {
            if !s.is_negative() {
                let mut act = self.active[i].clone();
                if s.is_zero() {
                    act.push(pid);
                }
                verts.push(self.verts[i].clone());
                active.push(act);
            }
        }
        for i in 0..vals.len() {
            if !vals[i].is_positive() {
                continue;
            }
            for j in 0..vals.len() {
                if !vals[j].is_negative() {
                    continue;
                }
                let shared: Vec<usize> = self.active[i]
                    .iter()
                    .filter(|p| self.active[j].contains(p))
                    .copied()
                    .collect();
                if shared.len() + 1 < self.d {
                    continue;
                }
                let rows: Vec<Point> = shared.iter().map(|&p| to_q_vec(&self.planes[p].0)).collect();
                if rank(&rows) + 1 < self.d {
                    continue;
                }
                let t = &vals[i] / (&vals[i] - &vals[j]);
                let p = add(&self.verts[i], &scale(&sub(&self.verts[j], &self.verts[i]), &t));
                if verts.contains(&p) {
                    continue;
                }
                let act = (0..self.planes.len())
                    .filter(|&k| dot_iq(&self.planes[k].0, &p) == self.planes[k].1)
                    .collect();
                verts.push(p);
                active.push(act);
            }
        }
        self.verts = verts;
        self.active = active;
    }
}

/// Convex polygon (possibly a segment or a point) as a counterclockwise ring
/// of homogeneous integer points `(x, y) / w` with `w > 0`.
#[derive(Debug, Clone)]
pub(crate) struct Ring {
    verts: Vec<([BigInt; 2], BigInt)>,
}

fn homogeneous(p: &[Q]) -> ([BigInt; 2], BigInt) {
    let w = p[0].denom().lcm(p[1].denom());
    let x = [(&p[0] * qi(&w)).to_integer(), (&p[1] * qi(&w)).to_integer()];
    (x, w)
}

impl Ring {
    pub fn new(points: &[Point]) -> Self {
        let chart: Vec<(Q, Q)> = points.iter().map(|p| (p[0].clone(), p[1].clone())).collect();
        let verts = convex_order_2d(&chart).into_iter().map(|i| homogeneous(&points[i])).collect();
        Self { verts }
    }

    /// Integer points' bounding box widened by one unit on each side.
    pub fn bounding_box(points: &[Vec<BigInt>]) -> Self {
        let lo: Vec<BigInt> = (0..2).map(|i| points.iter().map(|p| &p[i]).min().unwrap() - 1).collect();
        let hi: Vec<BigInt> = (0..2).map(|i| points.iter().map(|p| &p[i]).max().unwrap() + 1).collect();
        let corner = |x: &BigInt, y: &BigInt| ([x.clone(), y.clone()], BigInt::one());
        Self {
            verts: vec![corner(&lo[0], &lo[1]), corner(&hi[0], &lo[1]), corner(&hi[0], &hi[1]), corner(&lo[0], &hi[1])],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> Vec<Point> {
        self.verts
            .iter()
            .map(|(x, w)| x.iter().map(|c| Q::new(c.clone(), w.clone())).collect())
            .collect()
    }

    /// Intersects with `a . x >= c`.
    pub fn clip(&mut self, a: &[BigInt], c: &BigInt) {
        let vals: Vec<BigInt> = self
            .verts
            .iter()
            .map(|(x, w)| &a[0] * &x[0] + &a[1] * &x[1] - c * w)
            .collect();
        if vals.iter().all(|s| !s.is_negative()) {
            return;
        }
        let n = self.verts.len();
        let mut out: Vec<([BigInt; 2], BigInt)> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            if !vals[i].is_negative() {
                out.push(self.verts[i].clone());
            }
            if (vals[i].is_positive() && vals[j].is_negative()) || (vals[i].is_negative() && vals[j].is_positive()) {
                let (xi, wi) = &self.verts[i];
                let (xj, wj) = &self.verts[j];
                let (si, sj) = (&vals[i], &vals[j]);
                let mut x = [si * &xj[0] - sj * &xi[0], si * &xj[1] - sj * &xi[1]];
                let mut w = si * wj - sj * wi;
                if w.is_negative() {
                    x = [-&x[0], -&x[1]];
                    w = -w;
                }
                let g = x[0].gcd(&x[1]).gcd(&w);
                out.push(([&x[0] / &g, &x[1] / &g], w / g));
            }
        }
        out.dedup();
        while out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        self.verts = out;
    }
}

/// Indices of the extreme points of a planar point set in counterclockwise
/// order starting at the lexicographically smallest; collinear points dropped.
pub(crate) fn convex_order_2d(pts: &[(Q, Q)]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| -> Q {
        (&pts[a].0 - &pts[o].0) * (&pts[b].1 - &pts[o].1)
            - (&pts[a].1 - &pts[o].1) * (&pts[b].0 - &pts[o].0)
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && !cross(lower[lower.len() - 2], lower[lower.len() - 1], i).is_positive() {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && !cross(upper[upper.len() - 2], upper[upper.len() - 1], i).is_positive() {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Two coordinate indices on which the flat spanned by `pts` projects injectively.
fn planar_chart(pts: &[Point]) -> (usize, usize) {
    let d = pts[0].len();
    let diffs: Vec<Point> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
    (0..d)
        .tuple_combinations()
        .find(|&(i, j)| {
            let rows: Vec<Point> = diffs.iter().map(|v| vec![v[i].clone(), v[j].clone()]).collect();
            rank(&rows) == 2
        })
        .expect("two-dimensional flat")
}

/// Vertices of a two-dimensional convex polygon (in any `d`) in boundary order.
pub(crate) fn polygon_order(pts: &[Point]) -> Vec<usize> {
    let (i, j) = planar_chart(pts);
    let chart: Vec<(Q, Q)> = pts.iter().map(|p| (p[i].clone(), p[j].clone())).collect();
    convex_order_2d(&chart)
}

fn mean(pts: &[&Point]) -> Point {
    let mut acc = pts[0].clone();
    for p in &pts[1..] {
        acc = add(&acc, p);
    }
    scale(&acc, &(q(1) / q(pts.len() as i64)))
}

fn det3(a: &Point, b: &Point, c: &Point) -> Q {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Centroid of the convex hull of `pts` (uniform measure on its affine hull).
pub(crate) fn centroid(pts: &[Point]) -> Point {
    let dim = crate::geometry::affine_dimension(pts);
    match dim {
        0 => pts[0].clone(),
        1 => {
            let mut sorted: Vec<&Point> = pts.iter().collect();
            let dir = pts.iter().map(|p| sub(p, &pts[0])).find(|v| v.iter().any(|x| !x.is_zero())).unwrap();
            sorted.sort_by_key(|p| crate::rational::dot_qq(p, &dir));
            mean(&[sorted[0], sorted[sorted.len() - 1]])
        }
        2 => {
            let order = polygon_order(pts);
            let (i, j) = planar_chart(pts);
            let v0 = &pts[order[0]];
            let mut total = Q::zero();
            let mut acc = vec![Q::zero(); v0.len()];
            for w in order[1..].windows(2) {
                let (a, b) = (&pts[w[0]], &pts[w[1]]);
                let area = (&a[i] - &v0[i]) * (&b[j] - &v0[j]) - (&a[j] - &v0[j]) * (&b[i] - &v0[i]);
                acc = add(&acc, &scale(&mean(&[v0, a, b]), &area));
                total += area;
            }
            scale(&acc, &(q(1) / total))
        }
        _ => {
            let set = PointSet::new(pts.to_vec()).expect("nonempty");
            let hull = convex_hull(&set).expect("three-dimensional hull");
            let apex = &pts[hull.vertices()[0]];
            let mut total = Q::zero();
            let mut acc = vec![Q::zero(); 3];
            for f in hull.facets() {
                if f.normal.dot(apex) == f.offset {
                    continue;
                }
                let face: Vec<Point> = hull
                    .vertices()
                    .iter()
                    .map(|&k| pts[k].clone())
                    .filter(|p| f.normal.dot(p) == f.offset)
                    .collect();
                let order = polygon_order(&face);
                let f0 = &face[order[0]];
                for w in order[1..].windows(2) {
                    let (a, b) = (&face[w[0]], &face[w[1]]);
                    let vol = det3(&sub(f0, apex), &sub(a, apex), &sub(b, apex)).abs();
                    acc = add(&acc, &scale(&mean(&[apex, f0, a, b]), &vol));
                    total += vol;
                }
            }
            scale(&acc, &(q(1) / total))
        }
    }
}
