//! Finite-sample breakdown point of the halfspace median through the smallest
//! deepest-depth count over one-dimensional projections-out.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::depth::{max_depth, DepthValue, RegionBuilder};
use crate::error::{Error, Result};
use crate::geometry::{
    generic_direction_avoiding, hyperplane_normals, is_general_position, project_along, Direction,
    PointSet,
};
use crate::rational::{cross_i, dot_ii, sign_i, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedFormD2,
    ArrangementD3,
    RandomizedUpperBound,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedFormD2 => "ClosedFormD2",
            Method::ArrangementD3 => "ArrangementD3",
            Method::RandomizedUpperBound => "RandomizedUpperBound",
        })
    }
}

/// A direction strictly inside one cell of the great-circle arrangement
/// `{u : mu_j . u = 0}`, with the deepest depth of the projection along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereFragmentSample {
    pub representative: Direction,
    /// Indices (into the hyperplane normals) of the circles whose crossing the
    /// representative was perturbed from; empty for the global generic sample.
    pub defining_normals: Vec<usize>,
    pub lambda_at_rep: DepthValue,
    /// Affine dimension of the deepest region of the projection.
    pub region_dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinProjected {
    pub u0: Direction,
    pub lambda: DepthValue,
    pub method: Method,
    pub singleton_seen: bool,
    /// Arcs (plane) or cells (space) of the direction sphere examined; 0 for the randomized search.
    pub fragments: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakdownBounds {
    pub lower: Q,
    pub upper: Q,
    pub singleton_case: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsbpCertificate {
    pub n: usize,
    pub d: usize,
    pub u0: Direction,
    pub lambda_star_min: DepthValue,
    pub epsilon: Q,
    pub method: Method,
    pub bound_lower: Q,
    pub bound_upper: Q,
    pub singleton_case: bool,
    pub fragments: usize,
}

impl FsbpCertificate {
    pub fn k(&self) -> usize {
        self.lambda_star_min.count
    }
}

/// `k / (n + k)`.
pub fn breakdown_fraction(k: usize, n: usize) -> Q {
    Q::new(BigInt::from(k), BigInt::from(n + k))
}

fn require_sample(set: &PointSet) -> Result<()> {
    let (n, d) = (set.n(), set.d());
    if d < 2 {
        return Err(Error::UnsupportedDimension { d });
    }
    if n < d + 1 {
        return Err(Error::SampleTooSmall { n, needed: d + 1 });
    }
    if !is_general_position(set) {
        return Err(Error::NotInGeneralPosition);
    }
    Ok(())
}

/// Deepest depth of the sample projected onto the complement of `u`.
pub fn lambda_star_projected(set: &PointSet, u: &Direction) -> Result<DepthValue> {
    if set.d() < 2 || set.d() > 4 {
        return Err(Error::UnsupportedDimension { d: set.d() });
    }
    if u.d() != set.d() {
        return Err(Error::DimensionMismatch {
            expected: set.d(),
            got: u.d(),
        });
    }
    max_depth(&project_along(set, u))
}

fn lambda_and_dimension(set: &PointSet, u: &Direction) -> Result<(DepthValue, usize)> {
    let projected = project_along(set, u);
    let (k, dim) = RegionBuilder::new(&projected)?.max_level_dimension();
    Ok((DepthValue::new(k, set.n()), dim))
}

/// Sign pattern against the normals, canonical under `u -> -u`.
fn fragment_key(u: &Direction, normals: &[Direction]) -> Vec<i8> {
    canonical_key(normals.iter().map(|m| sign_i(&u.dot_dir(m))).collect())
}

fn canonical_key(mut s: Vec<i8>) -> Vec<i8> {
    if s.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        s.iter_mut().for_each(|x| *x = -*x);
    }
    s
}

/// Directions `c + t (a s w_j + b s' w_k)` next to the crossing `c = mu_j x mu_k`,
/// where `w_j, w_k` are dual to `mu_j, mu_k` on the plane orthogonal to `c`.
/// Each comes with its fragment key.
fn quadrant_reps(normals: &[Direction], j: usize, k: usize) -> Vec<(Direction, Vec<i8>)> {
    let (mj, mk) = (normals[j].coords(), normals[k].coords());
    let c = cross_i(mj, mk);
    if c.iter().all(|x| x.is_zero()) {
        return Vec::new();
    }
    let wj = cross_i(mk, &c);
    let wk = cross_i(&c, mj);
    let dots = |v: &[BigInt]| -> Vec<BigInt> { normals.iter().map(|m| dot_ii(v, m.coords())).collect() };
    let (cm, jm, km) = (dots(&c), dots(&wj), dots(&wk));
    let mut out = Vec::new();
    for (s, s2) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        for (a, b) in [(1i64, 1i64), (1, 2), (2, 1), (1, 3), (3, 1)] {
            // t = num / (2 den), half the smallest |c.m| / (a |w_j.m| + b |w_k.m| + 1)
            let mut best: Option<(BigInt, BigInt)> = None;
            for l in 0..normals.len() {
                if cm[l].is_zero() {
                    continue;
                }
                let num = cm[l].abs();
                let den = jm[l].abs() * a + km[l].abs() * b + 1;
                if best.as_ref().is_none_or(|(bn, bd)| &num * bd < bn * &den) {
                    best = Some((num, den));
                }
            }
            let (num, den) = best.unwrap_or_else(|| (BigInt::one(), BigInt::one()));
            let two_den = den * 2;
            let key: Vec<i8> = (0..normals.len())
                .map(|l| sign_i(&(&two_den * &cm[l] + &num * (&jm[l] * (s * a) + &km[l] * (s2 * b)))))
                .collect();
            if key.contains(&0) {
                continue;
            }
            let u: Vec<BigInt> = (0..3)
                .map(|i| &two_den * &c[i] + &num * (&wj[i] * (s * a) + &wk[i] * (s2 * b)))
                .collect();
            out.push((Direction::from_ints(u).expect("nonzero"), canonical_key(key)));
            break;
        }
    }
    out
}

/// One interior sample per fragment of the sphere cut by the hyperplane-normal
/// circles (up to the antipodal map), for a sample in three dimensions.
pub fn enumerate_fragments(set: &PointSet, seed: u64) -> Result<Vec<SphereFragmentSample>> {
    require_sample(set)?;
    if set.d() != 3 {
        return Err(Error::UnsupportedDimension { d: set.d() });
    }
    let normals = hyperplane_normals(set)?;
    let mut seen: HashSet<Vec<i8>> = HashSet::new();
    let mut reps: Vec<(Direction, Vec<usize>)> = Vec::new();
    let generic = generic_direction_avoiding(&normals, 3, seed)?;
    seen.insert(fragment_key(&generic, &normals));
    reps.push((generic, Vec::new()));
    for (j, k) in (0..normals.len()).tuple_combinations() {
        for (u, key) in quadrant_reps(&normals, j, k) {
            if seen.insert(key) {
                reps.push((u, vec![j, k]));
            }
        }
    }
    reps.into_iter()
        .map(|(u, def)| {
            let (lambda, dim) = lambda_and_dimension(set, &u)?;
            Ok(SphereFragmentSample {
                representative: u,
                defining_normals: def,
                lambda_at_rep: lambda,
                region_dimension: dim,
            })
        })
        .collect()
}

fn pick_min(samples: &[SphereFragmentSample]) -> &SphereFragmentSample {
    samples
        .iter()
        .min_by(|a, b| {
            a.lambda_at_rep
                .count
                .cmp(&b.lambda_at_rep.count)
                .then_with(|| a.representative.sign_canonical().cmp(&b.representative.sign_canonical()))
        })
        .expect("at least one fragment")
}

/// Smallest deepest-depth count over projections along generic directions.
/// Exact for `d <= 3`; a seeded search (upper bound) for `d = 4`.
pub fn min_projected_lambda(set: &PointSet, seed: u64) -> Result<MinProjected> {
    require_sample(set)?;
    let n = set.n();
    match set.d() {
        2 => {
            let u0 = crate::geometry::pick_generic_direction(set, seed)?;
            Ok(MinProjected {
                u0,
                lambda: DepthValue::new(n.div_ceil(2), n),
                method: Method::ClosedFormD2,
                singleton_seen: n % 2 == 1,
                fragments: n * (n - 1),
            })
        }
        3 => {
            let samples = enumerate_fragments(set, seed)?;
            let best = pick_min(&samples);
            Ok(MinProjected {
                u0: best.representative.sign_canonical(),
                lambda: best.lambda_at_rep,
                method: Method::ArrangementD3,
                singleton_seen: samples.iter().any(|s| s.region_dimension == 0),
                fragments: samples.len(),
            })
        }
        4 => min_projected_lambda_randomized(set, 64, seed),
        d => Err(Error::UnsupportedDimension { d }),
    }
}

/// Seeded random generic directions plus perturbed coordinate pairs
/// `e_i +- e_j`; the smallest value found is an upper bound on the minimum.
pub fn min_projected_lambda_randomized(set: &PointSet, samples: usize, seed: u64) -> Result<MinProjected> {
    require_sample(set)?;
    let d = set.d();
    if !(3..=4).contains(&d) {
        return Err(Error::UnsupportedDimension { d });
    }
    let normals = hyperplane_normals(set)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cands: Vec<Direction> = Vec::new();
    for _ in 0..samples {
        cands.push(generic_direction_avoiding(&normals, d, rng.gen())?);
    }
    for (i, j) in (0..d).tuple_combinations() {
        for s in [1i64, -1] {
            for _ in 0..8 {
                let mut c: Vec<BigInt> = (0..d).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
                c[i] += 1000;
                c[j] += 1000 * s;
                let u = Direction::from_ints(c)?;
                if normals.iter().all(|m| !u.dot_dir(m).is_zero()) {
                    cands.push(u);
                    break;
                }
            }
        }
    }
    let mut best: Option<SphereFragmentSample> = None;
    let mut singleton = false;
    for u in cands {
        let (lambda, dim) = lambda_and_dimension(set, &u)?;
        singleton |= dim == 0;
        let s = SphereFragmentSample {
            representative: u,
            defining_normals: Vec::new(),
            lambda_at_rep: lambda,
            region_dimension: dim,
        };
        best = Some(match best {
            Some(b) => pick_min(&[b, s]).clone(),
            None => s,
        });
    }
    let best = best.expect("at least one direction");
    Ok(MinProjected {
        u0: best.representative.sign_canonical(),
        lambda: best.lambda_at_rep,
        method: Method::RandomizedUpperBound,
        singleton_seen: singleton,
        fragments: 0,
    })
}

fn bounds_from(n: usize, d: usize, singleton: bool) -> BreakdownBounds {
    let low = n.div_ceil(d);
    let up = if singleton { (n + 3 - d) / 2 } else { (n + 2 - d) / 2 };
    BreakdownBounds {
        lower: breakdown_fraction(low, n),
        upper: breakdown_fraction(up, n),
        singleton_case: singleton,
    }
}

/// Lower and upper bounds on the breakdown point from `n` and `d`, with the
/// upper bound chosen by whether some generic projection has a single deepest point.
pub fn breakdown_bounds(set: &PointSet, seed: u64) -> Result<BreakdownBounds> {
    let m = min_projected_lambda(set, seed)?;
    Ok(bounds_from(set.n(), set.d(), m.singleton_seen))
}

/// Breakdown point `k / (n + k)` with `k` the smallest projected deepest count.
pub fn breakdown_point(set: &PointSet, seed: u64) -> Result<FsbpCertificate> {
    let m = min_projected_lambda(set, seed)?;
    let (n, d) = (set.n(), set.d());
    let bounds = bounds_from(n, d, m.singleton_seen);
    Ok(FsbpCertificate {
        n,
        d,
        epsilon: breakdown_fraction(m.lambda.count, n),
        u0: m.u0,
        lambda_star_min: m.lambda,
        method: m.method,
        bound_lower: bounds.lower,
        bound_upper: bounds.upper,
        singleton_case: bounds.singleton_case,
        fragments: m.fragments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn tetrahedron() -> PointSet {
        PointSet::from_i64(&[&[1, 1, 1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]).unwrap()
    }

    #[test]
    fn planar_closed_form() {
        let x = PointSet::from_i64(&[&[0, 0], &[5, 1], &[2, 7], &[9, 4], &[3, 3]]).unwrap();
        let c = breakdown_point(&x, 1).unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(c.epsilon, q_frac(3, 8));
        assert_eq!(c.method, Method::ClosedFormD2);
        assert!(c.bound_lower <= c.epsilon && c.epsilon <= c.bound_upper);
    }

    #[test]
    fn tetrahedron_every_fragment_gives_two() {
        let t = tetrahedron();
        let frags = enumerate_fragments(&t, 1).unwrap();
        assert!(frags.iter().all(|f| f.lambda_at_rep.count == 2));
        let c = breakdown_point(&t, 1).unwrap();
        assert_eq!(c.epsilon, q_frac(1, 3));
        assert_eq!(c.bound_lower, q_frac(1, 3));
        assert_eq!(c.bound_upper, q_frac(1, 3));
        assert!(c.singleton_case);
    }

    #[test]
    fn fragment_reps_are_generic() {
        let t = tetrahedron();
        let normals = hyperplane_normals(&t).unwrap();
        for f in enumerate_fragments(&t, 3).unwrap() {
            assert!(normals.iter().all(|m| !f.representative.dot_dir(m).is_zero()));
        }
    }

    #[test]
    fn bounds_formula() {
        let b = bounds_from(4, 3, true);
        assert_eq!(b.lower, q_frac(1, 3));
        assert_eq!(b.upper, q_frac(1, 3));
        let b = bounds_from(6, 3, false);
        assert_eq!(b.lower, q_frac(1, 4));
        assert_eq!(b.upper, q_frac(2, 8));
        for n in 3usize..20 {
            let c = n.div_ceil(2);
            let expect = breakdown_fraction(c, n);
            assert_eq!(bounds_from(n, 2, n % 2 == 1).upper, expect);
        }
    }
}
