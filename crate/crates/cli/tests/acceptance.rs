//! Acceptance sweep. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use halfspace_cli::dataset::{nested_simplices_d3, random_igp, tetrahedron_d3};
use halfspace_core::attack::{build_attack, empirical_fsbp, run_attack, verify_lower_bound};
use halfspace_core::depth::{angular_median, max_depth, max_depth_region, tukey_depth};
use halfspace_core::fsbp::{breakdown_fraction, enumerate_fragments, breakdown_point, FsbpCertificate, Method};
use halfspace_core::geometry::{complement_basis, convex_hull, hull_contains, project, HullPosition, PointSet};
use halfspace_core::rational::{q, q_frac, rank, sub, Point, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:.2?}, limit {limit:?}"))
}

fn planar_sets() -> Vec<(usize, u64, PointSet)> {
    let mut out = Vec::new();
    for n in 4..=14 {
        for seed in 0..3 {
            out.push((n, seed, random_igp(n, 2, seed).unwrap()));
        }
    }
    out
}

/// Seeded planar sets for the attack sweep, sizes 4 through 10.
fn attack_sets() -> Vec<PointSet> {
    (0..25u64).map(|s| random_igp(4 + (s as usize % 7), 2, 100 + s).unwrap()).collect()
}

fn planar_closed_form() -> Outcome {
    let sets = planar_sets();
    for (n, seed, x) in &sets {
        let start = Instant::now();
        let c = breakdown_point(x, *seed).map_err(|e| e.to_string())?;
        within(start.elapsed(), Duration::from_secs(1), &format!("n={n} seed={seed}"))?;
        let h = n.div_ceil(2);
        ensure(c.epsilon == q_frac(h as i64, (n + h) as i64), || {
            format!("n={n} seed={seed}: epsilon {} != {h}/{}", c.epsilon, n + h)
        })?;
    }
    Ok(format!("{} datasets, n = 4..14", sets.len()))
}

fn tetrahedron() -> Outcome {
    let start = Instant::now();
    let x = tetrahedron_d3();
    let frags = enumerate_fragments(&x, 0).map_err(|e| e.to_string())?;
    let c = breakdown_point(&x, 0).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(10), "tetrahedron")?;
    ensure(frags.iter().all(|f| f.lambda_at_rep.count == 2), || "a fragment has count != 2".into())?;
    ensure(c.epsilon == q_frac(1, 3), || format!("epsilon {}", c.epsilon))?;
    ensure(c.epsilon == c.bound_upper, || format!("upper bound {} not attained", c.bound_upper))?;
    Ok(format!("{} fragments, all count 2; epsilon 1/3", frags.len()))
}

fn nested_simplices() -> Outcome {
    let start = Instant::now();
    let c = breakdown_point(&nested_simplices_d3(), 0).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(60), "nested simplices")?;
    ensure(c.epsilon == q_frac(1, 4), || format!("epsilon {}", c.epsilon))?;
    ensure(c.bound_lower == q_frac(1, 4), || format!("lower bound {}", c.bound_lower))?;
    Ok(format!("epsilon 1/4 = lower bound, {} fragments", c.fragments))
}

fn attack_threshold() -> Outcome {
    let start = Instant::now();
    let mut sets = attack_sets();
    sets.push(tetrahedron_d3());
    let mut checks = 0usize;
    for (i, x) in sets.iter().enumerate() {
        let err = |e: halfspace_core::Error| format!("set {i}: {e}");
        let c = breakdown_point(x, 0).map_err(err)?;
        let k = c.k();
        ensure(k == c.lambda_star_min.count, || format!("set {i}: k != n lambda"))?;
        let found = empirical_fsbp(x, x.n()).map_err(err)?;
        ensure(found == k, || format!("set {i}: empirical {found} != k {k}"))?;
        let plan = build_attack(x, &q(1), 0).map_err(err)?;
        ensure(plan.k == k, || format!("set {i}: plan k {}", plan.k))?;
        let out = run_attack(x, &plan.with_copies(k)).map_err(err)?;
        ensure(out.broke_down, || format!("set {i}: no breakdown at m = k = {k}"))?;
        for j in 1..=20 {
            let at = plan.with_magnitude(x, &plan.magnitude * q(j)).map_err(err)?;
            for m in 0..k {
                let ok = verify_lower_bound(x, m, &at.with_copies(m)).map_err(err)?;
                ensure(ok, || format!("set {i}: lower bound fails at m={m}, magnitude {}", at.magnitude))?;
                checks += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(300), "attack sweep")?;
    Ok(format!("{} datasets, {checks} below-threshold checks", sets.len()))
}

fn expected_singleton(x: &PointSet) -> bool {
    match x.d() {
        2 => x.n() % 2 == 1,
        _ => enumerate_fragments(x, 0).unwrap().iter().any(|f| f.region_dimension == 0),
    }
}

fn sandwich() -> Outcome {
    let mut sets: Vec<PointSet> = planar_sets().into_iter().map(|(_, _, x)| x).collect();
    sets.extend(attack_sets());
    sets.push(tetrahedron_d3());
    sets.push(nested_simplices_d3());
    for (i, x) in sets.iter().enumerate() {
        let c: FsbpCertificate = breakdown_point(x, 0).map_err(|e| e.to_string())?;
        ensure(c.method != Method::RandomizedUpperBound, || format!("set {i}: randomized"))?;
        ensure(c.bound_lower <= c.epsilon && c.epsilon <= c.bound_upper, || {
            format!("set {i}: {} <= {} <= {} fails", c.bound_lower, c.epsilon, c.bound_upper)
        })?;
        ensure(c.singleton_case == expected_singleton(x), || format!("set {i}: wrong singleton branch"))?;
        let (n, d) = (x.n(), x.d());
        ensure(c.bound_lower == breakdown_fraction(n.div_ceil(d), n), || format!("set {i}: lower"))?;
        let up = if c.singleton_case { (n + 3 - d) / 2 } else { (n + 2 - d) / 2 };
        ensure(c.bound_upper == breakdown_fraction(up, n), || format!("set {i}: upper"))?;
    }
    Ok(format!("{} datasets", sets.len()))
}

fn small_points(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Vec<Point> {
    (0..n).map(|_| (0..d).map(|_| q(rng.gen_range(-6..=6))).collect()).collect()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..200 {
        let d = 1 + i % 3;
        let n = rng.gen_range(1..=10);
        let pts = small_points(&mut rng, n, d);
        let a = &pts[rng.gen_range(0..n)];
        let b = &pts[rng.gen_range(0..n)];
        let t = q_frac(rng.gen_range(-9..=9), 7);
        let x: Point = a.iter().zip(b).map(|(p, r)| p + (r - p) * &t).collect();
        let set = PointSet::new(pts.clone()).unwrap();
        let got = tukey_depth(&x, &set).map_err(|e| e.to_string())?.count;
        let want = oracle::depth_oracle(&x, &pts);
        ensure(got == want, || format!("instance {i} (d={d}, n={n}): {got} != {want}"))?;
    }
    Ok("200 instances, d = 1..3".into())
}

struct Affine {
    m: Vec<Vec<Q>>,
    b: Vec<Q>,
}

impl Affine {
    fn random(rng: &mut ChaCha8Rng, d: usize) -> Self {
        loop {
            let m: Vec<Vec<Q>> = (0..d)
                .map(|_| (0..d).map(|_| q_frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect())
                .collect();
            if rank(&m) == d {
                let b = (0..d).map(|_| q_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
                return Self { m, b };
            }
        }
    }

    fn apply(&self, p: &[Q]) -> Point {
        self.m
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| row.iter().zip(p).map(|(a, x)| a * x).sum::<Q>() + bi)
            .collect()
    }

    fn apply_set(&self, x: &PointSet) -> PointSet {
        PointSet::new(x.points().iter().map(|p| self.apply(p)).collect()).unwrap()
    }
}

fn sorted(mut v: Vec<Point>) -> Vec<Point> {
    v.sort();
    v
}

fn affine_invariance() -> Outcome {
    let sets = [random_igp(8, 2, 7).unwrap(), tetrahedron_d3(), nested_simplices_d3()];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (i, x) in sets.iter().enumerate() {
        let err = |e: halfspace_core::Error| format!("set {i}: {e}");
        let region = max_depth_region(x).map_err(err)?;
        let lambda = max_depth(x).map_err(err)?;
        let eps = breakdown_point(x, 0).map_err(err)?.epsilon;
        let queries: Vec<Point> = x.points().iter().cloned().chain([region.centroid()]).collect();
        let depths: Vec<usize> = queries.iter().map(|p| tukey_depth(p, x).unwrap().count).collect();
        for j in 0..20 {
            let f = Affine::random(&mut rng, x.d());
            let y = f.apply_set(x);
            for (p, want) in queries.iter().zip(&depths) {
                let got = tukey_depth(&f.apply(p), &y).map_err(err)?.count;
                ensure(got == *want, || format!("set {i} map {j}: depth {got} != {want}"))?;
            }
            ensure(max_depth(&y).map_err(err)? == lambda, || format!("set {i} map {j}: lambda"))?;
            let moved = sorted(region.vertices.iter().map(|v| f.apply(v)).collect());
            let r = max_depth_region(&y).map_err(err)?;
            ensure(sorted(r.vertices) == moved, || format!("set {i} map {j}: region vertices"))?;
            let e = breakdown_point(&y, 0).map_err(err)?.epsilon;
            ensure(e == eps, || format!("set {i} map {j}: epsilon {e} != {eps}"))?;
        }
    }
    Ok(format!("{} datasets x 20 maps", sets.len()))
}

fn exterior_point(rng: &mut ChaCha8Rng, x: &PointSet) -> Point {
    let hull = convex_hull(x).unwrap();
    loop {
        let y: Point = (0..x.d()).map(|_| q_frac(rng.gen_range(-300..=300), 10)).collect();
        if hull_contains(&hull, &y) == HullPosition::Outside {
            return y;
        }
    }
}

fn angular_median_is_deepest() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..50u64 {
        let d = if i % 2 == 0 { 2 } else { 3 };
        let x = random_igp(5 + (i as usize % 4), d, 200 + i).unwrap();
        let y = exterior_point(&mut rng, &x);
        let w = PointSet::new(x.points().iter().map(|p| sub(p, &y)).collect()).unwrap();
        let err = |e: halfspace_core::Error| format!("instance {i}: {e}");
        let u = angular_median(&w).map_err(err)?;
        let basis = complement_basis(&u);
        let projected = project(&x, &basis);
        let at_y = tukey_depth(&basis.project_point(&y), &projected).map_err(err)?;
        let best = max_depth(&projected).map_err(err)?;
        ensure(at_y == best, || format!("instance {i} (d={d}): depth {at_y} != max {best}"))?;
    }
    within(start.elapsed(), Duration::from_secs(120), "angular median sweep")?;
    Ok("50 exterior points, d = 2 and 3".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("planar closed form", planar_closed_form),
        ("tetrahedron", tetrahedron),
        ("nested simplices", nested_simplices),
        ("attack threshold", attack_threshold),
        ("bounds sandwich", sandwich),
        ("depth oracle equivalence", oracle_equivalence),
        ("affine invariance", affine_invariance),
        ("angular median projection", angular_median_is_deepest),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
