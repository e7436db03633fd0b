//! Independent depth oracles. They share nothing with the library except the
//! rational type, and use a different reduction: every open halfspace is
//! rotated onto a boundary through `x` and one or two sample points.

#![allow(dead_code)]

use halfspace_core::rational::Q;
use num_traits::{Signed, Zero};

fn diff(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross2(a: &[Q], b: &[Q]) -> Q {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn cross3(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Minimum over open half-planes through the origin of the number of vectors
/// strictly inside, for nonzero planar vectors.
fn open_count_2d(vs: &[Vec<Q>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let mut best = usize::MAX;
    for v in vs {
        let (mut left, mut right, mut fwd, mut back) = (0, 0, 0, 0);
        for w in vs {
            let c = cross2(v, w);
            if c.is_positive() {
                left += 1;
            } else if c.is_negative() {
                right += 1;
            } else if dot(v, w).is_positive() {
                fwd += 1;
            } else {
                back += 1;
            }
        }
        let tilt = fwd.min(back);
        best = best.min(left + tilt).min(right + tilt);
    }
    best
}

/// Halfspace depth count of `x` in `pts` (d = 1, 2 or 3).
pub fn depth_oracle(x: &[Q], pts: &[Vec<Q>]) -> usize {
    let d = x.len();
    let mut equal = 0;
    let mut vs = Vec::new();
    for p in pts {
        let v = diff(p, x);
        if v.iter().all(|c| c.is_zero()) {
            equal += 1;
        } else {
            vs.push(v);
        }
    }
    let rest = match d {
        1 => {
            let neg = vs.iter().filter(|v| v[0].is_negative()).count();
            neg.min(vs.len() - neg)
        }
        2 => open_count_2d(&vs),
        3 => {
            let mut best: Option<usize> = None;
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    let c = cross3(&vs[i], &vs[j]);
                    if c.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    // coordinates inside the plane spanned by v_i, v_j
                    let (a, b) = (&vs[i], &vs[j]);
                    let (aa, ab, bb) = (dot(a, a), dot(a, b), dot(b, b));
                    let det = &aa * &bb - &ab * &ab;
                    let (mut pos, mut neg, mut inplane) = (0, 0, Vec::new());
                    for w in &vs {
                        let s = dot(&c, w);
                        if s.is_positive() {
                            pos += 1;
                        } else if s.is_negative() {
                            neg += 1;
                        } else {
                            let (wa, wb) = (dot(w, a), dot(w, b));
                            let s1 = (&bb * &wa - &ab * &wb) / &det;
                            let s2 = (&aa * &wb - &ab * &wa) / &det;
                            inplane.push(vec![s1, s2]);
                        }
                    }
                    let k = pos.min(neg) + open_count_2d(&inplane);
                    best = Some(best.map_or(k, |b: usize| b.min(k)));
                }
            }
            best.unwrap_or_else(|| {
                // all residuals on one line
                let Some(v0) = vs.first() else { return 0 };
                let pos = vs.iter().filter(|w| dot(v0, w).is_positive()).count();
                pos.min(vs.len() - pos)
            })
        }
        _ => panic!("oracle supports d <= 3"),
    };
    equal + rest
}
