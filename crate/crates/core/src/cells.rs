//! Open cells of a central hyperplane arrangement, represented by
//! lexicographically perturbed directions `a + e1*b + e2*c + ...`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{cross_i, dot_ii, dot_iq, primitive, primitive_from_q, qi, sign_i, Q};

/// Direction `levels[0] + e*levels[1] + e^2*levels[2] + ...` for infinitesimal `e > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct LexDir(pub Vec<Vec<BigInt>>);

impl LexDir {
    /// Sign of the infinitesimally perturbed dot product with `v`.
    pub fn sign(&self, v: &[BigInt]) -> i8 {
        for level in &self.0 {
            let s = sign_i(&dot_ii(level, v));
            if s != 0 {
                return s;
            }
        }
        0
    }

    /// A concrete integer direction realizing `sign` on every vector of `vs`.
    pub fn concretize(&self, vs: &[Vec<BigInt>]) -> Vec<BigInt> {
        let mut levels = self.0.iter().rev();
        let mut w: Vec<Q> = levels.next().expect("nonempty").iter().map(qi).collect();
        for a in levels {
            let mut e: Option<Q> = None;
            for v in vs {
                let av = dot_ii(a, v);
                let wv = dot_iq(v, &w);
                if av.is_zero() || wv.is_zero() {
                    continue;
                }
                let ratio = qi(&av.abs()) / wv.abs();
                if e.as_ref().is_none_or(|cur| ratio < *cur) {
                    e = Some(ratio);
                }
            }
            let e = e.map_or_else(|| Q::from_integer(1.into()), |r| r / Q::from_integer(2.into()));
            w = a.iter().zip(&w).map(|(ai, wi)| qi(ai) + &e * wi).collect();
        }
        primitive_from_q(&w)
    }
}

fn neg(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x).collect()
}

fn canonical(v: &[BigInt]) -> Vec<BigInt> {
    let v = primitive(v.to_vec());
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&v),
        _ => v,
    }
}

/// Distinct lines spanned by the nonzero vectors, in first-seen order.
pub(crate) fn distinct_lines(vs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut seen = HashSet::new();
    vs.iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(|v| canonical(v))
        .filter(|v| seen.insert(v.clone()))
        .collect()
}

fn perp(v: &[BigInt]) -> Vec<BigInt> {
    vec![-v[1].clone(), v[0].clone()]
}

fn unit(d: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); d];
    e[0] = 1.into();
    e
}

/// Perturbed directions hitting every open cell of the arrangement
/// `{u : u.v = 0}` (at least once). With `all_strata`, representatives of the
/// lower-dimensional strata (rays and arcs) are included too.
pub(crate) fn cell_candidates(vs: &[Vec<BigInt>], d: usize, all_strata: bool) -> Vec<LexDir> {
    let lines = distinct_lines(vs);
    let mut out: Vec<LexDir> = Vec::new();
    let mut seen: HashSet<LexDir> = HashSet::new();
    let mut push = |c: LexDir, out: &mut Vec<LexDir>| {
        if seen.insert(c.clone()) {
            out.push(c);
        }
    };
    match d {
        1 => {
            push(LexDir(vec![vec![1.into()]]), &mut out);
            push(LexDir(vec![vec![(-1).into()]]), &mut out);
        }
        2 => {
            if lines.is_empty() {
                push(LexDir(vec![unit(2)]), &mut out);
            }
            for v in &lines {
                for s in [1, -1] {
                    let a = if s > 0 { perp(v) } else { neg(&perp(v)) };
                    if all_strata {
                        push(LexDir(vec![a.clone()]), &mut out);
                    }
                    for t in [1, -1] {
                        let b = if t > 0 { v.clone() } else { neg(v) };
                        push(LexDir(vec![a.clone(), b]), &mut out);
                    }
                }
            }
        }
        3 => {
            let mut any_pair = false;
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    let c = cross_i(&lines[i], &lines[j]);
                    if c.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    any_pair = true;
                    let c = canonical(&c);
                    for k in [&lines[i], &lines[j]] {
                        for s in [1, -1] {
                            let a = if s > 0 { c.clone() } else { neg(&c) };
                            if all_strata {
                                push(LexDir(vec![a.clone()]), &mut out);
                            }
                            let ck = cross_i(&c, k);
                            for t in [1, -1] {
                                let b = if t > 0 { ck.clone() } else { neg(&ck) };
                                if all_strata {
                                    push(LexDir(vec![a.clone(), b.clone()]), &mut out);
                                }
                                for r in [1, -1] {
                                    let w = if r > 0 { k.clone() } else { neg(k) };
                                    push(LexDir(vec![a.clone(), b.clone(), w]), &mut out);
                                }
                            }
                        }
                    }
                }
            }
            if !any_pair {
                if lines.is_empty() {
                    push(LexDir(vec![unit(3)]), &mut out);
                }
                for v in &lines {
                    push(LexDir(vec![v.clone()]), &mut out);
                    push(LexDir(vec![neg(v)]), &mut out);
                    if all_strata {
                        // the great circle v-perp is one stratum; any point on it will do
                        let w = if v[0].is_zero() && v[1].is_zero() {
                            vec![1.into(), 0.into(), 0.into()]
                        } else {
                            vec![-v[1].clone(), v[0].clone(), 0.into()]
                        };
                        push(LexDir(vec![w]), &mut out);
                    }
                }
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn concrete_direction_matches_lex_signs() {
        let vs = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[1, 1, 1]), iv(&[2, -1, 3])];
        for cand in cell_candidates(&vs, 3, true) {
            let u = cand.concretize(&vs);
            for v in &vs {
                let s = cand.sign(v);
                if s != 0 {
                    assert_eq!(sign_i(&dot_ii(&u, v)), s);
                }
            }
        }
    }

    #[test]
    fn planar_cells_cover_all_sign_patterns() {
        // three lines through the origin cut the circle into six arcs
        let vs = vec![iv(&[1, 0]), iv(&[0, 1]), iv(&[1, 1])];
        let patterns: HashSet<Vec<i8>> = cell_candidates(&vs, 2, false)
            .iter()
            .map(|c| vs.iter().map(|v| c.sign(v)).collect())
            .collect();
        assert_eq!(patterns.len(), 6);
    }

    #[test]
    fn spatial_cells_cover_all_sign_patterns() {
        // four generic planes through the origin: 14 cells
        let vs = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1]), iv(&[1, 1, 1])];
        let patterns: HashSet<Vec<i8>> = cell_candidates(&vs, 3, false)
            .iter()
            .map(|c| vs.iter().map(|v| c.sign(v)).collect())
            .filter(|p: &Vec<i8>| !p.contains(&0))
            .collect();
        assert_eq!(patterns.len(), 14);
    }
}
