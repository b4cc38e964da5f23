//! Lattice-point enumeration inside the dual cone.
//!
//! A covector `w` lies in the dual cone iff `<w, p> >= 0` at every point `p`
//! of the top-level family. Both searches below enumerate the covectors with
//! `0 <= <w, p> <= u_p` for all `p`. The enumeration box comes from Cramer's
//! rule: for `d` affinely spanning points with matrix `P`, `w = P^{-1} c`
//! where `c` ranges over the box `[0, u]`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use super::Outcome;
use crate::dual_cone::{dual_generators, elimination_plan_from, Covector};
use crate::error::{Error, Result};
use crate::linalg::{for_each_combination, inverse_rational, IntMatrix};
use crate::params::FreeParamMatrix;
use crate::polytope::vertex_family;

/// Largest enumeration box (in lattice points) any search may visit.
pub const SEARCH_LIMIT: u128 = 10_000_000;

/// How many nonsingular point subsets bound the search box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundStrategy {
    /// Only the `k`-th nonsingular subset, in combination order.
    Subset(usize),
    /// The intersection of the boxes of the first `n` nonsingular subsets.
    Intersect(usize),
}

impl Default for BoundStrategy {
    fn default() -> Self {
        BoundStrategy::Intersect(64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbertOutcome {
    /// The Hilbert basis, sorted.
    Basis(Vec<Covector>),
    TooLarge {
        volume: u128,
    },
}

type Frame = (Vec<usize>, Vec<Vec<BigRational>>);

struct Search {
    d: usize,
    points: Vec<Vec<i128>>,
    frames: Vec<Frame>,
}

enum Region {
    Points(Vec<Vec<i64>>),
    TooLarge(u128),
}

impl Search {
    fn new(m: &FreeParamMatrix, strategy: BoundStrategy) -> Result<Option<Self>> {
        let d = m.d();
        let distinct = vertex_family(m, d).distinct_points();
        let Some(points) = distinct
            .iter()
            .map(|p| {
                p.iter()
                    .map(ToPrimitive::to_i128)
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()
        else {
            return Ok(None);
        };
        let (skip, take) = match strategy {
            BoundStrategy::Subset(k) => (k, 1),
            BoundStrategy::Intersect(n) => (0, n.max(1)),
        };
        let mut frames = Vec::new();
        let mut seen = 0;
        for_each_combination(distinct.len(), d, |idx| {
            let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| distinct[i].clone()).collect();
            let p = IntMatrix::from_rows(&rows).expect("points share a length");
            if let Some(inv) = inverse_rational(&p) {
                if seen >= skip {
                    frames.push((idx.to_vec(), inv));
                }
                seen += 1;
            }
            frames.len() >= take
        });
        if frames.is_empty() {
            return Err(Error::UnboundedSearch);
        }
        Ok(Some(Self { d, points, frames }))
    }

    fn pairings(&self, w: &[BigInt]) -> Option<Vec<i128>> {
        let w: Vec<i128> = w.iter().map(ToPrimitive::to_i128).collect::<Option<_>>()?;
        self.points.iter().map(|p| checked_dot(p, &w)).collect()
    }

    /// Covectors `w` with `0 <= <w, p_i> <= upper[i]` for every point.
    fn region(&self, upper: &[i128]) -> Region {
        let mut lo = vec![i128::MIN; self.d];
        let mut hi = vec![i128::MAX; self.d];
        for (subset, inv) in &self.frames {
            for j in 0..self.d {
                let mut low = BigRational::zero();
                let mut high = BigRational::zero();
                for (col, &i) in subset.iter().enumerate() {
                    let t = &inv[j][col] * BigRational::from_integer(upper[i].into());
                    if t.is_negative() {
                        low += t;
                    } else {
                        high += t;
                    }
                }
                let low = low.ceil().to_integer().to_i128().unwrap_or(i128::MIN);
                let high = high.floor().to_integer().to_i128().unwrap_or(i128::MAX);
                lo[j] = lo[j].max(low);
                hi[j] = hi[j].min(high);
            }
        }
        let mut volume: u128 = 1;
        for j in 0..self.d {
            if hi[j] < lo[j] {
                return Region::Points(Vec::new());
            }
            let width = (hi[j] - lo[j]) as u128 + 1;
            volume = volume.saturating_mul(width);
        }
        if volume > SEARCH_LIMIT || lo.iter().chain(&hi).any(|x| i64::try_from(*x).is_err()) {
            return Region::TooLarge(volume);
        }
        let lo: Vec<i64> = lo.iter().map(|&x| x as i64).collect();
        let hi: Vec<i64> = hi.iter().map(|&x| x as i64).collect();
        let mut out = Vec::new();
        let mut w = lo.clone();
        loop {
            let wide: Vec<i128> = w.iter().map(|&x| x as i128).collect();
            let inside = self
                .points
                .iter()
                .zip(upper)
                .all(|(p, &u)| checked_dot(p, &wide).is_some_and(|s| (0..=u).contains(&s)));
            if inside {
                out.push(w.clone());
            }
            let mut j = 0;
            loop {
                if j == self.d {
                    return Region::Points(out);
                }
                if w[j] < hi[j] {
                    w[j] += 1;
                    break;
                }
                w[j] = lo[j];
                j += 1;
            }
        }
    }
}

fn checked_dot(a: &[i128], b: &[i128]) -> Option<i128> {
    a.iter()
        .zip(b)
        .try_fold(0i128, |acc, (x, y)| acc.checked_add(x.checked_mul(*y)?))
}

fn to_covector(w: &[i64]) -> Covector {
    w.iter().map(|&x| BigInt::from(x)).collect()
}

/// Sorts lattice points by their total pairing with the family, so that
/// anything `w` could be split into comes first.
fn by_total_pairing(search: &Search, mut pts: Vec<Vec<i64>>) -> Vec<(Vec<i64>, Vec<i128>)> {
    pts.sort();
    pts.dedup();
    let mut keyed: Vec<(Vec<i64>, Vec<i128>)> = pts
        .into_iter()
        .map(|w| {
            let pr = search
                .pairings(&to_covector(&w))
                .expect("region points have small pairings");
            (w, pr)
        })
        .collect();
    keyed.sort_by_key(|(w, pr)| (pr.iter().sum::<i128>(), w.clone()));
    keyed
}

/// The Hilbert basis of the dual cone, computed as the irreducible elements
/// among all lattice points dominated (in every pairing) by some generator.
pub fn hilbert_brute(m: &FreeParamMatrix, strategy: BoundStrategy) -> Result<HilbertOutcome> {
    let Some(search) = Search::new(m, strategy)? else {
        return Ok(HilbertOutcome::TooLarge { volume: u128::MAX });
    };
    let mut candidates = Vec::new();
    for l in &dual_generators(m).gens {
        let Some(upper) = search.pairings(l) else {
            return Ok(HilbertOutcome::TooLarge { volume: u128::MAX });
        };
        match search.region(&upper) {
            Region::Points(pts) => candidates.extend(pts),
            Region::TooLarge(volume) => return Ok(HilbertOutcome::TooLarge { volume }),
        }
    }
    candidates.retain(|w| w.iter().any(|&x| x != 0));

    // w is reducible iff some smaller irreducible h has w - h in the cone.
    let mut irreducible: Vec<(Vec<i64>, Vec<i128>)> = Vec::new();
    for (w, pr) in by_total_pairing(&search, candidates) {
        let reducible = irreducible
            .iter()
            .any(|(_, hp)| hp.iter().zip(&pr).all(|(h, x)| h <= x));
        if !reducible {
            irreducible.push((w, pr));
        }
    }
    let mut basis: Vec<Covector> = irreducible.iter().map(|(w, _)| to_covector(w)).collect();
    basis.sort();
    Ok(HilbertOutcome::Basis(basis))
}

/// Every lattice point of the dual cone with all pairings at most `bound`
/// must be a nonnegative integer combination of `gens`. The default bound is
/// twice the largest pairing of a dual generator with a family point.
pub fn semigroup_generation_check(
    m: &FreeParamMatrix,
    gens: &[Covector],
    bound: Option<BigInt>,
) -> Outcome {
    let search = match Search::new(m, BoundStrategy::default()) {
        Ok(Some(s)) => s,
        Ok(None) => return Outcome::Skipped("coordinates exceed 128 bits".into()),
        Err(e) => return Outcome::fail(json!({ "error": e.to_string() })),
    };
    let bound = match bound {
        Some(b) => b.to_i128(),
        None => dual_generators(m)
            .gens
            .iter()
            .map(|l| search.pairings(l).and_then(|p| p.into_iter().max()))
            .collect::<Option<Vec<_>>>()
            .and_then(|v| v.into_iter().max())
            .and_then(|x| x.checked_mul(2)),
    };
    let Some(bound) = bound else {
        return Outcome::Skipped("bound exceeds 128 bits".into());
    };
    let gen_pairings: Vec<Vec<i128>> = match gens.iter().map(|g| search.pairings(g)).collect() {
        Some(v) => v,
        None => return Outcome::Skipped("generator pairings exceed 128 bits".into()),
    };
    let pts = match search.region(&vec![bound; search.points.len()]) {
        Region::Points(p) => p,
        Region::TooLarge(volume) => {
            return Outcome::Skipped(format!(
                "search box of {volume} points exceeds {SEARCH_LIMIT}"
            ))
        }
    };
    // Pairings determine the covector, so memoize on them.
    let mut reachable: HashSet<Vec<i128>> = HashSet::new();
    reachable.insert(vec![0; search.points.len()]);
    for (w, pr) in by_total_pairing(&search, pts) {
        if reachable.contains(&pr) {
            continue;
        }
        let ok = gen_pairings.iter().any(|g| {
            let rest: Vec<i128> = pr.iter().zip(g).map(|(x, y)| x - y).collect();
            rest.iter().all(|x| *x >= 0) && reachable.contains(&rest)
        });
        if !ok {
            return Outcome::fail(json!({
                "element": w,
                "bound": bound.to_string(),
            }));
        }
        reachable.insert(pr);
    }
    Outcome::Pass
}

/// Compares the elimination plan against brute force for both candidate
/// row ranges of the redundancy test. The returned note says which range
/// agrees with the enumeration.
pub fn check_hilbert(m: &FreeParamMatrix, strategy: BoundStrategy) -> (Outcome, String) {
    let brute = match hilbert_brute(m, strategy) {
        Ok(HilbertOutcome::Basis(b)) => b,
        Ok(HilbertOutcome::TooLarge { volume }) => {
            let reason = if volume == u128::MAX {
                "coordinates exceed 128 bits".to_string()
            } else {
                format!("search box of {volume} points exceeds {SEARCH_LIMIT}")
            };
            return (Outcome::Skipped(reason.clone()), reason);
        }
        Err(e) => {
            return (
                Outcome::fail(json!({ "error": e.to_string() })),
                String::new(),
            )
        }
    };
    let as_set = |first_row| -> BTreeSet<Covector> {
        elimination_plan_from(m, first_row)
            .hilbert
            .into_iter()
            .map(|h| h.covector)
            .collect()
    };
    let brute_set: BTreeSet<Covector> = brute.iter().cloned().collect();
    let full = as_set(1);
    let from_two = as_set(2);
    let verdict = |s: &BTreeSet<Covector>| {
        if *s == brute_set {
            "agrees".to_string()
        } else {
            format!("disagrees ({} vs {} elements)", s.len(), brute_set.len())
        }
    };
    let note = format!(
        "rows 1..d-1: {}; rows 2..d-1: {}",
        verdict(&full),
        verdict(&from_two)
    );
    if full == brute_set {
        (Outcome::Pass, note)
    } else {
        let show = |s: &BTreeSet<Covector>| -> Vec<Vec<String>> {
            s.iter()
                .map(|c| c.iter().map(ToString::to_string).collect())
                .collect()
        };
        (
            Outcome::fail(json!({
                "plan": show(&full),
                "brute_force": show(&brute_set),
            })),
            note,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::dual_cone::unit_covector;

    fn basis(m: &FreeParamMatrix) -> Vec<Covector> {
        match hilbert_brute(m, BoundStrategy::default()).unwrap() {
            HilbertOutcome::Basis(b) => b,
            other => panic!("unexpected {other:?}"),
        }
    }

    fn sorted(mut v: Vec<Covector>) -> Vec<Covector> {
        v.sort();
        v
    }

    #[test]
    fn quadrilateral_basis_is_all_generators() {
        let m = corpus::fig2();
        assert_eq!(basis(&m), sorted(dual_generators(&m).gens));
    }

    #[test]
    fn triangle_basis() {
        let m = corpus::triangle(2).unwrap();
        let mut g = dual_generators(&m).gens;
        g.remove(3);
        assert_eq!(basis(&m), sorted(g));
    }

    #[test]
    fn solid_drops_first_unit() {
        let m = corpus::fig3();
        let mut g = dual_generators(&m).gens;
        g.remove(0);
        assert_eq!(basis(&m), sorted(g));
        let (outcome, note) = check_hilbert(&m, BoundStrategy::default());
        assert_eq!(outcome, Outcome::Pass);
        assert_eq!(note, "rows 1..d-1: agrees; rows 2..d-1: agrees");

        let (outcome, note) = check_hilbert(&corpus::smooth3(), BoundStrategy::default());
        assert_eq!(outcome, Outcome::Pass);
        assert_eq!(
            note,
            "rows 1..d-1: agrees; rows 2..d-1: disagrees (4 vs 3 elements)"
        );
    }

    #[test]
    fn independent_of_chosen_subset() {
        // The triangle has a single spanning subset, so use instances with more.
        for m in [
            corpus::fig2(),
            corpus::fig3(),
            corpus::rect_box(&[2, 3]).unwrap(),
        ] {
            let a = hilbert_brute(&m, BoundStrategy::Subset(0)).unwrap();
            let b = hilbert_brute(&m, BoundStrategy::Subset(1)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, hilbert_brute(&m, BoundStrategy::default()).unwrap());
        }
    }

    #[test]
    fn generation() {
        let m = corpus::fig2();
        let gens = dual_generators(&m).gens;
        assert_eq!(
            semigroup_generation_check(&m, &gens, Some(6.into())),
            Outcome::Pass
        );
        assert_eq!(semigroup_generation_check(&m, &gens, None), Outcome::Pass);

        let k = 3;
        let m = corpus::triangle(k).unwrap().truncated().unwrap();
        let gens = dual_generators(&m).gens;
        assert_eq!(
            semigroup_generation_check(&m, &gens, Some((3 * k).into())),
            Outcome::Pass
        );
    }

    #[test]
    fn missing_generator_is_found() {
        let m = corpus::fig2();
        let mut gens = dual_generators(&m).gens;
        gens.remove(2);
        let outcome = semigroup_generation_check(&m, &gens, None);
        assert_eq!(
            outcome,
            Outcome::fail(json!({ "element": [0, 0, 1], "bound": "8" }))
        );
        assert_eq!(unit_covector(3, 3), to_covector(&[0, 0, 1]));
    }
}
