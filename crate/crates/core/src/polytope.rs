//! The Nakajima polytope of a parameter matrix.
//!
//! Level `i` of the polytope is the convex hull of the `2^(i-1)` points
//! `v(eps)` obtained by lifting each lower-level point either to height zero or
//! to its pairing with `m_{i-1}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::linalg::{det, dot, IntMatrix};
use crate::lp::in_convex_hull;
use crate::params::{EpsilonChoice, FreeParamMatrix};

pub type Point = Vec<BigInt>;

/// `v(eps) = (1, v_2(eps), ..., v_d(eps))` with
/// `v_k = eps_{k-1} * <m_{k-1}, (v_1, ..., v_{k-1}, 0, ...)>`.
///
/// Missing trailing bits of `eps` read as zero, so a prefix gives the point of
/// the corresponding lower level padded with zeros.
pub fn vertex_point(m: &FreeParamMatrix, eps: &EpsilonChoice) -> Point {
    let d = m.d();
    let mut v = vec![BigInt::zero(); d];
    v[0] = BigInt::one();
    for k in 2..=d {
        if eps.is_set(k - 1) {
            v[k - 1] = dot(m.row(k - 1), &v);
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFamily {
    pub level: usize,
    /// One point per epsilon prefix of length `level - 1`; values may repeat.
    pub points: Vec<(EpsilonChoice, Point)>,
    /// Distinct extreme points, filled in by [`VertexFamily::compute_vertices`].
    pub vertices: Option<Vec<Point>>,
}

impl VertexFamily {
    /// Distinct points in order of first appearance.
    pub fn distinct_points(&self) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for (_, p) in &self.points {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }

    pub fn compute_vertices(&mut self) -> &[Point] {
        if self.vertices.is_none() {
            self.vertices = Some(extreme_points(self));
        }
        self.vertices.as_deref().unwrap()
    }
}

pub fn vertex_family(m: &FreeParamMatrix, level: usize) -> VertexFamily {
    assert!(
        (1..=m.d()).contains(&level),
        "level {level} outside 1..={}",
        m.d()
    );
    let points = EpsilonChoice::all(level - 1)
        .map(|eps| {
            let p = vertex_point(m, &eps);
            (eps, p)
        })
        .collect();
    VertexFamily {
        level,
        points,
        vertices: None,
    }
}

/// Distinct points of the family that are not convex combinations of the
/// other distinct points.
pub fn extreme_points(family: &VertexFamily) -> Vec<Point> {
    let distinct = family.distinct_points();
    distinct
        .iter()
        .enumerate()
        .filter(|&(i, p)| {
            let others: Vec<Point> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            !in_convex_hull(p, &others)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// Vertices of the top-level polytope.
pub fn polytope_vertices(m: &FreeParamMatrix) -> Vec<Point> {
    extreme_points(&vertex_family(m, m.d()))
}

/// A level at which the lifting pairing goes negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityViolation {
    pub level: usize,
    /// The lower-level prefix extended by a forced final one.
    pub epsilon: EpsilonChoice,
    pub pairing: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Violation(AdmissibilityViolation),
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Checks `<m_{i-1}, x> >= 0` on every point of level `i - 1`, for all levels.
///
/// The pairing is affine on the lower polytope and its vertices lie among the
/// family points, so testing the finite family is exact.
pub fn is_admissible(m: &FreeParamMatrix) -> Admissibility {
    for level in 2..=m.d() {
        for prefix in EpsilonChoice::all(level - 2) {
            let p = vertex_point(m, &prefix);
            let pairing = dot(m.row(level - 1), &p);
            if pairing.is_negative() {
                return Admissibility::Violation(AdmissibilityViolation {
                    level,
                    epsilon: prefix.with_pushed(1),
                    pairing,
                });
            }
        }
    }
    Admissibility::Admissible
}

/// `<covector, x> >= 0` on the hyperplane `x_1 = 1`; the first entry is the
/// constant offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub covector: Vec<BigInt>,
}

impl Inequality {
    pub fn offset(&self) -> &BigInt {
        &self.covector[0]
    }

    pub fn holds_at(&self, x: &[BigInt]) -> bool {
        !dot(&self.covector, x).is_negative()
    }
}

/// The pair `0 <= x_i <= <m_{i-1}, x'>` for one coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrismBounds {
    pub coordinate: usize,
    pub lower: Inequality,
    pub upper: Inequality,
}

pub fn h_description(m: &FreeParamMatrix) -> Vec<PrismBounds> {
    let d = m.d();
    (2..=d)
        .map(|i| {
            let mut lower = vec![BigInt::zero(); d];
            lower[i - 1] = BigInt::one();
            let mut upper = m.row(i - 1).to_vec();
            upper[i - 1] -= 1;
            PrismBounds {
                coordinate: i,
                lower: Inequality { covector: lower },
                upper: Inequality { covector: upper },
            }
        })
        .collect()
}

/// Whether the polytope is a basic simplex, i.e. the singularity is smooth.
pub fn is_basic_simplex(m: &FreeParamMatrix) -> Result<bool> {
    let vertices = polytope_vertices(m);
    if vertices.len() != m.d() {
        return Ok(false);
    }
    let v = IntMatrix::from_columns(&vertices)?;
    Ok(det(&v)?.abs().is_one())
}
