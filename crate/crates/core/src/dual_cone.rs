//! Generators of the dual cone, its basic subdivision and the Hilbert basis.
//!
//! Position `k` of the generator list names variable `z_k`: positions
//! `1..=d` are the unit covectors, positions `d+1..=2d-1` are
//! `m_i - e_{i+1}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det, solve_rational, IntMatrix};
use crate::params::{EpsilonChoice, FreeParamMatrix};

pub type Covector = Vec<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGenerators {
    pub d: usize,
    pub gens: Vec<Covector>,
}

impl DualGenerators {
    /// Covector at a 1-based position.
    pub fn at(&self, position: usize) -> &Covector {
        &self.gens[position - 1]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

pub fn unit_covector(d: usize, k: usize) -> Covector {
    let mut e = vec![BigInt::zero(); d];
    e[k - 1] = BigInt::one();
    e
}

/// `m_i - e_{i+1}` as a covector.
fn shifted_row(m: &FreeParamMatrix, i: usize) -> Covector {
    let mut v = m.row(i).to_vec();
    v[i] -= 1;
    v
}

pub fn dual_generators(m: &FreeParamMatrix) -> DualGenerators {
    let d = m.d();
    let mut gens: Vec<Covector> = (1..=d).map(|k| unit_covector(d, k)).collect();
    gens.extend((1..d).map(|i| shifted_row(m, i)));
    DualGenerators { d, gens }
}

/// The simplicial cone spanned by `e_1` and, for each `i`, either `e_{i+1}`
/// (when `eps_i = 1`) or `m_i - e_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicCone {
    pub epsilon: EpsilonChoice,
    pub gens: Vec<Covector>,
    /// 1-based positions of `gens` in the dual generator list.
    pub positions: Vec<usize>,
}

impl BasicCone {
    pub fn new(m: &FreeParamMatrix, epsilon: EpsilonChoice) -> Self {
        let d = m.d();
        let mut gens = vec![unit_covector(d, 1)];
        let mut positions = vec![1];
        for i in 1..d {
            if epsilon.is_set(i) {
                gens.push(unit_covector(d, i + 1));
                positions.push(i + 1);
            } else {
                gens.push(shifted_row(m, i));
                positions.push(d + i);
            }
        }
        Self {
            epsilon,
            gens,
            positions,
        }
    }

    pub fn determinant(&self) -> BigInt {
        let rows = IntMatrix::from_rows(&self.gens).expect("cone generators have equal length");
        det(&rows).expect("cone generator matrix is square")
    }

    /// Coefficients of `point` in terms of the generators.
    pub fn coordinates(&self, point: &[BigRational]) -> Option<Vec<BigRational>> {
        let cols = IntMatrix::from_rows(&self.gens).ok()?.transpose();
        solve_rational(&cols, point)
    }

    pub fn contains(&self, point: &[BigRational]) -> bool {
        self.coordinates(point)
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }
}

/// All `2^(d-1)` basic cones, each checked to be unimodular.
pub fn basic_cones(m: &FreeParamMatrix) -> Result<Vec<BasicCone>> {
    EpsilonChoice::all(m.d() - 1)
        .map(|eps| {
            let cone = BasicCone::new(m, eps);
            if cone.determinant().abs().is_one() {
                Ok(cone)
            } else {
                Err(Error::DetNotUnit(cone.epsilon.bits().to_vec()))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertElement {
    pub position: usize,
    pub covector: Covector,
}

/// Which generators are redundant and how they are expressed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationPlan {
    /// `k -> gamma_k` with `e_k = m_{gamma_k}`.
    pub q_set: BTreeMap<usize, usize>,
    /// `l -> delta_l` with `m_l - e_{l+1} = m_{delta_l}`.
    pub r_set: BTreeMap<usize, usize>,
    pub hilbert: Vec<HilbertElement>,
}

impl EliminationPlan {
    /// 1-based positions of the eliminated variables.
    pub fn eliminated_positions(&self, d: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.q_set.keys().copied().collect();
        out.extend(self.r_set.keys().map(|l| d + l));
        out
    }
}

/// Generators equal to some row `m_i` are sums `(m_i - e_{i+1}) + e_{i+1}` and
/// drop out; the rest form the Hilbert basis. Rows are searched over
/// `1..=d-1` (see `row_index_from` to restrict), smallest index first.
pub fn elimination_plan(m: &FreeParamMatrix) -> EliminationPlan {
    elimination_plan_from(m, 1)
}

/// As [`elimination_plan`], but only rows `m_i` with `i >= first_row` count.
pub fn elimination_plan_from(m: &FreeParamMatrix, first_row: usize) -> EliminationPlan {
    let d = m.d();
    let gens = dual_generators(m);
    let matching_row =
        |v: &Covector, lo: usize| (lo.max(first_row)..d).find(|&i| m.row(i) == v.as_slice());

    let mut q_set = BTreeMap::new();
    for k in 1..d {
        if let Some(g) = matching_row(gens.at(k), k) {
            q_set.insert(k, g);
        }
    }
    let mut r_set = BTreeMap::new();
    for l in 1..d.saturating_sub(1) {
        if let Some(g) = matching_row(gens.at(d + l), l + 1) {
            r_set.insert(l, g);
        }
    }
    let hilbert = (1..=gens.len())
        .filter(|&p| {
            let eliminated = if p <= d {
                q_set.contains_key(&p)
            } else {
                r_set.contains_key(&(p - d))
            };
            !eliminated
        })
        .map(|p| HilbertElement {
            position: p,
            covector: gens.at(p).clone(),
        })
        .collect();
    EliminationPlan {
        q_set,
        r_set,
        hilbert,
    }
}
