//! Brute-force verifiers. Nothing here reuses the closed-form constructions
//! except to compare against them.

mod checks;
mod hilbert;
mod report;
mod sums;
mod vanishing;

use num_bigint::BigInt;
use rand::Rng;
use serde_json::Value;

use crate::params::FreeParamMatrix;
use crate::polytope::is_admissible;

pub use checks::{
    check_admissibility_reduction, check_basic_cones, check_dominating, check_kernel,
    check_subdivision,
};
pub use hilbert::{
    check_hilbert, hilbert_brute, semigroup_generation_check, BoundStrategy, HilbertOutcome,
    SEARCH_LIMIT,
};
pub use report::{full_report, Check, Level, VerificationReport};
pub use sums::{
    check_lamdasum, check_mu_zero, check_prop_qus, combinatorial_witness, lambda_signs,
    p_sum_brute, p_sums_recursive, positivity_sum, q_sum_brute, q_sums_recursive,
    CombinatorialWitness,
};
pub use vanishing::{parametric_vanishing, vanishing_of};

/// Result of a single check. Failures carry a JSON witness that is enough
/// to reproduce them.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(Value),
    Skipped(String),
}

impl Outcome {
    pub fn fail(witness: Value) -> Self {
        Outcome::Fail(witness)
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

/// Samples an admissible matrix of dimension `d` with entries in `lo..=hi`,
/// one row at a time. Rows whose pairing goes negative somewhere on the
/// current level are redrawn; a nonnegative row always fits, so `lo..=hi`
/// must contain a positive value.
pub fn random_admissible<R: Rng>(rng: &mut R, d: usize, lo: i64, hi: i64) -> FreeParamMatrix {
    assert!(d >= 2 && hi >= 1 && lo <= hi);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d - 1);
    while rows.len() < d - 1 {
        let i = rows.len() + 1;
        let row: Vec<BigInt> = (0..i)
            .map(|j| {
                let low = if i == 1 && j == 0 { 1 } else { lo };
                BigInt::from(rng.gen_range(low..=hi))
            })
            .collect();
        let mut candidate = rows.clone();
        candidate.push(row);
        let Ok(m) = FreeParamMatrix::new(i + 1, candidate.clone()) else {
            continue;
        };
        if is_admissible(&m).is_admissible() {
            rows = candidate;
        }
    }
    FreeParamMatrix::new(d, rows).expect("rows were validated one by one")
}
