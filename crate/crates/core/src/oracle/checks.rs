//! Checks on the linear-algebra side: kernel basis, dominance, basic cones.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::Outcome;
use crate::dual_cone::{dual_generators, BasicCone};
use crate::ideal::{
    assemble_dominating_basis, lambda_mu, relation_matrices, unimodular_factors, Binomial,
};
use crate::linalg::{det, is_dominating, mat_mul, IntMatrix};
use crate::params::{EpsilonChoice, FreeParamMatrix};
use crate::polytope::{is_admissible, Admissibility};

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn matrix_json(m: &IntMatrix) -> Value {
    json!((0..m.rows()).map(|i| strings(m.row(i))).collect::<Vec<_>>())
}

fn error(e: impl ToString) -> Outcome {
    Outcome::fail(json!({ "error": e.to_string() }))
}

/// `det U_j = 1`, `B U_{d-1} ... U_2` equals the assembled basis, and every
/// column of it lies in the kernel of `A`.
pub fn check_kernel(m: &FreeParamMatrix) -> Outcome {
    let (table, rel) = match (lambda_mu(m), relation_matrices(m)) {
        (Ok(t), Ok(r)) => (t, r),
        (Err(e), _) | (_, Err(e)) => return error(e),
    };
    let factors = unimodular_factors(m, &table);
    let mut product = rel.b.clone();
    for (idx, u) in factors.iter().enumerate().rev() {
        match det(u) {
            Ok(x) if x.is_one() => {}
            other => {
                return Outcome::fail(json!({
                    "factor": idx + 2,
                    "det": other.map(|x| x.to_string()).unwrap_or_default(),
                }))
            }
        }
        product = match mat_mul(&product, u) {
            Ok(p) => p,
            Err(e) => return error(e),
        };
    }
    let assembled = assemble_dominating_basis(&table);
    if product != assembled {
        return Outcome::fail(json!({
            "product": matrix_json(&product),
            "assembled": matrix_json(&assembled),
        }));
    }
    for (idx, col) in assembled.columns().iter().enumerate() {
        if !Binomial::from_exponent_vector(col).in_kernel_of(&rel.a) {
            return Outcome::fail(json!({ "column": idx + 1, "exponents": strings(col) }));
        }
    }
    Outcome::Pass
}

pub fn check_dominating(m: &FreeParamMatrix) -> Outcome {
    match lambda_mu(m) {
        Ok(table) => {
            let b = assemble_dominating_basis(&table);
            if is_dominating(&b) {
                Outcome::Pass
            } else {
                Outcome::fail(json!({ "matrix": matrix_json(&b) }))
            }
        }
        Err(e) => error(e),
    }
}

pub fn check_basic_cones(m: &FreeParamMatrix) -> Outcome {
    for eps in EpsilonChoice::all(m.d() - 1) {
        let cone = BasicCone::new(m, eps);
        let det = cone.determinant();
        if !det.abs().is_one() {
            return Outcome::fail(
                json!({ "epsilon": cone.epsilon.bits(), "det": det.to_string() }),
            );
        }
    }
    Outcome::Pass
}

fn rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

fn combine(gens: &[Vec<BigInt>], coeffs: &[i64]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); gens[0].len()];
    for (g, &c) in gens.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(g) {
            *o += x * c;
        }
    }
    out
}

/// Sampled subdivision check. Random nonnegative combinations of the dual
/// generators must land in some basic cone, and a random interior point of
/// each basic cone must lie in no other basic cone.
pub fn check_subdivision(m: &FreeParamMatrix, samples: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cones: Vec<BasicCone> = EpsilonChoice::all(m.d() - 1)
        .map(|e| BasicCone::new(m, e))
        .collect();
    let gens = dual_generators(m).gens;
    for _ in 0..samples {
        let coeffs: Vec<i64> = gens
            .iter()
            .map(|_| {
                if rng.gen_bool(0.3) {
                    0
                } else {
                    rng.gen_range(1..=6)
                }
            })
            .collect();
        let w = combine(&gens, &coeffs);
        let q = rational(&w);
        if !cones.iter().any(|c| c.contains(&q)) {
            return Outcome::fail(json!({ "coverage": strings(&w), "coefficients": coeffs }));
        }
    }
    for cone in &cones {
        let coeffs: Vec<i64> = cone.gens.iter().map(|_| rng.gen_range(1..=6)).collect();
        let w = combine(&cone.gens, &coeffs);
        let q = rational(&w);
        if let Some(other) = cones
            .iter()
            .find(|c| c.epsilon != cone.epsilon && c.contains(&q))
        {
            return Outcome::fail(json!({
                "overlap": strings(&w),
                "interior_of": cone.epsilon.bits(),
                "also_in": other.epsilon.bits(),
            }));
        }
    }
    Outcome::Pass
}

/// Whether `m_{level-1}` goes negative somewhere on the lower polytope, with
/// the polytope taken from its inequalities rather than its point family.
///
/// Vertex coordinates have denominators dividing a determinant of constraint
/// rows, so a negative minimum is at most `-1/D` for the Hadamard-style bound
/// `D` below, and one exact feasibility problem settles the question. Only
/// meaningful once every lower level has passed.
fn negative_on_polytope(m: &FreeParamMatrix, level: usize) -> bool {
    let k_max = level - 1;
    // Unknowns x_2..x_{k_max}, one slack per upper bound, one for the target.
    let nx = k_max - 1;
    let width = 2 * nx + 1;
    let entry = |i: usize, j: usize| BigRational::from_integer(m.entry(i, j).clone());
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in 2..=k_max {
        let mut row = vec![BigRational::zero(); width];
        for j in 2..k {
            row[j - 2] = entry(k - 1, j);
        }
        row[k - 2] = -BigRational::one();
        row[nx + k - 2] = -BigRational::one();
        a.push(row);
        b.push(-entry(k - 1, 1));
    }
    let bound: BigInt = (1..level)
        .map(|i| BigInt::one() + m.row(i).iter().map(Signed::abs).sum::<BigInt>())
        .product();
    let mut row = vec![BigRational::zero(); width];
    for j in 2..=k_max {
        row[j - 2] = entry(level - 1, j);
    }
    row[width - 1] = BigRational::one();
    a.push(row);
    b.push(-BigRational::new(BigInt::one(), bound) - entry(level - 1, 1));
    crate::lp::is_feasible(&a, &b)
}

/// The first failing admissibility level found by an LP over the
/// inequality description must match the library's verdict, which only
/// looks at the finite point family.
pub fn check_admissibility_reduction(m: &FreeParamMatrix) -> Outcome {
    let polytope = (2..=m.d()).find(|&l| negative_on_polytope(m, l));
    let library = match is_admissible(m) {
        Admissibility::Admissible => None,
        Admissibility::Violation(v) => Some(v.level),
    };
    if polytope == library {
        Outcome::Pass
    } else {
        Outcome::fail(json!({ "polytope_level": polytope, "library_level": library }))
    }
}
