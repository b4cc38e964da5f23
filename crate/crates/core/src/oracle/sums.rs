//! Closed-form sums behind the vertex recursion and the lambda recursion.
//!
//! Each sum is computed twice: by literal enumeration of index chains and by
//! the one-step recurrences the chains satisfy.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::Outcome;
use crate::ideal::lambda_mu;
use crate::params::{EpsilonChoice, FreeParamMatrix};
use crate::polytope::vertex_point;

/// Calls `f` with every strictly increasing sequence of `len` values drawn
/// from `lo..hi`.
fn for_each_chain(lo: usize, hi: usize, len: usize, f: &mut impl FnMut(&[usize])) {
    fn go(next: usize, hi: usize, len: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == len {
            f(acc);
            return;
        }
        for x in next..hi {
            acc.push(x);
            go(x + 1, hi, len, acc, f);
            acc.pop();
        }
    }
    go(lo, hi, len, &mut Vec::with_capacity(len), f);
}

fn bit(eps: &EpsilonChoice, i: usize) -> BigInt {
    BigInt::from(eps.get(i))
}

/// `q_{k,n}(eps)`: sum over `0 = i_0 < i_1 < ... < i_k < i_{k+1} = n-1` of
/// `prod_{j=1}^{k+1} eps_{i_j} m_{i_j, i_{j-1}+1}`.
pub fn q_sum_brute(m: &FreeParamMatrix, eps: &EpsilonChoice, k: usize, n: usize) -> BigInt {
    assert!(
        n >= 2 && n <= m.d() && k + 2 <= n,
        "q_{{{k},{n}}} out of range"
    );
    let mut total = BigInt::zero();
    for_each_chain(1, n - 1, k, &mut |inner| {
        let mut chain = Vec::with_capacity(k + 2);
        chain.push(0);
        chain.extend_from_slice(inner);
        chain.push(n - 1);
        let mut prod = BigInt::one();
        for w in chain.windows(2) {
            prod *= bit(eps, w[1]) * m.entry(w[1], w[0] + 1);
        }
        total += prod;
    });
    total
}

/// All `q_{k,n}(eps)` from `q_{0,n} = eps_{n-1} m_{n-1,1}` and
/// `q_{k+1,n+1} = eps_n sum_{i=k+2}^{n} m_{n,i} q_{k,i}`. Keyed by `(k, n)`.
pub fn q_sums_recursive(
    m: &FreeParamMatrix,
    eps: &EpsilonChoice,
) -> BTreeMap<(usize, usize), BigInt> {
    let d = m.d();
    let mut q = BTreeMap::new();
    for n in 2..=d {
        q.insert((0, n), bit(eps, n - 1) * m.entry(n - 1, 1));
    }
    for n in 2..d {
        for k in 0..n - 1 {
            let s: BigInt = (k + 2..=n).map(|i| m.entry(n, i) * &q[&(k, i)]).sum();
            q.insert((k + 1, n + 1), bit(eps, n) * s);
        }
    }
    q
}

/// `p_{k,n}`: sum over `n = i_0 < i_1 < ... < i_k < i_{k+1} = d-1` of
/// `prod_{j=1}^{k+1} eps_{i_{j-1}} m_{i_j, i_{j-1}+1}`.
pub fn p_sum_brute(m: &FreeParamMatrix, eps: &EpsilonChoice, k: usize, n: usize) -> BigInt {
    let d = m.d();
    assert!(
        n >= 1 && n + 2 <= d && k + 2 + n <= d,
        "p_{{{k},{n}}} out of range"
    );
    let mut total = BigInt::zero();
    for_each_chain(n + 1, d - 1, k, &mut |inner| {
        let mut chain = Vec::with_capacity(k + 2);
        chain.push(n);
        chain.extend_from_slice(inner);
        chain.push(d - 1);
        let mut prod = BigInt::one();
        for w in chain.windows(2) {
            prod *= bit(eps, w[0]) * m.entry(w[1], w[0] + 1);
        }
        total += prod;
    });
    total
}

/// All `p_{k,n}` from `p_{0,n} = eps_n m_{d-1,n+1}` and
/// `p_{l+1,n-1} = sum_{k=n}^{d-2-l} eps_{n-1} m_{k,n} p_{l,k}`.
pub fn p_sums_recursive(
    m: &FreeParamMatrix,
    eps: &EpsilonChoice,
) -> BTreeMap<(usize, usize), BigInt> {
    let d = m.d();
    let mut p = BTreeMap::new();
    if d < 3 {
        return p;
    }
    for n in 1..=d - 2 {
        p.insert((0, n), bit(eps, n) * m.entry(d - 1, n + 1));
    }
    // p_{l,n} needs p_{l-1,k} for k > n, so sweep n downwards.
    for n in (2..=d - 2).rev() {
        for l in 0..=d - 2 - n {
            let s: BigInt = (n..=d - 2 - l).map(|k| m.entry(k, n) * &p[&(l, k)]).sum();
            p.insert((l + 1, n - 1), bit(eps, n - 1) * s);
        }
    }
    p
}

/// The positivity sum: over `k = 0..=d-2` and chains
/// `0 = i_0 < ... < i_{k+1} = d-1`, `m_{d-1, i_k + 1} prod_{j=1}^{k} eps_{i_j} m_{i_j, i_{j-1}+1}`.
pub fn positivity_sum(m: &FreeParamMatrix, eps: &EpsilonChoice) -> BigInt {
    let d = m.d();
    let mut total = BigInt::zero();
    for k in 0..=d - 2 {
        for_each_chain(1, d - 1, k, &mut |inner| {
            let mut chain = Vec::with_capacity(k + 2);
            chain.push(0);
            chain.extend_from_slice(inner);
            let last = *chain.last().unwrap();
            let mut prod = m.entry(d - 1, last + 1).clone();
            for w in chain.windows(2) {
                prod *= bit(eps, w[1]) * m.entry(w[1], w[0] + 1);
            }
            total += prod;
        });
    }
    total
}

/// `eps_i = [lambda_{i,d-1} < 0]` for `i = 1..=d-2`.
pub fn lambda_signs(m: &FreeParamMatrix) -> crate::Result<EpsilonChoice> {
    let table = lambda_mu(m)?;
    let d = m.d();
    Ok(EpsilonChoice::new(
        (1..d - 1)
            .map(|i| u8::from(table.last_lambda(i).is_negative()))
            .collect(),
    ))
}

/// Recorded sums for one instance, keyed `(k, n, eps bits)` and `(k, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CombinatorialWitness {
    pub q_values: BTreeMap<(usize, usize, Vec<u8>), BigInt>,
    pub p_values: BTreeMap<(usize, usize), BigInt>,
}

pub fn combinatorial_witness(m: &FreeParamMatrix) -> crate::Result<CombinatorialWitness> {
    let d = m.d();
    let mut w = CombinatorialWitness::default();
    for eps in EpsilonChoice::all(d - 1) {
        for n in 2..=d {
            for k in 0..=n - 2 {
                w.q_values
                    .insert((k, n, eps.bits().to_vec()), q_sum_brute(m, &eps, k, n));
            }
        }
    }
    if d >= 3 {
        let eps = lambda_signs(m)?;
        for n in 1..=d - 2 {
            for k in 0..=d - 2 - n {
                w.p_values.insert((k, n), p_sum_brute(m, &eps, k, n));
            }
        }
    }
    Ok(w)
}

/// Recursive vertex coordinates against the chain sums, for every `eps`.
pub fn check_prop_qus(m: &FreeParamMatrix) -> Outcome {
    let d = m.d();
    for eps in EpsilonChoice::all(d - 1) {
        let v = vertex_point(m, &eps);
        let rec = q_sums_recursive(m, &eps);
        for n in 2..=d {
            let mut closed = BigInt::zero();
            for k in 0..=n - 2 {
                let brute = q_sum_brute(m, &eps, k, n);
                if brute != rec[&(k, n)] {
                    return Outcome::fail(json!({
                        "epsilon": eps.bits(), "k": k, "n": n,
                        "chain_sum": brute.to_string(), "recurrence": rec[&(k, n)].to_string(),
                    }));
                }
                closed += brute;
            }
            if closed != v[n - 1] {
                return Outcome::fail(json!({
                    "epsilon": eps.bits(), "n": n,
                    "recursion": v[n - 1].to_string(), "closed_form": closed.to_string(),
                }));
            }
        }
        if eps.is_set(d - 1) && positivity_sum(m, &eps) != v[d - 1] {
            return Outcome::fail(json!({
                "epsilon": eps.bits(),
                "positivity_sum": positivity_sum(m, &eps).to_string(),
                "v_d": v[d - 1].to_string(),
            }));
        }
    }
    Outcome::Pass
}

/// Last-column lambdas against the `p` chain sums.
pub fn check_lamdasum(m: &FreeParamMatrix) -> Outcome {
    let d = m.d();
    if d < 3 {
        return Outcome::Pass;
    }
    let table = match lambda_mu(m) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(json!({ "error": e.to_string() })),
    };
    let eps = match lambda_signs(m) {
        Ok(e) => e,
        Err(e) => return Outcome::fail(json!({ "error": e.to_string() })),
    };
    let rec = p_sums_recursive(m, &eps);
    for n in 1..=d - 2 {
        let mut sum = BigInt::zero();
        for k in 0..=d - 2 - n {
            let brute = p_sum_brute(m, &eps, k, n);
            if brute != rec[&(k, n)] {
                return Outcome::fail(json!({
                    "k": k, "n": n, "chain_sum": brute.to_string(),
                    "recurrence": rec[&(k, n)].to_string(),
                }));
            }
            sum += brute;
        }
        if &sum != table.last_lambda(n) {
            return Outcome::fail(json!({
                "n": n, "lambda": table.last_lambda(n).to_string(), "p_sum": sum.to_string(),
            }));
        }
    }
    Outcome::Pass
}

/// `mu_{0,j} >= 0` for all `j`, and `mu_{0,d-1}` equals the positivity sum
/// at the lambda-sign epsilon.
pub fn check_mu_zero(m: &FreeParamMatrix) -> Outcome {
    let d = m.d();
    let table = match lambda_mu(m) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(json!({ "error": e.to_string() })),
    };
    if let Some(j) = (1..d).find(|&j| table.mu(0, j).is_negative()) {
        return Outcome::fail(json!({ "j": j, "mu": table.mu(0, j).to_string() }));
    }
    let eps = match lambda_signs(m) {
        Ok(e) => e,
        Err(e) => return Outcome::fail(json!({ "error": e.to_string() })),
    };
    let sum = positivity_sum(m, &eps);
    if &sum != table.mu(0, d - 1) {
        return Outcome::fail(json!({
            "epsilon": eps.bits(), "mu": table.mu(0, d - 1).to_string(), "positivity_sum": sum.to_string(),
        }));
    }
    Outcome::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn eps(b: &[u8]) -> EpsilonChoice {
        EpsilonChoice::new(b.to_vec())
    }

    #[test]
    fn first_q_term() {
        let m = corpus::fig3();
        for e in EpsilonChoice::all(3) {
            for n in 2..=4 {
                assert_eq!(
                    q_sum_brute(&m, &e, 0, n),
                    bit(&e, n - 1) * m.entry(n - 1, 1)
                );
            }
        }
    }

    #[test]
    fn zero_epsilon_kills_everything() {
        let m = corpus::fig3();
        let z = eps(&[0, 0, 0]);
        for n in 2..=4 {
            for k in 0..=n - 2 {
                assert!(q_sum_brute(&m, &z, k, n).is_zero());
            }
        }
    }

    #[test]
    fn quadrilateral_top_vertex() {
        let m = corpus::fig2();
        let e = eps(&[1, 1]);
        assert_eq!(q_sum_brute(&m, &e, 0, 3), BigInt::from(2));
        assert_eq!(q_sum_brute(&m, &e, 1, 3), BigInt::from(2));
        assert_eq!(vertex_point(&m, &e)[2], BigInt::from(4));
    }

    #[test]
    fn corpus_identities() {
        for m in [
            corpus::fig2(),
            corpus::fig3(),
            corpus::triangle(3).unwrap(),
            corpus::rect_box(&[4]).unwrap(),
        ] {
            assert_eq!(check_prop_qus(&m), Outcome::Pass);
            assert_eq!(check_lamdasum(&m), Outcome::Pass);
            assert_eq!(check_mu_zero(&m), Outcome::Pass);
        }
    }

    #[test]
    fn solid_lambda_sum() {
        let m = corpus::fig3();
        let e = lambda_signs(&m).unwrap();
        assert_eq!(e.bits(), &[1, 1]);
        let total: BigInt = (0..=1).map(|k| p_sum_brute(&m, &e, k, 1)).sum();
        assert_eq!(total, BigInt::from(-1));
    }

    #[test]
    fn triangle_lambda_sum() {
        let m = corpus::triangle(5).unwrap();
        let e = lambda_signs(&m).unwrap();
        assert_eq!(p_sum_brute(&m, &e, 0, 1), BigInt::from(-1));
    }

    #[test]
    fn nonnegative_input_has_zero_p_sums() {
        let m = FreeParamMatrix::from_i64_rows(&[vec![2], vec![1, 1], vec![0, 2, 3]]).unwrap();
        let w = combinatorial_witness(&m).unwrap();
        assert!(w.p_values.values().all(Zero::is_zero));
    }

    #[test]
    fn witness_identities() {
        let m = corpus::fig3();
        let w = combinatorial_witness(&m).unwrap();
        for ((k, n, bits), v) in &w.q_values {
            if *k == 0 {
                let e = eps(bits);
                assert_eq!(v, &(bit(&e, n - 1) * m.entry(n - 1, 1)));
            }
        }
        let e = lambda_signs(&m).unwrap();
        for ((k, n), v) in &w.p_values {
            if *k == 0 {
                assert_eq!(v, &(bit(&e, *n) * m.entry(3, n + 1)));
            }
        }
    }
}
