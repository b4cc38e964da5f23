//! Evaluates binomials at the characters of the dual generators.
//!
//! `z_k = t_k` and `z_{d+i} = prod_j t_j^{m_{i,j}} / t_{i+1}`, with random
//! positive rationals `t`. A binomial in the toric ideal vanishes identically.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Outcome;
use crate::ideal::{render_binomial, Binomial, IdealPresentation};
use crate::params::FreeParamMatrix;

fn power(base: &BigRational, exp: &BigInt) -> BigRational {
    let e = exp.to_i32().expect("exponent fits in i32");
    num_traits::pow::Pow::pow(base, e)
}

fn monomial(z: &[BigRational], exps: &[BigInt]) -> BigRational {
    z.iter()
        .zip(exps)
        .filter(|(_, e)| !e.is_zero())
        .fold(BigRational::one(), |acc, (x, e)| acc * power(x, e))
}

fn characters(m: &FreeParamMatrix, t: &[BigRational]) -> Vec<BigRational> {
    let d = m.d();
    let mut z = t.to_vec();
    for i in 1..d {
        z.push(monomial(t, m.row(i)) / &t[i]);
    }
    z
}

fn sample_t(rng: &mut ChaCha8Rng, d: usize) -> Vec<BigRational> {
    (0..d)
        .map(|_| {
            let n: i64 = rng.gen_range(1..=50);
            let q: i64 = rng.gen_range(1..=50);
            BigRational::new(n.into(), q.into())
        })
        .collect()
}

/// Runs `trials` seeded evaluations of arbitrary binomials.
pub fn vanishing_of(m: &FreeParamMatrix, gens: &[Binomial], trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let t = sample_t(&mut rng, m.d());
        let z = characters(m, &t);
        for (idx, g) in gens.iter().enumerate() {
            let value = monomial(&z, &g.plus) - monomial(&z, &g.minus);
            if !value.is_zero() {
                return Outcome::fail(json!({
                    "trial": trial,
                    "generator": idx + 1,
                    "binomial": render_binomial(g),
                    "t": t.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "value": value.to_string(),
                }));
            }
        }
    }
    Outcome::Pass
}

/// Original generators, minimal generators, and every substitution
/// `z_v = z_a z_b` of the minimal embedding must vanish.
pub fn parametric_vanishing(
    m: &FreeParamMatrix,
    p: &IdealPresentation,
    trials: usize,
    seed: u64,
) -> Outcome {
    let outcome = vanishing_of(m, &p.generators, trials, seed);
    if !outcome.is_pass() {
        return outcome;
    }
    let Some(minimal) = &p.minimal else {
        return Outcome::Pass;
    };
    let n = p.variable_count();
    let mut gens = minimal.generators.clone();
    for (&v, &(a, b)) in &minimal.variable_map {
        let mut plus = vec![BigInt::zero(); n];
        let mut minus = vec![BigInt::zero(); n];
        plus[v - 1] += 1;
        minus[a - 1] += 1;
        minus[b - 1] += 1;
        gens.push(Binomial { plus, minus });
    }
    match vanishing_of(m, &gens, trials, seed) {
        Outcome::Fail(mut w) => {
            w["presentation"] = json!("minimal");
            Outcome::Fail(w)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::full_presentation;

    #[test]
    fn corpus_vanishes() {
        for m in [
            corpus::fig2(),
            corpus::fig3(),
            corpus::triangle(5).unwrap(),
            corpus::smooth3(),
        ] {
            let p = full_presentation(&m).unwrap();
            assert_eq!(parametric_vanishing(&m, &p, 10, 3), Outcome::Pass);
        }
    }

    #[test]
    fn mutation_is_caught_on_first_trial() {
        let m = corpus::fig3();
        let mut p = full_presentation(&m).unwrap();
        p.generators[2].plus[4] += 1;
        match parametric_vanishing(&m, &p, 10, 3) {
            Outcome::Fail(w) => {
                assert_eq!(w["trial"], 0);
                assert_eq!(w["generator"], 3);
            }
            other => panic!("mutation survived: {other:?}"),
        }
    }

    #[test]
    fn quadrilateral_identity() {
        let m = corpus::fig2();
        let t = vec![
            BigRational::from_integer(3.into()),
            BigRational::new(2.into(), 7.into()),
            BigRational::one(),
        ];
        let z = characters(&m, &t);
        assert_eq!(&z[0] * &z[0], &z[1] * &z[3]);
    }
}
