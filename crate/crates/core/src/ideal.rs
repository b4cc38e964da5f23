//! Binomial equations of the toric l.c.i. singularity.
//!
//! The kernel lattice of `A = (I_d | M^T)` has the obvious basis `B`. Column
//! operations recorded in the lambda/mu table turn `B` into a dominating basis
//! `B^`, whose columns are exactly the exponent vectors of a generating set of
//! the toric ideal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::dual_cone::{dual_generators, EliminationPlan};
use crate::error::{Error, Result};
use crate::linalg::{is_dominating, mat_mul, IntMatrix};
use crate::params::{to_json_ints, FreeParamMatrix, JsonInt};

/// `lambda(i, j) <= 0` and `mu(i, j) >= 0` for `1 <= j <= d-1`, `0 <= i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMuTable {
    pub d: usize,
    // Indexed [j - 1][i].
    lambda: Vec<Vec<BigInt>>,
    mu: Vec<Vec<BigInt>>,
}

impl LambdaMuTable {
    pub fn lambda(&self, i: usize, j: usize) -> &BigInt {
        &self.lambda[j - 1][i]
    }

    pub fn mu(&self, i: usize, j: usize) -> &BigInt {
        &self.mu[j - 1][i]
    }

    /// Last-column aliases `lambda_i = lambda(i, d-1)`.
    pub fn last_lambda(&self, i: usize) -> &BigInt {
        self.lambda(i, self.d - 1)
    }
}

pub fn lambda_mu(m: &FreeParamMatrix) -> Result<LambdaMuTable> {
    let d = m.d();
    let mut lambda = Vec::with_capacity(d - 1);
    let mut mu = Vec::with_capacity(d - 1);
    for j in 1..d {
        let mut lam = vec![BigInt::zero(); j];
        let mut mu_col = vec![BigInt::zero(); j];
        for i in (1..j).rev() {
            let mut s = m.entry(j, i + 1).clone();
            for k in i + 1..j {
                s += m.entry(k, i + 1) * &lam[k];
            }
            if s.is_negative() {
                lam[i] = s;
            } else {
                mu_col[i] = s;
            }
        }
        let mut mu0 = m.entry(j, 1).clone();
        for k in 1..j {
            mu0 += m.entry(k, 1) * &lam[k];
        }
        if mu0.is_negative() {
            return Err(Error::NegativeMuZero(j));
        }
        mu_col[0] = mu0;
        lambda.push(lam);
        mu.push(mu_col);
    }
    Ok(LambdaMuTable { d, lambda, mu })
}

/// `A = (I_d | M^T)` and the kernel basis `B = (M^T ; -I_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    pub a: IntMatrix,
    pub b: IntMatrix,
}

pub fn relation_matrices(m: &FreeParamMatrix) -> Result<RelationMatrix> {
    let d = m.d();
    let gens = dual_generators(m);
    let a = IntMatrix::from_columns(&gens.gens)?;
    let mut b = IntMatrix::zeros(2 * d - 1, d - 1);
    for j in 0..d - 1 {
        for (r, x) in gens.gens[d + j].iter().enumerate() {
            b[(r, j)] = x.clone();
        }
        b[(d + j, j)] = BigInt::from(-1);
    }
    if !mat_mul(&a, &b)?.is_zero() {
        return Err(Error::InternalMismatch("A * B is not zero".into()));
    }
    Ok(RelationMatrix { a, b })
}

/// `U_j` for `j = 2..=d-1`, in that order: identity except column `j`, which
/// holds `lambda(1, j), ..., lambda(j-1, j)` above the diagonal.
pub fn unimodular_factors(m: &FreeParamMatrix, table: &LambdaMuTable) -> Vec<IntMatrix> {
    let n = m.d() - 1;
    (2..=n)
        .map(|j| {
            let mut u = IntMatrix::identity(n);
            for i in 1..j {
                u[(i - 1, j - 1)] = table.lambda(i, j).clone();
            }
            u
        })
        .collect()
}

/// `B^` read off the lambda/mu table.
pub fn assemble_dominating_basis(table: &LambdaMuTable) -> IntMatrix {
    let d = table.d;
    let mut out = IntMatrix::zeros(2 * d - 1, d - 1);
    for j in 1..d {
        let c = j - 1;
        for i in 0..j {
            out[(i, c)] = table.mu(i, j).clone();
        }
        out[(j, c)] = BigInt::from(-1);
        for i in 1..j {
            out[(d + i - 1, c)] = -table.lambda(i, j);
        }
        out[(d + j - 1, c)] = BigInt::from(-1);
    }
    out
}

/// The dominating kernel basis, built as `B * U_{d-1} * ... * U_2` and
/// checked against direct assembly from the table.
pub fn dominating_basis(m: &FreeParamMatrix) -> Result<IntMatrix> {
    let table = lambda_mu(m)?;
    let rel = relation_matrices(m)?;
    let mut product = rel.b.clone();
    for u in unimodular_factors(m, &table).iter().rev() {
        product = mat_mul(&product, u)?;
    }
    let assembled = assemble_dominating_basis(&table);
    if product != assembled {
        return Err(Error::InternalMismatch(
            "B * U_{d-1} * ... * U_2 differs from the assembled basis".into(),
        ));
    }
    if !mat_mul(&rel.a, &assembled)?.is_zero() {
        return Err(Error::InternalMismatch("A * B^ is not zero".into()));
    }
    if !is_dominating(&assembled) {
        return Err(Error::NotDominating);
    }
    Ok(assembled)
}

/// `z^plus - z^minus` over the variables `z_1, ..., z_{2d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub plus: Vec<BigInt>,
    pub minus: Vec<BigInt>,
}

impl Binomial {
    /// Splits an integer vector into its positive and negative parts.
    pub fn from_exponent_vector(v: &[BigInt]) -> Self {
        let plus = v.iter().map(|x| x.max(&BigInt::zero()).clone()).collect();
        let minus = v.iter().map(|x| (-x).max(BigInt::zero())).collect();
        Self { plus, minus }
    }

    pub fn exponent_difference(&self) -> Vec<BigInt> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, q)| p - q)
            .collect()
    }

    pub fn has_disjoint_supports(&self) -> bool {
        self.plus
            .iter()
            .zip(&self.minus)
            .all(|(p, q)| p.is_zero() || q.is_zero())
    }

    /// Whether the exponent difference lies in the kernel of `a`.
    pub fn in_kernel_of(&self, a: &IntMatrix) -> bool {
        a.apply(&self.exponent_difference())
            .is_ok_and(|v| v.iter().all(Zero::is_zero))
    }

    fn is_single_variable(v: &[BigInt], position: usize) -> bool {
        v.iter().enumerate().all(|(p, x)| {
            if p + 1 == position {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    fn is_product_of(v: &[BigInt], a: usize, b: usize) -> bool {
        v.iter().enumerate().all(|(p, x)| {
            if p + 1 == a || p + 1 == b {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPresentation {
    /// Eliminated variable position -> the two positions of its replacement
    /// product.
    pub variable_map: BTreeMap<usize, (usize, usize)>,
    pub surviving_variables: Vec<usize>,
    pub generators: Vec<Binomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub d: usize,
    pub generators: Vec<Binomial>,
    pub minimal: Option<MinimalPresentation>,
}

impl IdealPresentation {
    pub fn variable_count(&self) -> usize {
        2 * self.d - 1
    }

    pub fn minimal_generators(&self) -> Option<&[Binomial]> {
        self.minimal.as_ref().map(|p| p.generators.as_slice())
    }
}

/// The `d - 1` generators: column `j` of `B^` split into signs. The negative
/// part of column `j` is always `z_{j+1} z_{d+j}`.
pub fn binomial_generators(m: &FreeParamMatrix) -> Result<IdealPresentation> {
    let d = m.d();
    let basis = dominating_basis(m)?;
    let generators: Vec<Binomial> = basis
        .columns()
        .iter()
        .map(|c| Binomial::from_exponent_vector(c))
        .collect();
    for (idx, g) in generators.iter().enumerate() {
        let j = idx + 1;
        if !Binomial::is_product_of(&g.minus, j + 1, d + j) {
            return Err(Error::InternalMismatch(format!(
                "generator {j} has minus part other than z{}*z{}",
                j + 1,
                d + j
            )));
        }
    }
    Ok(IdealPresentation {
        d,
        generators,
        minimal: None,
    })
}

fn substitute(exponents: &mut [BigInt], map: &BTreeMap<usize, (usize, usize)>) {
    // Replacements strictly raise the level of a variable (z_k and z_{d+k-1}
    // sit on level k), so this terminates after at most d rounds.
    loop {
        let Some((&var, &(a, b))) = map.iter().find(|(&var, _)| !exponents[var - 1].is_zero())
        else {
            return;
        };
        let e = std::mem::take(&mut exponents[var - 1]);
        exponents[a - 1] += &e;
        exponents[b - 1] += &e;
    }
}

/// Drops the generators that merely define redundant variables and
/// substitutes those variables away in the remaining ones.
pub fn minimal_presentation(
    m: &FreeParamMatrix,
    plan: &EliminationPlan,
) -> Result<IdealPresentation> {
    let d = m.d();
    let mut presentation = binomial_generators(m)?;
    let mut variable_map = BTreeMap::new();
    let mut dropped = Vec::new();

    for (&k, &gamma) in &plan.q_set {
        let g = &presentation.generators[gamma - 1];
        if !Binomial::is_single_variable(&g.plus, k) {
            return Err(Error::MalformedEliminationTarget {
                generator: gamma,
                variable: k,
            });
        }
        variable_map.insert(k, (gamma + 1, d + gamma));
        dropped.push(gamma);
    }
    for (&l, &delta) in &plan.r_set {
        let g = &presentation.generators[delta - 1];
        if !Binomial::is_single_variable(&g.plus, d + l) {
            return Err(Error::MalformedEliminationTarget {
                generator: delta,
                variable: d + l,
            });
        }
        variable_map.insert(d + l, (delta + 1, d + delta));
        dropped.push(delta);
    }

    let mut generators = Vec::new();
    for (idx, g) in presentation.generators.iter().enumerate() {
        if dropped.contains(&(idx + 1)) {
            continue;
        }
        let mut plus = g.plus.clone();
        let mut minus = g.minus.clone();
        substitute(&mut plus, &variable_map);
        substitute(&mut minus, &variable_map);
        for (p, q) in plus.iter_mut().zip(minus.iter_mut()) {
            let common = p.clone().min(q.clone());
            *p -= &common;
            *q -= &common;
        }
        if plus.iter().chain(&minus).all(Zero::is_zero) {
            return Err(Error::InternalMismatch(format!(
                "generator {} became trivial after elimination",
                idx + 1
            )));
        }
        generators.push(Binomial { plus, minus });
    }

    let expected = plan.hilbert.len() - d;
    if generators.len() != expected {
        return Err(Error::InternalMismatch(format!(
            "{} binomials remain, expected {expected}",
            generators.len()
        )));
    }
    let surviving_variables = (1..=2 * d - 1)
        .filter(|p| !variable_map.contains_key(p))
        .collect();
    presentation.minimal = Some(MinimalPresentation {
        variable_map,
        surviving_variables,
        generators,
    });
    Ok(presentation)
}

pub fn variable_name(position: usize) -> String {
    format!("z{position}")
}

fn render_monomial(exponents: &[BigInt]) -> String {
    let mut out = String::new();
    for (idx, e) in exponents.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&variable_name(idx + 1));
        if !e.is_one() {
            let _ = write!(out, "^{e}");
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

pub fn render_binomial(b: &Binomial) -> String {
    format!(
        "{} - {}",
        render_monomial(&b.plus),
        render_monomial(&b.minus)
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Text: one binomial per line (the minimal ones when `minimal` is set and
/// available). JSON: the full presentation document.
pub fn render(p: &IdealPresentation, format: Format, minimal: bool) -> String {
    match format {
        Format::Text => {
            let list = if minimal {
                p.minimal_generators().unwrap_or(&[])
            } else {
                &p.generators
            };
            list.iter()
                .map(render_binomial)
                .collect::<Vec<_>>()
                .join("\n")
        }
        Format::Json => serde_json::to_string(&IdealJson::from(p)).expect("ideal serializes"),
    }
}

#[derive(Serialize)]
struct BinomialJson {
    plus: Vec<JsonInt>,
    minus: Vec<JsonInt>,
}

impl From<&Binomial> for BinomialJson {
    fn from(b: &Binomial) -> Self {
        Self {
            plus: to_json_ints(&b.plus),
            minus: to_json_ints(&b.minus),
        }
    }
}

/// Eliminated variables in numeric order.
struct EliminatedJson(Vec<(String, [String; 2])>);

impl Serialize for EliminatedJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct MinimalJson {
    eliminated: EliminatedJson,
    generators: Vec<BinomialJson>,
}

#[derive(Serialize)]
struct IdealJson {
    d: usize,
    variables: Vec<String>,
    generators: Vec<BinomialJson>,
    minimal: Option<MinimalJson>,
}

impl From<&IdealPresentation> for IdealJson {
    fn from(p: &IdealPresentation) -> Self {
        Self {
            d: p.d,
            variables: (1..=p.variable_count()).map(variable_name).collect(),
            generators: p.generators.iter().map(Into::into).collect(),
            minimal: p.minimal.as_ref().map(|mp| MinimalJson {
                eliminated: EliminatedJson(
                    mp.variable_map
                        .iter()
                        .map(|(&k, &(a, b))| {
                            (variable_name(k), [variable_name(a), variable_name(b)])
                        })
                        .collect(),
                ),
                generators: mp.generators.iter().map(Into::into).collect(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual_cone::elimination_plan;

    fn params(r: &[Vec<i64>]) -> FreeParamMatrix {
        FreeParamMatrix::from_i64_rows(r).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn fig3() -> FreeParamMatrix {
        params(&[vec![1], vec![1, 0], vec![2, -1, -1]])
    }

    #[test]
    fn table_for_solid() {
        let t = lambda_mu(&fig3()).unwrap();
        let b = BigInt::from;
        assert_eq!(t.mu(0, 1), &b(1));
        assert_eq!(t.mu(0, 2), &b(1));
        assert_eq!(t.mu(0, 3), &b(0));
        assert_eq!(t.lambda(1, 3), &b(-1));
        assert_eq!(t.lambda(2, 3), &b(-1));
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert!(t.mu(i, j).is_zero());
        }
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2)] {
            assert!(t.lambda(i, j).is_zero());
        }
    }

    #[test]
    fn table_for_nonnegative_input() {
        let m = params(&[vec![3], vec![1, 2], vec![0, 4, 5]]);
        let t = lambda_mu(&m).unwrap();
        for j in 1..4 {
            for i in 0..j {
                assert!(t.lambda(i, j).is_zero());
                assert_eq!(t.mu(i, j), m.entry(j, i + 1));
            }
        }
    }

    #[test]
    fn table_for_triangle() {
        let t = lambda_mu(&params(&[vec![4], vec![4, -1]])).unwrap();
        assert_eq!(t.lambda(1, 2), &BigInt::from(-1));
        assert!(t.mu(1, 2).is_zero());
        assert!(t.mu(0, 2).is_zero());
        assert_eq!(t.mu(0, 1), &BigInt::from(4));
    }

    #[test]
    fn relation_matrix_shapes() {
        let rel = relation_matrices(&params(&[vec![2], vec![2, 1]])).unwrap();
        assert_eq!(rel.b.column(0), big(&[2, -1, 0, -1, 0]));
        assert_eq!(rel.b.column(1), big(&[2, 1, -1, 0, -1]));
        let rel = relation_matrices(&params(&[vec![6]])).unwrap();
        assert_eq!(rel.b.column(0), big(&[6, -1, -1]));
        let rel = relation_matrices(&fig3()).unwrap();
        assert!(mat_mul(&rel.a, &rel.b).unwrap().is_zero());
    }

    #[test]
    fn factors_for_solid() {
        let m = fig3();
        let t = lambda_mu(&m).unwrap();
        let us = unimodular_factors(&m, &t);
        assert_eq!(us.len(), 2);
        assert_eq!(us[0], IntMatrix::identity(3));
        assert_eq!(us[1].column(2), big(&[-1, -1, 1]));
        for u in &us {
            assert!(u.det().unwrap().is_one());
        }
    }

    #[test]
    fn triangle_basis_column() {
        let b = dominating_basis(&params(&[vec![3], vec![3, -1]])).unwrap();
        assert_eq!(b.column(1), big(&[0, 0, -1, 1, -1]));
    }

    #[test]
    fn nonnegative_basis_is_unchanged() {
        let m = params(&[vec![2], vec![2, 1], vec![1, 0, 3]]);
        let b = dominating_basis(&m).unwrap();
        assert_eq!(b, relation_matrices(&m).unwrap().b);
    }

    #[test]
    fn quadrilateral_equations() {
        let p = binomial_generators(&params(&[vec![2], vec![2, 1]])).unwrap();
        assert_eq!(
            render(&p, Format::Text, false),
            "z1^2 - z2*z4\nz1^2*z2 - z3*z5"
        );
    }

    #[test]
    fn solid_equations() {
        let m = fig3();
        let p = minimal_presentation(&m, &elimination_plan(&m)).unwrap();
        assert_eq!(
            render(&p, Format::Text, false),
            "z1 - z2*z5\nz1 - z3*z6\nz5*z6 - z4*z7"
        );
        assert_eq!(
            render(&p, Format::Text, true),
            "z2*z5 - z3*z6\nz5*z6 - z4*z7"
        );
        let mp = p.minimal.unwrap();
        assert_eq!(mp.variable_map, BTreeMap::from([(1, (2, 5))]));
        assert_eq!(mp.surviving_variables, vec![2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn simplex_collapses_to_hypersurface() {
        let m = params(&[vec![3], vec![0, 1], vec![0, 0, 1]]);
        let p = minimal_presentation(&m, &elimination_plan(&m)).unwrap();
        assert_eq!(
            render(&p, Format::Text, false),
            "z1^3 - z2*z5\nz2 - z3*z6\nz3 - z4*z7"
        );
        assert_eq!(render(&p, Format::Text, true), "z1^3 - z4*z5*z6*z7");
    }

    #[test]
    fn smooth_case_has_no_relations() {
        let m = params(&[vec![1], vec![0, 1]]);
        let p = minimal_presentation(&m, &elimination_plan(&m)).unwrap();
        let mp = p.minimal.as_ref().unwrap();
        assert!(mp.generators.is_empty());
        assert_eq!(mp.surviving_variables.len(), 3);
        assert_eq!(render(&p, Format::Text, true), "");
    }

    #[test]
    fn kleinian_surface() {
        let p = binomial_generators(&params(&[vec![5]])).unwrap();
        assert_eq!(render(&p, Format::Text, false), "z1^5 - z2*z3");
    }

    #[test]
    fn json_schema() {
        let m = params(&[vec![2], vec![2, -1]]);
        let p = minimal_presentation(&m, &elimination_plan(&m)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&render(&p, Format::Json, false)).unwrap();
        assert_eq!(v["d"], 3);
        assert_eq!(
            v["variables"],
            serde_json::json!(["z1", "z2", "z3", "z4", "z5"])
        );
        assert_eq!(
            v["generators"][0]["plus"],
            serde_json::json!([2, 0, 0, 0, 0])
        );
        assert_eq!(
            v["generators"][0]["minus"],
            serde_json::json!([0, 1, 0, 1, 0])
        );
        assert_eq!(
            v["minimal"]["eliminated"],
            serde_json::json!({"z4": ["z3", "z5"]})
        );
        assert_eq!(
            v["minimal"]["generators"][0]["plus"],
            serde_json::json!([2, 0, 0, 0, 0])
        );
        assert_eq!(
            v["minimal"]["generators"][0]["minus"],
            serde_json::json!([0, 1, 1, 0, 1])
        );
    }

    #[test]
    fn malformed_target_is_reported() {
        let m = fig3();
        let mut plan = elimination_plan(&m);
        plan.q_set.insert(1, 3);
        assert_eq!(
            minimal_presentation(&m, &plan),
            Err(Error::MalformedEliminationTarget {
                generator: 3,
                variable: 1
            })
        );
    }
}
