use num_bigint::BigInt;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::json;

use super::{
    check_admissibility_reduction, check_basic_cones, check_dominating, check_hilbert,
    check_kernel, check_lamdasum, check_mu_zero, check_prop_qus, check_subdivision,
    parametric_vanishing, semigroup_generation_check, BoundStrategy, Outcome,
};
use crate::dual_cone::dual_generators;
use crate::full_presentation;
use crate::params::{validate_structure, FreeParamMatrix, InputDocument};
use crate::polytope::{is_admissible, Admissibility};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Level {
    #[default]
    Quick,
    Exhaustive,
}

impl Level {
    /// Largest `d` for the Hilbert enumeration, the generation search and
    /// the remaining `2^(d-1)`-sized checks.
    fn limits(self) -> (usize, usize, usize) {
        match self {
            Level::Quick => (4, 3, 7),
            Level::Exhaustive => (5, 4, 10),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
    pub detail: Option<String>,
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("name", self.name)?;
        map.serialize_entry("pass", &!self.outcome.is_fail())?;
        match &self.outcome {
            Outcome::Fail(w) => map.serialize_entry("witness", w)?,
            _ => map.serialize_entry("witness", &serde_json::Value::Null)?,
        }
        if let Outcome::Skipped(reason) = &self.outcome {
            map.serialize_entry("skipped", reason)?;
        }
        if let Some(detail) = &self.detail {
            map.serialize_entry("detail", detail)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instance: InputDocument,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    /// True when no executed check failed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.outcome.is_fail())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const LATER: &[&str] = &[
    "prop_qus",
    "lambda_sum",
    "mu_zero",
    "kernel",
    "dominating",
    "basic_cones",
    "subdivision",
    "hilbert",
    "semigroup",
    "parametric_vanishing",
];

fn check(name: &'static str, outcome: Outcome) -> Check {
    Check {
        name,
        outcome,
        detail: None,
    }
}

fn skip_rest(checks: &mut Vec<Check>, reason: &str) {
    checks.extend(
        LATER
            .iter()
            .map(|&n| check(n, Outcome::Skipped(reason.into()))),
    );
}

pub fn full_report(doc: &InputDocument, level: Level, seed: u64) -> VerificationReport {
    let mut checks = Vec::new();
    let rows: Vec<Vec<BigInt>> = doc
        .rows
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    let m = match validate_structure(doc.d, &rows).and_then(|()| FreeParamMatrix::new(doc.d, rows))
    {
        Ok(m) => {
            checks.push(check("structure", Outcome::Pass));
            m
        }
        Err(e) => {
            checks.push(check(
                "structure",
                Outcome::fail(json!({ "error": e.to_string() })),
            ));
            checks.push(check(
                "admissibility",
                Outcome::Skipped("invalid structure".into()),
            ));
            checks.push(check(
                "polytope_admissibility",
                Outcome::Skipped("invalid structure".into()),
            ));
            skip_rest(&mut checks, "invalid structure");
            return VerificationReport {
                instance: doc.clone(),
                seed,
                checks,
            };
        }
    };
    if let Admissibility::Violation(v) = is_admissible(&m) {
        checks.push(check(
            "admissibility",
            Outcome::fail(json!({
                "level": v.level,
                "epsilon": v.epsilon.bits(),
                "pairing": v.pairing.to_string(),
            })),
        ));
        checks.push(check(
            "polytope_admissibility",
            check_admissibility_reduction(&m),
        ));
        skip_rest(&mut checks, "inadmissible");
        return VerificationReport {
            instance: doc.clone(),
            seed,
            checks,
        };
    }
    checks.push(check("admissibility", Outcome::Pass));
    checks.push(check(
        "polytope_admissibility",
        check_admissibility_reduction(&m),
    ));

    let d = m.d();
    let (hilbert_max, semigroup_max, exp_max) = level.limits();
    let gated = |limit: usize, f: &dyn Fn() -> Outcome| {
        if d <= limit {
            f()
        } else {
            Outcome::Skipped(format!("d = {d} exceeds {limit} at this level"))
        }
    };

    checks.push(check("prop_qus", gated(exp_max, &|| check_prop_qus(&m))));
    checks.push(check("lambda_sum", gated(exp_max, &|| check_lamdasum(&m))));
    checks.push(check("mu_zero", gated(exp_max, &|| check_mu_zero(&m))));
    checks.push(check("kernel", check_kernel(&m)));
    checks.push(check(
        "dominating",
        gated(exp_max, &|| check_dominating(&m)),
    ));
    checks.push(check(
        "basic_cones",
        gated(exp_max, &|| check_basic_cones(&m)),
    ));
    checks.push(check(
        "subdivision",
        gated(exp_max, &|| check_subdivision(&m, 64, seed)),
    ));

    let mut hilbert = check("hilbert", Outcome::Pass);
    if d <= hilbert_max {
        let (outcome, note) = check_hilbert(&m, BoundStrategy::default());
        hilbert.outcome = outcome;
        hilbert.detail = Some(note);
    } else {
        hilbert.outcome = Outcome::Skipped(format!("d = {d} exceeds {hilbert_max} at this level"));
    }
    checks.push(hilbert);

    checks.push(check(
        "semigroup",
        gated(semigroup_max, &|| {
            semigroup_generation_check(&m, &dual_generators(&m).gens, None)
        }),
    ));
    let vanishing = match full_presentation(&m) {
        Ok(p) => parametric_vanishing(&m, &p, 10, seed),
        Err(e) => Outcome::fail(json!({ "error": e.to_string() })),
    };
    checks.push(check("parametric_vanishing", vanishing));
    VerificationReport {
        instance: doc.clone(),
        seed,
        checks,
    }
}
