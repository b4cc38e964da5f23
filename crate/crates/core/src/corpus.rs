//! Built-in example parameter matrices.

use num_bigint::BigInt;

use crate::error::Result;
use crate::params::FreeParamMatrix;

pub const NAMES: &[&str] = &[
    "fig2",
    "fig3",
    "triangle(k)",
    "simplex(d,k)",
    "box(k_1,...,k_{d-1})",
    "smooth3",
];

/// Nakajima quadrilateral, `m = [[2], [2, 1]]`.
pub fn fig2() -> FreeParamMatrix {
    FreeParamMatrix::from_i64_rows(&[vec![2], vec![2, 1]]).expect("valid")
}

/// Nakajima solid, `m = [[1], [1, 0], [2, -1, -1]]`.
pub fn fig3() -> FreeParamMatrix {
    FreeParamMatrix::from_i64_rows(&[vec![1], vec![1, 0], vec![2, -1, -1]]).expect("valid")
}

pub fn triangle(k: i64) -> Result<FreeParamMatrix> {
    FreeParamMatrix::from_i64_rows(&[vec![k], vec![k, -1]])
}

/// The `k`-th dilation of a basic `(d-1)`-simplex: `m_{1,1} = k`,
/// `m_{i,i} = 1` for `i >= 2`, zeros elsewhere.
pub fn simplex(d: usize, k: i64) -> Result<FreeParamMatrix> {
    let rows: Vec<Vec<BigInt>> = (1..d)
        .map(|i| {
            let mut r = vec![BigInt::from(0); i];
            r[i - 1] = BigInt::from(if i == 1 { k } else { 1 });
            r
        })
        .collect();
    FreeParamMatrix::new(d, rows)
}

/// Rectangular box with edge lengths `k_1, ..., k_{d-1}`: `m_{i,1} = k_i`.
pub fn rect_box(ks: &[i64]) -> Result<FreeParamMatrix> {
    let rows: Vec<Vec<BigInt>> = ks
        .iter()
        .enumerate()
        .map(|(idx, &k)| {
            let mut r = vec![BigInt::from(0); idx + 1];
            r[0] = BigInt::from(k);
            r
        })
        .collect();
    FreeParamMatrix::new(ks.len() + 1, rows)
}

/// Basic triangle in dimension 3, the smooth case.
pub fn smooth3() -> FreeParamMatrix {
    FreeParamMatrix::from_i64_rows(&[vec![1], vec![0, 1]]).expect("valid")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LookupError {
    #[error("unknown example '{0}'")]
    Unknown(String),
    #[error("example '{name}' expects {expected}")]
    Arguments {
        name: String,
        expected: &'static str,
    },
    #[error("invalid example parameters: {0}")]
    Invalid(#[from] crate::error::Error),
}

/// Resolves `name`, which may carry its integer arguments inline as in
/// `simplex(4,2)`; `extra` arguments are appended after the inline ones.
pub fn lookup(name: &str, extra: &[i64]) -> std::result::Result<FreeParamMatrix, LookupError> {
    let (base, mut args) = split_call(name)?;
    args.extend_from_slice(extra);
    let wrong = |expected| LookupError::Arguments {
        name: base.to_string(),
        expected,
    };
    match base {
        "fig2" if args.is_empty() => Ok(fig2()),
        "fig3" if args.is_empty() => Ok(fig3()),
        "smooth3" if args.is_empty() => Ok(smooth3()),
        "fig2" | "fig3" | "smooth3" => Err(wrong("no arguments")),
        "triangle" => match args[..] {
            [k] => Ok(triangle(k)?),
            _ => Err(wrong("one argument k")),
        },
        "simplex" => match args[..] {
            [d, k] if d >= 2 => Ok(simplex(d as usize, k)?),
            _ => Err(wrong("two arguments d,k with d >= 2")),
        },
        "box" => {
            if args.is_empty() {
                Err(wrong("at least one edge length"))
            } else {
                Ok(rect_box(&args)?)
            }
        }
        _ => Err(LookupError::Unknown(name.to_string())),
    }
}

fn split_call(name: &str) -> std::result::Result<(&str, Vec<i64>), LookupError> {
    let name = name.trim();
    let Some(open) = name.find('(') else {
        return Ok((name, Vec::new()));
    };
    let inner = name[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| LookupError::Unknown(name.to_string()))?;
    let args = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| LookupError::Unknown(name.to_string()))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((&name[..open], args))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents() {
        assert_eq!(
            fig3().to_document().to_json(),
            r#"{"d":4,"rows":[[1],[1,0],[2,-1,-1]]}"#
        );
        assert_eq!(
            lookup("simplex(4,2)", &[]).unwrap().to_document().to_json(),
            r#"{"d":4,"rows":[[2],[0,1],[0,0,1]]}"#
        );
        assert_eq!(
            lookup("box", &[2, 3]).unwrap().to_document().to_json(),
            r#"{"d":3,"rows":[[2],[3,0]]}"#
        );
        assert_eq!(lookup("triangle(2)", &[]).unwrap(), triangle(2).unwrap());
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(lookup("cube", &[]), Err(LookupError::Unknown(_))));
        assert!(matches!(
            lookup("simplex(4)", &[]),
            Err(LookupError::Arguments { .. })
        ));
        assert!(matches!(
            lookup("triangle(0)", &[]),
            Err(LookupError::Invalid(_))
        ));
    }
}
