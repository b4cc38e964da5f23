//! Free-parameter matrices and their JSON form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer carried through JSON as an exact number literal of any size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n =
            serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        let text = n.to_string();
        BigInt::from_str(&text)
            .map(JsonInt)
            .map_err(|_| D::Error::custom(format!("expected an integer, found {text}")))
    }
}

impl From<BigInt> for JsonInt {
    fn from(x: BigInt) -> Self {
        JsonInt(x)
    }
}

pub(crate) fn to_json_ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

/// Serialized parameter matrix: row `i` lists only the free entries
/// `m_{i,1..i}`, so structural zeros cannot be mis-specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub d: usize,
    pub rows: Vec<Vec<JsonInt>>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("input document serializes")
    }

    pub fn into_params(self) -> Result<FreeParamMatrix> {
        let rows = self
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        FreeParamMatrix::new(self.d, rows)
    }
}

/// Admissible-shaped parameter sequence `m_1, ..., m_{d-1}`.
///
/// `rows[i - 1]` stores the free entries of `m_i`; `full` keeps the complete
/// covectors of length `d` with structural zeros in columns `> i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeParamMatrix {
    d: usize,
    rows: Vec<Vec<BigInt>>,
    full: Vec<Vec<BigInt>>,
}

/// Checks the structural invariants of a ragged row list for dimension `d`.
pub fn validate_structure(d: usize, rows: &[Vec<BigInt>]) -> Result<()> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if rows.len() != d - 1 {
        return Err(Error::BadShape {
            row: rows.len().min(d - 1) + 1,
            expected: d - 1,
            found: rows.len(),
        });
    }
    for (idx, row) in rows.iter().enumerate() {
        let i = idx + 1;
        if row.len() != i {
            return Err(Error::BadShape {
                row: i,
                expected: i,
                found: row.len(),
            });
        }
    }
    for (idx, row) in rows.iter().enumerate() {
        if row.iter().all(Zero::is_zero) {
            return Err(Error::ZeroRow(idx + 1));
        }
    }
    if rows[0][0] < BigInt::one() {
        return Err(Error::NonPositiveLead(rows[0][0].clone()));
    }
    Ok(())
}

impl FreeParamMatrix {
    pub fn new(d: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        validate_structure(d, &rows)?;
        let full = rows
            .iter()
            .map(|r| {
                let mut f = r.clone();
                f.resize(d, BigInt::zero());
                f
            })
            .collect();
        Ok(Self { d, rows, full })
    }

    /// Dimension inferred from the number of rows.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(rows.len() + 1, rows)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Free entries of every row.
    pub fn free_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// The full covector `m_i` of length `d` (1-based `i`).
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.full[i - 1]
    }

    /// Entry `m_{i,j}` with 1-based indices, zero whenever `j > i`.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.full[i - 1][j - 1]
    }

    /// The `(d-1) x d` matrix with structural zeros.
    pub fn full_rows(&self) -> &[Vec<BigInt>] {
        &self.full
    }

    pub fn to_document(&self) -> InputDocument {
        InputDocument {
            d: self.d,
            rows: self.rows.iter().map(|r| to_json_ints(r)).collect(),
        }
    }

    /// Drops the last row, giving the parameter matrix one level down.
    pub fn truncated(&self) -> Option<Self> {
        if self.d <= 2 {
            return None;
        }
        Self::new(self.d - 1, self.rows[..self.d - 2].to_vec()).ok()
    }
}

impl fmt::Debug for FreeParamMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeParamMatrix(d={}, rows={})", self.d, self)
    }
}

impl fmt::Display for FreeParamMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let items: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", items.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for FreeParamMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(serializer)
    }
}

/// A choice `eps = (eps_1, ..., eps_len)` of zeros and ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EpsilonChoice(Vec<u8>);

impl EpsilonChoice {
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "epsilon bits must be 0 or 1");
        Self(bits)
    }

    /// Bit `i - 1` of `index` becomes `eps_i`.
    pub fn from_index(len: usize, index: usize) -> Self {
        Self((0..len).map(|i| ((index >> i) & 1) as u8).collect())
    }

    /// All `2^len` choices, ordered by `from_index`.
    pub fn all(len: usize) -> impl Iterator<Item = EpsilonChoice> {
        (0..1usize << len).map(move |idx| Self::from_index(len, idx))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// `eps_i` with a 1-based index; positions past the end read as zero.
    pub fn get(&self, i: usize) -> u8 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn is_set(&self, i: usize) -> bool {
        self.get(i) == 1
    }

    pub fn with_pushed(&self, bit: u8) -> Self {
        let mut bits = self.0.clone();
        bits.push(bit);
        Self::new(bits)
    }
}
