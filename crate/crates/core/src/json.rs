//! JSON encodings of quivers and seeds. Integers are written as exact JSON
//! numbers of any size.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::quiver::ExchangeMatrix;
use crate::roots::{RootVector, YSeed};

/// A `BigInt` that (de)serializes as a plain JSON number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = Number::deserialize(d)?;
        BigInt::from_str(&n.to_string())
            .map(JsonInt)
            .map_err(|_| D::Error::custom(format!("expected an integer, got {n}")))
    }
}

fn wrap_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<JsonInt>> {
    rows.into_iter().map(|r| r.into_iter().map(JsonInt).collect()).collect()
}

fn unwrap_rows(rows: Vec<Vec<JsonInt>>) -> Vec<Vec<BigInt>> {
    rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect()
}

/// `{"n": 3, "b": [[0, 2, 2], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub n: usize,
    pub b: Vec<Vec<JsonInt>>,
}

impl QuiverFile {
    pub fn from_matrix(b: &ExchangeMatrix) -> Self {
        QuiverFile { n: b.rank(), b: wrap_rows(b.rows()) }
    }

    pub fn to_matrix(&self) -> Result<ExchangeMatrix> {
        if self.b.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: self.b.len() });
        }
        ExchangeMatrix::new(unwrap_rows(self.b.clone()))
    }
}

pub fn parse_quiver(text: &str) -> Result<ExchangeMatrix> {
    let q: QuiverFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    q.to_matrix()
}

/// `{"b": [[...]], "c": [[...], ...], "path": [...]}` with `c` listing the
/// c-vectors (columns of the c-matrix).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub b: Vec<Vec<JsonInt>>,
    pub c: Vec<Vec<JsonInt>>,
    pub path: Vec<usize>,
}

impl SeedRecord {
    pub fn from_seed(s: &YSeed) -> Self {
        SeedRecord {
            b: wrap_rows(s.b.rows()),
            c: wrap_rows(s.c.iter().map(|u| u.0.clone()).collect()),
            path: s.path.clone(),
        }
    }

    pub fn matrix(&self) -> Result<ExchangeMatrix> {
        ExchangeMatrix::new(unwrap_rows(self.b.clone()))
    }

    pub fn c_vectors(&self) -> Vec<RootVector> {
        unwrap_rows(self.c.clone()).into_iter().map(RootVector).collect()
    }
}

pub fn seed_to_json(s: &YSeed) -> String {
    serde_json::to_string(&SeedRecord::from_seed(s)).expect("seed records always serialize")
}

pub fn parse_seed(text: &str) -> Result<SeedRecord> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Path-independent serialization of `(B, C)`, used to detect repeated seeds.
pub fn canonical_seed_bytes(s: &YSeed) -> Vec<u8> {
    let mut rec = SeedRecord::from_seed(s);
    rec.path.clear();
    serde_json::to_vec(&(rec.b, rec.c)).expect("seed records always serialize")
}

pub fn root_to_json(u: &RootVector) -> String {
    let v: Vec<JsonInt> = u.0.iter().cloned().map(JsonInt).collect();
    serde_json::to_string(&v).expect("integers always serialize")
}

pub fn parse_root(text: &str) -> Result<RootVector> {
    let v: Vec<JsonInt> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(RootVector(v.into_iter().map(|x| x.0).collect()))
}
