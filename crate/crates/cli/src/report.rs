//! Report types. Field order is declaration order, so output is stable.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest integer a double represents exactly.
const SAFE: i64 = (1 << 53) - 1;

/// Exact integer: a JSON number inside ±(2⁵³ − 1), a decimal string outside.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(x: BigInt) -> Self {
        Int(x)
    }
}

impl From<&BigInt> for Int {
    fn from(x: &BigInt) -> Self {
        Int(x.clone())
    }
}

impl From<i64> for Int {
    fn from(x: i64) -> Self {
        Int(BigInt::from(x))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if (-SAFE..=SAFE).contains(&x) => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> Result<Int, E> {
                Ok(Int::from(x))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> Result<Int, E> {
                Ok(Int(BigInt::from(x)))
            }

            fn visit_str<E: de::Error>(self, x: &str) -> Result<Int, E> {
                x.parse().map(Int).map_err(|_| E::custom(format!("not an integer: {x:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn ints<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Vec<Int> {
    xs.into_iter().map(Int::from).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub model: Option<ModelEcho>,
    pub records: Vec<Record>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEcho {
    pub source: String,
    pub name: String,
    pub genus: u32,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub op: String,
    pub input: serde_json::Value,
    pub result: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Outcome {
    Model(ModelBlock),
    FibreSum(FibreSumRecord),
    Canonical(CanonicalRecord),
    BasicClasses(BasicClassRecord),
    Mst(MstRecord),
    Obstruction(ObstructionRecord),
    Pencil(PencilRecord),
    Classification(Classification),
    Selftest(SelftestRecord),
}

/// Basis-independent numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Invariants {
    pub euler: i64,
    pub sigma: i64,
    pub b2: i64,
    pub b2plus: i64,
    pub b2minus: i64,
    pub parity: String,
    pub spin: bool,
    pub form: Option<String>,
    pub genus: u32,
    pub singular_fibres: i64,
    pub k_dot_fibre: Int,
    pub k_dot_section: Int,
    pub section_square: Int,
    pub k_squared: Int,
    pub canonical_divisibility: Int,
    /// `c` when `K = c·Σ`.
    pub canonical_fibre_multiple: Option<Int>,
}

/// Coordinates of the distinguished classes in the model's basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Classes {
    pub canonical: Vec<Int>,
    pub fibre: Vec<Int>,
    pub section: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBlock {
    pub name: String,
    pub invariants: Invariants,
    pub classes: Classes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramMatrix {
    pub rank: usize,
    pub rows: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreSumRecord {
    pub model: ModelBlock,
    pub summand_count: usize,
    pub gluing: Vec<i64>,
    pub s_squares: Vec<i64>,
    pub labels: Vec<String>,
    pub gram: Option<GramMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalRecord {
    pub k_x: Vec<Int>,
    pub kbar_m: Vec<Int>,
    pub kbar_n: Vec<Int>,
    pub r: Vec<Int>,
    pub b_x: Int,
    pub sigma_x: Int,
    pub d: Int,
    pub divisibility_formula: Int,
    pub divisibility_direct: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub class: Vec<Int>,
    pub sw: i64,
    pub fibre_pairing: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicClassRecord {
    pub scope: String,
    pub sign_convention: String,
    pub negation_sign: i64,
    pub count: usize,
    pub classes: Vec<ClassEntry>,
    pub max_fibre_pairing: Vec<ClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MstRow {
    pub class: Vec<Int>,
    pub beta_x: Int,
    pub is_canonical: bool,
    pub mst: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MstRecord {
    pub n: usize,
    pub note: String,
    pub candidates: Vec<MstRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionRecord {
    pub verdict: String,
    pub obstructed: bool,
    pub d: u64,
    pub a: u64,
    pub n: u64,
    pub genus: Option<u32>,
    pub witness_m: Option<u64>,
    pub m_used: u64,
    pub div_untwisted: Int,
    pub div_twisted: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilRecord {
    pub d: u64,
    pub s: u64,
    pub k: u64,
    pub s0: u64,
    pub k0: u64,
    pub genus: Option<Int>,
    pub degree: Option<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Classification {
    pub parity: String,
    pub rank: usize,
    pub signature: i64,
    pub decomposition: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelftestRecord {
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        let big = Int(BigInt::from(1u64 << 53));
        assert_eq!(serde_json::to_string(&big).unwrap(), "\"9007199254740992\"");
        let edge = Int::from(SAFE);
        assert_eq!(serde_json::to_string(&edge).unwrap(), "9007199254740991");
        let neg = Int::from(-SAFE - 1);
        assert_eq!(serde_json::to_string(&neg).unwrap(), "\"-9007199254740992\"");
        for x in [big, edge, neg] {
            let back: Int = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            assert_eq!(back, x);
        }
    }
}
