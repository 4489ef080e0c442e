//! Serde helpers for arbitrary-precision integers: plain JSON numbers up to
//! 2^53 in magnitude, decimal strings beyond.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const SAFE: u64 = 1 << 53;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumOrStr {
    I(i64),
    U(u64),
    S(String),
}

fn to_repr(v: &BigInt) -> NumOrStr {
    match i64::try_from(v) {
        Ok(x) if x.unsigned_abs() <= SAFE => NumOrStr::I(x),
        _ => NumOrStr::S(v.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: NumOrStr) -> Result<BigInt, E> {
    match r {
        NumOrStr::I(x) => Ok(x.into()),
        NumOrStr::U(x) => Ok(x.into()),
        NumOrStr::S(s) => s
            .parse()
            .map_err(|_| E::custom(format!("bad integer {s:?}"))),
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_repr(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_repr(NumOrStr::deserialize(d)?)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<NumOrStr>::deserialize(d)?
            .into_iter()
            .map(from_repr)
            .collect()
    }
}

pub mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        to_repr(&BigInt::from(v.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let v = from_repr::<D::Error>(NumOrStr::deserialize(d)?)?;
        v.to_biguint()
            .ok_or_else(|| serde::de::Error::custom("expected a nonnegative integer"))
    }
}

pub mod biguint_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| to_repr(&BigInt::from(v.clone())))
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<NumOrStr>::deserialize(d)?
            .map(|r| {
                from_repr::<D::Error>(r)?
                    .to_biguint()
                    .ok_or_else(|| serde::de::Error::custom("expected a nonnegative integer"))
            })
            .transpose()
    }
}
