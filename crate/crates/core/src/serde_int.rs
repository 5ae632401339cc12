//! Serde helpers that write [`BigInt`] as a plain JSON integer when it fits
//! in an `i64` and as a decimal string otherwise.
//!
//! Use with `#[serde(with = "hsl_core::serde_int")]` on `BigInt` fields, or the
//! [`vec`] and [`option`] submodules for containers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub(crate) struct Wrapped<'a>(pub &'a BigInt);

impl Serialize for Wrapped<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => serializer.serialize_i64(x),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

pub(crate) struct Owned(pub BigInt);

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Owned;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Owned, E> {
        Ok(Owned(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Owned, E> {
        Ok(Owned(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Owned, E> {
        v.trim()
            .parse::<BigInt>()
            .map(Owned)
            .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
    }
}

impl<'de> Deserialize<'de> for Owned {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(IntVisitor)
    }
}

pub fn serialize<S: Serializer>(x: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    Wrapped(x).serialize(serializer)
}

pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
    Owned::deserialize(deserializer).map(|o| o.0)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&Wrapped(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<Owned> = Vec::deserialize(deserializer)?;
        Ok(raw.into_iter().map(|o| o.0).collect())
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, serializer: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => serializer.serialize_some(&Wrapped(x)),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<BigInt>, D::Error> {
        let raw: Option<Owned> = Option::deserialize(deserializer)?;
        Ok(raw.map(|o| o.0))
    }
}
