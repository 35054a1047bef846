//! Serde adapters writing exact rationals as strings such as "3/2".

pub mod one {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact_core::rational::{parse_q, Q};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

pub mod vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact_core::rational::{parse_q, Q};

    pub fn serialize<S: Serializer>(x: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = x.iter().map(|q| q.to_string()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

pub mod mat {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exact_core::rational::{parse_q, Q};

    pub fn serialize<S: Serializer>(x: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Vec<String>> = x
            .iter()
            .map(|r| r.iter().map(|q| q.to_string()).collect())
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}
