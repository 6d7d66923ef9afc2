//! Serde helpers that write wide integers as decimal strings, so JSON
//! consumers with 53-bit numbers never lose precision.

macro_rules! dec_string {
    ($name:ident, $ty:ty) => {
        pub mod $name {
            use serde::{de::Error, Deserialize, Deserializer, Serializer};

            pub fn serialize<S: Serializer>(v: &$ty, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(v)
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<$ty, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(D::Error::custom)
            }
        }
    };
}

dec_string!(u128, u128);
dec_string!(i128, i128);
dec_string!(bigint, num_bigint::BigInt);
