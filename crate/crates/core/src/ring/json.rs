//! JSON encoding of ring descriptors and elements.
//!
//! Integers and residues are decimal strings, rationals are `"p/q"`, product
//! elements are 2-arrays and polynomials are objects mapping a
//! comma-separated exponent vector (`"2,0"`) to a coefficient. Decoding also
//! accepts plain JSON integers and `"p"` for rationals.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use super::{Elem, Poly, Ring};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Decimal {
    Text(String),
    Number(u64),
}

#[derive(Serialize, Deserialize)]
enum RingRepr {
    Integer,
    Rational,
    IntegersMod(Decimal),
    Product(Box<RingRepr>, Box<RingRepr>),
    Polynomial { base: Box<RingRepr>, variables: Vec<String> },
}

impl RingRepr {
    fn from_ring(r: &Ring) -> RingRepr {
        match r {
            Ring::Integer => RingRepr::Integer,
            Ring::Rational => RingRepr::Rational,
            Ring::IntegersMod(m) => RingRepr::IntegersMod(Decimal::Text(m.to_string())),
            Ring::Product(l, r) => {
                RingRepr::Product(Box::new(Self::from_ring(l)), Box::new(Self::from_ring(r)))
            }
            Ring::Polynomial(p) => RingRepr::Polynomial {
                base: Box::new(Self::from_ring(p.base())),
                variables: p.vars().to_vec(),
            },
        }
    }

    fn into_ring(self) -> Result<Ring> {
        match self {
            RingRepr::Integer => Ok(Ring::Integer),
            RingRepr::Rational => Ok(Ring::Rational),
            RingRepr::IntegersMod(d) => {
                let m = match d {
                    Decimal::Text(s) => BigUint::from_str(s.trim())
                        .map_err(|_| Error::Decode(format!("invalid modulus {s:?}")))?,
                    Decimal::Number(n) => BigUint::from(n),
                };
                Ring::integers_mod(m)
            }
            RingRepr::Product(l, r) => Ok(Ring::product(l.into_ring()?, r.into_ring()?)),
            RingRepr::Polynomial { base, variables } => {
                Ring::polynomial(base.into_ring()?, variables)
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingRepr::from_ring(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ring, D::Error> {
        RingRepr::deserialize(d)?.into_ring().map_err(serde::de::Error::custom)
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Decode(format!("invalid integer {s:?}")))
}

fn json_integer(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => parse_bigint(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_bigint(&n.to_string()),
        _ => Err(Error::Decode(format!("expected integer, found {v}"))),
    }
}

impl Ring {
    /// Decodes an element of this ring from JSON.
    pub fn decode(&self, v: &Value) -> Result<Elem> {
        match self {
            Ring::Integer | Ring::IntegersMod(_) => Ok(self.from_int(&json_integer(v)?)),
            Ring::Rational => match v {
                Value::String(s) => self.parse_scalar(s),
                _ => Ok(self.from_int(&json_integer(v)?)),
            },
            Ring::Product(l, r) => match v {
                Value::Array(xs) if xs.len() == 2 => Ok(Elem::pair(l.decode(&xs[0])?, r.decode(&xs[1])?)),
                _ => Err(Error::Decode(format!("expected a 2-array for {self}, found {v}"))),
            },
            Ring::Polynomial(pr) => {
                let Value::Object(map) = v else {
                    return Err(Error::Decode(format!("expected a coefficient map for {self}, found {v}")));
                };
                let mut terms = Vec::with_capacity(map.len());
                for (key, coef) in map {
                    let exps = key
                        .split(',')
                        .map(|e| {
                            e.trim()
                                .parse::<u32>()
                                .map_err(|_| Error::Decode(format!("invalid exponent vector {key:?}")))
                        })
                        .collect::<Result<Vec<u32>>>()?;
                    terms.push((exps, pr.base().decode(coef)?));
                }
                Ok(Elem::Poly(Poly::from_terms(pr, terms)?))
            }
        }
    }

    /// Parses a scalar token such as `"5"` or `"-1/2"`. Only integer,
    /// rational and modular rings have a scalar text form.
    pub fn parse_scalar(&self, s: &str) -> Result<Elem> {
        match self {
            Ring::Integer | Ring::IntegersMod(_) => Ok(self.from_int(&parse_bigint(s)?)),
            Ring::Rational => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (parse_bigint(n)?, parse_bigint(d)?),
                    None => (parse_bigint(s)?, BigInt::from(1)),
                };
                if d.is_zero() {
                    return Err(Error::Decode(format!("zero denominator in {s:?}")));
                }
                Ok(Elem::Rat(BigRational::new(n, d)))
            }
            _ => Err(Error::Decode(format!("no scalar text form for {self}"))),
        }
    }
}

impl Elem {
    pub fn to_json(&self) -> Value {
        match self {
            Elem::Int(a) => Value::String(a.to_string()),
            Elem::Rat(a) => Value::String(format!("{}/{}", a.numer(), a.denom())),
            Elem::Mod(a) => Value::String(a.value().to_string()),
            Elem::Pair(p) => Value::Array(vec![p.0.to_json(), p.1.to_json()]),
            Elem::Poly(p) => {
                let map: Map<String, Value> = p
                    .terms()
                    .map(|(e, c)| {
                        let key = e.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                        (key, c.to_json())
                    })
                    .collect();
                Value::Object(map)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn ring_descriptor_round_trip() {
        let r = Ring::polynomial(
            Ring::product(Ring::integers_mod(7u32).unwrap(), Ring::Rational),
            ["T", "U"],
        )
        .unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            json!({"Polynomial": {"base": {"Product": [{"IntegersMod": "7"}, "Rational"]}, "variables": ["T", "U"]}})
        );
        let back: Ring = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn invalid_ring_rejected_at_decode() {
        assert!(serde_json::from_value::<Ring>(json!({"IntegersMod": "1"})).is_err());
        assert!(serde_json::from_value::<Ring>(json!({"IntegersMod": 97})).is_ok());
    }

    #[test]
    fn unbounded_integers_are_bit_exact() {
        let big = "123456789012345678901234567890123456789";
        let x = Ring::Integer.decode(&json!(big)).unwrap();
        assert_eq!(x.to_json(), json!(big));
    }

    #[test]
    fn rationals_encode_as_fractions() {
        let x = Ring::Rational.decode(&json!("6/-4")).unwrap();
        assert_eq!(x.to_json(), json!("-3/2"));
        assert_eq!(Ring::Rational.decode(&json!(5)).unwrap().to_json(), json!("5/1"));
        assert!(Ring::Rational.decode(&json!("1/0")).is_err());
    }

    #[test]
    fn residues_canonicalized() {
        let r = Ring::integers_mod(7u32).unwrap();
        assert_eq!(r.decode(&json!("-1")).unwrap().to_json(), json!("6"));
    }

    #[test]
    fn polynomial_maps() {
        let r = Ring::polynomial(Ring::Integer, ["T", "U"]).unwrap();
        let x = r.decode(&json!({"2,0": "1", "0,1": "1", "1,1": "0"})).unwrap();
        assert_eq!(x.to_string(), "U + T^2");
        assert_eq!(x.to_json(), json!({"0,1": "1", "2,0": "1"}));
        assert!(r.decode(&json!({"1": "1"})).is_err());
    }

    #[test]
    fn product_pairs() {
        let r = Ring::product(Ring::Integer, Ring::Integer);
        let x = r.decode(&json!(["1", 3])).unwrap();
        assert_eq!(x, Elem::pair(Elem::int(1), Elem::int(3)));
        assert!(r.decode(&json!(["1"])).is_err());
    }
}
