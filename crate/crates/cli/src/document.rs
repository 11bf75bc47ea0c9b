//! JSON polytope documents.
//!
//! ```json
//! {"dim":2,"vertices":[[[0,1],[0,1]],[[1,1],[0,1]],[[0,1],[1,1]]],"name":"triangle"}
//! ```
//!
//! Each coordinate is a `[numerator, denominator]` pair of integers of any
//! size; denominators must be positive. The canonical form lists the hull
//! vertices only, sorted, with reduced fractions.

use std::fmt;
use std::str::FromStr;

use mvlab_core::{Polytope, Rational};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Field path such as `vertices[1][0]`, empty for syntax errors.
    pub path: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid polytope document")?;
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, " at line {l} column {c}")?;
        }
        if !self.path.is_empty() && self.path != "." {
            write!(f, " ({})", self.path)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl ParseError {
    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            path: path.into(),
            line: None,
            column: None,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coord {
    pub num: BigInt,
    pub den: BigInt,
}

impl Coord {
    pub fn value(&self) -> Rational {
        Rational::new(self.num.clone(), self.den.clone())
    }

    pub fn from_rational(x: &Rational) -> Self {
        Coord {
            num: x.numer().clone(),
            den: x.denom().clone(),
        }
    }
}

/// JSON integer of arbitrary size.
pub fn integer_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

/// `[numerator, denominator]`, reduced.
pub fn rational_json(x: &Rational) -> Value {
    Value::Array(vec![integer_json(x.numer()), integer_json(x.denom())])
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&integer_json(&self.num))?;
        t.serialize_element(&integer_json(&self.den))?;
        t.end()
    }
}

fn parse_integer<E: de::Error>(n: &Number) -> Result<BigInt, E> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| E::custom(format!("expected an integer, found {n}")))
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CoordVisitor;
        impl<'de> Visitor<'de> for CoordVisitor {
            type Value = Coord;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [numerator, denominator] integer pair")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Coord, A::Error> {
                let num: Number = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let den: Number = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                let num = parse_integer(&num)?;
                let den = parse_integer(&den)?;
                if !den.is_positive() {
                    return Err(de::Error::custom(format!(
                        "denominator must be positive, found {den}"
                    )));
                }
                Ok(Coord { num, den })
            }
        }
        d.deserialize_seq(CoordVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub dim: usize,
    pub vertices: Vec<Vec<Coord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PolytopeDocument {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let message = inner.to_string();
            // drop serde_json's own position suffix; it is reported separately
            let message = match message.rfind(" at line ") {
                Some(i) => message[..i].to_string(),
                None => message,
            };
            ParseError {
                path,
                line: Some(inner.line()),
                column: Some(inner.column()),
                message,
            }
        })
    }

    pub fn to_polytope(&self) -> Result<Polytope, ParseError> {
        if self.dim == 0 {
            return Err(ParseError::field("dim", "dimension must be positive"));
        }
        if self.vertices.is_empty() {
            return Err(ParseError::field(
                "vertices",
                "at least one vertex is required",
            ));
        }
        let mut points = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != self.dim {
                return Err(ParseError::field(
                    format!("vertices[{i}]"),
                    format!("expected {} coordinates, found {}", self.dim, v.len()),
                ));
            }
            points.push(v.iter().map(Coord::value).collect());
        }
        Polytope::from_points(self.dim, points)
            .map_err(|e| ParseError::field("vertices", e.to_string()))
    }

    pub fn from_polytope(p: &Polytope, name: Option<String>) -> Self {
        PolytopeDocument {
            dim: p.dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.iter().map(Coord::from_rational).collect())
                .collect(),
            name,
        }
    }

    /// Hull vertices, sorted, reduced; the name is kept.
    pub fn canonicalize(&self) -> Result<Self, ParseError> {
        Ok(Self::from_polytope(&self.to_polytope()?, self.name.clone()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("documents always serialize")
    }
}

pub fn parse_polytope(text: &str) -> Result<Polytope, ParseError> {
    PolytopeDocument::from_json(text)?.to_polytope()
}

pub fn serialize_polytope(p: &Polytope) -> String {
    PolytopeDocument::from_polytope(p, None).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use mvlab_core::generate::{regular_polygon, simplex};
    use mvlab_core::q;

    const TRIANGLE: &str = r#"{"dim":2,"vertices":[[[0,1],[0,1]],[[1,1],[0,1]],[[0,1],[1,1]]]}"#;

    #[test]
    fn parses_triangle() {
        assert_eq!(parse_polytope(TRIANGLE).unwrap(), simplex(2).unwrap());
    }

    #[test]
    fn canonical_round_trip() {
        let messy = r#"{"dim":2,"name":"t","vertices":[[[2,2],[0,5]],[[0,1],[3,3]],[[0,1],[0,1]],[[1,4],[1,4]]]}"#;
        let doc = PolytopeDocument::from_json(messy).unwrap();
        let canon = doc.canonicalize().unwrap();
        assert_eq!(canon.name.as_deref(), Some("t"));
        let text = canon.to_json();
        assert_eq!(
            text,
            r#"{"dim":2,"vertices":[[[0,1],[0,1]],[[0,1],[1,1]],[[1,1],[0,1]]],"name":"t"}"#
        );
        assert_eq!(PolytopeDocument::from_json(&text).unwrap(), canon);
        assert_eq!(
            serialize_polytope(&parse_polytope(&text).unwrap()),
            serialize_polytope(&doc.to_polytope().unwrap())
        );
    }

    #[test]
    fn big_integers_survive() {
        let p = regular_polygon(64, 1_000_000)
            .unwrap()
            .scale(&q(1, 7))
            .scale(&Rational::new(BigInt::from(10).pow(30), BigInt::from(3)));
        assert_eq!(parse_polytope(&serialize_polytope(&p)).unwrap(), p);
    }

    #[test]
    fn zero_denominator_is_reported_with_position() {
        let text = "{\"dim\":2,\n\"vertices\":[[[0,1],[0,1]],\n[[1,0],[0,1]]]}";
        let err = parse_polytope(text).unwrap_err();
        assert_eq!(err.line, Some(3));
        assert_eq!(err.path, "vertices[1][0]");
        assert!(err.message.contains("denominator"), "{err}");
    }

    #[test]
    fn other_errors() {
        let e = parse_polytope(r#"{"dim":2,"vertices":[[[0,1]]]}"#).unwrap_err();
        assert_eq!(e.path, "vertices[0]");
        let e = parse_polytope(r#"{"dim":2,"vertices":[[[0.5,1],[0,1]]]}"#).unwrap_err();
        assert!(e.message.contains("integer"), "{e}");
        let e = parse_polytope(r#"{"dim":2,"vertices":[]}"#).unwrap_err();
        assert_eq!(e.path, "vertices");
        assert!(parse_polytope(r#"{"dim":2,"vertices":[[[0,1],[0,1]]], "extra":1}"#).is_err());
        assert!(parse_polytope("{\"dim\":2,").unwrap_err().line.is_some());
    }
}
