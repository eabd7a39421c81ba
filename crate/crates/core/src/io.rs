//! Text and JSON encodings shared by the library and the command line.

use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{GaussRat, Rational, C};

/// Parses an exact scalar in the `p/q+r/si` encoding.
pub fn parse_scalar(s: &str) -> Result<C> {
    s.trim().parse()
}

/// Parses a real rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let c = parse_scalar(s)?;
    if !c.is_real() {
        return Err(Error::Parse(format!("expected a real number, got {s}")));
    }
    Ok(c.re)
}

pub fn parse_cmatrix(s: &str) -> Result<Matrix<C>> {
    Matrix::parse_literal(s)
}

pub fn parse_rmatrix(s: &str) -> Result<Matrix<Rational>> {
    let m = parse_cmatrix(s)?;
    if !m.row_vecs().iter().flatten().all(|x| x.is_real()) {
        return Err(Error::Parse("expected a real matrix".into()));
    }
    Ok(m.map(|x| x.re.clone()))
}

pub fn format_rmatrix(m: &Matrix<Rational>) -> String {
    m.map(|x| GaussRat::real(x.clone())).to_string()
}

pub fn format_rvec(v: &[Rational]) -> String {
    v.iter().map(|x| GaussRat::real(x.clone()).to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_rvec(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(parse_rational).collect()
}

/// Converts a JSON error into a parse error of the form `line L column C: message`.
pub fn json_error(e: serde_json::Error) -> Error {
    let text = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    let msg = text.strip_suffix(&suffix).unwrap_or(&text);
    Error::Parse(format!("line {} column {}: {msg}", e.line(), e.column()))
}

/// Serde adapter: complex matrices as matrix literals.
pub mod cmatrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix<C>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&m.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix<C>, D::Error> {
        let s = String::deserialize(d)?;
        parse_cmatrix(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: real matrices as matrix literals.
pub mod rmatrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rmatrix(m))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix<Rational>, D::Error> {
        let s = String::deserialize(d)?;
        parse_rmatrix(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: real vectors as comma-separated scalars.
pub mod rvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rvec(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let s = String::deserialize(d)?;
        parse_rvec(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a single exact scalar.
pub mod scalar {
    use super::*;

    pub fn serialize<S: Serializer>(c: &C, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&c.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<C, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

/// JSON record of an affine Lagrangian relation: the canonical augmented
/// system `[S | a]` as a matrix literal, absent for the empty relation.
#[derive(Clone, Debug, PartialEq, serde::Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRecord {
    pub inputs: usize,
    pub outputs: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
}

impl RelationRecord {
    pub fn of(rel: &crate::lagrangian::LagRel) -> Self {
        let system = rel.relation().system().map(|(s, a)| {
            if s.rows() == 0 {
                String::new()
            } else {
                Matrix::hstack(&[s, &Matrix::column_vector(a)]).expect("rows agree").to_string()
            }
        });
        RelationRecord { inputs: rel.n_in(), outputs: rel.n_out(), system }
    }

    pub fn to_relation(&self) -> Result<crate::lagrangian::LagRel> {
        use crate::lagrangian::LagRel;
        let w = 2 * (self.inputs + self.outputs);
        let Some(text) = &self.system else {
            return Ok(LagRel::empty(self.inputs, self.outputs));
        };
        if text.trim().is_empty() {
            return LagRel::from_constraints(self.inputs, self.outputs, &Matrix::zeros(0, w), &[]);
        }
        let aug = parse_cmatrix(text)?;
        if aug.cols() != w + 1 {
            return Err(Error::DimensionMismatch(format!("system has {} columns, expected {}", aug.cols(), w + 1)));
        }
        let s = aug.select_cols(&(0..w).collect::<Vec<_>>());
        LagRel::from_constraints(self.inputs, self.outputs, &s, &aug.column(w))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lagrangian::{vacuum, LagRel};

    #[test]
    fn relation_record_round_trip() {
        for r in [vacuum(), LagRel::identity(2), LagRel::empty(1, 0), LagRel::identity(0)] {
            let rec = RelationRecord::of(&r);
            let back = RelationRecord::from_json(&rec.to_json()).unwrap();
            assert_eq!(back.to_relation().unwrap(), r);
        }
        assert!(matches!(RelationRecord::from_json("{\"inputs\": 1,"), Err(Error::Parse(_))));
    }
}
