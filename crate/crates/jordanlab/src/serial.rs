//! Versioned JSON documents for rings, geometries, points, maps, pairs,
//! ternary tables and reports.
//!
//! ```
//! use jordanlab::rings::Ring;
//! use jordanlab::serial::{deserialize, serialize};
//!
//! let r: Ring = "Weil:Fp:3[e^2]".parse().unwrap();
//! let doc = serialize(&r);
//! assert_eq!(deserialize::<Ring>(&doc).unwrap(), r);
//! ```

use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::geometry::{Geometry, GrasPoint, ProjectiveMap};
use crate::linalg::Matrix;
use crate::report::{CheckReport, SCHEMA_VERSION};
use crate::rings::Ring;
use crate::tangent::{PairJson, QuadraticJordanPair};
use crate::torsor::TernaryTable;

#[derive(Debug, thiserror::Error)]
pub enum SerialError {
    #[error("schema version {0} is not supported (expected {SCHEMA_VERSION})")]
    Version(u32),
    #[error("expected a `{expected}` document, found `{found}`")]
    Kind { expected: String, found: String },
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn invalid(e: impl std::fmt::Display) -> SerialError {
    SerialError::Invalid(e.to_string())
}

#[derive(Serialize, Deserialize)]
struct Document {
    schema_version: u32,
    kind: String,
    body: Json,
}

/// A type with a JSON document form.
pub trait Entity: Sized {
    const KIND: &'static str;
    fn to_body(&self) -> Json;
    fn from_body(body: Json) -> Result<Self, SerialError>;
}

pub fn serialize<E: Entity>(e: &E) -> String {
    let doc = Document { schema_version: SCHEMA_VERSION, kind: E::KIND.into(), body: e.to_body() };
    serde_json::to_string_pretty(&doc).expect("document serializes")
}

pub fn deserialize<E: Entity>(s: &str) -> Result<E, SerialError> {
    let doc: Document = serde_json::from_str(s)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(SerialError::Version(doc.schema_version));
    }
    if doc.kind != E::KIND {
        return Err(SerialError::Kind { expected: E::KIND.into(), found: doc.kind });
    }
    E::from_body(doc.body)
}

fn descriptor(body: &Json, key: &str) -> Result<String, SerialError> {
    body.get(key).and_then(Json::as_str).map(str::to_string).ok_or_else(|| invalid(format!("missing `{key}`")))
}

fn matrix(ring: &Ring, body: &Json, key: &str) -> Result<Matrix, SerialError> {
    let rows: Vec<Vec<String>> = serde_json::from_value(body.get(key).cloned().ok_or_else(|| invalid(format!("missing `{key}`")))?)?;
    Matrix::parse(ring, &rows).map_err(invalid)
}

impl Entity for Ring {
    const KIND: &'static str = "ring";
    fn to_body(&self) -> Json {
        json!({ "ring": self.to_string() })
    }
    fn from_body(body: Json) -> Result<Self, SerialError> {
        descriptor(&body, "ring")?.parse().map_err(invalid)
    }
}

impl Entity for Geometry {
    const KIND: &'static str = "geometry";
    fn to_body(&self) -> Json {
        json!({ "geometry": self.to_string() })
    }
    fn from_body(body: Json) -> Result<Self, SerialError> {
        descriptor(&body, "geometry")?.parse().map_err(invalid)
    }
}

/// A point together with the geometry it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointDoc {
    pub geometry: Geometry,
    pub point: GrasPoint,
}

impl Entity for PointDoc {
    const KIND: &'static str = "point";
    fn to_body(&self) -> Json {
        json!({ "geometry": self.geometry.to_string(), "basis": self.point.basis().to_strings() })
    }
    fn from_body(body: Json) -> Result<Self, SerialError> {
        let geometry: Geometry = descriptor(&body, "geometry")?.parse().map_err(invalid)?;
        let m = matrix(geometry.ring(), &body, "basis")?;
        let point = if m.cols() == 0 { geometry.zero_point() } else { geometry.point(&m).map_err(invalid)? };
        Ok(PointDoc { geometry, point })
    }
}

impl Entity for ProjectiveMap {
    const KIND: &'static str = "map";
    fn to_body(&self) -> Json {
        json!({ "ring": self.matrix().ring().to_string(), "matrix": self.matrix().to_strings() })
    }
    fn from_body(body: Json) -> Result<Self, SerialError> {
        let ring: Ring = descriptor(&body, "ring")?.parse().map_err(invalid)?;
        ProjectiveMap::new(matrix(&ring, &body, "matrix")?).map_err(invalid)
    }
}

impl Entity for QuadraticJordanPair {
    const KIND: &'static str = "pair";
    fn to_body(&self) -> Json {
        serde_json::to_value(self.to_json()).expect("pair serializes")
    }
    fn from_body(body: Json) -> Result<Self, SerialError> {
        let j: PairJson = serde_json::from_value(body)?;
        QuadraticJordanPair::from_json(&j).map_err(invalid)
    }
}

impl Entity for TernaryTable {
    const KIND: &'static str = "ternary-table";
    fn to_body(&self) -> Json {
        serde_json::from_str(&self.to_json()).expect("table serializes")
    }
    fn from_body(body: Json) -> Result<Self, SerialError> {
        TernaryTable::from_json(&body.to_string()).map_err(invalid)
    }
}

impl Entity for CheckReport {
    const KIND: &'static str = "report";
    fn to_body(&self) -> Json {
        serde_json::to_value(self).expect("report serializes")
    }
    fn from_body(body: Json) -> Result<Self, SerialError> {
        CheckReport::from_json(&body.to_string()).map_err(invalid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn version_and_kind_are_checked() {
        let doc = serialize(&"Q".parse::<Ring>().unwrap());
        let bumped = doc.replace("\"schema_version\": 1", "\"schema_version\": 2");
        assert!(matches!(deserialize::<Ring>(&bumped), Err(SerialError::Version(2))));
        assert!(matches!(deserialize::<Geometry>(&doc), Err(SerialError::Kind { .. })));
    }
}
