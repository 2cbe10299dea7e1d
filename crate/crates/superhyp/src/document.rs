//! JSON documents holding three vertices (a triangle or an ideal triple).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::MAX_GENERATORS;
use crate::scalar::Scalar;
use crate::superlinalg::{SuperPoint, SuperPointJson};

/// `{"generators": N, "vertices": [p, q, r], "labels": [..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleDocument {
    pub generators: usize,
    pub vertices: Vec<SuperPointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl TriangleDocument {
    /// Encodes three points.
    pub fn from_points<T: Scalar>(points: &[SuperPoint<T>; 3]) -> Self {
        Self { generators: points[0].num_generators(), vertices: points.iter().map(SuperPoint::to_json).collect(), labels: None }
    }

    /// Parses a document from JSON text.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    /// Decodes the three vertices, validating indices and parities.
    pub fn points<T: Scalar>(&self) -> Result<[SuperPoint<T>; 3]> {
        if self.generators == 0 || self.generators > MAX_GENERATORS {
            return Err(Error::InvalidDocument(format!("generators must be in 1..={MAX_GENERATORS}")));
        }
        if self.vertices.len() != 3 {
            return Err(Error::InvalidDocument(format!("expected 3 vertices, got {}", self.vertices.len())));
        }
        Ok([
            SuperPoint::from_json(&self.vertices[0], self.generators)?,
            SuperPoint::from_json(&self.vertices[1], self.generators)?,
            SuperPoint::from_json(&self.vertices[2], self.generators)?,
        ])
    }

    /// Decodes three points of `IH` (each `⟨x,x⟩ = 1` within `tol`).
    pub fn triangle<T: Scalar>(&self, tol: T) -> Result<[SuperPoint<T>; 3]> {
        let pts = self.points::<T>()?;
        for p in &pts {
            p.check_ih(tol)?;
        }
        Ok(pts)
    }

    /// Decodes three points of the positive light cone (within `tol`).
    pub fn light_cone<T: Scalar>(&self, tol: T) -> Result<[SuperPoint<T>; 3]> {
        let pts = self.points::<T>()?;
        for p in &pts {
            p.check_light_cone(tol)?;
        }
        Ok(pts)
    }
}
