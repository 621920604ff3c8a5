//! Simple convex polytopes given by half-spaces `⟨μ, X_j⟩ ≥ λ_j`.

mod lattice;
mod vertices;

pub use lattice::{build_face_lattice, edge_generators, FVector, Face, FaceId, FaceLattice, VertexEdge};
pub use vertices::{check_simple, enumerate_vertices, find_vertices, Vertex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::scalar::{FieldSpec, Scalar, ScalarText};

/// The constraint `⟨μ, normal⟩ ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

impl HalfSpace {
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Self {
        HalfSpace { normal, offset }
    }

    /// `⟨μ, X⟩ − λ`; non-negative exactly on the half-space.
    pub fn slack(&self, mu: &[Scalar]) -> Scalar {
        dot(mu, &self.normal) - &self.offset
    }
}

/// A half-space description of a polytope in an `m`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    m: usize,
    field: FieldSpec,
    halfspaces: Vec<HalfSpace>,
}

impl HRep {
    pub fn new(m: usize, field: FieldSpec, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        for (j, h) in halfspaces.iter().enumerate() {
            if h.normal.len() != m {
                return Err(Error::Dimension(format!(
                    "half-space {j} has a normal of length {}, expected {m}",
                    h.normal.len()
                )));
            }
            if h.normal.iter().all(Scalar::is_zero) {
                return Err(Error::Dimension(format!("half-space {j} has a zero normal")));
            }
            if let Some(x) = h
                .normal
                .iter()
                .chain(std::iter::once(&h.offset))
                .find(|x| !field.admits(x.field()))
            {
                return Err(Error::FieldMismatch(field.radicand(), x.field().radicand()));
            }
        }
        Ok(HRep { m, field, halfspaces })
    }

    /// Ambient dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of half-spaces.
    pub fn d(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn normals(&self) -> Vec<Vec<Scalar>> {
        self.halfspaces.iter().map(|h| h.normal.clone()).collect()
    }

    /// Index of the first violated constraint, if any.
    pub fn violated(&self, mu: &[Scalar]) -> Option<usize> {
        self.halfspaces.iter().position(|h| h.slack(mu).is_negative())
    }

    pub fn contains(&self, mu: &[Scalar]) -> bool {
        mu.len() == self.m && self.violated(mu).is_none()
    }

    /// Indices of the constraints that are tight at `mu`.
    pub fn active_at(&self, mu: &[Scalar]) -> Vec<usize> {
        self.halfspaces
            .iter()
            .enumerate()
            .filter(|(_, h)| h.slack(mu).is_zero())
            .map(|(j, _)| j)
            .collect()
    }

    pub fn with_halfspace(&self, h: HalfSpace) -> Result<HRep> {
        let mut hs = self.halfspaces.clone();
        hs.push(h);
        HRep::new(self.m, self.field, hs)
    }

    pub fn from_file(file: &PolytopeFile) -> Result<HRep> {
        let field = FieldSpec::new(file.field.radicand)?;
        let halfspaces = file
            .halfspaces
            .iter()
            .map(|h| {
                let normal = h
                    .normal
                    .iter()
                    .map(|t| Scalar::from_text(t, field))
                    .collect::<Result<Vec<_>>>()?;
                Ok(HalfSpace::new(normal, Scalar::from_text(&h.offset, field)?))
            })
            .collect::<Result<Vec<_>>>()?;
        HRep::new(file.m, field, halfspaces)
    }

    pub fn to_file(&self) -> PolytopeFile {
        PolytopeFile {
            m: self.m,
            field: FieldFile {
                radicand: self.field.radicand(),
            },
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfSpaceFile {
                    normal: h.normal.iter().map(Scalar::to_text).collect(),
                    offset: h.offset.to_text(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<HRep> {
        let file: PolytopeFile = serde_json::from_str(text)?;
        HRep::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("polytope file serializes")
    }
}

/// Input file schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub m: usize,
    #[serde(default)]
    pub field: FieldFile,
    pub halfspaces: Vec<HalfSpaceFile>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldFile {
    pub radicand: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpaceFile {
    pub normal: Vec<ScalarText>,
    pub offset: ScalarText,
}
