use std::collections::BTreeSet;

use itertools::Itertools;

use super::HRep;
use crate::error::{Error, Result};
use crate::linalg::{rank, solve};
use crate::scalar::Scalar;

/// A vertex together with the facets that are tight at it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub coords: Vec<Scalar>,
    /// Sorted indices `j` with `⟨μ, X_j⟩ = λ_j`.
    pub active: Vec<usize>,
}

impl Vertex {
    pub fn label(&self) -> String {
        format!("({})", self.coords.iter().map(ToString::to_string).join(", "))
    }
}

/// All feasible basic solutions of `h`, deduplicated and sorted
/// lexicographically by coordinates. Performs no simplicity or boundedness
/// checks; see [`enumerate_vertices`] for the validated version.
pub fn find_vertices(h: &HRep) -> Result<Vec<Vertex>> {
    let m = h.m();
    let hs = h.halfspaces();
    let mut points = BTreeSet::new();
    for subset in (0..hs.len()).combinations(m) {
        let a: Vec<Vec<Scalar>> = subset.iter().map(|&j| hs[j].normal.clone()).collect();
        let b: Vec<Scalar> = subset.iter().map(|&j| hs[j].offset.clone()).collect();
        if let Some(mu) = solve(&a, &b) {
            if h.contains(&mu) {
                points.insert(mu);
            }
        }
    }
    if points.is_empty() {
        return Err(Error::Empty);
    }
    Ok(points
        .into_iter()
        .map(|coords| Vertex {
            active: h.active_at(&coords),
            coords,
        })
        .collect())
}

/// Vertices of a bounded simple polytope, in canonical (lexicographic) order.
///
/// Fails with `Empty`, `NonSimple`, `Unbounded` or `Redundant`.
pub fn enumerate_vertices(h: &HRep) -> Result<Vec<Vertex>> {
    let m = h.m();
    if m > 0 && rank(&h.normals(), m) < m {
        return Err(Error::Unbounded(
            "the normals do not span the ambient space, so the polyhedron contains a line".into(),
        ));
    }
    let vertices = find_vertices(h)?;
    if let Some(v) = vertices.iter().find(|v| v.active.len() > m) {
        return Err(Error::NonSimple {
            vertex: v.label(),
            active: v.active.len(),
            expected: m,
        });
    }
    if vertices.len() < m + 1 {
        return Err(Error::Unbounded(format!(
            "only {} vertices in dimension {m}",
            vertices.len()
        )));
    }
    // Each edge leaving a vertex must end at another vertex.
    for (i, v) in vertices.iter().enumerate() {
        for &dropped in &v.active {
            let kept: Vec<usize> = v.active.iter().copied().filter(|&j| j != dropped).collect();
            let bounded = vertices
                .iter()
                .enumerate()
                .any(|(k, u)| k != i && kept.iter().all(|j| u.active.contains(j)));
            if !bounded {
                return Err(Error::Unbounded(format!(
                    "the edge leaving {} off facet {dropped} is a ray",
                    v.label()
                )));
            }
        }
    }
    if let Some(j) = (0..h.d()).find(|j| vertices.iter().all(|v| !v.active.contains(j))) {
        return Err(Error::Redundant(j));
    }
    Ok(vertices)
}

/// True iff every vertex lies on exactly `m` facets with independent normals.
pub fn check_simple(vertices: &[Vertex], h: &HRep) -> bool {
    let m = h.m();
    vertices.iter().all(|v| {
        v.active.len() == m && {
            let normals: Vec<Vec<Scalar>> = v
                .active
                .iter()
                .map(|&j| h.halfspaces()[j].normal.clone())
                .collect();
            rank(&normals, m) == m
        }
    })
}
