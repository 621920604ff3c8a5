use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::{HRep, Vertex};
use crate::linalg::sub;
use crate::scalar::Scalar;

pub type FaceId = usize;

/// A nonempty face, identified by the maximal set of facets containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub facets: Vec<usize>,
    pub dim: usize,
    pub vertices: Vec<usize>,
    /// Faces of dimension `dim + 1` containing this one.
    pub parents: Vec<FaceId>,
    /// Faces of dimension `dim - 1` contained in this one.
    pub children: Vec<FaceId>,
}

/// An edge at a vertex, obtained by releasing one active facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexEdge {
    pub dropped_facet: usize,
    pub face: FaceId,
    pub neighbor: usize,
    /// `neighbor − vertex`, pointing into the polytope.
    pub direction: Vec<Scalar>,
}

/// Face counts by dimension, `f[j]` = number of `j`-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn m(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, j: usize) -> u64 {
        self.0[j]
    }

    pub fn vertices(&self) -> u64 {
        self.0[0]
    }
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    m: usize,
    vertices: Vec<Vertex>,
    faces: Vec<Face>,
    by_facets: BTreeMap<Vec<usize>, FaceId>,
    vertex_edges: Vec<Vec<VertexEdge>>,
    vertex_faces: Vec<FaceId>,
}

impl FaceLattice {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Faces sorted by dimension, then by facet set.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn face_by_facets(&self, facets: &[usize]) -> Option<FaceId> {
        self.by_facets.get(facets).copied()
    }

    /// The whole polytope.
    pub fn top(&self) -> FaceId {
        self.by_facets[&Vec::new()]
    }

    /// The 0-face corresponding to a vertex.
    pub fn vertex_face(&self, v: usize) -> FaceId {
        self.vertex_faces[v]
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = FaceId> + '_ {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.dim == dim)
            .map(|(i, _)| i)
    }

    pub fn edges_at(&self, v: usize) -> &[VertexEdge] {
        &self.vertex_edges[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.faces_of_dim(1)
    }

    /// Direction `v_1 − v_0` of a 1-face.
    pub fn edge_direction(&self, edge: FaceId) -> Vec<Scalar> {
        let f = &self.faces[edge];
        debug_assert_eq!(f.vertices.len(), 2);
        sub(&self.vertices[f.vertices[1]].coords, &self.vertices[f.vertices[0]].coords)
    }

    /// Whether face `inner` is contained in face `outer`.
    pub fn contains(&self, outer: FaceId, inner: FaceId) -> bool {
        let inner = &self.faces[inner].facets;
        self.faces[outer].facets.iter().all(|j| inner.contains(j))
    }

    pub fn f_vector(&self) -> FVector {
        let mut f = vec![0u64; self.m + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        FVector(f)
    }
}

/// Builds every nonempty face of a bounded simple polytope from its vertices.
///
/// In a simple polytope each subset of a vertex's active facets cuts out a
/// face through that vertex, so the faces are the distinct closures of those
/// subsets.
pub fn build_face_lattice(h: &HRep, vertices: Vec<Vertex>) -> FaceLattice {
    let m = h.m();
    let mut keyed: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in &vertices {
        for size in 0..=v.active.len() {
            for subset in v.active.iter().copied().combinations(size) {
                let members: Vec<usize> = vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| subset.iter().all(|j| u.active.contains(j)))
                    .map(|(i, _)| i)
                    .collect();
                // maximal facet set of the face
                let mut key: BTreeSet<usize> = vertices[members[0]].active.iter().copied().collect();
                for &i in &members[1..] {
                    key.retain(|j| vertices[i].active.contains(j));
                }
                keyed.entry(key.into_iter().collect()).or_insert(members);
            }
        }
    }

    let mut faces: Vec<Face> = keyed
        .into_iter()
        .map(|(facets, vertices)| Face {
            dim: m.saturating_sub(facets.len()),
            facets,
            vertices,
            parents: Vec::new(),
            children: Vec::new(),
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.facets).cmp(&(b.dim, &b.facets)));
    let by_facets: BTreeMap<Vec<usize>, FaceId> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.facets.clone(), i))
        .collect();

    for i in 0..faces.len() {
        let facets = faces[i].facets.clone();
        for drop in 0..facets.len() {
            let mut up = facets.clone();
            up.remove(drop);
            if let Some(&p) = by_facets.get(&up) {
                if faces[p].dim == faces[i].dim + 1 {
                    faces[i].parents.push(p);
                    faces[p].children.push(i);
                }
            }
        }
    }
    for f in faces.iter_mut() {
        f.parents.sort_unstable();
        f.children.sort_unstable();
    }

    let vertex_faces: Vec<FaceId> = vertices.iter().map(|v| by_facets[&v.active]).collect();
    let vertex_edges: Vec<Vec<VertexEdge>> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.active
                .iter()
                .filter_map(|&dropped| {
                    let kept: Vec<usize> = v.active.iter().copied().filter(|&j| j != dropped).collect();
                    let face = *by_facets.get(&kept)?;
                    let neighbor = *faces[face].vertices.iter().find(|&&u| u != i)?;
                    Some(VertexEdge {
                        dropped_facet: dropped,
                        face,
                        neighbor,
                        direction: sub(&vertices[neighbor].coords, &v.coords),
                    })
                })
                .collect()
        })
        .collect();

    FaceLattice {
        m,
        vertices,
        faces,
        by_facets,
        vertex_edges,
        vertex_faces,
    }
}

/// The `m` inward edge directions at vertex `v`.
pub fn edge_generators(lattice: &FaceLattice, v: usize) -> Vec<Vec<Scalar>> {
    lattice.edges_at(v).iter().map(|e| e.direction.clone()).collect()
}
