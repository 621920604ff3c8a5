//! Generic directions, even vertex indices and minimal-index vertices of faces.
//!
//! A direction `ξ` is a linear functional on the ambient space of the
//! polytope. It is generic when it is non-constant on every edge. The index of
//! a vertex is twice the number of its edges along which `⟨·, ξ⟩` decreases,
//! so the global minimizer has index 0 and the global maximizer index `2m`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::polytope::{FaceId, FaceLattice};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction(Vec<Scalar>);

impl Direction {
    /// Fails on the zero vector, except in dimension 0 where the empty
    /// direction is the only one.
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if !coords.is_empty() && coords.iter().all(Scalar::is_zero) {
            return Err(Error::NonGeneric("the zero direction".into()));
        }
        Ok(Direction(coords))
    }

    /// `(1, t, t², …, t^{m−1})`.
    pub fn moment_curve(m: usize, t: i64) -> Self {
        let t = Scalar::from_int(t);
        let mut coords = Vec::with_capacity(m);
        let mut power = Scalar::one();
        for _ in 0..m {
            coords.push(power.clone());
            power = &power * &t;
        }
        Direction(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn pair(&self, v: &[Scalar]) -> Scalar {
        dot(&self.0, v)
    }
}

fn check_dim(xi: &Direction, lattice: &FaceLattice) -> Result<()> {
    if xi.dim() != lattice.m() {
        return Err(Error::Dimension(format!(
            "direction has {} coordinates, polytope dimension is {}",
            xi.dim(),
            lattice.m()
        )));
    }
    Ok(())
}

/// True iff `⟨ξ, e⟩ ≠ 0` for every edge direction `e`.
pub fn is_generic(xi: &Direction, lattice: &FaceLattice) -> bool {
    xi.dim() == lattice.m() && lattice.edges().all(|e| !xi.pair(&lattice.edge_direction(e)).is_zero())
}

/// The first generic direction on the moment curve, trying `t = seed, seed + 1, …`.
pub fn choose_generic(lattice: &FaceLattice, seed: i64) -> Direction {
    // every edge direction is a nonzero polynomial in t, so only finitely many t fail
    (seed..)
        .map(|t| Direction::moment_curve(lattice.m(), t))
        .find(|xi| is_generic(xi, lattice))
        .expect("a generic direction exists")
}

/// `2·#{edges at v with ⟨ξ, e⟩ < 0}` over the inward edge generators.
pub fn vertex_index(xi: &Direction, generators: &[Vec<Scalar>]) -> Result<usize> {
    let mut descending = 0;
    for e in generators {
        match xi.pair(e).sign() {
            Ordering::Less => descending += 1,
            Ordering::Equal => {
                return Err(Error::NonGeneric("the direction is constant along an edge".into()))
            }
            Ordering::Greater => {}
        }
    }
    Ok(2 * descending)
}

/// The unique vertex of `face` minimizing `⟨·, ξ⟩`.
pub fn min_vertex(lattice: &FaceLattice, face: FaceId, xi: &Direction) -> Result<usize> {
    let vertices = &lattice.face(face).vertices;
    let heights: Vec<Scalar> = vertices
        .iter()
        .map(|&v| xi.pair(&lattice.vertices()[v].coords))
        .collect();
    let best = (0..vertices.len())
        .min_by(|&a, &b| heights[a].cmp(&heights[b]))
        .ok_or_else(|| Error::Dimension("empty face".into()))?;
    if heights.iter().filter(|h| **h == heights[best]).count() > 1 {
        return Err(Error::NonGeneric(format!(
            "two vertices of face {:?} tie at level {}",
            lattice.face(face).facets,
            heights[best]
        )));
    }
    Ok(vertices[best])
}

/// Morse data of a generic direction on a simple polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseData {
    pub(crate) xi: Direction,
    /// Index of each vertex, in canonical vertex order.
    pub(crate) index: Vec<usize>,
    /// `λ_F` for each face, in lattice order.
    pub(crate) min_vertex: Vec<usize>,
    pub(crate) m: usize,
}

impl MorseData {
    pub fn build(lattice: &FaceLattice, xi: Direction) -> Result<Self> {
        check_dim(&xi, lattice)?;
        if !is_generic(&xi, lattice) {
            return Err(Error::NonGeneric(format!(
                "({}) is constant along an edge",
                xi.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            )));
        }
        let index = (0..lattice.vertices().len())
            .map(|v| {
                let gens: Vec<Vec<Scalar>> = lattice.edges_at(v).iter().map(|e| e.direction.clone()).collect();
                vertex_index(&xi, &gens)
            })
            .collect::<Result<Vec<_>>>()?;
        let min_vertex = (0..lattice.faces().len())
            .map(|f| min_vertex(lattice, f, &xi))
            .collect::<Result<Vec<_>>>()?;
        Ok(MorseData {
            xi,
            index,
            min_vertex,
            m: lattice.m(),
        })
    }

    pub fn xi(&self) -> &Direction {
        &self.xi
    }

    pub fn index(&self, v: usize) -> usize {
        self.index[v]
    }

    pub fn indices(&self) -> &[usize] {
        &self.index
    }

    pub fn min_vertex(&self, face: FaceId) -> usize {
        self.min_vertex[face]
    }

    /// `ν_j`: number of vertices of index `j`, for `0 ≤ j ≤ 2m`.
    pub fn index_counts(&self) -> Vec<u64> {
        let mut nu = vec![0u64; 2 * self.m + 1];
        for &i in &self.index {
            nu[i] += 1;
        }
        nu
    }
}

/// Index of `v` relative to the face `face`: twice the number of edges of
/// `face` at `v` along which `⟨·, ξ⟩` decreases.
pub fn face_relative_index(lattice: &FaceLattice, md: &MorseData, face: FaceId, v: usize) -> Result<usize> {
    let gens: Vec<Vec<Scalar>> = lattice
        .edges_at(v)
        .iter()
        .filter(|e| lattice.contains(face, e.face))
        .map(|e| e.direction.clone())
        .collect();
    vertex_index(md.xi(), &gens)
}

/// The `(m−k)`-faces split by whether `ind(λ_F) = 2k` (`a`) or `< 2k` (`b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexPartition {
    pub k: usize,
    pub a: Vec<FaceId>,
    pub b: Vec<FaceId>,
}

pub fn partition_faces(k: usize, md: &MorseData, lattice: &FaceLattice) -> Result<IndexPartition> {
    let m = lattice.m();
    if k > m {
        return Err(Error::Dimension(format!("k = {k} exceeds m = {m}")));
    }
    let mut part = IndexPartition {
        k,
        a: Vec::new(),
        b: Vec::new(),
    };
    for face in lattice.faces_of_dim(m - k) {
        let index = md.index(md.min_vertex(face));
        match index.cmp(&(2 * k)) {
            Ordering::Equal => part.a.push(face),
            Ordering::Less => part.b.push(face),
            Ordering::Greater => {
                return Err(Error::IndexBoundViolation {
                    face: format!("{:?}", lattice.face(face).facets),
                    codim: k,
                    index,
                })
            }
        }
    }
    Ok(part)
}
