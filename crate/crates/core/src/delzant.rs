//! Construction data of the foliation attached to a simple polytope.
//!
//! The projection `π: R^d → R^m, e_j ↦ X_j` has kernel `n`; the torus `T^d`
//! acts on `C^d` with moment map `Φ(z) = λ + ½ Σ |z_j|² e_j*`, and the level
//! set `M = Φ_N⁻¹(0)` of the induced `N`-action has dimension `d + m`. The
//! `N`-orbits foliate `M` with leaves of dimension `d − m`. When `n` is not a
//! rational subspace, `N` winds densely in `T^d` and the leaf space is a
//! genuine quasifold.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, nullspace, rank, scale};
use crate::polytope::HRep;
use crate::scalar::{Scalar, ScalarText};

/// The moment map sign convention used for the level-set identity.
pub const MOMENT_MAP_CONVENTION: &str = "Phi(z) = lambda + 1/2 sum_j |z_j|^2 e_j^*, M = Phi_N^-1(0)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullClosure {
    /// `n` is spanned by rational vectors; `N` is a closed subtorus.
    RationalClosed,
    /// `n ∩ Q^d` is too small; `N` is a dense immersed subgroup.
    DenseWinding,
}

impl NullClosure {
    pub fn as_str(&self) -> &'static str {
        match self {
            NullClosure::RationalClosed => "rational-closed",
            NullClosure::DenseWinding => "dense-winding",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub dim_m: usize,
    pub dim_f: usize,
    pub codim: usize,
    pub quasifold_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionData {
    pub d: usize,
    pub m: usize,
    pub normals: Vec<Vec<Scalar>>,
    pub offsets: Vec<Scalar>,
    /// Basis of `n = ker π`, in canonical reduced-echelon form.
    pub n_basis: Vec<Vec<Scalar>>,
    pub null_closed: NullClosure,
}

/// `m × d` matrix of `π`, whose columns are the normals.
fn projection_matrix(normals: &[Vec<Scalar>], m: usize) -> Vec<Vec<Scalar>> {
    (0..m)
        .map(|i| normals.iter().map(|x| x[i].clone()).collect())
        .collect()
}

pub fn build_construction(h: &HRep) -> Result<ConstructionData> {
    let (d, m) = (h.d(), h.m());
    let normals = h.normals();
    let p = projection_matrix(&normals, m);
    let r = rank(&p, d);
    if r < m {
        return Err(Error::NotSurjective { rank: r, m });
    }
    let n_basis = nullspace(&p, d);
    let mut cd = ConstructionData {
        d,
        m,
        normals,
        offsets: h.halfspaces().iter().map(|hs| hs.offset.clone()).collect(),
        n_basis,
        null_closed: NullClosure::RationalClosed,
    };
    cd.null_closed = null_subgroup_closedness(&cd);
    Ok(cd)
}

/// Decides whether `n` is a rational subspace.
///
/// A rational `x` satisfies `π(x) = 0` iff it is killed by both the rational
/// and the irrational part of the matrix of `π`, so
/// `dim(n ∩ Q^d) = d − rank [P_a; P_b]`; `n` is rational iff that equals `d − m`.
pub fn null_subgroup_closedness(cd: &ConstructionData) -> NullClosure {
    let p = projection_matrix(&cd.normals, cd.m);
    let parts: Vec<Vec<Scalar>> = p
        .iter()
        .map(|row| row.iter().map(|x| Scalar::from_rational(x.rational_part().clone())).collect())
        .chain(
            p.iter()
                .map(|row| row.iter().map(|x| Scalar::from_rational(x.irrational_part().clone())).collect()),
        )
        .collect();
    let rational_dim = cd.d - rank(&parts, cd.d);
    if rational_dim == cd.d - cd.m {
        NullClosure::RationalClosed
    } else {
        NullClosure::DenseWinding
    }
}

pub fn dimensions(cd: &ConstructionData) -> Dimensions {
    let dims = Dimensions {
        dim_m: cd.d + cd.m,
        dim_f: cd.d - cd.m,
        codim: 2 * cd.m,
        quasifold_dim: 2 * cd.m,
    };
    // dim M = 2d − dim n
    debug_assert_eq!(dims.dim_m, 2 * cd.d - cd.n_basis.len());
    debug_assert_eq!(dims.dim_m, dims.dim_f + dims.codim);
    dims
}

/// Every basis vector `η` of `n` satisfies `Σ η_j X_j = 0`.
pub fn kernel_is_exact(cd: &ConstructionData) -> bool {
    cd.n_basis.iter().all(|eta| {
        (0..cd.m).all(|i| {
            eta.iter()
                .zip(&cd.normals)
                .map(|(e, x)| e * &x[i])
                .sum::<Scalar>()
                .is_zero()
        })
    })
}

/// A point of `M` over `μ`, described by the squared radii `|z_j|²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub mu: Vec<Scalar>,
    /// `r2_j = 2(⟨μ, X_j⟩ − λ_j)`.
    pub r2: Vec<Scalar>,
    /// `Σ_j (½ r2_j + λ_j) η_j` for each basis vector `η` of `n`.
    pub residuals: Vec<Scalar>,
}

pub fn fiber_point(mu: &[Scalar], cd: &ConstructionData) -> Result<FiberPoint> {
    if mu.len() != cd.m {
        return Err(Error::Dimension(format!("point has {} coordinates, expected {}", mu.len(), cd.m)));
    }
    let two = Scalar::from_int(2);
    let r2: Vec<Scalar> = cd
        .normals
        .iter()
        .zip(&cd.offsets)
        .map(|(x, l)| &two * (dot(mu, x) - l))
        .collect();
    if let Some(j) = r2.iter().position(Scalar::is_negative) {
        return Err(Error::OutsideDelta(j));
    }
    let half = Scalar::ratio(1, 2);
    let phi: Vec<Scalar> = r2.iter().zip(&cd.offsets).map(|(r, l)| &half * r + l).collect();
    let residuals = cd.n_basis.iter().map(|eta| dot(&phi, eta)).collect();
    Ok(FiberPoint {
        mu: mu.to_vec(),
        r2,
        residuals,
    })
}

/// Report form of the construction data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSection {
    pub d: usize,
    pub m: usize,
    pub n_basis: Vec<Vec<ScalarText>>,
    pub null_closed: NullClosure,
    pub dimensions: Dimensions,
    pub moment_map: String,
}

impl ConstructionSection {
    pub fn new(cd: &ConstructionData) -> Self {
        ConstructionSection {
            d: cd.d,
            m: cd.m,
            n_basis: cd
                .n_basis
                .iter()
                .map(|v| v.iter().map(Scalar::to_text).collect())
                .collect(),
            null_closed: cd.null_closed,
            dimensions: dimensions(cd),
            moment_map: MOMENT_MAP_CONVENTION.to_string(),
        }
    }
}

/// Convex combination `Σ w_i p_i / Σ w_i` of `points` with non-negative weights.
pub fn convex_combination(points: &[Vec<Scalar>], weights: &[Scalar]) -> Vec<Scalar> {
    let total: Scalar = weights.iter().cloned().sum();
    let m = points.first().map_or(0, Vec::len);
    let mut acc = vec![Scalar::zero(); m];
    for (p, w) in points.iter().zip(weights) {
        for (a, x) in acc.iter_mut().zip(scale(p, w)) {
            *a = &*a + x;
        }
    }
    acc.iter().map(|a| a / &total).collect()
}
