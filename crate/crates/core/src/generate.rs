//! Constructors for standard simple polytopes and random simple polytopes
//! obtained by repeated vertex truncation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::polytope::{enumerate_vertices, HRep, HalfSpace};
use crate::scalar::{FieldSpec, Scalar};

fn unit(m: usize, i: usize, value: i64) -> Vec<Scalar> {
    (0..m)
        .map(|k| if k == i { Scalar::from_int(value) } else { Scalar::zero() })
        .collect()
}

/// `{x_i ≥ 0, −Σx_i ≥ −1}`.
pub fn simplex(m: usize) -> HRep {
    let mut hs: Vec<HalfSpace> = (0..m).map(|i| HalfSpace::new(unit(m, i, 1), Scalar::zero())).collect();
    hs.push(HalfSpace::new(vec![Scalar::from_int(-1); m], Scalar::from_int(-1)));
    HRep::new(m, FieldSpec::RATIONAL, hs).expect("simplex is well formed")
}

/// The unit cube: `x_i ≥ 0` for all `i`, followed by `−x_i ≥ −1` for all `i`.
pub fn cube(m: usize) -> HRep {
    let lower = (0..m).map(|i| HalfSpace::new(unit(m, i, 1), Scalar::zero()));
    let upper = (0..m).map(|i| HalfSpace::new(unit(m, i, -1), Scalar::from_int(-1)));
    HRep::new(m, FieldSpec::RATIONAL, lower.chain(upper).collect()).expect("cube is well formed")
}

/// Cartesian product; the half-spaces of `a` come first.
pub fn product(a: &HRep, b: &HRep) -> Result<HRep> {
    let field = match (a.field().is_rational(), b.field().is_rational()) {
        (true, _) => b.field(),
        (_, true) => a.field(),
        _ if a.field() == b.field() => a.field(),
        _ => return Err(Error::FieldMismatch(a.field().radicand(), b.field().radicand())),
    };
    let m = a.m() + b.m();
    let pad = |h: &HalfSpace, before: usize| {
        let mut normal = vec![Scalar::zero(); before];
        normal.extend(h.normal.iter().cloned());
        normal.resize(m, Scalar::zero());
        HalfSpace::new(normal, h.offset.clone())
    };
    let hs = a
        .halfspaces()
        .iter()
        .map(|h| pad(h, 0))
        .chain(b.halfspaces().iter().map(|h| pad(h, a.m())))
        .collect();
    HRep::new(m, field, hs)
}

/// Cuts off vertex `vertex` (an index into the canonical vertex order).
///
/// The new facet has normal `Σ w_i X_i` over the facets active at the vertex,
/// with positive `weights`, and is placed a fraction `depth ∈ (0, 1)` of the
/// way from the vertex to the nearest other vertex level. The result is again
/// simple and bounded.
pub fn truncate_vertex(h: &HRep, vertex: usize, weights: &[Scalar], depth: &Scalar) -> Result<HRep> {
    let vertices = enumerate_vertices(h)?;
    let v = vertices
        .get(vertex)
        .ok_or_else(|| Error::Dimension(format!("no vertex {vertex}")))?;
    if weights.len() != v.active.len() || weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::Dimension(format!(
            "expected {} positive weights",
            v.active.len()
        )));
    }
    if !depth.is_positive() || depth >= &Scalar::one() {
        return Err(Error::Dimension("truncation depth must lie in (0, 1)".into()));
    }
    let m = h.m();
    let mut normal = vec![Scalar::zero(); m];
    for (w, &j) in weights.iter().zip(&v.active) {
        for (x, y) in normal.iter_mut().zip(&h.halfspaces()[j].normal) {
            *x = &*x + w * y;
        }
    }
    let base = dot(&v.coords, &normal);
    let gap = vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != vertex)
        .map(|(_, u)| dot(&u.coords, &normal) - &base)
        .min()
        .ok_or(Error::Empty)?;
    debug_assert!(gap.is_positive());
    h.with_halfspace(HalfSpace::new(normal, base + depth * gap))
}

/// A random simple polytope: a simplex, cube, prism or product of simplices
/// with up to `max_cuts` random vertex truncations.
pub fn random_simple<R: Rng + ?Sized>(rng: &mut R, max_cuts: usize) -> HRep {
    let bases = [
        simplex(2),
        simplex(3),
        cube(2),
        cube(3),
        product(&simplex(2), &cube(1)).expect("rational"),
        product(&simplex(1), &simplex(2)).expect("rational"),
        product(&simplex(2), &simplex(2)).expect("rational"),
    ];
    let mut h = bases.choose(rng).expect("non-empty").clone();
    let cuts = rng.gen_range(0..=max_cuts);
    for _ in 0..cuts {
        let n_vertices = enumerate_vertices(&h).expect("generated polytopes are valid").len();
        let vertex = rng.gen_range(0..n_vertices);
        let weights: Vec<Scalar> = (0..h.m())
            .map(|_| Scalar::ratio(rng.gen_range(1..=6), rng.gen_range(1..=3)))
            .collect();
        let depth = Scalar::ratio(rng.gen_range(1..=7), 8);
        h = truncate_vertex(&h, vertex, &weights, &depth).expect("truncation of a valid polytope");
    }
    h
}
