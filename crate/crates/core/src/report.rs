//! The analysis pipeline and its report.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::delzant::{
    build_construction, convex_combination, fiber_point, kernel_is_exact, ConstructionData, ConstructionSection,
};
use crate::error::{Error, Result};
use crate::invariants::{
    audit_covering, audit_dehn_sommerville, audit_euler, audit_hodge, audit_inclusion_exclusion,
    audit_min_vertex, audit_morse_inequalities, audit_odd_vanishing, audit_route_agreement, betti_h, betti_morse,
    h_vector, hodge_diamond, AuditRecord,
};
use crate::morse::{choose_generic, is_generic, partition_faces, Direction, MorseData};
use crate::polytope::{build_face_lattice, enumerate_vertices, FaceLattice, HRep};
use crate::scalar::{FieldSpec, Scalar, ScalarText};

/// Seeds used by the direction-independence audit.
pub const AUDIT_SEEDS: [i64; 10] = [-5, -4, -3, -2, -1, 1, 2, 3, 4, 5];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionChoice {
    Explicit(Vec<Scalar>),
    Seed(i64),
}

impl Default for DirectionChoice {
    fn default() -> Self {
        DirectionChoice::Seed(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Analyze,
    Audit,
}

/// Parses a comma-separated direction such as `"1,2"` or `"1,1/2+sqrt(5)"`.
pub fn parse_direction(text: &str) -> Result<Vec<Scalar>> {
    text.split(',').map(str::parse).collect()
}

/// Every intermediate object of one run.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub hrep: HRep,
    pub lattice: FaceLattice,
    pub morse: MorseData,
    pub construction: ConstructionData,
    pub report: Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub coords: Vec<ScalarText>,
    /// Facets active at the vertex; their normals are the isotropy weights.
    pub active: Vec<usize>,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub m: usize,
    pub d: usize,
    pub radicand: u64,
    pub f: Vec<u64>,
    pub h: Vec<u64>,
    pub betti: Vec<u64>,
    pub betti_h: Vec<u64>,
    pub hodge: Vec<Vec<u64>>,
    pub euler: i64,
    pub xi: Vec<ScalarText>,
    pub vertices: Vec<VertexRecord>,
    pub construction: ConstructionSection,
    pub audits: Vec<AuditRecord>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.audits.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_text(&self) -> String {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        let _ = writeln!(
            out,
            "polytope      m={} d={} field={}",
            self.m,
            self.d,
            FieldSpec::new(self.radicand).unwrap_or_default()
        );
        let field = FieldSpec::new(self.radicand).unwrap_or_default();
        let show = |t: &ScalarText| Scalar::from_text(t, field).map(|x| x.to_string()).unwrap_or_else(|e| e.to_string());
        let xi: Vec<String> = self.xi.iter().map(show).collect();
        let _ = writeln!(out, "direction     ({})", xi.join(", "));
        let _ = writeln!(out, "f-vector      {}", join(&self.f));
        let _ = writeln!(out, "h-vector      {}", join(&self.h));
        let _ = writeln!(out, "betti         {}", join(&self.betti));
        let _ = writeln!(out, "betti (h)     {}", join(&self.betti_h));
        let _ = writeln!(out, "euler         {}", self.euler);
        let _ = writeln!(out, "hodge");
        for row in self.hodge.iter().rev() {
            let _ = writeln!(out, "              {}", join(row));
        }
        let c = &self.construction;
        let _ = writeln!(out, "construction  d={} m={} null subgroup {}", c.d, c.m, c.null_closed.as_str());
        let _ = writeln!(
            out,
            "dimensions    dim M={} dim F={} codim={} quasifold={}",
            c.dimensions.dim_m, c.dimensions.dim_f, c.dimensions.codim, c.dimensions.quasifold_dim
        );
        let _ = writeln!(out, "moment map    {}", c.moment_map);
        for eta in &c.n_basis {
            let coords: Vec<String> = eta.iter().map(show).collect();
            let _ = writeln!(out, "kernel        ({})", coords.join(", "));
        }
        let _ = writeln!(out, "audits");
        for a in &self.audits {
            let _ = writeln!(out, "  [{}] {:<24} {}", if a.pass { "pass" } else { "FAIL" }, a.name, a.detail);
        }
        out
    }
}

fn select_direction(lattice: &FaceLattice, choice: &DirectionChoice) -> Result<Direction> {
    match choice {
        DirectionChoice::Seed(seed) => Ok(choose_generic(lattice, *seed)),
        DirectionChoice::Explicit(coords) => {
            if coords.len() != lattice.m() {
                return Err(Error::Dimension(format!(
                    "direction has {} coordinates, polytope dimension is {}",
                    coords.len(),
                    lattice.m()
                )));
            }
            let xi = Direction::new(coords.clone())?;
            if !is_generic(&xi, lattice) {
                return Err(Error::NonGeneric(format!(
                    "({}) is constant along an edge",
                    coords.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                )));
            }
            Ok(xi)
        }
    }
}

/// Sample points of the polytope: every vertex, the barycenter, and
/// deterministic rational convex combinations of the vertices.
pub fn sample_points(lattice: &FaceLattice, count: usize) -> Vec<Vec<Scalar>> {
    let points: Vec<Vec<Scalar>> = lattice.vertices().iter().map(|v| v.coords.clone()).collect();
    let n = points.len();
    let mut out = points.clone();
    out.push(convex_combination(&points, &vec![Scalar::one(); n]));
    let mut i = 0i64;
    while out.len() < count {
        let weights: Vec<Scalar> = (0..n as i64).map(|j| Scalar::from_int((i * 7 + j * j * 3 + 1) % 11)).collect();
        if weights.iter().any(|w| !w.is_zero()) {
            out.push(convex_combination(&points, &weights));
        }
        i += 1;
    }
    out.truncate(count.max(1));
    out
}

fn level_set_audit(lattice: &FaceLattice, cd: &ConstructionData, count: usize) -> AuditRecord {
    let samples = sample_points(lattice, count);
    let failures: Vec<String> = samples
        .iter()
        .filter_map(|mu| match fiber_point(mu, cd) {
            Ok(p) if p.residuals.iter().all(Scalar::is_zero) => None,
            Ok(p) => Some(format!("nonzero residual at {:?}", p.mu.iter().map(ToString::to_string).collect::<Vec<_>>())),
            Err(e) => Some(e.to_string()),
        })
        .collect();
    AuditRecord::new(
        "level-set",
        failures.is_empty(),
        if failures.is_empty() { format!("{} points, residuals exactly 0", samples.len()) } else { failures.join("; ") },
    )
}

fn independence_audit(lattice: &FaceLattice, reference: &[u64]) -> AuditRecord {
    let mut failures = Vec::new();
    for seed in AUDIT_SEEDS {
        let xi = choose_generic(lattice, seed);
        match MorseData::build(lattice, xi) {
            Ok(md) if md.index_counts() == reference => {}
            Ok(md) => failures.push(format!("seed {seed}: counts {:?}", md.index_counts())),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    AuditRecord::new(
        "xi-independence",
        failures.is_empty(),
        if failures.is_empty() { format!("{} seeds agree", AUDIT_SEEDS.len()) } else { failures.join("; ") },
    )
}

/// Runs vertices → lattice → Morse data → invariants → construction.
pub fn analyze(h: &HRep, choice: &DirectionChoice, mode: Mode) -> Result<Analysis> {
    let vertices = enumerate_vertices(h)?;
    let lattice = build_face_lattice(h, vertices);
    let xi = select_direction(&lattice, choice)?;
    let morse = MorseData::build(&lattice, xi)?;
    let construction = build_construction(h)?;

    let f = lattice.f_vector();
    let hv = h_vector(&f)?;
    let b_morse = betti_morse(&morse);
    let b_h = betti_h(&hv);
    let diamond = hodge_diamond(&b_morse);

    let mut audits = vec![
        audit_route_agreement(&b_morse, &b_h),
        audit_odd_vanishing(&b_morse),
        audit_euler(&b_morse, &f),
        audit_hodge(&diamond, &b_morse),
        AuditRecord::new("kernel-exact", kernel_is_exact(&construction), format!("{} basis vectors", construction.n_basis.len())),
    ];
    if mode == Mode::Audit {
        audits.push(audit_dehn_sommerville(&hv));
        audits.push(audit_morse_inequalities(&b_h, &morse));
        audits.push(audit_min_vertex(&morse, &lattice));
        for k in 0..=lattice.m() {
            match partition_faces(k, &morse, &lattice) {
                Ok(part) => {
                    audits.push(audit_inclusion_exclusion(k, &part, &f));
                    audits.push(audit_covering(k, &part, &morse, &lattice));
                }
                Err(e) => audits.push(AuditRecord::new(format!("inclusion-exclusion[k={k}]"), false, e.to_string())),
            }
        }
        audits.push(independence_audit(&lattice, &morse.index_counts()));
        audits.push(level_set_audit(&lattice, &construction, 100));
    }

    let report = Report {
        m: h.m(),
        d: h.d(),
        radicand: h.field().radicand(),
        f: f.0.clone(),
        h: hv.0.clone(),
        betti: b_morse.0.clone(),
        betti_h: b_h.0.clone(),
        hodge: diamond.0.clone(),
        euler: b_morse.alternating_sum(),
        xi: morse.xi().coords().iter().map(Scalar::to_text).collect(),
        vertices: lattice
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| VertexRecord {
                coords: v.coords.iter().map(Scalar::to_text).collect(),
                active: v.active.clone(),
                index: morse.index(i),
            })
            .collect(),
        construction: ConstructionSection::new(&construction),
        audits,
    };
    Ok(Analysis {
        hrep: h.clone(),
        lattice,
        morse,
        construction,
        report,
    })
}
