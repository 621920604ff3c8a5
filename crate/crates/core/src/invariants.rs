//! h-vectors, basic Betti numbers by vertex-index counting and by the
//! h-vector, the Hodge diamond, the Euler characteristic, and the counting
//! audits that tie them together.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::morse::{face_relative_index, min_vertex, IndexPartition, MorseData};
use crate::polytope::{FVector, FaceLattice};

/// `C(n, r)`, zero outside `0 ≤ r ≤ n`.
pub fn binomial(n: i64, r: i64) -> i64 {
    if r < 0 || n < 0 || r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector(pub Vec<u64>);

/// `b_j` for `0 ≤ j ≤ 2m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable(pub Vec<u64>);

impl BettiTable {
    pub fn m(&self) -> usize {
        (self.0.len() - 1) / 2
    }

    pub fn alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &b)| if j % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// `hpq[p][q]` for `0 ≤ p, q ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond(pub Vec<Vec<u64>>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl AuditRecord {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        AuditRecord {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// `h_k = Σ_{i=0}^{k} (−1)^{k−i} C(m−i, m−k) f_{m−i}`.
pub fn h_vector(f: &FVector) -> Result<HVector> {
    let m = f.m() as i64;
    let mut h = Vec::with_capacity(f.m() + 1);
    for k in 0..=m {
        let value: i64 = (0..=k)
            .map(|i| {
                let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                sign * binomial(m - i, m - k) * f.get((m - i) as usize) as i64
            })
            .sum();
        if value < 0 {
            return Err(Error::NegativeEntry { k: k as usize, value });
        }
        h.push(value as u64);
    }
    Ok(HVector(h))
}

/// `b_{2k}` = number of vertices of index `2k`; odd degrees vanish.
pub fn betti_morse(md: &MorseData) -> BettiTable {
    BettiTable(md.index_counts())
}

/// `b_{2k} = h_k`, `b_{2k+1} = 0`.
pub fn betti_h(h: &HVector) -> BettiTable {
    let m = h.0.len() - 1;
    let mut b = vec![0u64; 2 * m + 1];
    for (k, &hk) in h.0.iter().enumerate() {
        b[2 * k] = hk;
    }
    BettiTable(b)
}

/// `Σ (−1)^j b_j`, which must equal the number of vertices.
pub fn euler(b: &BettiTable, f: &FVector) -> Result<i64> {
    let chi = b.alternating_sum();
    if chi != f.vertices() as i64 {
        return Err(Error::EulerMismatch {
            euler: chi,
            vertices: f.vertices(),
        });
    }
    Ok(chi)
}

/// The diagonal diamond `h^{k,k} = b_{2k}`.
pub fn hodge_diamond(b: &BettiTable) -> HodgeDiamond {
    let m = b.m();
    let mut d = vec![vec![0u64; m + 1]; m + 1];
    for (k, row) in d.iter_mut().enumerate() {
        row[k] = b.0[2 * k];
    }
    let diamond = HodgeDiamond(d);
    debug_assert!(hodge_row_sums(&diamond) == b.0);
    diamond
}

/// `Σ_{p+q=j} h^{p,q}` for `0 ≤ j ≤ 2m`.
pub fn hodge_row_sums(d: &HodgeDiamond) -> Vec<u64> {
    let m = d.0.len() - 1;
    let mut sums = vec![0u64; 2 * m + 1];
    for (p, row) in d.0.iter().enumerate() {
        for (q, &x) in row.iter().enumerate() {
            sums[p + q] += x;
        }
    }
    sums
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Strong Morse inequalities between `b` and the index counts `nu`, plus
/// degree-wise equality (perfection).
pub fn audit_morse_counts(b: &BettiTable, nu: &[u64]) -> AuditRecord {
    let name = "morse-inequalities";
    if b.0.len() != nu.len() {
        return AuditRecord::new(name, false, format!("length mismatch: b has {}, nu has {}", b.0.len(), nu.len()));
    }
    let mut failures = Vec::new();
    let (mut partial_b, mut partial_nu) = (0i64, 0i64);
    for j in 0..nu.len() {
        // Σ_{i≤j} (−1)^{j−i} b_i ≤ Σ_{i≤j} (−1)^{j−i} ν_i
        partial_b = b.0[j] as i64 - partial_b;
        partial_nu = nu[j] as i64 - partial_nu;
        if partial_b > partial_nu {
            failures.push(format!("inequality fails in degree {j}: {partial_b} > {partial_nu}"));
        }
    }
    if partial_b != partial_nu {
        failures.push(format!("alternating sums differ: {partial_b} vs {partial_nu}"));
    }
    if b.0 != nu {
        failures.push("not perfect: b differs from nu degree-wise".into());
    }
    let detail = format!("b=[{}] nu=[{}]", join(&b.0), join(nu));
    if failures.is_empty() {
        AuditRecord::new(name, true, detail)
    } else {
        AuditRecord::new(name, false, format!("{detail}; {}", failures.join("; ")))
    }
}

pub fn audit_morse_inequalities(b: &BettiTable, md: &MorseData) -> AuditRecord {
    audit_morse_counts(b, &md.index_counts())
}

/// `|B_k| = Σ_{s=1}^{k} (−1)^{s−1} C(m−k+s, m−k) f_{m−k+s}`.
pub fn b_count_formula(k: usize, f: &FVector) -> i64 {
    let m = f.m();
    (1..=k)
        .map(|s| {
            let sign = if s % 2 == 1 { 1 } else { -1 };
            sign * binomial((m - k + s) as i64, (m - k) as i64) * f.get(m - k + s) as i64
        })
        .sum()
}

/// Checks `|A_k| + |B_k| = f_{m−k}` and the alternating-sum count of `B_k`
/// against the direct enumeration in `part`.
pub fn audit_inclusion_exclusion(k: usize, part: &IndexPartition, f: &FVector) -> AuditRecord {
    let m = f.m();
    let name = format!("inclusion-exclusion[k={k}]");
    let total = (part.a.len() + part.b.len()) as u64;
    let formula = b_count_formula(k, f);
    let direct = part.b.len() as i64;
    let pass = k <= m && total == f.get(m - k) && formula == direct;
    AuditRecord::new(
        name,
        pass,
        format!(
            "|A|={} |B|={} f_(m-k)={} formula={}",
            part.a.len(),
            direct,
            f.get(m - k),
            formula
        ),
    )
}

/// Verifies the covering of `B_k` by the sets
/// `B_k^σ = {F ∈ B_k : F ⊂ σ, λ_F = λ_σ}` over the `(m−k+1)`-faces `σ`:
/// every `F ∈ B_k` lies in at least one `B_k^σ`, and for each `s` the sum of
/// all `s`-fold intersection sizes equals `C(m−k+s, m−k) f_{m−k+s}`.
pub fn audit_covering(k: usize, part: &IndexPartition, md: &MorseData, lattice: &FaceLattice) -> AuditRecord {
    let m = lattice.m();
    let f = lattice.f_vector();
    let name = format!("covering[k={k}]");
    // c_F = number of σ ⊃ F, dim σ = dim F + 1, with λ_σ = λ_F
    let counts: Vec<usize> = part
        .b
        .iter()
        .map(|&face| {
            lattice
                .face(face)
                .parents
                .iter()
                .filter(|&&sigma| md.min_vertex(sigma) == md.min_vertex(face))
                .count()
        })
        .collect();
    let mut failures = Vec::new();
    if let Some(pos) = counts.iter().position(|&c| c == 0) {
        failures.push(format!("face {:?} lies in no covering set", lattice.face(part.b[pos]).facets));
    }
    for s in 1..=k {
        let lhs: i64 = counts.iter().map(|&c| binomial(c as i64, s as i64)).sum();
        let rhs = binomial((m - k + s) as i64, (m - k) as i64) * f.get(m - k + s) as i64;
        if lhs != rhs {
            failures.push(format!("s={s}: intersections sum to {lhs}, expected {rhs}"));
        }
    }
    let pass = failures.is_empty();
    AuditRecord::new(name, pass, if pass { format!("{} faces covered", counts.len()) } else { failures.join("; ") })
}

pub fn audit_dehn_sommerville(h: &HVector) -> AuditRecord {
    let m = h.0.len() - 1;
    let pass = (0..=m).all(|k| h.0[k] == h.0[m - k]);
    AuditRecord::new("dehn-sommerville", pass, format!("h=[{}]", join(&h.0)))
}

pub fn audit_route_agreement(morse: &BettiTable, from_h: &BettiTable) -> AuditRecord {
    AuditRecord::new(
        "route-agreement",
        morse == from_h,
        format!("morse=[{}] h=[{}]", join(&morse.0), join(&from_h.0)),
    )
}

pub fn audit_odd_vanishing(b: &BettiTable) -> AuditRecord {
    let pass = b.0.iter().skip(1).step_by(2).all(|&x| x == 0);
    AuditRecord::new("odd-betti-vanish", pass, format!("b=[{}]", join(&b.0)))
}

pub fn audit_euler(b: &BettiTable, f: &FVector) -> AuditRecord {
    match euler(b, f) {
        Ok(chi) => AuditRecord::new("euler", true, format!("chi={chi} f_0={}", f.vertices())),
        Err(e) => AuditRecord::new("euler", false, e.to_string()),
    }
}

pub fn audit_hodge(d: &HodgeDiamond, b: &BettiTable) -> AuditRecord {
    let diagonal = d
        .0
        .iter()
        .enumerate()
        .all(|(p, row)| row.iter().enumerate().all(|(q, &x)| p == q || x == 0));
    let sums = hodge_row_sums(d);
    AuditRecord::new(
        "hodge-diagonal",
        diagonal && sums == b.0,
        format!("diagonal={diagonal} row-sums=[{}]", join(&sums)),
    )
}

/// For every face `F`: `ind(λ_F) ≤ 2·codim F`; `λ_F` is the unique
/// `⟨·, ξ⟩`-minimizer over the vertices of `F`; and `λ_F` is the only vertex
/// of `F` whose index relative to `F` is 0.
pub fn audit_min_vertex(md: &MorseData, lattice: &FaceLattice) -> AuditRecord {
    let m = lattice.m();
    let mut failures = Vec::new();
    for (id, face) in lattice.faces().iter().enumerate() {
        let lambda = md.min_vertex(id);
        let codim = m - face.dim;
        if md.index(lambda) > 2 * codim {
            failures.push(format!("{:?}: index {} > {}", face.facets, md.index(lambda), 2 * codim));
        }
        match min_vertex(lattice, id, md.xi()) {
            Ok(v) if v == lambda => {}
            other => failures.push(format!("{:?}: functional minimizer {other:?}", face.facets)),
        }
        let relative_minima: Vec<usize> = face
            .vertices
            .iter()
            .copied()
            .filter(|&v| face_relative_index(lattice, md, id, v) == Ok(0))
            .collect();
        if relative_minima != [lambda] {
            failures.push(format!(
                "{:?}: relative index 0 at {:?}, expected [{lambda}]",
                face.facets, relative_minima
            ));
        }
    }
    let pass = failures.is_empty();
    AuditRecord::new(
        "min-vertex",
        pass,
        if pass { format!("{} faces", lattice.faces().len()) } else { failures.join("; ") },
    )
}

/// The strict inequality `ind(λ_F) < ind(ν)` for all other vertices `ν` of
/// `F`, with `ind` the index in the whole polytope. This does not hold in
/// general: on a polygon with five or more vertices some edge joins two
/// vertices of index 2. Kept as a diagnostic.
pub fn audit_global_index_minimum(md: &MorseData, lattice: &FaceLattice) -> AuditRecord {
    let mut failures = Vec::new();
    for (id, face) in lattice.faces().iter().enumerate() {
        let lambda = md.min_vertex(id);
        let strict = face
            .vertices
            .iter()
            .all(|&v| v == lambda || md.index(lambda) < md.index(v));
        if !strict {
            let indices: Vec<(usize, usize)> = face.vertices.iter().map(|&v| (v, md.index(v))).collect();
            failures.push(format!("{:?}: lambda={lambda} (vertex, index)={indices:?}", face.facets));
        }
    }
    let pass = failures.is_empty();
    AuditRecord::new(
        "global-index-minimum",
        pass,
        if pass { format!("{} faces", lattice.faces().len()) } else { failures.join("; ") },
    )
}
