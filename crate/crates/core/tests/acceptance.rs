//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails. Run with `cargo test --test acceptance`.
//!
//! Oracles here are computed independently of the library's own routes:
//! vertex indices by brute force over vertex pairs, h-vectors from the
//! polynomial identity `Σ h_k t^(m−k) = Σ f_j (t−1)^j`, and field
//! closedness from a rational rank computation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasifold::delzant::{build_construction, dimensions, fiber_point, NullClosure};
use quasifold::generate::random_simple;
use quasifold::invariants::{audit_min_vertex, audit_morse_inequalities, betti_h, betti_morse, h_vector, hodge_diamond};
use quasifold::morse::{choose_generic, partition_faces, Direction, MorseData};
use quasifold::polytope::{build_face_lattice, enumerate_vertices, FaceLattice};
use quasifold::report::{sample_points, AUDIT_SEEDS};
use quasifold::{HRep, Scalar};

type Check = Result<String, String>;

struct Case {
    name: String,
    hrep: HRep,
    lattice: FaceLattice,
}

impl Case {
    fn new(name: impl Into<String>, hrep: HRep) -> Result<Case, String> {
        let name = name.into();
        let vertices = enumerate_vertices(&hrep).map_err(|e| format!("{name}: {e}"))?;
        let lattice = build_face_lattice(&hrep, vertices);
        Ok(Case { name, hrep, lattice })
    }

    fn morse(&self, seed: i64) -> Result<MorseData, String> {
        MorseData::build(&self.lattice, choose_generic(&self.lattice, seed)).map_err(|e| format!("{}: {e}", self.name))
    }
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn load_corpus() -> Result<Vec<Case>, String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let text = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
            Case::new(name, HRep::from_json(&text).map_err(|e| e.to_string())?)
        })
        .collect()
}

fn random_cases(count: usize) -> Result<Vec<Case>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1e1d);
    (0..count).map(|i| Case::new(format!("random#{i}"), random_simple(&mut rng, 4))).collect()
}

// ---- oracles ----------------------------------------------------------------

fn choose(n: i64, r: i64) -> i64 {
    if r < 0 || r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn height(xi: &Direction, case: &Case, v: usize) -> Scalar {
    xi.pair(&case.lattice.vertices()[v].coords)
}

/// Neighbours of `v`: vertices sharing exactly `m − 1` facets with it.
fn neighbours(case: &Case, v: usize) -> Vec<usize> {
    let m = case.lattice.m();
    let vs = case.lattice.vertices();
    (0..vs.len())
        .filter(|&u| u != v)
        .filter(|&u| vs[u].active.iter().filter(|j| vs[v].active.contains(j)).count() + 1 == m)
        .collect()
}

/// `2·#{neighbours strictly below v}`.
fn oracle_indices(case: &Case, xi: &Direction) -> Vec<usize> {
    (0..case.lattice.vertices().len())
        .map(|v| {
            let hv = height(xi, case, v);
            2 * neighbours(case, v).into_iter().filter(|&u| height(xi, case, u) < hv).count()
        })
        .collect()
}

fn oracle_betti(case: &Case, xi: &Direction) -> Vec<u64> {
    let mut b = vec![0u64; 2 * case.lattice.m() + 1];
    for i in oracle_indices(case, xi) {
        b[i] += 1;
    }
    b
}

/// h-vector from `Σ_k h_k t^(m−k) = Σ_j f_j (t − 1)^j`.
fn oracle_h(f: &[u64]) -> Vec<i64> {
    let m = f.len() - 1;
    let mut poly = vec![0i64; m + 1];
    for (j, &fj) in f.iter().enumerate() {
        for (k, coeff) in poly.iter_mut().enumerate().take(j + 1) {
            let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
            *coeff += sign * choose(j as i64, k as i64) * fj as i64;
        }
    }
    (0..=m).map(|k| poly[m - k]).collect()
}

/// The vertex of `face` with least height.
fn oracle_lowest(case: &Case, xi: &Direction, face: usize) -> usize {
    let vs = &case.lattice.face(face).vertices;
    *vs.iter().min_by(|&&a, &&b| height(xi, case, a).cmp(&height(xi, case, b))).unwrap()
}

fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = &rows[r][c] / &pivot;
                for k in 0..cols {
                    let delta = &factor * &rows[rank][k];
                    rows[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn scalar_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut rows = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = &rows[r][c] / &pivot;
                for k in 0..cols {
                    rows[r][k] = &rows[r][k] - &(&factor * &rows[rank][k]);
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---- per-polytope checks ------------------------------------------------------

fn betti_routes(case: &Case, seed: i64) -> Check {
    let md = case.morse(seed)?;
    let f = case.lattice.f_vector();
    let h = h_vector(&f).map_err(|e| format!("{}: {e}", case.name))?;
    let (bm, bh) = (betti_morse(&md), betti_h(&h));
    let oracle = oracle_betti(case, md.xi());
    if bm != bh || bm.0 != oracle {
        return Err(format!("{} seed {seed}: morse {:?} h {:?} oracle {oracle:?}", case.name, bm.0, bh.0));
    }
    let expected_h = oracle_h(&f.0);
    if h.0.iter().map(|&x| x as i64).collect::<Vec<_>>() != expected_h {
        return Err(format!("{}: h {:?} vs oracle {expected_h:?}", case.name, h.0));
    }
    Ok(String::new())
}

fn euler_check(case: &Case) -> Check {
    let md = case.morse(1)?;
    let b = betti_morse(&md).0;
    if b.iter().skip(1).step_by(2).any(|&x| x != 0) {
        return Err(format!("{}: odd Betti number nonzero in {b:?}", case.name));
    }
    let chi: i64 = b.iter().enumerate().map(|(j, &x)| if j % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    let f0 = case.lattice.vertices().len() as i64;
    if chi != f0 {
        return Err(format!("{}: Euler {chi} but {f0} vertices", case.name));
    }
    Ok(String::new())
}

fn hodge_check(case: &Case) -> Check {
    let md = case.morse(1)?;
    let b = betti_morse(&md);
    let d = hodge_diamond(&b).0;
    let m = case.lattice.m();
    if d.len() != m + 1 || d.iter().any(|row| row.len() != m + 1) {
        return Err(format!("{}: diamond is not {}x{}", case.name, m + 1, m + 1));
    }
    for (p, row) in d.iter().enumerate() {
        for (q, &x) in row.iter().enumerate() {
            if p != q && x != 0 {
                return Err(format!("{}: h^({p},{q}) = {x}", case.name));
            }
        }
    }
    for (j, &bj) in b.0.iter().enumerate() {
        let sum: u64 = (0..=m).filter(|&p| j >= p && j - p <= m).map(|p| d[p][j - p]).sum();
        if sum != bj {
            return Err(format!("{}: degree {j} Hodge sum {sum} vs b {bj}", case.name));
        }
    }
    Ok(String::new())
}

/// Counts of (faces checked, bound violations, faces where the least global
/// index is not attained uniquely at the lowest vertex).
fn min_vertex_check(case: &Case, seed: i64) -> Result<(usize, Vec<String>, Vec<String>), String> {
    let md = case.morse(seed)?;
    let xi = md.xi();
    let index = oracle_indices(case, xi);
    let m = case.lattice.m();
    let (mut bound, mut argmin) = (Vec::new(), Vec::new());
    for (id, face) in case.lattice.faces().iter().enumerate() {
        let lowest = oracle_lowest(case, xi, id);
        if md.min_vertex(id) != lowest {
            return Err(format!("{}: library lowest vertex differs on {:?}", case.name, face.facets));
        }
        if index[lowest] > 2 * (m - face.dim) {
            bound.push(format!("{} seed {seed} {:?}", case.name, face.facets));
        }
        let least = face.vertices.iter().map(|&v| index[v]).min().unwrap();
        let at_least: Vec<usize> = face.vertices.iter().copied().filter(|&v| index[v] == least).collect();
        if at_least != [lowest] {
            argmin.push(format!(
                "{} seed {seed} face {:?}: index minimum {least} at {at_least:?}, lowest vertex {lowest} has {}",
                case.name, face.facets, index[lowest]
            ));
        }
    }
    Ok((case.lattice.faces().len(), bound, argmin))
}

fn inclusion_exclusion_check(case: &Case, seed: i64) -> Check {
    let md = case.morse(seed)?;
    let xi = md.xi();
    let index = oracle_indices(case, xi);
    let f = case.lattice.f_vector().0;
    let m = case.lattice.m();
    for k in 0..=m {
        let part = partition_faces(k, &md, &case.lattice).map_err(|e| format!("{} k={k}: {e}", case.name))?;
        let faces: Vec<usize> = case.lattice.faces_of_dim(m - k).collect();
        let direct_b = faces.iter().filter(|&&face| index[oracle_lowest(case, xi, face)] < 2 * k).count();
        let direct_a = faces.iter().filter(|&&face| index[oracle_lowest(case, xi, face)] == 2 * k).count();
        let formula: i64 = (1..=k)
            .map(|s| {
                let sign = if s % 2 == 1 { 1 } else { -1 };
                sign * choose((m - k + s) as i64, (m - k) as i64) * f[m - k + s] as i64
            })
            .sum();
        let ok = part.a.len() == direct_a
            && part.b.len() == direct_b
            && (direct_a + direct_b) as u64 == f[m - k]
            && formula == direct_b as i64;
        if !ok {
            return Err(format!(
                "{} seed {seed} k={k}: |A|={} |B|={} direct ({direct_a},{direct_b}) f={} formula={formula}",
                case.name,
                part.a.len(),
                part.b.len(),
                f[m - k]
            ));
        }
    }
    Ok(String::new())
}

fn morse_inequality_check(case: &Case) -> Check {
    let md = case.morse(1)?;
    let h = h_vector(&case.lattice.f_vector()).map_err(|e| e.to_string())?;
    let b = betti_h(&h);
    let nu = oracle_betti(case, md.xi());
    let (mut pb, mut pn) = (0i64, 0i64);
    for j in 0..nu.len() {
        pb = b.0[j] as i64 - pb;
        pn = nu[j] as i64 - pn;
        if pb > pn {
            return Err(format!("{}: inequality fails in degree {j}", case.name));
        }
    }
    if pb != pn || b.0 != nu {
        return Err(format!("{}: not perfect, b {:?} nu {nu:?}", case.name, b.0));
    }
    let lib = audit_morse_inequalities(&b, &md);
    if !lib.pass {
        return Err(format!("{}: {}", case.name, lib.detail));
    }
    Ok(String::new())
}

/// Returns the number of sampled points with an irrational coordinate.
fn level_set_check(case: &Case) -> Result<usize, String> {
    let cd = build_construction(&case.hrep).map_err(|e| format!("{}: {e}", case.name))?;
    let points = sample_points(&case.lattice, 100);
    if points.len() != 100 {
        return Err(format!("{}: {} sample points", case.name, points.len()));
    }
    let normals = case.hrep.normals();
    for eta in &cd.n_basis {
        for c in 0..case.hrep.m() {
            let s: Scalar = normals.iter().zip(eta).map(|(x, e)| &x[c] * e).sum();
            if !s.is_zero() {
                return Err(format!("{}: kernel vector not annihilated", case.name));
            }
        }
    }
    let mut irrational = 0;
    for mu in &points {
        if !case.hrep.contains(mu) {
            return Err(format!("{}: sample outside the polytope", case.name));
        }
        if mu.iter().any(|x| !x.is_rational()) {
            irrational += 1;
        }
        let p = fiber_point(mu, &cd).map_err(|e| format!("{}: {e}", case.name))?;
        if p.r2.iter().any(Scalar::is_negative) || p.residuals.iter().any(|r| !r.is_zero()) {
            return Err(format!("{}: nonzero residual", case.name));
        }
        let independent: Vec<Scalar> = cd
            .n_basis
            .iter()
            .map(|eta| {
                normals
                    .iter()
                    .zip(case.hrep.halfspaces())
                    .zip(eta)
                    .map(|((x, hs), e)| {
                        let radius: Scalar = &Scalar::from_int(2) * &(x.iter().zip(mu).map(|(a, b)| a * b).sum::<Scalar>() - &hs.offset);
                        &(&(&Scalar::ratio(1, 2) * &radius) + &hs.offset) * e
                    })
                    .sum()
            })
            .collect();
        if independent.iter().any(|r| !r.is_zero()) {
            return Err(format!("{}: oracle residual nonzero", case.name));
        }
    }
    Ok(irrational)
}

// ---- criteria -------------------------------------------------------------------

fn each<T>(cases: &[Case], f: impl Fn(&Case) -> Result<T, String>) -> Result<Vec<T>, String> {
    cases.iter().map(f).collect()
}

fn criterion_1() -> Check {
    let corpus = load_corpus()?;
    if corpus.len() != 10 {
        return Err(format!("corpus has {} files", corpus.len()));
    }
    let mut runs = 0;
    for case in &corpus {
        for seed in AUDIT_SEEDS {
            betti_routes(case, seed)?;
            runs += 1;
        }
    }
    Ok(format!("{runs} polytope/direction pairs agree"))
}

fn criterion_2() -> Check {
    let corpus = load_corpus()?;
    each(&corpus, euler_check)?;
    Ok(format!("{} polytopes", corpus.len()))
}

fn criterion_3() -> Check {
    let corpus = load_corpus()?;
    each(&corpus, hodge_check)?;
    Ok(format!("{} polytopes", corpus.len()))
}

fn criterion_4() -> Check {
    let text = std::fs::read_to_string(corpus_dir().join("pentagon.json")).map_err(|e| e.to_string())?;
    let case = Case::new("pentagon", HRep::from_json(&text).map_err(|e| e.to_string())?)?;
    if case.hrep.field().radicand() != 5 {
        return Err("pentagon is not over Q(sqrt 5)".into());
    }
    let f = case.lattice.f_vector().0;
    if f != [5, 5, 1] {
        return Err(format!("f = {f:?}"));
    }
    let h = oracle_h(&f);
    let expected: Vec<u64> = vec![h[0] as u64, 0, h[1] as u64, 0, h[2] as u64];
    if expected != [1, 0, 3, 0, 1] {
        return Err(format!("oracle b = {expected:?}"));
    }
    let b = betti_morse(&case.morse(1)?).0;
    if b != expected {
        return Err(format!("b = {b:?}"));
    }
    let chi: i64 = b.iter().enumerate().map(|(j, &x)| if j % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    if chi != 5 {
        return Err(format!("Euler = {chi}"));
    }

    let cd = build_construction(&case.hrep).map_err(|e| e.to_string())?;
    let normals = case.hrep.normals();
    let (d, m) = (normals.len(), case.hrep.m());
    // π: R^d → R^m has rank m, so its kernel has dimension d − rank
    let columns: Vec<Vec<Scalar>> = (0..m).map(|c| normals.iter().map(|x| x[c].clone()).collect()).collect();
    let kernel_dim = d - scalar_rank(&columns);
    let dims = dimensions(&cd);
    if (dims.dim_m, dims.dim_f) != (d + m, kernel_dim) || (dims.dim_m, dims.dim_f) != (7, 3) {
        return Err(format!("dim_M = {}, dim_F = {}, oracle kernel dim {kernel_dim}", dims.dim_m, dims.dim_f));
    }
    if cd.n_basis.len() != kernel_dim || scalar_rank(&cd.n_basis) != kernel_dim {
        return Err("kernel basis has the wrong rank".into());
    }
    // rational-closed iff the rational span of the normal coordinates has rank m
    let split: Vec<Vec<BigRational>> = normals
        .iter()
        .map(|x| {
            x.iter()
                .map(|c| c.rational_part().clone())
                .chain(x.iter().map(|c| c.irrational_part().clone()))
                .collect()
        })
        .collect();
    let oracle_closed = rational_rank(split) == m;
    if oracle_closed || cd.null_closed != NullClosure::DenseWinding {
        return Err(format!("null subgroup {:?}, oracle closed = {oracle_closed}", cd.null_closed));
    }
    Ok("b=(1,0,3,0,1) euler=5 dim_M=7 dim_F=3 dense-winding".into())
}

fn min_vertex_summary(cases: &[Case], seeds: &[i64]) -> Check {
    let (mut faces, mut bound, mut argmin) = (0, Vec::new(), Vec::new());
    for case in cases {
        for &seed in seeds {
            let (n, b, a) = min_vertex_check(case, seed)?;
            faces += n;
            bound.extend(b);
            argmin.extend(a);
        }
    }
    if bound.is_empty() && argmin.is_empty() {
        return Ok(format!("{faces} face/direction pairs"));
    }
    let mut msg = format!(
        "{faces} face/direction pairs: {} bound violations, {} faces where the index argmin is not unique at the lowest vertex",
        bound.len(),
        argmin.len()
    );
    if let Some(first) = bound.first().or(argmin.first()) {
        msg.push_str(&format!("; first: {first}"));
    }
    let relative_ok = cases
        .iter()
        .all(|case| seeds.iter().all(|&s| case.morse(s).is_ok_and(|md| audit_min_vertex(&md, &case.lattice).pass)));
    msg.push_str(&format!("; face-relative index 0 only at the lowest vertex: {relative_ok}"));
    Err(msg)
}

fn criterion_5() -> Check {
    min_vertex_summary(&load_corpus()?, &AUDIT_SEEDS)
}

fn criterion_6() -> Check {
    let corpus = load_corpus()?;
    for case in &corpus {
        for seed in AUDIT_SEEDS {
            inclusion_exclusion_check(case, seed)?;
        }
    }
    Ok(format!("{} polytopes, all k, {} directions", corpus.len(), AUDIT_SEEDS.len()))
}

fn criterion_7() -> Check {
    let corpus = load_corpus()?;
    each(&corpus, morse_inequality_check)?;
    Ok(format!("{} polytopes, perfect", corpus.len()))
}

fn criterion_8() -> Check {
    let corpus = load_corpus()?;
    let mut irrational_on_pentagon = 0;
    for case in &corpus {
        let n = level_set_check(case)?;
        if case.name == "pentagon" {
            irrational_on_pentagon = n;
        }
    }
    if irrational_on_pentagon == 0 {
        return Err("no Q(sqrt 5) sample points on the pentagon".into());
    }
    Ok(format!(
        "{} polytopes x 100 points, {irrational_on_pentagon} irrational pentagon points",
        corpus.len()
    ))
}

fn criterion_9() -> Check {
    let cases = random_cases(200)?;
    let mut failures = Vec::new();
    for case in &cases {
        let result = betti_routes(case, 1)
            .and_then(|_| euler_check(case))
            .and_then(|_| hodge_check(case))
            .and_then(|_| inclusion_exclusion_check(case, 1))
            .and_then(|_| morse_inequality_check(case));
        if let Err(e) = result {
            failures.push(e);
        }
    }
    let literal = min_vertex_summary(&cases, &[1]);
    match (failures.first(), literal) {
        (None, Ok(_)) => Ok(format!("{} random polytopes", cases.len())),
        (None, Err(e)) => Err(format!("criteria 1-3, 6, 7 hold on all {}; criterion 5: {e}", cases.len())),
        (Some(first), literal) => Err(format!(
            "{} polytopes fail criteria 1-3, 6, 7 (first: {first}); criterion 5: {}",
            failures.len(),
            literal.err().unwrap_or_else(|| "holds".into())
        )),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 9] = [
        ("1 betti routes agree", Duration::from_secs(10), criterion_1),
        ("2 odd vanishing and euler", Duration::from_secs(1), criterion_2),
        ("3 diagonal hodge diamond", Duration::from_secs(1), criterion_3),
        ("4 pentagon", Duration::from_secs(1), criterion_4),
        ("5 index bound and lowest vertex", Duration::from_secs(5), criterion_5),
        ("6 inclusion-exclusion", Duration::from_secs(5), criterion_6),
        ("7 morse inequalities", Duration::from_secs(1), criterion_7),
        ("8 level set", Duration::from_secs(5), criterion_8),
        ("9 random polytopes", Duration::from_secs(60), criterion_9),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (verdict, detail) = match result {
            Ok(_) if elapsed > budget => ("FAIL", format!("over time budget {budget:?}")),
            Ok(d) => ("pass", d),
            Err(e) => ("FAIL", e),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {name:<34} {verdict} ({:.2}s) {detail}", elapsed.as_secs_f64());
    }
    println!("{}/9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
