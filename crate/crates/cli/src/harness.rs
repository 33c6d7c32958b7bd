//! The acceptance suite, runnable in-process by `agrarian report` and by
//! the `acceptance` test target.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use agrarian::complex::standard;
use agrarian::fibring::{fibres_fibre_check, kaz_violations, virtually_fpn_fibred, CoefficientRing};
use agrarian::kernels::{
    is_fpn, push_cycle_to_living, theorem_b_betti, theorem_b_betti_unchecked, torsion_term, Character,
};
use agrarian::linalg::smith_normal_form;
use agrarian::raag::{abelian_quotient, cover_betti, dfg_betti_raag, FiniteQuotient, Raag};
use agrarian::{ChainVector, ExactMatrix, FieldSpec, SimplicialComplex};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{run_from, uniform_abelian};

pub const DEFAULT_SEED: u64 = 0x5eed;

pub const CRITERIA: [&str; 12] = [
    "flag RP2: agrarian b_3 is 1 over F2 and 0 over Q",
    "free group covers: b_1 = n^2 + 1",
    "F2 x F2 covers: b_2 = (n^2 + 1)^2",
    "lower bound by cover Betti numbers on random complexes",
    "Salvetti boundaries square to zero; trivial covers",
    "kernel Betti numbers: base cases and sign symmetry",
    "living-link criterion agrees with link homology for phi = 1",
    "cycles pushed into the living link",
    "fibres-fibre agreement on all graphs up to 6 vertices",
    "flag RP2 fibring verdicts over Q, F2 and Z",
    "torsion term of an RP2 link",
    "CLI reports are byte-identical across runs",
];

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, seed)).collect()
}

pub fn run_criterion(id: usize, seed: u64) -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id as u64));
    let start = Instant::now();
    let outcome = match id {
        1 => rp2_headline(),
        2 => free_group_gradient(),
        3 => product_gradient(),
        4 => lower_bound(&mut rng),
        5 => boundary_squares(&mut rng),
        6 => kernel_betti_consistency(&mut rng),
        7 => calibration(&mut rng),
        8 => cycle_pushing(&mut rng),
        9 => fibres_fibre(),
        10 => rp2_fibring(),
        11 => torsion(),
        12 => determinism(seed),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name: CRITERIA[id - 1], passed, detail, elapsed: start.elapsed() }
}

/// One line per criterion; no timings, so repeated runs render identically.
pub fn render_table(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{:>2}  {mark}  {}  [{}]\n", r.id, r.name, r.detail));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
    out
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

/// Clique complex of a random graph on `lo..=hi` vertices. With probability
/// `cone` one vertex is joined to all others, which makes the complex a cone.
pub fn random_flag_complex(rng: &mut impl Rng, lo: usize, hi: usize, cone: f64) -> SimplicialComplex {
    let n = rng.gen_range(lo..=hi);
    let density = rng.gen_range(0.25..0.9);
    let apex = rng.gen_bool(cone).then(|| rng.gen_range(0..n));
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if apex == Some(a) || apex == Some(b) || rng.gen_bool(density) {
                edges.push((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    SimplicialComplex::flag_completion(&labels, &edges).expect("labels are distinct")
}

const FIELDS: [FieldSpec; 3] = [FieldSpec::Q, FieldSpec::F2, FieldSpec::F3];

fn rp2_headline() -> Outcome {
    let start = Instant::now();
    let a = Raag::new(standard::flag_rp2()).map_err(|e| e.to_string())?;
    let f2 = dfg_betti_raag(&a, FieldSpec::F2, 3);
    let q = dfg_betti_raag(&a, FieldSpec::Q, 3);
    ensure(f2 == 1 && q == 0, || format!("b_3 over F2 = {f2}, over Q = {q}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} vertices; b_3: F2 {f2}, Q {q}", a.num_generators()))
}

fn free_group_gradient() -> Outcome {
    let start = Instant::now();
    let a = Raag::new(standard::points(2)).map_err(|e| e.to_string())?;
    let limit = dfg_betti_raag(&a, FieldSpec::Q, 1);
    for n in 1..=8u64 {
        let rep = cover_betti(&a, &uniform_abelian(&a, n), FieldSpec::Q).map_err(|e| e.to_string())?;
        let b1 = rep.betti_in(1) as u64;
        ensure(b1 == n * n + 1, || format!("n = {n}: b_1 = {b1}"))?;
        let gap = &rep.normalized[1] - BigRational::from_integer(BigInt::from(limit));
        ensure(gap == BigRational::new(1.into(), BigInt::from(n * n)), || format!("n = {n}: gap {gap}"))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok("n = 1..8 exact, gap 1/n^2".into())
}

fn product_gradient() -> Outcome {
    let start = Instant::now();
    let a = Raag::new(standard::cycle(4)).map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for n in 1..=3u64 {
        let rep = cover_betti(&a, &uniform_abelian(&a, n), FieldSpec::F3).map_err(|e| e.to_string())?;
        let b2 = rep.betti_in(2) as u64;
        ensure(b2 == (n * n + 1).pow(2), || format!("n = {n}: b_2 = {b2}"))?;
        seen.push(b2);
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("b_2 = {seen:?}"))
}

/// Abelian quotient with random moduli in `1..=3` and order at most 81.
fn random_abelian(rng: &mut impl Rng, a: &Raag) -> FiniteQuotient {
    let labels = a.complex().labels();
    let mut moduli: Vec<u64> = labels.iter().map(|_| rng.gen_range(1..=3)).collect();
    while moduli.iter().product::<u64>() > 81 {
        let big: Vec<usize> = (0..moduli.len()).filter(|&i| moduli[i] > 1).collect();
        moduli[*big.choose(rng).expect("product > 1")] -= 1;
    }
    let m: BTreeMap<String, u64> = labels.iter().cloned().zip(moduli).collect();
    abelian_quotient(a, &m).expect("valid moduli")
}

fn lower_bound(rng: &mut impl Rng) -> Outcome {
    let mut checks = 0;
    for i in 0..25 {
        let a = Raag::new(random_flag_complex(rng, 1, 6, 0.2)).map_err(|e| e.to_string())?;
        let q = random_abelian(rng, &a);
        let field = FIELDS[i % 3];
        let bad = kaz_violations(&a, std::slice::from_ref(&q), field, 3).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("violations {bad:?}"))?;
        checks += 4;
    }
    Ok(format!("25 complexes, {checks} inequalities, 0 violations"))
}

fn boundary_squares(rng: &mut impl Rng) -> Outcome {
    for i in 0..100 {
        let a = Raag::new(random_flag_complex(rng, 1, 8, 0.2)).map_err(|e| e.to_string())?;
        let field = FIELDS[i % 3];
        for k in 1..=a.salvetti_dim() {
            let prod = a.salvetti_boundary(k, field).mul(&a.salvetti_boundary(k + 1, field));
            ensure(prod.is_zero_in(&a), || format!("complex {i}: d_{k} d_{} != 0", k + 1))?;
        }
        let rep = cover_betti(&a, &FiniteQuotient::trivial(&a), field).map_err(|e| e.to_string())?;
        for k in 0..=a.salvetti_dim() {
            ensure(rep.betti_in(k) == a.cell_count(k), || format!("complex {i}: b_{k} = {}", rep.betti_in(k)))?;
        }
    }
    for k in 1..=5usize {
        let a = Raag::new(standard::full_simplex(k)).map_err(|e| e.to_string())?;
        let rep = cover_betti(&a, &FiniteQuotient::trivial(&a), FieldSpec::Q).map_err(|e| e.to_string())?;
        let mut binom = 1usize;
        for p in 0..=k {
            ensure(rep.betti_in(p) == binom, || format!("k = {k}: b_{p} = {}", rep.betti_in(p)))?;
            binom = binom * (k - p) / (p + 1);
        }
    }
    Ok("100 complexes; full simplices k <= 5 give binomials".into())
}

fn kernel_betti_consistency(rng: &mut impl Rng) -> Outcome {
    let pt = standard::points(1);
    let one = Character::constant(&pt, 1).map_err(|e| e.to_string())?;
    ensure(theorem_b_betti(&pt, &one, 0, FieldSpec::Q) == Ok(1), || "single vertex".into())?;
    for k in 2..=5 {
        let s = standard::full_simplex(k);
        let ones = Character::constant(&s, 1).map_err(|e| e.to_string())?;
        for m in 0..=k + 1 {
            let b = theorem_b_betti(&s, &ones, m, FieldSpec::Q);
            ensure(b == Ok(0), || format!("simplex {k}, degree {m}: {b:?}"))?;
        }
    }
    let mut checked = 0;
    for _ in 0..1000 {
        let l = random_flag_complex(rng, 1, 6, 0.2);
        let vals: Vec<i64> = (0..l.num_vertices()).map(|_| rng.gen_range(-3..=3)).collect();
        let Ok(phi) = Character::from_values(&l, vals) else { continue };
        let m = rng.gen_range(0..=3);
        let field = *FIELDS.choose(rng).expect("nonempty");
        let (a, b) = (theorem_b_betti(&l, &phi, m, field), theorem_b_betti(&l, &phi.negated(), m, field));
        let ok = match (&a, &b) {
            (Ok(x), Ok(y)) => x == y,
            (Err(_), Err(_)) => true,
            _ => false,
        };
        ensure(ok, || format!("{:?} in degree {m}: {a:?} vs {b:?}", phi.values()))?;
        let (ua, ub) = (
            theorem_b_betti_unchecked(&l, &phi, m, field),
            theorem_b_betti_unchecked(&l, &phi.negated(), m, field),
        );
        ensure(ua == ub, || format!("{:?}: unchecked sums differ", phi.values()))?;
        checked += 1;
    }
    ensure(checked >= 950, || format!("only {checked} nonzero characters"))?;
    Ok(format!("base cases hold; {checked} sign flips agree"))
}

fn calibration(rng: &mut impl Rng) -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for i in 0..50 {
        let l = random_flag_complex(rng, 1, 7, 0.3);
        let ones = Character::constant(&l, 1).map_err(|e| e.to_string())?;
        for field in [FieldSpec::Q, FieldSpec::F2] {
            let b = l.reduced_betti(field);
            for n in 0..=3usize {
                let expect = (-1..n as isize).all(|d| b.get(d) == 0);
                let got = is_fpn(&l, &ones, n, field);
                ensure(got == expect, || format!("complex {i}, {field}, n = {n}: {got} vs {expect}"))?;
                if got {
                    yes += 1
                } else {
                    no += 1
                }
            }
        }
    }
    Ok(format!("50 complexes; {yes} FP, {no} not FP"))
}

/// A random nonzero reduced `(n-1)`-cycle of `lk(v)` touching a dead vertex.
fn random_link_cycle(
    rng: &mut impl Rng,
    l: &SimplicialComplex,
    phi: &Character,
    v: usize,
    n: usize,
    field: FieldSpec,
) -> Option<ChainVector> {
    let faces = l.link_faces(&[v]);
    let rows: Vec<&Vec<usize>> = faces.iter().filter(|s| s.len() == n - 1).collect();
    let cols: Vec<&Vec<usize>> = faces.iter().filter(|s| s.len() == n).collect();
    let row_of: BTreeMap<&[usize], usize> = rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut triples = Vec::new();
    for (j, s) in cols.iter().enumerate() {
        for i in 0..s.len() {
            let mut f = s.to_vec();
            f.remove(i);
            triples.push((row_of[f.as_slice()], j, field.from_i64(if i % 2 == 0 { 1 } else { -1 })));
        }
    }
    let d = ExactMatrix::from_triples(rows.len(), cols.len(), field, triples).ok()?;
    let basis = d.kernel_basis();
    if basis.is_empty() {
        return None;
    }
    let mut z = ChainVector::zero(field, n as isize - 1);
    for x in &basis {
        let c = field.from_i64(rng.gen_range(-2..=2));
        for (s, a) in cols.iter().zip(x) {
            z.add_ordered(s, &field.mul(&c, a));
        }
    }
    let touches_dead = z.support().any(|s| s.vertices().iter().any(|&x| !phi.is_living(x)));
    (!z.is_zero() && touches_dead).then_some(z)
}

fn cycle_pushing(rng: &mut impl Rng) -> Outcome {
    let mut per_degree = [0usize; 4];
    let mut attempts = 0;
    while per_degree.iter().sum::<usize>() < 100 {
        attempts += 1;
        ensure(attempts < 200_000, || format!("only {per_degree:?} instances generated"))?;
        let l = random_flag_complex(rng, 3, 7, 0.5);
        let nv = l.num_vertices();
        let mut order: Vec<usize> = (0..nv).collect();
        order.shuffle(rng);
        let dead = if rng.gen_bool(0.7) { 2 } else { 1 };
        let vals: Vec<i64> = (0..nv)
            .map(|x| if order[..dead].contains(&x) { 0 } else { *[-2, -1, 1, 2].choose(rng).expect("nonempty") })
            .collect();
        let Ok(phi) = Character::from_values(&l, vals) else { continue };
        let v = order[rng.gen_range(0..dead)];
        let n = rng.gen_range(1..=3);
        let field = *FIELDS.choose(rng).expect("nonempty");
        if !is_fpn(&l, &phi, n, field) {
            continue;
        }
        let Some(z) = random_link_cycle(rng, &l, &phi, v, n, field) else { continue };
        let push = push_cycle_to_living(&l, &phi, v, &z, n).map_err(|e| format!("solver failure: {e}"))?;
        let in_link = |s: &[usize]| {
            let mut t = s.to_vec();
            t.push(v);
            t.sort_unstable();
            !s.contains(&v) && l.contains(&t)
        };
        let living = push
            .pushed
            .support()
            .all(|s| in_link(s.vertices()) && s.vertices().iter().all(|&x| phi.is_living(x)));
        ensure(living, || "pushed cycle leaves the living link".into())?;
        ensure(push.pushed.boundary().is_zero(), || "pushed chain is not a cycle".into())?;
        ensure(push.witness.support().all(|s| in_link(s.vertices())), || "witness leaves the link".into())?;
        ensure(z.sub(&push.pushed) == push.witness.boundary(), || "z - z' != dw".into())?;
        per_degree[n] += 1;
    }
    Ok(format!(
        "100 instances (n=1: {}, n=2: {}, n=3: {}), 0 solver failures",
        per_degree[1], per_degree[2], per_degree[3]
    ))
}

/// Simple graphs on `1..=max` vertices up to isomorphism, as edge lists.
pub fn graphs_up_to_iso(max: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    let mut layer: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    layer.insert(Vec::new());
    for n in 1..=max {
        if n > 1 {
            let perms = permutations(n);
            let mut next = BTreeSet::new();
            for g in &layer {
                for mask in 0u32..1 << (n - 1) {
                    let mut e = g.clone();
                    e.extend((0..n - 1).filter(|i| mask & (1 << i) != 0).map(|i| (i, n - 1)));
                    next.insert(canonical(&e, &perms));
                }
            }
            layer = next;
        }
        out.extend(layer.iter().map(|e| (n, e.clone())));
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> =
                edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
            e.sort_unstable();
            e
        })
        .min()
        .expect("at least one permutation")
}

fn fibres_fibre() -> Outcome {
    let graphs = graphs_up_to_iso(6);
    ensure(graphs.len() == 1 + 2 + 4 + 11 + 34 + 156, || format!("{} graphs", graphs.len()))?;
    let mut runs = 0;
    for (n_vertices, edges) in &graphs {
        let labels: Vec<String> = (0..*n_vertices).map(|i| i.to_string()).collect();
        let e: Vec<(String, String)> = edges.iter().map(|&(a, b)| (labels[a].clone(), labels[b].clone())).collect();
        let l = SimplicialComplex::flag_completion(&labels, &e).map_err(|e| e.to_string())?;
        for field in [FieldSpec::Q, FieldSpec::F2] {
            for n in 1..=3 {
                ensure(fibres_fibre_check(&l, n, field, 2), || {
                    format!("disagreement on {edges:?}, {field}, n = {n}")
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{} graphs, {runs} checks, bound 2", graphs.len()))
}

fn rp2_fibring() -> Outcome {
    let l = standard::flag_rp2();
    let mut got = Vec::new();
    for (ring, expect) in [("Q", true), ("F2", false), ("Z", false)] {
        let r: CoefficientRing = ring.parse().map_err(|e| format!("{e}"))?;
        let rep = virtually_fpn_fibred(&l, 2, r).map_err(|e| e.to_string())?;
        ensure(rep.verdict == expect, || format!("{ring}: {}", rep.verdict))?;
        ensure(rep.to_json().is_consistent(), || format!("{ring}: inconsistent report"))?;
        got.push(format!("{ring} {}", rep.verdict));
    }
    Ok(got.join(", "))
}

fn torsion() -> Outcome {
    let rp2 = standard::flag_rp2();
    let cone = rp2.cone("apex").map_err(|e| e.to_string())?;
    let apex = cone.index_of("apex").expect("apex exists");
    // the SNF oracle: H_1 of the link is Z/2
    let snf = smith_normal_form(&rp2.boundary_matrix(2, false));
    let tors: BigInt = snf.torsion().iter().product();
    ensure(tors == BigInt::from(2), || format!("link torsion order {tors}"))?;
    let mut vals = vec![0; cone.num_vertices()];
    vals[apex] = 2;
    let alone = Character::from_values(&cone, vals.clone()).map_err(|e| e.to_string())?;
    let t = torsion_term(&cone, &alone, 2);
    ensure(t == BigInt::from(2) * &tors, || format!("apex contribution {t}"))?;
    for (x, val) in vals.iter_mut().enumerate() {
        if x != apex {
            *val = 1;
        }
    }
    let all = Character::from_values(&cone, vals).map_err(|e| e.to_string())?;
    let total = torsion_term(&cone, &all, 2);
    let expect = BigInt::from(4 + rp2.num_vertices());
    ensure(total == expect, || format!("total {total}, expected {expect}"))?;
    Ok(format!("apex contributes {t}; total with living base {total}"))
}

/// Input files used by the example commands, as `(file name, contents)`.
pub fn fixtures() -> Vec<(&'static str, String)> {
    let json = |c: &SimplicialComplex| serde_json::to_string_pretty(&c.to_json()).expect("serialises") + "\n";
    vec![
        ("rp2.json", json(&standard::flag_rp2())),
        ("two_points.json", json(&standard::points(2))),
        ("simplex3.json", json(&standard::full_simplex(3))),
        ("c4.json", json(&standard::cycle(4))),
        ("c4_ones.json", "{\"phi\": {\"0\": 1, \"1\": 1, \"2\": 1, \"3\": 1}}\n".to_string()),
    ]
}

/// Example invocations, with file arguments relative to the fixture directory.
pub fn example_commands() -> Vec<Vec<&'static str>> {
    vec![
        vec!["betti", "--complex", "rp2.json", "--field", "F2", "--degrees", "0..3"],
        vec!["betti", "--complex", "rp2.json", "--field", "Q", "--degrees", "0..3"],
        vec!["gradient", "--complex", "two_points.json", "--field", "F2", "--chain", "abelian:2,3,4", "--degree", "1"],
        vec!["gradient", "--complex", "c4.json", "--field", "F3", "--chain", "abelian:1,2", "--degree", "2", "--format", "json"],
        vec!["fibring", "--complex", "simplex3.json", "--ring", "Z", "--n", "2"],
        vec!["fibring", "--complex", "rp2.json", "--ring", "F2", "--n", "2"],
        vec!["kernel-betti", "--complex", "c4.json", "--character", "c4_ones.json", "--field", "Q", "--degrees", "0..1"],
        vec!["fpn-check", "--complex", "c4.json", "--character", "c4_ones.json", "--field", "Q", "--n", "2"],
        vec!["characters", "--complex", "c4.json", "--n", "1", "--field", "Q", "--bound", "1"],
        vec!["kaz-check", "--complex", "c4.json", "--field", "F2", "--chain", "abelian:1,2", "--max-degree", "2"],
    ]
}

pub fn write_fixtures(dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for (name, text) in fixtures() {
        fs::write(dir.join(name), text)?;
    }
    Ok(())
}

/// Runs an example with file names resolved inside `dir`.
pub fn run_example(dir: &Path, args: &[&str], cache: Option<&Path>) -> crate::commands::Outcome {
    let mut full = vec!["agrarian".to_string()];
    let names: BTreeSet<&str> = fixtures().iter().map(|(n, _)| *n).collect();
    for a in args {
        if names.contains(a) {
            full.push(dir.join(a).to_string_lossy().into_owned());
        } else {
            full.push(a.to_string());
        }
    }
    if let Some(c) = cache {
        full.push("--cache".into());
        full.push(c.to_string_lossy().into_owned());
    }
    run_from(full)
}

struct ScratchDir(PathBuf);

impl Drop for ScratchDir {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn determinism(seed: u64) -> Outcome {
    let scratch = ScratchDir(std::env::temp_dir().join(format!("agrarian-report-{}-{seed}", std::process::id())));
    let dir = scratch.0.join("inputs");
    let cache = scratch.0.join("cache");
    write_fixtures(&dir).map_err(|e| e.to_string())?;
    let examples = example_commands();
    for args in &examples {
        let first = run_example(&dir, args, None);
        ensure(first.code == 0, || format!("{args:?} exited {}: {}", first.code, first.stderr))?;
        let second = run_example(&dir, args, None);
        let cold = run_example(&dir, args, Some(&cache));
        let warm = run_example(&dir, args, Some(&cache));
        for other in [&second, &cold, &warm] {
            ensure(other == &first, || format!("{args:?} output differs between runs"))?;
        }
    }
    let betti = run_example(&dir, &examples[0], None).stdout;
    let parsed: serde_json::Value = serde_json::from_str(&betti).map_err(|e| e.to_string())?;
    ensure(parsed["dfg_betti"] == serde_json::json!([0, 0, 1, 1]), || format!("betti report {parsed}"))?;
    let gradient = run_example(&dir, &examples[2], None).stdout;
    ensure(gradient == "N,b_1,b_1/N\n4,5,5/4\n9,10,10/9\n16,17,17/16\n", || format!("gradient {gradient:?}"))?;
    Ok(format!("{} commands, 4 runs each incl. cold and warm cache", examples.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts_match_the_known_sequence() {
        let graphs = graphs_up_to_iso(5);
        let counts: Vec<usize> = (1..=5).map(|n| graphs.iter().filter(|(k, _)| *k == n).count()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn quotients_stay_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = Raag::new(random_flag_complex(&mut rng, 1, 6, 0.2)).unwrap();
            assert!(random_abelian(&mut rng, &a).order() <= 81);
        }
    }

    #[test]
    fn table_has_a_line_per_criterion() {
        let rows: Vec<CriterionResult> = [1, 10, 11].iter().map(|&i| run_criterion(i, DEFAULT_SEED)).collect();
        let table = render_table(&rows);
        assert_eq!(table.lines().count(), 4);
        assert!(rows.iter().all(|r| r.passed), "{table}");
    }
}
