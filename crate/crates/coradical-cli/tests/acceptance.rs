//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measurements (run with `--nocapture` to see them). The criteria pin
//! the concrete finite facts of the quiver fixtures and the statistical
//! coverage of the verification campaigns.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use coradical::campaign::{
    run_loewy_campaign, run_prop21_campaign, run_remark_campaign, CampaignConfig,
};
use coradical::coalgebra::{dual_algebra, Coalgebra, DualAlgebra};
use coradical::filtration::{
    coradical_filtration, coradical_filtration_from_tower, radical_tower, wedge,
};
use coradical::linalg::{int, Scalar, Subspace};
use coradical::quiver::{
    enumerate_paths, line_quiver, loop_quiver, path_coalgebra, random_acyclic, thick_arrow,
    PathSet,
};
use coradical::theorem::{find_gap_sequence, verify_witness, witness_functional, GapSearch};

fn unit(dim: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![int(0); dim];
    v[k] = int(1);
    v
}

fn loop_fixture(l: usize) -> (PathSet, Coalgebra) {
    let s = enumerate_paths(&loop_quiver(), l);
    let c = path_coalgebra(&s).unwrap();
    (s, c)
}

fn thick_fixture(m: usize) -> (PathSet, Coalgebra) {
    let s = enumerate_paths(&thick_arrow(m).unwrap(), 1);
    let c = path_coalgebra(&s).unwrap();
    (s, c)
}

/// The 50 seeded random acyclic quivers shared by criteria 3-5.
fn random_quiver_fixtures() -> Vec<(PathSet, Coalgebra)> {
    (0..50u64)
        .map(|i| {
            let n_vertices = 2 + (i % 7) as usize; // 2..=8
            let n_arrows = 3 + (i % 18) as usize; // 3..=20
            let q = random_acyclic(n_vertices, n_arrows, 1000 + i);
            let max_len = q.max_path_length().unwrap();
            let s = enumerate_paths(&q, max_len);
            let c = path_coalgebra(&s).unwrap();
            (s, c)
        })
        .collect()
}

/// Fixture battery for the sampling campaigns: 10 coalgebras.
fn battery() -> Vec<(&'static str, PathSet, Coalgebra)> {
    let mut out = Vec::new();
    for (name, m) in [("thick-arrow-1", 1), ("thick-arrow-3", 3), ("thick-arrow-5", 5)] {
        let (s, c) = thick_fixture(m);
        out.push((name, s, c));
    }
    for (name, l) in [("loop-1", 1), ("loop-4", 4), ("loop-8", 8), ("loop-12", 12)] {
        let (s, c) = loop_fixture(l);
        out.push((name, s, c));
    }
    let line = line_quiver(3);
    let s = enumerate_paths(&line, 2);
    let c = path_coalgebra(&s).unwrap();
    out.push(("line-3", s, c));
    for (name, nv, na, seed) in [("random-5-8", 5, 8, 11u64), ("random-6-10", 6, 10, 29u64)] {
        let q = random_acyclic(nv, na, seed);
        let s = enumerate_paths(&q, q.max_path_length().unwrap());
        let c = path_coalgebra(&s).unwrap();
        out.push((name, s, c));
    }
    out
}

#[test]
fn criterion_01_thick_arrow_dimensions() {
    let start = Instant::now();
    let (_, c) = thick_fixture(3);
    assert_eq!(c.dim(), 5);
    let a = dual_algebra(&c).unwrap();
    let tower = radical_tower(&a).unwrap();
    let f = coradical_filtration_from_tower(&c, &tower).unwrap();
    assert_eq!(f.term(0).dim(), 2);
    assert_eq!(*f.term(1), Subspace::full(5));
    assert_eq!(f.length(), 1);
    assert_eq!(tower.radical().dim(), 3);
    assert!(!tower.radical().is_zero());
    assert!(tower.power(2).is_zero());
    assert_eq!(tower.nilpotency_index(), 2);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("ACCEPTANCE 1 thick-arrow dimensions: PASS ({elapsed:?})");
}

/// The 2x2 block upper-triangular algebra with corner K^m.
#[derive(Clone, Debug, PartialEq)]
struct Triangular {
    alpha: Scalar,
    corner: Vec<Scalar>,
    beta: Scalar,
}

impl Triangular {
    fn zero(m: usize) -> Self {
        Triangular {
            alpha: int(0),
            corner: vec![int(0); m],
            beta: int(0),
        }
    }

    fn mul(&self, other: &Triangular) -> Triangular {
        Triangular {
            alpha: &self.alpha * &other.alpha,
            corner: self
                .corner
                .iter()
                .zip(&other.corner)
                .map(|(w, w2)| &self.alpha * w2 + &other.beta * w)
                .collect(),
            beta: &self.beta * &other.beta,
        }
    }

    fn add_scaled(&mut self, coeff: &Scalar, other: &Triangular) {
        self.alpha += coeff * &other.alpha;
        for (x, y) in self.corner.iter_mut().zip(&other.corner) {
            *x += coeff * y;
        }
        self.beta += coeff * &other.beta;
    }
}

/// Images of the dual basis: a* -> E11, b* -> E22, x_i* -> i-th corner unit.
fn triangular_model(m: usize, k: usize) -> Triangular {
    let mut t = Triangular::zero(m);
    match k {
        0 => t.alpha = int(1),
        1 => t.beta = int(1),
        _ => t.corner[k - 2] = int(1),
    }
    t
}

fn model_of(a: &DualAlgebra, m: usize, coords: &[Scalar]) -> Triangular {
    let _ = a;
    let mut out = Triangular::zero(m);
    for (k, v) in coords.iter().enumerate() {
        out.add_scaled(v, &triangular_model(m, k));
    }
    out
}

#[test]
fn criterion_02_triangular_dual() {
    let start = Instant::now();
    for m in [1, 2, 5] {
        let (_, c) = thick_fixture(m);
        let a = dual_algebra(&c).unwrap();
        let dim = c.dim();
        for i in 0..dim {
            for j in 0..dim {
                let product = a.multiply_basis(i, j);
                let expected = triangular_model(m, i).mul(&triangular_model(m, j));
                assert_eq!(
                    model_of(&a, m, &product),
                    expected,
                    "m = {m}, pair ({i}, {j})"
                );
            }
        }
        // the unit maps to the identity matrix
        let one = Triangular {
            alpha: int(1),
            corner: vec![int(0); m],
            beta: int(1),
        };
        assert_eq!(model_of(&a, m, a.unit()), one);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("ACCEPTANCE 2 triangular dual: PASS (m in {{1,2,5}}, {elapsed:?})");
}

#[test]
fn criterion_03_path_grading() {
    let start = Instant::now();
    let mut fixtures = random_quiver_fixtures();
    for l in 1..=8 {
        fixtures.push(loop_fixture(l));
    }
    let count = fixtures.len();
    let mut max_dim = 0;
    for (s, c) in &fixtures {
        max_dim = max_dim.max(c.dim());
        let f = coradical_filtration(c).unwrap();
        assert_eq!(f.length(), s.max_len());
        for n in 0..=f.length() {
            assert_eq!(
                *f.term(n),
                s.span_of_length_at_most(n),
                "C_{n} must be the span of paths of length <= {n}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 3 path grading: PASS ({count} fixtures, max dim {max_dim}, {elapsed:?})"
    );
}

#[test]
fn criterion_04_acyclic_bound() {
    let start = Instant::now();
    for i in 0..50u64 {
        let n_vertices = 2 + (i % 7) as usize;
        let n_arrows = 3 + (i % 18) as usize;
        let q = random_acyclic(n_vertices, n_arrows, 1000 + i);
        let max_len = q.max_path_length().unwrap();
        assert!(
            max_len <= q.vertex_count() - 1,
            "pigeonhole bound violated: {max_len} on {} vertices",
            q.vertex_count()
        );
        let s = enumerate_paths(&q, max_len);
        let c = path_coalgebra(&s).unwrap();
        let a = dual_algebra(&c).unwrap();
        let tower = radical_tower(&a).unwrap();
        assert!(tower.power(max_len + 1).is_zero());
        assert!(!tower.power(max_len).is_zero());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("ACCEPTANCE 4 acyclic bound: PASS (50 quivers, {elapsed:?})");
}

#[test]
fn criterion_05_wedge_identity() {
    let start = Instant::now();
    let mut fixtures: Vec<(PathSet, Coalgebra)> =
        [1, 2, 3, 5].into_iter().map(thick_fixture).collect();
    for l in 1..=8 {
        fixtures.push(loop_fixture(l));
    }
    fixtures.extend(random_quiver_fixtures());
    let mut pairs = 0usize;
    for (_, c) in &fixtures {
        let f = coradical_filtration(c).unwrap();
        for i in 0..=f.length() {
            for j in 0..=f.length() {
                let w = wedge(f.term(i), f.term(j), c).unwrap();
                let expected = f.term((i + j + 1).min(f.length()));
                assert_eq!(w, *expected, "wedge(C_{i}, C_{j})");
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 5 wedge identity: PASS ({} fixtures, {pairs} pairs, {elapsed:?})",
        fixtures.len()
    );
}

#[test]
fn criterion_06_depth_property_suite() {
    let start = Instant::now();
    let mut samples = 0usize;
    for (idx, (name, _, c)) in battery().iter().enumerate() {
        let f = coradical_filtration(c).unwrap();
        let cfg = CampaignConfig {
            samples: 20,
            perturbations: 20,
            seed: 600 + idx as u64,
        };
        let outcome = run_prop21_campaign(c, &f, &cfg).unwrap();
        assert!(
            outcome.all_passed(),
            "depth check failed on {name}: {:?}",
            outcome.failures
        );
        samples += outcome.samples;
    }
    assert_eq!(samples, 200);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "ACCEPTANCE 6 depth property: PASS (200 elements x 20 perturbations, {elapsed:?})"
    );
}

#[test]
fn criterion_07_independence_suite() {
    let start = Instant::now();
    let mut samples = 0usize;
    for (idx, (name, _, c)) in battery().iter().enumerate() {
        let f = coradical_filtration(c).unwrap();
        let cfg = CampaignConfig {
            samples: 20,
            perturbations: 0,
            seed: 700 + idx as u64,
        };
        let outcome = run_remark_campaign(c, &f, &cfg).unwrap();
        assert!(
            outcome.all_passed(),
            "independence failed on {name}: {:?}",
            outcome.failures
        );
        samples += outcome.samples;
    }
    assert_eq!(samples, 200);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("ACCEPTANCE 7 right-tensorand independence: PASS (200 elements, {elapsed:?})");
}

#[test]
fn criterion_08_witness_pipeline() {
    let start = Instant::now();
    let (_, c) = loop_fixture(12);
    let f = coradical_filtration(&c).unwrap();
    let GapSearch::Found(seq) = find_gap_sequence(&c, &f, 2).unwrap() else {
        panic!("loop of length 12 supports a 2-step gap sequence");
    };
    // greedy rule: (v, x^4, x^12)
    assert_eq!(seq.elements()[0], unit(13, 0));
    assert_eq!(seq.elements()[1], unit(13, 4));
    assert_eq!(seq.elements()[2], unit(13, 12));

    let w = witness_functional(&c, &seq, &f).unwrap();
    let table = verify_witness(&c, &seq, &w, &f).unwrap();
    assert!(table.all_pass());
    assert!(table.vanishes_on_bottom);
    assert!(table.unit_on_z.iter().all(|&ok| ok));
    assert!(table.rows[0].lw_hit >= 2);
    assert!(table.rows[1].lw_hit >= 6);
    assert!(table.rows[0].lw_hit > 1); // 2^{n-1} with n = 1
    assert!(table.rows[1].lw_hit > 2); // 2^{n-1} with n = 2

    // negative control: the counit fails exactly the bottom-term row
    let mut eps = w.clone();
    eps.functional = c.counit_functional();
    let bad = verify_witness(&c, &seq, &eps, &f).unwrap();
    assert!(!bad.vanishes_on_bottom);

    // negative control: the zero functional fails exactly the unit rows
    let mut zeroed = w.clone();
    zeroed.functional = coradical::coalgebra::Functional::zero(13);
    let bad = verify_witness(&c, &seq, &zeroed, &f).unwrap();
    assert!(bad.vanishes_on_bottom);
    assert!(bad.unit_on_z.iter().all(|&ok| !ok));

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("ACCEPTANCE 8 witness pipeline: PASS (loop length 12, {elapsed:?})");
}

#[test]
fn criterion_09_loewy_consistency() {
    let start = Instant::now();
    let mut samples = 0usize;
    for (idx, (name, _, c)) in battery().iter().enumerate() {
        let a = dual_algebra(c).unwrap();
        let tower = radical_tower(&a).unwrap();
        let f = coradical_filtration_from_tower(c, &tower).unwrap();
        let cfg = CampaignConfig {
            samples: 100,
            perturbations: 0,
            seed: 900 + idx as u64,
        };
        let outcome = run_loewy_campaign(c, &f, &tower, &cfg).unwrap();
        assert!(
            outcome.all_passed(),
            "loewy consistency failed on {name}: {:?}",
            outcome.failures
        );
        samples += outcome.samples;
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 9 loewy consistency: PASS ({samples} elements over 10 fixtures, {elapsed:?})"
    );
}

#[test]
fn criterion_10_radical_ground_truth() {
    let start = Instant::now();
    let mut fixtures = battery()
        .into_iter()
        .map(|(_, s, c)| (s, c))
        .collect::<Vec<_>>();
    fixtures.extend(random_quiver_fixtures().into_iter().take(10));
    for (s, c) in &fixtures {
        let a = dual_algebra(c).unwrap();
        let tower = radical_tower(&a).unwrap();
        // ground truth: J is spanned by the duals of positive-length paths
        let positive: Vec<Vec<Scalar>> = s
            .paths()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() >= 1)
            .map(|(k, _)| unit(c.dim(), k))
            .collect();
        let expected_j = Subspace::span(c.dim(), &positive).unwrap();
        assert_eq!(*tower.radical(), expected_j);
        // and C0 = annihilator(J) is the vertex span
        let f = coradical_filtration_from_tower(c, &tower).unwrap();
        assert_eq!(*f.term(0), s.span_of_length_at_most(0));
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 10 radical ground truth: PASS ({} fixtures, {elapsed:?})",
        fixtures.len()
    );
}

fn run_cli(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_coradical"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

fn temp_fixture_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coradical-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn criterion_11_determinism() {
    let start = Instant::now();
    let dir = temp_fixture_dir();
    let (_, thick) = thick_fixture(3);
    let thick_path = dir.join("thick-arrow-3.json");
    std::fs::write(&thick_path, coradical::format::emit_coalgebra(&thick)).unwrap();
    let (_, loop8) = loop_fixture(8);
    let loop_path = dir.join("loop-8.json");
    std::fs::write(&loop_path, coradical::format::emit_coalgebra(&loop8)).unwrap();

    for path in [&thick_path, &loop_path] {
        let p = path.to_str().unwrap();
        let first = run_cli(&["report", p, "--format", "structured"]);
        let second = run_cli(&["report", p, "--format", "structured"]);
        assert_eq!(first.2, 0);
        assert_eq!(first, second, "report must be byte-identical");

        let args = [
            "verify", p, "--seed", "7", "--samples", "30", "--perturbations", "5",
            "--format", "structured",
        ];
        let first = run_cli(&args);
        let second = run_cli(&args);
        assert_eq!(first.2, 0, "verify failed: {}", first.1);
        assert_eq!(first, second, "verify must be byte-identical");
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 11 determinism: PASS (report + verify, {elapsed:?})");
}
