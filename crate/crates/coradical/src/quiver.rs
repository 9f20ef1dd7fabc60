//! Quivers, deterministic path enumeration, and the coalgebra builders for
//! truncated path coalgebras and monomial (path sub)coalgebras.
//!
//! Concatenation follows the reading order `t(x_k) = s(x_{k+1})`: a path is a
//! word of arrows where each arrow starts where the previous one ends. Basis
//! order everywhere is by length, then lexicographically by the arrow-name
//! sequence (trivial paths by vertex name), so built coalgebras are
//! byte-stable.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::{int, Scalar, SpanBuilder, Subspace, DEFAULT_DIM_CAP};
use num_traits::Zero;

/// A directed multigraph with named vertices and arrows. Loops and parallel
/// arrows are allowed; names are unique across vertices and arrows.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
}

#[derive(Debug, Clone)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut vertex_index = HashMap::new();
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.contains('.') {
                return Err(Error::Parse(format!(
                    "name {v:?} contains '.', which is reserved for path names"
                )));
            }
            if seen.insert(v.clone(), ()).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
            vertex_index.insert(v.clone(), i);
        }
        let mut resolved = Vec::with_capacity(arrows.len());
        for (name, src, tgt) in arrows {
            if name.contains('.') {
                return Err(Error::Parse(format!(
                    "name {name:?} contains '.', which is reserved for path names"
                )));
            }
            if seen.insert(name.clone(), ()).is_some() {
                return Err(Error::DuplicateName(name));
            }
            let src = *vertex_index
                .get(&src)
                .ok_or(Error::UnknownVertex(src.clone()))?;
            let tgt = *vertex_index
                .get(&tgt)
                .ok_or(Error::UnknownVertex(tgt.clone()))?;
            resolved.push(Arrow { name, src, tgt });
        }
        Ok(Quiver {
            vertices,
            arrows: resolved,
            vertex_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    /// True when the quiver has no oriented cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let (order, _) = self.kahn();
        order.len() == self.vertices.len()
    }

    /// Kahn's algorithm: a topological order plus the vertices left stuck on
    /// a cycle (empty iff the quiver is acyclic).
    fn kahn(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.tgt] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in &self.arrows {
                if a.src == v {
                    indegree[a.tgt] -= 1;
                    if indegree[a.tgt] == 0 && !seen[a.tgt] {
                        seen[a.tgt] = true;
                        stack.push(a.tgt);
                    }
                }
            }
        }
        let stuck = (0..n).filter(|&v| !seen[v]).collect();
        (order, stuck)
    }

    /// Length of the longest path. Requires acyclicity; the result is always
    /// at most `|Q_0| - 1` by the pigeonhole argument.
    pub fn max_path_length(&self) -> Result<usize> {
        let (order, stuck) = self.kahn();
        if let Some(&v) = stuck.first() {
            return Err(Error::CyclicQuiver(self.vertices[v].clone()));
        }
        let mut longest = vec![0usize; self.vertices.len()];
        for &v in &order {
            for a in &self.arrows {
                if a.src == v {
                    longest[a.tgt] = longest[a.tgt].max(longest[v] + 1);
                }
            }
        }
        Ok(longest.into_iter().max().unwrap_or(0))
    }
}

/// A path: a base vertex plus a (possibly empty) composable arrow word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    base: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path {
            base: vertex,
            arrows: Vec::new(),
        }
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let Some(&first) = arrows.first() else {
            return Err(Error::Parse("empty arrow word has no base vertex".into()));
        };
        let mut prev = first;
        for &a in &arrows[1..] {
            if q.arrows()[prev].tgt != q.arrows()[a].src {
                return Err(Error::NonComposablePath {
                    first: q.arrows()[prev].name.clone(),
                    second: q.arrows()[a].name.clone(),
                });
            }
            prev = a;
        }
        Ok(Path {
            base: q.arrows()[first].src,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrow_indices(&self) -> &[usize] {
        &self.arrows
    }

    pub fn source(&self) -> usize {
        self.base
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows
            .last()
            .map_or(self.base, |&a| q.arrows()[a].tgt)
    }

    /// Vertex reached after the first `r` arrows.
    pub fn vertex_at(&self, q: &Quiver, r: usize) -> usize {
        if r == 0 {
            self.base
        } else {
            q.arrows()[self.arrows[r - 1]].tgt
        }
    }

    /// Contiguous subword `[from, to)` as a path.
    pub fn subpath(&self, q: &Quiver, from: usize, to: usize) -> Path {
        if from == to {
            Path::trivial(self.vertex_at(q, from))
        } else {
            Path {
                base: self.vertex_at(q, from),
                arrows: self.arrows[from..to].to_vec(),
            }
        }
    }

    /// Display name: the vertex name for trivial paths, else the arrow names
    /// joined with `.`.
    pub fn name(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            q.vertices()[self.base].clone()
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrows()[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    fn sort_key<'q>(&self, q: &'q Quiver) -> (usize, Vec<&'q str>) {
        if self.arrows.is_empty() {
            (0, vec![q.vertices()[self.base].as_str()])
        } else {
            (
                self.arrows.len(),
                self.arrows
                    .iter()
                    .map(|&a| q.arrows()[a].name.as_str())
                    .collect(),
            )
        }
    }
}

/// A finite, subpath-closed set of paths in a quiver, in deterministic order.
#[derive(Debug, Clone)]
pub struct PathSet {
    quiver: Quiver,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl PathSet {
    /// Validates subpath closure (and that endpoints of every member are
    /// present as trivial paths), dedupes, and sorts.
    pub fn new(quiver: Quiver, mut paths: Vec<Path>) -> Result<Self> {
        paths.sort_by(|a, b| a.sort_key(&quiver).cmp(&b.sort_key(&quiver)));
        paths.dedup();
        let index: HashMap<Path, usize> = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        for p in &paths {
            let n = p.len();
            if n == 0 {
                continue;
            }
            for sub in [p.subpath(&quiver, 0, n - 1), p.subpath(&quiver, 1, n)] {
                if !index.contains_key(&sub) {
                    return Err(Error::NotSubpathClosed {
                        missing: sub.name(&quiver),
                    });
                }
            }
        }
        Ok(PathSet {
            quiver,
            paths,
            index,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn max_len(&self) -> usize {
        self.paths.iter().map(Path::len).max().unwrap_or(0)
    }

    /// Span of the member paths of length at most `n`, as a subspace of the
    /// induced coalgebra's coordinate space. This is the length-grading
    /// ground truth the coradical filtration is checked against.
    pub fn span_of_length_at_most(&self, n: usize) -> Subspace {
        let mut sb = SpanBuilder::new(self.paths.len());
        for (k, p) in self.paths.iter().enumerate() {
            if p.len() <= n {
                let mut v = vec![Scalar::zero(); self.paths.len()];
                v[k] = int(1);
                sb.insert(&v);
            }
        }
        sb.into_subspace()
    }
}

/// All paths of length at most `max_len`, subpath-closed by construction,
/// in deterministic order.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> PathSet {
    let mut all: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut level: Vec<Path> = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &level {
            let end = p.target(q);
            for (ai, a) in q.arrows().iter().enumerate() {
                if a.src == end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        base: p.base,
                        arrows,
                    });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    PathSet::new(q.clone(), all).expect("length-truncated enumeration is subpath-closed")
}

/// The (monomial) path coalgebra on a subpath-closed set: a path splits over
/// all two-factor concatenations, and the counit is `1` exactly on trivial
/// paths.
pub fn path_coalgebra(s: &PathSet) -> Result<Coalgebra> {
    path_coalgebra_with_cap(s, DEFAULT_DIM_CAP)
}

pub fn path_coalgebra_with_cap(s: &PathSet, cap: usize) -> Result<Coalgebra> {
    let q = s.quiver();
    let names: Vec<String> = s.paths().iter().map(|p| p.name(q)).collect();
    let mut delta = Vec::with_capacity(s.len());
    let mut counit = Vec::with_capacity(s.len());
    for p in s.paths() {
        let n = p.len();
        let mut monomials = Vec::with_capacity(n + 1);
        for r in 0..=n {
            let left = p.subpath(q, 0, r);
            let right = p.subpath(q, r, n);
            let li = s.index_of(&left).ok_or_else(|| Error::NotSubpathClosed {
                missing: left.name(q),
            })?;
            let ri = s.index_of(&right).ok_or_else(|| Error::NotSubpathClosed {
                missing: right.name(q),
            })?;
            monomials.push((li, ri, int(1)));
        }
        delta.push(monomials);
        counit.push(if n == 0 { int(1) } else { Scalar::zero() });
    }
    Coalgebra::with_cap(names, delta, counit, cap)
}

/// Member paths starting at the given vertex (a trivial path starts at its
/// own vertex); this spans the injective hull of the simple comodule there.
pub fn injective_hull_basis(s: &PathSet, vertex: &str) -> Result<Vec<Path>> {
    let v = s
        .quiver()
        .vertex_index(vertex)
        .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))?;
    Ok(s.paths()
        .iter()
        .filter(|p| p.source() == v)
        .cloned()
        .collect())
}

/// Two vertices `a, b` with `m` parallel arrows `x1..xm` from `a` to `b`.
pub fn thick_arrow(m: usize) -> Result<Quiver> {
    if m == 0 {
        return Err(Error::EmptyThickArrow);
    }
    Quiver::new(
        vec!["a".into(), "b".into()],
        (1..=m)
            .map(|i| (format!("x{i}"), "a".to_string(), "b".to_string()))
            .collect(),
    )
}

/// One vertex with a single loop.
pub fn loop_quiver() -> Quiver {
    Quiver::new(
        vec!["v".into()],
        vec![("x".to_string(), "v".to_string(), "v".to_string())],
    )
    .expect("loop quiver is well-formed")
}

/// A linear `A_n` quiver `v1 -> v2 -> ... -> vn`.
pub fn line_quiver(n: usize) -> Quiver {
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let arrows = (1..n)
        .map(|i| (format!("a{i}"), format!("v{i}"), format!("v{}", i + 1)))
        .collect();
    Quiver::new(vertices, arrows).expect("line quiver is well-formed")
}

/// Seeded acyclic quiver generator (ChaCha8 PRNG, platform-stable): vertices
/// are totally ordered and every arrow goes strictly forward, so the result
/// is acyclic by construction. Parallel arrows are allowed; arrow requests
/// are dropped when fewer than two vertices exist.
pub fn random_acyclic(n_vertices: usize, n_arrows: usize, seed: u64) -> Quiver {
    let n = n_vertices.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut arrows = Vec::new();
    if n >= 2 {
        for k in 1..=n_arrows {
            let mut a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            while a == b {
                a = rng.gen_range(0..n);
                b = rng.gen_range(0..n);
            }
            let (src, tgt) = (a.min(b), a.max(b));
            arrows.push((format!("e{k}"), format!("v{src}"), format!("v{tgt}")));
        }
    }
    Quiver::new(vertices, arrows).expect("generated quiver is well-formed")
}

/// Convenience: the path coalgebra of all paths of length at most `max_len`.
pub fn truncated_path_coalgebra(q: &Quiver, max_len: usize) -> Result<Coalgebra> {
    path_coalgebra(&enumerate_paths(q, max_len))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &PathSet) -> Vec<String> {
        s.paths().iter().map(|p| p.name(s.quiver())).collect()
    }

    #[test]
    fn single_vertex_enumeration() {
        let q = Quiver::new(vec!["v".into()], vec![]).unwrap();
        let s = enumerate_paths(&q, 5);
        assert_eq!(names(&s), vec!["v"]);
    }

    #[test]
    fn thick_arrow_enumeration() {
        let q = thick_arrow(3).unwrap();
        let s = enumerate_paths(&q, 1);
        assert_eq!(names(&s), vec!["a", "b", "x1", "x2", "x3"]);
        // longer caps change nothing: all paths have length <= 1
        assert_eq!(enumerate_paths(&q, 4).len(), 5);
    }

    #[test]
    fn loop_enumeration() {
        let s = enumerate_paths(&loop_quiver(), 4);
        assert_eq!(s.len(), 5);
        assert_eq!(s.paths()[4].len(), 4);
        assert_eq!(names(&s)[2], "x.x");
    }

    #[test]
    fn enumeration_is_subpath_closed() {
        for (q, cap) in [
            (thick_arrow(2).unwrap(), 3),
            (loop_quiver(), 5),
            (line_quiver(4), 3),
            (random_acyclic(6, 9, 42), 5),
        ] {
            let s = enumerate_paths(&q, cap);
            // PathSet::new re-validates closure
            assert!(PathSet::new(q, s.paths().to_vec()).is_ok());
        }
    }

    #[test]
    fn path_set_rejects_missing_subpath() {
        let q = line_quiver(3);
        // the composite a1.a2 without the single arrow a2
        let p = Path::from_arrows(&q, vec![0, 1]).unwrap();
        let trivials: Vec<Path> = (0..3).map(Path::trivial).collect();
        let mut paths = trivials.clone();
        paths.push(Path::from_arrows(&q, vec![0]).unwrap());
        paths.push(p);
        let err = PathSet::new(q, paths).unwrap_err();
        assert!(matches!(err, Error::NotSubpathClosed { missing } if missing == "a2"));
    }

    #[test]
    fn non_composable_word_rejected() {
        let q = thick_arrow(2).unwrap();
        assert!(matches!(
            Path::from_arrows(&q, vec![0, 1]),
            Err(Error::NonComposablePath { .. })
        ));
    }

    #[test]
    fn grouplike_from_single_vertex() {
        let q = Quiver::new(vec!["v".into()], vec![]).unwrap();
        let c = truncated_path_coalgebra(&q, 0).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.delta(0), &[(0, 0, int(1))]);
        assert_eq!(c.counit(), &[int(1)]);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn thick_arrow_coalgebra_matches_hand_fixture() {
        let c = truncated_path_coalgebra(&thick_arrow(3).unwrap(), 1).unwrap();
        let h = crate::coalgebra::fixtures::thick_arrow_3();
        assert_eq!(c.dim(), h.dim());
        assert_eq!(c.basis_names(), h.basis_names());
        for k in 0..c.dim() {
            assert_eq!(c.delta(k), h.delta(k));
        }
        assert_eq!(c.counit(), h.counit());
    }

    #[test]
    fn loop_coalgebra_matches_chain() {
        let c = truncated_path_coalgebra(&loop_quiver(), 4).unwrap();
        let h = crate::coalgebra::fixtures::chain(4);
        assert_eq!(c.dim(), h.dim());
        for k in 0..c.dim() {
            assert_eq!(c.delta(k), h.delta(k));
        }
        assert_eq!(c.counit(), h.counit());
    }

    #[test]
    fn built_coalgebras_validate() {
        for c in [
            truncated_path_coalgebra(&thick_arrow(5).unwrap(), 1).unwrap(),
            truncated_path_coalgebra(&loop_quiver(), 7).unwrap(),
            truncated_path_coalgebra(&line_quiver(4), 3).unwrap(),
            truncated_path_coalgebra(&random_acyclic(6, 10, 7), 5).unwrap(),
        ] {
            assert!(c.validate().is_valid());
            let dual = crate::coalgebra::dual_algebra(&c).unwrap();
            assert!(dual.check_algebra_axioms());
        }
    }

    #[test]
    fn acyclicity_and_longest_paths() {
        assert!(!loop_quiver().is_acyclic());
        assert!(loop_quiver().max_path_length().is_err());
        for n in 2..=5 {
            let q = line_quiver(n);
            assert!(q.is_acyclic());
            assert_eq!(q.max_path_length().unwrap(), n - 1);
        }
        let t = thick_arrow(3).unwrap();
        assert!(t.is_acyclic());
        assert_eq!(t.max_path_length().unwrap(), 1);
    }

    #[test]
    fn injective_hulls_partition_the_paths() {
        let q = thick_arrow(3).unwrap();
        let s = enumerate_paths(&q, 1);
        let from_a = injective_hull_basis(&s, "a").unwrap();
        let from_b = injective_hull_basis(&s, "b").unwrap();
        let name =
            |ps: &[Path]| ps.iter().map(|p| p.name(s.quiver())).collect::<Vec<_>>();
        assert_eq!(name(&from_a), vec!["a", "x1", "x2", "x3"]);
        assert_eq!(name(&from_b), vec!["b"]);
        assert_eq!(from_a.len() + from_b.len(), s.len());
        assert!(injective_hull_basis(&s, "c").is_err());

        let l = enumerate_paths(&loop_quiver(), 4);
        assert_eq!(injective_hull_basis(&l, "v").unwrap().len(), 5);
    }

    #[test]
    fn thick_arrow_sizes() {
        assert!(thick_arrow(0).is_err());
        assert_eq!(thick_arrow(1).unwrap().arrow_count(), 1);
        let c = truncated_path_coalgebra(&thick_arrow(5).unwrap(), 1).unwrap();
        assert_eq!(c.dim(), 7);
    }

    #[test]
    fn random_acyclic_is_deterministic_and_acyclic() {
        for seed in 0..20 {
            let q1 = random_acyclic(6, 12, seed);
            let q2 = random_acyclic(6, 12, seed);
            assert!(q1.is_acyclic());
            assert_eq!(q1.vertex_count(), q2.vertex_count());
            assert_eq!(q1.arrow_count(), q2.arrow_count());
            for (a, b) in q1.arrows().iter().zip(q2.arrows()) {
                assert_eq!((a.src, a.tgt, &a.name), (b.src, b.tgt, &b.name));
            }
            assert!(q1.max_path_length().unwrap() <= q1.vertex_count() - 1);
        }
    }

    #[test]
    fn single_vertex_random_quiver_drops_arrows() {
        let q = random_acyclic(1, 5, 3);
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arrow_count(), 0);
    }

    #[test]
    fn two_vertex_random_quiver_is_thick_arrow_like() {
        let q = random_acyclic(2, 3, 9);
        assert_eq!(q.arrow_count(), 3);
        for a in q.arrows() {
            assert_eq!((a.src, a.tgt), (0, 1));
        }
    }

    #[test]
    fn span_of_lengths_is_graded() {
        let s = enumerate_paths(&loop_quiver(), 3);
        for n in 0..=3 {
            assert_eq!(s.span_of_length_at_most(n).dim(), n + 1);
        }
    }

    #[test]
    fn composite_line_path_generates_everything() {
        // the subcoalgebra generated by the full-length path of the A3 line
        // contains every subpath, hence all six basis paths
        let c = truncated_path_coalgebra(&line_quiver(3), 2).unwrap();
        let p = c.index_of("a1.a2").unwrap();
        let mut x = vec![Scalar::zero(); c.dim()];
        x[p] = int(1);
        let s = crate::coalgebra::subcoalgebra_generated(&x, &c).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s, crate::linalg::Subspace::full(6));
    }
}
