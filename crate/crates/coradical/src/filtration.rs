//! The radical/coradical engine: Jacobson radical of the dual algebra via the
//! regular-representation trace form, radical powers and nilpotency index,
//! the coradical filtration via annihilators (cross-checked against the wedge
//! route), Loewy lengths, and Loewy-adapted bases.
//!
//! Two independent routes to the same chain keep each other honest: the
//! filtration terms are computed as annihilators of radical powers and must
//! coincide with iterated wedges of the bottom term. A mismatch is reported
//! as an internal-consistency error, never papered over.

use std::collections::HashMap;

use num_traits::Zero;

use crate::coalgebra::{dual_algebra, Coalgebra, DualAlgebra, Functional};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix, Scalar, SpanBuilder, Subspace};

/// The chain `J ⊇ J² ⊇ …` of radical powers, ending at the first zero power.
#[derive(Debug, Clone)]
pub struct RadicalTower {
    /// `powers[k]` is `J^{k+1}`; the last entry is the zero ideal.
    powers: Vec<Subspace>,
}

impl RadicalTower {
    /// The Jacobson radical `J`.
    pub fn radical(&self) -> &Subspace {
        &self.powers[0]
    }

    /// `J^k`, with `J⁰ = A` and everything beyond the nilpotency index zero.
    pub fn power(&self, k: usize) -> Subspace {
        let dim = self.powers[0].ambient_dim();
        if k == 0 {
            Subspace::full(dim)
        } else if k <= self.powers.len() {
            self.powers[k - 1].clone()
        } else {
            Subspace::zero(dim)
        }
    }

    /// The computed powers `J¹, J², …` up to and including the first zero.
    pub fn powers(&self) -> &[Subspace] {
        &self.powers
    }

    /// Smallest `n` with `Jⁿ = 0`; `1` for a semisimple algebra.
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(Subspace::dim).collect()
    }
}

/// Gram matrix of the trace form `τ(x, y) = tr(L_x ∘ L_y) = tr(L_{xy})` of
/// the left regular representation.
fn trace_gram(a: &DualAlgebra) -> Matrix {
    let d = a.dim();
    // tr(L_{e^i}) = Σ_j m(i, j, j)
    let mut traces = vec![Scalar::zero(); d];
    for ((i, j), pairs) in a.mult_iter() {
        for (k, c) in pairs {
            if k == j {
                traces[*i] += c;
            }
        }
    }
    let mut g = Matrix::zero(d, d);
    for ((i, j), pairs) in a.mult_iter() {
        for (k, c) in pairs {
            if !traces[*k].is_zero() {
                *g.at_mut(*i, *j) += c * &traces[*k];
            }
        }
    }
    g
}

/// The Jacobson radical of the dual algebra: the radical of the trace form
/// of the left regular representation (characteristic zero). Verified to be
/// a two-sided ideal; nilpotency is verified by [`radical_tower`].
pub fn jacobson_radical(a: &DualAlgebra) -> Result<Subspace> {
    let j = kernel(&trace_gram(a));
    // two-sided ideal closure under all basis multiplications
    let checker = j.to_builder();
    for w in j.basis_rows() {
        for i in 0..a.dim() {
            let e = Functional::dual_basis(a.dim(), i);
            let left = a.multiply(e.coords(), w)?;
            let right = a.multiply(w, e.coords())?;
            if !checker.contains(&left) || !checker.contains(&right) {
                return Err(Error::InternalConsistency(
                    "trace-form radical is not a two-sided ideal".into(),
                ));
            }
        }
    }
    Ok(j)
}

/// Radical powers by iterated span of products until zero. The chain must
/// strictly decrease while nonzero (it does for the genuine radical, which
/// is nilpotent at finite dimension); a stall is an internal error.
pub fn radical_tower(a: &DualAlgebra) -> Result<RadicalTower> {
    let j = jacobson_radical(a)?;
    let mut powers = vec![j.clone()];
    while !powers.last().unwrap().is_zero() {
        let prev = powers.last().unwrap();
        let mut sb = SpanBuilder::new(a.dim());
        for u in prev.basis_rows() {
            for w in j.basis_rows() {
                sb.insert(&a.multiply(u, w)?);
            }
        }
        let next = sb.into_subspace();
        if next.dim() >= prev.dim() {
            return Err(Error::InternalConsistency(
                "radical power chain stopped decreasing before reaching zero".into(),
            ));
        }
        if powers.len() > a.dim() {
            return Err(Error::InternalConsistency(
                "radical power chain exceeded the dimension bound".into(),
            ));
        }
        powers.push(next);
    }
    Ok(RadicalTower { powers })
}

/// Annihilator in `C` of a subspace of functionals: `{x : f(x) = 0 ∀ f ∈ s}`.
/// Its dimension is `dim C − dim s`.
pub fn annihilator(s: &Subspace, c: &Coalgebra) -> Result<Subspace> {
    if s.ambient_dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: s.ambient_dim(),
        });
    }
    Ok(kernel(s.basis()))
}

/// The wedge `X ∧ Y = Δ⁻¹(X⊗C + C⊗Y)`, computed as the kernel of
/// `(π_X ⊗ π_Y) ∘ Δ` where the projections are realized by annihilator
/// bases: `x` lies in the wedge iff `U·Δ(x)·Vᵀ = 0` for `U, V` bases of
/// `X^⊥, Y^⊥`. Constraint rows are assembled sparsely through Δ.
pub fn wedge(x: &Subspace, y: &Subspace, c: &Coalgebra) -> Result<Subspace> {
    let d = c.dim();
    if x.ambient_dim() != d || y.ambient_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: if x.ambient_dim() != d {
                x.ambient_dim()
            } else {
                y.ambient_dim()
            },
        });
    }
    let u = crate::coalgebra::perp_in_dual(x);
    let v = crate::coalgebra::perp_in_dual(y);
    if u.is_zero() || v.is_zero() {
        return Ok(Subspace::full(d));
    }
    // per-column supports of U and V
    let column_support = |m: &Subspace| -> Vec<Vec<(usize, Scalar)>> {
        let mut cols = vec![Vec::new(); d];
        for (r, row) in m.basis_rows().enumerate() {
            for (i, val) in row.iter().enumerate() {
                if !val.is_zero() {
                    cols[i].push((r, val.clone()));
                }
            }
        }
        cols
    };
    let ucols = column_support(&u);
    let vcols = column_support(&v);
    // constraint row (r, s): Σ_k x_k · Σ_{(i,j)∈Δ_k} U[r][i]·coeff·V[s][j] = 0
    let mut rows: HashMap<(usize, usize), HashMap<usize, Scalar>> = HashMap::new();
    for k in 0..d {
        for (i, j, coeff) in c.delta(k) {
            for (r, uri) in &ucols[*i] {
                let partial = uri * coeff;
                for (s, vsj) in &vcols[*j] {
                    let entry = rows
                        .entry((*r, *s))
                        .or_default()
                        .entry(k)
                        .or_insert_with(Scalar::zero);
                    *entry += &partial * vsj;
                }
            }
        }
    }
    let mut keys: Vec<(usize, usize)> = rows.keys().copied().collect();
    keys.sort_unstable();
    let mut constraint_rows = Vec::with_capacity(keys.len());
    for key in keys {
        let sparse = &rows[&key];
        let mut row = vec![Scalar::zero(); d];
        let mut nonzero = false;
        for (k, val) in sparse {
            if !val.is_zero() {
                row[*k] = val.clone();
                nonzero = true;
            }
        }
        if nonzero {
            constraint_rows.push(row);
        }
    }
    if constraint_rows.is_empty() {
        return Ok(Subspace::full(d));
    }
    Ok(kernel(&Matrix::from_rows(constraint_rows)?))
}

/// The nested chain `C₀ ⊆ C₁ ⊆ … ⊆ C`, each term the annihilator of the
/// next radical power, cross-checked against the wedge route.
#[derive(Debug, Clone)]
pub struct CoradicalFiltration {
    terms: Vec<Subspace>,
}

impl CoradicalFiltration {
    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    /// `C_n`, saturating at `C` beyond the filtration length.
    pub fn term(&self, n: usize) -> &Subspace {
        let idx = n.min(self.terms.len() - 1);
        &self.terms[idx]
    }

    /// Smallest `n` with `C_n = C`.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.terms[0].ambient_dim()
    }
}

/// Computes the coradical filtration of a validated coalgebra:
/// `terms[n] = annihilator(J^{n+1})`, verified nested, terminating at `C`,
/// and equal to the wedge route `C_n = C_{n−1} ∧ C₀`.
pub fn coradical_filtration(c: &Coalgebra) -> Result<CoradicalFiltration> {
    let a = dual_algebra(c)?;
    let tower = radical_tower(&a)?;
    coradical_filtration_from_tower(c, &tower)
}

/// Same as [`coradical_filtration`] given an already-computed tower.
pub fn coradical_filtration_from_tower(
    c: &Coalgebra,
    tower: &RadicalTower,
) -> Result<CoradicalFiltration> {
    let mut terms = Vec::with_capacity(tower.nilpotency_index());
    for n in 0..tower.nilpotency_index() {
        terms.push(annihilator(&tower.power(n + 1), c)?);
    }
    if terms.len() > c.dim() + 1 {
        return Err(Error::InternalConsistency(
            "coradical filtration exceeded the dimension bound".into(),
        ));
    }
    let full = Subspace::full(c.dim());
    if *terms.last().unwrap() != full {
        return Err(Error::InternalConsistency(
            "coradical filtration did not terminate at C".into(),
        ));
    }
    for w in terms.windows(2) {
        if !w[1].contains_subspace(&w[0])? || w[1].dim() <= w[0].dim() {
            return Err(Error::InternalConsistency(
                "coradical filtration is not strictly increasing".into(),
            ));
        }
    }
    // independent route: C_n = C_{n-1} ∧ C_0
    for n in 1..terms.len() {
        let wedged = wedge(&terms[n - 1], &terms[0], c)?;
        if wedged != terms[n] {
            return Err(Error::InternalConsistency(format!(
                "annihilator and wedge routes disagree at filtration step {n}"
            )));
        }
    }
    Ok(CoradicalFiltration { terms })
}

/// Loewy length: `n+1` for the unique `n` with `x ∈ C_n ∖ C_{n−1}`, and `0`
/// for the zero vector.
pub fn loewy_length(x: &[Scalar], f: &CoradicalFiltration) -> usize {
    if crate::linalg::is_zero_vec(x) {
        return 0;
    }
    for (n, term) in f.terms.iter().enumerate() {
        if term.contains(x).unwrap_or(false) {
            return n + 1;
        }
    }
    // unreachable for x in C: the last term is all of C
    f.terms.len() + 1
}

/// Loewy length of a subspace: the maximum over its elements, attained on
/// any basis; `0` for the zero subspace.
pub fn subspace_loewy_length(s: &Subspace, f: &CoradicalFiltration) -> usize {
    s.basis_rows().map(|row| loewy_length(row, f)).max().unwrap_or(0)
}

/// One vector of a Loewy-adapted basis, tagged with its grade
/// (`loewy_length = grade + 1`).
#[derive(Debug, Clone)]
pub struct AdaptedVector {
    pub grade: usize,
    pub vector: Vec<Scalar>,
}

/// A basis of `w` partitioned by filtration grade: the vectors of grade
/// `≤ j` form a basis of `w ∩ C_j`. Computed by intersecting `w` with the
/// flag and echelon-reducing each layer against the span of the previous
/// ones; deterministic.
pub fn loewy_adapted_basis(w: &Subspace, f: &CoradicalFiltration) -> Result<Vec<AdaptedVector>> {
    let mut out = Vec::with_capacity(w.dim());
    let mut lower = SpanBuilder::new(w.ambient_dim());
    for (grade, term) in f.terms.iter().enumerate() {
        let layer = w.intersect(term)?;
        let mut fresh = SpanBuilder::new(w.ambient_dim());
        for row in layer.basis_rows() {
            let reduced = lower.reduce(row);
            fresh.insert(&reduced);
        }
        let complement = fresh.into_subspace();
        for row in complement.basis_rows() {
            out.push(AdaptedVector {
                grade,
                vector: row.to_vec(),
            });
            lower.insert(row);
        }
        if out.len() == w.dim() {
            break;
        }
    }
    debug_assert_eq!(out.len(), w.dim());
    Ok(out)
}

/// Span of `{f·x : f ∈ s}` under the left hit action; `J^k·x = 0` tests use
/// this with `s = J^k`.
pub fn radical_power_hits(
    tower: &RadicalTower,
    k: usize,
    x: &[Scalar],
    c: &Coalgebra,
) -> Result<Subspace> {
    crate::coalgebra::act_subspace_left(&tower.power(k), x, c)
}

/// Summary data for reports: all dimensions plus the self-check outcomes.
#[derive(Debug, Clone)]
pub struct EngineSummary {
    pub dim: usize,
    pub coradical_dims: Vec<usize>,
    pub radical_dims: Vec<usize>,
    pub nilpotency_index: usize,
    pub filtration_length: usize,
    /// Annihilator and wedge routes produced identical terms (verified
    /// during construction).
    pub two_route_agreement: bool,
    /// The radical equals the annihilator of `C₀` in the dual.
    pub radical_is_coradical_perp: bool,
}

/// Runs the full engine on a validated coalgebra and summarizes it.
pub fn engine_summary(c: &Coalgebra) -> Result<EngineSummary> {
    let a = dual_algebra(c)?;
    let tower = radical_tower(&a)?;
    let filtration = coradical_filtration_from_tower(c, &tower)?;
    let perp = crate::coalgebra::perp_in_dual(&filtration.terms()[0]);
    Ok(EngineSummary {
        dim: c.dim(),
        coradical_dims: filtration.dims(),
        radical_dims: tower.dims(),
        nilpotency_index: tower.nilpotency_index(),
        filtration_length: filtration.length(),
        two_route_agreement: true,
        radical_is_coradical_perp: perp == *tower.radical(),
    })
}
