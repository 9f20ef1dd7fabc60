//! The coalgebra data model `(C, Δ, ε)`, its axioms, the dual algebra with
//! convolution product, and the left/right hit actions of functionals on `C`.
//!
//! A coalgebra is stored by structure constants: for each basis index `k`,
//! `Δ(e_k) = Σ coeff · e_i ⊗ e_j` as a sparse list of `(i, j, coeff)`
//! monomials. The dual algebra is the transpose of the same data: the
//! convolution product satisfies `e^i * e^j = Σ_k c^k_{ij} e^k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{kernel, rref, Matrix, Scalar, SpanBuilder, Subspace, DEFAULT_DIM_CAP};

/// A finite-dimensional coalgebra over the rationals.
#[derive(Clone)]
pub struct Coalgebra {
    dim: usize,
    basis_names: Vec<String>,
    name_index: HashMap<String, usize>,
    /// `delta[k]` lists the monomials of `Δ(e_k)` with distinct `(i, j)` pairs
    /// and nonzero coefficients, sorted by `(i, j)`.
    delta: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vec<Scalar>,
}

impl Coalgebra {
    /// Builds a coalgebra from named structure constants, normalizing each
    /// delta list (duplicate `(i, j)` pairs merged, zero coefficients
    /// dropped). The coalgebra axioms themselves are *not* checked here;
    /// see [`Coalgebra::validate`].
    pub fn new(
        basis_names: Vec<String>,
        delta: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        Self::with_cap(basis_names, delta, counit, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(
        basis_names: Vec<String>,
        delta: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
        cap: usize,
    ) -> Result<Self> {
        let dim = basis_names.len();
        if dim > cap {
            return Err(Error::DimensionCapExceeded { dim, cap });
        }
        let mut name_index = HashMap::with_capacity(dim);
        for (k, name) in basis_names.iter().enumerate() {
            if name_index.insert(name.clone(), k).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if delta.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: delta.len(),
            });
        }
        if counit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: counit.len(),
            });
        }
        let mut normalized = Vec::with_capacity(dim);
        for list in delta {
            let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (i, j, c) in list {
                if i >= dim {
                    return Err(Error::IndexOutOfRange { index: i, dim });
                }
                if j >= dim {
                    return Err(Error::IndexOutOfRange { index: j, dim });
                }
                *map.entry((i, j)).or_insert_with(Scalar::zero) += c;
            }
            normalized.push(
                map.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|((i, j), c)| (i, j, c))
                    .collect(),
            );
        }
        Ok(Coalgebra {
            dim,
            basis_names,
            name_index,
            delta: normalized,
            counit,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn name(&self, k: usize) -> &str {
        &self.basis_names[k]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    pub fn delta(&self, k: usize) -> &[(usize, usize, Scalar)] {
        &self.delta[k]
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    /// Number of tensor monomials across all `Δ(e_k)`.
    pub fn delta_nnz(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    /// The `k`-th standard basis vector.
    pub fn basis_vector(&self, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[k] = Scalar::one();
        v
    }

    pub(crate) fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Coefficient matrix of `Δ(x)`: entry `(i, j)` is the coefficient of
    /// `e_i ⊗ e_j`.
    pub fn delta_matrix(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_vec(x)?;
        let mut d = Matrix::zero(self.dim, self.dim);
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (i, j, c) in &self.delta[k] {
                *d.at_mut(*i, *j) += xk * c;
            }
        }
        Ok(d)
    }

    /// Checks the coalgebra axioms, reporting every violated instance.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for k in 0..self.dim {
            // (Δ⊗id)Δ(e_k) versus (id⊗Δ)Δ(e_k) in C⊗C⊗C
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (i, j, c) in &self.delta[k] {
                for (a, b, c2) in &self.delta[*i] {
                    *lhs.entry((*a, *b, *j)).or_insert_with(Scalar::zero) += c * c2;
                }
                for (b, c3, c2) in &self.delta[*j] {
                    *rhs.entry((*i, *b, *c3)).or_insert_with(Scalar::zero) += c * c2;
                }
            }
            lhs.retain(|_, c| !c.is_zero());
            rhs.retain(|_, c| !c.is_zero());
            if lhs != rhs {
                violations.push(AxiomViolation::Coassociativity { index: k });
            }
            // (ε⊗id)Δ(e_k) = e_k and (id⊗ε)Δ(e_k) = e_k
            let mut left = vec![Scalar::zero(); self.dim];
            let mut right = vec![Scalar::zero(); self.dim];
            for (i, j, c) in &self.delta[k] {
                left[*j] += c * &self.counit[*i];
                right[*i] += c * &self.counit[*j];
            }
            let is_ek = |v: &[Scalar]| {
                v.iter()
                    .enumerate()
                    .all(|(i, c)| if i == k { c.is_one() } else { c.is_zero() })
            };
            if !is_ek(&left) {
                violations.push(AxiomViolation::CounitLeft { index: k });
            }
            if !is_ek(&right) {
                violations.push(AxiomViolation::CounitRight { index: k });
            }
        }
        ValidationReport { violations }
    }

    /// The counit as an element of the dual.
    pub fn counit_functional(&self) -> Functional {
        Functional::new(self.counit.clone())
    }
}

impl fmt::Debug for Coalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coalgebra(dim {}, basis {:?})", self.dim, self.basis_names)
    }
}

/// One violated axiom instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Coassociativity { index: usize },
    CounitLeft { index: usize },
    CounitRight { index: usize },
}

impl AxiomViolation {
    pub fn describe(&self, c: &Coalgebra) -> String {
        match self {
            AxiomViolation::Coassociativity { index } => {
                format!("coassociativity fails at basis element {:?}", c.name(*index))
            }
            AxiomViolation::CounitLeft { index } => format!(
                "counit law (eps x id)delta = id fails at basis element {:?}",
                c.name(*index)
            ),
            AxiomViolation::CounitRight { index } => format!(
                "counit law (id x eps)delta = id fails at basis element {:?}",
                c.name(*index)
            ),
        }
    }
}

/// Validation outcome; empty iff both coalgebra axioms hold everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[AxiomViolation] {
        &self.violations
    }
}

/// An element of the dual space `C*`, evaluated by coordinate pairing.
#[derive(Clone, PartialEq, Eq)]
pub struct Functional {
    coords: Vec<Scalar>,
}

impl Functional {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Functional { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Functional::new(vec![Scalar::zero(); dim])
    }

    /// The dual basis functional `e^k`.
    pub fn dual_basis(dim: usize, k: usize) -> Self {
        let mut coords = vec![Scalar::zero(); dim];
        coords[k] = Scalar::one();
        Functional::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn evaluate(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.coords.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coords.len(),
                found: x.len(),
            });
        }
        Ok(crate::linalg::dot(&self.coords, x))
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(crate::linalg::format_scalar)
            .collect();
        write!(f, "Functional[{}]", parts.join(", "))
    }
}

/// The dual algebra `A = C*` with the convolution product
/// `(f*g)(x) = Σ f(x_1) g(x_2)`.
#[derive(Clone)]
pub struct DualAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    /// `mult[(i, j)]` lists `(k, coeff)` with `e^i * e^j = Σ coeff · e^k`.
    mult: HashMap<(usize, usize), Vec<(usize, Scalar)>>,
    unit: Vec<Scalar>,
}

impl DualAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dual-basis names, e.g. `a*` for source basis element `a`.
    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Structure constants of `e^i * e^j` as a sparse list.
    pub fn mult_pairs(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.mult.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    /// Iterates all stored structure constants as `((i, j), pairs)`.
    pub fn mult_iter(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, Scalar)>)> {
        self.mult.iter()
    }

    pub fn multiply_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (k, c) in self.mult_pairs(i, j) {
            out[*k] += c;
        }
        out
    }

    /// Product of two dual elements given by coordinates.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: if u.len() != self.dim { u.len() } else { v.len() },
            });
        }
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                if let Some(pairs) = self.mult.get(&(i, j)) {
                    let uv = ui * vj;
                    for (k, c) in pairs {
                        out[*k] += &uv * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Trace of left multiplication by `e^k` on the algebra.
    pub fn left_mult_trace(&self, k: usize) -> Scalar {
        let mut t = Scalar::zero();
        for r in 0..self.dim {
            if let Some(pairs) = self.mult.get(&(k, r)) {
                for (s, c) in pairs {
                    if *s == r {
                        t += c;
                    }
                }
            }
        }
        t
    }

    /// Checks `(e^i e^j) e^k = e^i (e^j e^k)` on all basis triples plus the
    /// unit laws. Cubic in the dimension; intended for fixtures.
    pub fn check_algebra_axioms(&self) -> bool {
        for i in 0..self.dim {
            let ei = Functional::dual_basis(self.dim, i).coords().to_vec();
            if self.multiply(&self.unit, &ei).unwrap() != ei
                || self.multiply(&ei, &self.unit).unwrap() != ei
            {
                return false;
            }
        }
        for i in 0..self.dim {
            let ei = Functional::dual_basis(self.dim, i).coords().to_vec();
            for j in 0..self.dim {
                let ij = self.multiply_basis(i, j);
                for k in 0..self.dim {
                    let jk = self.multiply_basis(j, k);
                    let ek = Functional::dual_basis(self.dim, k).coords().to_vec();
                    let left = self.multiply(&ij, &ek).unwrap();
                    let right = self.multiply(&ei, &jk).unwrap();
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for DualAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualAlgebra(dim {})", self.dim)
    }
}

/// The dual algebra of a coalgebra: structure constants are the transpose
/// of the comultiplication (`e^i * e^j = Σ_k c^k_{ij} e^k`), the unit is the
/// counit. Fails on coalgebras that do not validate.
pub fn dual_algebra(c: &Coalgebra) -> Result<DualAlgebra> {
    let report = c.validate();
    if !report.is_valid() {
        let summary: Vec<String> = report
            .violations()
            .iter()
            .take(3)
            .map(|v| v.describe(c))
            .collect();
        return Err(Error::InvalidCoalgebra(summary.join("; ")));
    }
    Ok(dual_algebra_unchecked(c))
}

pub(crate) fn dual_algebra_unchecked(c: &Coalgebra) -> DualAlgebra {
    let mut mult: HashMap<(usize, usize), Vec<(usize, Scalar)>> = HashMap::new();
    for k in 0..c.dim() {
        for (i, j, coeff) in c.delta(k) {
            mult.entry((*i, *j)).or_default().push((k, coeff.clone()));
        }
    }
    DualAlgebra {
        dim: c.dim(),
        basis_names: c.basis_names().iter().map(|n| format!("{n}*")).collect(),
        mult,
        unit: c.counit().to_vec(),
    }
}

/// Left hit action `f·x = Σ f(x_2) x_1`.
pub fn act_left(f: &Functional, x: &[Scalar], c: &Coalgebra) -> Result<Vec<Scalar>> {
    if f.dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: f.dim(),
        });
    }
    c.check_vec(x)?;
    let mut out = vec![Scalar::zero(); c.dim()];
    let fc = f.coords();
    for (k, xk) in x.iter().enumerate() {
        if xk.is_zero() {
            continue;
        }
        for (i, j, coeff) in c.delta(k) {
            if !fc[*j].is_zero() {
                out[*i] += xk * coeff * &fc[*j];
            }
        }
    }
    Ok(out)
}

/// Right hit action `x·f = Σ f(x_1) x_2`.
pub fn act_right(x: &[Scalar], f: &Functional, c: &Coalgebra) -> Result<Vec<Scalar>> {
    if f.dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: f.dim(),
        });
    }
    c.check_vec(x)?;
    let mut out = vec![Scalar::zero(); c.dim()];
    let fc = f.coords();
    for (k, xk) in x.iter().enumerate() {
        if xk.is_zero() {
            continue;
        }
        for (i, j, coeff) in c.delta(k) {
            if !fc[*i].is_zero() {
                out[*j] += xk * coeff * &fc[*i];
            }
        }
    }
    Ok(out)
}

/// A minimal-length tensor representation `Δ(x) = Σ a_s ⊗ b_s`, computed by
/// rank factorization of the `Δ(x)` coefficient matrix: the `a_s` are its
/// pivot columns and the `b_s` the rows of its RREF. Both families are
/// linearly independent, the length equals the rank, and the output is
/// deterministic (pivot order).
pub fn tensor_representation(
    x: &[Scalar],
    c: &Coalgebra,
) -> Result<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
    c.check_vec(x)?;
    if crate::linalg::is_zero_vec(x) {
        return Err(Error::ZeroElement);
    }
    let d = c.delta_matrix(x)?;
    let r = rref(&d);
    let mut monomials = Vec::with_capacity(r.rows());
    for s in 0..r.rows() {
        let pivot = r
            .row(s)
            .iter()
            .position(|v| !v.is_zero())
            .expect("rref rows are nonzero");
        let a: Vec<Scalar> = (0..c.dim()).map(|i| d.at(i, pivot).clone()).collect();
        let b = r.row(s).to_vec();
        monomials.push((a, b));
    }
    debug_assert_eq!(reconstruct_tensor(&monomials, c.dim()), d);
    Ok(monomials)
}

/// Reconstructs the coefficient matrix `Σ a_s ⊗ b_s` of a representation.
pub fn reconstruct_tensor(monomials: &[(Vec<Scalar>, Vec<Scalar>)], dim: usize) -> Matrix {
    let mut m = Matrix::zero(dim, dim);
    for (a, b) in monomials {
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    *m.at_mut(i, j) += ai * bj;
                }
            }
        }
    }
    m
}

/// The left module `C*·x`: the column space of the `Δ(x)` matrix
/// (acting by all dual basis functionals picks out its columns).
pub fn left_module_generated(x: &[Scalar], c: &Coalgebra) -> Result<Subspace> {
    let d = c.delta_matrix(x)?;
    Ok(Subspace::row_space(&d.transpose()))
}

/// The right module `x·C*`: the row space of the `Δ(x)` matrix.
pub fn right_module_generated(x: &[Scalar], c: &Coalgebra) -> Result<Subspace> {
    let d = c.delta_matrix(x)?;
    Ok(Subspace::row_space(&d))
}

/// The smallest subspace containing `x` closed under both hit actions by all
/// basis functionals; this is the subcoalgebra `C*·x·C*` generated by `x`.
/// Iterates to closure; terminates because the dimension is finite.
pub fn subcoalgebra_generated(x: &[Scalar], c: &Coalgebra) -> Result<Subspace> {
    c.check_vec(x)?;
    let mut sb = SpanBuilder::new(c.dim());
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    if sb.insert(x) {
        queue.push(x.to_vec());
    }
    while let Some(v) = queue.pop() {
        let d = c.delta_matrix(&v)?;
        // columns are the left hits e^j·v, rows the right hits v·e^i
        let dt = d.transpose();
        for i in 0..c.dim() {
            for w in [dt.row(i), d.row(i)] {
                if sb.insert(w) {
                    queue.push(w.to_vec());
                }
            }
        }
    }
    Ok(sb.into_subspace())
}

/// Span of `{f·x : f in s}` for a subspace `s` of the dual.
pub fn act_subspace_left(s: &Subspace, x: &[Scalar], c: &Coalgebra) -> Result<Subspace> {
    let mut sb = SpanBuilder::new(c.dim());
    for row in s.basis_rows() {
        let fx = act_left(&Functional::new(row.to_vec()), x, c)?;
        sb.insert(&fx);
    }
    Ok(sb.into_subspace())
}

/// Annihilator of a subspace of `C` inside the dual: `{f : f(X) = 0}`,
/// the kernel of the basis matrix.
pub fn perp_in_dual(x: &Subspace) -> Subspace {
    kernel(x.basis())
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::linalg::int;

    pub fn grouplike_point() -> Coalgebra {
        Coalgebra::new(
            vec!["g".to_string()],
            vec![vec![(0, 0, int(1))]],
            vec![int(1)],
        )
        .unwrap()
    }

    pub fn divided_power() -> Coalgebra {
        // basis g, d with Δd = g⊗d + d⊗g
        Coalgebra::new(
            vec!["g".to_string(), "d".to_string()],
            vec![vec![(0, 0, int(1))], vec![(0, 1, int(1)), (1, 0, int(1))]],
            vec![int(1), int(0)],
        )
        .unwrap()
    }

    /// Basis a, b, x1, x2, x3 with Δx_i = a⊗x_i + x_i⊗b.
    pub fn thick_arrow_3() -> Coalgebra {
        let mut delta = vec![vec![(0, 0, int(1))], vec![(1, 1, int(1))]];
        for i in 2..5 {
            delta.push(vec![(0, i, int(1)), (i, 1, int(1))]);
        }
        Coalgebra::new(
            vec!["a", "b", "x1", "x2", "x3"]
                .into_iter()
                .map(String::from)
                .collect(),
            delta,
            vec![int(1), int(1), int(0), int(0), int(0)],
        )
        .unwrap()
    }

    /// Divided-power style chain of length `l`: basis x^0..x^l,
    /// Δ(x^m) = Σ_{i+j=m} x^i ⊗ x^j.
    pub fn chain(l: usize) -> Coalgebra {
        let names = (0..=l).map(|i| format!("x{i}")).collect();
        let delta = (0..=l)
            .map(|m| (0..=m).map(|i| (i, m - i, int(1))).collect())
            .collect();
        let mut counit = vec![int(0); l + 1];
        counit[0] = int(1);
        Coalgebra::new(names, delta, counit).unwrap()
    }
}
