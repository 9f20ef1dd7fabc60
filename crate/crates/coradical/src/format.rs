//! Textual document formats for coalgebras and quivers (JSON).
//!
//! Coalgebra documents carry named structure constants with rationals as
//! `"p/q"` or `"n"` strings; quiver documents carry vertices, arrows, and
//! either a truncation length or an explicit subpath-closed path list.
//! Unknown fields are rejected, and emission is deterministic (sorted maps),
//! so emitted documents are byte-stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_scalar};
use crate::quiver::{enumerate_paths, path_coalgebra, Path, PathSet, Quiver};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoalgebraDoc {
    dim: usize,
    basis: Vec<String>,
    delta: BTreeMap<String, Vec<(String, String, String)>>,
    counit: BTreeMap<String, String>,
}

/// Parses a coalgebra document. Structural problems (malformed JSON, unknown
/// fields, names outside the basis, bad rationals, a wrong `dim`) are parse
/// errors; axiom violations are *not* checked here.
pub fn parse_coalgebra(text: &str) -> Result<Coalgebra> {
    let doc: CoalgebraDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.dim != doc.basis.len() {
        return Err(Error::Parse(format!(
            "declared dim {} does not match basis size {}",
            doc.dim,
            doc.basis.len()
        )));
    }
    let index: BTreeMap<&str, usize> = doc
        .basis
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    if index.len() != doc.basis.len() {
        return Err(Error::Parse("duplicate basis names".into()));
    }
    let lookup = |name: &str| -> Result<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownBasisName(name.to_string()))
    };
    let mut delta = vec![Vec::new(); doc.basis.len()];
    for (name, monomials) in &doc.delta {
        let k = lookup(name)?;
        for (left, right, coeff) in monomials {
            delta[k].push((lookup(left)?, lookup(right)?, parse_scalar(coeff)?));
        }
    }
    let mut counit = vec![crate::linalg::int(0); doc.basis.len()];
    for (name, value) in &doc.counit {
        counit[lookup(name)?] = parse_scalar(value)?;
    }
    Coalgebra::new(doc.basis, delta, counit)
}

/// Emits a coalgebra document; deterministic for a fixed coalgebra.
pub fn emit_coalgebra(c: &Coalgebra) -> String {
    let mut delta = BTreeMap::new();
    let mut counit = BTreeMap::new();
    for k in 0..c.dim() {
        let name = c.name(k).to_string();
        let monomials = c
            .delta(k)
            .iter()
            .map(|(i, j, coeff)| {
                (
                    c.name(*i).to_string(),
                    c.name(*j).to_string(),
                    format_scalar(coeff),
                )
            })
            .collect();
        delta.insert(name.clone(), monomials);
        counit.insert(name, format_scalar(&c.counit()[k]));
    }
    let doc = CoalgebraDoc {
        dim: c.dim(),
        basis: c.basis_names().to_vec(),
        delta,
        counit,
    };
    serde_json::to_string_pretty(&doc).expect("coalgebra documents serialize") + "\n"
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<String>,
    arrows: Vec<ArrowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    paths: Option<Vec<Vec<String>>>,
}

/// A parsed quiver document: the quiver plus the optional build directives.
#[derive(Debug, Clone)]
pub struct QuiverInput {
    pub quiver: Quiver,
    pub truncation: Option<usize>,
    /// Explicit nontrivial paths as arrow-name sequences; trivial paths at
    /// every vertex are always included.
    pub explicit_paths: Option<Vec<Vec<String>>>,
}

pub fn parse_quiver(text: &str) -> Result<QuiverInput> {
    let doc: QuiverDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let quiver = Quiver::new(
        doc.vertices,
        doc.arrows
            .into_iter()
            .map(|a| (a.name, a.src, a.tgt))
            .collect(),
    )?;
    Ok(QuiverInput {
        quiver,
        truncation: doc.truncation,
        explicit_paths: doc.paths,
    })
}

/// Resolves a quiver input to its path set: explicit paths when given
/// (validated subpath-closed), otherwise all paths up to the truncation; an
/// acyclic quiver without a truncation means every path.
pub fn resolve_path_set(input: &QuiverInput, truncation_flag: Option<usize>) -> Result<PathSet> {
    if let Some(words) = &input.explicit_paths {
        let q = &input.quiver;
        let arrow_index: BTreeMap<&str, usize> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.as_str(), i))
            .collect();
        let mut paths: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
        for word in words {
            let arrows: Vec<usize> = word
                .iter()
                .map(|n| {
                    arrow_index
                        .get(n.as_str())
                        .copied()
                        .ok_or_else(|| Error::UnknownArrow(n.clone()))
                })
                .collect::<Result<_>>()?;
            if arrows.is_empty() {
                continue; // trivial paths are already present
            }
            paths.push(Path::from_arrows(q, arrows)?);
        }
        return PathSet::new(q.clone(), paths);
    }
    let truncation = truncation_flag.or(input.truncation);
    let max_len = match truncation {
        Some(l) => l,
        None => input.quiver.max_path_length().map_err(|_| {
            Error::Parse(
                "cyclic quiver has infinitely many paths; a truncation is required".into(),
            )
        })?,
    };
    Ok(enumerate_paths(&input.quiver, max_len))
}

/// Builds the coalgebra described by a quiver document.
pub fn coalgebra_from_quiver_input(
    input: &QuiverInput,
    truncation_flag: Option<usize>,
) -> Result<Coalgebra> {
    path_coalgebra(&resolve_path_set(input, truncation_flag)?)
}
