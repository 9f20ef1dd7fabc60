//! Report assembly and rendering. Reports are fully determined by the input
//! file bytes and the seed, so a structured report is byte-identical across
//! runs: no timestamps, no ambient randomness, sorted sections.

use serde::Serialize;

use coradical::campaign::CampaignOutcome;
use coradical::coalgebra::Coalgebra;
use coradical::filtration::EngineSummary;
use coradical::linalg::{format_scalar, Scalar};
use coradical::theorem::{GapSequence, WitnessResult, WitnessVerification};

pub const SCHEMA_VERSION: u32 = 1;
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub fixture: Fixture,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<Rng>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<Engine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<Campaign>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct Fixture {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Rng {
    pub algorithm: String,
    pub seed: u64,
}

#[derive(Debug, Serialize)]
pub struct Engine {
    pub dim: usize,
    pub coradical_dims: Vec<usize>,
    pub radical_dims: Vec<usize>,
    pub nilpotency_index: usize,
    pub filtration_length: usize,
    pub two_route_agreement: bool,
    pub radical_is_coradical_perp: bool,
}

impl From<&EngineSummary> for Engine {
    fn from(s: &EngineSummary) -> Self {
        Engine {
            dim: s.dim,
            coradical_dims: s.coradical_dims.clone(),
            radical_dims: s.radical_dims.clone(),
            nilpotency_index: s.nilpotency_index,
            filtration_length: s.filtration_length,
            two_route_agreement: s.two_route_agreement,
            radical_is_coradical_perp: s.radical_is_coradical_perp,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Campaign {
    pub which: String,
    pub samples: usize,
    pub perturbations: usize,
    pub seed: u64,
    pub all_passed: bool,
    pub failures: Vec<CampaignFailure>,
}

#[derive(Debug, Serialize)]
pub struct CampaignFailure {
    pub sample_index: usize,
    pub sample_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<usize>,
    pub message: String,
}

impl Campaign {
    pub fn from_outcome(which: &str, outcome: &CampaignOutcome) -> Self {
        Campaign {
            which: which.to_string(),
            samples: outcome.samples,
            perturbations: outcome.perturbations,
            seed: outcome.seed,
            all_passed: outcome.all_passed(),
            failures: outcome
                .failures
                .iter()
                .map(|f| CampaignFailure {
                    sample_index: f.sample_index,
                    sample_seed: f.sample_seed,
                    perturbation: f.perturbation,
                    message: f.message.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Witness {
    pub outcome: String,
    pub requested_steps: usize,
    pub achieved_steps: usize,
    pub sequence: Vec<SequenceElement>,
    pub steps: Vec<WitnessStepView>,
    pub functional: Vec<Coordinate>,
    pub vanishes_on_bottom: bool,
    pub unit_on_z: Vec<bool>,
    pub table: Vec<TableRow>,
}

#[derive(Debug, Serialize)]
pub struct SequenceElement {
    pub element: String,
    pub loewy_length: usize,
}

#[derive(Debug, Serialize)]
pub struct WitnessStepView {
    pub n: usize,
    pub module_dim: usize,
    pub chosen_grade: usize,
    pub a: String,
    pub z: String,
    pub lw_a: usize,
    pub lw_z: usize,
}

#[derive(Debug, Serialize)]
pub struct Coordinate {
    pub basis: String,
    pub value: String,
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub lw_y: usize,
    pub lw_hit: usize,
    pub required: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponential_bound: Option<usize>,
    pub pass: bool,
}

/// Renders a coordinate vector as a combination of basis names.
pub fn format_element(coords: &[Scalar], c: &Coalgebra) -> String {
    use coradical::linalg::{scalar_is_one, scalar_is_zero};
    let mut terms = Vec::new();
    for (k, v) in coords.iter().enumerate() {
        if scalar_is_zero(v) {
            continue;
        }
        if scalar_is_one(v) {
            terms.push(c.name(k).to_string());
        } else if scalar_is_one(&-v) {
            terms.push(format!("-{}", c.name(k)));
        } else {
            terms.push(format!("{}*{}", format_scalar(v), c.name(k)));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

pub fn witness_section(
    c: &Coalgebra,
    requested: usize,
    outcome: &str,
    seq: &GapSequence,
    witness: Option<(&WitnessResult, &WitnessVerification)>,
) -> Witness {
    let sequence = seq
        .elements()
        .iter()
        .zip(seq.loewy_lengths())
        .map(|(el, lw)| SequenceElement {
            element: format_element(el, c),
            loewy_length: *lw,
        })
        .collect();
    let (steps, functional, vanishes, unit_on_z, table) = match witness {
        Some((w, v)) => (
            w.steps
                .iter()
                .map(|s| WitnessStepView {
                    n: s.n,
                    module_dim: s.module_dim,
                    chosen_grade: s.chosen_grade,
                    a: format_element(&s.a, c),
                    z: format_element(&s.z, c),
                    lw_a: s.lw_a,
                    lw_z: s.lw_z,
                })
                .collect(),
            w.functional
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, v)| !coradical::linalg::scalar_is_zero(v))
                .map(|(k, v)| Coordinate {
                    basis: c.name(k).to_string(),
                    value: format_scalar(v),
                })
                .collect(),
            v.vanishes_on_bottom,
            v.unit_on_z.clone(),
            v.rows
                .iter()
                .map(|r| TableRow {
                    n: r.n,
                    lw_y: r.lw_y,
                    lw_hit: r.lw_hit,
                    required: r.required,
                    exponential_bound: r.exponential_bound,
                    pass: r.pass,
                })
                .collect(),
        ),
        None => (Vec::new(), Vec::new(), true, Vec::new(), Vec::new()),
    };
    Witness {
        outcome: outcome.to_string(),
        requested_steps: requested,
        achieved_steps: seq.steps(),
        sequence,
        steps,
        functional,
        vanishes_on_bottom: vanishes,
        unit_on_z,
        table,
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("command: {}", self.command));
        push(&mut out, format!("fixture: {}", self.fixture.path));
        push(&mut out, format!("sha256: {}", self.fixture.sha256));
        if let Some(rng) = &self.rng {
            push(
                &mut out,
                format!("rng: {} seed {}", rng.algorithm, rng.seed),
            );
        }
        if let Some(e) = &self.engine {
            push(&mut out, format!("dim C: {}", e.dim));
            push(
                &mut out,
                format!(
                    "coradical dims: {}",
                    e.coradical_dims
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            );
            push(
                &mut out,
                format!(
                    "radical power dims: {}",
                    e.radical_dims
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            );
            push(
                &mut out,
                format!("nilpotency index: {}", e.nilpotency_index),
            );
            push(
                &mut out,
                format!("filtration length: {}", e.filtration_length),
            );
            push(
                &mut out,
                format!("two-route agreement: {}", e.two_route_agreement),
            );
            push(
                &mut out,
                format!(
                    "radical equals coradical annihilator: {}",
                    e.radical_is_coradical_perp
                ),
            );
        }
        if let Some(campaigns) = &self.verification {
            for camp in campaigns {
                push(
                    &mut out,
                    format!(
                        "verify {}: samples {}, perturbations {}, seed {} -> {}",
                        camp.which,
                        camp.samples,
                        camp.perturbations,
                        camp.seed,
                        if camp.all_passed { "pass" } else { "FAIL" }
                    ),
                );
                for f in &camp.failures {
                    push(
                        &mut out,
                        format!(
                            "  failure: sample {} (seed {}){}: {}",
                            f.sample_index,
                            f.sample_seed,
                            f.perturbation
                                .map(|p| format!(" perturbation {p}"))
                                .unwrap_or_default(),
                            f.message
                        ),
                    );
                }
            }
        }
        if let Some(w) = &self.witness {
            push(
                &mut out,
                format!(
                    "witness: {} (requested {} steps, achieved {})",
                    w.outcome, w.requested_steps, w.achieved_steps
                ),
            );
            for (i, el) in w.sequence.iter().enumerate() {
                push(
                    &mut out,
                    format!("  y{}: {} (lw {})", i, el.element, el.loewy_length),
                );
            }
            for s in &w.steps {
                push(
                    &mut out,
                    format!(
                        "  step {}: module dim {}, grade {}, a = {}, z = {} (lw a {}, lw z {})",
                        s.n, s.module_dim, s.chosen_grade, s.a, s.z, s.lw_a, s.lw_z
                    ),
                );
            }
            if !w.functional.is_empty() {
                let coords: Vec<String> = w
                    .functional
                    .iter()
                    .map(|co| format!("{}*: {}", co.basis, co.value))
                    .collect();
                push(&mut out, format!("  functional: {}", coords.join(", ")));
                push(
                    &mut out,
                    format!("  vanishes on bottom term: {}", w.vanishes_on_bottom),
                );
                for r in &w.table {
                    push(
                        &mut out,
                        format!(
                            "  n {}: lw(y) {}, lw(hit) {}, required {}{} -> {}",
                            r.n,
                            r.lw_y,
                            r.lw_hit,
                            r.required,
                            r.exponential_bound
                                .map(|b| format!(", bound > {b}"))
                                .unwrap_or_default(),
                            if r.pass { "pass" } else { "FAIL" }
                        ),
                    );
                }
            }
        }
        push(&mut out, format!("status: {}", self.status));
        out
    }
}
