//! Reports printed by the subcommands. The JSON field names are stable.

use std::fmt::{self, Write as _};

use quasicartan_core::{
    CanonicalParams, ClassScanReport, DeltaDiscrepancy, IntMatrix, InvariantProfile, MutationSequence,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    NormalForm {
        input: IntMatrix,
        params: CanonicalParams,
        witness: IntMatrix,
        witness_det: i8,
        normal_mod4: IntMatrix,
        /// `PᵀAP ≡ N (mod 4)` recomputed from the printed witness.
        verified: bool,
    },
    Invariants {
        input: IntMatrix,
        profile: InvariantProfile,
    },
    Congruent {
        left: IntMatrix,
        right: IntMatrix,
        /// `canonical` or `oracle`.
        method: String,
        congruent: bool,
        left_params: Option<CanonicalParams>,
        right_params: Option<CanonicalParams>,
        witness: Option<IntMatrix>,
        /// Result of checking a user-supplied witness, when one was given.
        supplied_witness_verified: Option<bool>,
    },
    Mutate {
        input: IntMatrix,
        sequence: MutationSequence,
        result: IntMatrix,
    },
    Companion {
        input: IntMatrix,
        signs: Option<IntMatrix>,
        companion: IntMatrix,
        det_mod4: u8,
    },
    Delta {
        input: IntMatrix,
        standard_companion: IntMatrix,
        delta: u8,
    },
    Discrepancy {
        left: IntMatrix,
        right: IntMatrix,
        result: DeltaDiscrepancy,
    },
    Scan {
        input: IntMatrix,
        max_depth: usize,
        max_nodes: usize,
        seed: u64,
        report: ClassScanReport,
        consistent: bool,
    },
    Selftest {
        checks: Vec<SelftestCheck>,
        passed: bool,
    },
}

fn matrix_block(out: &mut String, title: &str, m: &IntMatrix) {
    let _ = writeln!(out, "{title}:");
    for line in m.to_string().lines() {
        let _ = writeln!(out, "  {line}");
    }
}

fn set<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Report {
    /// Exit status implied by the report: a failed self-test or a supplied
    /// witness that does not verify counts as a validation failure.
    pub fn success(&self) -> bool {
        match self {
            Report::Selftest { passed, .. } => *passed,
            Report::Congruent { supplied_witness_verified: Some(false), .. } => false,
            Report::NormalForm { verified, .. } => *verified,
            _ => true,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::NormalForm { params, witness, witness_det, normal_mod4, verified, .. } => {
                let _ = writeln!(out, "canonical params: {params}");
                matrix_block(&mut out, &format!("witness P (det {witness_det:+})"), witness);
                matrix_block(&mut out, "normal form N (mod 4)", normal_mod4);
                let _ = writeln!(out, "P^T A P = N (mod 4): {}", if *verified { "verified" } else { "FAILED" });
            }
            Report::Invariants { profile, .. } => {
                let fc = &profile.form_class;
                let _ = writeln!(out, "n: {}", profile.n);
                let _ = writeln!(out, "dim V0, V00, V000: {}, {}, {}", profile.d0, profile.d00, profile.d000);
                let _ = writeln!(out, "form class: {} (radical dim {})", fc.kind(), fc.dim_radical);
                if let Some(a) = fc.arf {
                    let _ = writeln!(out, "arf: {a}");
                }
                let _ = writeln!(out, "det mod 4: {}", profile.det_mod4);
                let _ = writeln!(out, "canonical params: {}", profile.canonical);
            }
            Report::Congruent {
                method,
                congruent,
                left_params,
                right_params,
                witness,
                supplied_witness_verified,
                ..
            } => {
                let _ = writeln!(out, "congruent mod 4: {} (method: {method})", yes_no(*congruent));
                if let (Some(l), Some(r)) = (left_params, right_params) {
                    let _ = writeln!(out, "left params: {l}");
                    let _ = writeln!(out, "right params: {r}");
                }
                if let Some(w) = witness {
                    matrix_block(&mut out, "witness P with P^T A P = A2 (mod 4)", w);
                }
                if let Some(v) = supplied_witness_verified {
                    let _ = writeln!(out, "supplied witness verifies: {}", yes_no(*v));
                }
            }
            Report::Mutate { sequence, result, .. } => {
                matrix_block(&mut out, &format!("mutated along [{sequence}]"), result);
            }
            Report::Companion { companion, det_mod4, .. } => {
                matrix_block(&mut out, "companion", companion);
                let _ = writeln!(out, "det mod 4: {det_mod4}");
            }
            Report::Delta { standard_companion, delta, .. } => {
                matrix_block(&mut out, "standard companion", standard_companion);
                let _ = writeln!(out, "delta: {delta}");
            }
            Report::Discrepancy { result, .. } => {
                let _ = writeln!(out, "delta: {} vs {}", result.delta_left, result.delta_right);
                let _ = writeln!(out, "differs: {}", yes_no(result.differs));
                let _ = writeln!(out, "{}", result.explanation);
            }
            Report::Scan { report, consistent, .. } => {
                let _ = writeln!(out, "visited: {}", report.visited);
                let _ = writeln!(out, "depth reached: {}", report.depth_reached);
                let _ = writeln!(out, "truncated: {}", yes_no(report.truncated));
                let _ = writeln!(out, "delta values: {}", set(&report.delta_values));
                let classes =
                    report.form_classes.iter().map(|c| format!("{} (radical dim {})", c.kind(), c.dim_radical));
                let _ = writeln!(out, "form classes: {}", set(classes));
                let _ = writeln!(out, "companion det mod 4: {}", set(&report.companion_det_mod4));
                let _ = writeln!(out, "m values: {}", set(&report.m_values));
                let _ = writeln!(out, "involution violations: {}", report.involution_violations);
                let _ = writeln!(out, "congruence violations: {}", report.congruence_violations);
                let _ = writeln!(out, "invariants constant: {}", yes_no(*consistent));
            }
            Report::Selftest { checks, passed } => {
                for c in checks {
                    let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                }
                let _ = writeln!(out, "{}", if *passed { "all checks passed" } else { "some checks FAILED" });
            }
        }
        out
    }
}
