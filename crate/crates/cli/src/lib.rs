//! Command implementations behind the `quasicartan` binary.

pub mod input;
pub mod report;
pub mod selftest;

use anyhow::{Context, Result};
use quasicartan_core::*;

use report::Report;

fn sym_even(m: IntMatrix, what: &str) -> Result<SymEvenMatrix> {
    SymEvenMatrix::new(m).with_context(|| format!("{what} must be symmetric with even diagonal"))
}

fn skew_sym(m: IntMatrix, what: &str) -> Result<SkewSymMatrix> {
    SkewSymMatrix::new(m).with_context(|| format!("{what} must be skew-symmetric"))
}

pub fn normal_form(a: IntMatrix) -> Result<Report> {
    let a = sym_even(a, "A")?;
    let r = reduce_mod4(&a)?;
    let verified = a.as_matrix().congruent_by(r.witness.matrix())?.eq_mod(&r.normal_mod4, 4);
    Ok(Report::NormalForm {
        input: a.into_inner(),
        params: r.params,
        witness_det: r.witness.det_sign(),
        witness: r.witness.into_matrix(),
        normal_mod4: r.normal_mod4,
        verified,
    })
}

pub fn invariants(a: IntMatrix) -> Result<Report> {
    let a = sym_even(a, "A")?;
    let profile = invariant_profile(&a)?;
    Ok(Report::Invariants { input: a.into_inner(), profile })
}

pub fn congruent(a: IntMatrix, a2: IntMatrix, oracle: bool, supplied: Option<IntMatrix>) -> Result<Report> {
    let a = sym_even(a, "A")?;
    let a2 = sym_even(a2, "A2")?;
    if a.n() != a2.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: a2.n() }.into());
    }
    let supplied_witness_verified = supplied.map(|p| check_congruence_witness(&a, &a2, &p)).transpose()?;
    let (method, congruent, left_params, right_params, witness) = if oracle {
        ("oracle", brute_force_congruent_mod4(&a, &a2)?, None, None, None)
    } else {
        let d = congruent_mod4(&a, &a2)?;
        ("canonical", d.congruent, Some(d.left), Some(d.right), d.witness.map(UnimodularTransform::into_matrix))
    };
    Ok(Report::Congruent {
        left: a.into_inner(),
        right: a2.into_inner(),
        method: method.to_string(),
        congruent,
        left_params,
        right_params,
        witness,
        supplied_witness_verified,
    })
}

pub fn mutate_cmd(b: IntMatrix, sequence: MutationSequence) -> Result<Report> {
    let b = skew_sym(b, "B")?;
    let result = mutate_seq(&b, &sequence)?;
    Ok(Report::Mutate { input: b.into_inner(), sequence, result: result.into_inner() })
}

pub fn companion(b: IntMatrix, signs: Option<IntMatrix>) -> Result<Report> {
    let b = skew_sym(b, "B")?;
    let a = match &signs {
        Some(s) => companion_with_signs(&b, &SignChoice::from_matrix(s)?)?,
        None => standard_companion(&b),
    };
    let det_mod4 = det_exact(a.as_matrix()).rem_euclid(4) as u8;
    Ok(Report::Companion { input: b.into_inner(), signs, companion: a.into_inner(), det_mod4 })
}

pub fn delta_cmd(b: IntMatrix) -> Result<Report> {
    let b = skew_sym(b, "B")?;
    let s = standard_companion(&b);
    Ok(Report::Delta { delta: delta(&b), standard_companion: s.into_inner(), input: b.into_inner() })
}

pub fn discrepancy(b: IntMatrix, b2: IntMatrix) -> Result<Report> {
    let b = skew_sym(b, "B")?;
    let b2 = skew_sym(b2, "B2")?;
    let result = delta_discrepancy(&b, &b2)?;
    Ok(Report::Discrepancy { left: b.into_inner(), right: b2.into_inner(), result })
}

pub fn scan(b: IntMatrix, max_depth: usize, max_nodes: usize, seed: u64) -> Result<Report> {
    let b = skew_sym(b, "B")?;
    let report = scan_class_with(&b, &ScanConfig { max_depth, max_nodes, seed, ..ScanConfig::default() });
    let consistent = report.is_consistent();
    Ok(Report::Scan { input: b.into_inner(), max_depth, max_nodes, seed, report, consistent })
}

pub fn selftest() -> Report {
    let checks = selftest::run_selftest();
    let passed = checks.iter().all(|c| c.passed);
    Report::Selftest { checks, passed }
}
