//! Built-in checks: the two worked examples and the brute-force oracle on
//! every matrix mod 4 of size at most 3.

use std::collections::HashMap;

use anyhow::{ensure, Result};
use quasicartan_core::*;

use crate::report::SelftestCheck;

fn sym(rows: &[&[i64]]) -> Result<SymEvenMatrix> {
    Ok(SymEvenMatrix::new(IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied()))?)?)
}

fn skew(rows: &[&[i64]]) -> Result<SkewSymMatrix> {
    Ok(SkewSymMatrix::new(IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied()))?)?)
}

fn four_by_four() -> Result<String> {
    let a = sym(&[&[2, 1, 0, 1], &[1, 2, 1, 0], &[0, 1, 2, -1], &[1, 0, -1, 2]])?;
    let a2 = sym(&[&[2, 1, 0, 1], &[1, 2, 1, 0], &[0, 1, 2, 1], &[1, 0, 1, 2]])?;
    let (ra, rb) = (reduce_mod4(&a)?, reduce_mod4(&a2)?);
    ensure!(ra.params.params() == NormalFormParams::new(1, 0, 1, 0, 0), "A reduced to {}", ra.params);
    ensure!(rb.params.params() == NormalFormParams::new(1, 0, 0, 0, 2), "A' reduced to {}", rb.params);
    verify_witness(a.as_matrix(), &ra.witness, &ra.normal_mod4)?;
    verify_witness(a2.as_matrix(), &rb.witness, &rb.normal_mod4)?;
    ensure!(!congruent_mod4(&a, &a2)?.congruent, "A and A' reported congruent");
    Ok(format!("{} and {}, not congruent", ra.params, rb.params))
}

fn three_by_three() -> Result<String> {
    let b = skew(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])?;
    let b2 = skew(&[&[0, 2, 0], &[-2, 0, 1], &[0, -1, 0]])?;
    ensure!(delta(&b) == 0 && delta(&b2) == 2, "delta values {} and {}", delta(&b), delta(&b2));
    let d = delta_discrepancy(&b, &b2)?;
    ensure!(d.differs && d.criterion, "discrepancy not detected");
    let p = IntMatrix::from_rows([[1, 0, 0], [0, 1, 0], [-1, 0, 1]])?;
    ensure!(b.as_matrix().congruent_by(&p)? == *b2.as_matrix(), "P^T B P != B'");
    Ok(format!("delta 0 and 2; {}", d.explanation))
}

fn oracle_suite() -> Result<String> {
    let mut total = 0;
    for n in 1..=3 {
        let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let radices: Vec<u32> = upper.iter().map(|&(i, j)| if i == j { 2 } else { 4 }).collect();
        let count: u32 = radices.iter().product();
        let mut orbit_params: HashMap<Vec<u8>, CanonicalParams> = HashMap::new();
        for mut code in 0..count {
            let mut m = IntMatrix::zeros(n);
            for (&(i, j), &radix) in upper.iter().zip(&radices) {
                let digit = (code % radix) as i64;
                code /= radix;
                let v = Int::from(if i == j { 2 * digit } else { digit });
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
            let a = SymEvenMatrix::new(m)?;
            let params = reduce_mod4(&a)?.params;
            let key: Vec<u8> = a.as_matrix().residues(4).into_iter().map(|x| x as u8).collect();
            match orbit_params.get(&key) {
                Some(&seen) => ensure!(seen == params, "n = {n}: one orbit has normal forms {seen} and {params}"),
                None => {
                    ensure!(
                        !orbit_params.values().any(|&p| p == params),
                        "n = {n}: two orbits share normal form {params}"
                    );
                    for member in brute_force_orbit_mod4(&a)? {
                        orbit_params.insert(member, params);
                    }
                }
            }
            total += 1;
        }
    }
    Ok(format!("{total} matrices, orbits match normal forms"))
}

type Check = (&'static str, fn() -> Result<String>);

pub fn run_selftest() -> Vec<SelftestCheck> {
    let checks: [Check; 3] = [
        ("4x4 companions with m = 0 and m = 2", four_by_four),
        ("3x3 delta discrepancy", three_by_three),
        ("brute-force oracle, n <= 3", oracle_suite),
    ];
    checks
        .iter()
        .map(|(name, f)| match f() {
            Ok(detail) => SelftestCheck { name: name.to_string(), passed: true, detail },
            Err(e) => SelftestCheck { name: name.to_string(), passed: false, detail: format!("{e:#}") },
        })
        .collect()
}
