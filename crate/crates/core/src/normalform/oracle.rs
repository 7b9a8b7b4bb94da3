//! Exhaustive congruence test over `Z/4Z` for small dimensions.
//!
//! Enumerates every `n×n` matrix with entries in `{0,1,2,3}` and odd
//! determinant (the invertible ones mod 4). Each of them lifts to an
//! integer matrix of determinant ±1, so orbit membership under this finite
//! group decides integral congruence mod 4.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrices::SymEvenMatrix;

pub const ORACLE_MAX_N: usize = 3;

fn det_small(m: &[u8], n: usize) -> i64 {
    let at = |i: usize, j: usize| m[i * n + j] as i64;
    match n {
        0 => 1,
        1 => at(0, 0),
        2 => at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0),
        3 => {
            at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1))
                - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0))
                + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0))
        }
        _ => unreachable!("oracle dimension capped"),
    }
}

/// All invertible `n×n` matrices over `Z/4Z`, row-major.
pub fn invertible_mod4(n: usize) -> Result<&'static [Vec<u8>]> {
    static CACHE: [OnceLock<Vec<Vec<u8>>>; ORACLE_MAX_N + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge { n, max: ORACLE_MAX_N });
    }
    Ok(CACHE[n].get_or_init(|| {
        let cells = n * n;
        (0u32..1 << (2 * cells))
            .map(|code| (0..cells).map(|c| ((code >> (2 * c)) & 3) as u8).collect::<Vec<u8>>())
            .filter(|m| det_small(m, n) % 2 != 0)
            .collect()
    }))
}

fn residues(a: &SymEvenMatrix) -> Vec<u8> {
    a.as_matrix().residues(4).into_iter().map(|x| x as u8).collect()
}

fn congruent_by(a: &[u8], p: &[u8], n: usize) -> Vec<u8> {
    let mut ap = vec![0u32; n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                ap[i * n + j] += a[i * n + k] as u32 * p[k * n + j] as u32;
            }
        }
    }
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            let s: u32 = (0..n).map(|k| p[k * n + i] as u32 * ap[k * n + j]).sum();
            out[i * n + j] = (s % 4) as u8;
        }
    }
    out
}

/// `{PᵀAP mod 4 : P invertible mod 4}` as row-major residue vectors.
pub fn brute_force_orbit_mod4(a: &SymEvenMatrix) -> Result<HashSet<Vec<u8>>> {
    let n = a.n();
    let group = invertible_mod4(n)?;
    let a4 = residues(a);
    Ok(group.iter().map(|p| congruent_by(&a4, p, n)).collect())
}

pub fn brute_force_congruent_mod4(a: &SymEvenMatrix, a2: &SymEvenMatrix) -> Result<bool> {
    if a.n() != a2.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: a2.n() });
    }
    let n = a.n();
    let group = invertible_mod4(n)?;
    let (a4, b4) = (residues(a), residues(a2));
    Ok(group.iter().any(|p| congruent_by(&a4, p, n) == b4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{validate_sym_even, IntMatrix};

    fn sym(rows: &[&[i64]]) -> SymEvenMatrix {
        validate_sym_even(IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()).unwrap()
    }

    #[test]
    fn group_orders() {
        // |GL_n(Z/4)| = 2^(n²) · |GL_n(F2)|.
        assert_eq!(invertible_mod4(1).unwrap().len(), 2);
        assert_eq!(invertible_mod4(2).unwrap().len(), 16 * 6);
        assert_eq!(invertible_mod4(3).unwrap().len(), 512 * 168);
    }

    #[test]
    fn oracle_examples() {
        let d = sym(&[&[2, 0], &[0, 2]]);
        assert_eq!(brute_force_congruent_mod4(&d, &d), Ok(true));
        assert_eq!(brute_force_congruent_mod4(&sym(&[&[2]]), &sym(&[&[0]])), Ok(false));
        let a = sym(&[&[2, 1], &[1, 2]]);
        let h = sym(&[&[0, 1], &[1, 0]]);
        assert_eq!(brute_force_congruent_mod4(&a, &h), Ok(false));
        assert_eq!(brute_force_congruent_mod4(&a, &sym(&[&[2, -1], &[-1, 2]])), Ok(true));
        assert_eq!(brute_force_congruent_mod4(&a, &d), Ok(false));
    }

    #[test]
    fn oracle_rejects_large() {
        let z = SymEvenMatrix::new(IntMatrix::zeros(4)).unwrap();
        assert_eq!(brute_force_congruent_mod4(&z, &z), Err(Error::TooLarge { n: 4, max: 3 }));
        let z3 = SymEvenMatrix::new(IntMatrix::zeros(3)).unwrap();
        assert!(matches!(brute_force_congruent_mod4(&z3, &z), Err(Error::DimensionMismatch { .. })));
    }
}
