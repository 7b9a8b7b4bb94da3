//! Square integer matrices, the symmetric-even and skew-symmetric wrappers,
//! unimodular congruence witnesses, and exact determinants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;

/// A square matrix of exact integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixDoc", into = "MatrixDoc")]
pub struct IntMatrix {
    n: usize,
    entries: Vec<Int>,
}

/// Structured (JSON) layout of a matrix: `{"n": 2, "entries": [[2,1],[1,2]]}`.
#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    n: usize,
    entries: Vec<Vec<Int>>,
}

impl TryFrom<MatrixDoc> for IntMatrix {
    type Error = Error;

    fn try_from(doc: MatrixDoc) -> Result<Self> {
        let m = IntMatrix::from_rows(doc.entries)?;
        if m.n != doc.n {
            return Err(Error::DimensionMismatch { left: doc.n, right: m.n });
        }
        Ok(m)
    }
}

impl From<IntMatrix> for MatrixDoc {
    fn from(m: IntMatrix) -> Self {
        MatrixDoc { n: m.n, entries: m.rows() }
    }
}

impl IntMatrix {
    /// Builds a matrix from rows; rejects empty and non-square input.
    pub fn from_rows<R, T>(rows: impl IntoIterator<Item = R>) -> Result<Self>
    where
        R: IntoIterator<Item = T>,
        T: Into<Int>,
    {
        let rows: Vec<Vec<Int>> = rows.into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect();
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), expected: n });
            }
        }
        Ok(IntMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, entries: vec![Int::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Int::ONE } else { Int::ZERO })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        IntMatrix { n, entries }
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diag(blocks: &[IntMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = IntMatrix::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.set(offset + i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.n;
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Int>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Int> {
        self.entries.iter()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { left: self.n, right: rhs.n });
        }
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Pᵀ · self · P`, exactly.
    pub fn congruent_by(&self, p: &IntMatrix) -> Result<IntMatrix> {
        p.transpose().mul(&self.mul(p)?)
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { n: self.n, entries: self.entries.iter().map(|x| -x).collect() }
    }

    /// Entry-wise least non-negative residues modulo `modulus`.
    pub fn reduce_mod(&self, modulus: u32) -> IntMatrix {
        IntMatrix { n: self.n, entries: self.entries.iter().map(|x| Int::from(x.rem_euclid(modulus) as i64)).collect() }
    }

    /// Residues modulo `modulus` as small integers, row-major.
    pub fn residues(&self, modulus: u32) -> Vec<u32> {
        self.entries.iter().map(|x| x.rem_euclid(modulus)).collect()
    }

    /// Entry-wise congruence modulo `modulus`.
    pub fn eq_mod(&self, other: &IntMatrix, modulus: u32) -> bool {
        self.n == other.n
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.rem_euclid(modulus) == b.rem_euclid(modulus))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn det(&self) -> Int {
        det_exact(self)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:>width$}", cells[i * self.n + j])).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_exact(m: &IntMatrix) -> Int {
    let n = m.n;
    if n == 0 {
        return Int::ONE;
    }
    let mut a = m.rows();
    let mut negate = false;
    let mut prev = Int::ONE;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Int::ZERO,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Symmetric integer matrix with even diagonal: the Gram matrix of an
/// integral symmetric bilinear form whose values `(v, v)` are all even.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SymEvenMatrix(IntMatrix);

/// Skew-symmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SkewSymMatrix(IntMatrix);

/// Checks symmetry and diagonal parity. Entries are scanned row by row over
/// the lower triangle, and the first violation is reported.
pub fn validate_sym_even(m: IntMatrix) -> Result<SymEvenMatrix> {
    for i in 0..m.n {
        for j in 0..i {
            if m.get(i, j) != m.get(j, i) {
                return Err(Error::NotSymmetric { i, j });
            }
        }
        if !m.get(i, i).is_even() {
            return Err(Error::OddDiagonal { i });
        }
    }
    Ok(SymEvenMatrix(m))
}

/// Checks `M = -Mᵀ`, scanning the lower triangle (diagonal included) row by row.
pub fn validate_skew(m: IntMatrix) -> Result<SkewSymMatrix> {
    for i in 0..m.n {
        for j in 0..=i {
            if *m.get(i, j) != -m.get(j, i) {
                return Err(Error::NotSkew { i, j });
            }
        }
    }
    Ok(SkewSymMatrix(m))
}

macro_rules! wrapper_common {
    ($ty:ident, $validate:ident) => {
        impl $ty {
            pub fn new(m: IntMatrix) -> Result<Self> {
                $validate(m)
            }

            pub fn n(&self) -> usize {
                self.0.n()
            }

            pub fn get(&self, i: usize, j: usize) -> &Int {
                self.0.get(i, j)
            }

            pub fn as_matrix(&self) -> &IntMatrix {
                &self.0
            }

            pub fn into_inner(self) -> IntMatrix {
                self.0
            }
        }

        impl TryFrom<IntMatrix> for $ty {
            type Error = Error;
            fn try_from(m: IntMatrix) -> Result<Self> {
                $validate(m)
            }
        }

        impl AsRef<IntMatrix> for $ty {
            fn as_ref(&self) -> &IntMatrix {
                &self.0
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let m = IntMatrix::deserialize(d)?;
                $validate(m).map_err(serde::de::Error::custom)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(&self.0, f)
            }
        }
    };
}

wrapper_common!(SymEvenMatrix, validate_sym_even);
wrapper_common!(SkewSymMatrix, validate_skew);

impl SymEvenMatrix {
    /// The bilinear pairing `(v, w) = vᵀ A w`.
    pub fn pair(&self, v: &[Int], w: &[Int]) -> Int {
        let mut acc = Int::ZERO;
        for (i, vi) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let mut row = Int::ZERO;
            for (j, wj) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                row += self.get(i, j) * wj;
            }
            acc += vi * row;
        }
        acc
    }
}

/// Integer matrix with determinant `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnimodularTransform {
    matrix: IntMatrix,
    det_sign: i8,
}

impl UnimodularTransform {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let det = det_exact(&matrix);
        let det_sign = match det.to_i64() {
            Some(1) => 1,
            Some(-1) => -1,
            _ => return Err(Error::NotUnimodular { det: det.to_string() }),
        };
        Ok(UnimodularTransform { matrix, det_sign })
    }

    pub fn identity(n: usize) -> Self {
        UnimodularTransform { matrix: IntMatrix::identity(n), det_sign: 1 }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn det_sign(&self) -> i8 {
        self.det_sign
    }

    /// `self · other`; applying the result is applying `self` then `other`.
    pub fn compose(&self, other: &UnimodularTransform) -> Result<Self> {
        Ok(UnimodularTransform { matrix: self.matrix.mul(&other.matrix)?, det_sign: self.det_sign * other.det_sign })
    }

    /// Exact inverse via the adjugate: `P⁻¹ = det(P) · adj(P)`.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let sign = Int::from(self.det_sign as i64);
        let inv = IntMatrix::from_fn(n, |i, j| {
            // adj(P)[i][j] = (-1)^(i+j) · minor(j, i)
            let minor = IntMatrix::from_fn(n - 1, |a, b| {
                let r = if a < j { a } else { a + 1 };
                let c = if b < i { b } else { b + 1 };
                self.matrix.get(r, c).clone()
            });
            let cof = det_exact(&minor);
            let cof = if (i + j) % 2 == 0 { cof } else { -cof };
            cof * &sign
        });
        UnimodularTransform { matrix: inv, det_sign: self.det_sign }
    }
}

/// Matrices that are closed under the congruence action `A ↦ PᵀAP`.
pub trait Congruence: Sized {
    fn congruence(&self, p: &UnimodularTransform) -> Result<Self>;
}

impl Congruence for IntMatrix {
    fn congruence(&self, p: &UnimodularTransform) -> Result<Self> {
        self.congruent_by(p.matrix())
    }
}

impl Congruence for SymEvenMatrix {
    fn congruence(&self, p: &UnimodularTransform) -> Result<Self> {
        let out = self.0.congruent_by(p.matrix())?;
        debug_assert!(validate_sym_even(out.clone()).is_ok());
        Ok(SymEvenMatrix(out))
    }
}

impl Congruence for SkewSymMatrix {
    fn congruence(&self, p: &UnimodularTransform) -> Result<Self> {
        let out = self.0.congruent_by(p.matrix())?;
        debug_assert!(validate_skew(out.clone()).is_ok());
        Ok(SkewSymMatrix(out))
    }
}

/// `PᵀAP`, keeping the symmetry kind of `a`.
pub fn congruence_apply<M: Congruence>(a: &M, p: &UnimodularTransform) -> Result<M> {
    a.congruence(p)
}
