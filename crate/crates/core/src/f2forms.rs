//! Linear algebra over F2 and quadratic forms on `Z^n / 2Z^n`.
//!
//! A quadratic form `q` here is stored by its values on the standard basis
//! together with the Gram matrix of its polar form `Ω`, which is alternating
//! (symmetric with zero diagonal). Everything else, including evaluation,
//! radical data and the Arf invariant, is derived from those two pieces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::matrices::{IntMatrix, SkewSymMatrix, SymEvenMatrix, UnimodularTransform};

const WORD: usize = 64;

/// A bit-packed vector over F2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b & 1 == 1);
        }
        v
    }

    /// Reduction modulo 2 of an integer vector.
    pub fn from_ints(xs: &[Int]) -> Self {
        let mut v = Self::zeros(xs.len());
        for (i, x) in xs.iter().enumerate() {
            v.set(i, !x.is_even());
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard dot product over F2.
    pub fn dot(&self, other: &F2Vec) -> u8 {
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        (ones & 1) as u8
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// The canonical 0/1 integer lift.
    pub fn to_ints(&self) -> Vec<Int> {
        (0..self.len).map(|i| Int::from(self.get(i) as i64)).collect()
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.to_bits().iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
        write!(f, "F2Vec({s})")
    }
}

/// A dense matrix over F2 with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    ncols: usize,
    rows: Vec<F2Vec>,
}

impl F2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        F2Matrix { ncols, rows: vec![F2Vec::zeros(ncols); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix { ncols: n, rows: (0..n).map(|i| F2Vec::unit(n, i)).collect() }
    }

    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged F2 matrix");
        F2Matrix { ncols, rows: rows.iter().map(|r| F2Vec::from_bits(r)).collect() }
    }

    /// Entry-wise reduction modulo 2.
    pub fn from_int_matrix(m: &IntMatrix) -> Self {
        F2Matrix { ncols: m.n(), rows: (0..m.n()).map(|i| F2Vec::from_ints(m.row(i))).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit)
    }

    pub fn row(&self, i: usize) -> &F2Vec {
        &self.rows[i]
    }

    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(F2Vec::to_bits).collect()
    }

    pub fn mul_vec(&self, v: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            out.set(i, r.dot(v) == 1);
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = F2Matrix::zeros(self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// `[self | extra]`, with `extra` given as columns.
    pub fn augment_columns(&self, extra: &[F2Vec]) -> Self {
        let ncols = self.ncols + extra.len();
        let mut out = F2Matrix::zeros(self.nrows(), ncols);
        for i in 0..self.nrows() {
            for j in self.rows[i].ones() {
                out.set(i, j, true);
            }
            for (c, col) in extra.iter().enumerate() {
                if col.get(i) {
                    out.set(i, self.ncols + c, true);
                }
            }
        }
        out
    }

    /// Symmetric with zero diagonal; returns the first violating position.
    pub fn check_alternating(&self) -> Result<()> {
        if self.nrows() != self.ncols {
            return Err(Error::DimensionMismatch { left: self.nrows(), right: self.ncols });
        }
        for i in 0..self.ncols {
            if self.get(i, i) {
                return Err(Error::NotAlternating { i, j: i });
            }
            for j in 0..i {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::NotAlternating { i, j });
                }
            }
        }
        Ok(())
    }

    /// Reduced row echelon form; pivots are taken at the lowest available
    /// row for each column scanned left to right. Returns the reduced matrix
    /// and the pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.ncols {
            if row == m.nrows() {
                break;
            }
            let Some(p) = (row..m.nrows()).find(|&i| m.rows[i].get(col)) else {
                continue;
            };
            m.rows.swap(row, p);
            let pivot = m.rows[row].clone();
            for i in 0..m.nrows() {
                if i != row && m.rows[i].get(col) {
                    m.rows[i].xor_assign(&pivot);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_bits()).finish()
    }
}

/// Basis of `{x : Mx = 0}` over F2, one vector per free column of the
/// reduced echelon form (free coordinate set to 1).
pub fn f2_kernel_basis(m: &F2Matrix) -> Vec<F2Vec> {
    let (r, pivots) = m.rref();
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = F2Vec::unit(n, free);
            for (row, &p) in pivots.iter().enumerate() {
                if r.get(row, free) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

/// A symplectic basis `e₁, f₁, …, e_k, f_k, h₁, …, h_ℓ` together with the
/// unimodular integer matrix having those vectors as columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticFrame {
    pairs: Vec<(Vec<Int>, Vec<Int>)>,
    radical_basis: Vec<Vec<Int>>,
    lift: UnimodularTransform,
}

impl SymplecticFrame {
    pub fn pairs(&self) -> &[(Vec<Int>, Vec<Int>)] {
        &self.pairs
    }

    pub fn radical_basis(&self) -> &[Vec<Int>] {
        &self.radical_basis
    }

    pub fn lift(&self) -> &UnimodularTransform {
        &self.lift
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical_basis.len()
    }
}

/// Brings an alternating F2 form to `diag(k·[[0,1],[1,0]], ℓ·[0])`.
///
/// Works on the basis directly: each step adds one basis vector to another,
/// which is a unitriangular elementary matrix over the integers, and a final
/// column permutation moves the pairs in front of the radical. The product
/// of all of those is returned as the frame's lift.
pub fn alternating_reduce(abar: &F2Matrix) -> Result<(SymplecticFrame, usize, usize)> {
    abar.check_alternating()?;
    let n = abar.ncols();
    let mut gram = abar.clone();
    let mut lift = IntMatrix::identity(n);
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    // v_target += v_source, on both the Gram matrix and the lift.
    let add = |gram: &mut F2Matrix, lift: &mut IntMatrix, target: usize, source: usize| {
        let src_row = gram.rows[source].clone();
        gram.rows[target].xor_assign(&src_row);
        for i in 0..n {
            if gram.get(i, source) {
                let b = gram.get(i, target);
                gram.set(i, target, !b);
            }
            let v = lift.get(i, target) + lift.get(i, source);
            lift.set(i, target, v);
        }
        // Alternating forms stay alternating under basis change.
        gram.set(target, target, false);
    };

    loop {
        let found =
            remaining.iter().find_map(|&i| remaining.iter().find(|&&j| j != i && gram.get(i, j)).map(|&j| (i, j)));
        let Some((e, f)) = found else { break };
        for &k in &remaining {
            if k == e || k == f {
                continue;
            }
            let with_f = gram.get(k, f);
            let with_e = gram.get(k, e);
            if with_f {
                add(&mut gram, &mut lift, k, e);
            }
            if with_e {
                add(&mut gram, &mut lift, k, f);
            }
        }
        remaining.retain(|&x| x != e && x != f);
        pairs.push((e, f));
    }

    let order: Vec<usize> = pairs.iter().flat_map(|&(e, f)| [e, f]).chain(remaining.iter().copied()).collect();
    let lift = IntMatrix::from_fn(n, |i, j| lift.get(i, order[j]).clone());
    let k = pairs.len();
    let ell = n - 2 * k;
    let frame = SymplecticFrame {
        pairs: (0..k).map(|i| (lift.column(2 * i), lift.column(2 * i + 1))).collect(),
        radical_basis: (2 * k..n).map(|j| lift.column(j)).collect(),
        lift: UnimodularTransform::new(lift)?,
    };
    Ok((frame, k, ell))
}

/// A quadratic form on F2^n: values on the standard basis plus the Gram
/// matrix of its polar form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticFormF2 {
    basis_values: F2Vec,
    gram: F2Matrix,
}

impl QuadraticFormF2 {
    pub fn new(basis_values: F2Vec, gram: F2Matrix) -> Result<Self> {
        gram.check_alternating()?;
        if basis_values.len() != gram.ncols() {
            return Err(Error::DimensionMismatch { left: basis_values.len(), right: gram.ncols() });
        }
        Ok(QuadraticFormF2 { basis_values, gram })
    }

    pub fn n(&self) -> usize {
        self.basis_values.len()
    }

    pub fn basis_values(&self) -> &F2Vec {
        &self.basis_values
    }

    pub fn gram(&self) -> &F2Matrix {
        &self.gram
    }

    /// `Ω(u, v) = uᵀ G v`.
    pub fn polar(&self, u: &F2Vec, v: &F2Vec) -> u8 {
        u.dot(&self.gram.mul_vec(v))
    }

    pub fn eval(&self, v: &F2Vec) -> u8 {
        q_eval(self, v)
    }
}

/// `q(v) = Σ vᵢ q(bᵢ) + Σ_{i<j} vᵢ vⱼ Ω(bᵢ, bⱼ)` over F2.
pub fn q_eval(form: &QuadraticFormF2, v: &F2Vec) -> u8 {
    assert_eq!(v.len(), form.n(), "vector length differs from form dimension");
    let linear = v.dot(&form.basis_values);
    // Σ_{i,j ∈ supp v} G[i][j] counts each unordered pair twice (zero diagonal).
    let both: usize = v
        .ones()
        .map(|i| {
            let mut r = form.gram.row(i).clone();
            for (a, b) in r.words.iter_mut().zip(&v.words) {
                *a &= b;
            }
            r.count_ones()
        })
        .sum();
    linear ^ ((both / 2) % 2) as u8
}

/// `q(v) = (v, v)/2 mod 2`, with polar form `A mod 2`.
pub fn q_from_sym_even(a: &SymEvenMatrix) -> QuadraticFormF2 {
    let n = a.n();
    let values: Vec<u8> = (0..n).map(|i| (a.get(i, i).rem_euclid(4) / 2) as u8).collect();
    QuadraticFormF2 { basis_values: F2Vec::from_bits(&values), gram: F2Matrix::from_int_matrix(a.as_matrix()) }
}

/// The form taking value 1 on every standard basis vector, with polar form `B mod 2`.
pub fn q_from_skew(b: &SkewSymMatrix) -> QuadraticFormF2 {
    let n = b.n();
    QuadraticFormF2 { basis_values: F2Vec::from_bits(&vec![1; n]), gram: F2Matrix::from_int_matrix(b.as_matrix()) }
}

/// Dimensions of the nested radicals `V̄₀ ⊇ V̄₀₀ ⊇ V̄₀₀₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalDims {
    pub d0: usize,
    pub d00: usize,
    pub d000: usize,
}

/// Computes `(dim V̄₀, dim V̄₀₀, dim V̄₀₀₀)`.
///
/// `V̄₀ = ker Ā`. A radical vector `v` lies in `V̄₀₀₀` iff some lift
/// `v̂ + 2w` pairs to 0 mod 4 with everything, i.e. iff `(A v̂)/2 mod 2`
/// lies in `im Ā`. That map is linear on `V̄₀` modulo `im Ā`, so its
/// kernel has dimension `d0 - (rank[Ā | C] - rank Ā)` where the columns of
/// `C` are the images of a radical basis.
pub fn radical_dims(a: &SymEvenMatrix) -> RadicalDims {
    let abar = F2Matrix::from_int_matrix(a.as_matrix());
    let radical = f2_kernel_basis(&abar);
    let d0 = radical.len();
    let form = q_from_sym_even(a);
    let d00 = if radical.iter().any(|v| q_eval(&form, v) == 1) { d0 - 1 } else { d0 };

    let images: Vec<F2Vec> = radical
        .iter()
        .map(|v| {
            let lift = v.to_ints();
            let col: Vec<Int> = (0..a.n())
                .map(|i| {
                    let s: Int = v.ones().map(|j| a.get(i, j).clone()).sum();
                    debug_assert!(s.is_even(), "radical lift must pair evenly: {lift:?}");
                    Int::from((s.rem_euclid(4) / 2) as i64)
                })
                .collect();
            F2Vec::from_ints(&col)
        })
        .collect();
    let rank_a = abar.rank();
    let rank_aug = abar.augment_columns(&images).rank();
    let d000 = d0 - (rank_aug - rank_a);
    RadicalDims { d0, d00, d000 }
}

/// `Σ q(eᵢ) q(fᵢ)` over the frame's hyperbolic pairs.
pub fn arf(frame: &SymplecticFrame, form: &QuadraticFormF2) -> Result<u8> {
    if frame.radical_basis().iter().any(|h| q_eval(form, &F2Vec::from_ints(h)) == 1) {
        return Err(Error::RadicalNonzero);
    }
    Ok(frame
        .pairs()
        .iter()
        .map(|(e, f)| q_eval(form, &F2Vec::from_ints(e)) & q_eval(form, &F2Vec::from_ints(f)))
        .fold(0, |acc, x| acc ^ x))
}

/// Which of the three isomorphism classes a form belongs to, for its
/// ambient and radical dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormKind {
    /// `q(V̄₀) = 0`, Arf 1.
    ArfOne,
    /// `q(V̄₀) = 0`, Arf 0.
    ArfZero,
    /// `q(V̄₀) = F2`.
    RadicalNonzero,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::ArfOne => "(i) q(V0)=0, Arf=1",
            FormKind::ArfZero => "(ii) q(V0)=0, Arf=0",
            FormKind::RadicalNonzero => "(iii) q(V0)=F2",
        })
    }
}

/// Complete isomorphism invariant of a quadratic form over F2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormClass {
    pub n: usize,
    pub dim_radical: usize,
    /// 1 iff the form is nonzero somewhere on the radical.
    pub radical_value: u8,
    /// Present iff `radical_value == 0`.
    pub arf: Option<u8>,
}

impl FormClass {
    pub fn kind(&self) -> FormKind {
        match (self.radical_value, self.arf) {
            (1, _) => FormKind::RadicalNonzero,
            (_, Some(1)) => FormKind::ArfOne,
            _ => FormKind::ArfZero,
        }
    }
}

pub fn classify_quadratic(form: &QuadraticFormF2) -> FormClass {
    let (frame, _, ell) = alternating_reduce(form.gram()).expect("quadratic form gram is alternating");
    match arf(&frame, form) {
        Ok(a) => FormClass { n: form.n(), dim_radical: ell, radical_value: 0, arf: Some(a) },
        Err(_) => FormClass { n: form.n(), dim_radical: ell, radical_value: 1, arf: None },
    }
}

/// Class of `q_A`.
pub fn classify_form(a: &SymEvenMatrix) -> FormClass {
    classify_quadratic(&q_from_sym_even(a))
}

pub fn forms_isomorphic(c: &FormClass, c2: &FormClass) -> bool {
    c.n == c2.n && c.dim_radical == c2.dim_radical && c.radical_value == c2.radical_value && c.arf == c2.arf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{validate_skew, validate_sym_even};
    use proptest::prelude::*;

    fn sym(rows: &[&[i64]]) -> SymEvenMatrix {
        validate_sym_even(IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()).unwrap()
    }

    fn skew(rows: &[&[i64]]) -> SkewSymMatrix {
        validate_skew(IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()).unwrap()
    }

    fn all_vectors(n: usize) -> impl Iterator<Item = F2Vec> {
        (0u32..1 << n).map(move |mask| {
            let bits: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
            F2Vec::from_bits(&bits)
        })
    }

    // Enumeration oracle for the radical dimensions, straight from the
    // submodule definitions: V̄₀₀₀ membership searches all lifts v̂ + 2w.
    fn radical_dims_oracle(a: &SymEvenMatrix) -> (usize, usize, usize) {
        let n = a.n();
        let pair = |v: &[i64], w: &[i64]| -> i64 {
            (0..n).map(|i| (0..n).map(|j| v[i] * a.get(i, j).to_i64().unwrap() * w[j]).sum::<i64>()).sum()
        };
        let units: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let lifts: Vec<Vec<i64>> = all_vectors(n).map(|v| v.to_bits().iter().map(|&b| b as i64).collect()).collect();
        let mut c0 = 0;
        let mut c00 = 0;
        let mut c000 = 0;
        for v in &lifts {
            if units.iter().any(|u| pair(v, u).rem_euclid(2) != 0) {
                continue;
            }
            c0 += 1;
            if pair(v, v).rem_euclid(4) == 0 {
                c00 += 1;
            }
            let deep = lifts.iter().any(|w| {
                let x: Vec<i64> = v.iter().zip(w).map(|(a, b)| a + 2 * b).collect();
                units.iter().all(|u| pair(&x, u).rem_euclid(4) == 0)
            });
            if deep {
                c000 += 1;
            }
        }
        let log2 = |c: usize| c.trailing_zeros() as usize;
        (log2(c0), log2(c00), log2(c000))
    }

    // Counting oracle: when q vanishes on the radical, Arf = 0 iff q has
    // more zeros than ones.
    fn arf_oracle(form: &QuadraticFormF2) -> u8 {
        let zeros = all_vectors(form.n()).filter(|v| q_eval(form, v) == 0).count();
        if 2 * zeros > 1 << form.n() {
            0
        } else {
            1
        }
    }

    #[test]
    fn kernel_examples() {
        let z = F2Matrix::zeros(2, 2);
        assert_eq!(f2_kernel_basis(&z), vec![F2Vec::from_bits(&[1, 0]), F2Vec::from_bits(&[0, 1])]);
        assert!(f2_kernel_basis(&F2Matrix::from_bits(&[&[0, 1], &[1, 0]])).is_empty());
        let bbar = F2Matrix::from_bits(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(f2_kernel_basis(&bbar), vec![F2Vec::from_bits(&[1, 0, 1])]);
    }

    #[test]
    fn alternating_reduce_examples() {
        let h = F2Matrix::from_bits(&[&[0, 1], &[1, 0]]);
        let (frame, k, ell) = alternating_reduce(&h).unwrap();
        assert_eq!((k, ell), (1, 0));
        assert_eq!(frame.lift().matrix(), &IntMatrix::identity(2));

        let (_, k, ell) = alternating_reduce(&F2Matrix::zeros(3, 3)).unwrap();
        assert_eq!((k, ell), (0, 3));

        let a = sym(&[&[2, 1, 0, 1], &[1, 2, 1, 0], &[0, 1, 2, -1], &[1, 0, -1, 2]]);
        let abar = F2Matrix::from_int_matrix(a.as_matrix());
        // Rows 0 and 2 coincide, as do rows 1 and 3.
        assert_eq!(abar.rank(), 2);
        let (_, k, ell) = alternating_reduce(&abar).unwrap();
        assert_eq!((k, ell), (1, 2));

        let bad = F2Matrix::from_bits(&[&[1, 0], &[0, 0]]);
        assert_eq!(alternating_reduce(&bad).unwrap_err(), Error::NotAlternating { i: 0, j: 0 });
    }

    #[test]
    fn quadratic_form_readoff() {
        let q = q_from_sym_even(&sym(&[&[2, 1], &[1, 2]]));
        assert_eq!(q.basis_values().to_bits(), vec![1, 1]);
        assert_eq!(q.gram().to_bits(), vec![vec![0, 1], vec![1, 0]]);
        let q = q_from_sym_even(&sym(&[&[0, 2], &[2, 0]]));
        assert_eq!(q.basis_values().to_bits(), vec![0, 0]);
        assert_eq!(q.gram().to_bits(), vec![vec![0, 0], vec![0, 0]]);
        let q = q_from_sym_even(&sym(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]));
        assert_eq!(q.basis_values().to_bits(), vec![1, 1, 1]);
        assert_eq!(q.gram().to_bits(), vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
    }

    #[test]
    fn skew_forms() {
        let q = q_from_skew(&skew(&[&[0, 1], &[-1, 0]]));
        assert_eq!(q.basis_values().to_bits(), vec![1, 1]);
        assert_eq!(q.gram().to_bits(), vec![vec![0, 1], vec![1, 0]]);
        let b = skew(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
        let qb = q_from_skew(&b);
        assert_eq!(qb, q_from_sym_even(&sym(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])));
        let b2 = skew(&[&[0, 2, 0], &[-2, 0, 1], &[0, -1, 0]]);
        let q2 = q_from_skew(&b2);
        assert_eq!(q2.basis_values().to_bits(), vec![1, 1, 1]);
        assert_eq!(q2.gram().to_bits(), vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        assert_eq!(q_eval(&q2, &F2Vec::from_bits(&[1, 0, 0])), 1);
        assert_eq!(q_eval(&qb, &F2Vec::from_bits(&[1, 0, 1])), 0);
    }

    #[test]
    fn q_eval_examples() {
        let q = q_from_sym_even(&sym(&[&[2, 0], &[0, 2]]));
        // (v, v) = 4 for v = (1, 1).
        assert_eq!(q_eval(&q, &F2Vec::from_bits(&[1, 1])), 0);
        assert_eq!(q_eval(&q, &F2Vec::zeros(2)), 0);
    }

    #[test]
    fn radical_dims_examples() {
        let z = sym(&[&[0, 0], &[0, 0]]);
        assert_eq!(radical_dims(&z), RadicalDims { d0: 2, d00: 2, d000: 2 });
        let d = sym(&[&[2, 0], &[0, 2]]);
        assert_eq!(radical_dims_oracle(&d), (2, 1, 0));
        assert_eq!(radical_dims(&d), RadicalDims { d0: 2, d00: 1, d000: 0 });
        let one = sym(&[&[2]]);
        assert_eq!(radical_dims_oracle(&one), (1, 0, 0));
        assert_eq!(radical_dims(&one), RadicalDims { d0: 1, d00: 0, d000: 0 });
    }

    #[test]
    fn arf_examples() {
        let a = sym(&[&[2, 1], &[1, 2]]);
        let q = q_from_sym_even(&a);
        let (frame, _, _) = alternating_reduce(q.gram()).unwrap();
        assert_eq!(arf_oracle(&q), 1);
        assert_eq!(arf(&frame, &q), Ok(1));

        let h = sym(&[&[0, 1], &[1, 0]]);
        let q = q_from_sym_even(&h);
        let (frame, _, _) = alternating_reduce(q.gram()).unwrap();
        assert_eq!(arf(&frame, &q), Ok(0));

        let a4 = sym(&[&[2, 1, 0, 1], &[1, 2, 1, 0], &[0, 1, 2, -1], &[1, 0, -1, 2]]);
        let q = q_from_sym_even(&a4);
        let (frame, _, _) = alternating_reduce(q.gram()).unwrap();
        assert_eq!(arf(&frame, &q), Ok(1));
        assert_eq!(arf_oracle(&q), 1);

        let d = q_from_sym_even(&sym(&[&[2]]));
        let (frame, _, _) = alternating_reduce(d.gram()).unwrap();
        assert_eq!(arf(&frame, &d), Err(Error::RadicalNonzero));
    }

    #[test]
    fn classification_examples() {
        let c1 = classify_form(&sym(&[&[2, 1], &[1, 2]]));
        assert_eq!(c1, FormClass { n: 2, dim_radical: 0, radical_value: 0, arf: Some(1) });
        assert_eq!(c1.kind(), FormKind::ArfOne);
        let c3 = classify_form(&sym(&[&[2]]));
        assert_eq!(c3, FormClass { n: 1, dim_radical: 1, radical_value: 1, arf: None });
        assert_eq!(c3.kind(), FormKind::RadicalNonzero);
        let c2 = classify_form(&sym(&[&[0, 1], &[1, 0]]));
        assert_eq!(c2, FormClass { n: 2, dim_radical: 0, radical_value: 0, arf: Some(0) });

        assert!(!forms_isomorphic(&c1, &c2));
        assert!(forms_isomorphic(&c1, &c1));

        let qb = classify_quadratic(&q_from_skew(&skew(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])));
        let qb2 = classify_quadratic(&q_from_skew(&skew(&[&[0, 2, 0], &[-2, 0, 1], &[0, -1, 0]])));
        assert_eq!(qb.radical_value, 0);
        assert_eq!(qb2.radical_value, 1);
        assert!(!forms_isomorphic(&qb, &qb2));
    }

    fn alternating_strategy(max_n: usize) -> impl Strategy<Value = F2Matrix> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let mut m = F2Matrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..i {
                        m.set(i, j, bits[i * n + j]);
                        m.set(j, i, bits[i * n + j]);
                    }
                }
                m
            })
        })
    }

    fn form_strategy(max_n: usize) -> impl Strategy<Value = QuadraticFormF2> {
        alternating_strategy(max_n).prop_flat_map(|g| {
            let n = g.ncols();
            proptest::collection::vec(0u8..2, n)
                .prop_map(move |vals| QuadraticFormF2::new(F2Vec::from_bits(&vals), g.clone()).unwrap())
        })
    }

    fn sym_even_strategy(max_n: usize) -> impl Strategy<Value = SymEvenMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
                let mut a = IntMatrix::zeros(n);
                for i in 0..n {
                    for j in 0..=i {
                        let x = if i == j { 2 * (v[i * n + j] / 2) } else { v[i * n + j] };
                        a.set(i, j, Int::from(x));
                        a.set(j, i, Int::from(x));
                    }
                }
                validate_sym_even(a).unwrap()
            })
        })
    }

    #[test]
    fn functional_equation_exhaustive_small() {
        // Every alternating gram and value vector for n <= 3, all u, v.
        for n in 0..=3usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
            for gmask in 0u32..1 << pairs.len() {
                let mut g = F2Matrix::zeros(n, n);
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    let bit = (gmask >> b) & 1 == 1;
                    g.set(i, j, bit);
                    g.set(j, i, bit);
                }
                for vals in all_vectors(n) {
                    let q = QuadraticFormF2::new(vals, g.clone()).unwrap();
                    for u in all_vectors(n) {
                        for v in all_vectors(n) {
                            let mut w = u.clone();
                            w.xor_assign(&v);
                            assert_eq!(q_eval(&q, &w), q_eval(&q, &u) ^ q_eval(&q, &v) ^ q.polar(&u, &v));
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn functional_equation(q in form_strategy(9), seed in any::<u64>()) {
            let n = q.n();
            let bits = |s: u64| -> F2Vec { F2Vec::from_bits(&(0..n).map(|i| ((s >> i) & 1) as u8).collect::<Vec<_>>()) };
            let u = bits(seed);
            let v = bits(seed.rotate_left(17) ^ 0x9e37_79b9_7f4a_7c15);
            let mut w = u.clone();
            w.xor_assign(&v);
            prop_assert_eq!(q_eval(&q, &w), q_eval(&q, &u) ^ q_eval(&q, &v) ^ q.polar(&u, &v));
        }

        #[test]
        fn frame_postconditions(g in alternating_strategy(10)) {
            let (frame, k, ell) = alternating_reduce(&g).unwrap();
            let n = g.ncols();
            prop_assert_eq!(2 * k, g.rank());
            prop_assert_eq!(2 * k + ell, n);
            prop_assert!(frame.lift().det_sign().abs() == 1);
            let g_int = IntMatrix::from_fn(n, |i, j| Int::from(g.get(i, j) as i64));
            let reduced = g_int.congruent_by(frame.lift().matrix()).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let expect = i / 2 == j / 2 && i != j && i < 2 * k;
                    prop_assert_eq!(reduced.get(i, j).rem_euclid(2) == 1, expect);
                }
            }
        }

        #[test]
        fn arf_matches_counting_oracle(q in form_strategy(8)) {
            let (frame, _, _) = alternating_reduce(q.gram()).unwrap();
            match arf(&frame, &q) {
                Ok(a) => prop_assert_eq!(a, arf_oracle(&q)),
                Err(e) => {
                    prop_assert_eq!(e, Error::RadicalNonzero);
                    let rad = f2_kernel_basis(q.gram());
                    prop_assert!(rad.iter().any(|h| q_eval(&q, h) == 1));
                }
            }
        }

        #[test]
        fn arf_frame_independent(q in form_strategy(7), perm_seed in any::<u64>()) {
            // A second frame from a permuted copy of the form, mapped back.
            let n = q.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = perm_seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut g2 = F2Matrix::zeros(n, n);
            let mut vals = vec![0u8; n];
            for i in 0..n {
                vals[i] = q.basis_values().get(perm[i]) as u8;
                for j in 0..n {
                    g2.set(i, j, q.gram().get(perm[i], perm[j]));
                }
            }
            let (frame2, _, _) = alternating_reduce(&g2).unwrap();
            let unpermute = |v: &Vec<Int>| {
                let mut out = vec![Int::ZERO; n];
                for i in 0..n { out[perm[i]] = v[i].clone(); }
                out
            };
            let (frame1, _, _) = alternating_reduce(q.gram()).unwrap();
            let a1 = arf(&frame1, &q);
            let a2: Result<u8> = if frame2.radical_basis().iter().any(|h| q_eval(&q, &F2Vec::from_ints(&unpermute(h))) == 1) {
                Err(Error::RadicalNonzero)
            } else {
                Ok(frame2.pairs().iter().map(|(e, f)| {
                    q_eval(&q, &F2Vec::from_ints(&unpermute(e))) & q_eval(&q, &F2Vec::from_ints(&unpermute(f)))
                }).fold(0, |a, b| a ^ b))
            };
            prop_assert_eq!(a1, a2);
        }

        #[test]
        fn q_linear_on_radical(q in form_strategy(8)) {
            let rad = f2_kernel_basis(q.gram());
            for u in &rad {
                for v in &rad {
                    let mut w = u.clone();
                    w.xor_assign(v);
                    prop_assert_eq!(q_eval(&q, &w), q_eval(&q, u) ^ q_eval(&q, v));
                }
            }
        }

        #[test]
        fn radical_dims_match_enumeration(a in sym_even_strategy(4)) {
            let d = radical_dims(&a);
            prop_assert_eq!((d.d0, d.d00, d.d000), radical_dims_oracle(&a));
            prop_assert!(d.d000 <= d.d00 && d.d00 <= d.d0);
        }
    }
}
